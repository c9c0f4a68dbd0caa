import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heatadequacy import probdist
from heatadequacy.errors import (
    EmptyData,
    GridMismatch,
    InvalidDistribution,
    InvalidProbability,
    InvalidValue,
)
from heatadequacy.probdist import CapacityDistribution

D = CapacityDistribution


def pmf(mapping, step=10.0):
    return D.from_mapping(mapping, step)


def same(a, b, tol=1e-12):
    return (a.grid_step == b.grid_step and a.offset == b.offset and len(a) == len(b)
            and np.allclose(a.probabilities, b.probabilities, rtol=0, atol=tol))


@st.composite
def distributions(draw, max_len=12):
    n = draw(st.integers(1, max_len))
    w = draw(st.lists(st.floats(0.01, 1.0), min_size=n, max_size=n))
    off = draw(st.integers(-50, 50))
    p = np.array(w) / sum(w)
    return D(10.0, off, p)


class TestConstruction:
    def test_trims_zeros(self):
        d = D(10.0, 0, [0.0, 0.5, 0.5, 0.0])
        assert d.offset == 1 and len(d) == 2
        assert list(d.support) == [10.0, 20.0]

    def test_rejects_bad_mass(self):
        with pytest.raises(InvalidDistribution):
            D(10.0, 0, [0.5, 0.4])

    def test_rejects_negative(self):
        with pytest.raises(InvalidDistribution):
            D(10.0, 0, [1.5, -0.5])

    def test_rejects_bad_step(self):
        with pytest.raises(InvalidValue):
            D(0.0, 0, [1.0])

    def test_read_only(self):
        d = D.point_mass(10.0)
        with pytest.raises(ValueError):
            d.probabilities[0] = 0.5

    def test_off_grid_mapping(self):
        with pytest.raises(InvalidValue):
            pmf({5.0: 1.0})


class TestFromSamples:
    def test_counting(self):
        d = probdist.from_samples([0, 10, 10, 20], 10.0)
        assert d.to_dict() == {0.0: 0.25, 10.0: 0.5, 20.0: 0.25}

    def test_nearest_grid_point(self):
        assert probdist.from_samples([14], 10.0).to_dict() == {10.0: 1.0}

    def test_constant(self):
        for step in (1.0, 10.0, 25.0):
            d = probdist.from_samples([137.0] * 3, step)
            assert len(d) == 1
            assert d.support[0] == np.rint(137.0 / step) * step

    def test_errors(self):
        with pytest.raises(EmptyData):
            probdist.from_samples([])
        with pytest.raises(InvalidValue):
            probdist.from_samples([1.0, np.nan])

    def test_matches_histogram(self, rng):
        x = rng.normal(500, 80, 5000)
        d = probdist.from_samples(x, 10.0)
        k = np.rint(x / 10.0).astype(int)
        for v, p in d.to_dict().items():
            assert p == pytest.approx(np.mean(k == int(round(v / 10))), abs=1e-15)


class TestConvolve:
    def test_point_masses(self):
        c = probdist.convolve(D.point_mass(30.0), D.point_mass(-70.0))
        assert same(c, D.point_mass(-40.0))

    def test_enumerated(self):
        a = pmf({0: 0.5, 100: 0.5})
        assert probdist.convolve(a, a).to_dict() == {0.0: 0.25, 100.0: 0.5, 200.0: 0.25}

    def test_identity(self):
        a = pmf({0: 0.2, 30: 0.3, 70: 0.5})
        assert same(probdist.convolve(a, D.point_mass(0.0)), a)

    def test_grid_mismatch(self):
        with pytest.raises(GridMismatch):
            probdist.convolve(D.point_mass(0.0, 10.0), D.point_mass(0.0, 5.0))

    def test_brute_force_pairs(self):
        a = pmf({-20: 0.1, 0: 0.6, 50: 0.3})
        b = pmf({10: 0.4, 40: 0.6})
        want = {}
        for va, pa in a.to_dict().items():
            for vb, pb in b.to_dict().items():
                want[va + vb] = want.get(va + vb, 0.0) + pa * pb
        got = probdist.convolve(a, b).to_dict()
        assert got.keys() == want.keys()
        for k in want:
            assert got[k] == pytest.approx(want[k], abs=1e-15)

    @settings(max_examples=60, deadline=None)
    @given(distributions(), distributions())
    def test_commutative(self, a, b):
        assert same(probdist.convolve(a, b), probdist.convolve(b, a))

    @settings(max_examples=40, deadline=None)
    @given(distributions(), distributions(), distributions())
    def test_associative_and_mass(self, a, b, c):
        left = probdist.convolve(probdist.convolve(a, b), c)
        right = probdist.convolve(a, probdist.convolve(b, c))
        assert same(left, right, 1e-12)
        assert left.probabilities.sum() == pytest.approx(1.0, abs=1e-12)
        assert left.mean() == pytest.approx(a.mean() + b.mean() + c.mean(), abs=1e-8)


class TestNegateShift:
    def test_negate_point(self):
        assert same(probdist.negate(D.point_mass(50.0)), D.point_mass(-50.0))

    def test_negate_mirror(self):
        assert probdist.negate(pmf({0: 0.3, 10: 0.7})).to_dict() == {-10.0: 0.7, 0.0: 0.3}

    @settings(max_examples=50, deadline=None)
    @given(distributions())
    def test_negate_involution(self, d):
        assert same(probdist.negate(probdist.negate(d)), d)

    def test_shift_reserve(self):
        assert same(probdist.shift(D.point_mass(0.0), 1320.0), D.point_mass(1320.0))

    @settings(max_examples=50, deadline=None)
    @given(distributions(), st.integers(-300, 300))
    def test_shift_inverse(self, d, k):
        assert same(probdist.shift(d, 0.0), d)
        assert same(probdist.shift(probdist.shift(d, 10.0 * k), -10.0 * k), d)


class TestCdfQuantile:
    def test_examples(self):
        d = pmf({0: 0.25, 100: 0.75})
        assert probdist.cdf(d, 0) == 0.25
        assert probdist.cdf(d, -1) == 0.0
        assert probdist.cdf(d, 100) == 1.0
        assert probdist.quantile(d, 0.95) == 100.0
        assert probdist.quantile(d, 0.25) == 0.0

    def test_point_mass(self):
        d = D.point_mass(420.0)
        for p in (1e-6, 0.3, 0.5, 1.0):
            assert probdist.quantile(d, p) == 420.0

    def test_bad_probability(self):
        d = D.point_mass(0.0)
        for p in (-0.1, 1.1, np.nan):
            with pytest.raises(InvalidProbability):
                probdist.quantile(d, p)

    @settings(max_examples=60, deadline=None)
    @given(distributions(), st.floats(0.001, 1.0))
    def test_quantile_is_smallest_reaching_p(self, d, p):
        q = probdist.quantile(d, p)
        assert probdist.cdf(d, q) >= p - 1e-12
        below = d.support[d.support < q]
        if below.size:
            assert probdist.cdf(d, below[-1]) < p

    @settings(max_examples=40, deadline=None)
    @given(distributions())
    def test_cdf_monotone(self, d):
        xs = np.arange(d.support[0] - 20, d.support[-1] + 20, 5.0)
        c = [probdist.cdf(d, x) for x in xs]
        assert np.all(np.diff(c) >= 0)
        assert c[0] == 0.0 and c[-1] == pytest.approx(1.0)
