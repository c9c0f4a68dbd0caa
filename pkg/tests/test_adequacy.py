import math

import numpy as np
import pytest

from heatadequacy import adequacy, probdist
from heatadequacy.errors import InvalidValue
from heatadequacy.probdist import CapacityDistribution as D


def pmf(m):
    return D.from_mapping(m)


def random_margin(rng):
    n = int(rng.integers(2, 30))
    p = rng.dirichlet(np.ones(n))
    return D(10.0, int(rng.integers(-25, 5)), p)


class TestMargin:
    def test_points(self):
        z = adequacy.margin_distribution(D.point_mass(100.0), D.point_mass(90.0))
        assert z.to_dict() == {10.0: 1.0}

    def test_enumerated(self):
        z = adequacy.margin_distribution(pmf({0: 0.1, 100: 0.9}), D.point_mass(50.0))
        assert z.to_dict() == pytest.approx({-50.0: 0.1, 50.0: 0.9})

    def test_zero_demand(self):
        g = pmf({0: 0.1, 30: 0.2, 100: 0.7})
        z = adequacy.margin_distribution(g, D.point_mass(0.0))
        assert z.offset == g.offset
        np.testing.assert_array_equal(z.probabilities, g.probabilities)


class TestLoleEeu:
    def test_examples(self):
        assert adequacy.lole(D.point_mass(10.0), 3360) == 0.0
        z = pmf({-100: 0.25, 100: 0.75})
        assert adequacy.lole(z, 4) == 1.0
        assert adequacy.eeu(z, 4) == 100.0
        assert adequacy.eeu(D.point_mass(-10.0), 1) == 10.0

    def test_scaled_probability(self):
        z = D(10.0, -1, [0.001, 0.999])
        assert adequacy.lole(z, 3360) == pytest.approx(3.36, abs=1e-12)

    def test_zero_margin_adequate(self):
        z = pmf({0: 0.5, 10: 0.5})
        assert adequacy.lole(z) == 0.0 and adequacy.eeu(z) == 0.0

    def test_direct_summation(self, rng):
        for _ in range(50):
            z = random_margin(rng)
            n = int(rng.integers(1, 5000))
            d = z.to_dict()
            assert adequacy.lole(z, n) == pytest.approx(
                n * sum(p for v, p in d.items() if v < 0), abs=1e-12)
            assert adequacy.eeu(z, n) == pytest.approx(
                n * sum(-v * p for v, p in d.items() if v < 0), rel=1e-12, abs=1e-12)

    def test_monte_carlo(self, rng):
        z = random_margin(rng)
        x = z.sample(rng, 200_000)
        s = (x < 0).astype(float)
        assert abs(s.mean() - adequacy.shortfall_probability(z)) <= 3 * s.std() / np.sqrt(x.size)

    @pytest.mark.parametrize("n", [0, -1, 2.5])
    def test_bad_periods(self, n):
        with pytest.raises(InvalidValue):
            adequacy.lole(D.point_mass(0.0), n)


class TestPeak:
    def test_identity(self):
        d = pmf({0: 0.2, 10: 0.3, 20: 0.5})
        p = adequacy.peak_distribution(d, 1)
        np.testing.assert_allclose(p.probabilities, d.probabilities, atol=1e-15)

    def test_two_draws(self):
        d = D(1.0, 1, [0.5, 0.5])
        assert adequacy.peak_distribution(d, 2).to_dict() == pytest.approx({1.0: 0.25, 2.0: 0.75})

    def test_point_mass(self):
        assert adequacy.peak_distribution(D.point_mass(570.0), 3360).to_dict() == {570.0: 1.0}

    def test_power_law(self, rng):
        d = random_margin(rng)
        p = list(d.probabilities)
        total = math.fsum(p)
        for n in (1, 24, 3360):
            f = adequacy.peak_distribution(d, n)
            for i, x in enumerate(d.support):
                want = (math.fsum(p[: i + 1]) / total) ** n
                assert probdist.cdf(f, x) == pytest.approx(want, abs=1e-12)

    def test_summary_examples(self):
        assert adequacy.peak_summary(D.point_mass(300.0)) == (300.0, 0.0)
        u = D(10.0, 0, np.full(100, 0.01))
        q95, iqr = adequacy.peak_summary(u)
        # CDF at 10k is (k + 1) / 100: q25 = 240, q75 = 740
        assert q95 == 940.0 and iqr == 500.0

    def test_survival_points(self):
        x, sf = adequacy.survival_points(pmf({0: 0.25, 10: 0.75}))
        assert list(x) == [0.0, 10.0]
        assert sf == pytest.approx([0.75, 0.0])
