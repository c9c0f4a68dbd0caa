"""Discrete probability distributions on a uniform MW grid.

A :class:`CapacityDistribution` stores a dense probability vector together with
the integer grid index of its first point, so supports are exact integer
multiples of ``grid_step`` and never accumulate floating point drift.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptyData,
    GridMismatch,
    InvalidDistribution,
    InvalidProbability,
    InvalidValue,
)

log = logging.getLogger(__name__)

DEFAULT_GRID_STEP = 10.0
MASS_TOL = 1e-9
# cumulative sums of many small masses land a few ulps either side of p
QUANTILE_TOL = 1e-12


def snap_index(values, grid_step):
    """Nearest grid indices for ``values``; ties go to the even index."""
    return np.rint(np.asarray(values, dtype=float) / grid_step).astype(np.int64)


def _renormalize(probs):
    total = probs.sum()
    if abs(total - 1.0) > MASS_TOL:
        log.warning("renormalizing distribution: mass drifted to %.15g", total)
        probs = probs / total
    return probs


@dataclass(frozen=True, eq=False)
class CapacityDistribution:
    """Finite PMF over ``origin + i * grid_step``.

    ``offset`` is the grid index of the first support point, so
    ``origin == offset * grid_step``. Leading and trailing zero
    probabilities are stripped on construction.
    """

    grid_step: float
    offset: int
    probabilities: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not (self.grid_step > 0 and np.isfinite(self.grid_step)):
            raise InvalidValue(f"grid_step must be positive, got {self.grid_step}")
        p = np.array(self.probabilities, dtype=float).ravel()
        if p.size == 0:
            raise InvalidDistribution("distribution has no support")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise InvalidDistribution("probabilities must be finite and non-negative")
        total = p.sum()
        if abs(total - 1.0) > MASS_TOL:
            raise InvalidDistribution(f"probabilities sum to {total!r}, not 1")
        nz = np.flatnonzero(p)
        if nz.size == 0:
            raise InvalidDistribution("distribution has no mass")
        lo, hi = nz[0], nz[-1]
        p = p[lo : hi + 1]
        p.setflags(write=False)
        object.__setattr__(self, "grid_step", float(self.grid_step))
        object.__setattr__(self, "offset", int(self.offset) + int(lo))
        object.__setattr__(self, "probabilities", p)

    @classmethod
    def point_mass(cls, value, grid_step=DEFAULT_GRID_STEP):
        return cls(grid_step, int(snap_index(value, grid_step)), np.ones(1))

    @classmethod
    def from_mapping(cls, mapping, grid_step=DEFAULT_GRID_STEP):
        """Build from ``{support_value: probability}``; values must lie on the grid."""
        idx = snap_index(list(mapping), grid_step)
        if not np.allclose(idx * grid_step, list(mapping), rtol=0, atol=1e-9 * grid_step):
            raise InvalidValue("mapping keys must be grid multiples")
        lo = int(idx.min())
        p = np.zeros(int(idx.max()) - lo + 1)
        np.add.at(p, idx - lo, list(mapping.values()))
        return cls(grid_step, lo, p)

    @property
    def origin(self):
        return self.offset * self.grid_step

    @property
    def indices(self):
        return np.arange(self.offset, self.offset + self.probabilities.size)

    @property
    def support(self):
        return self.indices * self.grid_step

    def __len__(self):
        return self.probabilities.size

    def to_dict(self):
        return {float(v): float(p) for v, p in zip(self.support, self.probabilities) if p > 0}

    def mean(self):
        return float(np.dot(self.support, self.probabilities))

    def cumulative(self):
        """CDF evaluated at every support point."""
        return np.cumsum(self.probabilities)

    def sample(self, rng, size):
        """Draw ``size`` values; used by Monte Carlo cross-checks."""
        return rng.choice(self.support, size=size, p=self.probabilities)


def from_samples(samples, grid_step=DEFAULT_GRID_STEP):
    """Empirical distribution of ``samples`` snapped to the nearest grid point."""
    x = np.asarray(samples, dtype=float).ravel()
    if x.size == 0:
        raise EmptyData("cannot build a distribution from no samples")
    if not np.all(np.isfinite(x)):
        raise InvalidValue("samples must be finite")
    if not grid_step > 0:
        raise InvalidValue(f"grid_step must be positive, got {grid_step}")
    idx = snap_index(x, grid_step)
    lo = idx.min()
    counts = np.bincount(idx - lo)
    return CapacityDistribution(grid_step, int(lo), counts / x.size)


def _check_grid(a, b):
    if a.grid_step != b.grid_step:
        raise GridMismatch(f"grid steps differ: {a.grid_step} vs {b.grid_step}")


def convolve(a, b):
    """Distribution of the sum of independent ``a`` and ``b``."""
    _check_grid(a, b)
    p = np.convolve(a.probabilities, b.probabilities)
    return CapacityDistribution(a.grid_step, a.offset + b.offset, _renormalize(p))


def negate(d):
    return CapacityDistribution(
        d.grid_step, -(d.offset + len(d) - 1), d.probabilities[::-1].copy()
    )


def shift(d, offset):
    """Translate by ``offset`` MW, snapped to the grid if necessary."""
    k = int(snap_index(offset, d.grid_step))
    if k * d.grid_step != offset:
        log.info("shift offset %r snapped to %r", offset, k * d.grid_step)
    return CapacityDistribution(d.grid_step, d.offset + k, d.probabilities)


def cdf(d, x):
    """Right-continuous ``P(value <= x)``."""
    n = int(np.searchsorted(d.support, x, side="right"))
    if n == 0:
        return 0.0
    return float(min(1.0, d.probabilities[:n].sum()))


def quantile(d, p):
    """Smallest support value whose CDF reaches ``p``."""
    if not 0.0 <= p <= 1.0 or not np.isfinite(p):
        raise InvalidProbability(f"probability must be in [0, 1], got {p}")
    c = d.cumulative()
    i = int(np.searchsorted(c, p - QUANTILE_TOL, side="left"))
    i = min(i, len(d) - 1)
    return float(d.support[i])
