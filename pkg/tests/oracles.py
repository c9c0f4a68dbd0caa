"""Independent reference implementations used by the tests."""

import itertools

import numpy as np


def enumerate_copt(units, step=10.0):
    """Exact COPT by walking all 2**n availability states."""
    caps = [int(np.rint(c / step)) for c, _ in units]
    out = {}
    for state in itertools.product((0, 1), repeat=len(units)):
        p = 1.0
        k = 0
        for on, (c, a), ki in zip(state, units, caps):
            p *= a if on else 1 - a
            k += ki * on
        out[k * step] = out.get(k * step, 0.0) + p
    return out


def hand_ols(x, y):
    """Textbook OLS from raw sums, no centering."""
    x = [float(v) for v in x]
    y = [float(v) for v in y]
    n = len(x)
    sx, sy = sum(x), sum(y)
    sxx = sum(v * v for v in x)
    sxy = sum(a * b for a, b in zip(x, y))
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    intercept = (sy - slope * sx) / n
    resid = [b - intercept - slope * a for a, b in zip(x, y)]
    s2 = sum(r * r for r in resid) / (n - 2)
    se = (s2 / (sxx - sx * sx / n)) ** 0.5
    return slope, intercept, se


def enumerate_copt_array(caps, avail):
    """Vectorized 2**n state walk; ``caps`` are integer grid steps."""
    caps = np.asarray(caps, dtype=np.int64)
    avail = np.asarray(avail, dtype=float)
    states = np.array(list(itertools.product((0, 1), repeat=caps.size)), dtype=bool)
    prob = np.where(states, avail, 1 - avail).prod(axis=1)
    level = states.astype(np.int64) @ caps
    return np.bincount(level, weights=prob, minlength=int(caps.sum()) + 1)
