"""
Global maximization of a scalar function over ``r >= 0``.

The objective is sampled on a uniform grid in ``u = 1 / (1 + r)``, which
covers the half line with a finite number of points, and every promising
grid point is refined by golden-section search inside the bracket formed
by its grid neighbours.

"""
import logging
import math
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f, a, b, tol=1e-8, maxiter=500):
    """Return ``(x, f(x))`` for the maximizer of *f* on ``[a, b]``.

    The bracket is shrunk until it is at most *tol* wide. Ties keep the
    left part of the bracket, so flat tops resolve towards *a*.

    """
    if b < a:
        a, b = b, a
    if b - a <= tol:
        x = 0.5 * (a + b)
        return x, float(f(x))
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = float(f(c)), float(f(d))
    for _ in range(maxiter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = float(f(c))
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = float(f(d))
    if fc >= fd:
        return c, fc
    return d, fd


@dataclass(frozen=True)
class Maximum(object):
    """Result of :func:`maximize`.

    *argmax* holds every maximizer within tolerance of *value*, in
    increasing order. *at_horizon* tells whether the largest grid ransom
    was among the maximizers, so the true maximum may lie beyond the grid.

    """
    argmax: tuple
    value: float
    at_horizon: bool = False

    @property
    def smallest(self):
        return self.argmax[0]


def ransom_grid(points):
    """Ransoms ``points / k - 1`` for ``k = points, ..., 1``, i.e. a uniform
    grid ``u = k / points`` mapped back to the ransom axis, increasing from
    0."""
    k = np.arange(points, 0, -1, dtype=float)
    return points / k - 1.0


def _local_maxima(values):
    """Indices of grid local maxima; plateaus report their left end."""
    left = np.concatenate([[-np.inf], values[:-1]])
    right = np.concatenate([values[1:], [-np.inf]])
    return np.flatnonzero((values > left) & (values >= right))


def maximize(f, grid_points=4096, refine_tol=1e-8, argmax_rtol=1e-9,
             max_candidates=32, vectorized=None):
    """Maximize *f* over ``r >= 0``.

    *f* takes a scalar ransom; *vectorized*, if given, evaluates a whole
    array at once and is used for the grid pass. Each candidate is refined
    to a bracket of width ``refine_tol * (1 + r)``. All refined points
    within ``argmax_rtol * (1 + |max|)`` of the maximum form the argmax.

    """
    if grid_points < 2:
        raise ValueError('grid_points(=%s) must be >= 2.' % grid_points)
    r = ransom_grid(grid_points)
    if vectorized is not None:
        values = np.asarray(vectorized(r), dtype=float)
    else:
        values = np.array([f(ri) for ri in r], dtype=float)

    candidates = _local_maxima(values)
    order = np.argsort(-values[candidates], kind='stable')
    candidates = candidates[order][:max_candidates]

    refined = []
    for i in candidates:
        lo = r[max(i - 1, 0)]
        hi = r[min(i + 1, len(r) - 1)]
        x, fx = golden_section_max(f, lo, hi, refine_tol * (1.0 + lo))
        if fx < values[i]:
            x, fx = float(r[i]), float(values[i])
        refined.append((float(x), fx, i))

    best = max(fx for _, fx, _ in refined)
    slack = argmax_rtol * (1.0 + abs(best))
    winners = sorted((x, i) for x, fx, i in refined if fx >= best - slack)

    argmax = []
    for x, _ in winners:
        if argmax and x - argmax[-1] <= 10 * refine_tol * (1.0 + x):
            continue
        argmax.append(x)
    at_horizon = any(i == len(r) - 1 for _, i in winners)
    if at_horizon:
        logger.warning('maximum found at the search horizon r=%r; increase '
                       'grid_points', float(r[-1]))
    near = [x for x, fx, _ in refined if best - 1e3 * slack <= fx <
            best - slack]
    if near:
        logger.info('near-flat top: %d further maximizers within %r of the '
                    'maximum', len(near), 1e3 * slack)
    return Maximum(tuple(argmax), best, at_horizon)
