"""Two-argument norms measuring the area spanned by a pair of grid functions.

Both norms map a pair of functions on a shared quadrature rule to a scalar
that vanishes exactly when the pair is linearly dependent and is absolutely
homogeneous in each argument.  ``gunawan_norm`` is an exact double-quadrature
expression.  ``gahler_norm`` is the supremum of a two-by-two pairing
determinant over the product of two conjugate-exponent unit balls; it is
estimated by multi-start monotone ascent, and the returned value is the
determinant at an explicit feasible dual pair, hence a certified lower bound
on the supremum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridFunction
from .lp_core import (
    _extremal_samples,
    _norm_samples,
    abs_pow,
    conjugate_exponent,
    pairing,
)

__all__ = [
    "AscentOptions",
    "NormEstimate",
    "gunawan_norm",
    "pairing_determinant",
    "gahler_norm",
]


@dataclass(frozen=True)
class AscentOptions:
    """Controls for the multi-start monotone ascent estimators.

    ``tol`` is the relative-improvement stopping threshold, ``max_iter`` the
    per-start iteration cap, ``starts`` the total number of starting points
    (deterministic starts first, then seeded random draws), and ``seed`` the
    base seed for those draws.
    """

    tol: float = 1e-10
    max_iter: int = 200
    starts: int = 8
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.tol > 0.0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter!r}")
        if self.starts < 1:
            raise ValueError(f"starts must be at least 1, got {self.starts!r}")


@dataclass(frozen=True)
class NormEstimate:
    """Result of a norm computation that may involve numerical search.

    ``value`` is reproducible from ``maximizers`` by a single direct
    evaluation of the defining expression.  ``is_lower_bound`` is True when
    the value was produced by search and certifies a lower bound through the
    returned feasible maximizers; closed-form results report False and are
    exact up to rounding.
    """

    value: float
    converged: bool
    iterations: int
    starts: int
    maximizers: tuple[GridFunction, ...]
    is_lower_bound: bool


def gunawan_norm(x1: GridFunction, x2: GridFunction, p: float) -> float:
    """Exact double-quadrature two-argument norm of the pair ``(x1, x2)``.

    Computes the p-th root of half the double sum of |x1(s) x2(t) -
    x1(t) x2(s)| ** p against the product quadrature weights.
    """
    x1.rule.require_same(x2.rule)
    p = float(p)
    conjugate_exponent(p)
    w = x1.rule.weights
    cross = np.outer(x1.samples, x2.samples)
    cross = cross - cross.T
    total = 0.5 * float(w @ abs_pow(cross, p) @ w)
    return float(total ** (1.0 / p))


def pairing_determinant(
    x1: GridFunction, x2: GridFunction, y1: GridFunction, y2: GridFunction
) -> float:
    """Two-by-two determinant of dual pairings, rows ``(x1, x2)``, columns ``(y1, y2)``."""
    return pairing(x1, y1) * pairing(x2, y2) - pairing(x2, y1) * pairing(x1, y2)


def _dual_normalize(v: np.ndarray, w: np.ndarray, p: float) -> np.ndarray | None:
    """Scale raw samples onto the unit sphere of the exponent conjugate to p.

    Returns None for an all-zero (or non-finite) input.  For p = 1 the
    conjugate norm is the max norm; otherwise the weighted q-norm with
    q = p / (p - 1).
    """
    scale = float(np.max(np.abs(v)))
    if scale == 0.0 or not np.isfinite(scale):
        return None
    u = v / scale
    if p == 1.0:
        return u
    q = p / (p - 1.0)
    nq = float((w @ abs_pow(u, q)) ** (1.0 / q))
    if nq == 0.0 or not np.isfinite(nq):
        return None
    return u / nq


def _response_norm(
    w: np.ndarray, a1: np.ndarray, a2: np.ndarray, p: float, d2: np.ndarray
) -> tuple[float, np.ndarray]:
    """Objective after the exact first-dual response, given the second dual.

    With the second dual fixed, the determinant maximized over the first
    unit ball equals the p-norm of the reduced vector returned here.
    """
    b1 = float(w @ (a1 * d2))
    b2 = float(w @ (a2 * d2))
    z1 = b2 * a1 - b1 * a2
    return _norm_samples(z1, w, p), z1


def _ascend(
    w: np.ndarray,
    a1: np.ndarray,
    a2: np.ndarray,
    p: float,
    d2: np.ndarray,
    tol: float,
    max_iter: int,
) -> tuple[float, np.ndarray, np.ndarray, int, bool]:
    """Monotone alternating ascent from a feasible second dual.

    Each iteration replaces the first dual by its exact closed-form best
    response, then the second dual by the best of its own closed-form
    response and two extrapolated candidates, all judged by the objective
    after the next first-dual response.  The candidate set always contains
    the plain response, so the objective never decreases; extrapolation only
    speeds up travel along nearly flat ridges.
    """
    value, z1 = _response_norm(w, a1, a2, p, d2)
    iterations = 0
    converged = False
    for it in range(1, max_iter + 1):
        iterations = it
        d1, _ = _extremal_samples(z1, w, p)
        c1 = float(w @ (a1 * d1))
        c2 = float(w @ (a2 * d1))
        z2 = c1 * a2 - c2 * a1
        plain, _ = _extremal_samples(z2, w, p)
        candidates = [plain]
        for beta in (1.0, 3.0):
            cand = _dual_normalize(plain + beta * (plain - d2), w, p)
            if cand is not None:
                candidates.append(cand)
        best_val = -1.0
        best_d2 = d2
        best_z1 = z1
        for cand in candidates:
            val, z1c = _response_norm(w, a1, a2, p, cand)
            if val > best_val:
                best_val, best_d2, best_z1 = val, cand, z1c
        if best_val <= value:
            converged = True
            break
        gain = best_val - value
        d2, value, z1 = best_d2, best_val, best_z1
        if gain <= tol * max(value, 1e-300):
            converged = True
            break
    d1, _ = _extremal_samples(z1, w, p)
    return value, d1, d2, iterations, converged


def gahler_norm(
    x1: GridFunction,
    x2: GridFunction,
    p: float,
    opts: AscentOptions | None = None,
) -> NormEstimate:
    """Dual-supremum two-argument norm, estimated by multi-start ascent.

    The supremum runs over pairs of functions in the unit ball of the
    conjugate exponent; the estimate is the pairing determinant at an
    explicit feasible dual pair, hence a certified lower bound.  Starts are
    the dual witnesses of each argument followed by seeded random draws on
    the conjugate unit sphere; ties keep the earliest start.
    """
    x1.rule.require_same(x2.rule)
    p = float(p)
    conjugate_exponent(p)
    if opts is None:
        opts = AscentOptions()
    w = x1.rule.weights
    a1 = x1.samples
    a2 = x2.samples

    d2_starts: list[np.ndarray] = []
    for a in (a1, a2):
        d, norm = _extremal_samples(a, w, p)
        if norm > 0.0:
            d2_starts.append(d)
    d2_starts = d2_starts[: opts.starts]
    draw = 0
    while len(d2_starts) < opts.starts and draw < opts.starts + 16:
        rng = np.random.default_rng((opts.seed, draw))
        cand = _dual_normalize(rng.standard_normal(a1.size), w, p)
        draw += 1
        if cand is not None:
            d2_starts.append(cand)

    best: tuple[float, np.ndarray, np.ndarray, int, bool] | None = None
    for d2 in d2_starts:
        result = _ascend(w, a1, a2, p, d2, opts.tol, opts.max_iter)
        if best is None or result[0] > best[0]:
            best = result
    if best is None:  # both inputs identically zero and no usable draw
        zeros = np.zeros_like(a1)
        best = (0.0, zeros, zeros, 0, True)
    _, d1, d2, iterations, converged = best
    y1 = GridFunction(x1.rule, d1)
    y2 = GridFunction(x1.rule, d2)
    det = pairing_determinant(x1, x2, y1, y2)
    return NormEstimate(
        value=max(det, 0.0),
        converged=converged,
        iterations=iterations,
        starts=len(d2_starts),
        maximizers=(y1, y2),
        is_lower_bound=True,
    )
