"""Weighted p-norm primitives on a shared quadrature rule.

All norms and pairings weight node samples by the quadrature weights, so a
grid function is treated as an element of a discretized function space on
[0, 1] rather than as a bare coordinate vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, ExponentError
from .grid import GridFunction

__all__ = [
    "Exponent",
    "conjugate_exponent",
    "abs_pow",
    "lp_norm",
    "pairing",
    "HolderExtremal",
    "holder_extremal",
    "require_nonzero",
]


@dataclass(frozen=True)
class Exponent:
    """A conjugate exponent pair satisfying 1/p + 1/q = 1."""

    p: float
    q: float

    def __post_init__(self) -> None:
        p, q = float(self.p), float(self.q)
        if not p >= 1.0:
            raise ExponentError(f"exponent must satisfy p >= 1, got {p!r}")
        if p == 1.0:
            if q != math.inf:
                raise ExponentError("p = 1 must pair with q = inf")
            return
        if math.isinf(p):
            raise ExponentError("the first exponent of the pair must be finite")
        if math.isinf(q):
            raise ExponentError("q = inf pairs only with p = 1")
        if abs(1.0 / p + 1.0 / q - 1.0) > 1e-12:
            raise ExponentError(f"exponents are not conjugate: p={p!r}, q={q!r}")


def conjugate_exponent(p: float) -> Exponent:
    """Conjugate exponent pair for a finite p >= 1 (p = 1 pairs with inf)."""
    p = float(p)
    if math.isinf(p):
        raise ExponentError("the primary exponent must be finite (p >= 1)")
    if not p >= 1.0:
        raise ExponentError(f"exponent must satisfy p >= 1, got {p!r}")
    if p == 1.0:
        return Exponent(1.0, math.inf)
    return Exponent(p, p / (p - 1.0))


def abs_pow(values: np.ndarray, p: float) -> np.ndarray:
    """Elementwise |values| ** p with fast paths for common exponents."""
    a = np.abs(values)
    if p == 1.0:
        return a
    if p == 2.0:
        return a * a
    if p == 3.0:
        return a * a * a
    if p == 1.5:
        return a * np.sqrt(a)
    if p == 0.5:
        return np.sqrt(a)
    return a**p


def _norm_samples(z: np.ndarray, weights: np.ndarray, p: float) -> float:
    """Weighted p-norm of raw samples, scaled to avoid overflow."""
    scale = float(np.max(np.abs(z))) if z.size else 0.0
    if scale == 0.0:
        return 0.0
    total = weights @ abs_pow(z / scale, p)
    return float(scale * total ** (1.0 / p))


def lp_norm(x: GridFunction, p: float) -> float:
    """Weighted p-norm of a grid function; p = math.inf gives the max norm."""
    p = float(p)
    if math.isinf(p):
        return float(np.max(np.abs(x.samples)))
    if not p >= 1.0:
        raise ExponentError(f"norm exponent must satisfy p >= 1, got {p!r}")
    return _norm_samples(x.samples, x.rule.weights, p)


def pairing(x: GridFunction, y: GridFunction) -> float:
    """Weighted dual pairing: the quadrature sum of the product of samples."""
    x.rule.require_same(y.rule)
    return float(x.rule.weights @ (x.samples * y.samples))


@dataclass(frozen=True)
class HolderExtremal:
    """Unit-ball dual witness attaining the pairing bound for a function.

    ``y`` has unit conjugate-exponent norm (unless ``degenerate``), ``value``
    equals both the p-norm of the input and the pairing of the input with
    ``y``, and ``degenerate`` marks an identically-zero input, in which case
    ``y`` is zero and ``value`` is 0.
    """

    y: GridFunction
    value: float
    degenerate: bool


def _extremal_samples(
    z: np.ndarray, weights: np.ndarray, p: float
) -> tuple[np.ndarray, float]:
    """Raw-array core of `holder_extremal`: returns (dual samples, p-norm).

    The input is scaled by its max entry before powers are taken, so very
    large or very small samples do not overflow; the construction is exactly
    odd (negating the input negates the witness bit for bit).
    """
    scale = float(np.max(np.abs(z))) if z.size else 0.0
    if scale == 0.0:
        return np.zeros_like(z), 0.0
    u = z / scale
    if p == 1.0:
        return np.sign(u), float(scale * (weights @ np.abs(u)))
    norm_u = float((weights @ abs_pow(u, p)) ** (1.0 / p))
    y = np.sign(u) * abs_pow(u, p - 1.0) / norm_u ** (p - 1.0)
    return y, float(scale * norm_u)


def holder_extremal(x: GridFunction, p: float) -> HolderExtremal:
    """Dual unit vector whose pairing with ``x`` attains the p-norm of ``x``.

    For p = 1 the witness is the sign vector (unit max norm); for p > 1 it
    is the normalized signed (p-1) power.  The pairing of ``x`` with the
    witness reproduces ``value`` exactly up to rounding.
    """
    p = float(p)
    if math.isinf(p) or p < 1.0:
        raise ExponentError(
            f"the extremal construction needs a finite exponent p >= 1, got {p!r}"
        )
    y, value = _extremal_samples(x.samples, x.rule.weights, p)
    return HolderExtremal(GridFunction(x.rule, y), value, value == 0.0)


def require_nonzero(x: GridFunction, what: str) -> None:
    """Raise DegenerateInputError when a function is identically zero."""
    if float(np.max(np.abs(x.samples))) == 0.0:
        raise DegenerateInputError(f"{what} must not be identically zero")
