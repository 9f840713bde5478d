"""Semi-inner-product geometry: g, Gram determinants, projections, volume.

The functional g(x, y) = ||x||^(2-p) sum_i w_i |x_i|^(p-1) sgn(x_i) y_i is
linear in y but generally not symmetric for p != 2, so ordered formulas below
are evaluated exactly as written.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateInputError, SingularGramError
from .grid import GridFunction
from .lp_core import abs_pow, conjugate_exponent, lp_norm

__all__ = [
    "g",
    "gram_det",
    "g_projection",
    "g_orthogonalize",
    "volume",
]


def g(x: GridFunction, y: GridFunction, p: float) -> float:
    """Semi-inner product supporting the p-norm; g(0, y) = 0 by convention."""
    x.rule.require_same(y.rule)
    p = float(conjugate_exponent(p).p)
    norm = lp_norm(x, p)
    if norm == 0.0:
        return 0.0
    w = x.rule.weights
    kernel = np.sign(x.samples) * abs_pow(x.samples, p - 1.0)
    return float(norm ** (2.0 - p) * (w @ (kernel * y.samples)))


def gram_det(y1: GridFunction, y2: GridFunction, p: float) -> float:
    """g(y1,y1) g(y2,y2) - g(y1,y2) g(y2,y1), in this exact order."""
    return g(y1, y1, p) * g(y2, y2, p) - g(y1, y2, p) * g(y2, y1, p)


def g_projection(
    x: GridFunction, y1: GridFunction, y2: GridFunction, p: float
) -> GridFunction:
    """g-orthogonal projection of x onto span{y1, y2}.

    Expansion of the bordered 3x3 determinant divided by the Gram determinant:
    x_Y = (M01 y1 - M02 y2) / gram with
    M01 = g(y1,x) g(y2,y2) - g(y1,y2) g(y2,x) and
    M02 = g(y1,x) g(y2,y1) - g(y1,y1) g(y2,x).
    """
    gram = gram_det(y1, y2, p)
    scale = (lp_norm(y1, p) * lp_norm(y2, p)) ** 2
    if abs(gram) <= 1e-12 * scale:
        raise SingularGramError(
            f"gram determinant {gram:.3e} below threshold for projection"
        )
    g1x = g(y1, x, p)
    g2x = g(y2, x, p)
    m01 = g1x * g(y2, y2, p) - g(y1, y2, p) * g2x
    m02 = g1x * g(y2, y1, p) - g(y1, y1, p) * g2x
    return (m01 / gram) * y1 - (m02 / gram) * y2


def g_orthogonalize(
    x1: GridFunction, x2: GridFunction, p: float
) -> tuple[GridFunction, GridFunction]:
    """Left g-orthogonal pair: keep x1, subtract its g-component from x2.

    Linearity of g in its second slot makes g(x1, out2) vanish identically.
    """
    x1.rule.require_same(x2.rule)
    g11 = g(x1, x1, p)
    if g11 == 0.0:
        raise DegenerateInputError("cannot orthogonalize against the zero function")
    return x1, x2 - (g(x1, x2, p) / g11) * x1


def volume(x1: GridFunction, x2: GridFunction, p: float) -> float:
    """Product of p-norms of the left g-orthogonalized pair; 0 when dependent."""
    x1.rule.require_same(x2.rule)
    if not np.any(x1.samples) or not np.any(x2.samples):
        return 0.0
    o1, o2 = g_orthogonalize(x1, x2, p)
    return lp_norm(o1, p) * lp_norm(o2, p)
