"""Quadrature rules on [0, 1] and functions/kernels sampled on them.

Every integral in this package is a finite weighted sum over a rule's nodes.
Functions exist only as node samples; bivariate kernels as node-by-node
matrices.  All generators are deterministic in their seed arguments.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError, InvalidSizeError, SpecParseError

__all__ = [
    "QuadratureRule",
    "GridFunction",
    "Kernel",
    "make_rule",
    "integrate",
    "sample_function",
    "sample_kernel",
    "function_to_csv",
    "kernel_to_csv",
    "stable_seed",
]


def stable_seed(*parts) -> int:
    """Platform-stable 63-bit seed derived by hashing the given parts."""
    text = "|".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode()).digest()
    return int.from_bytes(digest[:8], "little") >> 1


def _as_readonly(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True)
    if arr.ndim != ndim:
        raise InvalidSizeError(f"expected a {ndim}-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidSizeError("samples must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Strictly increasing nodes in [0, 1] with positive weights summing to 1."""

    kind: str
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "nodes", _as_readonly(self.nodes, 1))
        object.__setattr__(self, "weights", _as_readonly(self.weights, 1))
        if self.nodes.shape != self.weights.shape or self.nodes.size < 2:
            raise InvalidSizeError("need matching nodes/weights arrays of size >= 2")
        if self.nodes[0] < 0.0 or self.nodes[-1] > 1.0:
            raise InvalidSizeError("nodes must lie in [0, 1]")
        if np.any(np.diff(self.nodes) <= 0):
            raise InvalidSizeError("nodes must be strictly increasing")
        if np.any(self.weights <= 0):
            raise InvalidSizeError("weights must be positive")
        if abs(float(self.weights.sum()) - 1.0) > 1e-14:
            raise InvalidSizeError("weights must sum to 1")

    @property
    def n(self) -> int:
        return int(self.nodes.size)

    @property
    def digest(self) -> str:
        """Stable identifier of (kind, size) used for compatibility checks."""
        return f"{self.kind}:{self.n}"

    def require_same(self, other: "QuadratureRule") -> None:
        if self.digest != other.digest:
            raise GridMismatchError(
                f"incompatible rules: {self.digest} vs {other.digest}"
            )


def make_rule(kind: str, n: int) -> QuadratureRule:
    """Build a rule with ``n`` total nodes.

    ``kind`` is one of ``midpoint``, ``trapezoid``, or ``gauss[:k]`` where
    ``k`` is the per-panel node count of a composite Gauss-Legendre rule
    (default 4; ``n`` must be divisible by ``k``).
    """
    if n < 2:
        raise InvalidSizeError(f"need at least 2 nodes, got {n}")
    if kind == "midpoint":
        nodes = (np.arange(n) + 0.5) / n
        weights = np.full(n, 1.0 / n)
        return QuadratureRule("midpoint", nodes, weights)
    if kind == "trapezoid":
        nodes = np.linspace(0.0, 1.0, n)
        h = 1.0 / (n - 1)
        weights = np.full(n, h)
        weights[0] = weights[-1] = h / 2.0
        return QuadratureRule("trapezoid", nodes, weights)
    if kind == "gauss" or kind.startswith("gauss:"):
        per_panel = 4
        if kind.startswith("gauss:"):
            try:
                per_panel = int(kind.split(":", 1)[1])
            except ValueError:
                raise SpecParseError(f"bad gauss rule kind {kind!r}") from None
        if per_panel < 1:
            raise InvalidSizeError("gauss rule needs at least 1 node per panel")
        if n % per_panel != 0:
            raise InvalidSizeError(
                f"gauss:{per_panel} needs a node count divisible by {per_panel}, got {n}"
            )
        panels = n // per_panel
        ref_nodes, ref_weights = np.polynomial.legendre.leggauss(per_panel)
        width = 1.0 / panels
        left = np.arange(panels) * width
        # map the [-1, 1] reference panel into each subinterval
        nodes = (left[:, None] + (ref_nodes[None, :] + 1.0) * (width / 2.0)).ravel()
        weights = np.tile(ref_weights * (width / 2.0), panels)
        return QuadratureRule(f"gauss{per_panel}", nodes, weights)
    raise SpecParseError(f"unknown rule kind {kind!r}")


@dataclass(frozen=True, eq=False)
class GridFunction:
    """A function on [0, 1] represented by its samples at a rule's nodes."""

    rule: QuadratureRule
    samples: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "samples", _as_readonly(self.samples, 1))
        if self.samples.size != self.rule.n:
            raise InvalidSizeError(
                f"{self.samples.size} samples for a {self.rule.n}-node rule"
            )

    @property
    def rule_digest(self) -> str:
        return self.rule.digest

    def content_digest(self) -> str:
        return hashlib.sha256(self.samples.tobytes()).hexdigest()[:12]

    def __add__(self, other: "GridFunction") -> "GridFunction":
        self.rule.require_same(other.rule)
        return GridFunction(self.rule, self.samples + other.samples)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        self.rule.require_same(other.rule)
        return GridFunction(self.rule, self.samples - other.samples)

    def __mul__(self, scalar: float) -> "GridFunction":
        return GridFunction(self.rule, self.samples * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "GridFunction":
        return GridFunction(self.rule, -self.samples)


@dataclass(frozen=True, eq=False)
class Kernel:
    """A bivariate kernel sampled as ``samples[i, j] = k(u_i, u_j)``."""

    rule: QuadratureRule
    samples: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "samples", _as_readonly(self.samples, 2))
        if self.samples.shape != (self.rule.n, self.rule.n):
            raise InvalidSizeError(
                f"kernel shape {self.samples.shape} for a {self.rule.n}-node rule"
            )

    @property
    def rule_digest(self) -> str:
        return self.rule.digest

    def content_digest(self) -> str:
        return hashlib.sha256(self.samples.tobytes()).hexdigest()[:12]

    def __add__(self, other: "Kernel") -> "Kernel":
        self.rule.require_same(other.rule)
        return Kernel(self.rule, self.samples + other.samples)

    def __sub__(self, other: "Kernel") -> "Kernel":
        self.rule.require_same(other.rule)
        return Kernel(self.rule, self.samples - other.samples)

    def __mul__(self, scalar: float) -> "Kernel":
        return Kernel(self.rule, self.samples * float(scalar))

    __rmul__ = __mul__


def integrate(rule: QuadratureRule, f: GridFunction) -> float:
    """Weighted-sum approximation of the integral of ``f`` over [0, 1]."""
    rule.require_same(f.rule)
    return float(rule.weights @ f.samples)


def _fourier_samples(t: np.ndarray, seed: int, modes: int) -> np.ndarray:
    """Random smooth series a0 + sum_k (a_k cos(pi k t) + b_k sin(pi k t)) / k^2.

    Half-interval frequencies keep the boundary derivatives generically
    mismatched, so midpoint refinement shows its usual O(n^-2) error decay
    instead of integrating the series exactly.
    """
    if modes < 1:
        raise SpecParseError("fourier spec needs at least 1 mode")
    rng = np.random.default_rng(seed)
    out = np.full_like(t, rng.standard_normal())
    for k in range(1, modes + 1):
        a, b = rng.standard_normal(2) / (k * k)
        out = out + a * np.cos(np.pi * k * t) + b * np.sin(np.pi * k * t)
    return out


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise SpecParseError(f"bad {what} {text!r}") from None


def _parse_floats(text: str, what: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise SpecParseError(f"bad {what} {text!r}") from None


def _load_csv_vector(path: str) -> np.ndarray:
    try:
        values = np.loadtxt(path, dtype=float, ndmin=1)
    except OSError:
        raise SpecParseError(f"cannot read csv file {path!r}") from None
    except ValueError:
        raise SpecParseError(f"malformed function csv {path!r}") from None
    if values.ndim != 1:
        raise SpecParseError(f"function csv {path!r} must have one value per line")
    return values


def _load_csv_matrix(path: str) -> np.ndarray:
    try:
        values = np.loadtxt(path, dtype=float, delimiter=",", ndmin=2)
    except OSError:
        raise SpecParseError(f"cannot read csv file {path!r}") from None
    except ValueError:
        raise SpecParseError(f"malformed kernel csv {path!r}") from None
    return values


def sample_function(rule: QuadratureRule, spec: str) -> GridFunction:
    """Sample a function spec at the rule's nodes.

    Grammar: ``const:<value>``, ``poly:<c0>,<c1>,...`` (coefficients in
    increasing degree), ``fourier:<seed>,<modes>``, ``csv:<path>`` (one value
    per line, node order).
    """
    tag, _, payload = spec.partition(":")
    t = rule.nodes
    if tag == "const" and payload:
        (value,) = _parse_floats(payload, "const value") or [0.0]
        return GridFunction(rule, np.full(rule.n, value))
    if tag == "poly" and payload:
        coeffs = _parse_floats(payload, "poly coefficients")
        return GridFunction(rule, np.polynomial.polynomial.polyval(t, coeffs))
    if tag == "fourier" and payload:
        parts = payload.split(",")
        if len(parts) != 2:
            raise SpecParseError(f"fourier spec needs seed,modes: {spec!r}")
        seed = _parse_int(parts[0], "fourier seed")
        modes = _parse_int(parts[1], "fourier mode count")
        return GridFunction(rule, _fourier_samples(t, seed, modes))
    if tag == "csv" and payload:
        values = _load_csv_vector(payload)
        if values.size != rule.n:
            raise GridMismatchError(
                f"csv {payload!r} has {values.size} values, rule has {rule.n} nodes"
            )
        return GridFunction(rule, values)
    raise SpecParseError(f"unknown function spec {spec!r}")


def _randsmooth_samples(rule: QuadratureRule, seed: int, modes: int) -> np.ndarray:
    """Random smooth kernel from a tensor product of the fourier basis."""
    if modes < 1:
        raise SpecParseError("randsmooth spec needs at least 1 mode")
    rng = np.random.default_rng(seed)
    t = rule.nodes
    columns = [np.ones_like(t)]
    decay = [1.0]
    for k in range(1, modes + 1):
        columns.append(np.cos(np.pi * k * t))
        columns.append(np.sin(np.pi * k * t))
        decay.extend([1.0 / (k * k)] * 2)
    basis = np.stack(columns, axis=1)
    scale = np.asarray(decay)
    coeffs = rng.standard_normal((basis.shape[1], basis.shape[1]))
    coeffs = coeffs * np.outer(scale, scale)
    return basis @ coeffs @ basis.T


def sample_kernel(rule: QuadratureRule, spec: str) -> Kernel:
    """Sample a kernel spec on the rule's node grid.

    Grammar: ``wedge:<fspec>|<fspec>`` for a(u)b(v) - a(v)b(u),
    ``randsmooth:<seed>,<modes>``, ``antisym:<kspec>`` for the antisymmetric
    part of another kernel, ``csv:<path>`` (row i = first argument at node i,
    comma-separated columns).
    """
    tag, _, payload = spec.partition(":")
    if tag == "wedge" and payload:
        parts = payload.split("|")
        if len(parts) != 2:
            raise SpecParseError(f"wedge spec needs two function specs: {spec!r}")
        a = sample_function(rule, parts[0]).samples
        b = sample_function(rule, parts[1]).samples
        return Kernel(rule, np.outer(a, b) - np.outer(b, a))
    if tag == "randsmooth" and payload:
        parts = payload.split(",")
        if len(parts) != 2:
            raise SpecParseError(f"randsmooth spec needs seed,modes: {spec!r}")
        seed = _parse_int(parts[0], "randsmooth seed")
        modes = _parse_int(parts[1], "randsmooth mode count")
        return Kernel(rule, _randsmooth_samples(rule, seed, modes))
    if tag == "antisym" and payload:
        inner = sample_kernel(rule, payload)
        return Kernel(rule, (inner.samples - inner.samples.T) / 2.0)
    if tag == "csv" and payload:
        values = _load_csv_matrix(payload)
        if values.shape != (rule.n, rule.n):
            raise GridMismatchError(
                f"csv {payload!r} has shape {values.shape}, rule needs "
                f"({rule.n}, {rule.n})"
            )
        return Kernel(rule, values)
    raise SpecParseError(f"unknown kernel spec {spec!r}")


def function_to_csv(f: GridFunction) -> str:
    """One sample per line, full round-trip precision."""
    return "\n".join(repr(float(v)) for v in f.samples) + "\n"


def kernel_to_csv(k: Kernel) -> str:
    """One row per first-argument node, comma-separated columns."""
    rows = (",".join(repr(float(v)) for v in row) for row in k.samples)
    return "\n".join(rows) + "\n"
