"""Seeded verification suites with explicit margin accounting.

Each suite turns a family of identities and inequalities into randomized,
reproducible trials.  Every check folds its tolerance into a single margin:

    margin = tolerance - violation

where ``violation`` is the normalized amount by which the checked relation
fails (negative when it holds with slack), so ``margin >= 0`` is the pass
condition for every check.  Checks whose only realistic failure mode is an
under-converged lower-bound estimate on the unfavourable side carry the
suffix ``.monitor`` and a larger default budget; all other checks are hard
pass/fail at tight tolerances.

Reports serialize to a stable JSON schema.  Two runs with the same
configuration produce identical trial payloads regardless of execution
order or thread count; the wall-clock field in the summary is the only
non-deterministic entry, and :func:`reports_equivalent` ignores it.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from ._version import __version__
from .errors import SingularGramError
from .g_geometry import g, g_orthogonalize, g_projection, gram_det, volume
from .grid import GridFunction, Kernel, QuadratureRule, make_rule, sample_function, sample_kernel, stable_seed
from .lp_core import abs_pow, lp_norm, pairing
from .two_functional import (
    RatioSearchOptions,
    apply_kernel,
    eval_f,
    fnorm_21,
    fnorm_22_G,
    fnorm_22_H,
    kernel_from_bilinear,
    yq_norm,
)
from .two_norm import AscentOptions, gahler_norm, gunawan_norm, pairing_determinant

__all__ = [
    "SUITE_IDS",
    "SuiteConfig",
    "TrialRecord",
    "Report",
    "generate_pair",
    "generate_kernel",
    "run_suite",
    "reports_equivalent",
]

SUITE_IDS = (
    "axioms",
    "sandwich_2_2",
    "isometry_2_1",
    "g_properties",
    "geometry_volume",
    "functional_bounds_2_3_2_6",
    "roundtrip",
    "quadrature_convergence",
)

#: Suites whose default workload is quadratic in a way that benefits from a
#: coarser default grid; every other suite defaults to 256 nodes.
_DEFAULT_GRID = {"functional_bounds_2_3_2_6": 64, "roundtrip": 64}
_FALLBACK_GRID = 256

_SMOOTH_MODES = 6
_TINY = 1e-300

# Stream tags for deriving independent random streams from one trial seed.
_STREAM_PAIR = 1
_STREAM_KERNEL = 2
_STREAM_EXTRA = 3


# ---------------------------------------------------------------------------
# configuration and report containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    """Configuration of a single verification suite run.

    ``grid_n=None`` selects the per-suite default (64 nodes for the
    ratio-search and roundtrip suites, 256 elsewhere).  ``tolerances`` maps
    check names to overriding tolerance values; unnamed checks keep their
    documented defaults.
    """

    suite_id: str
    p_list: tuple = (1.0, 1.5, 2.0, 3.0)
    grid_n: int | None = None
    rule_kind: str = "midpoint"
    trials: int = 100
    master_seed: int = 0
    tolerances: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.suite_id not in SUITE_IDS:
            known = ", ".join(SUITE_IDS)
            raise ValueError(f"unknown suite {self.suite_id!r}; known suites: {known}")
        plist = tuple(float(p) for p in self.p_list)
        if not plist:
            raise ValueError("p_list must not be empty")
        for p in plist:
            if not math.isfinite(p) or p < 1.0:
                raise ValueError(f"every exponent must be a finite float >= 1, got {p!r}")
        object.__setattr__(self, "p_list", plist)
        if int(self.trials) < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials!r}")
        object.__setattr__(self, "trials", int(self.trials))
        object.__setattr__(self, "master_seed", int(self.master_seed))
        if self.grid_n is not None:
            object.__setattr__(self, "grid_n", int(self.grid_n))

    @property
    def resolved_grid(self) -> int:
        if self.grid_n is not None:
            return self.grid_n
        return _DEFAULT_GRID.get(self.suite_id, _FALLBACK_GRID)


@dataclass
class TrialRecord:
    """Outcome of one seeded trial: inputs, computed values, folded margins."""

    trial_id: int
    p: float
    sub_seed: int
    inputs: dict
    values: dict
    margins: dict
    flags: dict
    passed: bool

    def to_payload(self) -> dict:
        return {
            "id": self.trial_id,
            "p": self.p,
            "sub_seed": self.sub_seed,
            "inputs": self.inputs,
            "values": self.values,
            "margins": self.margins,
            "flags": self.flags,
            "pass": self.passed,
        }


@dataclass
class Report:
    """Full result of one suite run, serializable to stable JSON."""

    suite: str
    p_list: tuple
    grid: int
    rule: str
    seed: int
    version: str
    trials: list
    summary: dict

    def to_payload(self) -> dict:
        return {
            "suite": self.suite,
            "p": list(self.p_list),
            "grid": self.grid,
            "rule": self.rule,
            "seed": self.seed,
            "version": self.version,
            "trials": [t.to_payload() for t in self.trials],
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), sort_keys=True, indent=2)


def reports_equivalent(a, b) -> bool:
    """True when two reports (or payload dicts) agree everywhere except wall time."""
    pa = a.to_payload() if isinstance(a, Report) else json.loads(json.dumps(a))
    pb = b.to_payload() if isinstance(b, Report) else json.loads(json.dumps(b))
    for payload in (pa, pb):
        payload.get("summary", {}).pop("wall_ms", None)
    return json.loads(json.dumps(pa, sort_keys=True)) == json.loads(json.dumps(pb, sort_keys=True))


# ---------------------------------------------------------------------------
# seeding and input generation
# ---------------------------------------------------------------------------


def _sub_seed(master_seed: int, suite_id: str, p: float, trial_id: int) -> int:
    """Per-trial seed: SHA-256 of the run coordinates, folded to 63 bits."""
    text = f"{master_seed}|{suite_id}|{p!r}|{trial_id}"
    digest = hashlib.sha256(text.encode()).digest()
    return int.from_bytes(digest[:8], "little") & ((1 << 63) - 1)


def _draw_function(rng: np.random.Generator, rule: QuadratureRule):
    """One random test function: smooth band-limited (3/4) or rough nodal (1/4)."""
    if rng.uniform() < 0.25:
        fn = GridFunction(rule, rng.standard_normal(rule.n))
        desc = {"generator": "nodal-normal", "digest": fn.content_digest()}
    else:
        seed = int(rng.integers(0, 2**31 - 1))
        spec = f"fourier:{seed},{_SMOOTH_MODES}"
        fn = sample_function(rule, spec)
        desc = {"generator": spec, "digest": fn.content_digest()}
    return fn, desc


def _generate_pair_described(sub_seed: int, rule: QuadratureRule):
    rng = np.random.default_rng((sub_seed, _STREAM_PAIR))
    f1, d1 = _draw_function(rng, rule)
    f2, d2 = _draw_function(rng, rule)
    return (f1, f2), {"x1": d1, "x2": d2}


def generate_pair(sub_seed: int, rule: QuadratureRule):
    """Deterministic random function pair for a trial seed."""
    (f1, f2), _ = _generate_pair_described(sub_seed, rule)
    return f1, f2


def _generate_kernel_described(sub_seed: int, rule: QuadratureRule, antisymmetric: bool):
    rng = np.random.default_rng((sub_seed, _STREAM_KERNEL))
    if not antisymmetric:
        seed = int(rng.integers(0, 2**31 - 1))
        spec = f"randsmooth:{seed},{_SMOOTH_MODES}"
        kern = sample_kernel(rule, spec)
        return kern, {"theta": {"generator": spec, "digest": kern.content_digest()}}
    terms = int(rng.integers(1, 4))
    specs = []
    for _ in range(terms):
        sa = int(rng.integers(0, 2**31 - 1))
        sb = int(rng.integers(0, 2**31 - 1))
        specs.append(f"wedge:fourier:{sa},{_SMOOTH_MODES}|fourier:{sb},{_SMOOTH_MODES}")
    kern = sample_kernel(rule, specs[0])
    for spec in specs[1:]:
        kern = kern + sample_kernel(rule, spec)
    desc = {"theta": {"generator": " + ".join(specs), "digest": kern.content_digest()}}
    return kern, desc


def generate_kernel(sub_seed: int, rule: QuadratureRule, antisymmetric: bool) -> Kernel:
    """Deterministic random kernel; antisymmetric ones are sums of wedge terms."""
    kern, _ = _generate_kernel_described(sub_seed, rule, antisymmetric)
    return kern


# ---------------------------------------------------------------------------
# margin bookkeeping
# ---------------------------------------------------------------------------


class _MarginSink:
    """Collects named margins, honoring per-check tolerance overrides."""

    def __init__(self, overrides: Mapping[str, float]):
        self._overrides = overrides
        self.margins: dict = {}

    def check(self, name: str, violation: float, tol: float) -> None:
        tol = float(self._overrides.get(name, tol))
        self.margins[name] = float(tol - violation)

    def agreement(self, name: str, a: float, b: float, tol: float, scale: float | None = None) -> None:
        s = scale if scale is not None else max(abs(a), abs(b), _TINY)
        self.check(name, abs(a - b) / s, tol)

    def upper_bound(self, name: str, lhs: float, rhs: float, tol: float, scale: float | None = None) -> None:
        s = scale if scale is not None else max(abs(lhs), abs(rhs), _TINY)
        self.check(name, (lhs - rhs) / s, tol)


# ---------------------------------------------------------------------------
# per-suite trial bodies
# ---------------------------------------------------------------------------


def _row_norms(mat: np.ndarray, weights: np.ndarray, p: float) -> np.ndarray:
    return (abs_pow(mat, p) @ weights) ** (1.0 / p)


def _top_singular_value(kern: Kernel) -> float:
    """Largest singular value of the weight-symmetrized kernel matrix."""
    root = np.sqrt(kern.rule.weights)
    mat = root[:, None] * kern.samples * root[None, :]
    return float(np.linalg.svd(mat, compute_uv=False)[0])


def _trial_axioms(rule, p, sub_seed, sink):
    (x1, x2), inputs = _generate_pair_described(sub_seed, rule)
    rng = np.random.default_rng((sub_seed, _STREAM_EXTRA))
    x3, d3 = _draw_function(rng, rule)
    alpha = float(rng.choice([-1.0, 1.0]) * 10.0 ** rng.uniform(-3.0, 3.0))
    inputs["x3"] = d3
    inputs["alpha"] = alpha
    opts = AscentOptions(seed=sub_seed)

    h12 = gunawan_norm(x1, x2, p)
    h21 = gunawan_norm(x2, x1, p)
    h_dep = gunawan_norm(x1, alpha * x1, p)
    h_scaled = gunawan_norm(alpha * x1, x2, p)
    h_sum = gunawan_norm(x1 + x3, x2, p)
    h32 = gunawan_norm(x3, x2, p)

    sink.check("gunawan_axiom1_dependent", h_dep, 1e-8)
    sink.agreement("gunawan_axiom2_swap", h12, h21, 1e-9)
    sink.agreement("gunawan_axiom3_scale", h_scaled, abs(alpha) * h12, 1e-8)
    sink.check("gunawan_axiom4_triangle", h_sum - (h12 + h32), 1e-7)

    g12 = gahler_norm(x1, x2, p, opts)
    g21 = gahler_norm(x2, x1, p, opts)
    g_dep = gahler_norm(x1, alpha * x1, p, opts)
    g_scaled = gahler_norm(alpha * x1, x2, p, opts)
    g_sum = gahler_norm(x1 + x3, x2, p, opts)
    g32 = gahler_norm(x3, x2, p, opts)

    sink.check("gahler_axiom1_dependent", g_dep.value, 1e-8)
    sink.agreement("gahler_axiom2_swap", g12.value, g21.value, 1e-9)
    sink.agreement("gahler_axiom3_scale", g_scaled.value, abs(alpha) * g12.value, 1e-8)
    # Triangle check: re-evaluate each right-hand term at the left-hand
    # side's own maximizing dual pair.  The pairing determinant is linear in
    # its first slot, so these refinements make the comparison exact up to
    # rounding whenever the individual searches are merely under-converged.
    y1, y2 = g_sum.maximizers
    g12_ref = max(g12.value, pairing_determinant(x1, x2, y1, y2))
    g32_ref = max(g32.value, pairing_determinant(x3, x2, y1, y2))
    sink.check("gahler_axiom4_triangle", g_sum.value - (g12_ref + g32_ref), 1e-7)

    values = {
        "gunawan": h12,
        "gunawan_swapped": h21,
        "gunawan_dependent": h_dep,
        "gunawan_scaled": h_scaled,
        "gunawan_sum": h_sum,
        "gunawan_third": h32,
        "gahler": g12.value,
        "gahler_swapped": g21.value,
        "gahler_dependent": g_dep.value,
        "gahler_scaled": g_scaled.value,
        "gahler_sum": g_sum.value,
        "gahler_third": g32.value,
    }
    flags = {
        "gahler_converged": bool(
            g12.converged
            and g21.converged
            and g_dep.converged
            and g_scaled.converged
            and g_sum.converged
            and g32.converged
        )
    }
    return inputs, values, flags


def _trial_sandwich(rule, p, sub_seed, sink):
    (x1, x2), inputs = _generate_pair_described(sub_seed, rule)
    opts = AscentOptions(seed=sub_seed)
    h = gunawan_norm(x1, x2, p)
    est = gahler_norm(x1, x2, p, opts)
    c_lo = 2.0 ** (1.0 / p - 1.0)
    c_hi = 2.0 ** (1.0 / p)
    scale = max(h, est.value, _TINY)
    # The estimate sits below the true supremum, so the lower comparison can
    # only fail through under-convergence: monitored with a wide budget.
    sink.check("sandwich_lower.monitor", (c_lo * h - est.value) / scale, 1e-4)
    # The upper comparison cannot produce a spurious violation: hard check.
    sink.check("sandwich_upper", (est.value - c_hi * h) / scale, 1e-6)
    values = {"gunawan": h, "gahler": est.value, "lower_factor": c_lo, "upper_factor": c_hi}
    if p == 2.0:
        gram = pairing(x1, x1) * pairing(x2, x2) - pairing(x1, x2) ** 2
        root = math.sqrt(max(gram, 0.0))
        sink.agreement("p2_coincidence_gahler_gunawan", est.value, h, 1e-6)
        sink.agreement("p2_coincidence_gram", h, root, 1e-6)
        values["gram_root"] = root
    flags = {"gahler_converged": est.converged}
    return inputs, values, flags


_BOUNDEDNESS_PAIRS = 100


def _trial_isometry(rule, p, sub_seed, sink):
    kern, inputs = _generate_kernel_described(sub_seed, rule, antisymmetric=False)
    opts = AscentOptions(seed=sub_seed)
    op_est = fnorm_21(kern, p, opts)
    img_est = yq_norm(kern, p, opts)
    sink.agreement("isometry_agreement", op_est.value, img_est.value, 1e-6)
    values = {"fnorm_21": op_est.value, "yq_norm": img_est.value}
    if p == 2.0:
        sv = _top_singular_value(kern)
        sink.agreement("p2_svd_fnorm_21", op_est.value, sv, 1e-6)
        sink.agreement("p2_svd_yq_norm", img_est.value, sv, 1e-6)
        values["singular_value"] = sv

    # Boundedness of the bilinear form against the operator norm.
    rng = np.random.default_rng((sub_seed, _STREAM_EXTRA))
    w = rule.weights
    xs = rng.standard_normal((_BOUNDEDNESS_PAIRS, rule.n))
    ys = rng.standard_normal((_BOUNDEDNESS_PAIRS, rule.n))
    image = (xs * w) @ kern.samples
    lhs = np.abs((image * ys) @ w)
    if math.isinf(p):
        nx = np.max(np.abs(xs), axis=1)
        ny = np.max(np.abs(ys), axis=1)
    else:
        nx = _row_norms(xs, w, p)
        ny = _row_norms(ys, w, p)
    rhs = op_est.value * nx * ny
    worst = float(np.max((lhs - rhs) / np.maximum(rhs, _TINY)))
    sink.check("boundedness", worst, 1e-6)
    values["boundedness_worst_ratio"] = worst

    flags = {
        "fnorm_21_converged": op_est.converged,
        "yq_norm_converged": img_est.converged,
    }
    return inputs, values, flags


def _trial_g_properties(rule, p, sub_seed, sink):
    (x, y), inputs = _generate_pair_described(sub_seed, rule)
    rng = np.random.default_rng((sub_seed, _STREAM_EXTRA))
    z, dz = _draw_function(rng, rule)
    alpha = float(rng.choice([-1.0, 1.0]) * 10.0 ** rng.uniform(-2.0, 2.0))
    beta = float(rng.choice([-1.0, 1.0]) * 10.0 ** rng.uniform(-2.0, 2.0))
    inputs["z"] = dz
    inputs["alpha"] = alpha
    inputs["beta"] = beta

    nx = lp_norm(x, p)
    ny = lp_norm(y, p)
    gxx = g(x, x, p)
    gxy = g(x, y, p)
    gxz = g(x, z, p)

    sink.agreement("g_prop1_self", gxx, nx * nx, 1e-10)
    sink.agreement("g_prop2_homogeneous", g(alpha * x, beta * y, p), alpha * beta * gxy, 1e-10)
    shift_scale = max(nx * nx, abs(gxy), _TINY)
    sink.agreement("g_prop3_shift", g(x, x + y, p), nx * nx + gxy, 1e-10, scale=shift_scale)
    sink.check("g_prop4_bound", (abs(gxy) - nx * ny) / max(nx * ny, _TINY), 1e-10)
    add_scale = max(abs(gxy), abs(gxz), _TINY)
    sink.agreement("g_prop5_additive", g(x, y + z, p), gxy + gxz, 1e-12, scale=add_scale)

    o1, o2 = g_orthogonalize(x, y, p)
    resid = abs(g(o1, o2, p))
    denom = max(lp_norm(o1, p) * lp_norm(o2, p), _TINY)
    sink.check("orthogonality", resid / denom, 1e-10)

    values = {
        "norm_x": nx,
        "norm_y": ny,
        "g_xy": gxy,
        "g_xz": gxz,
        "orthogonality_residual": resid,
    }
    flags = {}

    if p == 2.0:
        target = z
        try:
            proj = g_projection(target, x, y, 2.0)
            w = rule.weights
            root = np.sqrt(w)
            design = np.stack([root * x.samples, root * y.samples], axis=1)
            coeffs, *_ = np.linalg.lstsq(design, root * target.samples, rcond=None)
            oracle = float(coeffs[0]) * x + float(coeffs[1]) * y
            diff = lp_norm(proj + (-1.0) * oracle, 2.0)
            denom = max(lp_norm(oracle, 2.0), 1.0)
            sink.check("p2_projection_lstsq", diff / denom, 1e-8)
            values["projection_error"] = diff / denom
        except SingularGramError:
            flags["projection_skipped_singular"] = True
    return inputs, values, flags


def _trial_geometry_volume(rule, p, sub_seed, sink):
    (x1, x2), inputs = _generate_pair_described(sub_seed, rule)
    rng = np.random.default_rng((sub_seed, _STREAM_EXTRA))
    alpha = float(rng.choice([-1.0, 1.0]) * 10.0 ** rng.uniform(-1.0, 1.0))
    inputs["alpha"] = alpha
    opts = AscentOptions(seed=sub_seed)

    vol = volume(x1, x2, p)
    est = gahler_norm(x1, x2, p, opts)
    gamma = gram_det(x1, x2, p)
    scale = max(vol, est.value, _TINY)
    sink.check("volume_le_gahler.monitor", (vol - est.value) / scale, 1e-4)
    dep = volume(x1, alpha * x1, p)
    dep_scale = max(lp_norm(x1, p) ** 2 * abs(alpha), _TINY)
    sink.check("dependent_zero", dep / dep_scale, 1e-8)

    values = {"volume": vol, "gahler": est.value, "gram_det": gamma, "dependent_volume": dep}
    flags = {"gahler_converged": est.converged, "gram_negative": bool(gamma < 0.0)}

    if p == 2.0:
        norm_scale = max((lp_norm(x1, 2.0) * lp_norm(x2, 2.0)) ** 2, _TINY)
        sink.check("p2_gram_nonnegative", -gamma / norm_scale, 1e-12)
        root = math.sqrt(max(gamma, 0.0))
        sink.agreement("p2_volume_gram", vol, root, 1e-8)
        h = gunawan_norm(x1, x2, 2.0)
        sink.agreement("p2_volume_gunawan", vol, h, 1e-6)
        sink.agreement("p2_volume_gahler", vol, est.value, 1e-6)
        values["gram_root"] = root
        values["gunawan"] = h
    return inputs, values, flags


def _trial_functional_bounds(rule, p, sub_seed, sink):
    kern, inputs = _generate_kernel_described(sub_seed, rule, antisymmetric=True)
    opts = AscentOptions(seed=sub_seed)
    # The ratio searches stop on their own plateau rule; the cap is raised
    # well above the observed worst case (321 iterations over the default
    # workloads) so the flag reflects the rule, not the budget.
    ropts = RatioSearchOptions(seed=sub_seed, max_iter=400)
    base = fnorm_21(kern, p, opts)
    g22 = fnorm_22_G(kern, p, ropts)
    h22 = fnorm_22_H(kern, p, ropts)

    # Cross-refinement: score each ratio at the other search's final pair so
    # that a pair found by one parameterization cannot silently expose an
    # under-converged value in the other.
    inner = AscentOptions(seed=stable_seed(ropts.seed, "ratio-denominator"))
    floor = 1e-10

    def _ratio(numerator_pair, denominator):
        xx, yy = numerator_pair
        den = denominator(xx, yy)
        sx = lp_norm(xx, p)
        sy = lp_norm(yy, p)
        if den <= floor * max(sx * sy, _TINY):
            return 0.0
        return abs(eval_f(kern, xx, yy)) / den

    g_ref = max(g22.value, _ratio(h22.maximizers, lambda a, b: gahler_norm(a, b, p, inner).value))
    h_ref = max(h22.value, _ratio(g22.maximizers, lambda a, b: gunawan_norm(a, b, p)))

    c_lo = 2.0 ** (1.0 / p - 1.0)
    c_hi = 2.0 ** (1.0 / p)
    scale = max(base.value, _TINY)
    # Lower comparison holds structurally: the ratio search scores the
    # operator-norm maximizer pair directly, and the denominator never
    # exceeds twice the product of the pair's norms.
    sink.check("thm23_lower", (0.5 * base.value - g_ref) / scale, 1e-4)
    sink.check("thm23_upper.monitor", (g_ref - base.value) / scale, 1e-4)
    sink.check("cor26_lower.monitor", (c_lo * g_ref - h_ref) / scale, 1e-4)
    sink.check("cor26_upper", (h_ref - c_hi * g_ref) / scale, 1e-4)

    # Antisymmetry of the bilinear form on random rough inputs.
    rng = np.random.default_rng((sub_seed, _STREAM_EXTRA))
    xr = GridFunction(rule, rng.standard_normal(rule.n))
    yr = GridFunction(rule, rng.standard_normal(rule.n))
    fxy = eval_f(kern, xr, yr)
    fyx = eval_f(kern, yr, xr)
    sink.agreement("remark11_swap", fxy, -fyx, 1e-12)
    diag = abs(eval_f(kern, xr, xr))
    diag_scale = max(base.value * lp_norm(xr, p) ** 2, _TINY)
    sink.check("remark11_diagonal", diag / diag_scale, 1e-12)

    values = {
        "fnorm_21": base.value,
        "fnorm_22_G": g22.value,
        "fnorm_22_H": h22.value,
        "fnorm_22_G_refined": g_ref,
        "fnorm_22_H_refined": h_ref,
        "lower_factor": c_lo,
        "upper_factor": c_hi,
    }
    flags = {
        "fnorm_21_converged": base.converged,
        "fnorm_22_G_converged": g22.converged,
        "fnorm_22_H_converged": h22.converged,
    }
    return inputs, values, flags


def _trial_roundtrip(rule, p, sub_seed, sink):
    kern, inputs = _generate_kernel_described(sub_seed, rule, antisymmetric=False)

    def form(a, b):
        return eval_f(kern, a, b)

    rebuilt = kernel_from_bilinear(form, rule)
    scale = max(1.0, float(np.max(np.abs(kern.samples))))
    worst = float(np.max(np.abs(rebuilt.samples - kern.samples)))
    sink.check("roundtrip_entrywise", worst / scale, 1e-12)
    values = {"max_abs_entry": float(np.max(np.abs(kern.samples))), "max_abs_error": worst}
    return inputs, values, {}


_LADDER = (64, 128, 256)
_REFERENCE_GRID = 1024


def _trial_quadrature(rule, p, sub_seed, sink):
    # This suite always exercises the midpoint ladder: its error model is the
    # clean O(n^-2) decay that the doubling-ratio check encodes.
    #
    # For p == 1 that model does not hold level by level: |.|^1 leaves the
    # double-sum integrand with kinks along the zero curves of the pair
    # determinant, and the offset of those curves within grid cells shifts
    # with n, so the n^-2 error coefficient oscillates between levels.  The
    # p == 1 trials therefore assert the weaker decay law that is actually
    # true: the finest level beats both coarser levels by a factor of two.
    rng = np.random.default_rng((sub_seed, _STREAM_PAIR))
    s1 = int(rng.integers(0, 2**31 - 1))
    s2 = int(rng.integers(0, 2**31 - 1))
    spec1 = f"fourier:{s1},{_SMOOTH_MODES}"
    spec2 = f"fourier:{s2},{_SMOOTH_MODES}"
    inputs = {"x1": {"generator": spec1}, "x2": {"generator": spec2}}

    def value_at(n: int) -> float:
        r = make_rule("midpoint", n)
        return gunawan_norm(sample_function(r, spec1), sample_function(r, spec2), p)

    reference = value_at(_REFERENCE_GRID)
    levels = [value_at(n) for n in _LADDER]
    errors = [abs(v - reference) for v in levels]
    e64, e128, e256 = errors

    ratio_first = e64 / max(e128, _TINY)
    ratio_second = e128 / max(e256, _TINY)
    if p == 1.0:
        coarse = max(e64, e128)
        sink.check("kink_exponent_decrease", (2.0 * e256 - coarse) / max(coarse, _TINY), 0.0)
    else:
        mono_scale = max(e64, _TINY)
        sink.check("monotone_decrease", max(e128 - e64, e256 - e128) / mono_scale, 0.0)
        sink.check("ratio_doubling", (2.0 - min(ratio_first, ratio_second)) / 2.0, 0.0)

    values = {
        "reference": reference,
        "value_64": levels[0],
        "value_128": levels[1],
        "value_256": levels[2],
        "error_64": e64,
        "error_128": e128,
        "error_256": e256,
        "ratio_64_128": ratio_first,
        "ratio_128_256": ratio_second,
    }
    return inputs, values, {}


_SUITE_TRIALS: Mapping[str, Callable] = {
    "axioms": _trial_axioms,
    "sandwich_2_2": _trial_sandwich,
    "isometry_2_1": _trial_isometry,
    "g_properties": _trial_g_properties,
    "geometry_volume": _trial_geometry_volume,
    "functional_bounds_2_3_2_6": _trial_functional_bounds,
    "roundtrip": _trial_roundtrip,
    "quadrature_convergence": _trial_quadrature,
}


# ---------------------------------------------------------------------------
# suite runner
# ---------------------------------------------------------------------------


def _run_trial(config: SuiteConfig, rule: QuadratureRule, p: float, trial_id: int) -> TrialRecord:
    sub_seed = _sub_seed(config.master_seed, config.suite_id, p, trial_id)
    sink = _MarginSink(config.tolerances)
    inputs, values, flags = _SUITE_TRIALS[config.suite_id](rule, p, sub_seed, sink)
    margins = dict(sink.margins)
    converged = all(v for k, v in flags.items() if k.endswith("_converged"))
    passed = bool(converged and all(m >= 0.0 for m in margins.values()))
    return TrialRecord(
        trial_id=trial_id,
        p=p,
        sub_seed=sub_seed,
        inputs=inputs,
        values={k: float(v) for k, v in values.items()},
        margins=margins,
        flags={k: bool(v) for k, v in flags.items()},
        passed=passed,
    )


def run_suite(config: SuiteConfig, parallel: int = 1) -> Report:
    """Run every trial of one suite and aggregate margins into a report.

    ``parallel`` > 1 distributes trials over a thread pool; each trial is a
    pure function of its seed, so the report content is identical to the
    serial run (only the wall-time field varies between runs).
    """
    rule = make_rule(config.rule_kind, config.resolved_grid)
    jobs = [(p, t) for p in config.p_list for t in range(config.trials)]
    started = time.perf_counter()
    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            records = list(pool.map(lambda job: _run_trial(config, rule, *job), jobs))
    else:
        records = [_run_trial(config, rule, p, t) for p, t in jobs]
    wall_ms = int(round((time.perf_counter() - started) * 1000.0))

    min_margins: dict = {}
    for rec in records:
        for name, margin in rec.margins.items():
            if name not in min_margins or margin < min_margins[name]:
                min_margins[name] = margin
    passed = sum(1 for rec in records if rec.passed)
    summary = {
        "pass": passed,
        "fail": len(records) - passed,
        "min_margins": min_margins,
        "wall_ms": wall_ms,
    }
    return Report(
        suite=config.suite_id,
        p_list=config.p_list,
        grid=rule.n,
        rule=rule.kind,
        seed=config.master_seed,
        version=__version__,
        trials=records,
        summary=summary,
    )
