"""Verification harness: seeded instance generation, inequality reports,
sharpness curves, construct property suites, and CSV/JSON emission.

The random stream is SplitMix64 so that any implementation language can
reproduce the exact instances; the full draw procedure is documented in the
README.  All report emission is deterministic: fixed row order and numbers
printed with 17 significant digits.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import constructs, functionals
from .operators import Perturbation, ValidationError, make_perturbation
from .spectral import (
    DenseSymmetric,
    EigenConfig,
    SpectrumOutside,
    dense_eigenvalues,
    eigenvalue_sum_top,
    eigenvalues_outside,
    symmetrized,
)

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Counter-based 64-bit generator (Steele-Lea-Flood mixing constants).

    state_k = seed + k * 0x9E3779B97F4A7C15 (mod 2^64); each output applies
    the xor-shift/multiply finalizer to the state.  uniform() uses the top
    53 bits, so every draw is exactly reproducible from the seed alone.
    """

    GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + self.GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform_in(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()

    def int_in(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] via floor(u * span); documented draw."""
        if hi < lo:
            raise ValidationError(f"empty integer range [{lo}, {hi}]")
        return min(lo + int(self.uniform() * (hi - lo + 1)), hi)

    def choice_signs(self, count: int) -> list[int]:
        return [1 if self.uniform() < 0.5 else -1 for _ in range(count)]


DEFAULT_SEED = 1


@dataclass(frozen=True)
class RandomModel:
    """Bounds for seeded random instances; defaults keep supports small."""

    seed: int = DEFAULT_SEED
    b_sites: tuple[int, int] = (1, 9)
    b_magnitude: float = 2.0
    a_bonds: tuple[int, int] = (0, 8)
    a_low: float = 0.0
    a_high: float = 2.0
    allow_negative_b: bool = True
    position_range: tuple[int, int] = (-10, 10)

    def __post_init__(self):
        for pair in (self.b_sites, self.a_bonds, self.position_range):
            if pair[1] < pair[0]:
                raise ValidationError(f"range {pair} is empty")
        if not (math.isfinite(self.b_magnitude) and self.b_magnitude >= 0.0):
            raise ValidationError("b_magnitude must be finite and nonnegative")
        if not (math.isfinite(self.a_low) and math.isfinite(self.a_high)):
            raise ValidationError("a bounds must be finite")
        if self.a_high < self.a_low:
            raise ValidationError("a_high must not be below a_low")
        n_positions = self.position_range[1] - self.position_range[0] + 1
        if max(self.b_sites[1], self.a_bonds[1]) > n_positions:
            raise ValidationError("position_range too small for the requested supports")


def _distinct_positions(rng: SplitMix64, count: int, lo: int, hi: int) -> list[int]:
    seen: set[int] = set()
    out: list[int] = []
    while len(out) < count:
        pos = rng.int_in(lo, hi)
        if pos not in seen:
            seen.add(pos)
            out.append(pos)
    return out


def random_perturbation(model: RandomModel, index: int) -> Perturbation:
    """Instance ``index`` of the model; independent per-index substream."""
    rng = SplitMix64((model.seed + index) & _MASK64)
    lo, hi = model.position_range

    n_b = rng.int_in(*model.b_sites)
    b_positions = _distinct_positions(rng, n_b, lo, hi)
    b_lo = -model.b_magnitude if model.allow_negative_b else 0.0
    b_values = {pos: rng.uniform_in(b_lo, model.b_magnitude) for pos in b_positions}

    n_a = rng.int_in(*model.a_bonds)
    a_positions = _distinct_positions(rng, n_a, lo, hi)
    a_values = {pos: rng.uniform_in(model.a_low, model.a_high) for pos in a_positions}

    if b_values:
        b_min, b_max = min(b_values), max(b_values)
        b_window = [b_values.get(n, 0.0) for n in range(b_min, b_max + 1)]
    else:
        b_min, b_window = 0, []
    if a_values:
        a_min, a_max = min(a_values), max(a_values)
        a_window = [a_values.get(n, 1.0) for n in range(a_min, a_max + 1)]
    else:
        a_min, a_window = 0, []
    return make_perturbation(a_min, a_window, b_min, b_window)


def instance_label(model: RandomModel, index: int) -> str:
    return f"rnd{model.seed}-{index:04d}"


# --- verification reports -----------------------------------------------------

INFORMATIONAL_KINDS = frozenset({"eq3_report"})


@dataclass(frozen=True)
class VerificationReport:
    instance_id: str
    inequality: str
    lhs: float
    rhs: float
    margin: float
    n_used: int
    est_error: float
    passed: bool
    gamma: float | None = None

    @property
    def informational(self) -> bool:
        return self.inequality in INFORMATIONAL_KINDS


DEFAULT_MARGIN_TOL = 1e-7


def _report(instance_id, kind, lhs, rhs, spectrum: SpectrumOutside, tol, gamma=None, forced_pass=None):
    margin = rhs - lhs
    passed = margin >= -tol if forced_pass is None else forced_pass
    return VerificationReport(
        instance_id=instance_id,
        inequality=kind,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        n_used=spectrum.n_used,
        est_error=spectrum.est_error,
        passed=passed,
        gamma=gamma,
    )


def _eq3_values(p: Perturbation, spectrum: SpectrumOutside) -> tuple[float, float, float]:
    lhs = sum(functionals.ks_F(e) for e in spectrum.all_energies())
    if any(v == 0.0 for v in p.a):
        return lhs, math.inf, math.inf
    g_vals = [functionals.ks_G(v) for v in p.a]
    b_sq = sum(v * v for v in p.b)
    printed = b_sq + 2.0 * sum(g * g for g in g_vals)
    unsquared = b_sq + 2.0 * sum(g_vals)
    return lhs, printed, unsquared


def verify_instance(
    instance_id: str,
    p: Perturbation,
    gammas=(1.5,),
    tol: float = DEFAULT_MARGIN_TOL,
    cfg: EigenConfig = EigenConfig(),
) -> list[VerificationReport]:
    """All inequality reports for one instance.

    Emits eq1, eq2, one eq4 pair per gamma (skipped when the instance has a
    negative bond, where the Riesz bound does not apply), and the two
    informational eq3 rows.  The eq3 gamma column records the exponent put
    on G: 2 for the bound as printed, 1 for the un-squared variant.
    """
    spectrum = eigenvalues_outside(p, cfg)
    lhs = functionals.lt_lhs_main(spectrum)
    out = [
        _report(instance_id, "eq1", lhs, functionals.rhs_hs(p), spectrum, tol),
        _report(instance_id, "eq2", lhs, functionals.rhs_main(p), spectrum, tol),
    ]
    if all(v >= 0.0 for v in p.a):
        for gamma in sorted(set(float(g) for g in gammas)):
            rc = functionals.RieszConfig(gamma=gamma)
            lhs_plus = sum(functionals.riesz_mean(e, rc) for e in spectrum.e_plus)
            lhs_minus = sum(functionals.riesz_mean(e, rc) for e in spectrum.e_minus)
            out.append(
                _report(instance_id, "eq4_plus", lhs_plus,
                        functionals.riesz_rhs(p, gamma, "+"), spectrum, tol, gamma=gamma)
            )
            out.append(
                _report(instance_id, "eq4_minus", lhs_minus,
                        functionals.riesz_rhs(p, gamma, "-"), spectrum, tol, gamma=gamma)
            )
    f_lhs, printed, unsquared = _eq3_values(p, spectrum)
    out.append(_report(instance_id, "eq3_report", f_lhs, printed, spectrum, tol,
                       gamma=2.0, forced_pass=True))
    out.append(_report(instance_id, "eq3_report", f_lhs, unsquared, spectrum, tol,
                       gamma=1.0, forced_pass=True))
    return out


def sweep_instance(
    instance_id: str,
    p: Perturbation,
    gammas,
    tol: float = DEFAULT_MARGIN_TOL,
    cfg: EigenConfig = EigenConfig(),
) -> list[VerificationReport]:
    """Per-gamma eq4 rows plus aggregated remark lower-bound rows.

    The remark rows compare, summed over every eigenvalue found, each
    closed-form lower bound (lhs) against the Riesz mean (rhs).  When the
    grid contains gamma = 3/2 an informational row compares the Riesz sum
    against half the F-sum (their printed identification does not hold
    numerically; the margin records the discrepancy).
    """
    for gamma in gammas:
        if not gamma > 0.5:
            raise ValidationError(f"gamma grid must stay above 1/2, got {gamma!r}")
    spectrum = eigenvalues_outside(p, cfg)
    energies = spectrum.all_energies()
    out = []
    for gamma in sorted(set(float(g) for g in gammas)):
        rc = functionals.RieszConfig(gamma=gamma)
        riesz = [functionals.riesz_mean(e, rc) for e in energies]
        n_plus = len(spectrum.e_plus)
        out.append(
            _report(instance_id, "eq4_plus", sum(riesz[:n_plus]),
                    functionals.riesz_rhs(p, gamma, "+"), spectrum, tol, gamma=gamma)
        )
        out.append(
            _report(instance_id, "eq4_minus", sum(riesz[n_plus:]),
                    functionals.riesz_rhs(p, gamma, "-"), spectrum, tol, gamma=gamma)
        )
        bounds = [functionals.remark_lower_bounds(e, gamma) for e in energies]
        out.append(
            _report(instance_id, "remark_gamma", sum(b[0] for b in bounds),
                    sum(riesz), spectrum, tol, gamma=gamma)
        )
        out.append(
            _report(instance_id, "remark_gamma_half", sum(b[1] for b in bounds),
                    sum(riesz), spectrum, tol, gamma=gamma)
        )
        if gamma == 1.5:
            half_f = 0.5 * sum(functionals.ks_F(e) for e in energies)
            out.append(
                _report(instance_id, "eq3_report", sum(riesz), half_f, spectrum, tol,
                        gamma=1.5, forced_pass=True)
            )
    return out


# --- sharpness curves ----------------------------------------------------------

def sharpness_rows(mode: str, grid, cfg: EigenConfig = EigenConfig()) -> list[dict]:
    """Equality-family curves: lhs always comes from the eigensolver.

    mode "bond": single enlarged bond a > 1; closed forms lhs = 2(a - 1/a),
    rhs = 4(a - 1), ratio -> 1 as a -> 1.  mode "site": single site b != 0,
    where lhs = rhs = |b| exactly.
    """
    rows = []
    if mode == "bond":
        for a in grid:
            if not a > 1.0:
                raise ValidationError(f"bond mode needs a > 1, got {a!r}")
            p = make_perturbation(0, [a], 0, [])
            spectrum = eigenvalues_outside(p, cfg)
            lhs = functionals.lt_lhs_main(spectrum)
            rhs = functionals.rhs_main(p)
            rows.append({"a": a, "lhs": lhs, "rhs": rhs, "ratio": lhs / rhs})
    elif mode == "site":
        for b in grid:
            if b == 0.0:
                raise ValidationError("site mode needs b != 0")
            p = make_perturbation(0, [], 0, [b])
            spectrum = eigenvalues_outside(p, cfg)
            lhs = functionals.lt_lhs_main(spectrum)
            rhs = functionals.rhs_main(p)
            rows.append({"b": b, "lhs": lhs, "rhs": rhs, "ratio": lhs / rhs})
    else:
        raise ValidationError(f"unknown sharpness mode {mode!r}")
    return rows


DEFAULT_BOND_GRID = tuple(1.0 + 2.0**-k for k in range(1, 11))
DEFAULT_SITE_GRID = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0)


# --- construct property suites --------------------------------------------------

@dataclass(frozen=True)
class CheckRow:
    suite: str
    check: str
    seed: int
    worst: float
    tol: float
    passed: bool
    detail: str = ""


def _row(suite, check, seed, worst, tol, detail="") -> CheckRow:
    return CheckRow(suite, check, seed, float(worst), tol, bool(worst <= tol), detail)


def _random_symmetric(rng: SplitMix64, dim: int, scale: float = 2.0) -> DenseSymmetric:
    raw = np.array([[rng.uniform_in(-scale, scale) for _ in range(dim)] for _ in range(dim)])
    return symmetrized(raw)


def _random_psd(rng: SplitMix64, dim: int) -> DenseSymmetric:
    raw = np.array([[rng.uniform_in(-1.0, 1.0) for _ in range(dim)] for _ in range(dim)])
    return symmetrized(raw @ raw.T)


def _random_conjugators(rng: SplitMix64, dim: int):
    count = rng.int_in(1, 4)
    raw = [rng.uniform_in(0.1, 1.0) for _ in range(count)]
    total = sum(raw)
    return [
        (w / total, np.array(rng.choice_signs(dim), dtype=float)) for w in raw
    ]


def decomposition_suite(seed: int, count: int = 200, tol: float = 1e-12) -> list[CheckRow]:
    model = RandomModel(seed=seed, a_low=0.0, a_high=1.0)
    worst_recon = 0.0
    worst_sum = 0.0
    worst_neg = 0.0
    bad = ""
    for i in range(count):
        p = random_perturbation(model, i)
        d = constructs.sign_pattern_decomposition(p)
        recon = constructs.reconstruct_offdiagonal(d)
        err = max(
            (abs(r - k) for r, k in zip(recon, d.kappas)), default=0.0
        )
        if err > worst_recon:
            worst_recon = err
            bad = f"instance {i}: kappas={d.kappas}"
        worst_sum = max(worst_sum, abs(sum(w for w, _ in d.terms) - 1.0))
        worst_neg = max(worst_neg, max((-w for w, _ in d.terms), default=0.0))
    return [
        _row("decomposition", "reconstruction", seed, worst_recon, tol, bad),
        _row("decomposition", "weights_sum_to_one", seed, worst_sum, tol),
        _row("decomposition", "weights_nonnegative", seed, worst_neg, 0.0),
    ]


def bs_suite(seed: int, count: int = 25, tol: float = 1e-6,
             cfg: EigenConfig = EigenConfig()) -> list[CheckRow]:
    model = RandomModel(seed=seed, a_high=1.0, allow_negative_b=False)
    worst_bs = 0.0
    worst_kernel = 0.0
    detail = ""
    for i in range(count):
        p = random_perturbation(model, i)
        spectrum = eigenvalues_outside(p, cfg)
        for j, energy in enumerate(spectrum.e_plus, start=1):
            mu = functionals.mu_of_E(energy).mu
            k = constructs.birman_schwinger(
                p, energy, constructs.resolvent_half_width(p, mu)
            )
            evs = sorted(dense_eigenvalues(k, cfg), reverse=True)
            err = abs(evs[j - 1] - 1.0)
            if err > worst_bs:
                worst_bs = err
                detail = f"instance {i}, eigenvalue {j} at {energy!r}"
    free_model = RandomModel(seed=seed, a_bonds=(0, 0), allow_negative_b=False)
    for i in range(count):
        p = random_perturbation(free_model, i)
        sites = [(p.b_offset + j, v) for j, v in enumerate(p.b) if v > 0.0]
        if not sites:
            continue
        for mu in (0.2, 0.5, 0.8):
            lm = constructs.l_mu(p, mu, constructs.resolvent_half_width(p, mu))
            closed = constructs.l_mu_free_closed_form(sites, mu)
            worst_kernel = max(
                worst_kernel, float(np.max(np.abs(lm.matrix - closed.matrix)))
            )
    return [
        _row("bs", "birman_schwinger_eigenvalue_one", seed, worst_bs, tol, detail),
        _row("bs", "kernel_matches_closed_form", seed, worst_kernel, 1e-8),
    ]


_SMU_MUS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)


def flip_bond_signs(d: constructs.SignDecomposition) -> constructs.SignDecomposition:
    """Same weights with every bond sign negated (parity-conjugated patterns)."""
    flipped = tuple((w, tuple(-s for s in signs)) for w, signs in d.terms)
    return constructs.SignDecomposition(d.bond_positions, d.kappas, flipped)


def smu_suite(seed: int, count: int = 40, tol: float = 1e-10,
              cfg: EigenConfig = EigenConfig()) -> list[CheckRow]:
    model = RandomModel(seed=seed, a_high=1.0, allow_negative_b=False)
    worst_mono = 0.0
    worst_trace = 0.0
    worst_even = 0.0
    worst_dom = 0.0
    detail = ""
    for i in range(count):
        p = random_perturbation(model, i)
        sites = [(p.b_offset + j, v) for j, v in enumerate(p.b) if v > 0.0]
        if not sites:
            continue
        d = constructs.sign_pattern_decomposition(p)
        flipped = flip_bond_signs(d)
        for n in range(1, len(sites) + 1):
            curve = constructs.s_n_curve(d, sites, n, _SMU_MUS, cfg)
            drop = max(
                (curve[k] - curve[k + 1] for k in range(len(curve) - 1)), default=0.0
            )
            if drop > worst_mono:
                worst_mono = drop
                detail = f"instance {i}, n={n}, curve={curve}"
            even = constructs.s_n_curve(flipped, sites, n, _SMU_MUS, cfg)
            worst_even = max(
                worst_even, max(abs(x - y) for x, y in zip(curve, even))
            )
        total_b = sum(v for _, v in sites)
        avg1 = constructs.averaged_l_mu(d, sites, 1.0)
        worst_trace = max(
            worst_trace,
            abs(eigenvalue_sum_top(avg1, len(sites), cfg) - total_b),
        )
        for mu in (0.2, 0.5, 0.8):
            lm = constructs.l_mu(p, mu, constructs.resolvent_half_width(p, mu))
            avg = constructs.averaged_l_mu(d, sites, mu)
            ev_l = dense_eigenvalues(lm, cfg)
            ev_a = dense_eigenvalues(avg, cfg)
            worst_dom = max(
                worst_dom, max(x - y for x, y in zip(ev_l, ev_a))
            )
    rng = SplitMix64(seed)
    worst_kyfan = 0.0
    for _ in range(100):
        dim = rng.int_in(2, 8)
        t = _random_psd(rng, dim)
        conj = _random_conjugators(rng, dim)
        for n in range(1, dim + 1):
            averaged, original = constructs.kyfan_averaging_check(t, conj, n, cfg)
            worst_kyfan = max(worst_kyfan, averaged - original)
    return [
        _row("smu", "s_n_monotone_in_mu", seed, worst_mono, tol, detail),
        _row("smu", "s_n_even_under_bond_flip", seed, worst_even, tol),
        _row("smu", "trace_step_at_mu_one", seed, worst_trace, tol),
        _row("smu", "averaged_kernel_dominates", seed, worst_dom, 1e-8),
        _row("smu", "kyfan_averaging", seed, worst_kyfan, tol),
    ]


def gmu_suite(seed: int, tol: float = 1e-10) -> list[CheckRow]:
    worst_fourier = 0.0
    for mu in (0.3, 0.5, 0.7):
        g = constructs.GmuDensity(mu)
        for n in range(-12, 13):
            worst_fourier = max(
                worst_fourier, abs(constructs.fourier_g(g, n) - mu ** abs(n))
            )
    worst_conv = 0.0
    for mu, nu in ((0.25, 0.5), (0.35, 0.7)):
        worst_conv = max(worst_conv, constructs.gmu_convolution_gap(mu, nu))
    return [
        _row("gmu", "fourier_coefficients", seed, worst_fourier, tol),
        _row("gmu", "convolution_identity", seed, worst_conv, 1e-8),
    ]


def convexity_suite(seed: int, count: int = 200, tol: float = 1e-10,
                    cfg: EigenConfig = EigenConfig()) -> list[CheckRow]:
    rng = SplitMix64(seed)
    worst_gap = 0.0
    detail = ""
    for i in range(count):
        dim = rng.int_in(1, 8)
        x1 = _random_symmetric(rng, dim)
        x2 = _random_symmetric(rng, dim)
        top = max(dense_eigenvalues(x1, cfg)[-1], dense_eigenvalues(x2, cfg)[-1])
        beta = top + rng.uniform_in(0.5, 2.0)
        lam = rng.uniform()
        gap = constructs.operator_convexity_gap(x1, x2, beta, lam, cfg)
        if -gap > worst_gap:
            worst_gap = -gap
            detail = (
                f"draw {i}: beta={beta!r}, lam={lam!r}, "
                f"x1={x1.matrix.tolist()}, x2={x2.matrix.tolist()}"
            )
    worst_2x2 = 0.0
    for a in np.linspace(1.0, 4.0, 31):
        m = DenseSymmetric([[a - 1.0, 1.0 - a], [1.0 - a, a - 1.0]])
        worst_2x2 = max(worst_2x2, -dense_eigenvalues(m, cfg)[0])
    return [
        _row("convexity", "resolvent_convexity_gap", seed, worst_gap, tol, detail),
        _row("convexity", "elementary_2x2_psd", seed, worst_2x2, tol),
    ]


CONSTRUCT_SUITES = {
    "decomposition": decomposition_suite,
    "bs": bs_suite,
    "smu": smu_suite,
    "gmu": gmu_suite,
    "convexity": convexity_suite,
}


def run_construct_suites(which: str, seed: int, tol: float | None = None) -> list[CheckRow]:
    """Run one construct suite (or all); ``tol`` overrides each suite's
    default tolerance for its primary checks."""
    if which == "all":
        names = list(CONSTRUCT_SUITES)
    elif which in CONSTRUCT_SUITES:
        names = [which]
    else:
        raise ValidationError(f"unknown suite {which!r}")
    rows: list[CheckRow] = []
    for name in names:
        suite = CONSTRUCT_SUITES[name]
        rows.extend(suite(seed) if tol is None else suite(seed, tol=tol))
    return rows


# --- deterministic emission -----------------------------------------------------

def format_number(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return "%.17g" % x
    return str(x)


REPORT_CSV_HEADER = "instance_id,inequality,gamma,lhs,rhs,margin,n_used,est_error,pass"


def reports_to_csv(reports) -> str:
    lines = [REPORT_CSV_HEADER]
    for r in reports:
        lines.append(
            ",".join(
                (
                    r.instance_id,
                    r.inequality,
                    format_number(r.gamma),
                    format_number(r.lhs),
                    format_number(r.rhs),
                    format_number(r.margin),
                    str(r.n_used),
                    format_number(r.est_error),
                    "true" if r.passed else "false",
                )
            )
        )
    return "\n".join(lines) + "\n"


def reports_to_json(reports) -> str:
    payload = [
        {
            "instance_id": r.instance_id,
            "inequality": r.inequality,
            "gamma": r.gamma,
            "lhs": r.lhs,
            "rhs": r.rhs,
            "margin": r.margin,
            "n_used": r.n_used,
            "est_error": r.est_error,
            "pass": r.passed,
        }
        for r in reports
    ]
    return json.dumps(payload, indent=2) + "\n"


def spectrum_to_csv(instance_id: str, spectrum: SpectrumOutside) -> str:
    lines = ["instance_id,side,index,energy,n_used,est_error"]
    for j, e in enumerate(spectrum.e_plus, start=1):
        lines.append(
            f"{instance_id},plus,{j},{format_number(e)},{spectrum.n_used},{format_number(spectrum.est_error)}"
        )
    for j, e in enumerate(spectrum.e_minus, start=1):
        lines.append(
            f"{instance_id},minus,{j},{format_number(e)},{spectrum.n_used},{format_number(spectrum.est_error)}"
        )
    return "\n".join(lines) + "\n"


def spectrum_to_json(instance_id: str, spectrum: SpectrumOutside) -> str:
    payload = {
        "instance_id": instance_id,
        "e_plus": list(spectrum.e_plus),
        "e_minus": list(spectrum.e_minus),
        "n_used": spectrum.n_used,
        "est_error": spectrum.est_error,
        "edge_buffer": spectrum.edge_buffer,
    }
    return json.dumps(payload, indent=2) + "\n"


def sharpness_to_csv(mode: str, rows) -> str:
    key = "a" if mode == "bond" else "b"
    lines = [f"{key},lhs,rhs,ratio"]
    for row in rows:
        lines.append(
            ",".join(format_number(row[c]) for c in (key, "lhs", "rhs", "ratio"))
        )
    return "\n".join(lines) + "\n"


def sharpness_to_json(mode: str, rows) -> str:
    return json.dumps({"mode": mode, "rows": rows}, indent=2) + "\n"


def checks_to_csv(rows) -> str:
    lines = ["suite,check,seed,worst,tol,pass,detail"]
    for r in rows:
        detail = r.detail.replace(",", ";").replace("\n", " ")
        lines.append(
            f"{r.suite},{r.check},{r.seed},{format_number(r.worst)},"
            f"{format_number(r.tol)},{'true' if r.passed else 'false'},{detail}"
        )
    return "\n".join(lines) + "\n"


def checks_to_json(rows) -> str:
    payload = [
        {
            "suite": r.suite,
            "check": r.check,
            "seed": r.seed,
            "worst": r.worst,
            "tol": r.tol,
            "pass": r.passed,
            "detail": r.detail,
        }
        for r in rows
    ]
    return json.dumps(payload, indent=2) + "\n"
