"""Executable counterparts of the proof constructs.

Sign-pattern convex decomposition of a sub-unit off-diagonal part, the
Birman-Schwinger operator and its rescaled kernel L_mu, the closed-form free
kernel, the lattice momentum density g_mu with its Fourier and convolution
identities, decomposition-averaged kernels with their top-eigenvalue-sum
curves, operator convexity of the resolvent, and Ky-Fan norm averaging.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solveh_banded

from .functionals import panel_gauss_legendre
from .operators import (
    MAX_SUB_UNIT_BONDS,
    Perturbation,
    TruncatedTridiagonal,
    ValidationError,
    truncate,
)
from .spectral import (
    DenseSymmetric,
    EigenConfig,
    dense_eigenvalues,
    eigenvalue_sum_top,
    kyfan,
    sturm_count,
    symmetrized,
)

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


# --- sign-pattern convex decomposition ---------------------------------------

@dataclass(frozen=True)
class SignDecomposition:
    """Convex combination of +-1-diagonal conjugates of the free off-diagonal.

    Each term is a weight together with one sign per bond in
    ``bond_positions`` (the bonds whose value is strictly below 1).  Term
    weights are the products of the per-bond splits (1 + sigma kappa) / 2.
    """

    bond_positions: tuple[int, ...]
    kappas: tuple[float, ...]
    terms: tuple[tuple[float, tuple[int, ...]], ...]

    def __post_init__(self):
        if len(self.kappas) != len(self.bond_positions):
            raise ValidationError("one kappa per bond position required")
        total = 0.0
        for weight, signs in self.terms:
            if weight < 0.0:
                raise ValidationError("decomposition weights must be nonnegative")
            if len(signs) != len(self.bond_positions):
                raise ValidationError("sign pattern length must match bond count")
            total += weight
        if abs(total - 1.0) > 1e-12:
            raise ValidationError(f"weights sum to {total!r}, not 1")


def sign_pattern_decomposition(p: Perturbation) -> SignDecomposition:
    """Enumerate all sign patterns over the bonds with a < 1.

    Requires 0 <= a_n <= 1 on the stored window.  The pattern sigma receives
    weight prod_i (1 + sigma_i kappa_i) / 2; zero-weight terms are pruned.
    Bonds with a = 1 deviate by nothing and are not split.
    """
    positions: list[int] = []
    kappas: list[float] = []
    for i, v in enumerate(p.a):
        if not 0.0 <= v <= 1.0:
            raise ValidationError(f"a[{i}] = {v} outside [0, 1]")
        if v < 1.0:
            positions.append(p.a_offset + i)
            kappas.append(v)
    m = len(positions)
    if m > MAX_SUB_UNIT_BONDS:
        raise ValidationError(f"{m} bonds with a < 1 exceed the cap of {MAX_SUB_UNIT_BONDS}")
    terms = []
    for pattern in range(1 << m):
        weight = 1.0
        signs = []
        for i in range(m):
            sigma = -1 if pattern >> i & 1 else 1
            weight *= 0.5 * (1.0 + sigma * kappas[i])
            signs.append(sigma)
        if weight > 0.0:
            terms.append((weight, tuple(signs)))
    return SignDecomposition(tuple(positions), tuple(kappas), tuple(terms))


def reconstruct_offdiagonal(d: SignDecomposition) -> list[float]:
    """Weighted sign averages per bond; must reproduce the kappas."""
    out = []
    for i in range(len(d.bond_positions)):
        out.append(float(sum(w * signs[i] for w, signs in d.terms)))
    return out


def conjugator_signs(d: SignDecomposition, signs: tuple[int, ...], sites) -> np.ndarray:
    """Diagonal +-1 values at ``sites`` realizing the given bond sign pattern.

    The sign at a site is the product of the pattern entries of all bonds to
    its left, so consecutive sites differ exactly across flipped bonds.  The
    overall sign is fixed to +1 left of the support; it is immaterial under
    conjugation.
    """
    out = np.ones(len(sites), dtype=float)
    for j, s in enumerate(sites):
        prod = 1
        for pos, sg in zip(d.bond_positions, signs):
            if pos < s:
                prod *= sg
        out[j] = prod
    return out


# --- Birman-Schwinger operator and L_mu kernels ------------------------------

def _positive_b_sites(p: Perturbation) -> tuple[list[int], np.ndarray]:
    for i, v in enumerate(p.b):
        if v < 0.0:
            raise ValidationError(f"b[{i}] = {v} < 0; Birman-Schwinger needs b >= 0")
    sites = [p.b_offset + i for i, v in enumerate(p.b) if v > 0.0]
    if not sites:
        raise ValidationError("need at least one site with b_n > 0")
    return sites, np.array([p.b_entry(n) for n in sites], dtype=float)


def birman_schwinger(p: Perturbation, beta: float, half_width: int) -> DenseSymmetric:
    """K(A; beta) = B^(1/2) (beta - A)^(-1) B^(1/2) on the b > 0 support.

    The resolvent column for site n is obtained by solving the truncated
    tridiagonal system (beta - A) x = sqrt(b_n) e_n and sampling x at the
    support sites.  ``half_width`` must make mu(beta)^half_width negligible,
    since the free resolvent decays at exactly that rate.
    """
    sites, values = _positive_b_sites(p)
    t = truncate(p, half_width)
    a_section = TruncatedTridiagonal(t.lo, (0.0,) * t.dim, t.offdiag)
    if not math.isfinite(beta) or sturm_count(a_section, beta) < t.dim:
        raise ValidationError(
            f"beta = {beta!r} does not dominate the off-diagonal spectrum"
        )
    ab = np.zeros((2, t.dim))
    ab[0, 1:] = -t.offdiag_array()
    ab[1, :] = beta
    rhs = np.zeros((t.dim, len(sites)))
    rows = [t.row_index(n) for n in sites]
    sqrt_b = np.sqrt(values)
    for j, (row, sb) in enumerate(zip(rows, sqrt_b)):
        rhs[row, j] = sb
    try:
        x = solveh_banded(ab, rhs)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - guarded above
        raise ValidationError(f"singular system at beta = {beta!r}") from exc
    k = sqrt_b[:, None] * x[rows, :]
    return symmetrized(k)


def l_mu(p: Perturbation, mu: float, half_width: int) -> DenseSymmetric:
    """L_mu(A) = sqrt(beta^2 - 4) K(A; beta) with beta = mu + 1/mu."""
    if not 0.0 < mu < 1.0:
        raise ValidationError(f"mu must lie in (0, 1), got {mu!r}")
    beta = mu + 1.0 / mu
    factor = 1.0 / mu - mu  # equals sqrt(beta^2 - 4)
    k = birman_schwinger(p, beta, half_width)
    return DenseSymmetric(factor * k.matrix)


def resolvent_half_width(p: Perturbation, mu: float, tail: float = 1e-12) -> int:
    """Smallest half-width with mu^N below ``tail``, plus the support width."""
    if not 0.0 < mu < 1.0:
        raise ValidationError(f"mu must lie in (0, 1), got {mu!r}")
    n_decay = int(math.ceil(math.log(tail) / math.log(mu)))
    span = p.support_sites()
    reach = max(abs(span[0]), abs(span[1])) if span is not None else 0
    return max(n_decay + p.support_width(), reach + 2)


def _decay_kernel(sites: list[int], values: np.ndarray, mu: float) -> np.ndarray:
    idx = np.asarray(sites, dtype=float)
    sqrt_b = np.sqrt(values)
    dist = np.abs(idx[:, None] - idx[None, :])
    kernel = np.outer(sqrt_b, sqrt_b) * mu**dist
    np.fill_diagonal(kernel, values)  # mu^0 sqrt(b)^2 is exactly b
    return kernel


def _checked_sites(b_sites) -> tuple[list[int], np.ndarray]:
    sites = []
    values = []
    for n, v in b_sites:
        if not (math.isfinite(v) and v > 0.0):
            raise ValidationError(f"site value at {n} must be positive, got {v!r}")
        sites.append(int(n))
        values.append(float(v))
    if not sites:
        raise ValidationError("need at least one site")
    if len(set(sites)) != len(sites):
        raise ValidationError("site indices must be distinct")
    order = np.argsort(sites)
    return [sites[i] for i in order], np.array(values)[order]


def l_mu_free_closed_form(b_sites, mu: float) -> DenseSymmetric:
    """The free-kernel matrix sqrt(b_m) mu^|n - m| sqrt(b_n), sites ascending."""
    if not 0.0 < mu < 1.0:
        raise ValidationError(f"mu must lie in (0, 1), got {mu!r}")
    sites, values = _checked_sites(b_sites)
    return DenseSymmetric(_decay_kernel(sites, values, mu))


# --- momentum density g_mu ----------------------------------------------------

@dataclass(frozen=True)
class GmuDensity:
    mu: float

    def __post_init__(self):
        if not 0.0 < self.mu < 1.0:
            raise ValidationError(f"mu must lie in (0, 1), got {self.mu!r}")


def g_mu_eval(g: GmuDensity, k):
    """Density value (1/sqrt(2 pi)) (1/mu - mu) / (-2 cos k + 1/mu + mu)."""
    mu = g.mu
    return (1.0 / mu - mu) / (_SQRT_TWO_PI * (-2.0 * np.cos(k) + 1.0 / mu + mu))


def fourier_g(g: GmuDensity, n: int) -> float:
    """Fourier coefficient (1/sqrt(2 pi)) int e^{ink} g_mu(k) dk; equals mu^|n|.

    The density is even, so only the cosine part survives.  The integrand is
    periodic and analytic; 64 Gauss-Legendre panels resolve it to roundoff.
    """
    n = int(n)

    def integrand(k):
        return np.cos(n * k) * g_mu_eval(g, k)

    edges = np.linspace(-math.pi, math.pi, 65)
    return panel_gauss_legendre(integrand, edges, 8) / _SQRT_TWO_PI


def gmu_convolution_gap(mu: float, nu: float, n_grid: int = 256, n_quad: int = 2048) -> float:
    """Worst pointwise defect of (g_nu/s) * (g_{mu/nu}/s) = g_mu/s, s = sqrt(2 pi).

    The periodic convolution is evaluated by the trapezoid rule on a uniform
    grid, which is spectrally accurate for smooth periodic integrands.
    Requires 0 < mu < nu < 1.
    """
    if not 0.0 < mu < nu < 1.0:
        raise ValidationError(f"need 0 < mu < nu < 1, got mu={mu!r}, nu={nu!r}")
    g_nu = GmuDensity(nu)
    g_ratio = GmuDensity(mu / nu)
    g_target = GmuDensity(mu)
    ks = np.linspace(-math.pi, math.pi, n_grid, endpoint=False)
    kq = np.linspace(-math.pi, math.pi, n_quad, endpoint=False)
    vals_ratio = g_mu_eval(g_ratio, kq)
    conv = g_mu_eval(g_nu, ks[:, None] - kq[None, :]) @ vals_ratio
    conv *= (2.0 * math.pi / n_quad) / (2.0 * math.pi)
    target = g_mu_eval(g_target, ks) / _SQRT_TWO_PI
    return float(np.max(np.abs(conv - target)))


# --- decomposition averages and eigenvalue-sum curves ------------------------

def averaged_l_mu(d: SignDecomposition, b_sites, mu: float) -> DenseSymmetric:
    """sum_sigma lambda_sigma D_sigma L_mu(A_1) D_sigma on the given sites.

    ``mu`` may equal 1, where the kernel degenerates to the rank-one matrix
    sqrt(b_m) sqrt(b_n) used in the trace bound.
    """
    if not 0.0 < mu <= 1.0:
        raise ValidationError(f"mu must lie in (0, 1], got {mu!r}")
    sites, values = _checked_sites(b_sites)
    kernel = _decay_kernel(sites, values, mu)
    acc = np.zeros_like(kernel)
    chunk = []
    for weight, signs in d.terms:
        dv = conjugator_signs(d, signs, sites)
        chunk.append(weight * np.outer(dv, dv) * kernel)
        if len(chunk) == 4096:
            acc += np.sum(chunk, axis=0)
            chunk = []
    if chunk:
        acc += np.sum(chunk, axis=0)
    return DenseSymmetric(acc)


def s_n_curve(
    d: SignDecomposition,
    b_sites,
    n: int,
    mus,
    cfg: EigenConfig = EigenConfig(),
) -> list[float]:
    """Sum of the n largest eigenvalues of the averaged kernel at each mu.

    Nondecreasing along increasing mu; at mu = 1 it reaches the trace bound.
    """
    sites, _ = _checked_sites(b_sites)
    if not 1 <= n <= len(sites):
        raise ValidationError(f"n = {n} outside 1..{len(sites)}")
    out = []
    for mu in mus:
        m = averaged_l_mu(d, b_sites, mu)
        out.append(eigenvalue_sum_top(m, n, cfg))
    return out


# --- operator convexity and Ky-Fan averaging ---------------------------------

def operator_convexity_gap(
    x1: DenseSymmetric,
    x2: DenseSymmetric,
    beta: float,
    lam: float,
    cfg: EigenConfig = EigenConfig(),
) -> float:
    """Minimum eigenvalue of the resolvent convexity defect.

    gap = lam (beta - x1)^(-1) + (1 - lam) (beta - x2)^(-1)
          - (beta - lam x1 - (1 - lam) x2)^(-1)
    which is positive semidefinite whenever beta dominates both matrices.
    """
    if x1.dim != x2.dim:
        raise ValidationError("x1 and x2 must have equal dimension")
    if not 0.0 <= lam <= 1.0:
        raise ValidationError(f"lam must lie in [0, 1], got {lam!r}")
    top = max(dense_eigenvalues(x1, cfg)[-1], dense_eigenvalues(x2, cfg)[-1])
    if not (math.isfinite(beta) and beta > top):
        raise ValidationError(f"beta = {beta!r} does not dominate the top eigenvalue {top}")
    eye = np.eye(x1.dim)
    inv1 = np.linalg.inv(beta * eye - x1.matrix)
    inv2 = np.linalg.inv(beta * eye - x2.matrix)
    mix = np.linalg.inv(beta * eye - lam * x1.matrix - (1.0 - lam) * x2.matrix)
    gap = lam * inv1 + (1.0 - lam) * inv2 - mix
    return dense_eigenvalues(symmetrized(gap), cfg)[0]


def kyfan_averaging_check(
    t: DenseSymmetric,
    conjugators,
    n: int,
    cfg: EigenConfig = EigenConfig(),
) -> tuple[float, float]:
    """(Ky-Fan n-norm of the averaged matrix, Ky-Fan n-norm of t).

    ``conjugators`` is a finite probability mixture of +-1 diagonals; the
    averaged norm can never exceed the original for positive semidefinite t.
    """
    evs = dense_eigenvalues(t, cfg)
    scale = max(abs(evs[0]), abs(evs[-1]), 1.0)
    if evs[0] < -1e-10 * scale:
        raise ValidationError(f"t must be positive semidefinite, min eigenvalue {evs[0]}")
    total = 0.0
    avg = np.zeros_like(t.matrix)
    for weight, diag in conjugators:
        if weight < 0.0:
            raise ValidationError("conjugator weights must be nonnegative")
        d = np.asarray(diag, dtype=float)
        if d.shape != (t.dim,) or not np.all(np.abs(d) == 1.0):
            raise ValidationError("each conjugator must be a +-1 diagonal of matching size")
        total += weight
        avg += weight * np.outer(d, d) * t.matrix
    if abs(total - 1.0) > 1e-12:
        raise ValidationError(f"conjugator weights sum to {total!r}, not 1")
    return kyfan(DenseSymmetric(avg), n, cfg), kyfan(t, n, cfg)
