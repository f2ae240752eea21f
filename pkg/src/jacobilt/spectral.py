"""Spectral computations.

Eigenvalues of the infinite operator outside the essential spectrum [-2, 2]
are obtained from finite sections via Sturm-sequence bisection, with the
section half-width doubled until the reported values settle.  Small dense
symmetric matrices arising from the proof constructs are diagonalized by a
cyclic Jacobi rotation sweep, which also backs the Ky-Fan norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .operators import (
    Perturbation,
    TruncatedTridiagonal,
    ValidationError,
    negate_b,
    truncate,
)

# Spurious near-edge eigenvalues of the finite section converge only
# polynomially; genuine discrete eigenvalues converge exponentially.  Values
# closer to the edge than the buffer are declared out of numerical reach.
DEFAULT_EDGE_BUFFER = 1e-7


@dataclass(frozen=True)
class EigenConfig:
    edge_buffer: float = DEFAULT_EDGE_BUFFER
    bisect_tol: float = 1e-11
    max_half_width: int = 2**14
    dense_tol: float = 1e-12

    def __post_init__(self):
        for name in ("edge_buffer", "bisect_tol", "dense_tol"):
            if not getattr(self, name) > 0.0:
                raise ValidationError(f"{name} must be positive")
        if self.max_half_width < 1:
            raise ValidationError("max_half_width must be positive")
        if not self.bisect_tol < self.edge_buffer:
            raise ValidationError("bisect_tol must be smaller than edge_buffer")


@dataclass(frozen=True)
class SpectrumOutside:
    """Eigenvalues beyond the essential spectrum of a perturbed operator.

    ``e_plus`` is descending (largest first), ``e_minus`` ascending (most
    negative first); every entry clears the edge by more than ``edge_buffer``.
    ``est_error`` is the largest movement of any reported eigenvalue during
    the final doubling of the truncation half-width ``n_used``.
    """

    e_plus: tuple[float, ...]
    e_minus: tuple[float, ...]
    n_used: int
    est_error: float
    edge_buffer: float = DEFAULT_EDGE_BUFFER

    def __post_init__(self):
        cut = 2.0 + self.edge_buffer
        if any(e <= cut for e in self.e_plus) or any(e >= -cut for e in self.e_minus):
            raise ValidationError("eigenvalue inside the edge buffer")
        if list(self.e_plus) != sorted(self.e_plus, reverse=True):
            raise ValidationError("e_plus must be descending")
        if list(self.e_minus) != sorted(self.e_minus):
            raise ValidationError("e_minus must be ascending")

    def all_energies(self) -> list[float]:
        return list(self.e_plus) + list(self.e_minus)


class ConvergenceError(RuntimeError):
    """Iteration budget exhausted; ``partial`` holds the best result, if any."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


# --- Sturm counts -----------------------------------------------------------

def _counts_below_py(diag, off2, xs, pivmin):
    d = diag[0] - xs
    d = np.where(np.abs(d) < pivmin, np.where(d < 0.0, -pivmin, pivmin), d)
    counts = (d < 0.0).astype(np.int64)
    for k in range(1, diag.shape[0]):
        d = (diag[k] - xs) - off2[k - 1] / d
        d = np.where(np.abs(d) < pivmin, np.where(d < 0.0, -pivmin, pivmin), d)
        counts += d < 0.0
    return counts


try:  # hot loop: dominates the adaptive-truncation runtime
    from numba import njit

    @njit(cache=False)
    def _counts_below_jit(diag, off2, xs, pivmin):  # pragma: no cover - numba
        counts = np.zeros(xs.shape[0], dtype=np.int64)
        for j in range(xs.shape[0]):
            x = xs[j]
            c = 0
            d = diag[0] - x
            if abs(d) < pivmin:
                d = -pivmin if d < 0.0 else pivmin
            if d < 0.0:
                c += 1
            for k in range(1, diag.shape[0]):
                d = (diag[k] - x) - off2[k - 1] / d
                if abs(d) < pivmin:
                    d = -pivmin if d < 0.0 else pivmin
                if d < 0.0:
                    c += 1
            counts[j] = c
        return counts

    _counts_below = _counts_below_jit
except ImportError:  # pragma: no cover - exercised only without numba
    _counts_below = _counts_below_py


def _pivmin(t: TruncatedTridiagonal) -> float:
    diag = t.diag_array()
    off = t.offdiag_array()
    norm = float(np.max(np.abs(diag))) if t.dim else 0.0
    if off.size:
        norm += 2.0 * float(np.max(np.abs(off)))
    # exact-arithmetic pivot ties are measure zero; a signed tiny keeps the
    # inertia count well defined without disturbing it
    return 1e-300 * max(1.0, norm)


def sturm_counts(t: TruncatedTridiagonal, xs) -> np.ndarray:
    """Number of eigenvalues of ``t`` strictly below each shift in ``xs``."""
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    off = t.offdiag_array()
    return _counts_below(t.diag_array(), off * off, xs, _pivmin(t))


def sturm_count(t: TruncatedTridiagonal, x: float) -> int:
    return int(sturm_counts(t, [x])[0])


def gershgorin_bounds(t: TruncatedTridiagonal) -> tuple[float, float]:
    diag = t.diag_array()
    radius = np.zeros(t.dim)
    off = np.abs(t.offdiag_array())
    radius[:-1] += off
    radius[1:] += off
    return float(np.min(diag - radius)), float(np.max(diag + radius))


# --- eigenvalues of the infinite operator outside [-2, 2] -------------------

def _bisect_indices(t: TruncatedTridiagonal, indices: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Ascending eigenvalues with the given 0-based ranks, all inside (lo, hi)."""
    los = np.full(indices.shape, lo, dtype=float)
    his = np.full(indices.shape, hi, dtype=float)
    want = indices + 1  # eigenvalue rank k is where the count first reaches k+1
    while True:
        width = his - los
        scale = np.maximum(1.0, np.abs(his))
        if np.all(width <= 8.0 * np.finfo(float).eps * scale):
            break
        mids = 0.5 * (los + his)
        counts = sturm_counts(t, mids)
        above = counts >= want
        his = np.where(above, mids, his)
        los = np.where(above, los, mids)
    return 0.5 * (los + his)


def _section_outside(t: TruncatedTridiagonal, cfg: EigenConfig) -> tuple[np.ndarray, np.ndarray]:
    cut = 2.0 + cfg.edge_buffer
    lo_bound, hi_bound = gershgorin_bounds(t)
    pad = 1e-6 * (1.0 + abs(hi_bound) + abs(lo_bound))
    n_below_cut, n_below_neg = (
        int(v) for v in sturm_counts(t, [cut, -cut])
    )
    n_above = t.dim - n_below_cut
    e_plus = np.empty(0)
    if n_above > 0 and hi_bound > cut:
        idx = np.arange(t.dim - n_above, t.dim)
        e_plus = _bisect_indices(t, idx, cut, hi_bound + pad)
    e_minus = np.empty(0)
    if n_below_neg > 0 and lo_bound < -cut:
        idx = np.arange(n_below_neg)
        e_minus = _bisect_indices(t, idx, lo_bound - pad, -cut)
    return e_plus[::-1], e_minus  # descending above, ascending below


def _as_floats(arr: np.ndarray) -> tuple[float, ...]:
    return tuple(float(v) for v in arr)


def _movement(prev: tuple[np.ndarray, np.ndarray], cur: tuple[np.ndarray, np.ndarray]) -> float:
    move = 0.0
    for old, new in zip(prev, cur):
        if old.shape != new.shape:
            return math.inf
        if new.size:
            move = max(move, float(np.max(np.abs(old - new))))
    return move


def initial_half_width(p: Perturbation) -> int:
    return p.support_width() + 32


def outside_count(p: Perturbation, energy: float) -> int | None:
    """Eigenvalues of the infinite operator strictly above ``energy`` > 2.

    Sturm oscillation: the solution decaying at minus infinity is continued
    through the support; its sign flips (including at most one in the
    growing/decaying tail mixture on the right) count the spectrum above the
    energy.  Requires all stored bonds positive; returns None otherwise.
    Finite sections can only under-count (compression monotonicity), so this
    exact target tells the adaptive truncation when states are still hidden
    inside the section's edge cluster.
    """
    if not energy > 2.0:
        raise ValidationError(f"need energy > 2, got {energy!r}")
    if any(v <= 0.0 for v in p.a):
        return None
    span = p.support_sites()
    if span is None:
        return 0
    lo_s, hi_s = span
    mu = 2.0 / (energy + math.sqrt(energy * energy - 4.0))
    u_prev, u_cur = mu, 1.0  # left-minimal solution, sites lo_s - 1 and lo_s
    flips = 0
    last_sign = 1.0
    for n in range(lo_s, hi_s + 1):
        u_next = ((energy - p.b_entry(n)) * u_cur - p.a_entry(n - 1) * u_prev) / p.a_entry(n)
        u_prev, u_cur = u_cur, u_next
        if u_cur != 0.0:
            sign = math.copysign(1.0, u_cur)
            if sign != last_sign:
                flips += 1
            last_sign = sign
        scale = max(abs(u_prev), abs(u_cur))
        if scale > 1e100:
            u_prev /= scale
            u_cur /= scale
    # right tail u_k = A r^k + B r^-k (r = 1/mu): monotone once outside the
    # support, so at most one further flip, toward the sign of A
    growing = u_cur - mu * u_prev
    if growing != 0.0 and math.copysign(1.0, growing) != last_sign:
        flips += 1
    return flips


def eigenvalues_outside(
    p: Perturbation,
    cfg: EigenConfig = EigenConfig(),
    start_half_width: int | None = None,
) -> SpectrumOutside:
    """All eigenvalues beyond the edge buffer, with adaptive truncation.

    The half-width doubles (capped at ``cfg.max_half_width``) until no
    reported eigenvalue moves by more than ``cfg.bisect_tol`` between
    consecutive sections.  Bound states decay like mu^|n|, so the movement
    shrinks geometrically once the section covers the eigenvector tails.
    ``start_half_width`` overrides the default initial width (support + 32).
    """
    n = initial_half_width(p)
    if start_half_width is not None:
        n = max(n, start_half_width)
    n = min(n, cfg.max_half_width)
    cut = 2.0 + cfg.edge_buffer
    want_plus = outside_count(p, cut)
    want_minus = outside_count(negate_b(p), cut)
    prev = _section_outside(truncate(p, n), cfg)
    prev_n = n
    move = math.inf
    while n < cfg.max_half_width:
        n = min(2 * n, cfg.max_half_width)
        cur = _section_outside(truncate(p, n), cfg)
        move = _movement(prev, cur)
        complete = (want_plus is None or len(cur[0]) == want_plus) and (
            want_minus is None or len(cur[1]) == want_minus
        )
        if move < cfg.bisect_tol and complete:
            return SpectrumOutside(
                _as_floats(cur[0]), _as_floats(cur[1]), n, move, cfg.edge_buffer
            )
        prev = cur
        prev_n = n
    partial = SpectrumOutside(
        _as_floats(prev[0]), _as_floats(prev[1]), prev_n, move, cfg.edge_buffer
    )
    raise ConvergenceError(
        f"no convergence at max half-width {cfg.max_half_width} "
        f"(last movement {move:.3e})",
        partial=partial,
    )


# --- small dense symmetric matrices -----------------------------------------

class DenseSymmetric:
    """Immutable small dense symmetric matrix (proof-construct sized)."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise ValidationError(f"need a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValidationError("matrix entries must be finite")
        if not np.array_equal(m, m.T):
            raise ValidationError("matrix must be exactly symmetric")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, name, value):
        raise AttributeError("DenseSymmetric is immutable")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self):
        return f"DenseSymmetric({self.matrix.tolist()!r})"


def symmetrized(matrix: np.ndarray) -> DenseSymmetric:
    """Wrap a matrix that is symmetric up to roundoff."""
    m = np.asarray(matrix, dtype=float)
    return DenseSymmetric(0.5 * (m + m.T))


_JACOBI_SWEEP_CAP = 60


def dense_eigenvalues(m: DenseSymmetric, cfg: EigenConfig = EigenConfig()) -> list[float]:
    """All eigenvalues, ascending, via cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``cfg.dense_tol`` times its initial value (or below the attainable
    roundoff floor relative to the matrix norm).
    """
    a = np.array(m.matrix, dtype=float)
    n = a.shape[0]
    if n == 1:
        return [float(a[0, 0])]

    def off_norm(x):
        y = x.copy()
        np.fill_diagonal(y, 0.0)
        return float(np.linalg.norm(y))

    off0 = off_norm(a)
    floor = 1e-15 * max(1e-300, float(np.linalg.norm(a)))
    if off0 == 0.0:
        return sorted(float(v) for v in np.diag(a))
    target = max(cfg.dense_tol * off0, floor)

    for _ in range(_JACOBI_SWEEP_CAP):
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                h = a[q, q] - a[p, p]
                if abs(apq) < 1e-3 * np.finfo(float).eps * abs(h):
                    t = apq / h  # rotation angle below representable resolution
                else:
                    theta = 0.5 * h / apq
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
        if off_norm(a) <= target:
            return sorted(float(v) for v in np.diag(a))
    raise ConvergenceError(
        f"Jacobi sweeps did not reduce the off-diagonal norm below {target:.3e} "
        f"in {_JACOBI_SWEEP_CAP} sweeps"
    )


def kyfan(m: DenseSymmetric, n: int, cfg: EigenConfig = EigenConfig()) -> float:
    """Ky-Fan n-norm: sum of the n largest singular values.

    For symmetric matrices the singular values are the absolute eigenvalues.
    """
    if not 1 <= n <= m.dim:
        raise ValidationError(f"n = {n} outside 1..{m.dim}")
    mags = sorted((abs(v) for v in dense_eigenvalues(m, cfg)), reverse=True)
    return float(sum(mags[:n]))


def eigenvalue_sum_top(m: DenseSymmetric, n: int, cfg: EigenConfig = EigenConfig()) -> float:
    """Sum of the n largest (signed) eigenvalues."""
    if not 1 <= n <= m.dim:
        raise ValidationError(f"n = {n} outside 1..{m.dim}")
    evs = dense_eigenvalues(m, cfg)
    return float(sum(evs[-n:]))
