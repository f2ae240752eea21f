"""Jacobi operators with finitely supported perturbations.

A doubly infinite symmetric tridiagonal operator is described by its deviation
from the free one (off-diagonal entries 1, diagonal entries 0).  Only the
deviating entries are stored; everything outside the stored windows is
implicitly free.  All values are immutable and all operations are pure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

# Bonds with a_n < 1 drive a 2^m convex decomposition downstream; cap m so the
# term count stays tractable.
MAX_SUB_UNIT_BONDS = 20


class ValidationError(ValueError):
    """Input violates a documented precondition or invariant."""


class InstanceFormatError(ValidationError):
    """Instance file is not valid (missing/ill-typed keys, bad JSON)."""


@dataclass(frozen=True)
class Perturbation:
    """Finitely supported deviation from the free Jacobi operator.

    ``a[i]`` is the off-diagonal entry at bond ``a_offset + i`` (the bond
    between lattice sites ``n`` and ``n + 1``); entries are 1 outside the
    window.  ``b[i]`` is the diagonal entry at site ``b_offset + i``; entries
    are 0 outside the window.  Instances are canonical: windows carry no
    leading or trailing background values.
    """

    a_offset: int
    a: tuple[float, ...]
    b_offset: int
    b: tuple[float, ...]

    def a_entry(self, n: int) -> float:
        i = n - self.a_offset
        if 0 <= i < len(self.a):
            return self.a[i]
        return 1.0

    def b_entry(self, n: int) -> float:
        i = n - self.b_offset
        if 0 <= i < len(self.b):
            return self.b[i]
        return 0.0

    @property
    def is_free(self) -> bool:
        return not self.a and not self.b

    def support_sites(self) -> tuple[int, int] | None:
        """Smallest site interval touching every stored entry, or None."""
        lo = math.inf
        hi = -math.inf
        if self.b:
            lo = min(lo, self.b_offset)
            hi = max(hi, self.b_offset + len(self.b) - 1)
        if self.a:
            # bond n couples sites n and n + 1
            lo = min(lo, self.a_offset)
            hi = max(hi, self.a_offset + len(self.a))
        if lo is math.inf:
            return None
        return int(lo), int(hi)

    def support_width(self) -> int:
        span = self.support_sites()
        if span is None:
            return 0
        return span[1] - span[0] + 1


@dataclass(frozen=True)
class TruncatedTridiagonal:
    """Finite symmetric tridiagonal section standing in for the operator.

    ``diag[k]`` is the diagonal entry at lattice site ``lo + k``; ``offdiag[k]``
    couples sites ``lo + k`` and ``lo + k + 1``.
    """

    lo: int
    diag: tuple[float, ...]
    offdiag: tuple[float, ...]

    def __post_init__(self):
        if len(self.offdiag) != len(self.diag) - 1:
            raise ValidationError(
                f"offdiag length {len(self.offdiag)} != diag length {len(self.diag)} - 1"
            )

    @property
    def dim(self) -> int:
        return len(self.diag)

    def diag_array(self) -> np.ndarray:
        return np.asarray(self.diag, dtype=float)

    def offdiag_array(self) -> np.ndarray:
        return np.asarray(self.offdiag, dtype=float)

    def row_index(self, site: int) -> int:
        k = site - self.lo
        if not 0 <= k < self.dim:
            raise ValidationError(f"site {site} outside truncation [{self.lo}, {self.lo + self.dim - 1}]")
        return k

    def dense(self) -> np.ndarray:
        m = np.diag(self.diag_array())
        off = self.offdiag_array()
        m += np.diag(off, 1) + np.diag(off, -1)
        return m


def _check_finite(values, label: str) -> None:
    for i, v in enumerate(values):
        if not math.isfinite(v):
            raise ValidationError(f"{label}[{i}] = {v!r} is not finite")


def _trim(values: list[float], offset: int, background: float) -> tuple[int, tuple[float, ...]]:
    lo = 0
    hi = len(values)
    while lo < hi and values[lo] == background:
        lo += 1
    while hi > lo and values[hi - 1] == background:
        hi -= 1
    return offset + lo, tuple(values[lo:hi])


def make_perturbation(a_offset: int, a, b_offset: int, b) -> Perturbation:
    """Validate, canonically trim, and freeze a perturbation.

    Leading/trailing a-entries equal to 1 and b-entries equal to 0 are
    trimmed so equal operators compare equal.  Empty windows describe the
    free operator.
    """
    a = [float(v) for v in a]
    b = [float(v) for v in b]
    _check_finite(a, "a")
    _check_finite(b, "b")
    a_offset, a = _trim(a, int(a_offset), 1.0)
    b_offset, b = _trim(b, int(b_offset), 0.0)
    n_sub_unit = sum(1 for v in a if v < 1.0)
    if n_sub_unit > MAX_SUB_UNIT_BONDS:
        raise ValidationError(
            f"{n_sub_unit} bonds with a < 1 exceed the cap of {MAX_SUB_UNIT_BONDS}"
        )
    return Perturbation(a_offset, a, b_offset, b)


def truncate(p: Perturbation, half_width: int) -> TruncatedTridiagonal:
    """Finite section of the operator on sites [-half_width, half_width].

    The window must contain the whole support with margin at least one site
    on each side, so truncation boundaries never cut through a stored entry.
    """
    if half_width < 1:
        raise ValidationError("half_width must be a positive integer")
    span = p.support_sites()
    if span is not None and (span[0] < -half_width + 1 or span[1] > half_width - 1):
        raise ValidationError(
            f"support sites {span} not inside [-{half_width - 1}, {half_width - 1}]"
        )
    sites = range(-half_width, half_width + 1)
    diag = tuple(p.b_entry(n) for n in sites)
    offdiag = tuple(p.a_entry(n) for n in range(-half_width, half_width))
    return TruncatedTridiagonal(-half_width, diag, offdiag)


def negate_b(p: Perturbation) -> Perturbation:
    """Flip the sign of the diagonal window (spectrum negates, see spectral)."""
    return make_perturbation(p.a_offset, p.a, p.b_offset, [-v for v in p.b])


def sandwich(p: Perturbation) -> tuple[Perturbation, Perturbation]:
    """Comparison pair (lower, upper) bracketing the operator.

    Every bond value above 1 is clipped to 1 and its excess (a - 1)_+ is
    pushed onto the two adjacent diagonal sites; the diagonal is split by
    sign.  The result satisfies lower <= p <= upper in the semidefinite
    order, with all off-diagonal entries <= 1.
    """
    a_clipped = [min(v, 1.0) for v in p.a]

    sites: set[int] = set(range(p.b_offset, p.b_offset + len(p.b)))
    for i, v in enumerate(p.a):
        if v > 1.0:
            bond = p.a_offset + i
            sites.update((bond, bond + 1))
    if not sites:
        lo = make_perturbation(p.a_offset, a_clipped, 0, [])
        return lo, make_perturbation(p.a_offset, a_clipped, 0, [])

    first, last = min(sites), max(sites)
    b_plus = []
    b_minus = []
    for n in range(first, last + 1):
        excess = max(p.a_entry(n - 1) - 1.0, 0.0) + max(p.a_entry(n) - 1.0, 0.0)
        bn = p.b_entry(n)
        b_plus.append(max(bn, 0.0) + excess)
        b_minus.append(-max(-bn, 0.0) - excess)
    lower = make_perturbation(p.a_offset, a_clipped, first, b_minus)
    upper = make_perturbation(p.a_offset, a_clipped, first, b_plus)
    return lower, upper


# --- instance file format (single source of truth for CLI and tests) ---

_INSTANCE_KEYS = {"a_offset", "a", "b_offset", "b"}


def parse_instance(text: str) -> Perturbation:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InstanceFormatError("instance file must contain a JSON object")
    unknown = set(obj) - _INSTANCE_KEYS
    if unknown:
        raise InstanceFormatError(f"unknown keys: {sorted(unknown)}")
    for key in ("a_offset", "b_offset"):
        if key in obj and (isinstance(obj[key], bool) or not isinstance(obj[key], int)):
            raise InstanceFormatError(f"{key} must be an integer")
    for key in ("a", "b"):
        vals = obj.get(key, [])
        if not isinstance(vals, list) or any(
            isinstance(v, bool) or not isinstance(v, (int, float)) for v in vals
        ):
            raise InstanceFormatError(f"{key} must be an array of numbers")
    try:
        return make_perturbation(
            obj.get("a_offset", 0), obj.get("a", []), obj.get("b_offset", 0), obj.get("b", [])
        )
    except ValidationError as exc:
        raise InstanceFormatError(str(exc)) from exc


def dump_instance(p: Perturbation) -> str:
    """Canonical single-line JSON form; parse(dump(p)) == p byte-stably."""
    obj = {
        "a": list(p.a),
        "a_offset": p.a_offset,
        "b": list(p.b),
        "b_offset": p.b_offset,
    }
    return json.dumps(obj, sort_keys=True, separators=(", ", ": ")) + "\n"


def load_instance(path) -> Perturbation:
    return parse_instance(Path(path).read_text())


def save_instance(p: Perturbation, path) -> None:
    Path(path).write_text(dump_instance(p))
