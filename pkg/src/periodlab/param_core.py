"""Symbolic algebra of Weil-Deligne parameters.

A parameter for GL(N) is modeled as a multiset of *segments*
``St(k, rho) * nu^e``: a cuspidal label ``rho`` of dimension ``r``, a
Steinberg length ``k`` (so the segment has dimension ``r*k``), and an exact
rational twist exponent ``e``.  Labels are opaque names decorated with the
data the calculus needs: dimension, self-duality type, the name of the dual
label, a unitarity flag, and an optional pointer to a concrete finite-group
model used by the matrix oracles.

Everything in this module is an immutable value and every operation is a
pure function; no numerics appear here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Union

from .errors import CatalogError, CatalogMismatchError, ConsistencyError

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED_NAMES = frozenset({"St", "nu"})


class SelfDualityType(Enum):
    """Self-duality of an irreducible: orthogonal, symplectic, or neither."""

    NOT_SELF_DUAL = "none"
    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"

    @property
    def sign(self) -> int:
        """+1 orthogonal, -1 symplectic, 0 not self-dual."""
        if self is SelfDualityType.ORTHOGONAL:
            return 1
        if self is SelfDualityType.SYMPLECTIC:
            return -1
        return 0

    @staticmethod
    def from_sign(sign: int) -> "SelfDualityType":
        if sign == 1:
            return SelfDualityType.ORTHOGONAL
        if sign == -1:
            return SelfDualityType.SYMPLECTIC
        if sign == 0:
            return SelfDualityType.NOT_SELF_DUAL
        raise ValueError(f"self-duality sign must be -1, 0, or +1, got {sign}")


@dataclass(frozen=True)
class CuspidalLabel:
    """An abstract irreducible cuspidal parameter of dimension ``dim``.

    ``dual_name`` equals ``name`` exactly when the label is self-dual; for a
    non-self-dual label it must point at a distinct label (resolved through a
    catalog).  ``model`` optionally names a finite-group model usable by the
    matrix oracles.
    """

    name: str
    dim: int
    sd_type: SelfDualityType
    dual_name: str = ""
    unitary: bool = True
    model: str | None = None

    def __post_init__(self):
        if not _NAME_RE.match(self.name) or self.name in _RESERVED_NAMES:
            raise ConsistencyError(f"invalid label name {self.name!r}")
        if self.dim < 1:
            raise ConsistencyError(f"label {self.name}: dim must be >= 1")
        if self.sd_type is SelfDualityType.SYMPLECTIC and self.dim % 2:
            raise ConsistencyError(
                f"label {self.name}: symplectic labels need even dimension, "
                f"got {self.dim}")
        if not self.dual_name:
            if self.sd_type is SelfDualityType.NOT_SELF_DUAL:
                raise ConsistencyError(
                    f"label {self.name}: non-self-dual labels need a dual name")
            object.__setattr__(self, "dual_name", self.name)
        is_self_dual = self.dual_name == self.name
        if is_self_dual != (self.sd_type is not SelfDualityType.NOT_SELF_DUAL):
            raise ConsistencyError(
                f"label {self.name}: dual_name must equal name exactly for "
                f"self-dual labels (dual_name={self.dual_name!r}, "
                f"type={self.sd_type.value})")

    @property
    def is_self_dual(self) -> bool:
        return self.sd_type is not SelfDualityType.NOT_SELF_DUAL


def labels_equal(a: CuspidalLabel, b: CuspidalLabel) -> bool:
    """Label equality by name; name collisions with different data are errors.

    Labels live inside one catalog at a time, so a shared name with
    conflicting fields means two catalogs were mixed; that is reported
    rather than treated as inequality.
    """
    if a.name != b.name:
        return False
    if a != b:
        raise CatalogMismatchError(
            f"label {a.name!r} occurs with conflicting declarations "
            f"({a} vs {b}); labels from different catalogs cannot be compared")
    return True


def _as_fraction(value: Union[int, str, Fraction]) -> Fraction:
    if isinstance(value, float):
        raise TypeError("twists must be exact rationals, not floats")
    return Fraction(value)


@dataclass(frozen=True)
class Segment:
    """One block ``St(k, rho) * nu^twist`` of dimension ``rho.dim * k``."""

    cuspidal: CuspidalLabel
    k: int
    twist: Fraction = Fraction(0)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"Steinberg length must be >= 1, got {self.k}")
        object.__setattr__(self, "twist", _as_fraction(self.twist))

    @property
    def dim(self) -> int:
        return self.cuspidal.dim * self.k


def _segment_sort_key(s: Segment):
    return (s.dim, s.k, s.cuspidal.name, s.twist)


@dataclass(frozen=True)
class WDParameter:
    """A multiset of segments; stored in canonical order.

    Canonical order is by (dimension, k, label name, twist) so that printing
    is deterministic; no predicate depends on the order.
    """

    segments: tuple[Segment, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "segments",
            tuple(sorted(self.segments, key=_segment_sort_key)))

    @staticmethod
    def of(segments: Iterable[Segment]) -> "WDParameter":
        return WDParameter(tuple(segments))

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.segments)


@dataclass(frozen=True)
class ASummand:
    """One summand ``rho (x) S(b) (x) S(a)`` of an A-parameter.

    ``b`` is the Deligne SL(2) multiplicity (Steinberg length), ``a`` the
    Arthur SL(2) multiplicity.
    """

    cuspidal: CuspidalLabel
    b: int
    a: int

    def __post_init__(self):
        if self.b < 1 or self.a < 1:
            raise ValueError("SL(2) multiplicities must be >= 1")

    @property
    def dim(self) -> int:
        return self.cuspidal.dim * self.b * self.a


def _summand_sort_key(s: ASummand):
    return (s.dim, s.b, s.a, s.cuspidal.name)


@dataclass(frozen=True)
class AParameter:
    """A multiset of A-parameter summands."""

    summands: tuple[ASummand, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "summands",
            tuple(sorted(self.summands, key=_summand_sort_key)))

    @staticmethod
    def of(summands: Iterable[ASummand]) -> "AParameter":
        return AParameter(tuple(summands))

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.summands)


# ---------------------------------------------------------------------------
# operations


def dimension(p: Union[Segment, WDParameter, ASummand, AParameter]) -> int:
    """Total dimension of a segment, parameter, or A-parameter."""
    return p.dim


def dual_segment(s: Segment, catalog=None) -> Segment:
    """The contragredient segment: dual label, same k, negated twist.

    For a non-self-dual label the dual label is resolved through ``catalog``
    (anything with a ``label(name)`` lookup); self-dual labels need none.
    """
    if s.cuspidal.dual_name == s.cuspidal.name:
        dual = s.cuspidal
    elif catalog is None:
        raise CatalogError(
            f"resolving the dual of label {s.cuspidal.name!r} requires a "
            f"catalog")
    else:
        dual = catalog.label(s.cuspidal.dual_name)
        if dual.dual_name != s.cuspidal.name or dual.dim != s.cuspidal.dim:
            raise ConsistencyError(
                f"labels {s.cuspidal.name!r} and {dual.name!r} are not a "
                f"mutual dual pair")
    return Segment(dual, s.k, -s.twist)


def segments_equivalent(s1: Segment, s2: Segment) -> bool:
    """True iff the labels are equal and k and twist agree."""
    return (s1.k == s2.k and s1.twist == s2.twist
            and labels_equal(s1.cuspidal, s2.cuspidal))


def sl2_duality_sign(k: int) -> int:
    """Sign of the invariant form on the k-dimensional SL(2) irreducible.

    +1 (symmetric / orthogonal) for k odd, -1 (skew / symplectic) for k even.
    """
    return 1 if k % 2 else -1


def segment_self_duality(s: Segment) -> SelfDualityType:
    """Self-duality type of a segment.

    A nonzero twist makes the segment non-self-dual (``nu^e rho`` is dual to
    ``nu^-e rho``, and these differ for e != 0 when ``rho`` is unitary); for
    twist zero the type multiplies: sign(label) * sign(k-dimensional SL(2)
    factor).
    """
    if s.twist != 0 or not s.cuspidal.is_self_dual:
        return SelfDualityType.NOT_SELF_DUAL
    return SelfDualityType.from_sign(
        s.cuspidal.sd_type.sign * sl2_duality_sign(s.k))


def is_tempered(p: WDParameter) -> bool:
    """True iff every segment has twist zero and a unitary label."""
    return all(s.twist == 0 and s.cuspidal.unitary for s in p.segments)


def arthur_to_l(a: AParameter) -> WDParameter:
    """Collapse the Arthur SL(2) into twists.

    Each summand (rho, b, a) expands to the segments St(b, rho) with twists
    (a-1)/2 - i for i = 0..a-1; the total dimension is preserved.
    """
    segments: list[Segment] = []
    for summand in a.summands:
        top = Fraction(summand.a - 1, 2)
        for i in range(summand.a):
            segments.append(Segment(summand.cuspidal, summand.b, top - i))
    return WDParameter.of(segments)


def segment_atom(s: Segment) -> str:
    """Compact display form of a segment without its twist.

    ``St(1, rho)`` collapses to the bare label name.
    """
    if s.k == 1:
        return s.cuspidal.name
    return f"St({s.k},{s.cuspidal.name})"


def multiplicities(p: WDParameter) -> list[tuple[Segment, int]]:
    """Distinct segments of ``p`` with multiplicities, in canonical order.

    Grouping is by (name, k, twist); conflicting label data behind one name
    raises, via :func:`labels_equal`.
    """
    groups: dict[tuple, list[Segment]] = {}
    for s in p.segments:
        groups.setdefault((s.cuspidal.name, s.k, s.twist), []).append(s)
    out = []
    for members in groups.values():
        rep = members[0]
        for other in members[1:]:
            labels_equal(rep.cuspidal, other.cuspidal)
        out.append((rep, len(members)))
    out.sort(key=lambda pair: _segment_sort_key(pair[0]))
    return out
