"""Distinction rules, the regular-discrete-sum construction, and its checks.

The rules here are all pole-profile logic: a self-dual label owns exactly
one pole, exterior-square for symplectic type or symmetric-square for
orthogonal type, and every linear-distinction statement reduces to which
pole St(k, rho) inherits.  ``check_conjecture_instance`` packages the rule
verdicts as a report and can cross-examine them against the matrix oracle:
a realized parameter must carry an invariant symplectic form exactly when
the rules say it factors through the symplectic group, and must admit no
invariant isotropic subspace exactly when the rules call it elliptic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    DuplicateSegmentError,
    NonTemperedError,
    NotDistinguishedError,
    OddBlockError,
    OddDimensionError,
    PeriodLabError,
)
from .group_models import Catalog, builtin_catalog, invariant_isotropic_exists
from .matrix_lab import (
    BilinearForm,
    GeneratorSet,
    find_nondegenerate_skew,
    invariant_forms,
    is_in_sp,
    realize,
    symplectic_J,
)
from .notation import print_param
from .param_core import (
    AParameter,
    CuspidalLabel,
    Segment,
    SelfDualityType,
    WDParameter,
    arthur_to_l,
    is_tempered,
    multiplicities,
    segment_self_duality,
    segments_equivalent,
)
from .reporting import ERROR, Report

TAG_RDS = "rule:rds-construction"
TAG_TEMPERED = "rule:tempered"
TAG_DISTINGUISHED = "rule:linear-distinction"
TAG_SP = "rule:sp-image"
TAG_ELLIPTIC = "rule:elliptic-multiplicity-free"
TAG_ORACLE_FORM = "oracle:invariant-form"
TAG_ORACLE_ISOTROPY = "oracle:isotropy"


# ---------------------------------------------------------------------------
# pole profiles and linear distinction


@dataclass(frozen=True)
class PoleProfile:
    """Which of the two square L-factors has a pole at the origin."""

    wedge_pole: bool
    sym_pole: bool


def pole_profile(rho: CuspidalLabel) -> PoleProfile:
    """Pole dichotomy of a cuspidal label: at most one factor has a pole.

    Symplectic type owns the exterior-square pole, orthogonal type the
    symmetric-square pole, and a non-self-dual label has neither.
    """
    if rho.sd_type is SelfDualityType.SYMPLECTIC:
        return PoleProfile(wedge_pole=True, sym_pole=False)
    if rho.sd_type is SelfDualityType.ORTHOGONAL:
        return PoleProfile(wedge_pole=False, sym_pole=True)
    return PoleProfile(wedge_pole=False, sym_pole=False)


def is_linear_distinguished(s: Segment) -> bool:
    """Whether the even-dimensional segment St(k, rho) is distinguished.

    Encoded from pole profiles: odd k needs the exterior-square pole of an
    even-dimensional rho, even k needs the symmetric-square pole.  Requires
    twist 0 and even segment dimension.
    """
    if s.twist != 0:
        raise NonTemperedError(
            f"distinction is defined for untwisted segments; got twist "
            f"{s.twist}")
    if s.dim % 2 == 1:
        raise OddDimensionError(
            f"St({s.k},{s.cuspidal.name}) has odd dimension {s.dim}")
    profile = pole_profile(s.cuspidal)
    if s.k % 2 == 1:
        return profile.wedge_pole and s.cuspidal.dim % 2 == 0
    return profile.sym_pole


# ---------------------------------------------------------------------------
# regular discrete sums


@dataclass(frozen=True)
class RDSSpec:
    """A requested direct sum of distinguished blocks filling dimension 2n."""

    n: int
    segments: tuple[Segment, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        object.__setattr__(self, "segments", tuple(self.segments))


def validate_rds(spec: RDSSpec) -> WDParameter:
    """Build the parameter of a regular discrete sum, or explain why not.

    Checks, in order: total dimension 2n, every block of even dimension,
    pairwise inequivalent blocks, every block linearly distinguished.  The
    returned parameter is tempered by construction.
    """
    total = sum(s.dim for s in spec.segments)
    if total != 2 * spec.n:
        raise DimensionMismatchError(
            f"block dimensions sum to {total}, expected 2n = {2 * spec.n}")
    for s in spec.segments:
        if s.dim % 2 == 1:
            raise OddBlockError(
                f"St({s.k},{s.cuspidal.name}) has odd dimension {s.dim}")
    for i, a in enumerate(spec.segments):
        for b in spec.segments[i + 1:]:
            if segments_equivalent(a, b):
                raise DuplicateSegmentError(
                    f"repeated block St({a.k},{a.cuspidal.name})")
    for i, s in enumerate(spec.segments):
        if not is_linear_distinguished(s):
            raise NotDistinguishedError(
                f"block {i} = St({s.k},{s.cuspidal.name}) is not "
                f"linearly distinguished", index=i)
    return WDParameter.of(spec.segments)


@dataclass(frozen=True)
class DistinguishedMorphismRecord:
    """The dual-side embedding data attached to the period subgroup."""

    n: int
    dual_group_descriptor: str
    x_dual_group_descriptor: str
    sl2_factor: str
    embedding_form: BilinearForm
    metadata: str


def distinguished_morphism(n: int) -> DistinguishedMorphismRecord:
    """The inclusion Sp(2n, C) -> GL(2n, C) preserving the standard form."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    form = symplectic_J(2 * n)
    return DistinguishedMorphismRecord(
        n=n,
        dual_group_descriptor=f"GL({2 * n},C)",
        x_dual_group_descriptor=f"Sp({2 * n},C)",
        sl2_factor="trivial",
        embedding_form=form,
        metadata=("inclusion of the symplectic group fixing the "
                  "antidiagonal-block form; trivial on the auxiliary "
                  "SL(2) factor"),
    )


# ---------------------------------------------------------------------------
# symbolic symplectic-image and ellipticity predicates


def factors_through_sp_symbolic(p: WDParameter) -> bool:
    """Whether the parameter preserves some nondegenerate skew form.

    Segment classes pair up: symplectic-type classes carry their own skew
    form at any multiplicity, orthogonal-type classes need even
    multiplicity, and everything else must match its dual class
    (same k, dual label, opposite twist) with equal multiplicity.
    """
    mults = multiplicities(p)
    table = {(s.cuspidal.name, s.k, s.twist): m for s, m in mults}
    for s, m in mults:
        sd = segment_self_duality(s)
        if sd is SelfDualityType.SYMPLECTIC:
            continue
        if sd is SelfDualityType.ORTHOGONAL:
            if m % 2 == 1:
                return False
            continue
        dual_key = (s.cuspidal.dual_name, s.k, -s.twist)
        if table.get(dual_key, 0) != m:
            return False
    return True


def is_x_elliptic_symbolic(p: WDParameter) -> bool:
    """Symplectic image stabilizing no nonzero isotropic subspace.

    Holds exactly when the parameter factors through the symplectic group,
    every segment is of symplectic type, and no segment repeats.
    """
    if not factors_through_sp_symbolic(p):
        return False
    for s, m in multiplicities(p):
        if m != 1:
            return False
        if segment_self_duality(s) is not SelfDualityType.SYMPLECTIC:
            return False
    return True


def is_x_distinguished(a: AParameter) -> bool:
    """Whether an Arthur parameter factors through the period embedding.

    Requires triviality on the auxiliary SL(2) (every summand has a = 1),
    temperedness of the associated parameter, and the symplectic-image
    condition.
    """
    if any(summand.a != 1 for summand in a.summands):
        return False
    phi = arthur_to_l(a)
    return is_tempered(phi) and factors_through_sp_symbolic(phi)


# ---------------------------------------------------------------------------
# oracle cross-examination


@dataclass(frozen=True)
class OracleVerdicts:
    """Matrix-level answers for one parameter.

    ``form`` is a nondegenerate skew invariant form when one exists in the
    invariant-form space, else None; ``elliptic`` is the oracle's
    ellipticity verdict (no invariant isotropic subspace), or None when it
    was not computed.  ``max_residue`` is the worst |g^T J g - J| entry
    over the generators, 0.0 when no form was found.
    """

    gens: GeneratorSet
    form: BilinearForm | None
    elliptic: bool | None
    max_residue: float

    @property
    def skew_found(self) -> bool:
        return self.form is not None


def oracle_verdicts(p: WDParameter, catalog: Catalog | None = None,
                    dim_bound: int = 12,
                    with_isotropy: bool = True) -> OracleVerdicts:
    """Realize a parameter and answer the conjecture questions in matrices.

    The form layer (does an invariant nondegenerate skew form exist, and do
    all generators preserve it) always runs; the isotropy layer can be
    switched off for parameters outside the isotropy oracle's range.
    Propagates realization and oracle errors.
    """
    cat = builtin_catalog() if catalog is None else catalog
    gens = realize(p, cat)
    forms = invariant_forms(gens)
    j = find_nondegenerate_skew(forms)
    if j is None:
        return OracleVerdicts(gens, None, None, 0.0)
    residue = 0.0
    jc = j.gram.as_complex()
    for g in gens.generators:
        gc = g.as_complex()
        residue = max(residue, float(np.abs(gc.T @ jc @ gc - jc).max()))
        if not is_in_sp(g, j.gram, tol=1e-9):
            raise PeriodLabError(
                "internal: invariant_forms returned a non-invariant form")
    if not with_isotropy:
        return OracleVerdicts(gens, j, None, residue)
    isotropic = invariant_isotropic_exists(gens, j, dim_bound=dim_bound)
    return OracleVerdicts(gens, j, not isotropic, residue)


def attach_oracle_checks(report: Report, p: WDParameter,
                         catalog: Catalog | None,
                         factors: bool, elliptic: bool) -> None:
    """Run the matrix oracle and record agreement with the rule verdicts.

    The two layers fail independently: an error in the isotropy search
    (multiplicity or surrogate range) still leaves the form-layer verdict
    on record, with agreement downgraded to None rather than False.
    """
    try:
        verdicts = oracle_verdicts(p, catalog, with_isotropy=False)
    except PeriodLabError as exc:
        report.add("oracle-form", ERROR, TAG_ORACLE_FORM, str(exc))
        report.oracle_agreement = None
        return
    form_agrees = verdicts.skew_found == factors
    detail = (f"nondegenerate skew form found; max |g^T J g - J| = "
              f"{verdicts.max_residue:.2e}" if verdicts.skew_found
              else "no nondegenerate skew form in the invariant-form space")
    report.add_outcome("oracle-form", form_agrees, TAG_ORACLE_FORM, detail)
    if not verdicts.skew_found:
        report.oracle_agreement = form_agrees
        return
    try:
        isotropic = invariant_isotropic_exists(verdicts.gens, verdicts.form)
    except PeriodLabError as exc:
        report.add("oracle-isotropy", ERROR, TAG_ORACLE_ISOTROPY, str(exc))
        report.oracle_agreement = None
        return
    isotropy_agrees = (not isotropic) == elliptic
    report.add_outcome(
        "oracle-isotropy", isotropy_agrees, TAG_ORACLE_ISOTROPY,
        "found an invariant isotropic subspace" if isotropic
        else "no invariant isotropic subspace")
    report.oracle_agreement = form_agrees and isotropy_agrees


def check_conjecture_instance(spec: RDSSpec, use_oracle: bool = False,
                              catalog: Catalog | None = None) -> Report:
    """Validate a regular discrete sum and check the main-theorem claims.

    Propagates validation errors (an invalid spec yields no report).  The
    four rule checks are temperedness, dimension, symplectic image, and
    ellipticity; with ``use_oracle`` the matrix verdicts are appended and
    ``oracle_agreement`` is set.
    """
    p = validate_rds(spec)
    report = Report(input=print_param(p))
    report.add_outcome(
        "rds-valid", True, TAG_RDS,
        f"n={spec.n}, {len(spec.segments)} pairwise inequivalent "
        f"distinguished blocks")
    report.add_outcome("dimension", p.dim == 2 * spec.n, TAG_RDS,
                       f"dim = {p.dim} = 2n")
    report.add_outcome("tempered", is_tempered(p), TAG_TEMPERED,
                       "all twists zero")
    factors = factors_through_sp_symbolic(p)
    report.add_outcome("sp-image", factors, TAG_SP,
                       "all blocks of symplectic type" if factors
                       else "no symplectic pairing exists")
    elliptic = is_x_elliptic_symbolic(p)
    report.add_outcome("x-elliptic", elliptic, TAG_ELLIPTIC,
                       "multiplicity-free symplectic-type decomposition"
                       if elliptic else "parameter is not elliptic")
    if use_oracle:
        attach_oracle_checks(report, p, catalog, factors, elliptic)
    return report
