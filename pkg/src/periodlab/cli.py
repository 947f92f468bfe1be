"""Command-line front end: classify, verify-matrices, sweep.

Exit codes are a total function of the emitted report: 0 all checks pass,
1 some check failed, 2 expression syntax error, 3 catalog problem,
4 oracle disagreement (which signals an implementation bug, never a
mathematical outcome).  ``--json`` switches to a schema-stable JSON
rendering of the same report.
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys
from pathlib import Path

from .distinction import (
    TAG_DISTINGUISHED,
    TAG_ELLIPTIC,
    TAG_RDS,
    TAG_SP,
    TAG_TEMPERED,
    RDSSpec,
    attach_oracle_checks,
    check_conjecture_instance,
    factors_through_sp_symbolic,
    is_linear_distinguished,
    is_x_elliptic_symbolic,
    oracle_verdicts,
)
from .errors import (
    CatalogError,
    DimensionMismatchError,
    DuplicateSegmentError,
    NotDistinguishedError,
    OddBlockError,
    ParseError,
    PeriodLabError,
)
from .group_models import Catalog, builtin_catalog
from .matrix_lab import (
    Symmetry,
    conjugator_for_partition,
    invariant_form_sl2,
    symplectic_J,
    w_plus,
)
from .notation import load_catalog, parse_param, print_param
from .param_core import (
    Segment,
    SelfDualityType,
    WDParameter,
    is_tempered,
    segment_self_duality,
)
from .reporting import CATALOG_CHECK, ERROR, PARSE_CHECK, PASS, Report

CATALOG_ENV = "PERIODLAB_CATALOG"

TAG_GRAMMAR = "rule:grammar"
TAG_CATALOG = "rule:catalog-load"
TAG_J_FORM = "identity:symplectic-form"
TAG_CONJUGATOR = "identity:partition-conjugator"
TAG_W_PLUS = "identity:w-plus"
TAG_FORM_PARITY = "identity:form-parity"


def _resolve_catalog(path: str | None) -> tuple[Catalog, str]:
    if path is None:
        path = os.environ.get(CATALOG_ENV) or None
    if path is None:
        return builtin_catalog(), "built-in"
    text = Path(path).read_text(encoding="utf-8")
    return load_catalog(text), path


# ---------------------------------------------------------------------------
# classify


def run_classify(expr: str, catalog_path: str | None = None,
                 use_oracle: bool = False) -> Report:
    """Parse one expression and report every rule verdict for it."""
    report = Report(input=expr)
    try:
        catalog, source = _resolve_catalog(catalog_path)
    except (OSError, PeriodLabError) as exc:
        report.add(CATALOG_CHECK, ERROR, TAG_CATALOG, str(exc))
        return report
    try:
        p = parse_param(expr, catalog)
    except ParseError as exc:
        report.add(PARSE_CHECK, ERROR, TAG_GRAMMAR, str(exc))
        return report
    except CatalogError as exc:
        report.add(CATALOG_CHECK, ERROR, TAG_CATALOG, str(exc))
        return report
    report.add(PARSE_CHECK, PASS, TAG_GRAMMAR,
               f"{len(p.segments)} segment(s); catalog: {source}")
    report.add("dimension", PASS, TAG_RDS, f"dim = {p.dim}")
    tempered = is_tempered(p)
    report.add_outcome("tempered", tempered, TAG_TEMPERED,
                       "all twists zero" if tempered
                       else "twisted segments present")
    for i, s in enumerate(p.segments):
        text = print_param(WDParameter.of([s]))
        sd = segment_self_duality(s)
        try:
            ok = is_linear_distinguished(s)
            note = ("linearly distinguished" if ok
                    else "not linearly distinguished")
        except PeriodLabError as exc:
            ok = False
            note = f"not linearly distinguished ({exc})"
        report.add_outcome(f"segment[{i}]", ok, TAG_DISTINGUISHED,
                           f"{text}: {sd.value} type; {note}")
    factors = factors_through_sp_symbolic(p)
    report.add_outcome("sp-image", factors, TAG_SP,
                       "symplectic pairing exists" if factors
                       else "no symplectic pairing exists")
    elliptic = is_x_elliptic_symbolic(p)
    report.add_outcome("x-elliptic", elliptic, TAG_ELLIPTIC,
                       "multiplicity-free symplectic-type decomposition"
                       if elliptic else "parameter is not elliptic")
    if use_oracle:
        attach_oracle_checks(report, p, catalog, factors, elliptic)
    return report


# ---------------------------------------------------------------------------
# verify-matrices


def _even_partitions(total: int, max_part: int | None = None):
    """All partitions of ``total`` into even parts, descending."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    first = min(total, max_part)
    if first % 2:
        first -= 1
    for part in range(first, 0, -2):
        for rest in _even_partitions(total - part, part):
            yield (part, *rest)


def run_verify_matrices(max_n: int = 6, max_k: int = 8) -> Report:
    """Run the exact matrix identity suites and report counts."""
    if max_n < 1 or max_k < 1:
        raise ValueError("max_n and max_k must be positive")
    report = Report(input=f"verify-matrices max_n={max_n} max_k={max_k}")

    def suite(name, tag, fn):
        try:
            ok, details = fn()
        except PeriodLabError as exc:
            report.add(name, ERROR, tag, str(exc))
            return
        report.add_outcome(name, ok, tag, details)

    def forms_suite():
        for m in range(1, max_n + 1):
            f = symplectic_J(2 * m)
            if f.symmetry is not Symmetry.SKEW or not f.nondegenerate:
                return False, f"J'_{2 * m} is not a symplectic form"
        return True, (f"J'_2 .. J'_{2 * max_n} all skew and "
                      f"nondegenerate (exact arithmetic)")

    def conjugator_suite():
        count = 0
        for m in range(1, max_n + 1):
            for part in _even_partitions(2 * m):
                conjugator_for_partition(part)
                count += 1
        return True, (f"{count} even partitions of 2 .. {2 * max_n}; "
                      f"P^T J' P = J'' holds exactly for each")

    def w_plus_suite():
        for m in range(1, max_n + 1):
            if conjugator_for_partition((2,) * m) != w_plus(m):
                return False, f"conjugator differs from w_+ at n={m}"
        return True, (f"conjugator equals the w_+ permutation matrix for "
                      f"the all-2 partition, n = 1 .. {max_n}")

    def parity_suite():
        cells = []
        ok = True
        for k in range(1, max_k + 1):
            f = invariant_form_sl2(k)
            want = Symmetry.SYMMETRIC if k % 2 == 1 else Symmetry.SKEW
            if f.symmetry is not want or not f.nondegenerate:
                ok = False
            cells.append(f"k={k}:{f.symmetry.value}")
        return ok, "; ".join(cells)

    suite("symplectic-forms", TAG_J_FORM, forms_suite)
    suite("partition-conjugators", TAG_CONJUGATOR, conjugator_suite)
    suite("w-plus", TAG_W_PLUS, w_plus_suite)
    suite("form-parity", TAG_FORM_PARITY, parity_suite)
    return report


# ---------------------------------------------------------------------------
# sweep


def _segment_sort_key(s: Segment):
    return (s.dim, s.k, s.cuspidal.name, s.twist)


def _segment_pool(catalog: Catalog,
                  max_dim: int) -> tuple[list[Segment], list[str]]:
    """Distinguished even-dimensional segments buildable from the catalog.

    Labels without a matrix model cannot face the oracle and are skipped
    with a note.
    """
    pool: list[Segment] = []
    skipped: list[str] = []
    for label in sorted(catalog.labels(), key=lambda l: l.name):
        for k in range(1, max_dim // label.dim + 1):
            seg = Segment(label, k)
            if seg.dim % 2 == 1:
                continue
            try:
                if not is_linear_distinguished(seg):
                    continue
            except PeriodLabError:
                continue
            if catalog.entries[label.name].model is None:
                skipped.append(f"St({k},{label.name}): no matrix model")
                continue
            pool.append(seg)
    pool.sort(key=_segment_sort_key)
    return pool, skipped


def _first_failure(report: Report) -> str:
    for c in report.checks:
        if c.verdict != PASS:
            return f"{c.name}: {c.details}"
    return ""


def run_conjecture_sweep(catalog_path: str | None = None,
                         max_dim: int = 8) -> Report:
    """Exhaustively check every regular discrete sum up to a dimension cap.

    Every valid spec must pass symbolically and agree with the matrix
    oracle; specs containing blocks beyond the SL(2) surrogate range get
    the invariant-form oracle only.  Negative controls (duplicates,
    undistinguished blocks, odd blocks, dual pairs) must be rejected or
    classified non-elliptic, and the oracle must agree throughout.
    """
    if not 2 <= max_dim <= 12:
        raise ValueError("max_dim must be between 2 and 12")
    report = Report(input=f"sweep max_dim={max_dim}")
    try:
        catalog, source = _resolve_catalog(catalog_path)
    except (OSError, PeriodLabError) as exc:
        report.add(CATALOG_CHECK, ERROR, TAG_CATALOG, str(exc))
        return report

    bound = catalog.sl2_surrogate_bound
    pool, skipped = _segment_pool(catalog, max_dim)
    combos = []
    for size in range(1, len(pool) + 1):
        for combo in itertools.combinations(pool, size):
            if sum(s.dim for s in combo) <= max_dim:
                combos.append(combo)
    note = f"{len(combos)} valid specs from {len(pool)} blocks ({source})"
    if skipped:
        note += "; skipped: " + ", ".join(skipped)
    report.add("enumeration", PASS, TAG_RDS, note)

    agreement = True
    for combo in combos:
        p = WDParameter.of(combo)
        text = print_param(p)
        total = sum(s.dim for s in combo)
        spec = RDSSpec(total // 2, combo)
        full_oracle = all(s.k <= bound for s in combo)
        try:
            if full_oracle:
                rep = check_conjecture_instance(spec, use_oracle=True,
                                                catalog=catalog)
                ok = rep.exit_code == 0
                if rep.oracle_agreement is False:
                    agreement = False
                details = (f"{len(rep.checks)} checks pass" if ok
                           else _first_failure(rep))
            else:
                rep = check_conjecture_instance(spec, use_oracle=False,
                                                catalog=catalog)
                verdicts = oracle_verdicts(p, catalog, with_isotropy=False)
                if not verdicts.skew_found:
                    agreement = False
                ok = rep.exit_code == 0 and verdicts.skew_found
                details = (f"symbolic + form oracle; isotropy oracle "
                           f"limited to k <= {bound}")
                if not ok:
                    details = _first_failure(rep) or details
        except PeriodLabError as exc:
            ok = False
            details = str(exc)
        report.add_outcome(f"rds {text}", ok, TAG_RDS, details)

    agreement = _run_validation_controls(report, catalog, pool) and agreement
    agreement = _run_parameter_controls(report, catalog, pool, bound,
                                        agreement)
    report.oracle_agreement = agreement
    return report


def _run_validation_controls(report: Report, catalog: Catalog,
                             pool: list[Segment]) -> bool:
    controls: list[tuple[str, RDSSpec, type]] = []
    if pool:
        s = pool[0]
        controls.append(("duplicate-blocks", RDSSpec(s.dim, (s, s)),
                         DuplicateSegmentError))
        controls.append(("dimension-mismatch", RDSSpec(s.dim, (s,)),
                         DimensionMismatchError))
    bad = _first_undistinguished(catalog)
    if bad is not None:
        controls.append(("undistinguished-block",
                         RDSSpec(bad.dim // 2, (bad,)),
                         NotDistinguishedError))
    nsd = _first_dual_pair(catalog)
    if nsd is not None and nsd[0].dim % 2 == 1:
        total = nsd[0].dim + nsd[1].dim
        controls.append(("odd-blocks",
                         RDSSpec(total // 2, (Segment(nsd[0], 1),
                                              Segment(nsd[1], 1))),
                         OddBlockError))
    ok_all = True
    for name, spec, expected in controls:
        try:
            check_conjecture_instance(spec, use_oracle=True, catalog=catalog)
            report.add_outcome(f"control {name}", False, TAG_RDS,
                               "expected rejection, got a report")
            ok_all = False
        except expected as exc:
            report.add_outcome(f"control {name}", True, TAG_RDS,
                               f"rejected: {exc}")
        except PeriodLabError as exc:
            report.add_outcome(f"control {name}", False, TAG_RDS,
                               f"wrong error: {exc!r}")
            ok_all = False
    return ok_all


def _first_undistinguished(catalog: Catalog) -> Segment | None:
    """An even-dimensional untwisted segment failing linear distinction."""
    for label in sorted(catalog.labels(), key=lambda l: l.name):
        if catalog.entries[label.name].model is None:
            continue
        for k in (1, 2):
            seg = Segment(label, k)
            if seg.dim % 2 == 1 or seg.k > catalog.sl2_surrogate_bound:
                continue
            try:
                if not is_linear_distinguished(seg):
                    return seg
            except PeriodLabError:
                continue
    return None


def _first_dual_pair(catalog: Catalog) -> tuple | None:
    for label in sorted(catalog.labels(), key=lambda l: l.name):
        if label.sd_type is not SelfDualityType.NOT_SELF_DUAL:
            continue
        if label.name >= label.dual_name:
            continue
        if catalog.entries[label.name].model is None:
            continue
        if catalog.entries[label.dual_name].model is None:
            continue
        return label, catalog.label(label.dual_name)
    return None


def _first_orthogonal_type(catalog: Catalog) -> Segment | None:
    """An even-dimensional orthogonal-type segment (never distinguished
    as a single symplectic block)."""
    for label in sorted(catalog.labels(), key=lambda l: l.name):
        if catalog.entries[label.name].model is None:
            continue
        for k in (1, 2):
            seg = Segment(label, k)
            if seg.dim % 2 == 1 or seg.k > catalog.sl2_surrogate_bound:
                continue
            if segment_self_duality(seg) is SelfDualityType.ORTHOGONAL:
                try:
                    if not is_linear_distinguished(seg):
                        return seg
                except PeriodLabError:
                    continue
    return None


def _run_parameter_controls(report: Report, catalog: Catalog,
                            pool: list[Segment], bound: int,
                            agreement: bool) -> bool:
    """Parameters that factor but are not elliptic (or do not factor at
    all); the rules and the oracle must agree on each."""
    controls: list[tuple[str, tuple[Segment, ...], bool, bool]] = []
    dup = next((s for s in pool
                if segment_self_duality(s) is SelfDualityType.SYMPLECTIC
                and s.k <= bound and 2 * s.dim <= 12), None)
    if dup is not None:
        controls.append(("duplicate-parameter", (dup, dup), True, False))
    nsd = _first_dual_pair(catalog)
    if nsd is not None and 2 * nsd[0].dim <= 12:
        controls.append(("dual-pair-parameter",
                         (Segment(nsd[0], 1), Segment(nsd[1], 1)),
                         True, False))
    bad = _first_orthogonal_type(catalog)
    if bad is not None:
        if bad.dim <= 12:
            controls.append(("orthogonal-single", (bad,), False, False))
        if 2 * bad.dim <= 12:
            controls.append(("orthogonal-double", (bad, bad), True, False))
    for name, segments, want_factors, want_elliptic in controls:
        p = WDParameter.of(segments)
        factors = factors_through_sp_symbolic(p)
        elliptic = is_x_elliptic_symbolic(p)
        sym_ok = factors == want_factors and elliptic == want_elliptic
        try:
            verdicts = oracle_verdicts(p, catalog)
        except PeriodLabError as exc:
            report.add_outcome(f"control {name}", False, TAG_SP,
                               f"oracle error: {exc}")
            agreement = False
            continue
        oracle_ok = verdicts.skew_found == factors
        if verdicts.skew_found:
            oracle_ok = oracle_ok and verdicts.elliptic == elliptic
        if not oracle_ok:
            agreement = False
        outcome = []
        outcome.append("factors" if factors else "does not factor")
        outcome.append("elliptic" if elliptic else "not elliptic")
        outcome.append("oracle agrees" if oracle_ok else "oracle disagrees")
        report.add_outcome(f"control {name}", sym_ok and oracle_ok, TAG_SP,
                           f"{print_param(p)}: " + ", ".join(outcome))
    return agreement


# ---------------------------------------------------------------------------
# entry point


def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="periodlab",
        description=("Rules and matrix oracles for symplectic-period "
                     "parameter classification."))
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="check one parameter expression")
    c.add_argument("expr", help="expression, e.g. 'St(3,q8) (+) q8b'")
    c.add_argument("--catalog", metavar="PATH",
                   help=f"catalog file (default: ${CATALOG_ENV} or built-in)")
    c.add_argument("--oracle", action="store_true",
                   help="cross-check the rules against the matrix oracle")
    c.add_argument("--json", action="store_true", help="JSON output")

    v = sub.add_parser("verify-matrices",
                       help="run the exact matrix identity suites")
    v.add_argument("--max-n", type=int, default=6, metavar="N",
                   help="verify forms and conjugators up to GL(2N) "
                        "(default 6)")
    v.add_argument("--max-k", type=int, default=8, metavar="K",
                   help="verify form parity up to S(K) (default 8)")
    v.add_argument("--json", action="store_true", help="JSON output")

    s = sub.add_parser("sweep",
                       help="enumerate regular discrete sums and "
                            "cross-check the oracle")
    s.add_argument("--catalog", metavar="PATH",
                   help=f"catalog file (default: ${CATALOG_ENV} or built-in)")
    s.add_argument("--max-dim", type=int, default=8, metavar="D",
                   help="total dimension cap, 2..12 (default 8)")
    s.add_argument("--json", action="store_true", help="JSON output")
    return ap


def main(argv=None) -> int:
    args = _build_argparser().parse_args(argv)
    try:
        if args.command == "classify":
            report = run_classify(args.expr, args.catalog, args.oracle)
        elif args.command == "verify-matrices":
            report = run_verify_matrices(args.max_n, args.max_k)
        else:
            report = run_conjecture_sweep(args.catalog, args.max_dim)
    except ValueError as exc:
        print(f"periodlab: {exc}", file=sys.stderr)
        return 2
    print(report.to_json() if args.json else report.render())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
