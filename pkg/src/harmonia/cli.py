"""Command line entry point: ``harmonia {dims,verify,harmonics}``.

Exit codes: 0 every report passed or is open, 1 some report failed,
2 usage error, 3 request outside the desk-scale envelope (nothing written).
"""

from __future__ import annotations

import argparse
import sys
from math import comb
from typing import Callable, Iterable, Sequence

from . import __version__
from .harmonics import harmonic_space, hilbert_coefficients, ideal_dimension, verify_direct_sum
from .invariants import (
    InvariantSet,
    determinant,
    generator_degrees,
    generator_polynomials,
    invariant_dimension,
    invariant_series,
    is_invariant,
    jacobian_generic_rank,
    pfaffian,
    reference_sign,
    squared_identity_residual,
)
from .liealg import FAMILIES, SO_EVEN, SO_ODD, SU, Family, build_algebra, expected_dims
from .ratpoly import Polynomial, format_poly
from .report import CHECKS, FAIL, MANIFEST_VERSION, OPEN, PASS, RunManifest, VerificationReport, status_of, timed
from .repthy import MultiplicityLedger, graded_harmonic_character, invariant_rank_check, multiplicity_report
from .stabilizers import verify_centralizer_structure, verify_nilpotent_variety, verify_trivial_stabilizer

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ENVELOPE = 0, 1, 2, 3

# largest dim P^d any degree-dependent check will touch
MONOMIAL_CAP = 1000
# family -> largest n per envelope tier
FULL_N = {SU: 2, SO_EVEN: 2, SO_ODD: 2}
GENERATOR_N = {SU: 3, SO_EVEN: 3, SO_ODD: 3}
LIGHT_N = {SU: 4, SO_EVEN: 3, SO_ODD: 3}

DEGREE_CHECKS = (
    "harmonic-direct-sum", "harmonic-hilbert", "invariant-series", "character-paths",
    "multiplicity-bound", "multiplicity-saturation", "invariant-rank",
)
GENERATOR_CHECKS = ("generator-validity", "pfaffian-identities", "nilpotent-variety")
LIGHT_CHECKS = ("dimension-table", "trivial-stabilizer", "centralizer-structure")

ALIASES = {
    "dims": ("dimension-table",),
    "generators": ("generator-validity",),
    "pfaffian": ("pfaffian-identities",),
    "harmonics": ("harmonic-direct-sum", "harmonic-hilbert"),
    "series": ("invariant-series",),
    "characters": ("character-paths",),
    "multiplicities": ("multiplicity-bound", "multiplicity-saturation", "invariant-rank"),
    "stabilizer": ("trivial-stabilizer",),
    "centralizer": ("centralizer-structure",),
    "nilpotent": ("nilpotent-variety",),
}


class EnvelopeError(Exception):
    pass


def resolve_checks(csv: str | None, family: Family) -> list[str]:
    """Expand aliases and keep registry order; drop checks that do not apply to the family."""
    if not csv or csv == "all":
        wanted = set(CHECKS)
        if family.tag != SO_EVEN or not 2 <= family.n <= 7:
            wanted.discard("centralizer-structure")
    else:
        wanted = set()
        for item in (s.strip() for s in csv.split(",")):
            if item in ALIASES:
                wanted.update(ALIASES[item])
            elif item in CHECKS:
                wanted.add(item)
            else:
                raise ValueError(f"unknown check {item!r}")
    if "centralizer-structure" in wanted and (family.tag != SO_EVEN or not 2 <= family.n <= 7):
        raise ValueError("centralizer-structure applies to so-even with 2 <= n <= 7")
    return [c for c in CHECKS if c in wanted]


def max_envelope_degree(family: Family) -> int:
    dim = expected_dims(family)[0]
    d = 0
    while comb(dim + d, d + 1) <= MONOMIAL_CAP:
        d += 1
    return d


def check_envelope(family: Family, checks: Sequence[str], max_degree: int) -> None:
    n, tag = family.n, family.tag
    for c in checks:
        if c in DEGREE_CHECKS:
            if n > FULL_N[tag]:
                raise EnvelopeError(f"{c}: {family} exceeds the full-suite bound n <= {FULL_N[tag]}")
            dim = expected_dims(family)[0]
            size = comb(dim + max_degree - 1, max_degree)
            if size > MONOMIAL_CAP:
                raise EnvelopeError(f"{c}: dim P^{max_degree} = {size} exceeds the cap {MONOMIAL_CAP}")
        elif c in GENERATOR_CHECKS and n > GENERATOR_N[tag]:
            raise EnvelopeError(f"{c}: {family} exceeds the bound n <= {GENERATOR_N[tag]}")
        elif c in LIGHT_CHECKS and c != "centralizer-structure" and n > LIGHT_N[tag]:
            raise EnvelopeError(f"{c}: {family} exceeds the bound n <= {LIGHT_N[tag]}")


# -- individual checks -------------------------------------------------------

def check_dimension_table(family: Family) -> VerificationReport:
    algebra = build_algebra(family)
    want = expected_dims(family)
    keys = ("dim_g", "dim_k", "rank_g", "rank_k")
    return VerificationReport(
        "dimension-table", family.tag, family.n, {},
        dict(zip(keys, want)), dict(zip(keys, algebra.dims)), status_of(algebra.dims == want),
    )


def check_generator_validity(inv: InvariantSet, seed: int) -> VerificationReport:
    algebra = inv.algebra
    fam = algebra.family
    invariant = {g.label: is_invariant(g.poly, algebra) for g in inv.generators}
    rank = jacobian_generic_rank(inv, seed=seed)
    degree_sum = sum(d - 1 for d in inv.degrees)
    ok = all(invariant.values()) and rank == len(inv) and degree_sum == algebra.dim_k
    return VerificationReport(
        "generator-validity", fam.tag, fam.n, {"seed": seed},
        {"jacobian_rank": len(inv), "sum_d_minus_1": algebra.dim_k},
        {"invariant": invariant, "jacobian_rank": rank, "sum_d_minus_1": degree_sum,
         "degrees": list(inv.degrees)},
        status_of(ok),
    )


def generic_skew(size: int) -> list[list[Polynomial]]:
    nv = size * (size - 1) // 2
    m = [[Polynomial.zero(nv) for _ in range(size)] for _ in range(size)]
    k = 0
    for i in range(size):
        for j in range(i + 1, size):
            m[i][j] = Polynomial.variable(k, nv)
            m[j][i] = -m[i][j]
            k += 1
    return m


def check_pfaffian_identities(inv: InvariantSet) -> VerificationReport:
    fam = inv.algebra.family
    generic = {}
    for size in (2, 4, 6):
        m = generic_skew(size)
        pf = pfaffian(m)
        generic[str(size)] = (pf * pf - determinant(m)).is_zero()
    computed: dict = {"pf_squared_is_det": generic}
    expected: dict = {"pf_squared_is_det": {k: True for k in generic}}
    ok = all(generic.values())
    if fam.tag != SU:
        label, c, residual = squared_identity_residual(inv)
        computed["squared_identity"] = {"generator": label, "sign": c, "residual_zero": residual.is_zero()}
        expected["reference_sign"] = reference_sign(inv.algebra)
        ok = ok and residual.is_zero()
    return VerificationReport("pfaffian-identities", fam.tag, fam.n, {}, expected, computed, status_of(ok))


def check_harmonic_hilbert(inv: InvariantSet, max_degree: int) -> VerificationReport:
    fam = inv.algebra.family
    series = list(hilbert_coefficients(inv.degrees, inv.algebra.dim, max_degree).coefficients)
    dims = [harmonic_space(inv, d).dimension for d in range(max_degree + 1)]
    return VerificationReport(
        "harmonic-hilbert", fam.tag, fam.n, {"max_degree": max_degree},
        series, dims, status_of(dims == series),
    )


def check_invariant_series(inv: InvariantSet, max_degree: int) -> VerificationReport:
    fam = inv.algebra.family
    series = invariant_series(inv.degrees, max_degree)
    dims = [invariant_dimension(inv.algebra, d) for d in range(max_degree + 1)]
    return VerificationReport(
        "invariant-series", fam.tag, fam.n, {"max_degree": max_degree},
        series, dims, status_of(dims == series),
    )


def check_character_paths(inv: InvariantSet, max_degree: int) -> VerificationReport:
    fam = inv.algebra.family
    agree = [graded_harmonic_character(inv, d, "kernel") == graded_harmonic_character(inv, d, "series")
             for d in range(max_degree + 1)]
    return VerificationReport(
        "character-paths", fam.tag, fam.n, {"max_degree": max_degree},
        [True] * (max_degree + 1), agree, status_of(all(agree)),
    )


def _weight_str(w) -> str:
    return "(" + ",".join(str(c) for c in w) + ")"


def check_multiplicity_bound(ledger: MultiplicityLedger, family: Family) -> VerificationReport:
    return VerificationReport(
        "multiplicity-bound", family.tag, family.n, {"cutoff": ledger.cutoff},
        {"violations": 0},
        {"violations": len(ledger.violations), "k_types": len(ledger.cumulative),
         "cumulative": {_weight_str(w): [m, d] for w, (m, d) in ledger.cumulative.items()}},
        status_of(not ledger.violations),
    )


def check_multiplicity_saturation(ledger: MultiplicityLedger, family: Family) -> VerificationReport:
    """Pass once every K-type seen so far is saturated; open otherwise (fail only on overshoot)."""
    saturated = {_weight_str(w): d for w, d in ledger.saturated_at.items()}
    pending = [_weight_str(w) for w in ledger.cumulative if w not in ledger.saturated_at]
    if ledger.violations:
        status = FAIL
    else:
        status = PASS if not pending else OPEN
    return VerificationReport(
        "multiplicity-saturation", family.tag, family.n, {"cutoff": ledger.cutoff},
        "m(delta) = dim(delta) for every K-type",
        {"saturated_at_degree": saturated, "unsaturated": pending},
        status,
    )


def check_invariant_rank(ledger: MultiplicityLedger, family: Family) -> VerificationReport:
    """Use V = sum of every saturated K-type, each once."""
    module = [(w, 1) for w in ledger.cumulative if ledger.is_saturated(w)]
    return invariant_rank_check(ledger, module, family.tag, family.n)


def run_checks(family: Family, checks: Sequence[str], max_degree: int, seed: int) -> list[VerificationReport]:
    reports: list[VerificationReport] = []
    algebra = build_algebra(family)
    inv: InvariantSet | None = None
    ledger: MultiplicityLedger | None = None

    def invariants() -> InvariantSet:
        nonlocal inv
        if inv is None:
            inv = generator_polynomials(algebra)
        return inv

    def multiplicities() -> MultiplicityLedger:
        nonlocal ledger
        if ledger is None:
            ledger = multiplicity_report(invariants(), max_degree)
        return ledger

    runners: dict[str, Callable[[], Iterable[VerificationReport]]] = {
        "dimension-table": lambda: [check_dimension_table(family)],
        "generator-validity": lambda: [check_generator_validity(invariants(), seed)],
        "pfaffian-identities": lambda: [check_pfaffian_identities(invariants())],
        "harmonic-direct-sum": lambda: [verify_direct_sum(invariants(), d) for d in range(max_degree + 1)],
        "harmonic-hilbert": lambda: [check_harmonic_hilbert(invariants(), max_degree)],
        "invariant-series": lambda: [check_invariant_series(invariants(), max_degree)],
        "character-paths": lambda: [check_character_paths(invariants(), max_degree)],
        "multiplicity-bound": lambda: [check_multiplicity_bound(multiplicities(), family)],
        "multiplicity-saturation": lambda: [check_multiplicity_saturation(multiplicities(), family)],
        "invariant-rank": lambda: [check_invariant_rank(multiplicities(), family)],
        "trivial-stabilizer": lambda: [verify_trivial_stabilizer(family, seed=seed)],
        "centralizer-structure": lambda: [verify_centralizer_structure(family.n)],
        "nilpotent-variety": lambda: [verify_nilpotent_variety(family, seed=seed)],
    }
    for c in checks:
        with timed(reports):
            reports.extend(runners[c]())
    return reports


# -- commands ----------------------------------------------------------------

def cmd_dims(args: argparse.Namespace) -> int:
    family = Family(args.family, args.n)
    dim_g, dim_k, ell, k = build_algebra(family).dims
    fdeg, phideg = generator_degrees(family)
    print(f"{'family':<10}{'n':>3}{'dim g':>8}{'dim k':>8}{'rank g':>8}{'rank k':>8}")
    print(f"{family.tag:<10}{family.n:>3}{dim_g:>8}{dim_k:>8}{ell:>8}{k:>8}")
    print("degrees f:   " + " ".join(map(str, fdeg)))
    print("degrees phi: " + " ".join(map(str, phideg)))
    return EXIT_OK


def _summary(r: VerificationReport) -> str:
    if r.id == "harmonic-direct-sum":
        c = r.computed
        return f"d={r.params['degree']} P={r.expected['dim_P']} ideal={c['ideal']} H={c['harmonic']}"
    if r.id in ("harmonic-hilbert", "invariant-series"):
        return " ".join(map(str, r.computed))
    if r.id == "multiplicity-saturation":
        return f"saturated={len(r.computed['saturated_at_degree'])} pending={len(r.computed['unsaturated'])}"
    if r.id == "multiplicity-bound":
        return f"k-types={r.computed['k_types']} violations={r.computed['violations']}"
    if r.id == "invariant-rank":
        return f"dim (H (x) V)^K = {r.computed}, dim V = {r.expected}"
    if r.id in ("trivial-stabilizer", "centralizer-structure"):
        return f"centralizer dim {r.computed['centralizer_dim']}"
    if r.id == "nilpotent-variety":
        return f"disagreements={r.computed['disagreements']} of {r.params['samples']}"
    return ""


def cmd_verify(args: argparse.Namespace) -> int:
    family = Family(args.family, args.n)
    try:
        checks = resolve_checks(args.checks, family)
    except ValueError as exc:
        print(f"harmonia: {exc}", file=sys.stderr)
        return EXIT_USAGE
    max_degree = args.max_degree
    if max_degree is None:
        max_degree = min(5, max_envelope_degree(family))
    if max_degree < 0:
        print("harmonia: --max-degree must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        check_envelope(family, checks, max_degree)
    except EnvelopeError as exc:
        if not args.force:
            print(f"harmonia: refusing: {exc} (use --force to override)", file=sys.stderr)
            return EXIT_ENVELOPE
        print(f"harmonia: warning: {exc}; continuing because of --force", file=sys.stderr)

    reports = run_checks(family, checks, max_degree, args.seed)
    manifest = RunManifest(MANIFEST_VERSION, args.seed, reports)
    for r in reports:
        line = f"{r.status.upper():<5} {r.id:<24} {r.family} n={r.n}  {_summary(r)}"
        if args.timings and r.ms is not None:
            line += f"  [{r.ms:.0f} ms]"
        print(line.rstrip())
    counts = {s: sum(r.status == s for r in reports) for s in (PASS, OPEN, FAIL)}
    print(f"{len(reports)} reports: {counts[PASS]} pass, {counts[OPEN]} open, {counts[FAIL]} fail")
    if args.json:
        text = manifest.to_json(timings=args.timings)
        if args.json == "-":
            sys.stdout.write(text)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
    return EXIT_FAIL if manifest.failed else EXIT_OK


def cmd_harmonics(args: argparse.Namespace) -> int:
    family = Family(args.family, args.n)
    d = args.degree
    if d < 0:
        print("harmonia: --degree must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        check_envelope(family, ["harmonic-direct-sum"], d)
    except EnvelopeError as exc:
        if not args.force:
            print(f"harmonia: refusing: {exc} (use --force to override)", file=sys.stderr)
            return EXIT_ENVELOPE
        print(f"harmonia: warning: {exc}; continuing because of --force", file=sys.stderr)
    inv = generator_polynomials(build_algebra(family))
    dim_p = comb(inv.algebra.dim + d - 1, d)
    h = harmonic_space(inv, d)
    coeff = hilbert_coefficients(inv.degrees, inv.algebra.dim, d).coefficients[d]
    print(f"{'degree':>6}{'dim P':>8}{'ideal':>8}{'harmonic':>10}{'hilbert':>9}")
    print(f"{d:>6}{dim_p:>8}{ideal_dimension(inv, d):>8}{h.dimension:>10}{coeff:>9}")
    if args.emit_basis:
        names = [f"c{i}" for i in range(inv.algebra.dim)]
        for i, p in enumerate(h.basis):
            print(f"h{i} = {format_poly(p, names)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmonia", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"harmonia {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--family", required=True, choices=FAMILIES)
        p.add_argument("--n", required=True, type=int)

    p = sub.add_parser("dims", help="dimension table and generator degrees")
    common(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--checks", default=None,
                   help="comma separated check ids or aliases: " + ", ".join(sorted(ALIASES)))
    p.add_argument("--json", default=None, help="write the run manifest here ('-' for stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true", help="run even outside the desk-scale envelope")
    p.add_argument("--timings", action="store_true", help="print and record per-check milliseconds")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("harmonics", help="per-degree harmonic data")
    common(p)
    p.add_argument("--degree", required=True, type=int)
    p.add_argument("--emit-basis", action="store_true")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_harmonics)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        Family(args.family, args.n)
    except ValueError as exc:
        print(f"harmonia: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
