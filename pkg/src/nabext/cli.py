"""Command-line driver.

Exit codes: 0 success / check passed, 1 check failed (witness JSON on
stdout), 2 input or usage error (message on stderr), 3 internal consistency
failure (must never happen; it would mean the cocycle equations and the
Maurer-Cartan test disagreed on one input).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from .algebra import Algebra, direct_sum_space
from .classify import (
    BudgetExceededError,
    CandidateSpace,
    ClassificationReport,
    census,
    enumerate_cocycles,
    enumerate_extensions,
)
from .cochains import gerstenhaber_bracket, hochschild_delta
from .exact_sequences import (
    BrokenExtensionError,
    canonical_section,
    check_extension_equivalence,
    cocycle_from_section,
    resolved,
    verify_extension,
)
from .fields import Field, FieldError, PrimeField, Rationals
from .io_json import (
    FormatError,
    algebra_from_json,
    algebra_to_json,
    cocycle_from_json,
    cocycle_to_json,
    dumps_canonical,
    extension_from_json,
    field_to_json,
    gauge_from_json,
    loads,
    map_from_json,
    map_to_json,
    report_to_json,
    report_to_text,
    section_from_json,
)
from .nonabelian import (
    CrossCheckError,
    abelian_specialize,
    apply_equivalence,
    associator_residual,
    build_extension,
    check_cocycle,
    cocycle_from_mc,
    derivation_condition_defect,
    gauge_series,
    is_mc,
    mc_context,
)


def _read(path: str):
    try:
        return loads(Path(path).read_text())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, output: Optional[str]):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_field(text: str) -> Field:
    if text == "Q":
        return Rationals()
    if text.startswith("F"):
        try:
            return PrimeField(int(text[1:]))
        except (ValueError, FieldError) as exc:
            raise FormatError(f"bad field flag {text!r}: {exc}") from exc
    raise FormatError(f"field flag must be Q or F<p>, got {text!r}")


def _violations_json(violations, field: Field):
    return [
        {
            "which": v.which.value,
            "witness": list(v.witness),
            "discrepancy": [field.format(x) for x in v.discrepancy],
            "detail": v.detail,
        }
        for v in violations
    ]


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def _cmd_check_assoc(args) -> int:
    alg = algebra_from_json(_read(args.algebra))
    witness = alg.associativity_witness()
    if witness is None:
        _emit(dumps_canonical({"associative": True}), args.output)
        return 0
    assoc = alg.associator(*(alg.basis_vector(i) for i in witness))
    _emit(
        dumps_canonical(
            {
                "associative": False,
                "witness": list(witness),
                "associator": [alg.field.format(v) for v in assoc],
            }
        ),
        args.output,
    )
    return 1


def _cmd_hochschild_delta(args) -> int:
    alg = algebra_from_json(_read(args.algebra))
    m, split = map_from_json(_read(args.map), alg.field)
    result = hochschild_delta(m, alg)
    _emit(dumps_canonical(map_to_json(result, split)), args.output)
    return 0


def _cmd_bracket(args) -> int:
    field = _parse_field(args.field)
    f, split = map_from_json(_read(args.left), field)
    g, _ = map_from_json(_read(args.right), field)
    result = gerstenhaber_bracket(f, g)
    _emit(dumps_canonical(map_to_json(result, split)), args.output)
    return 0


def _cmd_mc_check(args) -> int:
    c = cocycle_from_json(_read(args.cocycle))
    try:
        violations = check_cocycle(c)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    x, base, split = mc_context(c)
    valid = not violations
    mc_valid = associator_residual(x, base, split).is_zero()
    payload = {
        "cocycle_valid": valid,
        "mc_valid": mc_valid,
        "dgla_residual_zero": is_mc(x, base, split),
        "derivation_condition": derivation_condition_defect(c) is None,
        "violations": _violations_json(violations, c.A.field),
    }
    _emit(dumps_canonical(payload), args.output)
    if valid != mc_valid:
        print("internal inconsistency: cocycle and Maurer-Cartan verdicts disagree", file=sys.stderr)
        return 3
    return 0 if valid else 1


def _cmd_build_extension(args) -> int:
    c = cocycle_from_json(_read(args.cocycle))
    ext, split = build_extension(c)
    doc = algebra_to_json(ext)
    doc["split"] = {"a_dim": split.a_dim, "b_dim": split.b_dim}
    _emit(dumps_canonical(doc), args.output)
    return 0


def _cmd_extract_cocycle(args) -> int:
    ext = extension_from_json(_read(args.extension))
    try:
        ext = resolved(ext)
    except BrokenExtensionError as exc:
        _emit(dumps_canonical({"ok": False, "failures": [str(exc)]}), args.output)
        return 1
    diag = verify_extension(ext)
    if not diag.ok:
        _emit(dumps_canonical({"ok": False, "failures": diag.failures}), args.output)
        return 1
    if args.section:
        section = section_from_json(
            _read(args.section), ext.E.field, ext.E.dim, ext.b_dim
        )
    else:
        section = canonical_section(ext)
    try:
        c = cocycle_from_section(ext, section)
    except (BrokenExtensionError, ValueError) as exc:
        raise FormatError(str(exc)) from exc
    _emit(dumps_canonical(cocycle_to_json(c)), args.output)
    return 0


def _cmd_gauge(args) -> int:
    c = cocycle_from_json(_read(args.cocycle))
    beta = gauge_from_json(_read(args.witness), c.A.field, c.A.dim, c.B.dim)
    if args.method == "series":
        x, base, split = mc_context(c)
        try:
            y = gauge_series(x, beta, base, split)
        except FieldError as exc:
            raise FormatError(str(exc)) from exc
        result = cocycle_from_mc(y, c.A, c.B)
    else:
        result = apply_equivalence(c, beta)
    _emit(dumps_canonical(cocycle_to_json(result)), args.output)
    return 0


def _cmd_equiv_check(args) -> int:
    if args.kind == "cocycle":
        c1 = cocycle_from_json(_read(args.first))
        c2 = cocycle_from_json(_read(args.second))
        beta = gauge_from_json(_read(args.witness), c1.A.field, c1.A.dim, c1.B.dim)
        image = apply_equivalence(c1, beta)
        ok = image == c2
        _emit(dumps_canonical({"equivalent": ok}), args.output)
        return 0 if ok else 1
    ext1 = resolved(extension_from_json(_read(args.first)))
    ext2 = resolved(extension_from_json(_read(args.second)))
    doc = _read(args.witness)
    if not isinstance(doc, dict) or "theta" not in doc:
        raise FormatError("extension witness file must carry a 'theta' matrix")
    from .io_json import _matrix_from_entries

    theta = _matrix_from_entries(
        doc["theta"], ext1.E.field, ext2.E.dim, ext1.E.dim, "theta"
    )
    ok, failures = check_extension_equivalence(ext1, ext2, theta)
    _emit(dumps_canonical({"equivalent": ok, "failures": failures}), args.output)
    return 0 if ok else 1


def _line_algebra(field: Field, name: str, square: str) -> Algebra:
    if square == "zero":
        return Algebra.zero_product(field, [name])
    if square == "idem":
        return Algebra.from_products(field, [name], {(0, 0): {0: 1}})
    raise FormatError(f"square spec must be 'zero' or 'idem', got {square!r}")


def _census_space(args) -> CandidateSpace:
    field = _parse_field(args.field)
    if args.A or args.B:
        if not (args.A and args.B):
            raise FormatError("census needs both --A and --B when files are used")
        a = algebra_from_json(_read(args.A))
        b = algebra_from_json(_read(args.B))
    else:
        if args.dimA != 1 or args.dimB != 1:
            raise FormatError(
                "shorthand census supports --dimA 1 --dimB 1 only; pass --A/--B files for larger dims"
            )
        if not isinstance(field, PrimeField):
            raise FormatError("census runs over prime fields; pass --field F<p>")
        a = _line_algebra(field, "a", args.a2)
        b = _line_algebra(field, "b", args.b2)
    try:
        return CandidateSpace(a, b, budget=args.budget)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _sampled_report(space: CandidateSpace, args) -> ClassificationReport:
    indices = space.sample_indices(args.sample, args.seed)
    cocycles = enumerate_cocycles(space, indices=indices, jobs=args.jobs)
    extensions = enumerate_extensions(space, indices=indices, jobs=args.jobs)
    if [i for i, _ in cocycles] != [i for i, _ in extensions]:
        raise CrossCheckError("sampled cocycle/extension verdicts disagree")
    base, split = direct_sum_space(space.A, space.B)
    from .nonabelian import cocycle_to_mc

    for i, c in cocycles:
        if not associator_residual(cocycle_to_mc(c), base, split).is_zero():
            raise CrossCheckError(f"sampled cocycle {i} fails the Maurer-Cartan equation")
    return ClassificationReport(
        p=space.p,
        a_dim=space.A.dim,
        b_dim=space.B.dim,
        num_candidates=space.total_candidates,
        num_cocycles=len(cocycles),
        cocycle_indices=tuple(i for i, _ in cocycles),
        num_extensions=len(extensions),
        orbits=[],
        checks={
            "sampled": True,
            "counts_match": True,
            "cocycles_satisfy_mc": True,
        },
    )


def _cmd_census(args) -> int:
    space = _census_space(args)
    if args.sample:
        report = _sampled_report(space, args)
    else:
        report = census(space, jobs=args.jobs)
    if args.format == "text":
        _emit(report_to_text(report), args.output)
    else:
        _emit(dumps_canonical(report_to_json(report, space.A.field)), args.output)
    return 0


def _cmd_abelianize(args) -> int:
    c = cocycle_from_json(_read(args.cocycle))
    if not c.A.has_zero_product():
        raise FormatError("abelianize requires a kernel algebra with zero product")
    violations = check_cocycle(c)
    if violations:
        _emit(
            dumps_canonical(
                {"ok": False, "violations": _violations_json(violations, c.A.field)}
            ),
            args.output,
        )
        return 1
    structure = abelian_specialize(c)
    field = c.A.field

    def entries(m):
        return [[*e[:-1], field.format(e[-1])] for e in m.entries()]

    payload = {
        "ok": True,
        "field": field_to_json(field),
        "left_action": entries(structure.left_action),
        "right_action": entries(structure.right_action),
        "cocycle": entries(structure.cocycle),
        "delta_chi_zero": True,
    }
    _emit(dumps_canonical(payload), args.output)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nabext",
        description="Exact computations with non-abelian extensions of associative algebras.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p):
        p.add_argument("--output", help="write the result document here instead of stdout")

    p = sub.add_parser("check-assoc", help="check associativity of an algebra file")
    p.add_argument("algebra")
    add_common(p)
    p.set_defaults(handler=_cmd_check_assoc)

    p = sub.add_parser("hochschild-delta", help="differential of a cochain file")
    p.add_argument("map")
    p.add_argument("algebra")
    add_common(p)
    p.set_defaults(handler=_cmd_hochschild_delta)

    p = sub.add_parser("bracket", help="Gerstenhaber bracket of two cochain files")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--field", default="Q", help="coefficient field: Q or F<p>")
    add_common(p)
    p.set_defaults(handler=_cmd_bracket)

    p = sub.add_parser("mc-check", help="cocycle equations and Maurer-Cartan test")
    p.add_argument("cocycle")
    add_common(p)
    p.set_defaults(handler=_cmd_mc_check)

    p = sub.add_parser("build-extension", help="twisted product algebra of a cocycle")
    p.add_argument("cocycle")
    add_common(p)
    p.set_defaults(handler=_cmd_build_extension)

    p = sub.add_parser("extract-cocycle", help="cocycle of an extension and a section")
    p.add_argument("extension")
    p.add_argument("--section", help="section file; canonical when omitted")
    add_common(p)
    p.set_defaults(handler=_cmd_extract_cocycle)

    p = sub.add_parser("gauge", help="apply a gauge parameter to a cocycle")
    p.add_argument("cocycle")
    p.add_argument("witness")
    p.add_argument("--method", choices=("closed", "series"), default="closed")
    add_common(p)
    p.set_defaults(handler=_cmd_gauge)

    p = sub.add_parser("equiv-check", help="verify an equivalence witness")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--witness", required=True)
    p.add_argument("--kind", choices=("cocycle", "extension"), default="cocycle")
    add_common(p)
    p.set_defaults(handler=_cmd_equiv_check)

    p = sub.add_parser("census", help="enumerate, classify, and cross-check")
    p.add_argument("--A", help="kernel algebra file")
    p.add_argument("--B", help="quotient algebra file")
    p.add_argument("--field", default="F2")
    p.add_argument("--dimA", type=int, default=1)
    p.add_argument("--dimB", type=int, default=1)
    p.add_argument("--a2", default="zero", help="kernel generator square: zero|idem")
    p.add_argument("--b2", default="idem", help="quotient generator square: zero|idem")
    p.add_argument("--budget", type=int, default=2 ** 24)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--sample", type=int, default=0, help="sample this many candidates instead of sweeping")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "text"), default="json")
    add_common(p)
    p.set_defaults(handler=_cmd_census)

    p = sub.add_parser("abelianize", help="specialize a zero-kernel-product cocycle")
    p.add_argument("cocycle")
    add_common(p)
    p.set_defaults(handler=_cmd_abelianize)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (FormatError, BudgetExceededError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CrossCheckError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
