"""Command-line front end.

Exit codes: 0 success, 1 a property or validation failed, 2 bad usage or input.
Reports are JSON on stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Optional

from .checks import SUITES, run_suite
from .complexes import (
    NComplex,
    NotAnNComplexError,
    Sequence,
    _union,
    is_ncomplex,
    power_differential,
    validate_ncomplex,
)
from .groups import describe_invariants
from .homology import (
    HomologyQuery,
    TotalHomologyError,
    homology,
    homology_induced,
    inclusion_lattice,
    total_homology,
)
from .io import (
    ParseError,
    declared_n,
    dump_complex,
    load_complex,
    parse_group_spec,
    read_json,
    read_morphism,
    write_json,
)
from .resolutions import hh_projective_resolution, is_projective, verify_lower_bound

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fixture_path(name: str) -> Path:
    """Path of a bundled fixture, e.g. ``fixture_path("z8_times2.json")``."""
    return Path(str(resources.files("ncomplex") / "fixtures" / name))


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _group_json(G) -> dict:
    rank, factors = G.invariants
    return {"free_rank": rank, "invariant_factors": list(factors),
            "group": describe_invariants(rank, factors)}


def _load(path: str, n: Optional[int]) -> tuple[Sequence, Optional[int]]:
    data = read_json(path)
    C = load_complex(data, str(path), certify=False)
    return C, n if n is not None else declared_n(data)


def _certified(path: str, n: Optional[int]) -> NComplex:
    C, N = _load(path, n)
    if N is None:
        raise UsageError(f"{path}: no N given; pass --n or declare \"n\" in the file")
    return validate_ncomplex(C, N)


def _describe_failure(C: Sequence, N: int, i: int) -> str:
    d = power_differential(C, i, N)
    M = d.matrix
    shown = f"x{M[0, 0]}" if M.shape == (1, 1) else str(M.tolist())
    return f"d^{N} = {shown} != 0 at position {i} (C_{i} -> C_{i + N})"


# -- commands ---------------------------------------------------------------------

def cmd_validate(args) -> int:
    C, N = _load(args.file, args.n)
    if N is None:
        raise UsageError("validate needs --n (or a declared \"n\" in the file)")
    if N < 1:
        raise UsageError("--n must be at least 1")
    bad = is_ncomplex(C, N)
    report = {"file": args.file, "n": N, "window": {"lo": C.lo, "hi": C.hi},
              "valid": bad is None, "first_failure": bad}
    if bad is not None:
        report["message"] = _describe_failure(C, N, bad)
    _emit(report)
    return EXIT_OK if bad is None else EXIT_FAIL


def cmd_homology(args) -> int:
    if args.a < 1 or args.b < 1:
        raise UsageError("--a and --b must be positive")
    C, N = _load(args.file, args.n)
    explicit = N is not None
    N = N if explicit else args.a + args.b
    try:
        C = validate_ncomplex(C, N)
        form = "kapranov" if args.a + args.b >= N else "generalized"
    except NotAnNComplexError:
        if explicit:
            raise
        form, N = "generalized", None
    positions = C.positions if args.all else [args.pos]
    rows = []
    for j in positions:
        value = homology(C, HomologyQuery(args.a, args.b, j))
        rows.append({"position": j, **_group_json(value.group), "interior": value.interior})
    _emit({"file": args.file, "a": args.a, "b": args.b, "n": N, "form": form, "positions": rows})
    return EXIT_OK


def cmd_total(args) -> int:
    C = _certified(args.file, args.n)
    if C.n < 2:
        raise UsageError("total homology needs N >= 2")
    T = total_homology(C, interior=not args.all_positions)
    rows = []
    for entry, n in zip(T.summary(), T.complex.positions):
        G = T.complex.obj(n)
        rows.append({"n": n, "group": describe_invariants(*G.invariants), **{
            k: entry[k] for k in ("free_rank", "invariant_factors", "components")}})
    _emit({"file": args.file, "n": C.n, "total_n": C.n - 1, "interior_only": not args.all_positions,
           "certified": True, "positions": rows})
    return EXIT_OK


def cmd_lattice(args) -> int:
    C = _certified(args.file, args.n)
    if C.n < 2:
        raise UsageError("the inclusion poset needs N >= 2")
    report = inclusion_lattice(C, args.pos)
    if not report.interior and not args.force:
        raise UsageError(f"position {args.pos} is not interior for (N-1, N-1); pass --force to draw it anyway")
    dot = report.to_dot()
    if args.dot:
        Path(args.dot).write_text(dot)
        inv = report.invariants
        _emit({"file": args.file, "position": args.pos, "n": C.n, "interior": report.interior,
               "nodes": {k: {"free_rank": v[0], "invariant_factors": list(v[1])} for k, v in inv.items()},
               "edges": [{"lower": lo, "upper": up, "holds": ok} for lo, up, ok in report.edges],
               "equal": [list(p) for p in report.equal_nodes()], "dot": args.dot})
    else:
        sys.stdout.write(dot)
    return EXIT_OK if report.all_hold else EXIT_FAIL


def cmd_resolve(args) -> int:
    if args.a < 1 or args.b < 1:
        raise UsageError("--a and --b must be positive")
    X = parse_group_spec(args.group)
    rep = hh_projective_resolution(X, args.a, args.b)
    out = rep.to_dict()
    applies = not is_projective(X)
    holds = verify_lower_bound(rep, args.a, args.b) if applies else None
    out["lower_bound"] = {"applies": applies, "power": args.a + args.b - 1, "d_power_nonzero": holds}
    if args.out:
        write_json(dump_complex(rep.resolution), args.out)
        _emit({"report": out, "complex_file": args.out})
    else:
        _emit({"report": out, "complex": dump_complex(rep.resolution)})
    return EXIT_OK if rep.ok and holds is not False else EXIT_FAIL


def cmd_qis(args) -> int:
    if args.a < 1 or args.b < 1:
        raise UsageError("--a and --b must be positive")
    f = read_morphism(args.file)
    lo, hi = _union(f.source, f.target)
    positions = list(range(lo, hi + 1))
    if args.interior_only:
        positions = [j for j in positions if lo <= j - args.b and j + args.a <= hi]
    rows, ok = [], True
    for j in positions:
        q = HomologyQuery(args.a, args.b, j)
        iso = homology_induced(f, q).is_isomorphism()
        ok &= iso
        rows.append({"position": j, "isomorphism": iso,
                     "source": describe_invariants(*homology(f.source, q).invariants),
                     "target": describe_invariants(*homology(f.target, q).invariants)})
    _emit({"file": args.file, "a": args.a, "b": args.b, "positions": rows, "quasi_isomorphism": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check(args) -> int:
    if args.cases < 0:
        raise UsageError("--cases must be non-negative")
    result = run_suite(args.suite, args.seed, args.cases, args.case)
    summary = result.to_dict()
    files = []
    outdir = Path(args.counterexample_dir)
    for fail in result.failures:
        outdir.mkdir(parents=True, exist_ok=True)
        path = outdir / f"counterexample-{args.suite}-{args.seed}-{fail.case}.json"
        write_json({"suite": args.suite, "seed": args.seed, "case": fail.case,
                    "replay": f"ncomplex check --suite {args.suite} --seed {args.seed} --case {fail.case}",
                    "failures": fail.messages, "instance": fail.instance}, path)
        files.append(str(path))
        print(f"case {fail.case} failed: {'; '.join(fail.messages[:3])} -> {path}", file=sys.stderr)
    summary["counterexamples"] = files
    _emit(summary)
    return EXIT_OK if result.ok else EXIT_FAIL


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncomplex",
                                description="Exact homology of N-complexes of finitely generated abelian groups.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check d^N = 0")
    s.add_argument("file")
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("homology", help="(a, b) homology per position")
    s.add_argument("file")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--n", type=int, help="certify as an N-complex (default: declared n, else a + b)")
    where = s.add_mutually_exclusive_group(required=True)
    where.add_argument("--pos", type=int)
    where.add_argument("--all", action="store_true")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("total", help="total Kapranov homology, an (N-1)-complex")
    s.add_argument("file")
    s.add_argument("--n", type=int)
    s.add_argument("--all-positions", action="store_true",
                   help="sum over every window position, not only interior ones")
    s.set_defaults(func=cmd_total)

    s = sub.add_parser("lattice", help="the ker d^k / im d^k inclusion poset as DOT")
    s.add_argument("file")
    s.add_argument("--pos", type=int, required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--dot", help="write DOT here and print a JSON report instead")
    s.add_argument("--force", action="store_true", help="allow non-interior positions")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("resolve", help="(a, b)-projective resolution of a group at degree 0")
    s.add_argument("--group", required=True, help='"f1,f2,...;rank", e.g. "6" or "2,4;1" or ";2"')
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--out", help="write the resolution as a complex file")
    s.set_defaults(func=cmd_resolve)

    s = sub.add_parser("qis", help="is a morphism an H^(a,b) quasi-isomorphism?")
    s.add_argument("file")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--interior-only", action="store_true",
                   help="only positions interior to the union window (default: all of it)")
    s.set_defaults(func=cmd_qis)

    s = sub.add_parser("check", help="run a seeded property suite")
    s.add_argument("--suite", required=True, choices=list(SUITES))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=100)
    s.add_argument("--case", type=int, help="replay a single case")
    s.add_argument("--counterexample-dir", default=".")
    s.set_defaults(func=cmd_check)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    except (NotAnNComplexError, TotalHomologyError) as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
