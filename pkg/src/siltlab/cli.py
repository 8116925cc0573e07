"""Command-line entry point.

Every subcommand prints a human-readable summary and writes a JSON report
(sorted keys, no timings) to ``--report``.  Exit codes: 0 when every check
passes, 1 when a check fails, 2 for usage or parse errors, 3 when a
computation hits one of its caps.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .bijections import phi12_rickard, phi21
from .complexes import HomComplex
from .errors import (
    AxiomViolation,
    CapExceeded,
    FiltrationCapExceeded,
    NotAComplex,
    NotAdmissible,
    NotFiniteDimensional,
    ParseError,
    TransportFailed,
    UnknownVertex,
)
from .formats import format_complex, parse_algebra, parse_collection
from .quiver import PathAlgebra, build_algebra
from .silting import (
    SiltingObject,
    format_path,
    mutate,
    parse_path,
    replay,
    same_object,
    silting_certificate,
    silting_quiver,
)
from .smc import SMCollection, smc_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_REPORT = "siltlab-report.json"


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_algebra(source: str) -> PathAlgebra:
    """An algebra file, or the name of a bundled one (lambda0, a2, a3)."""
    if Path(source).exists():
        text = _read(source)
    else:
        bundled = resources.files("siltlab") / "data" / f"{source.lower()}.alg"
        if not bundled.is_file():
            raise UsageError(f"no algebra file or bundled algebra named {source!r}")
        text = bundled.read_text(encoding="utf-8")
    pres, name = parse_algebra(text)
    try:
        return build_algebra(pres, name or Path(source).stem)
    except (NotAdmissible, NotFiniteDimensional, UnknownVertex) as exc:
        raise UsageError(f"{source}: {exc}") from None


def load_complexes(A: PathAlgebra, paths) -> list:
    out = []
    for p in paths:
        try:
            out.extend(parse_collection(_read(p), A))
        except ParseError as exc:
            raise ParseError(f"{p}: {exc}") from None
    return out


def parse_window(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"window must look like a..b, got {text!r}") from None
    if not sep or a > b:
        raise UsageError(f"window must look like a..b with a <= b, got {text!r}")
    return range(a, b + 1)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, report dict)


def cmd_check_algebra(args):
    A = load_algebra(args.file)
    info = A.describe()
    print(f"dim {info['dim']}")
    for length, count in info["basis_count_by_length"].items():
        print(f"  length {length}: {count}")
    print("basis: " + " ".join(info["basis"]))
    return EXIT_OK, {"command": "check-algebra", "algebra": info, "status": "pass"}


def cmd_hom(args):
    A = load_algebra(args.alg)
    window = parse_window(args.window)
    (X,) = _one(load_complexes(A, [args.src]), args.src)
    (Y,) = _one(load_complexes(A, [args.tgt]), args.tgt)
    H = HomComplex(X, Y)
    table = {m: H.dim(m) for m in window}
    width = max(len(str(m)) for m in window)
    print("m".rjust(width) + "  dim Hom(X, Sigma^m Y)")
    for m, d in table.items():
        print(f"{str(m).rjust(width)}  {d}")
    return EXIT_OK, {"command": "hom", "window": [window.start, window.stop - 1], "dims": table, "status": "pass"}


def _one(objs, path):
    if len(objs) != 1:
        raise UsageError(f"{path} must contain exactly one complex, found {len(objs)}")
    return objs


def _silting_from_files(A: PathAlgebra, paths) -> SiltingObject:
    M = SiltingObject(A, tuple(load_complexes(A, paths)), None)
    # the regular object is recognised so that its mutations carry a path
    if same_object(M, SiltingObject.regular(A)):
        M = SiltingObject(A, M.summands, ())
    return M


def cmd_mutate(args):
    A = load_algebra(args.alg)
    M = _silting_from_files(A, args.silting)
    i = args.index - 1
    if not 0 <= i < len(M):
        raise UsageError(f"--index must lie between 1 and {len(M)}")
    N = mutate(M, i, "+" if args.dir == "left" else "-")
    cert = silting_certificate(N)
    for k, X in enumerate(N.summands, 1):
        print(f"# summand {k}")
        print(format_complex(X), end="")
    ok = cert.presilting and cert.summand_count and cert.k0_unimodular
    print(f"certificate: {'pass' if ok else 'fail'} ({cert.provenance})")
    report = {
        "command": "mutate",
        "index": args.index,
        "direction": args.dir,
        "summands": [X.describe() for X in N.summands],
        "path": None if N.provenance is None else format_path(N.provenance),
        "certificate": cert.as_dict(),
        "status": "pass" if ok else "fail",
    }
    return (EXIT_OK if ok else EXIT_FAIL), report


def cmd_quiver(args):
    A = load_algebra(args.alg)
    if args.radius < 0:
        raise UsageError("--radius must be non-negative")
    Q = silting_quiver(SiltingObject.regular(A), args.radius, args.max_nodes)
    if args.dot:
        Path(args.dot).write_text(Q.to_dot(), encoding="utf-8")
    if args.json:
        Path(args.json).write_text(dump_json(Q.as_dict()), encoding="utf-8")
    print(f"{len(Q.nodes)} nodes, {len(Q.edges)} edges within radius {args.radius}")
    return EXIT_OK, {"command": "quiver", "graph": Q.as_dict(), "status": "pass"}


def cmd_smc_of(args):
    A = load_algebra(args.alg)
    try:
        path = parse_path(args.path)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if any(not 0 <= i < A.n for i, _ in path):
        raise UsageError(f"path indices must lie between 1 and {A.n}")
    M = replay(A, path)
    C = phi21(M, verify=True, depth_cap=args.depth_cap)
    cert = smc_check(C)
    for k, X in enumerate(C.projs, 1):
        print(f"# member {k}")
        print(format_complex(X), end="")
    print(f"duality with the silting object: pass; generation: {cert.generation}")
    report = {
        "command": "smc-of",
        "path": format_path(path),
        "silting": [X.describe() for X in M.summands],
        "members": [X.describe() for X in C.projs],
        "certificate": cert.as_dict(),
        "status": "pass",
    }
    return EXIT_OK, report


def cmd_rickard(args):
    A = load_algebra(args.alg)
    C = SMCollection.from_objects(A, load_complexes(A, args.smc))
    try:
        cert = smc_check(C)
    except AxiomViolation as exc:
        print(f"not a simple-minded collection: {exc}")
        return EXIT_FAIL, {
            "command": "rickard",
            "status": "fail",
            "checks": [{"name": "smc axioms", "status": "fail", "witness": list(exc.witness)}],
        }
    res = phi12_rickard(C, cap=args.cap, coresolution_cap=args.cap, report=True)
    for k, X in enumerate(res.silting.summands, 1):
        print(f"# summand {k} (after {res.stages[k - 1]} stages)")
        print(format_complex(X), end="")
    print("Hom-duality: " + ("pass" if res.ok else f"fail {res.defects}"))
    report = {
        "command": "rickard",
        "smc_certificate": cert.as_dict(),
        "summands": [X.describe() for X in res.silting.summands],
        "stages": res.stages,
        "defects": [list(d) for d in res.defects],
        "status": "pass" if res.ok else "fail",
    }
    return (EXIT_OK if res.ok else EXIT_FAIL), report


def cmd_verify_suite(args):
    from .suite import run_suite

    results = run_suite()
    for r in results:
        print(r.line())
    ok = all(r.ok for r in results)
    print(f"{sum(r.ok for r in results)}/{len(results)} criteria pass")
    return (EXIT_OK if ok else EXIT_FAIL), {
        "command": "verify-example7",
        "criteria": [r.as_dict() for r in results],
        "status": "pass" if ok else "fail",
    }


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", default=DEFAULT_REPORT, help="where to write the JSON report ('-' for stdout)")
    p = argparse.ArgumentParser(
        prog="siltlab",
        description="Exact computations with silting objects and simple-minded collections.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("check-algebra", help="build an algebra and print its basis")
    s.add_argument("file")
    s.set_defaults(func=cmd_check_algebra)

    s = sub.add_parser("hom", help="graded Hom dimensions between two complexes")
    s.add_argument("--alg", required=True)
    s.add_argument("--src", required=True)
    s.add_argument("--tgt", required=True)
    s.add_argument("--window", default="-8..8")
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("mutate", help="mutate a silting object at one summand")
    s.add_argument("--alg", required=True)
    s.add_argument("--silting", nargs="+", required=True, metavar="CPX")
    s.add_argument("--index", type=int, required=True, help="1-based summand index")
    s.add_argument("--dir", choices=["left", "right"], default="left")
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("quiver", help="explore the silting quiver around the regular object")
    s.add_argument("--alg", required=True)
    s.add_argument("--radius", type=int, default=2)
    s.add_argument("--max-nodes", type=int, default=10_000)
    s.add_argument("--dot")
    s.add_argument("--json")
    s.set_defaults(func=cmd_quiver)

    s = sub.add_parser("smc-of", help="simple-minded collection of the silting object at the end of a path")
    s.add_argument("--alg", required=True)
    s.add_argument("--path", required=True, help='mutation path such as "1+,2-"')
    s.add_argument("--depth-cap", type=int, default=4)
    s.set_defaults(func=cmd_smc_of)

    s = sub.add_parser("rickard", help="silting object of a simple-minded collection")
    s.add_argument("--alg", required=True)
    s.add_argument("--smc", nargs="+", required=True, metavar="FILE")
    s.add_argument("--cap", type=int, default=32)
    s.set_defaults(func=cmd_rickard)

    s = sub.add_parser("verify-example7", help="run the acceptance suite on the two-vertex example")
    s.set_defaults(func=cmd_verify_suite)
    return p


def _write_report(target: str, report: dict) -> None:
    text = dump_json(report)
    if target == "-":
        sys.stdout.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def _glue_negative_values(argv: list) -> list:
    # "--window -5..5" would otherwise be read as two flags
    out = []
    it = iter(argv)
    for a in it:
        if a in ("--window", "--path"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def _report_target(argv: list) -> str:
    for k, a in enumerate(argv):
        if a == "--report" and k + 1 < len(argv):
            return argv[k + 1]
        if a.startswith("--report="):
            return a.split("=", 1)[1]
    return DEFAULT_REPORT


def main(argv=None) -> int:
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return EXIT_OK
        report = {"command": None, "status": "error", "error": "usage", "exit_code": EXIT_USAGE}
        _write_report(_report_target(argv), report)
        return EXIT_USAGE
    try:
        code, report = args.func(args)
    except (UsageError, ParseError, NotAComplex) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code, report = EXIT_USAGE, {"command": args.command, "status": "error", "error": str(exc)}
    except (CapExceeded, FiltrationCapExceeded) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        code, report = EXIT_CAP, {"command": args.command, "status": "cap exceeded", "error": str(exc)}
    except TransportFailed as exc:
        cap = isinstance(exc.__cause__, FiltrationCapExceeded)
        print(f"{'cap exceeded' if cap else 'check failed'}: {exc}", file=sys.stderr)
        code = EXIT_CAP if cap else EXIT_FAIL
        report = {"command": args.command, "status": "cap exceeded" if cap else "fail", "error": str(exc)}
    report["exit_code"] = code
    _write_report(args.report, report)
    return code


if __name__ == "__main__":
    sys.exit(main())
