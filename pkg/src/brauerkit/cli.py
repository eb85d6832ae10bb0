"""Command line interface.

Exit codes: 0 success, 1 invalid input, 2 internal consistency failure,
3 a scenario claim disagrees with its reference value. Errors are printed to
stderr as a JSON object.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import BrauerKitError, ConsistencyError, Indeterminate, InvalidInput

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY, EXIT_MISMATCH = 0, 1, 2, 3

_NAMED_MODULES = ("Z", "Z-", "Z/2", "Z[C2]")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc


def _range(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(":"))
    except ValueError as exc:
        raise InvalidInput(f"range must look like a:b, got {text!r}") from exc
    if a > b:
        raise InvalidInput(f"empty range {text!r}")
    return a, b


def cmd_azumaya(args) -> int:
    from .azumaya import hochschild, is_azumaya, morita_reduce_field
    from .graded import GradedAlgebra

    a = GradedAlgebra.loads(_read(args.descriptor))
    out = {"ring": a.coeff.tag, "rank": a.rank, "degrees": list(a.degrees),
           "azumaya": is_azumaya(a)}
    if out["azumaya"] and a.coeff.is_field:
        _, inv = morita_reduce_field(a)
        out["invariants"] = {"type": inv.type_bit, "quadratic": list(inv.quad_class.h),
                             "quadratic_label": inv.quad_class.label, "brauer": inv.brauer_class}
    if args.hochschild is not None:
        out["hochschild"] = [str(g) for g in hochschild(a, s_max=args.hochschild)]
    _emit(out)
    return EXIT_OK


def cmd_bw(args) -> int:
    from .brauerwall import bw_group, generator_algebras_verified, summary_table

    if args.table:
        _emit({"schema_version": 1, "table": summary_table()})
        return EXIT_OK
    if not args.ring:
        raise InvalidInput("give a ring profile (z, z_inv2, fq:<p>, henselian:<p>) or --table")
    out = []
    for name in args.ring:
        g = bw_group(name)
        row = g.to_json()
        row["azumaya"] = dict(generator_algebras_verified(g))
        out.append(row)
    _emit({"schema_version": 1, "groups": out})
    return EXIT_OK


def _module(spec: str):
    from .c2coh import C2Module

    if spec == "Z":
        return C2Module.trivial()
    if spec == "Z-":
        return C2Module.sign()
    if spec == "Z/2":
        return C2Module.trivial(2)
    if spec == "Z[C2]":
        return C2Module.regular()
    try:
        data = json.loads(_read(spec))
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{spec} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidInput("module file must hold a JSON object")
    return C2Module.from_json(data)


def cmd_cohomology(args) -> int:
    from .c2coh import cohomology

    m = _module(args.module)
    lo, hi = _range(args.range)
    if lo < 0:
        raise InvalidInput("cohomological degrees start at 0")
    _emit({"module": m.name or args.module,
           "cohomology": [{"s": s, "group": cohomology(m, s).to_json()} for s in range(lo, hi + 1)]})
    return EXIT_OK


def _transcription(args):
    from .transcription import from_text

    if getattr(args, "data", None):
        return from_text(_read(args.data), Path(args.data).stem)
    return None


def _build(name: str, tr):
    from . import scenarios

    if name == "pic-ku":
        e2, tr = scenarios.build_pic_ku(tr)
        return e2, tr
    if name == "baut-m2ku":
        e2, tr, _ = scenarios.build_baut(tr)
        return e2, tr
    raise InvalidInput(f"no spectral sequence for {name!r}; choose pic-ku or baut-m2ku")


def cmd_hfpss(args) -> int:
    from .charts import render
    from .specseq import Window, pages, restrict

    e2, tr = _build(args.scenario, _transcription(args))
    clip = tr.clip
    if args.window:
        a, b = _range(args.window)
        window = Window(a, b, clip.s_max, clip.s_min)
    else:
        window = clip
    seq = pages(e2, args.pages)
    shown = [restrict(p, window) for p in seq]
    if args.svg:
        Path(args.svg).write_text(render(shown[-1], "svg", window))
    if args.ascii:
        sys.stdout.write(render(shown[-1], "ascii", window))
        return EXIT_OK
    _emit({"schema_version": 1, "scenario": args.scenario, "window": window.to_json(),
           "pages": [p.to_json() for p in shown]})
    return EXIT_OK


def cmd_chart(args) -> int:
    from .charts import render
    from .specseq import pages, restrict

    e2, tr = _build(args.scenario, _transcription(args))
    p = restrict(pages(e2, args.page)[-1], tr.clip)
    doc = render(p, args.format, tr.clip)
    if args.output:
        Path(args.output).write_text(doc)
    else:
        sys.stdout.write(doc)
    return EXIT_OK


def cmd_scenario(args) -> int:
    from . import scenarios

    name = args.name
    if name not in scenarios.SCENARIOS:
        raise InvalidInput(f"unknown scenario {name!r}; choose from {', '.join(scenarios.SCENARIOS)}")
    if name == "bw-table":
        rep = scenarios.scenario_bw_table(args.rings or scenarios.DEFAULT_RINGS)
    elif name in ("pic-ku", "baut-m2ku"):
        fn = scenarios.SCENARIOS[name]
        rep = fn(_transcription(args))
    else:
        rep = scenarios.SCENARIOS[name]()
    out = rep.to_json()
    if not args.details:
        out.pop("details", None)
    _emit(out)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="brauerkit", description="Graded Brauer groups and descent spectral sequences.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("azumaya", help="test an algebra descriptor for the Azumaya property")
    a.add_argument("descriptor", help="path to a JSON algebra descriptor")
    a.add_argument("--hochschild", type=int, metavar="S", help="also compute HH^0..HH^S (fields only)")
    a.set_defaults(func=cmd_azumaya)

    b = sub.add_parser("bw", help="Brauer-Wall groups of ring profiles")
    b.add_argument("ring", nargs="*", help="z, z_inv2, fq:<p> or henselian:<p>")
    b.add_argument("--table", action="store_true", help="print the summary table")
    b.set_defaults(func=cmd_bw)

    c = sub.add_parser("cohomology", help="cohomology of C2 with coefficients in a module")
    c.add_argument("module", help=f"one of {', '.join(_NAMED_MODULES)} or a module JSON file")
    c.add_argument("--range", default="0:4", help="degrees a:b (default 0:4)")
    c.set_defaults(func=cmd_cohomology)

    h = sub.add_parser("hfpss", help="pages of a scenario spectral sequence")
    h.add_argument("scenario", help="pic-ku or baut-m2ku")
    h.add_argument("--window", help="t - s range a:b inside the chart window; write --window=-2:2 for negative a")
    h.add_argument("--pages", type=int, default=3, help="last page to compute (default 3)")
    h.add_argument("--data", help="alternative transcription file")
    h.add_argument("--svg", metavar="PATH", help="write an SVG chart of the last page")
    h.add_argument("--ascii", action="store_true", help="print an ASCII chart instead of JSON")
    h.set_defaults(func=cmd_hfpss)

    s = sub.add_parser("scenario", help="run a scenario and report its claims")
    s.add_argument("name", help="pic-ku, baut-m2ku, relative-brauer or bw-table")
    s.add_argument("--rings", nargs="*", help="profiles for bw-table")
    s.add_argument("--data", help="alternative transcription file")
    s.add_argument("--details", action="store_true", help="include page data in the report")
    s.set_defaults(func=cmd_scenario)

    ch = sub.add_parser("chart", help="render a scenario chart")
    ch.add_argument("scenario", help="pic-ku or baut-m2ku")
    ch.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    ch.add_argument("--page", type=int, default=2)
    ch.add_argument("--data", help="alternative transcription file")
    ch.add_argument("-o", "--output", help="write to a file instead of stdout")
    ch.set_defaults(func=cmd_chart)
    return p


def _error(exc: BaseException, code: int) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc),
                                 "exit_code": code}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "pages", 2) < 2 or getattr(args, "page", 2) < 2:
        return _error(InvalidInput("pages start at E_2"), EXIT_INPUT)
    try:
        return args.func(args)
    except ConsistencyError as exc:
        return _error(exc, EXIT_CONSISTENCY)
    except (InvalidInput, Indeterminate) as exc:
        return _error(exc, EXIT_INPUT)
    except BrauerKitError as exc:
        return _error(exc, EXIT_CONSISTENCY)


if __name__ == "__main__":
    sys.exit(main())
