"""Command-line front end.

    hurwitz orbits -n 5 -r 4 -c 3^4 --eq inner --expect one
    hurwitz spin "(1 2 3)(1 3 4)(1 4 2)"
    hurwitz shinc -n 4 -c "+3^2 -3^2" --fixture-labels --format text
    hurwitz theta-hyp --r 8
    hurwitz verify thmB --n 5 --rmax 7

Exit codes: 0 ok, 1 usage or parse error, 2 budget exceeded, 3 expectation
mismatch, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import Sequence

from .config import FORMATS, RunConfig
from .errors import ExpectationMismatch, HurwitzError, ParseError
from .nielsen import (
    EQUIVALENCES,
    ClassVector,
    INNER,
    REGULAR,
    STANDARD,
    GroupSpec,
    NielsenSpec,
    NielsenTuple,
    genus_of_class,
    genus_of_tuple,
    is_in_nielsen,
    split_tuple_text,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_BUDGET = 2
EXIT_MISMATCH = 3
EXIT_INVARIANT = 4

EXPECT_COUNTS = {"one": 1, "two": 2}


# --------------------------------------------------------------------------
# helpers


def _spec(args) -> NielsenSpec:
    group = GroupSpec(args.group, args.n)
    text = args.classes
    if getattr(args, "r", None) and "^" not in text and len(text.split()) == 1:
        text = f"{text}^{args.r}"  # "-c 3 -r 5" means five copies
    classes = ClassVector.parse(text, group)
    if getattr(args, "r", None) and classes.r != args.r:
        raise ParseError(f"class vector {classes} has {classes.r} entries, but -r is {args.r}")
    return NielsenSpec(group, classes)


def _degree_of(text: str, n: int | None) -> int:
    if n:
        return n
    pts = [int(x) for x in re.findall(r"\d+", text)]
    if not pts:
        raise ParseError("cannot infer the degree from the tuple; pass -n")
    return max(pts)


def _tuple(text: str, n: int | None) -> NielsenTuple:
    split_tuple_text(text)  # parse errors surface before degree inference fails
    return NielsenTuple.parse(text, _degree_of(text, n))


def _csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in row.items()})
    return buf.getvalue()


def _text_kv(data: dict) -> str:
    lines = []
    for k, v in data.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v)
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def _emit(out, data: dict, fmt: str, text: str | None = None, rows: list[dict] | None = None) -> None:
    if fmt == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    elif fmt == "csv":
        out.write(_csv(rows if rows is not None else [{k: json.dumps(v) if isinstance(v, (dict, list)) else v
                                                       for k, v in data.items()}]))
    else:
        out.write(text if text is not None else _text_kv(data))


def _sign(v) -> str:
    return {1: "+1", -1: "-1"}.get(v, "n/a")


# --------------------------------------------------------------------------
# commands


def cmd_orbits(args, config: RunConfig, out) -> int:
    from .braid import orbits_of_class

    spec = _spec(args)
    rep = orbits_of_class(spec, args.eq, config, check_invariant=args.check_invariant)
    data = rep.to_json()
    rows = [{"orbit": i + 1, "size": o.size, "invariant": o.invariant, "rep": o.to_json()["rep"]}
            for i, o in enumerate(rep.orbits)]
    lines = [f"{spec.group} {spec.classes} ({args.eq}): {len(rep.orbits)} orbit(s), "
             f"{rep.class_count} classes, raw size {rep.raw_size}"]
    for i, o in enumerate(rep.orbits):
        lines.append(f"  orbit {i + 1}: size {o.size:>8}  invariant {_sign(o.invariant):>4}  rep {' '.join(o.to_json()['rep'])}")
    _emit(out, data, config.format, "\n".join(lines) + "\n", rows)
    if args.expect:
        want = EXPECT_COUNTS[args.expect]
        if len(rep.orbits) != want:
            raise ExpectationMismatch(f"expected {args.expect} orbit(s), found {len(rep.orbits)}")
        if want == 2 and all(o.invariant is not None for o in rep.orbits) and sorted(rep.invariants()) != [-1, 1]:
            raise ExpectationMismatch(f"two orbits but invariants {rep.invariants()}")
    return EXIT_OK


def cmd_spin(args, config: RunConfig, out) -> int:
    from .groups import is_transitive
    from .spin import lifting_invariant, serre_invariant, w_invariant

    t = _tuple(args.tuple, args.n)
    s = lifting_invariant(t.raw, config.clifford_terms)
    ws = [w_invariant(g) for g in t.raw]
    serre = {"attempted": False}
    if is_transitive(t.raw, t.degree) and genus_of_tuple(t.raw) == 0:
        v = serre_invariant(t.raw)
        serre = {"attempted": True, "value": v, "agrees": v == s}
    elif not is_transitive(t.raw, t.degree):
        serre["reason"] = "intransitive"
    else:
        serre["reason"] = f"genus {genus_of_tuple(t.raw)}"
    data = {"tuple": t.strings(), "degree": t.degree, "s": s, "per_entry_w": ws, "serre_check": serre}
    _emit(out, data, config.format)
    if serre.get("attempted") and not serre["agrees"]:
        raise HurwitzError("serre invariant disagrees with the lifting invariant")
    return EXIT_OK


def cmd_shinc(args, config: RunConfig, out) -> int:
    from .reduced import sh_incidence

    args.r = None
    spec = _spec(args)
    inc = sh_incidence(spec, args.eq, config, fixture_labels=args.fixture_labels)
    rows = [{"label": lab, "width": w, **{inc.labels[j]: inc.matrix[i][j] for j in range(len(inc.labels))}}
            for i, (lab, w) in enumerate(zip(inc.labels, inc.widths))]
    _emit(out, inc.to_json(), config.format, inc.to_text(), rows)
    return EXIT_OK


def cmd_theta_hyp(args, config: RunConfig, out) -> int:
    from .theta import hyp_orbits

    try:
        rep = hyp_orbits(args.r)
    except ValueError as e:
        raise ParseError(str(e)) from None
    lines = [f"r={rep.r}: even {rep.even}, odd {rep.odd}"]
    lines += [f"  s in {{{o.s_block}}}: size {o.size} {o.parity}" for o in rep.orbits]
    _emit(out, rep.to_json(), config.format, "\n".join(lines) + "\n", [o.to_json() for o in rep.orbits])
    return EXIT_OK


def cmd_theta_parity(args, config: RunConfig, out) -> int:
    from .theta import component_theta_parity

    t = _tuple(args.tuple, args.n)
    p = component_theta_parity(t.raw, args.representation)
    _emit(out, {"tuple": t.strings(), "representation": args.representation, "parity": p}, config.format)
    return EXIT_OK


def cmd_genus(args, config: RunConfig, out) -> int:
    if args.tuple:
        t = _tuple(args.tuple, args.n)
        data = {"tuple": t.strings(), "genus": genus_of_tuple(t.raw)}
    else:
        if not (args.n and args.classes):
            raise ParseError("genus needs a tuple or -n with -c")
        args.r = None
        spec = _spec(args)
        data = {**spec.header(), "representation": args.representation,
                "genus": genus_of_class(spec, args.representation)}
    _emit(out, data, config.format)
    return EXIT_OK


def cmd_connect(args, config: RunConfig, out) -> int:
    from .braid import connect

    args.r = None
    spec = _spec(args)
    a = NielsenTuple.parse(args.source, spec.n, spec)
    b = NielsenTuple.parse(args.target, spec.n, spec)
    for name, t in (("source", a), ("target", b)):
        m = is_in_nielsen(t, spec)
        if not m.ok:
            raise ParseError(f"{name} is not in the Nielsen class ({m.reason})")
    w = connect(a, b, args.eq, spec, config.max_states)
    data = {**spec.header(), "equivalence": args.eq, "connected": w is not None,
            "word": None if w is None else str(w)}
    _emit(out, data, config.format)
    if args.expect is not None and (w is not None) != (args.expect == "connected"):
        raise ExpectationMismatch(f"expected {args.expect}")
    return EXIT_OK


def cmd_verify(args, config: RunConfig, out) -> int:
    from .verify import SUITES, run_suite

    if args.suite not in SUITES:
        raise ParseError(f"unknown suite {args.suite!r}; known: {', '.join(SUITES)}")
    rep = run_suite(args.suite, config, n=args.n, rmax=args.rmax)
    lines = [f"[{r.status.upper():4}] {args.suite} {r.case} ({r.seconds}s) {r.detail}".rstrip() for r in rep.results]
    lines.append(f"{args.suite}: {'pass' if rep.ok else 'FAIL'}")
    _emit(out, rep.to_json(), config.format, "\n".join(lines) + "\n", [r.to_json() for r in rep.results])
    return EXIT_OK if rep.ok else EXIT_MISMATCH


# --------------------------------------------------------------------------
# parser


def _add_spec_args(p, need_r: bool = False) -> None:
    p.add_argument("-n", type=int, required=True, help="degree")
    if need_r:
        p.add_argument("-r", type=int, help="number of entries (a single class is repeated r times)")
    p.add_argument("-c", "--classes", required=True, help='class vector, e.g. "3^4" or "+3^2 -3^2"')
    p.add_argument("--group", choices=["An", "Sn"], default="An")
    p.add_argument("--eq", choices=EQUIVALENCES, default=INNER)


def _common_options() -> argparse.ArgumentParser:
    # accepted before or after the subcommand; SUPPRESS keeps a later default
    # from clobbering an earlier value
    common = argparse.ArgumentParser(add_help=False)
    opt = lambda *a, **kw: common.add_argument(*a, default=argparse.SUPPRESS, **kw)  # noqa: E731
    opt("--format", choices=FORMATS)
    opt("--config", help="key = value config file")
    opt("--workers", type=int)
    opt("--max-states", type=int)
    opt("--max-prefixes", type=int)
    opt("--memory-cap", type=int)
    opt("--fixture-dir")
    opt("--allow-long", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    ap = argparse.ArgumentParser(prog="hurwitz", description="Nielsen classes and braid orbits", parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbits", parents=[common], help="braid orbits on a Nielsen class")
    _add_spec_args(p, need_r=True)
    p.add_argument("--expect", choices=sorted(EXPECT_COUNTS))
    p.add_argument("--check-invariant", choices=["auto", "all", "sample", "none"], default="auto")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("spin", parents=[common], help="lifting invariant of a tuple")
    p.add_argument("tuple")
    p.add_argument("-n", type=int)
    p.set_defaults(func=cmd_spin)

    p = sub.add_parser("shinc", parents=[common], help="sh-incidence matrix for r = 4")
    _add_spec_args(p)
    p.add_argument("--fixture-labels", action="store_true")
    p.set_defaults(func=cmd_shinc)

    p = sub.add_parser("theta-hyp", parents=[common], help="theta characteristics on the hyperelliptic locus")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_theta_hyp)

    p = sub.add_parser("theta-parity", parents=[common], help="theta parity of a component from a tuple")
    p.add_argument("tuple")
    p.add_argument("-n", type=int)
    p.add_argument("--representation", choices=["absolute", "inner"], default="absolute")
    p.set_defaults(func=cmd_theta_parity)

    p = sub.add_parser("genus", parents=[common], help="Riemann-Hurwitz genus of a tuple or class")
    p.add_argument("tuple", nargs="?")
    p.add_argument("-n", type=int)
    p.add_argument("-c", "--classes")
    p.add_argument("--group", choices=["An", "Sn"], default="An")
    p.add_argument("--representation", choices=[STANDARD, REGULAR], default=STANDARD)
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("connect", parents=[common], help="braid word between two tuples")
    _add_spec_args(p)
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--expect", choices=["connected", "disconnected"])
    p.set_defaults(func=cmd_connect)

    p = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    p.add_argument("suite")
    p.add_argument("--n", type=int)
    p.add_argument("--rmax", type=int)
    p.set_defaults(func=cmd_verify)
    return ap


def _config(args) -> RunConfig:
    opt = lambda name: getattr(args, name, None)  # noqa: E731
    cfg = RunConfig.from_file(opt("config")) if opt("config") else RunConfig.from_env()
    try:
        return cfg.with_overrides(
            format=opt("format"),
            workers=opt("workers"),
            max_states=opt("max_states"),
            max_prefixes=opt("max_prefixes"),
            memory_cap=opt("memory_cap"),
            fixture_dir=opt("fixture_dir"),
            allow_long=opt("allow_long"),
        )
    except ValueError as e:
        raise ParseError(str(e)) from None


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_PARSE
    try:
        config = _config(args)
        return args.func(args, config, out)
    except HurwitzError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
