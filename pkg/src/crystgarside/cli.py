"""Command-line front end.

    crystgarside build C~3
    crystgarside verify x-rigid B~3 --power 6
    crystgarside nf G~2 "x"
    crystgarside lambda C~3 "x x x"
    crystgarside graph C~2 "x" --radius 1 --format dot
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import List, Optional

from .al_graph import MonotonicityError, PreconditionError, WindowError, graph
from .coxeter_data import TypeParseError, UnsupportedTypeError, build, parse_type, validate_type
from .garside_engine import WordParseError, engine
from .interval import UnknownVerdict
from .verifiers import FAIL, PASS, REGISTRY, UNKNOWN, Check, VerifyConfig, run

SCHEMA = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_TYPE_PARSE = 3
EXIT_UNSUPPORTED = 4
EXIT_WORD_PARSE = 5
EXIT_UNKNOWN_CHECK = 6
EXIT_UNKNOWN_VERDICT = 7
EXIT_WINDOW = 8


@dataclass
class Report:
    command: str
    type: str
    parameters: dict = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    result: dict = field(default_factory=dict)
    timing: Optional[float] = None

    @property
    def ok(self) -> bool:
        return all(c.verdict == PASS for c in self.checks)

    def as_dict(self):
        out = {"schema": SCHEMA, "command": self.command, "type": self.type,
               "parameters": self.parameters, "result": self.result,
               "checks": [c.as_dict() for c in sorted(self.checks, key=lambda c: c.id)]}
        if self.timing is not None:
            out["timing"] = round(self.timing, 3)
        return out

    def text(self) -> str:
        lines = [f"{self.command} {self.type}"]
        for k, v in self.result.items():
            lines.append(f"  {k}: {v}")
        for c in sorted(self.checks, key=lambda c: c.id):
            lines.append(f"  [{c.verdict}] {c.id}")
        if self.checks:
            n_pass = sum(c.verdict == PASS for c in self.checks)
            lines.append(f"  {n_pass}/{len(self.checks)} pass")
        if self.timing is not None:
            lines.append(f"  time {self.timing:.2f}s")
        return "\n".join(lines)


def _type(args) -> str:
    raw = args.type_pos or args.type
    if raw is None:
        raise TypeParseError("no type given")
    t = parse_type(raw)
    validate_type(t)
    return str(t)


def cmd_build(args) -> Report:
    t = _type(args)
    d = build(t)
    return Report("build", t, result=d.summary())


def cmd_verify(args) -> Report:
    t = _type(args)
    cfg = VerifyConfig(seed=args.seed, power=args.power, instances=args.instances,
                       samples=args.samples, products=args.products, window=args.window, radius=args.radius)
    names = sorted(REGISTRY) if args.check == "all" else [args.check]
    for nm in names:
        if nm not in REGISTRY:
            raise KeyError(nm)
    checks = []
    for nm in names:
        for c in run(nm, t, cfg):
            checks.append(Check(f"{nm}:{c.id}", c.verdict, c.witness))
    return Report("verify " + args.check, t, parameters=asdict(cfg), checks=checks)


def _element(t, word):
    E = engine(t)
    return E, E.parse_word(word)


def cmd_nf(args) -> Report:
    t = _type(args)
    E, g = _element(t, args.word)
    L = E.left_normal_form(g)
    R = E.right_normal_form(g)
    res = {"word": args.word, "left_nf": E.describe(L), "inf": L.inf,
           "length": L.canonical_length, "sup": L.sup,
           "right_nf": " ".join([f"({E.simple_label(s)})" for s in R.factors] + ([f"D^{R.p}"] if R.p else []))}
    return Report("nf", t, parameters={"word": args.word}, result=res)


def cmd_lambda(args) -> Report:
    t = _type(args)
    A = graph(t)
    _, g = _element(t, args.word)
    v = A.vertex_of(g)
    r = A.lambda_projection(v, args.window)
    return Report("lambda", t, parameters={"word": args.word, "window": list(r.window)},
                  result={"lambda": r.value, "vertex": A.E.describe(v.rep)})


def cmd_graph(args) -> Report:
    t = _type(args)
    A = graph(t)
    E = A.E
    _, g = _element(t, args.word)
    center = A.vertex_of(g)
    k = args.window if args.window is not None else 1
    simples = [a.as_simple() for a in E.G.atoms_window(range(-k, k + 1)) if a.kind != "translation"]
    edges = A.simple_edges(simples)
    dot = A.to_dot(center, args.radius, edges)
    seen, es = A.neighbourhood(center, args.radius, edges)
    return Report("graph", t, parameters={"word": args.word, "radius": args.radius, "edge_window": k},
                  result={"vertices": len(seen), "edges": len(es), "dot": dot})


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "nf": cmd_nf,
            "lambda": cmd_lambda, "graph": cmd_graph}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="type string such as C~3")
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--window", type=int, default=None)
    common.add_argument("--power", type=int, default=6)
    common.add_argument("--instances", type=int, default=20)
    common.add_argument("--samples", type=int, default=300)
    common.add_argument("--products", type=int, default=500)
    common.add_argument("--radius", type=int, default=1)
    common.add_argument("--format", choices=["json", "text", "dot"], default="text")
    common.add_argument("--out", default=None)
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    p = argparse.ArgumentParser(prog="crystgarside", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = p.add_subparsers(dest="command", required=True)
    b = sub.add_parser("build", parents=[common])
    b.add_argument("type_pos", nargs="?")
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("check", help="verifier id or 'all': " + ", ".join(sorted(REGISTRY)))
    v.add_argument("type_pos", nargs="?")
    for name in ("nf", "lambda", "graph"):
        q = sub.add_parser(name, parents=[common])
        q.add_argument("type_pos", nargs="?")
        q.add_argument("word")
    return p


def _emit(report: Report, fmt: str, out: Optional[str]):
    if fmt == "json":
        text = json.dumps(report.as_dict(), indent=2, sort_keys=True)
    elif fmt == "dot":
        text = report.result.get("dot", "")
    else:
        res = dict(report.result)
        dot = res.pop("dot", None)
        report = Report(report.command, report.type, report.parameters, report.checks, res, report.timing)
        text = report.text() + ("\n" + dot if dot else "")
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: Optional[List[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except TypeParseError as e:
        print(f"error: cannot parse type: {e}", file=sys.stderr)
        return EXIT_TYPE_PARSE
    except UnsupportedTypeError as e:
        print(f"error: unsupported type: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except WordParseError as e:
        print(f"error: cannot parse word: {e}", file=sys.stderr)
        return EXIT_WORD_PARSE
    except KeyError as e:
        print(f"error: unknown verifier {e}; known: {', '.join(sorted(REGISTRY))}", file=sys.stderr)
        return EXIT_UNKNOWN_CHECK
    except UnknownVerdict as e:
        print(f"unknown: {e}", file=sys.stderr)
        return EXIT_UNKNOWN_VERDICT
    except (WindowError, MonotonicityError, PreconditionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_WINDOW
    if args.timing:
        report.timing = time.perf_counter() - t0
    _emit(report, args.format, args.out)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
