"""Command line front end: ``rigidquad <command> ...``.

Exit status is 0 on success, 1 on a domain error (empty family, exhausted
rejection budget, invalid input document) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import checks
from . import series as S
from .bijections import h_tree_to_quad, quad_to_h_tree
from .enumeration import (
    count_quads_recursive,
    enumerate_bcd,
    enumerate_pre_q_trees,
    enumerate_q_trees,
    h_trees_recursive,
)
from .maps import QuadMap
from .render import immerse, to_svg
from .sampling import DEFAULT_BUDGET, SamplingBudgetExceeded, sample_delta_type, sample_rigid_quad
from .trees import PartitionTree, TreeClass, psi, psi_hat, psi_hat_inv, psi_inv


class DomainError(Exception):
    pass


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load_map(doc) -> QuadMap:
    return QuadMap.from_dict(doc["map"] if "map" in doc else doc)


def _load_tree(doc) -> PartitionTree:
    return PartitionTree.from_dict(doc["tree"] if "tree" in doc else doc)


def _num(x) -> str:
    return str(x) if not isinstance(x, Fraction) or x.denominator != 1 else str(x.numerator)


# ---------------------------------------------------------------------------
# commands


def cmd_series(args) -> int:
    if args.order < 0:
        raise DomainError("order must be non-negative")
    s = S.named_series(args.name, args.order, args.base)
    if args.json:
        _write(None, _dump(S.series_document(args.name, args.order, args.base, s)))
        return 0
    lines = []
    if isinstance(s, S.UniSeries):
        for n in range(1, args.order + 1):
            lines.append(f"{n}\t{_num(s[n])}")
    else:
        for n in range(1, args.order + 1):
            lines.append(f"t^{n}\t{s.format_term(n)}")
    _write(None, "\n".join(lines) + "\n")
    return 0


def _series_count(family, n, p, q):
    if family == "preq":
        return S.pre_q_count(n, p)
    if family == "q":
        return S.q_series(p, n)[n]
    if family in ("h", "quad"):
        return S.h_series(p, n)[n]
    return S.named_series(family, n).coeff(n, p, q)


def _oracle_count(family, n, p, q):
    if family == "preq":
        return len(enumerate_pre_q_trees(n, p))
    if family == "q":
        return len(enumerate_q_trees(n, p))
    if family == "h":
        return len(h_trees_recursive(n, p))
    if family == "quad":
        return count_quads_recursive(p, n)
    kind = {"b": "B", "c": "C", "delta": "delta"}[family]
    return sum(Fraction(1, d) for _, d in enumerate_bcd(kind, p, q, n))


def cmd_count(args) -> int:
    if args.n < 1:
        raise DomainError("n must be at least 1")
    bcd = args.family in ("b", "c", "delta")
    if bcd and (args.cobase is None or args.cobase < 1 or args.base < 1):
        raise DomainError("b, c and delta need --base >= 1 and --cobase >= 1")
    value = _series_count(args.family, args.n, args.base, args.cobase)
    doc = {"family": args.family, "n": args.n, "base": args.base, "count": _num(value)}
    if bcd:
        doc["cobase"] = args.cobase
    if args.oracle:
        oracle = _oracle_count(args.family, args.n, args.base, args.cobase)
        doc["oracle"] = _num(oracle)
        doc["agree"] = oracle == value
    if args.json:
        _write(None, _dump(doc))
    elif args.oracle:
        _write(None, f"{doc['count']} {doc['oracle']} {'OK' if doc['agree'] else 'MISMATCH'}\n")
    else:
        _write(None, f"{doc['count']}\n")
    return 0 if doc.get("agree", True) else 1


def cmd_verify(args) -> int:
    results = []
    if args.suite in ("series", "all"):
        results += checks.series_suite()
    if args.suite in ("bijections", "all"):
        results += checks.bijection_suite(args.max_n)
    if args.json:
        _write(None, _dump([{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]))
    else:
        _write(None, "".join(r.line() + "\n" for r in results))
    return 0 if all(r.ok for r in results) else 1


def cmd_sample(args) -> int:
    rng = random.Random(args.seed)
    if args.kind == "quad":
        m, n = sample_rigid_quad(args.base, args.n_max, args.n, rng, args.budget)
    else:
        if args.cobase is None:
            raise DomainError("delta sampling needs --cobase")
        m, n = sample_delta_type(args.base, args.cobase, args.n_max, args.n, rng, args.budget)
    doc = {"kind": args.kind, "seed": args.seed, "n": n, "base_length": m.base_length(),
           "map": m.to_dict()}
    if args.kind == "delta":
        doc["cobase"] = args.cobase
    _write(args.out, _dump(doc))
    if args.svg:
        _write(args.svg, to_svg(immerse(m)))
    return 0


def cmd_convert(args) -> int:
    doc = _read_json(args.input)
    if args.direction == "quad-to-tree":
        out = quad_to_h_tree(_load_map(doc)).to_dict(TreeClass.H)
    elif args.direction == "tree-to-quad":
        out = h_tree_to_quad(_load_tree(doc)).to_dict()
    elif args.direction == "h-to-q":
        h = _load_tree(doc)
        q = psi(h) if args.base is None else psi_hat(h, args.base)
        out = q.to_dict(TreeClass.Q)
    else:
        q = _load_tree(doc)
        h = psi_hat_inv(q) if q.base_length < 0 and args.hat else psi_inv(q)
        out = h.to_dict(TreeClass.H)
    _write(args.output, _dump(out))
    return 0


def cmd_render(args) -> int:
    g = immerse(_load_map(_read_json(args.input)))
    _write(args.svg, to_svg(g))
    if args.json_out:
        _write(args.json_out, _dump(g.to_dict()))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="rigidquad", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", parents=[common], help="print series coefficients")
    p.add_argument("name", choices=S.SERIES_NAMES)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--base", type=int, default=None)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("count", parents=[common], help="exact counts, optionally against an enumerator")
    p.add_argument("--family", required=True, choices=["preq", "q", "h", "quad", "b", "c", "delta"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--cobase", type=int, default=None)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", parents=[common], help="run the consistency suites")
    p.add_argument("--suite", choices=["series", "bijections", "all"], default="all")
    p.add_argument("--max-n", type=int, default=5)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", parents=[common], help="random rigid quadrangulation")
    p.add_argument("kind", choices=["quad", "delta"])
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--cobase", type=int, default=None)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="condition on this n by rejection")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", default=None)
    p.add_argument("--svg", default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("convert", parents=[common], help="convert between maps and trees")
    p.add_argument("direction", choices=["quad-to-tree", "tree-to-quad", "h-to-q", "q-to-h"])
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", default=None)
    p.add_argument("--base", type=int, default=None, help="target base for h-to-q with a negative base")
    p.add_argument("--hat", action="store_true", help="q-to-h: use the hatted inverse shift")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("render", parents=[common], help="draw a map as SVG")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--svg", required=True)
    p.add_argument("--immersion", dest="json_out", default=None, help="also write the immersion JSON")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SamplingBudgetExceeded as exc:
        print(f"rigidquad: {exc} (retry with another seed or a larger --budget)", file=sys.stderr)
        return 1
    except (DomainError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"rigidquad: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
