"""Command-line surface: generate, analyze, certify, export.

Every subcommand wraps one library operation family.  JSON is the only
interchange format; fractions travel as "p/q" strings, so piping output
between subcommands is lossless.  Inputs default to stdin (a lone "-"
also means stdin), output goes to stdout unless --out is given.  Library
errors exit 1 after printing a single-line error JSON; usage errors exit
2 via argparse.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .dimension import dimension
from .errors import OrderError
from .flow import enumerate_realizers, semidirect_decomposition, symmetric_sample
from .geometry import (
    PartialEmbedding,
    PointCloud,
    back_and_forth_iso,
    forth_extend,
    sample_dn,
)
from .homogeneity import (
    ap_failure_certificate,
    check_dpo_fragment,
    nonhom_witness,
    qn_lex_nonhom_witness,
    two_homogeneity_certificate,
)
from .poset import FinitePoset, OrderedStructure, crown
from .ramsey import (
    GridStruct,
    product_ramsey_number,
    ramsey_witness_check,
    rigid_embed,
)

__all__ = ["main"]


def _read_json(path: str | None) -> dict:
    if path is None or path == "-":
        raw = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    return json.loads(raw)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_json(payload, out: str | None) -> None:
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)


def _cmd_gen(args) -> None:
    if args.shape == "crown":
        payload = crown(args.n).to_json()
    elif args.shape == "grid":
        payload = GridStruct(args.m, args.n).structure.to_json()
    else:
        if args.symmetric:
            cloud = symmetric_sample(args.n, args.count, seed=args.seed)
        else:
            cloud = sample_dn(args.n, args.count, seed=args.seed)
        payload = cloud.to_json()
    _emit_json(payload, args.out)


def _cmd_dim(args) -> None:
    p = FinitePoset.from_json(_read_json(args.infile))
    res = dimension(p, budget=args.max_ext)
    _emit_json({"dim": res.dim, "witness": res.witness.to_json()}, args.out)


def _cmd_embed(args) -> None:
    s = OrderedStructure.from_json(_read_json(args.infile))
    coords = rigid_embed(s)
    _emit_json(
        {
            "elements": list(s.elements),
            "coordinates": [list(c) for c in coords],
        },
        args.out,
    )


def _cmd_extend(args) -> None:
    s = OrderedStructure.from_json(_read_json(args.struct))
    c = PointCloud.from_json(_read_json(args.cloud))
    emb = PartialEmbedding(source=s, cloud=c, images=())
    for e in s.elements:
        emb = forth_extend(emb, e)
    emb.verify()
    _emit_json(
        {"cloud": emb.cloud.to_json(), "mapping": emb.mapping}, args.out
    )


def _cmd_iso(args) -> None:
    a = PointCloud.from_json(_read_json(args.a))
    b = PointCloud.from_json(_read_json(args.b))
    fwd, bwd = back_and_forth_iso(a, b, args.steps)
    fwd.verify()
    bwd.verify()
    table = [[e, f"p{y}"] for e, y in fwd.images]
    _emit_json(
        {
            "table": table,
            "a": bwd.cloud.to_json(),
            "b": fwd.cloud.to_json(),
        },
        args.out,
    )


def _cmd_check(args) -> None:
    cloud = PointCloud.from_json(_read_json(args.infile))
    report = check_dpo_fragment(cloud)
    _emit_json(
        {
            "poset_ok": report.poset_ok,
            "linears_ok": report.linears_ok,
            "realization_ok": report.realization_ok,
            "universal_ok": report.universal_ok,
            "density_defects": [
                {
                    "region": None if d.region is None else d.region.to_json(),
                    "witnesses": list(d.witnesses),
                    "gaps": [list(g) for g in d.gaps],
                }
                for d in report.density_defects
            ],
        },
        args.out,
    )


def _two_homogeneity_demo(n: int):
    # an ascending 4-chain: per-axis values stay distinct, both pairs
    # ascend on every axis, so the extension is guaranteed to exist
    pts = [tuple(4 * k + i for i in range(n)) for k in range(4)]
    c = PointCloud(n, pts)
    return two_homogeneity_certificate(
        c, (pts[0], pts[1]), (pts[2], pts[3]), steps=4
    )


def _cmd_certify(args) -> None:
    if args.kind == "ap":
        cert = ap_failure_certificate(args.n)
    elif args.kind == "nonhom":
        cert = nonhom_witness(args.n)
    elif args.kind == "qnlex":
        cert = qn_lex_nonhom_witness(args.n)
    else:
        cert = _two_homogeneity_demo(args.n)
    _emit_json(cert.to_json(), args.out)


def _cmd_ramsey(args) -> None:
    if args.mode == "number":
        value = product_ramsey_number(
            args.k, args.l, args.m, args.n, r_max=args.rmax
        )
        _emit_json({"value": value}, args.out)
    else:
        a = OrderedStructure.from_json(_read_json(args.a))
        b = OrderedStructure.from_json(_read_json(args.b))
        holds = ramsey_witness_check(a, b, args.k, args.r, method=args.method)
        _emit_json({"holds": holds}, args.out)


def _cmd_flow(args) -> None:
    if args.mode == "realizers":
        s = OrderedStructure.from_json(_read_json(args.infile))
        _emit_json(enumerate_realizers(s).to_json(), args.out)
    else:
        c = PointCloud.from_json(_read_json(args.infile))
        _emit_json(semidirect_decomposition(c).to_json(), args.out)


def _cmd_export(args) -> None:
    p = FinitePoset.from_json(_read_json(args.infile))
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for e in p.elements:
        lines.append(f'  "{e}";')
    for a, b in sorted(p.covers()):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    _emit("\n".join(lines) + "\n", args.out)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orderdim",
        description="finite partial-order combinatorics in exact arithmetic",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("--out", default=None, help="output file (default stdout)")

    def add_in(p):
        p.add_argument(
            "--in", dest="infile", default=None,
            help="input file (default stdin)",
        )

    p = sub.add_parser("gen", help="generate posets, grids, and clouds")
    p.add_argument("shape", choices=("crown", "grid", "sample"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--count", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--symmetric", action="store_true")
    add_out(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("dim", help="order dimension with witness realizers")
    add_in(p)
    p.add_argument("--max-ext", type=int, default=None)
    add_out(p)
    p.set_defaults(func=_cmd_dim)

    p = sub.add_parser("embed", help="embeddings into grids")
    p.add_argument("mode", choices=("rigid",))
    add_in(p)
    add_out(p)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("extend", help="grow a partial embedding")
    p.add_argument("mode", choices=("forth",))
    p.add_argument("--struct", required=True)
    p.add_argument("--cloud", required=True)
    add_out(p)
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("iso", help="back-and-forth partial isomorphism")
    p.add_argument("mode", choices=("bnf",))
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--steps", type=int, default=10)
    add_out(p)
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("check", help="axiom reports")
    p.add_argument("mode", choices=("dpo",))
    add_in(p)
    add_out(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("certify", help="machine-checked certificates")
    p.add_argument("kind", choices=("ap", "nonhom", "qnlex", "twohom"))
    p.add_argument("--n", type=int, default=2)
    add_out(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("ramsey", help="product Ramsey search")
    ram = p.add_subparsers(dest="mode", required=True)
    q = ram.add_parser("number")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--rmax", type=int, default=6)
    add_out(q)
    q.set_defaults(func=_cmd_ramsey)
    q = ram.add_parser("witness")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--method", choices=("reduction", "exhaustive"), default="reduction")
    add_out(q)
    q.set_defaults(func=_cmd_ramsey)

    p = sub.add_parser("flow", help="realizer censuses and decompositions")
    p.add_argument("mode", choices=("realizers", "decompose"))
    add_in(p)
    add_out(p)
    p.set_defaults(func=_cmd_flow)

    p = sub.add_parser("export", help="DOT Hasse diagram")
    p.add_argument("mode", choices=("dot",))
    add_in(p)
    add_out(p)
    p.set_defaults(func=_cmd_export)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (OrderError, ValueError, KeyError, TypeError) as exc:
        detail = str(exc) or type(exc).__name__
        sys.stdout.write(
            json.dumps(
                {"error": type(exc).__name__, "detail": detail},
                sort_keys=True,
            )
            + "\n"
        )
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
