"""Command-line interface: modmult {signature, dims, mult, verify}."""
from __future__ import annotations

import argparse
import csv
import json
import sys

from .cosets import subgroup_signature
from .dimensions import dims
from .reps import QuotientPair, multiplicity_series
from .sl2 import DEFAULT_LEVEL_CAP, SubgroupSpec, realize
from .verify import VerificationConfig, run_verify, signature_record


def parse_group_spec(text: str) -> SubgroupSpec:
    """Grammar: SL2Z | gamma0:N | gamma1:N | gamma:N | custom:<path>.

    A custom file starts with a line giving the level, followed by one
    generator per line as four integers a b c d.
    """
    if text == "SL2Z":
        return SubgroupSpec("full", 1)
    if ":" not in text:
        raise argparse.ArgumentTypeError(f"bad group spec {text!r}")
    kind, _, arg = text.partition(":")
    if kind in ("gamma0", "gamma1", "gamma"):
        try:
            n = int(arg)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad level in {text!r}") from None
        return SubgroupSpec(kind, n)
    if kind == "custom":
        with open(arg) as fh:
            lines = [ln.split() for ln in fh if ln.strip()
                     and not ln.lstrip().startswith("#")]
        level = int(lines[0][0])
        gens = tuple(tuple(int(x) for x in row) for row in lines[1:])
        if any(len(g) != 4 for g in gens):
            raise argparse.ArgumentTypeError(
                "custom generators need four integers per line")
        return SubgroupSpec("custom", level, gens)
    raise argparse.ArgumentTypeError(f"unknown group kind {kind!r}")


def parse_weights(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        k = int(text)
        return range(k, k + 1)
    return range(int(lo), int(hi) + 1)


def parse_pair(text: str) -> tuple[SubgroupSpec, SubgroupSpec]:
    left, sep, right = text.partition("/")
    if not sep:
        raise argparse.ArgumentTypeError("pair must be <spec>/<spec>")
    return parse_group_spec(left), parse_group_spec(right)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def cmd_signature(args) -> int:
    K = realize(args.group, level_cap=args.level_cap)
    sig = subgroup_signature(K)
    record = signature_record(sig)
    if args.format == "json":
        print(_dump_json(record))
    else:
        print(f"group       {args.group.label()}")
        print(f"genus       {record['genus']}")
        print(f"nu2, nu3    {record['nu2']}, {record['nu3']}")
        cusps = " ".join(f"{c['width']}{'' if c['regular'] else '*'}"
                         for c in record["cusps"])
        print(f"cusps       {cusps}   (* = irregular)")
        print(f"mu_proj     {record['mu_proj']}")
        print(f"mu_sl       {record['mu_sl']}")
        print(f"minus_I     {record['minus_I']}")
        print(f"c           {record['c']}")
    return 0


def cmd_dims(args) -> int:
    K = realize(args.group, level_cap=args.level_cap)
    sig = subgroup_signature(K)
    rows = [(k, dims(sig, k).kind(args.kind))
            for k in args.weights if k != 1]
    if args.format == "json":
        print(_dump_json({"group": args.group.label(), "kind": args.kind,
                          "dims": {str(k): d for k, d in rows}}))
    else:
        w = csv.writer(sys.stdout)
        w.writerow(["k", f"dim_{args.kind}"])
        w.writerows(rows)
    return 0


def cmd_mult(args) -> int:
    g, g1 = args.pair
    pair = QuotientPair.build(g, g1, table_source=args.table,
                              level_cap=args.level_cap)
    ks = [k for k in args.weights if k != 1]
    out = []
    for rat in pair.rationals:
        series = multiplicity_series(pair, rat, args.kind, ks,
                                     split=args.split)
        if args.split and series.per_member is not None:
            for name in rat.names:
                for k in ks:
                    out.append((name, k, series.per_member[k]))
        else:
            for k in ks:
                out.append((series.rep_label, k, series.entries[k]))
    if args.format == "json":
        doc = {}
        for rep, k, v in out:
            doc.setdefault(rep, {})[str(k)] = v
        print(_dump_json({"pair": f"{g.label()}/{g1.label()}",
                          "kind": args.kind, "multiplicities": doc}))
    else:
        w = csv.writer(sys.stdout)
        w.writerow(["rep", "k", "multiplicity"])
        w.writerows(out)
    return 0


def cmd_verify(args) -> int:
    g, g1 = args.pair
    config = VerificationConfig(
        gamma_spec=g, gamma1_spec=g1, kmax=args.kmax,
        kinds=("M", "S"), split=args.split,
        offset_bound=args.offset_bound, table_source=args.table,
        level_cap=args.level_cap,
    )
    report = run_verify(config)
    print(_dump_json(report))
    return 0 if report["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="modmult",
        description="Exact multiplicities of quotient-group characters in "
                    "spaces of modular forms, with slope verification.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--level-cap", type=int, default=DEFAULT_LEVEL_CAP,
                        help="guard on the enumeration level N")

    sp = sub.add_parser("signature", help="print the Fuchsian signature")
    sp.add_argument("--group", type=parse_group_spec, required=True)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    common(sp)
    sp.set_defaults(func=cmd_signature)

    sp = sub.add_parser("dims", help="exact dimensions of M_k or S_k")
    sp.add_argument("--group", type=parse_group_spec, required=True)
    sp.add_argument("--weights", type=parse_weights, required=True,
                    metavar="a..b")
    sp.add_argument("--kind", choices=("M", "S"), default="M")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    common(sp)
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("mult", help="exact multiplicities per character")
    sp.add_argument("--pair", type=parse_pair, required=True,
                    metavar="SPEC/SPEC")
    sp.add_argument("--weights", type=parse_weights, required=True,
                    metavar="a..b")
    sp.add_argument("--kind", choices=("M", "S"), default="M")
    sp.add_argument("--table", default=None,
                    help="character table JSON for nonabelian quotients")
    sp.add_argument("--split", action="store_true",
                    help="divide orbit totals across orbit members")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    common(sp)
    sp.set_defaults(func=cmd_mult)

    sp = sub.add_parser("verify", help="run the full verification harness")
    sp.add_argument("--pair", type=parse_pair, required=True,
                    metavar="SPEC/SPEC")
    sp.add_argument("--kmax", type=int, default=100)
    sp.add_argument("--offset-bound", type=int, default=24)
    sp.add_argument("--table", default=None)
    sp.add_argument("--split", action="store_true")
    sp.add_argument("--format", choices=("json",), default="json")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
