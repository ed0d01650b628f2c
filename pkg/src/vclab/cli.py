"""Command-line front end.

Subcommands: gen (write a family to JSON), invariants (report exact
invariants of a set system), shatter / dual-shatter (profile CSV over a
t range), verify (run a named suite).  Exit codes: 0 success, 1
verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import generators as gens
from .errors import BudgetExceededError, VcLabError
from .relations import BiRelation, FormulaSet, dual_shatter, system_of
from .setsystem import (
    SetSystem,
    breadth,
    helly_number,
    independence_dimension,
    shatter_function,
    vc_dimension,
)
from .verify import SUITES, run_suite

DEFAULT_SEED = 0


def _write_output(data: dict, out):
    text = json.dumps(data, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_coords(spec: str):
    pts = []
    for chunk in spec.split(";"):
        x, y = chunk.split(",")
        pts.append((x.strip(), y.strip()))
    return pts


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "subsets":
        obj = gens.gen_subsets_at_most_d(args.n, args.d).to_json()
    elif fam == "intervals":
        obj = gens.gen_intervals(args.points, args.k).to_json()
    elif fam == "halfspaces":
        obj = gens.gen_halfspaces(_parse_coords(args.coords)).to_json()
    elif fam == "cosets":
        divisors = [int(d) for d in args.divisors.split(",")]
        obj = gens.gen_cosets_zn(args.n, divisors).to_json()
    elif fam == "subgroups":
        divisors = (
            [int(d) for d in args.divisors.split(",")] if args.divisors else None
        )
        obj = gens.gen_subgroups_zn(args.n, divisors).to_json()
    elif fam == "progressions":
        obj = gens.gen_arithmetic_progressions(args.window, args.max_modulus).to_json()
    elif fam == "pointline-fq":
        obj = gens.gen_pointline_fq(args.q).to_json()
    elif fam == "elekes":
        obj = gens.gen_elekes_grid(args.k).incidence.to_json()
    elif fam == "hypercube":
        _, system = gens.gen_hypercube_edges(args.d)
        obj = system.to_json()
    else:
        raise VcLabError(f"unknown family {fam!r}")
    _write_output(obj, args.out)
    return 0


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _load_system(path) -> SetSystem:
    data = _load_json(path)
    if "rows" in data:
        return system_of(BiRelation.from_json(data))
    return SetSystem.from_json(data)


def cmd_invariants(args) -> int:
    system = _load_system(args.input)
    report = {"member_count": len(system.members), "exactness": {}}
    try:
        report["vc_dim"] = vc_dimension(system, budget=args.budget)
        report["exactness"]["vc_dim"] = "exact"
    except BudgetExceededError as exc:
        report["vc_dim"] = exc.lower_bound
        report["exactness"]["vc_dim"] = "skipped"
    try:
        report["ind_dim"] = independence_dimension(system, budget=args.budget)
        report["exactness"]["ind_dim"] = "exact"
    except BudgetExceededError as exc:
        report["ind_dim"] = exc.lower_bound
        report["exactness"]["ind_dim"] = "skipped"
    try:
        report["breadth"] = breadth(system, budget=args.budget)
        report["exactness"]["breadth"] = "exact"
    except BudgetExceededError as exc:
        report["breadth"] = exc.lower_bound
        report["exactness"]["breadth"] = "skipped"
    try:
        report["helly"] = helly_number(system)
        report["exactness"]["helly"] = "exact"
    except BudgetExceededError:
        report["helly"] = None
        report["exactness"]["helly"] = "skipped"
    _write_output(report, args.out)
    return 0


def _parse_range(spec: str):
    if ".." in spec:
        lo, hi = spec.split("..")
        return int(lo), int(hi)
    v = int(spec)
    return v, v


def cmd_shatter(args, dual: bool = False) -> int:
    lo, hi = _parse_range(args.t)
    samples = []
    exit_code = 0
    if dual:
        data = _load_json(args.input)
        if "relations" in data:
            delta = FormulaSet.from_json(data)
        else:
            delta = FormulaSet.of([BiRelation.from_json(data)])
        size_limit = delta.y_size
    else:
        system = _load_system(args.input)
        size_limit = system.ground_size
    if not (0 <= lo <= hi <= size_limit):
        print(f"t range {lo}..{hi} outside 0..{size_limit}", file=sys.stderr)
        return 2
    for t in range(lo, hi + 1):
        try:
            if dual:
                res = dual_shatter(delta, t, budget=args.budget)
            else:
                res = shatter_function(
                    system, t, mode=args.mode, budget=args.budget, seed=args.seed
                )
            samples.append((t, res.value, res.exactness == "exact"))
        except BudgetExceededError as exc:
            print(f"t={t}: {exc}; row omitted", file=sys.stderr)
            if args.strict:
                exit_code = 1
    # emit rows directly; sampled values can be non-monotone which the
    # ShatterProfile invariants would reject
    lines = ["t,value,exact"]
    lines += [f"{t},{v},{1 if e else 0}" for t, v, e in samples]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return exit_code


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(
            f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}",
            file=sys.stderr,
        )
        return 2
    cases = run_suite(args.suite, seed=args.seed, budget=args.budget)
    width = max(len(c.name) for c in cases) if cases else 4
    for c in cases:
        print(f"{c.name:<{width}}  {c.status:<7}  expected {c.expected}; observed {c.observed}")
    failed = [c for c in cases if c.status == "fail"]
    print(f"{len(cases) - len(failed)}/{len(cases)} cases passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vclab")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument(
        "--budget",
        type=int,
        default=None,
        help="subset-evaluation budget (default from VCLAB_BUDGET or 10^7)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a family and write it as JSON")
    g.add_argument(
        "--family",
        required=True,
        choices=[
            "subsets",
            "intervals",
            "halfspaces",
            "cosets",
            "subgroups",
            "progressions",
            "pointline-fq",
            "elekes",
            "hypercube",
        ],
    )
    g.add_argument("--n", type=int)
    g.add_argument("--d", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--points", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--window", type=int)
    g.add_argument("--max-modulus", type=int, dest="max_modulus")
    g.add_argument("--divisors", type=str, default=None)
    g.add_argument("--coords", type=str, help='rational points "x,y;x,y;..."')
    g.add_argument("--out", type=str, default=None)
    g.set_defaults(func=cmd_gen)

    inv = sub.add_parser("invariants", help="exact invariants of a system")
    inv.add_argument("input")
    inv.add_argument("--out", type=str, default=None)
    inv.set_defaults(func=cmd_invariants)

    sh = sub.add_parser("shatter", help="shatter profile CSV over a t range")
    sh.add_argument("input")
    sh.add_argument("--t", required=True, help="range a..b or single value")
    sh.add_argument("--mode", choices=["exact", "sample"], default="exact")
    sh.add_argument("--strict", action="store_true")
    sh.add_argument("--out", type=str, default=None)
    sh.set_defaults(func=lambda a: cmd_shatter(a, dual=False))

    dsh = sub.add_parser("dual-shatter", help="dual shatter profile CSV")
    dsh.add_argument("input")
    dsh.add_argument("--t", required=True)
    dsh.add_argument("--mode", choices=["exact"], default="exact")
    dsh.add_argument("--strict", action="store_true")
    dsh.add_argument("--out", type=str, default=None)
    dsh.set_defaults(func=lambda a: cmd_shatter(a, dual=True))

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("--suite", required=True)
    v.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (VcLabError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
