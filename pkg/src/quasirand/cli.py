"""Command-line front end.

Exit codes: 0 success, 2 validation error, 3 budget exceeded, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from . import io as qio
from .density import DEFAULT_CELL_BUDGET, SCHEMA_VERSION, density
from .errors import BadParams, BudgetExceeded, NotAntichain
from .experiment import ExperimentSpec, run_experiment
from .families import leq_witness
from .generate import gen_random, gen_separation, sample_induced
from .hypergraph import adapted_ordering, strong_adaptation_failure
from .kernel import Kernel
from .mk import build_mk, mk_stats
from .quasitest import (
    DEFAULT_WITNESS_BUDGET,
    WitnessFamily,
    cliquedisc_witness,
    deviation_stat,
    disc_witness,
    mk_test,
)

EXIT_OK, EXIT_VALIDATION, EXIT_BUDGET, EXIT_IO = 0, 2, 3, 4


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text: str, path: Optional[str]):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _clean(obj):
    # JSON has no infinity; an undefined stderr is reported as null
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _dump(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True) + "\n"


def _report(args, payload: dict, text: str):
    if args.json:
        payload = {"schema_version": SCHEMA_VERSION, **payload}
        _write(_dump(payload), getattr(args, "out", None))
    else:
        _write(text.rstrip("\n") + "\n", getattr(args, "out", None))


def _need_seed(args):
    if args.seed is None:
        raise BadParams(f"'{args.command}' is randomized; pass an explicit --seed")


# gen


def cmd_gen(args):
    if args.kind == "induced":
        if args.inp is None or args.m is None:
            raise BadParams("gen induced needs --in and --m")
        _need_seed(args)
        H = sample_induced(qio.parse_hypergraph(_read(args.inp)), args.m, args.seed)
    else:
        for name in ("n", "k", "p"):
            if getattr(args, name) is None:
                raise BadParams(f"gen {args.kind} needs --{name}")
        _need_seed(args)
        if args.kind == "random":
            H = gen_random(args.n, args.k, args.p, args.seed)
        else:
            if args.family is None:
                raise BadParams("gen separation needs --family")
            fam = qio.read_family(args.family, args.k)
            H = gen_separation(args.n, args.k, fam, args.p, args.seed)
    _write(qio.emit_hypergraph(H), args.out)


# mk


def cmd_mk(args):
    fam = qio.read_family(args.family, args.k)
    if args.action == "stats":
        v, e = mk_stats(args.k, fam)
        _report(args, {"vertices": v, "edges": e}, f"vertices {v}\nedges {e}")
        return
    # build always emits JSON; that is the pattern file format
    _write(_dump(build_mk(args.k, fam).to_json()), args.out)


# check


def cmd_check(args):
    if args.what == "subset-free":
        if args.k is None:
            raise BadParams("check subset-free needs --k")
        try:
            fam = qio.read_family(args.family, args.k)
        except NotAntichain as exc:
            small, big = (sorted(s) for s in exc.pair)
            _report(args, {"holds": False, "pair": [small, big]},
                    f"false ({set(small) or '{}'} inside {set(big)})")
            return
        _report(args, {"holds": True, "family": fam.to_json()}, "true")
        return
    if args.what == "leq":
        if args.k is None or args.other is None:
            raise BadParams("check leq needs --k, --family (the smaller side) and --other")
        a = qio.read_family(args.family, args.k)
        b = qio.read_family(args.other, args.k)
        pi = leq_witness(a, b)
        _report(args, {"holds": pi is not None, "bijection": None if pi is None else list(pi)},
                "true" if pi is not None else "false")
        return
    if args.what == "adapted":
        if args.graph is None:
            raise BadParams("check adapted needs --graph")
        H = qio.parse_hypergraph(_read(args.graph))
        fam = qio.read_family(args.family, H.k)
        order = adapted_ordering(H, fam)
        _report(args, {"holds": order is not None,
                       "ordering": None if order is None else [list(e) for e in order]},
                "true" if order is not None else "false")
        return
    # strongly-adapted
    if args.pattern is None:
        raise BadParams("check strongly-adapted needs --pattern (partite JSON)")
    P = qio.partite_from_json(_read(args.pattern))
    fam = qio.read_family(args.family, P.k)
    bad = strong_adaptation_failure(P, fam)
    _report(args, {"holds": bad is None, "failing_edge": None if bad is None else list(bad)},
            "true" if bad is None else f"false (edge {' '.join(map(str, bad))})")


# density


def _kernel(args, k: int):
    if args.graph is not None:
        return Kernel.indicator(qio.parse_hypergraph(_read(args.graph)))
    if args.kernel is None:
        raise BadParams("density needs --graph FILE or --kernel const:P / centered:FILE[:P]")
    kind, _, rest = args.kernel.partition(":")
    if kind == "const":
        try:
            c = float(rest)
        except ValueError:
            raise BadParams(f"bad constant in {args.kernel!r}") from None
        return Kernel.constant(args.n or 1, k, c)
    if kind == "centered":
        path, _, p = rest.rpartition(":")
        if not path:
            path, p = rest, ""
        else:
            try:
                float(p)
            except ValueError:
                # no trailing P: the colon belonged to the path
                path, p = rest, ""
        G = qio.parse_hypergraph(_read(path))
        return Kernel.centered(G, float(p) if p else None)
    raise BadParams(f"unknown kernel spec {args.kernel!r}")


def cmd_density(args):
    if (args.pattern is None) == (args.mk is None):
        raise BadParams("density needs exactly one of --pattern FILE or --mk FAMILY")
    if args.pattern is not None:
        pattern = qio.read_pattern(_read(args.pattern))
        f = _kernel(args, pattern.k)
    else:
        if args.graph is None and (args.kernel or "").startswith("const") and args.k is None:
            raise BadParams("--mk with a constant kernel needs --k")
        f = _kernel(args, args.k)
        pattern = build_mk(f.k, qio.read_family(args.mk, f.k))
    if args.method in ("mc", "monte-carlo"):
        _need_seed(args)
    rep = density(pattern, f, args.method, samples=args.samples, seed=args.seed,
                  budget_cells=args.budget_cells, max_arity=args.budget_factor_arity)
    _report(args, rep.to_dict(), repr(rep.value))


# test


def _witnesses(args, n: int, family):
    if not args.witness:
        raise BadParams("disc mode needs --witness FILE per family member")
    if len(args.witness) != len(family.sets):
        raise BadParams(f"{len(args.witness)} witness files for {len(family.sets)} members")
    sets = []
    for path, member in zip(args.witness, family.sets):
        size, wn, subs = qio.parse_subsets(_read(path))
        if size != len(member) or wn != n:
            raise BadParams(f"{path}: header says ({size}, {wn}), expected ({len(member)}, {n})")
        sets.append(frozenset(subs))
    return WitnessFamily(n, family, tuple(sets))


def cmd_test(args):
    G = qio.parse_hypergraph(_read(args.graph))
    mc = args.method in ("mc", "monte-carlo")
    if mc:
        _need_seed(args)
    opts = dict(samples=args.samples, seed=args.seed, budget_cells=args.budget_cells,
                max_arity=args.budget_factor_arity)
    if args.mode == "mk":
        if args.family is None:
            raise BadParams("mk mode needs --family")
        rep = mk_test(G, qio.read_family(args.family, G.k), args.method, p=args.p, **opts)
    elif args.mode == "deviation":
        if args.l is None:
            raise BadParams("deviation mode needs --l")
        rep = deviation_stat(G, args.l, args.method, p=args.p, **opts)
    else:
        wopts = dict(budget=args.witness_budget, samples=args.samples, seed=args.seed, p=args.p)
        if args.mode == "disc":
            if args.family is None:
                raise BadParams("disc mode needs --family")
            W = _witnesses(args, G.n, qio.read_family(args.family, G.k))
            rep = disc_witness(G, W, **wopts)
        else:
            if args.l is None or not args.witness or len(args.witness) != 1:
                raise BadParams("cliquedisc mode needs --l and exactly one --witness file")
            size, wn, subs = qio.parse_subsets(_read(args.witness[0]))
            if size != args.l or wn != G.n:
                raise BadParams(f"witness header says ({size}, {wn}), expected ({args.l}, {G.n})")
            rep = cliquedisc_witness(G, subs, args.l, **wopts)
    d = rep.to_dict()
    lines = [f"{key} {d[key]}" for key in ("mode", "p_hat", "statistic", "expected", "deviation",
                                          "centered", "witness_size", "stderr") if d[key] is not None]
    _report(args, d, "\n".join(lines))


# experiment


def cmd_experiment(args):
    spec = ExperimentSpec.from_json(_read(args.spec))
    path = args.out or spec.output
    if path is None or path == "-":
        run_experiment(spec, sys.stdout)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            run_experiment(spec, fh)


# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasirand",
                                     description="Quasirandomness statistics for k-uniform hypergraphs.")
    parser.add_argument("--json", action="store_true", help="machine-readable JSON output")
    parser.add_argument("--budget-cells", type=int, default=DEFAULT_CELL_BUDGET,
                        help="largest n**|V| the naive engine may enumerate")
    parser.add_argument("--budget-factor-arity", type=int, default=None,
                        help="largest factor arity the elimination engine may create")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--budget-cells", type=int, default=argparse.SUPPRESS)
    common.add_argument("--budget-factor-arity", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a hypergraph (edge-list output)")
    g.add_argument("kind", choices=["random", "separation", "induced"])
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--p", type=float)
    g.add_argument("--family")
    g.add_argument("--m", type=int)
    g.add_argument("--in", dest="inp")
    g.add_argument("--seed", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    m = sub.add_parser("mk", parents=[common], help="build M_k[I] or count its vertices and edges")
    m.add_argument("action", choices=["build", "stats"])
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--family", required=True)
    m.add_argument("--out")
    m.set_defaults(func=cmd_mk)

    c = sub.add_parser("check", parents=[common], help="decide a structural property")
    c.add_argument("what", choices=["adapted", "strongly-adapted", "subset-free", "leq"])
    c.add_argument("--family", required=True)
    c.add_argument("--other", help="right-hand family for leq")
    c.add_argument("--k", type=int)
    c.add_argument("--graph")
    c.add_argument("--pattern")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("density", parents=[common], help="homomorphism density of a pattern")
    d.add_argument("--pattern", help="edge list or partite JSON")
    d.add_argument("--mk", help="use M_k[FAMILY] as the pattern")
    d.add_argument("--k", type=int, help="arity for --mk with a constant kernel")
    d.add_argument("--graph")
    d.add_argument("--kernel", help="const:P or centered:FILE[:P]")
    d.add_argument("--n", type=int, help="ground size for a constant kernel")
    d.add_argument("--method", default="elimination", choices=["naive", "elim", "elimination", "mc", "monte-carlo"])
    d.add_argument("--samples", type=int, default=10**6)
    d.add_argument("--seed", type=int)
    d.add_argument("--out")
    d.set_defaults(func=cmd_density)

    t = sub.add_parser("test", parents=[common], help="quasirandomness statistics for a graph")
    t.add_argument("--graph", required=True)
    t.add_argument("--family")
    t.add_argument("--mode", default="mk", choices=["mk", "disc", "cliquedisc", "deviation"])
    t.add_argument("--witness", nargs="+")
    t.add_argument("--l", type=int)
    t.add_argument("--p", type=float, help="target density (default: observed)")
    t.add_argument("--method", default="elimination", choices=["naive", "elim", "elimination", "mc", "monte-carlo"])
    t.add_argument("--samples", type=int, default=10**6)
    t.add_argument("--witness-budget", type=int, default=DEFAULT_WITNESS_BUDGET)
    t.add_argument("--seed", type=int)
    t.add_argument("--out")
    t.set_defaults(func=cmd_test)

    e = sub.add_parser("experiment", parents=[common], help="run an experiment spec to CSV")
    e.add_argument("--spec", required=True)
    e.add_argument("--out")
    e.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
