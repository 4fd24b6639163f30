"""Batch runner producing convergence tables as CSV.

A spec is a JSON object::

    {"generator": {"kind": "random" | "separation", "k": 3, "p": 0.5,
                   "family": "0.1,1.2", "seeds": [1, 2, 3]},
     "statistic": {"mode": "mk" | "deviation" | "disc", "family": "0.1,1.2",
                   "value": "t" | "centered", "l": 2, "method": "elim",
                   "samples": 1000000, "witness_density": 0.5},
     "n": [20, 40, 60],
     "output": "table.csv"}

One row per ``(n, seed)`` in schedule order, seeds inner. The statistic's own
randomness (MC samples, random witness sets) is seeded with the row's seed.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import IO, Optional

import numpy as np

from . import _backend
from .errors import BadParams
from .generate import gen_random, gen_separation, random_witness_sets
from .io import read_family
from .quasitest import WitnessFamily, deviation_stat, disc_witness, mk_test

COLUMNS = ("n", "seed", "statistic", "expected", "deviation", "stderr", "runtime")
GENERATORS = ("random", "separation")
MODES = ("mk", "deviation", "disc")


@dataclass
class ExperimentSpec:
    kind: str
    k: int
    p: float
    seeds: list[int]
    n_schedule: list[int]
    mode: str = "mk"
    family: Optional[str] = None
    gen_family: Optional[str] = None
    value: str = "t"
    l: Optional[int] = None
    method: str = "elimination"
    samples: int = 10**6
    witness_density: float = 0.5
    output: Optional[str] = None

    def __post_init__(self):
        if self.kind not in GENERATORS:
            raise BadParams(f"unknown generator kind {self.kind!r}; expected one of {GENERATORS}")
        if self.mode not in MODES:
            raise BadParams(f"unknown statistic mode {self.mode!r}; expected one of {MODES}")
        if self.value not in ("t", "centered"):
            raise BadParams("statistic value must be 't' or 'centered'")
        if not self.seeds:
            raise BadParams("the seed list is empty")
        if any(int(s) < 0 for s in self.seeds):
            raise BadParams("seeds must be non-negative")
        if not self.n_schedule:
            raise BadParams("the n schedule is empty")
        if any(b <= a for a, b in zip(self.n_schedule, self.n_schedule[1:])):
            raise BadParams(f"the n schedule must be strictly increasing, got {self.n_schedule}")
        if self.kind == "separation" and not self.gen_family:
            raise BadParams("the separation generator needs a family")
        if self.mode in ("mk", "disc") and not self.family:
            raise BadParams(f"mode {self.mode!r} needs a family")
        if self.mode == "deviation" and self.l is None:
            raise BadParams("mode 'deviation' needs a level l")

    @classmethod
    def from_json(cls, obj) -> "ExperimentSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            gen, stat, ns = obj["generator"], obj["statistic"], obj["n"]
            return cls(
                kind=gen["kind"], k=int(gen["k"]), p=float(gen["p"]),
                seeds=[int(s) for s in gen["seeds"]], n_schedule=[int(n) for n in ns],
                gen_family=gen.get("family"), mode=stat.get("mode", "mk"),
                family=stat.get("family"), value=stat.get("value", "t"),
                l=stat.get("l"), method=stat.get("method", "elimination"),
                samples=int(stat.get("samples", 10**6)),
                witness_density=float(stat.get("witness_density", 0.5)),
                output=obj.get("output"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise BadParams(f"bad experiment spec: {exc!r}") from None


def _cell(spec: ExperimentSpec, n: int, seed: int) -> dict:
    start = time.perf_counter()
    if spec.kind == "random":
        G = gen_random(n, spec.k, spec.p, seed)
    else:
        G = gen_separation(n, spec.k, read_family(spec.gen_family, spec.k), spec.p, seed)
    opts = {"samples": spec.samples, "seed": seed}
    if spec.mode == "mk":
        rep = mk_test(G, read_family(spec.family, spec.k), spec.method, **opts)
        stat, expected = (rep.centered, 0.0) if spec.value == "centered" else (rep.statistic, rep.expected)
    elif spec.mode == "deviation":
        rep = deviation_stat(G, spec.l, spec.method, **opts)
        stat, expected = rep.statistic, 0.0
    else:
        fam = read_family(spec.family, spec.k)
        # a stream distinct from the generator's, which also starts from ``seed``
        wseed = int(np.random.SeedSequence([seed, 1]).generate_state(1)[0])
        W = WitnessFamily.from_mapping(n, fam, random_witness_sets(n, fam, spec.witness_density, wseed))
        rep = disc_witness(G, W, seed=seed)
        stat, expected = rep.statistic, rep.expected
    return {
        "n": n, "seed": seed, "statistic": repr(float(stat)), "expected": repr(float(expected)),
        "deviation": repr(float(stat - expected)),
        "stderr": "" if rep.stderr is None else repr(float(rep.stderr)),
        "runtime": f"{time.perf_counter() - start:.6f}",
    }


def run_experiment(spec: ExperimentSpec, out: Optional[IO[str]] = None,
                   threads: Optional[int] = None) -> list[dict]:
    """Run every ``(n, seed)`` cell and write CSV rows in schedule order.

    Each row is flushed as soon as it and all rows before it are done.
    """
    cells = [(n, s) for n in spec.n_schedule for s in spec.seeds]
    writer = None
    if out is not None:
        writer = csv.DictWriter(out, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        out.flush()
    rows = []
    workers = min(threads or _backend.threads(), len(cells))

    def emit(row):
        rows.append(row)
        if writer is not None:
            writer.writerow(row)
            out.flush()

    if workers > 1:
        # map yields in submission order, whatever order cells finish in
        with ThreadPoolExecutor(workers) as ex:
            for row in ex.map(lambda c: _cell(spec, *c), cells):
                emit(row)
    else:
        for c in cells:
            emit(_cell(spec, *c))
    return rows
