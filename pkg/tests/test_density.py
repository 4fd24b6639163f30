import itertools
import math

import numpy as np
import pytest

from quasirand.density import (
    density,
    elimination_order,
    inner_product_mk,
    norm_mk,
    t_eliminate,
    t_mk,
    t_montecarlo,
    t_naive,
)
from quasirand.errors import (
    AritiesDisagree,
    AsymmetricKernelOnUnorderedPattern,
    BudgetExceeded,
    FactorBudgetExceeded,
    MissingSigma,
    QuasirandError,
)
from quasirand.families import family_choose, validate
from quasirand.hypergraph import Hypergraph, PartiteHypergraph
from quasirand.kernel import Kernel
from quasirand.mk import build_mk

PATH = validate([(0, 1), (1, 2)], 3)


def _brute(pattern, f):
    """Direct sum over every map of the pattern's vertices, in plain Python."""
    if hasattr(pattern, "underlying"):
        pattern = pattern.underlying
    nv = pattern.num_vertices if isinstance(pattern, PartiteHypergraph) else pattern.n
    kernels = f if isinstance(f, list) else [f] * len(pattern.edges)
    total = 0.0
    for x in itertools.product(range(kernels[0].n), repeat=nv):
        prod = 1.0
        for g, e in zip(kernels, pattern.edges):
            prod *= g.table[tuple(x[v] for v in e)]
        total += prod
    return total / kernels[0].n ** nv


def test_constant_counts():
    f = Kernel.constant(4, 3, 0.3)
    M = build_mk(3, PATH)
    for rep in (t_naive(M, f), t_eliminate(M, f), t_montecarlo(M, f, 1000, seed=1)):
        assert rep.value == pytest.approx(0.3**4, abs=1e-12)
    assert t_montecarlo(M, f, 1000, seed=1).stderr == 0.0


def test_single_edge_counts_all_maps():
    G = Hypergraph(5, 2, ((0, 1), (1, 2)))
    edge = Hypergraph(2, 2, ((0, 1),))
    # two edges, two orientations each, over 25 ordered pairs
    assert t_naive(edge, Kernel.indicator(G)).value == pytest.approx(4 / 25)


@pytest.mark.parametrize("fam", [PATH, family_choose(3, 2), validate([(0, 1), (2,)], 3)])
def test_engines_match_brute_force(fam):
    rng = np.random.default_rng(3)
    f = Kernel.random(3, 3, rng)
    M = build_mk(3, fam)
    expect = _brute(M, f)
    assert t_naive(M, f).value == pytest.approx(expect, rel=1e-12, abs=1e-15)
    assert t_eliminate(M, f).value == pytest.approx(expect, rel=1e-9, abs=1e-15)


def test_mc_is_deterministic_and_within_error():
    rng = np.random.default_rng(5)
    f = Kernel.random(4, 2, rng)
    M = build_mk(2, family_choose(2, 1))
    a = t_montecarlo(M, f, 200_000, seed=11)
    b = t_montecarlo(M, f, 200_000, seed=11)
    assert a == b
    assert abs(a.value - t_naive(M, f).value) < 5 * a.stderr


def test_mc_single_sample_has_undefined_stderr():
    rep = t_montecarlo(build_mk(2, family_choose(2, 1)), Kernel.constant(3, 2, 0.5), 1, seed=0)
    assert math.isinf(rep.stderr)


def test_mc_needs_seed():
    with pytest.raises(QuasirandError):
        t_montecarlo(build_mk(2, family_choose(2, 1)), Kernel.constant(3, 2, 0.5), 10, seed=-1)


def test_budgets():
    f = Kernel.constant(10, 3, 0.5)
    M = build_mk(3, family_choose(3, 1))
    with pytest.raises(BudgetExceeded) as exc:
        t_naive(M, f, budget_cells=1000)
    assert exc.value.required == 10**12
    with pytest.raises(FactorBudgetExceeded) as exc:
        t_eliminate(M, f, max_arity=3)
    assert exc.value.required == 5


def test_elimination_order_widths():
    widths = {}
    for name, fam in {"path": PATH, "octa": family_choose(3, 2), "single": family_choose(3, 1)}.items():
        M = build_mk(3, fam)
        widths[name] = elimination_order(M.num_vertices, M.edges)[1]
    assert widths == {"path": 3, "octa": 4, "single": 5}


def test_asymmetric_kernel_on_plain_pattern():
    f = Kernel(np.arange(8.0).reshape(2, 2, 2))
    with pytest.raises(AsymmetricKernelOnUnorderedPattern):
        t_naive(Hypergraph(3, 3, ((0, 1, 2),)), f)


def test_kernel_shape_checks():
    with pytest.raises(AritiesDisagree):
        t_naive(build_mk(3, PATH), Kernel.constant(3, 2, 1.0))
    with pytest.raises(AritiesDisagree):
        t_naive(build_mk(3, PATH), [Kernel.constant(3, 3, 1.0)] * 3)


def test_inner_product_reduces_to_t_when_equal():
    rng = np.random.default_rng(9)
    f = Kernel.random(3, 2, rng)
    fam = family_choose(2, 1)
    sigmas = build_mk(2, fam).edge_labels
    ip = inner_product_mk(2, fam, {s: f for s in sigmas}).value
    assert ip == pytest.approx(t_mk(2, fam, f).value)
    with pytest.raises(MissingSigma):
        inner_product_mk(2, fam, {sigmas[0]: f})


def test_norm_of_constant():
    assert norm_mk(3, PATH, Kernel.constant(4, 3, -0.5)) == pytest.approx(0.5)


def test_method_aliases():
    f = Kernel.constant(3, 2, 0.5)
    M = build_mk(2, family_choose(2, 1))
    assert density(M, f, "elim").method == "elimination"
    assert density(M, f, "mc", seed=0, samples=10).method == "monte-carlo"
    with pytest.raises(QuasirandError):
        density(M, f, "exact")


def test_indicator_view_matches_table():
    G = Hypergraph(5, 3, ((0, 1, 2), (1, 3, 4)))
    c = Kernel.centered(G)
    for x in itertools.product(range(5), repeat=3):
        assert c(*x) == c.table[x]
