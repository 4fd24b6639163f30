"""Quasirandomness notions for k-uniform hypergraphs indexed by subset-free families."""

from ._backend import BACKEND
from .density import (
    DensityReport,
    density,
    inner_product_mk,
    norm_mk,
    t_eliminate,
    t_mk,
    t_montecarlo,
    t_naive,
)
from .families import (
    SubsetFreeCollection,
    family_choose,
    family_deviation,
    family_partition,
    leq,
    leq_strong,
    leq_witness,
    maximalize,
    validate,
)
from .hypergraph import (
    Hypergraph,
    PartiteHypergraph,
    adapted_ordering,
    is_adapted,
    is_strongly_adapted,
    shadow,
)
from .generate import gen_random, gen_separation, sample_induced
from .io import emit_hypergraph, parse_hypergraph
from .kernel import Kernel
from .mk import MkHypergraph, build_mk, mk_stats
from .quasitest import (
    DiscReport,
    WitnessFamily,
    cliquedisc_witness,
    deviation_stat,
    disc_witness,
    kkk_member,
    mk_test,
)

__version__ = "0.1.0"
