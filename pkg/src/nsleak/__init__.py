"""Exact non-stochastic information-leakage measures for finite uncertain variables."""

from .errors import IncompatibleEvidenceError, InputError, NsleakError, SearchCapError
from .maximin import (
    Partition,
    common_variable,
    maximin_info,
    maximin_symmetry_check,
    one_shot_supremum,
    overlap_partition,
    zero_error_capacity_bound,
)
from .measures import (
    h0,
    h0_cond,
    i0,
    identifiability_bound,
    is_identifiable,
    leakage,
    maximal_leakage,
    min_epsilon,
    worst_attribute,
)
from .stochastic import (
    RationalDist,
    StochasticChannel,
    cond_guessing_entropy,
    guessing_entropy,
    maximal_stochastic_leakage,
    relate_maximal_leakages,
    stochastic_bf_leakage,
)
from .uv import (
    AttributeMap,
    Channel,
    Relation,
    apply_attribute,
    channel_from_relation,
    compose_chain,
    compose_markov,
    conditional,
    is_markov,
    is_unrelated,
    marginal,
)
from .values import LeakageValue, PrivacyBudget

__version__ = "0.1.0"
