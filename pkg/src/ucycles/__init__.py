"""Universal cycle construction via cycle-joining trees and concatenation trees."""

from .words import (
    ap_concat,
    aperiodic_prefix,
    bracelet_of,
    format_word,
    is_asymmetric_bracelet,
    is_necklace,
    is_shorthand_perm,
    is_weak_order,
    necklace_of,
    parse_word,
    period,
    rotate_left,
    rotation_class,
)
from .cyclejoin import (
    Chain,
    ChainSuccessor,
    ConjugatePair,
    CycleJoiningTree,
    build_tree,
    pcr_rule,
    successor_down,
    successor_f1,
    successor_up,
)
from .bot import Bot, BotNode, count_bots
from .concat import (
    CollectSink,
    ConcatNode,
    ConcatTree,
    CountingSink,
    GenericChildOracle,
    StreamStats,
    acceptable_range,
    convert,
    oracle_children,
    rcl_sequence,
    stream_rcl,
)
from .families import (
    FamilySpec,
    db_family,
    make_family,
    orientable_family,
    perm_family,
    weak_family,
)
from .oracle import (
    Verdict,
    cyclic_equal,
    enumerate_set,
    iterate_successor,
    verify_universal_cycle,
)

__version__ = "0.1.0"
