"""On-line chain partitioning of posets, played as adversarial games."""

from .errors import *  # noqa: F401,F403
from .poset import (
    Poset, width, max_antichain, min_chain_partition, hma, is_high, ma_join, ma_meet,
    is_antichain, is_chain,
)
from .cores import RegularBipartite, core, is_core, classify_core
from .interval import IntervalRep, is_interval_order, realize
from .game import (
    Arrive, Assign, ChainTranscript, check_transcript, referee_online, referee_upgrowing,
    LocalBoard, LocalMove, referee_local,
)
from .algorithms.first_fit import FirstFit
from .algorithms.upgrowing import UpGrowingInterval
from .algorithms.local import LocalCoreDisjoint, color_middle
from .algorithms.composed import ComposedPartitioner

__version__ = "0.1.0"
