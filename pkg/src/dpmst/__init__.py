"""Differentially private minimum spanning trees under edge-weight privacy.

Releases approximate MSTs for graphs with public topology and private edge
weights (l-infinity neighborhood, zCDP or pure DP), with a fast simulated
noisy-argmax selection, naive and post-processing baselines, and a
benchmark CLI (``python -m dpmst.cli``).
"""

from .cutqueue import HAVE_EXTENSION, CutQueue
from .errors import (
    AlreadyActive,
    DisconnectedGraph,
    DpMstError,
    EmptyCandidates,
    InvalidParam,
    NotActive,
    RankOutOfRange,
    UnknownEdge,
    UnknownGroup,
)
from .graph import (
    Graph,
    RunCounters,
    TreeResult,
    WeightAssignment,
    exact_mst,
    gen_complete_graph,
    is_spanning_tree,
    read_edge_list,
    tree_weight,
    write_edge_list,
)
from .mst import (
    BudgetLedger,
    PrivacySpec,
    fast_pamst,
    pamst_baseline,
    post_process_gaussian,
    post_process_laplace,
    utility_bound,
)
from .noise import RngStream
from .rnm import (
    Candidate,
    GroupPartition,
    RnmParams,
    discretize,
    per_step_privacy,
    rnm_fast,
    rnm_grouped,
    rnm_naive,
    sample_bottom_tail,
)

__version__ = "0.1.0"
