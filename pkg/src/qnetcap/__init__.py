"""Two-client capacity bounds and aggregated repeater plans for quantum networks.

The library sandwiches the optimal entanglement / secret-key yield of a
quantum network between the aggregated-repeater lower bound (edge-disjoint
Bell-pair paths) and the weighted min-cut converse bound, and ships an
exact density-matrix oracle for the swap-chain error bookkeeping.
"""

from .aggregator import (
    AsymptoticQCap,
    BellEdge,
    BellNetwork,
    FixedFraction,
    PerEdgeTable,
    ProtocolPlan,
    RateModel,
    Regime,
    SandwichReport,
    build_bell_network,
    lossy_gap_ratio,
    pair_count,
    plan,
    plan_to_dict,
    plan_to_dot,
    resolve_rate,
    sandwich_report,
    sandwich_report_to_dict,
)
from .capacity import (
    VACUOUS,
    EpsilonBudget,
    Vacuous,
    WeightKind,
    binary_entropy,
    edge_weight,
    epsilon_corrected_upper,
    is_vacuous,
    lossy_esq_upper,
    lossy_q_cap,
)
from .cuts_flows import (
    CapacityKind,
    CutResult,
    DisjointPath,
    FlowGraph,
    PathSet,
    bell_min_cut_bruteforce,
    check_path_set,
    flow_graph_from_bell,
    flow_graph_from_network,
    max_disjoint_paths,
    max_flow_value,
    min_cut,
    min_cut_bruteforce,
)
from .netmodel import (
    Bipartition,
    ChannelSpec,
    Count,
    CustomChannel,
    EdgeSpec,
    Frequency,
    LossyOptical,
    Network,
    NetworkFormatError,
    NodeId,
    Rate,
    UsageBudget,
    crossing_edges,
    export_dot,
    load_network,
    parse_network,
    serialize_network,
)
from .qsim_oracle import (
    DensityMatrix,
    SwapVerification,
    bell_fidelity,
    bell_pair,
    swap_chain,
    trace_distance,
    verify_error_chain,
    werner_pair,
)

__version__ = "0.1.0"
