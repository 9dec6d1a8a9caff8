"""Bell-pair network construction, protocol plans, and sandwich reports.

The aggregated protocol turns each channel edge into an integer stack of
Bell pairs (floor(floor(l) * R) per edge), extracts the maximum set of
edge-disjoint Alice-Bob paths through the resulting multigraph, and swaps
along each path. Its yield and the converse cut bound sandwich the best
achievable performance; on all-lossy networks the two sides differ by at
most a factor of two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Union

from .capacity import (
    Vacuous,
    WeightKind,
    edge_weight,
    epsilon_corrected_upper,
    is_vacuous,
)
from .cuts_flows import CutResult, PathSet, max_disjoint_paths, min_cut
from .netmodel import Count, EdgeSpec, Frequency, Network, NodeId, Rate, export_dot


class Regime(Enum):
    """Which asymptotic reading of the budgets a report uses."""

    PER_PROTOCOL = "per-protocol"
    PER_CHANNEL_USE = "per-use"
    PER_TIME = "per-time"

    @property
    def budget_cls(self) -> type:
        return {
            Regime.PER_PROTOCOL: Count,
            Regime.PER_CHANNEL_USE: Frequency,
            Regime.PER_TIME: Rate,
        }[self]


@dataclass(frozen=True)
class AsymptoticQCap:
    """Distillation reaches the two-way assisted capacity (R = q_cap)."""


@dataclass(frozen=True)
class FixedFraction:
    """Distillation reaches a fixed fraction alpha of q_cap, 0 < alpha <= 1."""

    alpha: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")


@dataclass(frozen=True)
class PerEdgeTable:
    """Explicit per-edge Bell-pair rates, keyed by edge id."""

    rates: Mapping[str, float]

    def __post_init__(self):
        object.__setattr__(self, "rates", dict(self.rates))
        for eid, r in self.rates.items():
            if not (math.isfinite(r) and r >= 0):
                raise ValueError(f"rate for edge {eid!r} must be finite and >= 0, got {r}")


RateModel = Union[AsymptoticQCap, FixedFraction, PerEdgeTable]


def resolve_rate(edge: EdgeSpec, model: RateModel) -> float:
    """Bell pairs per channel use for one edge under the given rate model."""
    if isinstance(model, AsymptoticQCap):
        return edge_weight(edge, WeightKind.Q_CAP)
    if isinstance(model, FixedFraction):
        return model.alpha * edge_weight(edge, WeightKind.Q_CAP)
    if isinstance(model, PerEdgeTable):
        if edge.id not in model.rates:
            raise ValueError(f"rate table has no entry for edge {edge.id!r}")
        return model.rates[edge.id]
    raise ValueError(f"unknown rate model {model!r}")


@dataclass(frozen=True)
class BellEdge:
    """One Bell pair, an undirected unit edge inheriting its parent's endpoints."""

    id: str
    u: NodeId
    v: NodeId
    parent: str


@dataclass(frozen=True)
class BellNetwork:
    """Undirected multigraph of distributed Bell pairs."""

    vertices: tuple[NodeId, ...]
    alice: NodeId
    bob: NodeId
    bell_edges: tuple[BellEdge, ...]
    pair_counts: Mapping[str, int]  # parent edge id -> pairs generated

    def __post_init__(self):
        object.__setattr__(self, "pair_counts", dict(self.pair_counts))


def pair_count(edge: EdgeSpec, model: RateModel) -> int:
    """floor(floor(l) * R): the conservative integer reading of the pair stack."""
    if not isinstance(edge.usage, Count):
        raise ValueError(
            f"edge {edge.id!r} carries a {type(edge.usage).__name__} budget; "
            "Bell-pair counts are defined only for Count budgets"
        )
    uses = math.floor(edge.usage.l_bar)
    return math.floor(uses * resolve_rate(edge, model))


def build_bell_network(net: Network, rate_model: RateModel = AsymptoticQCap()) -> BellNetwork:
    """Expand every edge into its integer stack of unit Bell edges.

    Bell edge ids are '<parent>#<index>', so the construction is
    deterministic and each pair is traceable to its parent channel.
    """
    counts = {}
    bells = []
    for e in net.edges:
        n = pair_count(e, rate_model)
        counts[e.id] = n
        for i in range(n):
            bells.append(BellEdge(f"{e.id}#{i}", e.tail, e.head, e.id))
    return BellNetwork(net.nodes, net.alice, net.bob, tuple(bells), counts)


@dataclass(frozen=True)
class ProtocolPlan:
    """Executable aggregated-repeater plan: paths, swap schedules, error budget."""

    m: int
    paths: PathSet
    swap_schedules: tuple[tuple[NodeId, ...], ...]
    epsilon: float
    error_budget: float
    counted_edges: int
    unused_pairs: Mapping[str, int]  # parent edge id -> pairs left idle

    def __post_init__(self):
        object.__setattr__(self, "unused_pairs", dict(self.unused_pairs))


def plan(
    net: Network,
    epsilon: float = 0.0,
    rate_model: RateModel = AsymptoticQCap(),
    *,
    count_all_edges: bool = False,
) -> ProtocolPlan:
    """Build the aggregated protocol plan for a Count-budgeted network.

    The error budget is epsilon times the number of edges that actually
    generate pairs (edges with zero pairs run no distribution protocol);
    pass count_all_edges=True for the literal every-edge count.
    """
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    bell = build_bell_network(net, rate_model)
    m, paths = max_disjoint_paths(bell)
    schedules = tuple(p.nodes[1:-1] for p in paths)

    parent_of = {b.id: b.parent for b in bell.bell_edges}
    consumed: dict[str, int] = {eid: 0 for eid in bell.pair_counts}
    for eid in paths.consumed_edge_ids():
        consumed[parent_of[eid]] += 1
    unused = {eid: bell.pair_counts[eid] - consumed[eid] for eid in bell.pair_counts}

    counted = (
        len(net.edges)
        if count_all_edges
        else sum(1 for n in bell.pair_counts.values() if n > 0)
    )
    return ProtocolPlan(m, paths, schedules, epsilon, counted * epsilon, counted, unused)


@dataclass(frozen=True)
class SandwichReport:
    """Achievable lower bound and converse upper bounds for one regime."""

    regime: Regime
    epsilon: float
    lower: float
    upper_esq: float
    upper_eps_corrected: Union[float, Vacuous]
    lower_witness: CutResult
    upper_witness: CutResult


def sandwich_report(net: Network, regime: Regime, epsilon: float = 0.0) -> SandwichReport:
    """Two-sided bounds on the optimal performance under the given regime.

    The lower bound weights cuts by q_cap (budgets floored in the
    per-protocol regime); the upper bound weights them by esq_upper with
    un-floored budgets. The finite-error correction applies only to the
    per-protocol regime; the asymptotic regimes take their error to zero.
    """
    if net.budget_kind is not None and net.budget_kind is not regime.budget_cls:
        raise ValueError(
            f"regime {regime.value!r} needs {regime.budget_cls.__name__} budgets, "
            f"network carries {net.budget_kind.__name__}"
        )
    floor = regime is Regime.PER_PROTOCOL
    lower_cut = min_cut(net, WeightKind.Q_CAP, floor_budgets=floor)
    upper_cut = min_cut(net, WeightKind.ESQ_UPPER)
    if regime is Regime.PER_PROTOCOL:
        corrected = epsilon_corrected_upper(upper_cut.value, epsilon)
    else:
        corrected = upper_cut.value
    return SandwichReport(
        regime, epsilon, lower_cut.value, upper_cut.value, corrected, lower_cut, upper_cut
    )


def lossy_gap_ratio(report: SandwichReport) -> float:
    """Converse/achievable ratio; at most 2 on all-lossy networks."""
    if report.lower <= 0:
        raise ValueError(
            "gap ratio undefined: lower bound is zero"
            + (" while the upper bound is positive" if report.upper_esq > 0 else "")
        )
    return report.upper_esq / report.lower


def plan_to_dot(net: Network, protocol_plan: ProtocolPlan) -> str:
    """DOT rendering with consumed pair fractions; fully idle edges are dashed."""
    consumed: dict[str, int] = {}
    for p in protocol_plan.paths:
        for bell_id in p.bell_edges:
            parent = bell_id.rsplit("#", 1)[0]
            consumed[parent] = consumed.get(parent, 0) + 1
    annotations = {}
    for e in net.edges:
        k = consumed.get(e.id, 0)
        total = k + protocol_plan.unused_pairs.get(e.id, 0)
        if k > 0:
            annotations[e.id] = f"{k}/{total} used"
    return export_dot(net, annotations)


# --- JSON views -------------------------------------------------------------

def cut_to_dict(cut: CutResult) -> dict:
    return {
        "value": cut.value,
        "v_a": list(cut.v_a.sorted_nodes()),
        "crossing": list(cut.crossing),
    }


def sandwich_report_to_dict(report: SandwichReport) -> dict:
    vacuous = is_vacuous(report.upper_eps_corrected)
    return {
        "regime": report.regime.value,
        "epsilon": report.epsilon,
        "lower": report.lower,
        "upper_esq": report.upper_esq,
        "upper_eps_corrected": None if vacuous else report.upper_eps_corrected,
        "vacuous": vacuous,
        "lower_witness": cut_to_dict(report.lower_witness),
        "upper_witness": cut_to_dict(report.upper_witness),
    }


def plan_to_dict(protocol_plan: ProtocolPlan) -> dict:
    return {
        "m": protocol_plan.m,
        "epsilon": protocol_plan.epsilon,
        "error_budget": protocol_plan.error_budget,
        "counted_edges": protocol_plan.counted_edges,
        "paths": [
            {"nodes": list(p.nodes), "bell_edges": list(p.bell_edges)}
            for p in protocol_plan.paths
        ],
        "swap_schedules": [list(s) for s in protocol_plan.swap_schedules],
        "unused_pairs": {k: v for k, v in sorted(protocol_plan.unused_pairs.items())},
    }
