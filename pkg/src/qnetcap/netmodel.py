"""Network topology model: nodes, channels, usage budgets, JSON ingestion, DOT export.

A network is a directed multigraph between two terminals (Alice and Bob)
plus intermediate relay nodes. Every edge carries a channel model and a
usage budget; cuts over the network are direction-blind, so the crossing
set of a bipartition contains edges leaving *and* entering the Alice side.

All types here are immutable after construction and safe to share across
concurrent workers.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from typing import Mapping, Optional, Union

NodeId = str


class NetworkFormatError(ValueError):
    """A network document is syntactically or semantically invalid."""


def _require_finite(name: str, value: float) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ValueError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class LossyOptical:
    """Pure-loss optical channel with transmittance eta.

    eta = 1 is rejected: it would give an infinite per-mode capacity.
    eta = 0 is a legal zero-capacity edge.
    """

    eta: float

    def __post_init__(self):
        eta = _require_finite("eta", self.eta)
        if not 0.0 <= eta < 1.0:
            raise ValueError(f"eta must be in [0, 1), got {eta}")
        object.__setattr__(self, "eta", eta)


@dataclass(frozen=True)
class CustomChannel:
    """User-supplied per-use weights: achievable rate and converse upper bound.

    q_cap > esq_upper breaks the sandwich guarantee; such channels are
    accepted but flagged (see ``sandwich_warning``), never silently.
    """

    q_cap: float
    esq_upper: float

    def __post_init__(self):
        q_cap = _require_finite("q_cap", self.q_cap)
        esq_upper = _require_finite("esq_upper", self.esq_upper)
        if q_cap < 0 or esq_upper < 0:
            raise ValueError(
                f"q_cap and esq_upper must be >= 0, got {q_cap}, {esq_upper}"
            )
        object.__setattr__(self, "q_cap", q_cap)
        object.__setattr__(self, "esq_upper", esq_upper)

    @property
    def sandwich_warning(self) -> bool:
        return self.q_cap > self.esq_upper


ChannelSpec = Union[LossyOptical, CustomChannel]


@dataclass(frozen=True)
class Count:
    """Budget as an absolute number of channel uses."""

    l_bar: float

    def __post_init__(self):
        v = _require_finite("count", self.l_bar)
        if v < 0:
            raise ValueError(f"count must be >= 0, got {v}")
        object.__setattr__(self, "l_bar", v)

    @property
    def value(self) -> float:
        return self.l_bar


@dataclass(frozen=True)
class Frequency:
    """Budget as uses per total channel use."""

    f_bar: float

    def __post_init__(self):
        v = _require_finite("freq", self.f_bar)
        if v < 0:
            raise ValueError(f"freq must be >= 0, got {v}")
        object.__setattr__(self, "f_bar", v)

    @property
    def value(self) -> float:
        return self.f_bar


@dataclass(frozen=True)
class Rate:
    """Budget as uses per unit time."""

    r_bar: float

    def __post_init__(self):
        v = _require_finite("rate", self.r_bar)
        if v < 0:
            raise ValueError(f"rate must be >= 0, got {v}")
        object.__setattr__(self, "r_bar", v)

    @property
    def value(self) -> float:
        return self.r_bar


UsageBudget = Union[Count, Frequency, Rate]


@dataclass(frozen=True)
class EdgeSpec:
    """Directed channel edge. Parallel edges are allowed, self-loops are not."""

    id: str
    tail: NodeId
    head: NodeId
    channel: ChannelSpec
    usage: UsageBudget

    def __post_init__(self):
        if not self.id or not isinstance(self.id, str):
            raise ValueError(f"edge id must be a non-empty string, got {self.id!r}")
        if self.tail == self.head:
            raise ValueError(f"edge {self.id!r}: self-loop at {self.tail!r} rejected")
        if not isinstance(self.channel, (LossyOptical, CustomChannel)):
            raise ValueError(f"edge {self.id!r}: unknown channel spec {self.channel!r}")
        if not isinstance(self.usage, (Count, Frequency, Rate)):
            raise ValueError(f"edge {self.id!r}: unknown usage budget {self.usage!r}")

    def endpoints(self) -> frozenset[NodeId]:
        return frozenset((self.tail, self.head))


@dataclass(frozen=True)
class Network:
    """Validated two-terminal network; edge order is preserved from input."""

    nodes: tuple[NodeId, ...]
    alice: NodeId
    bob: NodeId
    edges: tuple[EdgeSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        labels = set()
        for n in self.nodes:
            if not n or not isinstance(n, str):
                raise ValueError(f"node label must be a non-empty string, got {n!r}")
            if n in labels:
                raise ValueError(f"duplicate node label {n!r}")
            labels.add(n)
        if self.alice not in labels:
            raise ValueError(f"alice node {self.alice!r} is not declared")
        if self.bob not in labels:
            raise ValueError(f"bob node {self.bob!r} is not declared")
        if self.alice == self.bob:
            raise ValueError("alice and bob must be distinct nodes")
        ids = set()
        kinds = set()
        for e in self.edges:
            if e.id in ids:
                raise ValueError(f"duplicate edge id {e.id!r}")
            ids.add(e.id)
            for endpoint in (e.tail, e.head):
                if endpoint not in labels:
                    raise ValueError(
                        f"edge {e.id!r} references undeclared node {endpoint!r}"
                    )
            kinds.add(type(e.usage))
        if len(kinds) > 1:
            names = sorted(k.__name__ for k in kinds)
            raise ValueError(f"mixed usage budget variants {names}; use one per network")

    @property
    def node_set(self) -> frozenset[NodeId]:
        return frozenset(self.nodes)

    @property
    def budget_kind(self) -> Optional[type]:
        """The single budget variant used by the edges, or None if edgeless."""
        return type(self.edges[0].usage) if self.edges else None

    def edge_by_id(self, edge_id: str) -> EdgeSpec:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(f"no edge with id {edge_id!r}")


@dataclass(frozen=True)
class Bipartition:
    """Alice-side vertex set of a cut; complement is implicitly the Bob side."""

    v_a: frozenset[NodeId]

    def __post_init__(self):
        object.__setattr__(self, "v_a", frozenset(self.v_a))

    def validate(self, net: Network) -> None:
        if not self.v_a <= net.node_set:
            extra = sorted(self.v_a - net.node_set)
            raise ValueError(f"bipartition contains unknown nodes {extra}")
        if net.alice not in self.v_a:
            raise ValueError(f"bipartition must contain alice ({net.alice!r})")
        if net.bob in self.v_a:
            raise ValueError(f"bipartition must not contain bob ({net.bob!r})")

    def sorted_nodes(self) -> tuple[NodeId, ...]:
        return tuple(sorted(self.v_a))


def crossing_edges(net: Network, part: Bipartition) -> tuple[EdgeSpec, ...]:
    """Edges with exactly one endpoint on the Alice side, in input order.

    Both orientations cross: the cut is direction-blind even though the
    channels are directed.
    """
    part.validate(net)
    v_a = part.v_a
    return tuple(e for e in net.edges if (e.tail in v_a) != (e.head in v_a))


# --- JSON document format -------------------------------------------------

def _parse_channel(obj, edge_id: str) -> ChannelSpec:
    if not isinstance(obj, dict) or "type" not in obj:
        raise NetworkFormatError(f"edge {edge_id!r}: channel must be an object with a 'type'")
    ctype = obj["type"]
    try:
        if ctype == "lossy":
            if "eta" not in obj:
                raise ValueError("lossy channel requires 'eta'")
            return LossyOptical(obj["eta"])
        if ctype == "custom":
            if "q_cap" not in obj or "esq_upper" not in obj:
                raise ValueError("custom channel requires 'q_cap' and 'esq_upper'")
            return CustomChannel(obj["q_cap"], obj["esq_upper"])
    except ValueError as err:
        raise NetworkFormatError(f"edge {edge_id!r}: {err}") from err
    raise NetworkFormatError(f"edge {edge_id!r}: unknown channel type {ctype!r}")


def _parse_usage(obj, edge_id: str) -> UsageBudget:
    if not isinstance(obj, dict):
        raise NetworkFormatError(f"edge {edge_id!r}: usage must be an object")
    keys = set(obj) & {"count", "freq", "rate"}
    if len(keys) != 1:
        raise NetworkFormatError(
            f"edge {edge_id!r}: usage must carry exactly one of 'count', 'freq', 'rate'"
        )
    key = keys.pop()
    cls = {"count": Count, "freq": Frequency, "rate": Rate}[key]
    try:
        return cls(obj[key])
    except ValueError as err:
        raise NetworkFormatError(f"edge {edge_id!r}: {err}") from err


def parse_network(text: str) -> Network:
    """Parse the canonical JSON network document into a validated Network.

    Raises NetworkFormatError with line/position info on malformed JSON and
    with the offending node or edge named on semantic violations.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise NetworkFormatError(
            f"syntax error at line {err.lineno}, column {err.colno}: {err.msg}"
        ) from err
    if not isinstance(doc, dict):
        raise NetworkFormatError("top-level document must be an object")
    for key in ("nodes", "alice", "bob", "edges"):
        if key not in doc:
            raise NetworkFormatError(f"missing required key {key!r}")
    if not isinstance(doc["nodes"], list):
        raise NetworkFormatError("'nodes' must be a list of labels")
    if not isinstance(doc["edges"], list):
        raise NetworkFormatError("'edges' must be a list")

    edges = []
    for i, eobj in enumerate(doc["edges"]):
        if not isinstance(eobj, dict):
            raise NetworkFormatError(f"edge #{i}: must be an object")
        eid = eobj.get("id")
        if not isinstance(eid, str) or not eid:
            raise NetworkFormatError(f"edge #{i}: missing or empty 'id'")
        for key in ("tail", "head", "channel", "usage"):
            if key not in eobj:
                raise NetworkFormatError(f"edge {eid!r}: missing key {key!r}")
        channel = _parse_channel(eobj["channel"], eid)
        usage = _parse_usage(eobj["usage"], eid)
        try:
            edge = EdgeSpec(eid, eobj["tail"], eobj["head"], channel, usage)
        except ValueError as err:
            raise NetworkFormatError(str(err)) from err
        if isinstance(channel, CustomChannel) and channel.sandwich_warning:
            warnings.warn(
                f"edge {eid!r}: q_cap={channel.q_cap} exceeds esq_upper="
                f"{channel.esq_upper}; the sandwich guarantee does not apply",
                stacklevel=2,
            )
        edges.append(edge)

    try:
        return Network(tuple(doc["nodes"]), doc["alice"], doc["bob"], tuple(edges))
    except ValueError as err:
        raise NetworkFormatError(str(err)) from err


def _channel_to_obj(channel: ChannelSpec) -> dict:
    if isinstance(channel, LossyOptical):
        return {"type": "lossy", "eta": channel.eta}
    return {"type": "custom", "q_cap": channel.q_cap, "esq_upper": channel.esq_upper}


def _usage_to_obj(usage: UsageBudget) -> dict:
    if isinstance(usage, Count):
        return {"count": usage.l_bar}
    if isinstance(usage, Frequency):
        return {"freq": usage.f_bar}
    return {"rate": usage.r_bar}


def serialize_network(net: Network) -> str:
    """Canonical JSON text; parse(serialize(net)) is structurally identical to net."""
    doc = {
        "nodes": list(net.nodes),
        "alice": net.alice,
        "bob": net.bob,
        "edges": [
            {
                "id": e.id,
                "tail": e.tail,
                "head": e.head,
                "channel": _channel_to_obj(e.channel),
                "usage": _usage_to_obj(e.usage),
            }
            for e in net.edges
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def load_network(path) -> Network:
    """Read and parse a network file. IO failures surface as OSError."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_network(fh.read())


# --- DOT export -------------------------------------------------------------

def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _edge_label(e: EdgeSpec) -> str:
    if isinstance(e.channel, LossyOptical):
        chan = f"lossy eta={e.channel.eta:g}"
    else:
        chan = f"custom q={e.channel.q_cap:g} esq={e.channel.esq_upper:g}"
    usage = _usage_to_obj(e.usage)
    (ukey, uval), = usage.items()
    return f"{e.id}: {chan}, {ukey}={uval:g}"


def export_dot(net: Network, annotations: Optional[Mapping[str, str]] = None) -> str:
    """Render the network as a deterministic Graphviz digraph.

    When ``annotations`` is given, edges present in the map are drawn solid
    with the annotation appended to their label; absent edges are drawn
    dashed (unused).
    """
    lines = ["digraph qnet {", "  rankdir=LR;"]
    for n in net.nodes:
        shape = "doublecircle" if n in (net.alice, net.bob) else "circle"
        lines.append(f'  "{_dot_escape(n)}" [shape={shape}];')
    for e in net.edges:
        label = _edge_label(e)
        attrs = []
        if annotations is not None:
            note = annotations.get(e.id)
            if note is None:
                attrs.append("style=dashed")
            else:
                attrs.append("style=solid")
                label = f"{label} [{note}]"
        attrs.insert(0, f'label="{_dot_escape(label)}"')
        lines.append(
            f'  "{_dot_escape(e.tail)}" -> "{_dot_escape(e.head)}" [{", ".join(attrs)}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
