"""Seeded random networks and Bell multigraphs for property tests and scans.

Every generator takes an explicit random.Random; default_seed() supplies
the fixed package seed, which the QNETCAP_SEED environment variable
overrides.
"""

from __future__ import annotations

import os
import random
from typing import Optional

from .aggregator import BellEdge, BellNetwork
from .netmodel import Count, CustomChannel, EdgeSpec, Frequency, LossyOptical, Network

DEFAULT_SEED = 1601


def default_seed() -> int:
    env = os.environ.get("QNETCAP_SEED")
    return int(env) if env else DEFAULT_SEED


def _node_labels(rng: random.Random, max_nodes: int) -> list[str]:
    n_intermediate = rng.randint(0, max(0, max_nodes - 2))
    return ["A", "B"] + [f"C{i + 1}" for i in range(n_intermediate)]


def random_lossy_network(
    rng: random.Random,
    *,
    max_nodes: int = 10,
    max_edges: int = 25,
    eta_range: tuple[float, float] = (0.05, 0.95),
    budget_cls: type = Frequency,
    max_budget: float = 5.0,
) -> Network:
    """All-lossy random multigraph between A and B; may be disconnected."""
    nodes = _node_labels(rng, max_nodes)
    n_edges = rng.randint(1, max_edges)
    edges = []
    for i in range(n_edges):
        tail, head = rng.sample(nodes, 2)
        eta = rng.uniform(*eta_range)
        budget = budget_cls(rng.uniform(0.0, max_budget))
        edges.append(EdgeSpec(f"e{i}", tail, head, LossyOptical(eta), budget))
    return Network(tuple(nodes), "A", "B", tuple(edges))


def random_custom_network(
    rng: random.Random,
    *,
    max_nodes: int = 10,
    max_edges: int = 25,
    max_weight: float = 4.0,
    budget_cls: type = Frequency,
    max_budget: float = 5.0,
) -> Network:
    """Random multigraph with arbitrary (q_cap <= esq_upper) edge weights."""
    nodes = _node_labels(rng, max_nodes)
    n_edges = rng.randint(1, max_edges)
    edges = []
    for i in range(n_edges):
        tail, head = rng.sample(nodes, 2)
        q = rng.uniform(0.0, max_weight)
        esq = q * rng.uniform(1.0, 2.0)
        budget = budget_cls(rng.uniform(0.0, max_budget))
        edges.append(EdgeSpec(f"e{i}", tail, head, CustomChannel(q, esq), budget))
    return Network(tuple(nodes), "A", "B", tuple(edges))


def random_count_network(
    rng: random.Random,
    *,
    max_nodes: int = 10,
    max_edges: int = 12,
    max_count: int = 6,
) -> Network:
    """Random lossy network with eta = 0.5 (unit q_cap) and integer counts."""
    nodes = _node_labels(rng, max_nodes)
    n_edges = rng.randint(1, max_edges)
    edges = []
    for i in range(n_edges):
        tail, head = rng.sample(nodes, 2)
        edges.append(
            EdgeSpec(f"e{i}", tail, head, LossyOptical(0.5), Count(rng.randint(0, max_count)))
        )
    return Network(tuple(nodes), "A", "B", tuple(edges))


def random_bell_network(
    rng: random.Random,
    *,
    max_nodes: int = 10,
    max_pairs: int = 30,
) -> BellNetwork:
    """Random Bell multigraph with synthetic parent ids g0, g1, ..."""
    nodes = _node_labels(rng, max_nodes)
    n_pairs = rng.randint(0, max_pairs)
    counts: dict[str, int] = {}
    endpoints: dict[str, tuple[str, str]] = {}
    for _ in range(n_pairs):
        u, v = rng.sample(nodes, 2)
        key = f"g{len(counts)}"
        for existing, (eu, ev) in endpoints.items():
            if {eu, ev} == {u, v}:
                key = existing
                break
        if key not in counts:
            counts[key] = 0
            endpoints[key] = (u, v)
        counts[key] += 1
    bells = []
    for parent in sorted(counts):
        u, v = endpoints[parent]
        for i in range(counts[parent]):
            bells.append(BellEdge(f"{parent}#{i}", u, v, parent))
    return BellNetwork(tuple(nodes), "A", "B", tuple(bells), counts)
