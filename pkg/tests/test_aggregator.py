import dataclasses
import random

import pytest

from qnetcap import (
    AsymptoticQCap,
    Count,
    CustomChannel,
    EdgeSpec,
    FixedFraction,
    Frequency,
    LossyOptical,
    Network,
    PerEdgeTable,
    Rate,
    Regime,
    WeightKind,
    bell_min_cut_bruteforce,
    build_bell_network,
    is_vacuous,
    lossy_gap_ratio,
    min_cut_bruteforce,
    pair_count,
    plan,
    plan_to_dot,
    resolve_rate,
    sandwich_report,
)
from qnetcap.generators import random_count_network, random_lossy_network

DIAMOND_LOWER = 3.3219280948873623479
DIAMOND_UPPER = 4.7548875021634685444
DIAMOND_RATIO = 1.4313637641589873119
# direct evaluations of the closed-form ratio esq/q at fixed eta
RATIO_ETA_001 = 1.9900495862236765404
RATIO_ETA_099 = 1.1494265382048533251


def count_edge(eid, u, v, l_bar, eta=0.5):
    return EdgeSpec(eid, u, v, LossyOptical(eta), Count(l_bar))


def test_pair_count_asymptotic():
    edge = count_edge("e", "A", "B", 10)  # eta 0.5 -> q_cap exactly 1
    assert pair_count(edge, AsymptoticQCap()) == 10


def test_pair_count_fixed_fraction():
    edge = count_edge("e", "A", "B", 10)
    assert pair_count(edge, FixedFraction(0.75)) == 7


def test_pair_count_zero_budget():
    assert pair_count(count_edge("e", "A", "B", 0), AsymptoticQCap()) == 0


def test_pair_count_floors_fractional_budgets():
    # floor(floor(2.9) * 1.0) = 2
    assert pair_count(count_edge("e", "A", "B", 2.9), AsymptoticQCap()) == 2


def test_pair_count_requires_count_budgets():
    edge = EdgeSpec("e", "A", "B", LossyOptical(0.5), Frequency(1.0))
    with pytest.raises(ValueError, match="Count"):
        pair_count(edge, AsymptoticQCap())


def test_resolve_rate_table_missing_edge():
    edge = count_edge("e", "A", "B", 1)
    with pytest.raises(ValueError, match="no entry"):
        resolve_rate(edge, PerEdgeTable({"other": 1.0}))
    assert resolve_rate(edge, PerEdgeTable({"e": 2.5})) == 2.5


def test_build_bell_network_ids_are_deterministic(triangle_net):
    bell = build_bell_network(triangle_net)
    assert bell.pair_counts == {"ac": 3, "cb": 2, "ab": 1}
    assert [b.id for b in bell.bell_edges] == [
        "ac#0", "ac#1", "ac#2", "cb#0", "cb#1", "ab#0",
    ]
    assert all(b.parent == b.id.split("#")[0] for b in bell.bell_edges)


def test_plan_triangle_via_per_edge_table():
    # unit budgets with an explicit rate table: floor(1 * r) pairs per edge
    edges = (
        count_edge("ac", "A", "C", 1),
        count_edge("cb", "C", "B", 1),
        count_edge("ab", "A", "B", 1),
    )
    net = Network(("A", "C", "B"), "A", "B", edges)
    table = PerEdgeTable({"ac": 3.0, "cb": 2.0, "ab": 1.0})
    result = plan(net, 0.01, table)
    assert result.m == 3
    assert sorted(result.swap_schedules) == [(), ("C",), ("C",)]
    assert result.error_budget == pytest.approx(3 * 0.01)
    assert result.unused_pairs == {"ac": 1, "cb": 0, "ab": 0}


def test_plan_triangle_counts(triangle_net):
    result = plan(triangle_net, 0.001)
    assert result.m == 3
    assert result.error_budget == pytest.approx(3 * 0.001)
    assert sorted(result.swap_schedules) == [(), ("C",), ("C",)]


def test_plan_disconnected_network():
    edges = (count_edge("ac", "A", "C", 2),)
    net = Network(("A", "C", "B"), "A", "B", edges)
    result = plan(net, 0.01)
    assert result.m == 0
    assert len(result.paths) == 0
    assert result.counted_edges == 1  # the A-C edge still distributes pairs
    assert result.error_budget == pytest.approx(0.01)
    assert result.unused_pairs == {"ac": 2}


def test_plan_error_budget_flag_restores_literal_edge_count():
    edges = (count_edge("ac", "A", "C", 2), count_edge("cb", "C", "B", 0))
    net = Network(("A", "C", "B"), "A", "B", edges)
    tightened = plan(net, 0.1)
    assert tightened.counted_edges == 1
    literal = plan(net, 0.1, count_all_edges=True)
    assert literal.counted_edges == 2
    assert literal.error_budget == pytest.approx(0.2)


def test_plan_parallel_edges_no_swaps():
    net = Network(("A", "B"), "A", "B", (count_edge("ab", "A", "B", 5),))
    result = plan(net, 0.0)
    assert result.m == 5
    assert all(s == () for s in result.swap_schedules)
    assert all(p.nodes == ("A", "B") for p in result.paths)


def test_pair_conservation(triangle_net):
    result = plan(triangle_net, 0.0)
    bell = build_bell_network(triangle_net)
    consumed = {}
    for p in result.paths:
        for bid in p.bell_edges:
            parent = bid.rsplit("#", 1)[0]
            consumed[parent] = consumed.get(parent, 0) + 1
    for parent, total in bell.pair_counts.items():
        assert consumed.get(parent, 0) + result.unused_pairs[parent] == total


def test_sandwich_report_diamond(diamond_net):
    report = sandwich_report(diamond_net, Regime.PER_CHANNEL_USE)
    assert report.lower == pytest.approx(DIAMOND_LOWER, abs=1e-9)
    assert report.upper_esq == pytest.approx(DIAMOND_UPPER, abs=1e-9)
    assert report.upper_eps_corrected == report.upper_esq  # asymptotic regime
    assert lossy_gap_ratio(report) == pytest.approx(DIAMOND_RATIO, abs=1e-6)
    assert lossy_gap_ratio(report) <= 2.0


def test_sandwich_report_single_edge(single_edge_net):
    report = sandwich_report(single_edge_net, Regime.PER_CHANNEL_USE)
    assert report.lower == pytest.approx(1.0, abs=1e-12)
    assert report.upper_esq == pytest.approx(1.5849625007211562, abs=1e-9)


def test_sandwich_report_regime_mismatch(diamond_net):
    with pytest.raises(ValueError, match="regime"):
        sandwich_report(diamond_net, Regime.PER_PROTOCOL)


def test_sandwich_report_zero_budgets():
    edges = (
        EdgeSpec("e", "A", "B", LossyOptical(0.9), Frequency(0.0)),
    )
    net = Network(("A", "B"), "A", "B", edges)
    report = sandwich_report(net, Regime.PER_CHANNEL_USE)
    assert report.lower == 0.0
    assert report.upper_esq == 0.0
    with pytest.raises(ValueError, match="undefined"):
        lossy_gap_ratio(report)


def test_per_protocol_floors_only_the_lower_bound():
    edges = (
        EdgeSpec("e", "A", "B", CustomChannel(1.0, 1.5), Count(2.7)),
    )
    net = Network(("A", "B"), "A", "B", edges)
    report = sandwich_report(net, Regime.PER_PROTOCOL, epsilon=0.0)
    assert report.lower == pytest.approx(2.0)  # floor(2.7) * 1.0
    assert report.upper_esq == pytest.approx(2.7 * 1.5)  # un-floored
    assert report.upper_eps_corrected == report.upper_esq  # eps = 0


def test_per_protocol_epsilon_correction_applies():
    edges = (count_edge("e", "A", "B", 4),)
    net = Network(("A", "B"), "A", "B", edges)
    report = sandwich_report(net, Regime.PER_PROTOCOL, epsilon=1e-4)
    expected = (report.upper_esq + 4 * 0.14144054254182064515) / 0.84
    assert report.upper_eps_corrected == pytest.approx(expected, abs=1e-9)
    vacuous = sandwich_report(net, Regime.PER_PROTOCOL, epsilon=0.01)
    assert is_vacuous(vacuous.upper_eps_corrected)


def test_gap_ratio_closed_form_extremes():
    for eta, expected in ((0.01, RATIO_ETA_001), (0.99, RATIO_ETA_099)):
        net = Network(
            ("A", "B"),
            "A",
            "B",
            (EdgeSpec("e", "A", "B", LossyOptical(eta), Frequency(1.0)),),
        )
        report = sandwich_report(net, Regime.PER_CHANNEL_USE)
        ratio = lossy_gap_ratio(report)
        assert ratio == pytest.approx(expected, abs=1e-6)
        assert ratio <= 2.0


def test_factor_two_sandwich_on_random_lossy_networks():
    rng = random.Random(31)
    for _ in range(200):
        net = random_lossy_network(rng, max_nodes=10, max_edges=25)
        report = sandwich_report(net, Regime.PER_CHANNEL_USE)
        assert report.lower <= report.upper_esq + 1e-9
        assert report.upper_esq <= 2 * report.lower + 1e-9


def test_sandwich_order_on_custom_weight_networks():
    # q_cap <= esq_upper on every edge implies lower <= upper_esq (no factor-2 claim)
    from qnetcap.generators import random_custom_network

    rng = random.Random(35)
    for _ in range(100):
        net = random_custom_network(rng, max_nodes=9, max_edges=16)
        report = sandwich_report(net, Regime.PER_CHANNEL_USE)
        assert report.lower <= report.upper_esq + 1e-9


def test_plan_m_matches_bruteforce_cut_on_random_count_networks():
    rng = random.Random(32)
    for _ in range(80):
        net = random_count_network(rng, max_nodes=9, max_edges=10, max_count=4)
        result = plan(net, 0.0)
        bell = build_bell_network(net)
        assert result.m == bell_min_cut_bruteforce(bell).value
        # and conservation holds exactly
        consumed = sum(len(p.bell_edges) for p in result.paths)
        assert consumed + sum(result.unused_pairs.values()) == len(bell.bell_edges)


def test_budget_scaling_covariance():
    rng = random.Random(33)
    for _ in range(40):
        net = random_lossy_network(rng, max_nodes=8, max_edges=14)
        c = rng.uniform(0.25, 4.0)
        scaled = dataclasses.replace(
            net,
            edges=tuple(
                dataclasses.replace(e, usage=Frequency(e.usage.f_bar * c)) for e in net.edges
            ),
        )
        base = sandwich_report(net, Regime.PER_CHANNEL_USE)
        grown = sandwich_report(scaled, Regime.PER_CHANNEL_USE)
        assert grown.lower == pytest.approx(c * base.lower, rel=1e-9, abs=1e-12)
        assert grown.upper_esq == pytest.approx(c * base.upper_esq, rel=1e-9, abs=1e-12)
        # uniform scaling leaves the witness bipartitions unchanged
        assert grown.lower_witness.v_a == base.lower_witness.v_a
        assert grown.upper_witness.v_a == base.upper_witness.v_a


def test_per_time_report_scales_like_per_use():
    rng = random.Random(34)
    c = 1000.0
    for _ in range(20):
        net = random_lossy_network(rng, max_nodes=8, max_edges=12)
        timed = dataclasses.replace(
            net,
            edges=tuple(
                dataclasses.replace(e, usage=Rate(e.usage.f_bar * c)) for e in net.edges
            ),
        )
        per_use = sandwich_report(net, Regime.PER_CHANNEL_USE)
        per_time = sandwich_report(timed, Regime.PER_TIME)
        assert per_time.lower == pytest.approx(c * per_use.lower, rel=1e-9, abs=1e-9)
        assert per_time.upper_esq == pytest.approx(c * per_use.upper_esq, rel=1e-9, abs=1e-9)


def test_plan_to_dot_marks_unused_edges_dashed(triangle_net):
    result = plan(triangle_net, 0.0)
    dot = plan_to_dot(triangle_net, result)
    # all three parents carry consumed pairs here, so all are solid
    assert dot.count("style=solid") == 3
    assert "2/3 used" in dot  # ac consumes 2 of 3
    lonely = Network(
        ("A", "C", "B"),
        "A",
        "B",
        (count_edge("ac", "A", "C", 2), count_edge("cb", "C", "B", 1)),
    )
    lonely_plan = plan(lonely, 0.0)
    lonely_dot = plan_to_dot(lonely, lonely_plan)
    assert lonely_dot.count("style=solid") == 2
    assert "1/2 used" in lonely_dot


def test_fig2_analog_plan(fig2_net):
    result = plan(fig2_net, 0.001)
    bell = build_bell_network(fig2_net)
    brute = bell_min_cut_bruteforce(bell)
    assert result.m == brute.value == 7
    witness = set(brute.v_a.sorted_nodes())
    assert witness == {"A", "C1", "C3"}
    # weighted per-protocol cut agrees with the bell-graph cut here
    weighted = min_cut_bruteforce(fig2_net, WeightKind.Q_CAP, floor_budgets=True)
    assert weighted.value == pytest.approx(7.0)
