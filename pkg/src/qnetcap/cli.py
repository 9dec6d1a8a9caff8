"""Command-line surface: validate, bound, plan, simulate-swap, sweep.

All outputs are deterministic for identical invocations: JSON is emitted
with sorted keys, CSV rows are sorted by grid value, and floats use a
fixed format. Exit codes: 0 success, 1 domain/validation error, 2 IO
error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from typing import Optional, Sequence

from .aggregator import (
    AsymptoticQCap,
    FixedFraction,
    PerEdgeTable,
    RateModel,
    Regime,
    lossy_gap_ratio,
    plan,
    plan_to_dict,
    plan_to_dot,
    sandwich_report,
    sandwich_report_to_dict,
)
from .capacity import is_vacuous
from .netmodel import Count, Frequency, LossyOptical, Network, Rate, load_network
from .qsim_oracle import (
    MAX_CHAIN_LENGTH,
    bell_pair,
    trace_distance,
    verify_error_chain,
    werner_pair,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2

_REGIMES = {r.value: r for r in Regime}
_BUDGET_REGIME = {Count: Regime.PER_PROTOCOL, Frequency: Regime.PER_CHANNEL_USE, Rate: Regime.PER_TIME}
SWEEP_FIELDS = ("lower", "upper_esq", "upper_eps_corrected", "ratio", "m")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 is reserved for IO failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def _print_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _infer_regime(net: Network, flag: Optional[str]) -> Regime:
    if flag is not None:
        return _REGIMES[flag]
    kind = net.budget_kind
    if kind is None:
        return Regime.PER_CHANNEL_USE
    return _BUDGET_REGIME[kind]


def _parse_rate_model(spec: str) -> RateModel:
    if spec == "asymptotic":
        return AsymptoticQCap()
    if spec.startswith("fraction:"):
        return FixedFraction(float(spec.split(":", 1)[1]))
    if spec.startswith("table:"):
        path = spec.split(":", 1)[1]
        with open(path, "r", encoding="utf-8") as fh:
            table = json.load(fh)
        if not isinstance(table, dict):
            raise ValueError(f"rate table {path!r} must be a JSON object")
        return PerEdgeTable({str(k): float(v) for k, v in table.items()})
    raise ValueError(
        f"unknown rate model {spec!r}; use 'asymptotic', 'fraction:<alpha>' or 'table:<file>'"
    )


def cmd_validate(args) -> int:
    net = load_network(args.network)
    kind = net.budget_kind.__name__.lower() if net.budget_kind else "none"
    print(f"ok: {len(net.nodes)} nodes, {len(net.edges)} edges, {kind} budgets")
    return EXIT_OK


def cmd_bound(args) -> int:
    net = load_network(args.network)
    regime = _infer_regime(net, args.regime)
    report = sandwich_report(net, regime, args.epsilon)
    doc = sandwich_report_to_dict(report)
    if args.weights == "qcap":
        for key in ("upper_esq", "upper_eps_corrected", "vacuous", "upper_witness"):
            doc.pop(key)
    elif args.weights == "esq":
        for key in ("lower", "lower_witness"):
            doc.pop(key)
    _print_json(doc)
    return EXIT_OK


def cmd_plan(args) -> int:
    net = load_network(args.network)
    rate_model = _parse_rate_model(args.rate_model)
    result = plan(net, args.epsilon, rate_model, count_all_edges=args.count_all_edges)
    _print_json(plan_to_dict(result))
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(plan_to_dot(net, result))
    return EXIT_OK


def _chain_from_args(args) -> list[float]:
    if args.chain is not None:
        try:
            values = [float(v) for v in args.chain.split(",") if v.strip() != ""]
        except ValueError as err:
            raise ValueError(f"bad --chain value: {err}") from err
        if not values:
            raise ValueError("--chain must list at least one Werner parameter")
        return values
    if args.from_plan is None:
        raise ValueError("give either --chain or --from-plan")
    with open(args.from_plan, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    paths = doc.get("paths", [])
    if not 0 <= args.path_index < len(paths):
        raise ValueError(f"path index {args.path_index} out of range (plan has {len(paths)})")
    hops = len(paths[args.path_index]["bell_edges"])
    return [args.pair_p] * hops


def cmd_simulate_swap(args) -> int:
    chain = _chain_from_args(args)
    if len(chain) > MAX_CHAIN_LENGTH:
        raise ValueError(
            f"chain of {len(chain)} links exceeds the exact-simulation cap of "
            f"{MAX_CHAIN_LENGTH}; for longer chains use the analytic Werner closure "
            "p' = product(p_i)"
        )
    pairs = [werner_pair(p) for p in chain]
    if args.eps is not None:
        eps_values = [float(v) for v in args.eps.split(",")]
        if len(eps_values) == 1:
            eps_values = eps_values * len(chain)
        if len(eps_values) != len(chain):
            raise ValueError(
                f"--eps needs 1 or {len(chain)} values, got {len(eps_values)}"
            )
    else:
        # default budget: each pair's own distance from a perfect Bell pair
        target = bell_pair()
        eps_values = [trace_distance(rho, target) for rho in pairs]
    verdict = verify_error_chain(pairs, eps_values)
    _print_json(
        {
            "chain": chain,
            "final_fidelity": verdict.final_fidelity,
            "trace_distance": verdict.distance,
            "budget": verdict.budget,
            "pass": verdict.passed,
            "per_pair_distances": list(verdict.per_pair_distances),
            "per_pair_eps": list(verdict.per_pair_eps),
            "precondition_violations": list(verdict.precondition_violations),
        }
    )
    return EXIT_OK


# --- sweep ------------------------------------------------------------------

def _parse_grid(args) -> list[float]:
    if args.values is not None:
        grid = [float(v) for v in args.values.split(",") if v.strip() != ""]
    elif args.grid is not None:
        parts = args.grid.split(":")
        if len(parts) != 3:
            raise ValueError(f"--grid must be start:stop:step, got {args.grid!r}")
        start, stop, step = (float(p) for p in parts)
        if step == 0 or not all(math.isfinite(v) for v in (start, stop, step)):
            raise ValueError(f"bad grid {args.grid!r}")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        grid = [start + i * step for i in range(max(n, 0))]
    else:
        raise ValueError("give either --grid or --values")
    if not grid:
        raise ValueError("sweep grid is empty")
    if not all(math.isfinite(v) for v in grid):
        raise ValueError("sweep grid contains non-finite values")
    increasing = all(a < b for a, b in zip(grid, grid[1:]))
    decreasing = all(a > b for a, b in zip(grid, grid[1:]))
    if not (increasing or decreasing):
        raise ValueError("sweep grid must be strictly monotone")
    return grid


def _network_at(net: Network, param: str, edge_id: Optional[str], value: float) -> Network:
    if param == "eta":
        target = net.edge_by_id(edge_id)
        if not isinstance(target.channel, LossyOptical):
            raise ValueError(f"edge {edge_id!r} is not a lossy channel")
        new_edges = tuple(
            dataclasses.replace(e, channel=LossyOptical(value)) if e.id == edge_id else e
            for e in net.edges
        )
        return dataclasses.replace(net, edges=new_edges)
    if param == "budget-scale":
        if value < 0:
            raise ValueError(f"budget scale must be >= 0, got {value}")
        new_edges = tuple(
            dataclasses.replace(e, usage=type(e.usage)(e.usage.value * value))
            for e in net.edges
        )
        return dataclasses.replace(net, edges=new_edges)
    return net  # epsilon sweeps leave the network untouched


def _sweep_row(net: Network, args, fields: Sequence[str], value: float) -> list[str]:
    epsilon = value if args.param == "epsilon" else args.epsilon
    point_net = _network_at(net, args.param, args.edge, value)
    regime = _infer_regime(point_net, None)
    report = sandwich_report(point_net, regime, epsilon)
    row = [_fmt(value)]
    for name in fields:
        if name == "lower":
            row.append(_fmt(report.lower))
        elif name == "upper_esq":
            row.append(_fmt(report.upper_esq))
        elif name == "upper_eps_corrected":
            corrected = report.upper_eps_corrected
            if regime is not Regime.PER_PROTOCOL:
                corrected = report.upper_esq  # asymptotic regimes take eps -> 0
            row.append("vacuous" if is_vacuous(corrected) else _fmt(corrected))
        elif name == "ratio":
            if report.lower > 0:
                row.append(_fmt(lossy_gap_ratio(report)))
            else:
                row.append("nan")
        elif name == "m":
            row.append(str(plan(point_net, epsilon).m))
    return row


def cmd_sweep(args) -> int:
    net = load_network(args.network)
    fields = [f.strip() for f in args.fields.split(",") if f.strip()]
    if not fields:
        raise ValueError("--fields must name at least one output field")
    unknown = [f for f in fields if f not in SWEEP_FIELDS]
    if unknown:
        raise ValueError(f"unknown sweep fields {unknown}; choose from {list(SWEEP_FIELDS)}")
    grid = sorted(_parse_grid(args))
    if args.param == "eta":
        if args.edge is None:
            raise ValueError("--param eta requires --edge naming the swept edge")
        if not all(0.0 <= v < 1.0 for v in grid):
            raise ValueError("eta grid values must lie in [0, 1)")
    if args.param == "epsilon" and grid[0] < 0:
        raise ValueError("epsilon grid values must be >= 0")
    if "m" in fields and net.budget_kind is not Count:
        raise ValueError("field 'm' needs Count budgets (protocol plans)")

    lines = [",".join([args.param] + fields)]
    for value in grid:
        lines.append(",".join(_sweep_row(net, args, fields, value)))
    text = "\r\n".join(lines) + "\r\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qnetcap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a network file, exit 0 if valid")
    p.add_argument("network")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bound", help="print the sandwich report for a network")
    p.add_argument("network")
    p.add_argument("--regime", choices=sorted(_REGIMES), default=None,
                   help="default: inferred from the budget variant")
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--weights", choices=("both", "qcap", "esq"), default="both")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("plan", help="emit the aggregated repeater protocol plan")
    p.add_argument("network")
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--rate-model", default="asymptotic",
                   help="asymptotic | fraction:<alpha> | table:<file.json>")
    p.add_argument("--dot", default=None, help="also write an annotated DOT file")
    p.add_argument("--count-all-edges", action="store_true",
                   help="error budget counts every edge, including pairless ones")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("simulate-swap", help="exact swap-chain oracle on Werner pairs")
    p.add_argument("--chain", default=None, help="comma list of Werner parameters")
    p.add_argument("--from-plan", default=None, help="plan JSON emitted by 'plan'")
    p.add_argument("--path-index", type=int, default=0)
    p.add_argument("--pair-p", type=float, default=1.0,
                   help="Werner parameter per link when using --from-plan")
    p.add_argument("--eps", default=None,
                   help="per-pair budgets (one value or a comma list); "
                        "default: each pair's own Bell distance")
    p.set_defaults(func=cmd_simulate_swap)

    p = sub.add_parser("sweep", help="CSV scan of report fields over a parameter grid")
    p.add_argument("network")
    p.add_argument("--param", choices=("eta", "epsilon", "budget-scale"), required=True)
    p.add_argument("--edge", default=None, help="edge id (required for --param eta)")
    p.add_argument("--grid", default=None, help="start:stop:step (inclusive)")
    p.add_argument("--values", default=None, help="explicit comma list of grid values")
    p.add_argument("--fields", default="lower,upper_esq,ratio",
                   help=f"comma list from {','.join(SWEEP_FIELDS)}")
    p.add_argument("--epsilon", type=float, default=0.0,
                   help="fixed epsilon when sweeping another parameter")
    p.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as err:  # includes NetworkFormatError
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as err:
        print(f"io error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
