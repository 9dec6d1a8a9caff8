"""Per-edge weight formulas and the finite-error correction of the converse bound.

Two weight functions are attached to every edge: the two-way assisted
capacity (achievable, the lower-bound weight) and the squashed-entanglement
upper bound (converse weight). For a pure-loss optical channel of
transmittance eta these have the closed forms

    q_cap(eta)      = log2(1 / (1 - eta))          [ebits per mode]
    esq_upper(eta)  = log2((1 + eta) / (1 - eta))  [ebits per mode]

so esq_upper <= 2 * q_cap for every eta: the converse weight never exceeds
twice the achievable weight on lossy edges.

All logarithms are base 2 (units of ebits / secret bits) and one channel
use means one optical mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

from .netmodel import CustomChannel, EdgeSpec, LossyOptical


class WeightKind(Enum):
    """Selects which per-edge weight enters a cut value."""

    Q_CAP = "qcap"
    ESQ_UPPER = "esq"


class Vacuous:
    """Sentinel for a corrected bound that carries no information.

    Past the vacuity threshold the prefactor of the corrected bound changes
    sign, so no finite number is a faithful answer; this sentinel plays the
    role of "no constraint".
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "VACUOUS"


VACUOUS = Vacuous()

# 16 * sqrt(eps) >= 1  <=>  eps >= 1/256; both sides of the equivalence are
# exact in binary floating point.
VACUITY_THRESHOLD = 1.0 / 256.0


def is_vacuous(value) -> bool:
    return value is VACUOUS


@dataclass(frozen=True)
class EpsilonBudget:
    """Trace-norm error budget with its vacuity flag."""

    epsilon: float

    def __post_init__(self):
        eps = self.epsilon
        if not isinstance(eps, (int, float)) or isinstance(eps, bool):
            raise ValueError(f"epsilon must be a real number, got {eps!r}")
        eps = float(eps)
        if not math.isfinite(eps) or eps < 0:
            raise ValueError(f"epsilon must be finite and >= 0, got {eps}")
        object.__setattr__(self, "epsilon", eps)

    @property
    def vacuous_flag(self) -> bool:
        return self.epsilon >= VACUITY_THRESHOLD


def binary_entropy(x: float) -> float:
    """Binary entropy in bits; the limits at 0 and 1 are defined as 0."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary_entropy is defined on [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def lossy_q_cap(eta: float) -> float:
    """Two-way assisted capacity of a pure-loss channel, ebits per mode."""
    if not 0.0 <= eta < 1.0:
        raise ValueError(f"eta must be in [0, 1), got {eta}")
    return math.log2(1.0 / (1.0 - eta))


def lossy_esq_upper(eta: float) -> float:
    """Squashed-entanglement upper bound of a pure-loss channel, ebits per mode."""
    if not 0.0 <= eta < 1.0:
        raise ValueError(f"eta must be in [0, 1), got {eta}")
    return math.log2((1.0 + eta) / (1.0 - eta))


def edge_weight(edge: EdgeSpec, kind: WeightKind) -> float:
    """Per-use weight of an edge under the selected weight function."""
    channel = edge.channel
    if isinstance(channel, LossyOptical):
        if kind is WeightKind.Q_CAP:
            return lossy_q_cap(channel.eta)
        return lossy_esq_upper(channel.eta)
    if isinstance(channel, CustomChannel):
        return channel.q_cap if kind is WeightKind.Q_CAP else channel.esq_upper
    raise ValueError(f"unknown channel spec {channel!r}")


def epsilon_corrected_upper(
    cut_value: float, epsilon: float
) -> Union[float, Vacuous]:
    """Loosen a cut value into the finite-error upper bound.

    Returns (cut_value + 4*h(2*sqrt(eps))) / (1 - 16*sqrt(eps)), or VACUOUS
    once 16*sqrt(eps) >= 1 (eps >= 1/256), where the bound degenerates.
    At eps = 0 the bare cut value is returned unchanged.
    """
    if not math.isfinite(cut_value) or cut_value < 0:
        raise ValueError(f"cut value must be finite and >= 0, got {cut_value}")
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    root = math.sqrt(epsilon)
    if 16.0 * root >= 1.0:
        return VACUOUS
    return (cut_value + 4.0 * binary_entropy(2.0 * root)) / (1.0 - 16.0 * root)
