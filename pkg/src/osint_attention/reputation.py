"""Reputation stock and neighbour-coupled updates."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Dict, Hashable, Mapping

from .network import SocialGraph

ISOLATED_RULES = ("self", "zero")


def delta_rho(eta: float, accuracy: float, zeta: float, errors: float) -> float:
    if min(eta, accuracy, zeta, errors) < 0:
        raise ValueError("delta_rho inputs must be nonnegative")
    return eta * accuracy - zeta * errors


def clamp01(x: float) -> float:
    return 0.0 if x < 0.0 else 1.0 if x > 1.0 else x


@dataclass(frozen=True)
class ReputationLedger:
    """Immutable snapshot of per-actor reputation.

    ``isolated`` picks what an actor without verification neighbours couples
    to: its own reputation ("self") or nothing at all ("zero").
    """

    rho: Mapping[Hashable, float]
    lam: float
    graph: SocialGraph
    isolated: str = "self"

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("lambda must be nonnegative")
        if self.isolated not in ISOLATED_RULES:
            raise ValueError(f"isolated must be one of {ISOLATED_RULES}")
        for k, v in self.rho.items():
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"rho[{k!r}] must lie in [0, 1]")

    def neighbor_mean(self, i) -> float:
        peers = [j for j in self.graph.neighbors(i) if j in self.rho] if i in self.graph else []
        if not peers:
            return self.rho[i] if self.isolated == "self" else 0.0
        return math.fsum(self.rho[j] for j in peers) / len(peers)

    def with_graph(self, graph: SocialGraph) -> "ReputationLedger":
        return replace(self, graph=graph)


def update(ledger: ReputationLedger, i, drho: float) -> float:
    return clamp01(ledger.rho[i] + ledger.lam * ledger.neighbor_mean(i) * drho)


def step_all(ledger: ReputationLedger, drho_map: Mapping[Hashable, float]) -> ReputationLedger:
    missing = set(ledger.rho) - set(drho_map)
    if missing:
        raise KeyError(f"no delta-rho for actors {sorted(map(str, missing))}")
    # every neighbour mean reads the pre-step snapshot
    new: Dict[Hashable, float] = {i: update(ledger, i, drho_map[i]) for i in ledger.rho}
    return replace(ledger, rho=new)
