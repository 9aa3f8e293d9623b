"""Model parameters, actor presets, and scenario files.

Scenario files are YAML documents whose sections mirror the config types::

    seed: 7
    horizon: 50
    event_rate: 1.0
    actors:
      - {id: kyiv_unit, role: FrontlineSoldier}
      - {id: analyst, role: RemoteAnalyst, beta: 0.3}
    game: {levels: {H: 3, M: 2, L: 1, B: 0}, c_F: 1.0, q0: 0.8}
    network: {theta0: 0.1, theta1: 0.42, theta2: 0.38, kappa: 0.4}
    graph: {edges: [[kyiv_unit, analyst]]}
    virality: {v0: 3.5, decay: 0.4, classes: [tank_kill]}
    interventions:
      - {kind: VerificationSubsidy, magnitude: 0.5, rho_threshold: 0.5}
    simulation: {strategy: {mode: UtilityBestResponse}}

Every section except ``actors`` may be omitted. Unknown keys are rejected.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

import yaml

from .game import PayoffLevels, PayoffSpec
from .network import NetworkParams
from .reputation import ISOLATED_RULES
from .utility import UtilityForms
from .virality import ViralityParams

SEED_ENV_VAR = "OSINT_SIM_SEED"
DEFAULT_SEED = 0

# heatmap scale -> cost/monetisation coefficient
RISK_TO_GAMMA = 0.05
AFFORDANCE_TO_DELTA = 0.05


class ConfigError(ValueError):
    pass


class ScenarioParseError(ConfigError):
    pass


class ScenarioValidationError(ConfigError):
    def __init__(self, field_path: str, message: str):
        self.field = field_path
        super().__init__(f"{field_path}: {message}" if field_path else message)


class Role(str, Enum):
    FRONTLINE_SOLDIER = "FrontlineSoldier"
    REMOTE_ANALYST = "RemoteAnalyst"
    AGGREGATOR = "Aggregator"


# (platform_affordance, risk_exposure) from the actor-typology heatmap
ROLE_COORDINATES = {
    Role.FRONTLINE_SOLDIER: (2.0, 9.0),
    Role.REMOTE_ANALYST: (6.0, 4.0),
    Role.AGGREGATOR: (8.0, 2.0),
}


@dataclass(frozen=True)
class ActorProfile:
    id: str
    role: Role
    alpha: float = 1.0
    beta: float = 0.5
    gamma: float = 0.0
    delta: float = 0.0
    tau: float = 1.8
    eta: float = 1.0
    zeta: float = 1.0
    platform_affordance: float = 0.0
    risk_exposure: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "role", Role(self.role))
        for name in ("alpha", "beta", "gamma", "delta", "eta", "zeta"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if not self.tau > 1:
            raise ValueError("tau must exceed 1")
        for name in ("platform_affordance", "risk_exposure"):
            if not 0 <= getattr(self, name) <= 10:
                raise ValueError(f"{name} must lie in [0, 10]")


def default_profile(role: Role, actor_id: Optional[str] = None) -> ActorProfile:
    role = Role(role)
    affordance, risk = ROLE_COORDINATES[role]
    return ActorProfile(
        id=actor_id or role.value,
        role=role,
        gamma=RISK_TO_GAMMA * risk,
        delta=AFFORDANCE_TO_DELTA * affordance,
        platform_affordance=affordance,
        risk_exposure=risk,
    )


class InterventionKind(str, Enum):
    VERIFICATION_SUBSIDY = "VerificationSubsidy"
    REPUTATION_BANKING = "ReputationBanking"
    NETWORK_GOVERNANCE = "NetworkGovernance"


@dataclass(frozen=True)
class Intervention:
    kind: InterventionKind
    magnitude: float = 0.0
    rho_threshold: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", InterventionKind(self.kind))
        if self.magnitude < 0:
            raise ValueError("magnitude must be nonnegative")
        if not 0 <= self.rho_threshold <= 1:
            raise ValueError("rho_threshold must lie in [0, 1]")


class StrategyMode(str, Enum):
    DOMINANT_OR_PURE = "DominantOrPure"
    MIXED_INDIFFERENCE = "MixedIndifference"
    UTILITY_BEST_RESPONSE = "UtilityBestResponse"
    FIXED_PROBABILITY = "FixedProbability"


@dataclass(frozen=True)
class StrategyConfig:
    mode: StrategyMode = StrategyMode.DOMINANT_OR_PURE
    p: float = 0.5  # publish probability, FixedProbability only

    def __post_init__(self):
        object.__setattr__(self, "mode", StrategyMode(self.mode))
        if not 0 <= self.p <= 1:
            raise ValueError("p must lie in [0, 1]")


@dataclass(frozen=True)
class SimulationSettings:
    """Engine knobs that the model leaves to the implementer."""

    strategy: StrategyConfig = field(default_factory=StrategyConfig)
    arrival: str = "fixed"
    verification_delay: int = 1
    base_pool: float = 1.0
    lam: float = 0.1
    initial_rho: float = 0.5
    initial_rho_by_actor: Mapping[str, float] = field(default_factory=dict)
    isolated: str = "self"
    effort_publish: float = 1.0
    effort_verify: float = 2.0
    forced_delays: Mapping[str, int] = field(default_factory=dict)
    forms: UtilityForms = field(default_factory=UtilityForms)

    def __post_init__(self):
        if self.arrival not in ("fixed", "poisson"):
            raise ValueError("arrival must be 'fixed' or 'poisson'")
        if self.verification_delay < 1:
            raise ValueError("verification_delay must be at least 1")
        if self.base_pool < 0:
            raise ValueError("base_pool must be nonnegative")
        if self.lam < 0:
            raise ValueError("lambda must be nonnegative")
        if self.isolated not in ISOLATED_RULES:
            raise ValueError(f"isolated must be one of {list(ISOLATED_RULES)}")
        for r in (self.initial_rho, *self.initial_rho_by_actor.values()):
            if not 0 <= r <= 1:
                raise ValueError("initial reputation must lie in [0, 1]")
        if self.effort_publish < 0 or self.effort_verify < 0:
            raise ValueError("efforts must be nonnegative")
        if any(d < 0 for d in self.forced_delays.values()):
            raise ValueError("forced delays must be nonnegative")


@dataclass(frozen=True)
class ScenarioConfig:
    actors: Tuple[ActorProfile, ...]
    game: PayoffSpec = field(default_factory=lambda: PayoffSpec(c_F=1.0, q0=0.8))
    network: NetworkParams = field(default_factory=NetworkParams)
    virality: ViralityParams = field(default_factory=ViralityParams)
    horizon: int = 50
    seed: int = DEFAULT_SEED
    interventions: Tuple[Intervention, ...] = ()
    event_rate: float = 1.0
    # None means every actor follows every other actor
    edges: Optional[Tuple[Tuple[str, str], ...]] = None
    simulation: SimulationSettings = field(default_factory=SimulationSettings)

    def __post_init__(self):
        if not self.actors:
            raise ScenarioValidationError("actors", "at least one actor is required")
        ids = [a.id for a in self.actors]
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        if dupes:
            raise ScenarioValidationError("actors", f"actor ids must be unique; duplicated: {dupes}")
        if self.horizon < 0:
            raise ScenarioValidationError("horizon", "horizon must be nonnegative")
        if not self.event_rate > 0:
            raise ScenarioValidationError("event_rate", "event_rate must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ScenarioValidationError("seed", "seed must be a 64-bit unsigned integer")
        known = set(ids)
        for k, (u, v) in enumerate(self.edges or ()):
            if u not in known or v not in known:
                raise ScenarioValidationError(f"graph.edges[{k}]", f"unknown actor in edge ({u}, {v})")
            if u == v:
                raise ScenarioValidationError(f"graph.edges[{k}]", "self-loops are not allowed")
        sim = self.simulation
        for section, mapping in (("initial_rho_by_actor", sim.initial_rho_by_actor),
                                 ("forced_delays", sim.forced_delays)):
            stray = sorted(set(mapping) - known)
            if stray:
                raise ScenarioValidationError(f"simulation.{section}", f"unknown actors {stray}")

    def actor(self, actor_id: str) -> ActorProfile:
        for a in self.actors:
            if a.id == actor_id:
                return a
        raise KeyError(actor_id)

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)


# ---------------------------------------------------------------------------
# dict <-> config

_ACTOR_KEYS = {f.name for f in dataclasses.fields(ActorProfile)}


def _check_keys(data: Any, allowed, where: str) -> Mapping:
    if data is None:
        return {}
    if not isinstance(data, Mapping):
        raise ScenarioValidationError(where, "expected a mapping")
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ScenarioValidationError(where, f"unknown keys {unknown}")
    return data


def _build(cls, data: Mapping, where: str, **extra):
    try:
        return cls(**data, **extra)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ScenarioValidationError):
            raise
        raise ScenarioValidationError(where, str(exc)) from None


def _field_names(cls, drop=()):
    return {f.name for f in dataclasses.fields(cls)} - set(drop)


def _actor_from_dict(raw: Any, where: str) -> ActorProfile:
    data = dict(_check_keys(raw, _ACTOR_KEYS, where))
    if "id" not in data or "role" not in data:
        raise ScenarioValidationError(where, "actor needs 'id' and 'role'")
    try:
        role = Role(data["role"])
    except ValueError:
        raise ScenarioValidationError(f"{where}.role",
                                      f"role must be one of {[r.value for r in Role]}") from None
    base = default_profile(role, str(data["id"]))
    data["id"] = str(data["id"])
    merged = {**dataclasses.asdict(base), **data}
    # pinpoint the offending field before the generic constructor message
    if merged["tau"] <= 1:
        raise ScenarioValidationError(f"{where}.tau", "tau must exceed 1")
    return _build(ActorProfile, merged, where)


def _game_from_dict(raw: Any) -> PayoffSpec:
    data = dict(_check_keys(raw, _field_names(PayoffSpec) - {"levels"} | {"levels", "drho"}, "game"))
    levels = _build(PayoffLevels, _check_keys(data.pop("levels", None), _field_names(PayoffLevels),
                                              "game.levels"), "game.levels")
    drho = _check_keys(data.pop("drho", None),
                       {"pub_both", "pub_solo", "wait_solo", "wait_both_A", "wait_both_B"}, "game.drho")
    for k, v in drho.items():
        data[f"drho_{k}"] = v
    data.setdefault("c_F", 1.0)
    data.setdefault("q0", 0.8)
    return _build(PayoffSpec, data, "game", levels=levels)


def _simulation_from_dict(raw: Any) -> SimulationSettings:
    allowed = _field_names(SimulationSettings) - {"lam"} | {"lambda"}
    data = dict(_check_keys(raw, allowed, "simulation"))
    if "lambda" in data:
        data["lam"] = data.pop("lambda")
    data["strategy"] = _build(StrategyConfig, _check_keys(data.get("strategy"), {"mode", "p"},
                                                          "simulation.strategy"),
                              "simulation.strategy")
    forms = _check_keys(data.get("forms"), {"f", "T", "R", "M"}, "simulation.forms")
    data["forms"] = _build(UtilityForms, {f"{k}_kind": v for k, v in forms.items()},
                           "simulation.forms")
    for key in ("initial_rho_by_actor", "forced_delays"):
        if key in data:
            data[key] = {str(k): v for k, v in _check_keys(data[key], data[key] or {},
                                                            f"simulation.{key}").items()}
    return _build(SimulationSettings, data, "simulation")


def scenario_from_dict(data: Any, seed_default: Optional[int] = None) -> ScenarioConfig:
    top = _check_keys(data, {"actors", "game", "network", "graph", "virality", "horizon", "seed",
                             "interventions", "event_rate", "simulation"}, "")
    actors_raw = top.get("actors")
    if not isinstance(actors_raw, list) or not actors_raw:
        raise ScenarioValidationError("actors", "a non-empty list of actors is required")
    actors = tuple(_actor_from_dict(a, f"actors[{k}]") for k, a in enumerate(actors_raw))

    network = _build(NetworkParams, _check_keys(top.get("network"), _field_names(NetworkParams),
                                                "network"), "network")
    vir = dict(_check_keys(top.get("virality"), _field_names(ViralityParams), "virality"))
    if "classes" in vir:
        vir["classes"] = tuple(str(c) for c in vir["classes"])
    virality = _build(ViralityParams, vir, "virality")

    graph = _check_keys(top.get("graph"), {"edges"}, "graph")
    edges = None
    if graph.get("edges") is not None:
        try:
            edges = tuple((str(u), str(v)) for u, v in graph["edges"])
        except (TypeError, ValueError):
            raise ScenarioValidationError("graph.edges", "edges must be [u, v] pairs") from None

    ivs_raw = top.get("interventions") or []
    if not isinstance(ivs_raw, list):
        raise ScenarioValidationError("interventions", "expected a list")
    interventions = tuple(
        _build(Intervention, _check_keys(iv, _field_names(Intervention), f"interventions[{k}]"),
               f"interventions[{k}]")
        for k, iv in enumerate(ivs_raw))

    if "seed" in top:
        seed = top["seed"]
    else:
        seed = default_seed() if seed_default is None else seed_default
    for name, value in (("horizon", top.get("horizon", 50)), ("seed", seed)):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ScenarioValidationError(name, f"{name} must be an integer")
    if top.get("horizon", 50) < 1:
        raise ScenarioValidationError("horizon", "horizon must be at least 1")

    return ScenarioConfig(
        actors=actors,
        game=_game_from_dict(top.get("game")),
        network=network,
        virality=virality,
        horizon=top.get("horizon", 50),
        seed=seed,
        interventions=interventions,
        event_rate=float(top.get("event_rate", 1.0)),
        edges=edges,
        simulation=_simulation_from_dict(top.get("simulation")),
    )


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ScenarioValidationError("seed", f"{SEED_ENV_VAR}={raw!r} is not an integer") from None


def scenario_to_dict(cfg: ScenarioConfig) -> Dict[str, Any]:
    """Fully resolved, plain-data form of ``cfg``; ``scenario_from_dict`` inverts it."""
    game = cfg.game
    sim = cfg.simulation
    out: Dict[str, Any] = {
        "seed": cfg.seed,
        "horizon": cfg.horizon,
        "event_rate": cfg.event_rate,
        "actors": [{**dataclasses.asdict(a), "role": a.role.value} for a in cfg.actors],
        "game": {
            "levels": dataclasses.asdict(game.levels),
            "c_F": game.c_F,
            "q0": game.q0,
            "delta": game.delta,
            "drho": {k: getattr(game, f"drho_{k}") for k in
                     ("pub_both", "pub_solo", "wait_solo", "wait_both_A", "wait_both_B")},
        },
        "network": dataclasses.asdict(cfg.network),
        "virality": {"v0": cfg.virality.v0, "decay": cfg.virality.decay,
                     "classes": list(cfg.virality.classes)},
        "interventions": [{"kind": iv.kind.value, "magnitude": iv.magnitude,
                           "rho_threshold": iv.rho_threshold} for iv in cfg.interventions],
        "simulation": {
            "strategy": {"mode": sim.strategy.mode.value, "p": sim.strategy.p},
            "arrival": sim.arrival,
            "verification_delay": sim.verification_delay,
            "base_pool": sim.base_pool,
            "lambda": sim.lam,
            "initial_rho": sim.initial_rho,
            "initial_rho_by_actor": dict(sim.initial_rho_by_actor),
            "isolated": sim.isolated,
            "effort_publish": sim.effort_publish,
            "effort_verify": sim.effort_verify,
            "forced_delays": dict(sim.forced_delays),
            "forms": {"f": sim.forms.f_kind, "T": sim.forms.T_kind,
                      "R": sim.forms.R_kind, "M": sim.forms.M_kind},
        },
    }
    if cfg.edges is not None:
        out["graph"] = {"edges": [list(e) for e in cfg.edges]}
    return out


def dump_scenario(cfg: ScenarioConfig) -> str:
    return yaml.safe_dump(scenario_to_dict(cfg), sort_keys=False)


def save_scenario(cfg: ScenarioConfig, path) -> Path:
    path = Path(path)
    path.write_text(dump_scenario(cfg))
    return path


def parse_scenario(text: str) -> ScenarioConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioParseError(f"malformed scenario file: {exc}") from None
    return scenario_from_dict(data)


def load_scenario(path) -> ScenarioConfig:
    return parse_scenario(Path(path).read_text())


def _check_defaults() -> None:
    for role in Role:
        default_profile(role)
    ScenarioConfig(actors=(default_profile(Role.REMOTE_ANALYST),))


_check_defaults()
