"""Discrete-time simulation of analysts competing for attention on events.

Each step:

1. refresh per-actor modifiers (verification subsidy, reputation banking);
2. draw this step's events (class, truth of the underlying claim);
3. every actor decides Publish or Wait on every event;
4. raw attention = banking weight * g(d, C) * quality * exp(-kappa * delay);
5. the event's audience pool, ``base_pool * novelty * exp(-kappa * first delay)``,
   is split in proportion to raw attention;
6. unverified publications of false claims count as errors, everything else
   as accurate; reputation takes one synchronous neighbour-coupled step;
7. money accrues as ``delta * M(allocated attention)``;
8. network-governance rewiring runs between steps.

Randomness comes from one seed split into independent streams for events,
decisions and interventions (in that order), so adding actors never changes
which events occur.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.stats import spearmanr

from .game import EquilibriumResult, Player, Strategy, build_matrix, dominant_strategy, \
    mixed_indifference, pure_nash
from .network import SocialGraph, all_closeness, attention, degree_effect, governance_pair, \
    split_attention
from .params import ActorProfile, Intervention, InterventionKind, ScenarioConfig, StrategyConfig, \
    StrategyMode
from .reputation import ReputationLedger, step_all
from .virality import new_counter, novelty_value, record_event

P, W = Strategy.PUBLISH, Strategy.WAIT


@dataclass(frozen=True)
class Event:
    id: int
    cls: str
    step_born: int
    true_info: bool
    class_count: int
    novelty: float


@dataclass(frozen=True)
class Decision:
    actor: str
    event_id: int
    action: Strategy
    publish_step: int
    verified: bool
    delay: int = 0  # steps between the event and publication


@dataclass(frozen=True)
class DecisionContext:
    """What an actor knows when deciding on one event."""

    game: EquilibriumResult
    verification_delay: int = 1
    forced_delay: int = 0
    utilities: Optional[Tuple[float, float]] = None  # (U_publish, U_wait)


@dataclass
class EngineState:
    step: int
    ledger: ReputationLedger
    graph: SocialGraph
    base_beta: Dict[str, float]
    beta_eff: Dict[str, float]
    weight: Dict[str, float]
    rng: np.random.Generator  # intervention stream

    @property
    def rho(self):
        return self.ledger.rho


@dataclass(frozen=True)
class TraceRow:
    step: int
    event_id: Optional[int]
    cls: Optional[str]
    class_count: Optional[int]
    novelty: Optional[float]
    true_info: Optional[bool]
    actor: str
    action: Optional[str]
    publish_step: Optional[int]
    verified: Optional[bool]
    g: float
    raw_attention: Optional[float]
    pool: Optional[float]
    allocated: Optional[float]
    money: Optional[float]
    reward: Optional[float]
    drho: float
    rho: float


TRACE_COLUMNS = tuple(TraceRow.__dataclass_fields__)


@dataclass
class SimulationTrace:
    config: ScenarioConfig
    actors: List[str]
    rows: List[TraceRow] = field(default_factory=list)
    events: List[Event] = field(default_factory=list)
    decisions: List[Decision] = field(default_factory=list)
    rho_history: List[Dict[str, float]] = field(default_factory=list)
    edges_final: List[Tuple[str, str]] = field(default_factory=list)

    def event_rows(self) -> List[TraceRow]:
        return [r for r in self.rows if r.event_id is not None]

    def event_attention(self) -> List[Tuple[Event, float]]:
        """Total allocated attention per event, in event order."""
        totals: Dict[int, float] = {}
        for r in self.event_rows():
            totals[r.event_id] = totals.get(r.event_id, 0.0) + r.allocated
        return [(e, totals.get(e.id, 0.0)) for e in self.events]

    @property
    def summary(self) -> dict:
        return aggregate_metrics(self)


# ---------------------------------------------------------------------------
# decisions

def _dominant_or_pure(game: EquilibriumResult) -> Strategy:
    if game.dominant_A is not None:
        return game.dominant_A
    if game.pure:
        # pure_nash lists profiles with Publish first
        return game.pure[0][0]
    return P


def choose_action(actor: ActorProfile, event: Event, strategy: StrategyConfig,
                  ctx: DecisionContext, draw: float) -> Decision:
    """Publish/Wait for one actor on one event.

    ``draw`` is a uniform [0, 1) number consumed by the randomised modes; it is
    always supplied so that every mode sees the same random stream.
    """
    mode = strategy.mode
    if mode == StrategyMode.FIXED_PROBABILITY:
        action = P if draw < strategy.p else W
    elif mode == StrategyMode.MIXED_INDIFFERENCE and ctx.game.mixed is not None:
        action = P if draw < ctx.game.mixed[0] else W
    elif mode == StrategyMode.UTILITY_BEST_RESPONSE:
        if ctx.utilities is None:
            raise ValueError("UtilityBestResponse needs action utilities")
        u_pub, u_wait = ctx.utilities
        action = P if u_pub >= u_wait else W
    else:
        action = _dominant_or_pure(ctx.game)
    verified = action == W
    delay = ctx.forced_delay + (ctx.verification_delay if verified else 0)
    return Decision(actor=actor.id, event_id=event.id, action=action,
                    publish_step=event.step_born + delay, verified=verified, delay=delay)


def action_utilities(actor: ActorProfile, cfg: ScenarioConfig, g_val: float, rho: float,
                     beta_eff: float, weight: float, forced_delay: int = 0) -> Tuple[float, float]:
    """Expected utility of publishing now vs. verifying first.

    Beliefs use the actor's own raw attention (competition ignored), the
    prior ``q0`` for the claim being true, and the actor's current effective
    time-cost weight.
    """
    net, game, sim, forms = cfg.network, cfg.game, cfg.simulation, cfg.simulation.forms
    q = game.q0

    def value(verified: bool, effort: float, exp_drho: float, penalty: float) -> float:
        delay = forced_delay + (sim.verification_delay if verified else 0)
        a = weight * attention(g_val, verified, delay, net)
        return (actor.alpha * rho ** actor.tau * forms.f(a) + actor.delta * forms.M(a)
                - beta_eff * forms.T(effort) - actor.gamma * forms.R(effort)
                + game.delta * exp_drho - penalty)

    u_pub = value(False, sim.effort_publish, actor.eta * q - actor.zeta * (1 - q),
                  game.c_F * (1 - q))
    u_wait = value(True, sim.effort_verify, actor.eta, 0.0)
    return u_pub, u_wait


# ---------------------------------------------------------------------------
# interventions

def apply_intervention(state: EngineState, iv: Intervention) -> EngineState:
    m = iv.magnitude
    if iv.kind == InterventionKind.VERIFICATION_SUBSIDY:
        keep = 1.0 - min(m, 1.0)
        beta = {i: b * keep if state.rho[i] >= iv.rho_threshold else b
                for i, b in state.beta_eff.items()}
        return replace(state, beta_eff=beta)
    if iv.kind == InterventionKind.REPUTATION_BANKING:
        weight = {i: w * (1.0 + m * state.rho[i]) for i, w in state.weight.items()}
        return replace(state, weight=weight)
    # NetworkGovernance: the draw is always taken so streams stay aligned across magnitudes
    u = state.rng.random()
    if u >= min(m, 1.0):
        return state
    pair = governance_pair(state.graph)
    if pair is None:
        return state
    graph = state.graph.copy()
    graph.add_edge(*pair)
    return replace(state, graph=graph, ledger=state.ledger.with_graph(graph))


def _refresh_modifiers(state: EngineState, interventions) -> EngineState:
    state = replace(state, beta_eff=dict(state.base_beta), weight={i: 1.0 for i in state.weight})
    for iv in interventions:
        if iv.kind != InterventionKind.NETWORK_GOVERNANCE:
            state = apply_intervention(state, iv)
    return state


# ---------------------------------------------------------------------------
# main loop

def _initial_graph(cfg: ScenarioConfig) -> SocialGraph:
    ids = [a.id for a in cfg.actors]
    if cfg.edges is None:
        return SocialGraph.complete(ids)
    return SocialGraph(ids, cfg.edges)


def _event_count(cfg: ScenarioConfig, rng: np.random.Generator, carry: float) -> Tuple[int, float]:
    if cfg.simulation.arrival == "poisson":
        return int(rng.poisson(cfg.event_rate)), carry
    carry += cfg.event_rate
    n = int(math.floor(carry + 1e-12))
    return n, carry - n


def run(cfg: ScenarioConfig) -> SimulationTrace:
    sim, net, game_spec = cfg.simulation, cfg.network, cfg.game
    ids = [a.id for a in cfg.actors]
    ss = np.random.SeedSequence(cfg.seed)
    rng_events, rng_decisions, rng_iv = (np.random.default_rng(s) for s in ss.spawn(3))

    graph = _initial_graph(cfg)
    rho0 = {i: float(sim.initial_rho_by_actor.get(i, sim.initial_rho)) for i in ids}
    state = EngineState(
        step=0,
        ledger=ReputationLedger(rho=rho0, lam=sim.lam, graph=graph, isolated=sim.isolated),
        graph=graph,
        base_beta={a.id: a.beta for a in cfg.actors},
        beta_eff={a.id: a.beta for a in cfg.actors},
        weight={i: 1.0 for i in ids},
        rng=rng_iv,
    )
    m = build_matrix(game_spec)
    game = EquilibriumResult(
        pure=pure_nash(m),
        dominant_A=dominant_strategy(m, Player.A),
        dominant_B=dominant_strategy(m, Player.B),
        mixed=mixed_indifference(m),
        closed_form_value=None,
        closed_form_in_range=False,
    )
    counter = new_counter(cfg.virality)
    classes = list(cfg.virality.classes)
    trace = SimulationTrace(config=cfg, actors=ids)
    next_event_id = 0
    carry = 0.0
    forms = sim.forms

    for step in range(cfg.horizon):
        state = _refresh_modifiers(replace(state, step=step), cfg.interventions)
        cl = all_closeness(state.graph)
        g_vals = {i: degree_effect(state.graph.degree(i), cl[i], net) for i in ids}
        rho = dict(state.rho)

        n_events, carry = _event_count(cfg, rng_events, carry)
        step_rows = []
        acc = {i: 0.0 for i in ids}
        err = {i: 0.0 for i in ids}
        for _ in range(n_events):
            cls = classes[int(rng_events.integers(len(classes)))]
            true_info = bool(rng_events.random() < game_spec.q0)
            count = counter[cls]
            event = Event(id=next_event_id, cls=cls, step_born=step, true_info=true_info,
                          class_count=count, novelty=novelty_value(count, cfg.virality))
            next_event_id += 1
            counter = record_event(counter, cls)
            trace.events.append(event)

            draws = rng_decisions.random(len(ids))
            decisions = []
            for a, draw in zip(cfg.actors, draws):
                forced = int(sim.forced_delays.get(a.id, 0))
                utilities = None
                if sim.strategy.mode == StrategyMode.UTILITY_BEST_RESPONSE:
                    utilities = action_utilities(a, cfg, g_vals[a.id], rho[a.id],
                                                 state.beta_eff[a.id], state.weight[a.id], forced)
                ctx = DecisionContext(game=game, verification_delay=sim.verification_delay,
                                      forced_delay=forced, utilities=utilities)
                decisions.append(choose_action(a, event, sim.strategy, ctx, float(draw)))
            trace.decisions.extend(decisions)

            raw = [(d.actor, state.weight[d.actor]
                    * attention(g_vals[d.actor], d.verified, d.delay, net)) for d in decisions]
            first = min(d.delay for d in decisions)
            pool = sim.base_pool * event.novelty * math.exp(-net.kappa * first)
            alloc = dict(split_attention(raw, pool))

            for a, d, (_, r) in zip(cfg.actors, decisions, raw):
                is_error = (not d.verified) and (not event.true_info)
                err[a.id] += is_error
                acc[a.id] += not is_error
                got = alloc[a.id]
                money = a.delta * forms.M(got)
                effort = sim.effort_verify if d.verified else sim.effort_publish
                event_drho = a.eta * (not is_error) - a.zeta * is_error
                reward = (a.alpha * rho[a.id] ** a.tau * forms.f(got) + money
                          - state.beta_eff[a.id] * forms.T(effort) - a.gamma * forms.R(effort)
                          - game_spec.c_F * is_error + game_spec.delta * event_drho)
                step_rows.append(dict(
                    step=step, event_id=event.id, cls=event.cls, class_count=event.class_count,
                    novelty=event.novelty, true_info=event.true_info, actor=a.id,
                    action=d.action.value, publish_step=d.publish_step, verified=d.verified,
                    g=g_vals[a.id], raw_attention=r, pool=pool, allocated=got, money=money,
                    reward=reward))

        drho_map = {a.id: a.eta * acc[a.id] - a.zeta * err[a.id] for a in cfg.actors}
        ledger = step_all(state.ledger, drho_map)
        state = replace(state, ledger=ledger)
        trace.rho_history.append(dict(ledger.rho))

        if not step_rows:
            step_rows = [dict(step=step, event_id=None, cls=None, class_count=None, novelty=None,
                              true_info=None, actor=i, action=None, publish_step=None,
                              verified=None, g=g_vals[i], raw_attention=None, pool=None,
                              allocated=None, money=None, reward=None) for i in ids]
        for row in step_rows:
            trace.rows.append(TraceRow(**row, drho=drho_map[row["actor"]],
                                       rho=ledger.rho[row["actor"]]))

        for iv in cfg.interventions:
            if iv.kind == InterventionKind.NETWORK_GOVERNANCE:
                state = apply_intervention(state, iv)

    trace.edges_final = state.graph.edges
    return trace


# ---------------------------------------------------------------------------
# metrics

def gini(values) -> float:
    x = np.asarray(values, dtype=float)
    if x.size == 0 or x.sum() <= 0:
        return 0.0
    diff = np.abs(x[:, None] - x[None, :]).sum()
    return float(diff / (2.0 * x.size ** 2 * x.mean()))


def aggregate_metrics(trace: SimulationTrace) -> dict:
    ids = trace.actors
    per = {i: {"attention": 0.0, "money": 0.0, "reward": 0.0, "publications": 0,
               "verified": 0, "errors": 0} for i in ids}
    for r in trace.event_rows():
        rec = per[r.actor]
        rec["attention"] += r.allocated
        rec["money"] += r.money
        rec["reward"] += r.reward
        rec["publications"] += 1
        rec["verified"] += bool(r.verified)
        rec["errors"] += (not r.verified) and (not r.true_info)
    final_rho = trace.rho_history[-1] if trace.rho_history else {}
    for i in ids:
        per[i]["final_rho"] = final_rho.get(i, 0.0)
        per[i]["mean_rho"] = (math.fsum(h[i] for h in trace.rho_history) / len(trace.rho_history)
                              if trace.rho_history else 0.0)

    n_pub = sum(p["publications"] for p in per.values())
    total_att = sum(p["attention"] for p in per.values())
    shares = [per[i]["attention"] / total_att if total_att > 0 else 0.0 for i in ids]
    return {
        "n_events": len(trace.events),
        "n_publications": n_pub,
        "misinformation_rate": sum(p["errors"] for p in per.values()) / n_pub if n_pub else 0.0,
        "verified_fraction": sum(p["verified"] for p in per.values()) / n_pub if n_pub else 0.0,
        "attention_gini": gini([per[i]["attention"] for i in ids]),
        # attention accrues over the whole run, so it is ranked against run-mean reputation
        "rho_attention_spearman": rank_correlation([per[i]["mean_rho"] for i in ids], shares),
        "total_attention": total_att,
        "actors": per,
    }


def rank_correlation(x, y) -> float:
    """Spearman correlation; 0 when either side has no variation."""
    if len(x) < 2 or len(set(x)) < 2 or len(set(y)) < 2:
        return 0.0
    return float(spearmanr(x, y).statistic)
