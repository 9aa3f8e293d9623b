"""Publish/wait game: payoff matrix, pure and mixed equilibria, dominance."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

INDIFFERENCE_TOL = 1e-9
DEGENERATE_TOL = 1e-12


class Strategy(str, Enum):
    PUBLISH = "P"
    WAIT = "W"


class Player(str, Enum):
    A = "A"
    B = "B"


P, W = Strategy.PUBLISH, Strategy.WAIT
# Publish sorts first; used as the lexicographic tie-break everywhere.
STRATEGIES = (P, W)
Profile = Tuple[Strategy, Strategy]


class DegenerateDenominatorError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class PayoffLevels:
    H: float = 3.0
    M: float = 2.0
    L: float = 1.0
    B: float = 0.0
    canonical: bool = False

    def __post_init__(self):
        for name in ("H", "M", "L", "B"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.canonical and not (self.H > self.M > self.L > self.B):
            raise ValueError("canonical payoff levels require H > M > L > B")


@dataclass(frozen=True)
class PayoffSpec:
    """Parameterised two-analyst game.

    ``delta`` here is the reputation discount factor of the game cells; it is
    unrelated to the monetization weight carried by actor profiles.
    """

    levels: PayoffLevels = field(default_factory=PayoffLevels)
    c_F: float = 0.0
    q0: float = 1.0
    delta: float = 0.0
    drho_pub_both: float = 0.0
    drho_pub_solo: float = 0.0
    drho_wait_solo: float = 0.0
    drho_wait_both_A: float = 0.0
    drho_wait_both_B: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.q0 <= 1.0:
            raise ValueError("q0 must lie in [0, 1]")
        if self.c_F < 0:
            raise ValueError("c_F must be nonnegative")
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")

    @property
    def false_report_penalty(self) -> float:
        return self.c_F * (1.0 - self.q0)


@dataclass(frozen=True)
class Matrix2x2:
    cells: Dict[Profile, Tuple[float, float]]

    def __post_init__(self):
        if set(self.cells) != {(a, b) for a in STRATEGIES for b in STRATEGIES}:
            raise ValueError("matrix must define all four strategy pairs")
        for pair in self.cells.values():
            if not all(math.isfinite(x) for x in pair):
                raise ValueError("matrix entries must be finite")

    @classmethod
    def from_arrays(cls, a, b) -> "Matrix2x2":
        """Build from two 2x2 nested sequences indexed [row=A's move][col=B's move], P first."""
        return cls({(sa, sb): (float(a[i][j]), float(b[i][j]))
                    for i, sa in enumerate(STRATEGIES)
                    for j, sb in enumerate(STRATEGIES)})

    def payoff(self, player: Player, sa: Strategy, sb: Strategy) -> float:
        return self.cells[(sa, sb)][0 if player == Player.A else 1]

    def shifted(self, player: Player, constant: float) -> "Matrix2x2":
        idx = 0 if player == Player.A else 1
        cells = {}
        for k, v in self.cells.items():
            v = list(v)
            v[idx] += constant
            cells[k] = tuple(v)
        return Matrix2x2(cells)


@dataclass
class EquilibriumResult:
    pure: List[Profile]
    dominant_A: Optional[Strategy]
    dominant_B: Optional[Strategy]
    mixed: Optional[Tuple[float, float]]
    closed_form_value: Optional[float]
    closed_form_in_range: bool

    @property
    def mixed_exists(self) -> bool:
        return self.mixed is not None

    def to_dict(self) -> dict:
        return {
            "pure": ["".join(s.value for s in prof) for prof in self.pure],
            "dominant_A": self.dominant_A.value if self.dominant_A else None,
            "dominant_B": self.dominant_B.value if self.dominant_B else None,
            "mixed_exists": self.mixed_exists,
            "mixed": list(self.mixed) if self.mixed else None,
            "closed_form_value": self.closed_form_value,
            "closed_form_in_range": self.closed_form_in_range,
        }


def build_matrix(spec: PayoffSpec) -> Matrix2x2:
    lv, d, pen = spec.levels, spec.delta, spec.false_report_penalty
    both_pub = lv.M - pen + d * spec.drho_pub_both
    solo_pub = lv.H - pen + d * spec.drho_pub_solo
    solo_wait = lv.L + d * spec.drho_wait_solo
    both_wait = lv.B + d * (spec.drho_wait_both_A + spec.drho_wait_both_B)
    return Matrix2x2({
        (P, P): (both_pub, both_pub),
        (P, W): (solo_pub, solo_wait),
        (W, P): (solo_wait, solo_pub),
        (W, W): (both_wait, both_wait),
    })


def _other(s: Strategy) -> Strategy:
    return W if s == P else P


def pure_nash(m: Matrix2x2) -> List[Profile]:
    out = []
    for sa in STRATEGIES:
        for sb in STRATEGIES:
            a_ok = m.payoff(Player.A, sa, sb) >= m.payoff(Player.A, _other(sa), sb)
            b_ok = m.payoff(Player.B, sa, sb) >= m.payoff(Player.B, sa, _other(sb))
            if a_ok and b_ok:
                out.append((sa, sb))
    return out


def _own_payoff(m: Matrix2x2, player: Player, own: Strategy, opp: Strategy) -> float:
    if player == Player.A:
        return m.payoff(Player.A, own, opp)
    return m.payoff(Player.B, opp, own)


def dominant_strategy(m: Matrix2x2, player: Player) -> Optional[Strategy]:
    for s in STRATEGIES:
        diffs = [_own_payoff(m, player, s, opp) - _own_payoff(m, player, _other(s), opp)
                 for opp in STRATEGIES]
        if all(d >= 0 for d in diffs) and any(d > 0 for d in diffs):
            return s
    return None


def mixed_closed_form(spec: PayoffSpec) -> Tuple[float, bool]:
    """Evaluate the closed-form publish probability as stated.

    Returns ``(value, in_range)``. The expression is kept verbatim even
    though its false-report terms cancel in the denominator; see
    :func:`mixed_indifference` for the solver the simulator relies on.
    """
    lv, pen = spec.levels, spec.false_report_penalty
    denom = (lv.H - pen - lv.L) + (lv.B - lv.M + pen)
    if abs(denom) < DEGENERATE_TOL:
        raise DegenerateDenominatorError(
            f"closed-form denominator is {denom!r}; no mixed probability defined")
    value = (lv.B - lv.L) / denom
    return value, 0.0 <= value <= 1.0


# name used by downstream scripts
mixed_eq2_paper = mixed_closed_form


def expected_payoff(m: Matrix2x2, p_A: float, p_B: float, player: Player) -> float:
    if not (0.0 <= p_A <= 1.0 and 0.0 <= p_B <= 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    wa = {P: p_A, W: 1.0 - p_A}
    wb = {P: p_B, W: 1.0 - p_B}
    return sum(wa[sa] * wb[sb] * m.payoff(player, sa, sb)
               for sa in STRATEGIES for sb in STRATEGIES)


def publish_wait_gap(m: Matrix2x2, player: Player, p_opp: float) -> float:
    """E[payoff | Publish] - E[payoff | Wait] for ``player`` when the opponent publishes w.p. ``p_opp``."""
    if player == Player.A:
        return expected_payoff(m, 1.0, p_opp, Player.A) - expected_payoff(m, 0.0, p_opp, Player.A)
    return expected_payoff(m, p_opp, 1.0, Player.B) - expected_payoff(m, p_opp, 0.0, Player.B)


def _indifference_prob(own_pp, own_pw, own_wp, own_ww) -> Optional[float]:
    # Opponent probability q solving q*own_pp + (1-q)*own_pw == q*own_wp + (1-q)*own_ww.
    denom = own_pp - own_pw - own_wp + own_ww
    if abs(denom) < DEGENERATE_TOL:
        return None
    return (own_ww - own_pw) / denom


def mixed_indifference(m: Matrix2x2) -> Optional[Tuple[float, float]]:
    """Interior mixed equilibrium ``(p_A, p_B)`` from the indifference conditions, or None."""
    a = lambda sa, sb: m.payoff(Player.A, sa, sb)  # noqa: E731
    b = lambda sa, sb: m.payoff(Player.B, sa, sb)  # noqa: E731
    p_B = _indifference_prob(a(P, P), a(P, W), a(W, P), a(W, W))
    p_A = _indifference_prob(b(P, P), b(W, P), b(P, W), b(W, W))
    if p_A is None or p_B is None:
        return None
    if not (0.0 < p_A < 1.0 and 0.0 < p_B < 1.0):
        return None
    gap_a = publish_wait_gap(m, Player.A, p_B)
    gap_b = publish_wait_gap(m, Player.B, p_A)
    if abs(gap_a) >= INDIFFERENCE_TOL or abs(gap_b) >= INDIFFERENCE_TOL:
        raise ArithmeticError(
            f"indifference check failed: gaps {gap_a:.3e}, {gap_b:.3e}")
    return p_A, p_B


def solve(spec: PayoffSpec) -> Tuple[Matrix2x2, EquilibriumResult]:
    m = build_matrix(spec)
    try:
        value, in_range = mixed_closed_form(spec)
    except DegenerateDenominatorError:
        value, in_range = None, False
    return m, EquilibriumResult(
        pure=pure_nash(m),
        dominant_A=dominant_strategy(m, Player.A),
        dominant_B=dominant_strategy(m, Player.B),
        mixed=mixed_indifference(m),
        closed_form_value=value,
        closed_form_in_range=in_range,
    )
