import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from osint_attention.game import (DegenerateDenominatorError, Matrix2x2, P, PayoffLevels,
                                  PayoffSpec, Player, W, build_matrix, dominant_strategy,
                                  expected_payoff, mixed_closed_form, mixed_indifference,
                                  pure_nash, solve)

CANONICAL = PayoffSpec(levels=PayoffLevels(3, 2, 1, 0, canonical=True))
ANTI = PayoffSpec(levels=PayoffLevels(5, 2, 1, 0), c_F=2, q0=0)


def cells(m):
    return tuple(m.cells[k] for k in ((P, P), (P, W), (W, P), (W, W)))


def brute_force_nash(m):
    """Enumerate every cell and every unilateral deviation."""
    out = []
    for a, b in itertools.product((P, W), repeat=2):
        stable = True
        for a2 in (P, W):
            if m.payoff(Player.A, a2, b) > m.payoff(Player.A, a, b):
                stable = False
        for b2 in (P, W):
            if m.payoff(Player.B, a, b2) > m.payoff(Player.B, a, b):
                stable = False
        if stable:
            out.append((a, b))
    return out


def test_build_matrix_zero_adjustments():
    assert cells(build_matrix(CANONICAL)) == ((2, 2), (3, 1), (1, 3), (0, 0))


def test_build_matrix_q0_one_kills_penalty():
    spec = PayoffSpec(levels=PayoffLevels(3, 2, 1, 0), c_F=2, q0=1)
    assert cells(build_matrix(spec)) == cells(build_matrix(CANONICAL))


def test_build_matrix_penalty():
    assert cells(build_matrix(ANTI)) == ((0, 0), (3, 1), (1, 3), (0, 0))


def test_build_matrix_reputation_terms():
    spec = PayoffSpec(levels=PayoffLevels(3, 2, 1, 0), delta=0.5, drho_pub_both=1,
                      drho_pub_solo=2, drho_wait_solo=4, drho_wait_both_A=1, drho_wait_both_B=3)
    assert cells(build_matrix(spec)) == ((2.5, 2.5), (4, 3), (3, 4), (2, 2))


def test_pure_nash_examples():
    assert pure_nash(build_matrix(CANONICAL)) == [(P, P)]
    flat = Matrix2x2.from_arrays([[1, 1], [1, 1]], [[1, 1], [1, 1]])
    assert pure_nash(flat) == [(P, P), (P, W), (W, P), (W, W)]
    assert pure_nash(build_matrix(ANTI)) == [(P, W), (W, P)]


def test_dominant_examples():
    m = build_matrix(CANONICAL)
    assert dominant_strategy(m, Player.A) == P and dominant_strategy(m, Player.B) == P
    zero = Matrix2x2.from_arrays([[0, 0], [0, 0]], [[0, 0], [0, 0]])
    assert dominant_strategy(zero, Player.A) is None
    anti = build_matrix(ANTI)
    assert dominant_strategy(anti, Player.A) is None and dominant_strategy(anti, Player.B) is None


def test_dominance_needs_one_strict_inequality():
    # P ties against P, wins against W -> weakly dominant with a strict edge
    m = Matrix2x2.from_arrays([[1, 2], [1, 0]], [[1, 1], [2, 0]])
    assert dominant_strategy(m, Player.A) == P
    assert dominant_strategy(m, Player.B) == P


def test_closed_form_examples():
    assert mixed_closed_form(ANTI) == (-0.5, False)
    assert mixed_closed_form(PayoffSpec(levels=PayoffLevels(5, 2, 1, 1))) == (0.0, True)
    with pytest.raises(DegenerateDenominatorError):
        mixed_closed_form(CANONICAL)


def test_mixed_worked_instance():
    m = build_matrix(ANTI)
    p_a, p_b = mixed_indifference(m)
    assert p_a == pytest.approx(0.75, abs=1e-12) and p_b == pytest.approx(0.75, abs=1e-12)
    assert expected_payoff(m, 1, p_b, Player.A) == pytest.approx(0.75)
    assert expected_payoff(m, 0, p_b, Player.A) == pytest.approx(0.75)


def test_mixed_grid_oracle_worked_instance():
    # grid over the opponent's probability, step 1e-4: A's gap changes sign at 0.75
    m = build_matrix(ANTI)
    grid = np.linspace(0, 1, 10_001)
    gap = np.array([expected_payoff(m, 1, q, Player.A) - expected_payoff(m, 0, q, Player.A) for q in grid])
    crossing = grid[np.argmin(np.abs(gap))]
    assert crossing == pytest.approx(0.75, abs=1e-4)


def test_mixed_absent_cases():
    assert mixed_indifference(build_matrix(CANONICAL)) is None
    flat = Matrix2x2.from_arrays([[1, 1], [1, 1]], [[1, 1], [1, 1]])
    assert mixed_indifference(flat) is None


def test_expected_payoff_examples():
    m = build_matrix(CANONICAL)
    assert expected_payoff(m, 1, 1, Player.A) == 2
    assert expected_payoff(m, 0.5, 0.5, Player.A) == pytest.approx(1.5)
    assert expected_payoff(m, 0, 0, Player.B) == 0
    with pytest.raises(ValueError):
        expected_payoff(m, 1.5, 0, Player.A)


def test_canonical_levels_enforced():
    with pytest.raises(ValueError):
        PayoffLevels(1, 2, 3, 4, canonical=True)
    PayoffLevels(1, 2, 3, 4)  # arbitrary orderings allowed without the flag


def test_solve_bundle():
    m, res = solve(ANTI)
    assert res.pure == [(P, W), (W, P)] and res.mixed_exists
    assert res.closed_form_value == -0.5 and not res.closed_form_in_range
    d = res.to_dict()
    assert d["pure"] == ["PW", "WP"] and d["mixed"] == pytest.approx([0.75, 0.75])


def test_pure_nash_matches_brute_force_random():
    rng = random.Random(7)
    for _ in range(10_000):
        a = [[rng.choice([rng.uniform(-3, 3), rng.randint(-2, 2)]) for _ in range(2)] for _ in range(2)]
        b = [[rng.choice([rng.uniform(-3, 3), rng.randint(-2, 2)]) for _ in range(2)] for _ in range(2)]
        m = Matrix2x2.from_arrays(a, b)
        assert pure_nash(m) == brute_force_nash(m)


def _draw_levels(draw):
    vals = draw(st.lists(st.floats(-10, 10, allow_nan=False), min_size=4, max_size=4, unique=True))
    h, mm, l, b = sorted(vals, reverse=True)
    return PayoffLevels(h, mm, l, b, canonical=True)


@settings(max_examples=300)
@given(st.data())
def test_prisoners_dilemma_property(data):
    levels = _draw_levels(data.draw)
    m = build_matrix(PayoffSpec(levels=levels))
    assert pure_nash(m) == [(P, P)]
    assert dominant_strategy(m, Player.A) == P == dominant_strategy(m, Player.B)


_payoff = st.floats(-5, 5, allow_nan=False)


@settings(max_examples=300)
@given(st.lists(_payoff, min_size=8, max_size=8), _payoff, st.sampled_from([Player.A, Player.B]))
def test_affine_shift_preserves_equilibria(vals, shift, player):
    m = Matrix2x2.from_arrays([vals[0:2], vals[2:4]], [vals[4:6], vals[6:8]])
    shifted = m.shifted(player, shift)
    # exact float ties can flip after a shift; compare only generic matrices
    a = [vals[0] - vals[2], vals[1] - vals[3], vals[4] - vals[5], vals[6] - vals[7]]
    if min(abs(x) for x in a) < 1e-9:
        return
    assert pure_nash(shifted) == pure_nash(m)
    assert dominant_strategy(shifted, Player.A) == dominant_strategy(m, Player.A)
    assert dominant_strategy(shifted, Player.B) == dominant_strategy(m, Player.B)
    mixed, mixed_s = mixed_indifference(m), mixed_indifference(shifted)
    assert (mixed is None) == (mixed_s is None)
    if mixed:
        assert mixed_s == pytest.approx(mixed, abs=1e-9)


@settings(max_examples=300)
@given(st.lists(_payoff, min_size=8, max_size=8))
def test_mixed_indifference_holds(vals):
    m = Matrix2x2.from_arrays([vals[0:2], vals[2:4]], [vals[4:6], vals[6:8]])
    res = mixed_indifference(m)
    if res is None:
        return
    p_a, p_b = res
    assert 0 < p_a < 1 and 0 < p_b < 1
    gap_a = expected_payoff(m, 1, p_b, Player.A) - expected_payoff(m, 0, p_b, Player.A)
    gap_b = expected_payoff(m, p_a, 1, Player.B) - expected_payoff(m, p_a, 0, Player.B)
    assert abs(gap_a) < 1e-9 and abs(gap_b) < 1e-9
