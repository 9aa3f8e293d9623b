import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from osint_attention.virality import (UnknownClassError, ViralityParams, fit_exponential,
                                      new_counter, novelty_value, record_event, register_class)

DEFAULT = ViralityParams()


def test_novelty_examples():
    assert novelty_value(0, DEFAULT) == 3.5
    assert novelty_value(5, DEFAULT) == pytest.approx(3.5 * math.exp(-2))
    assert novelty_value(5, DEFAULT) == pytest.approx(0.47367, abs=1e-5)
    flat = ViralityParams(decay=0.0)
    assert novelty_value(0, flat) == novelty_value(9, flat) == 3.5


def test_record_event_counts():
    c = new_counter(DEFAULT)
    c = record_event(c, "tank_kill")
    assert c["tank_kill"] == 1
    for _ in range(9):
        c = record_event(c, "tank_kill")
    assert novelty_value(c["tank_kill"], DEFAULT) == pytest.approx(3.5 * math.exp(-4.0))


def test_new_class_resets_novelty():
    c = new_counter(DEFAULT)
    for _ in range(10):
        c = record_event(c, "tank_kill")
    c = register_class(c, "leopard_2")
    assert novelty_value(c["leopard_2"], DEFAULT) == 3.5
    assert c["tank_kill"] == 10


def test_unknown_class():
    with pytest.raises(UnknownClassError):
        record_event(new_counter(DEFAULT), "ufo")


def test_params_invariants():
    with pytest.raises(ValueError):
        ViralityParams(v0=0)
    with pytest.raises(ValueError):
        ViralityParams(decay=-0.1)


def test_fit_recovers_curve():
    x = np.arange(20)
    fit = fit_exponential(x, 3.5 * np.exp(-0.4 * x))
    assert fit.decay == pytest.approx(0.4) and fit.scale == pytest.approx(3.5) and fit.r2 == pytest.approx(1)
    flat = fit_exponential(x, np.full(20, 2.0))
    assert flat.decay == pytest.approx(0, abs=1e-12) and flat.r2 == 1.0
    with pytest.raises(ValueError):
        fit_exponential([1], [1])


@given(st.integers(0, 200), st.floats(0.01, 3), st.floats(0.1, 10))
def test_strictly_decreasing_and_scale_equivariant(n, decay, v0):
    p = ViralityParams(v0=v0, decay=decay)
    if novelty_value(n + 1, p) > 0:
        assert novelty_value(n + 1, p) < novelty_value(n, p)
    assert novelty_value(n, ViralityParams(v0=2 * v0, decay=decay)) == 2 * novelty_value(n, p)
