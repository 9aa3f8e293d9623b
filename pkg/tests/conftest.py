from pathlib import Path

import pytest

from osint_attention.params import (Role, ScenarioConfig, SimulationSettings, StrategyConfig,
                                    default_profile)

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "scenarios"

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


@pytest.fixture
def scenario_dir():
    return SCENARIOS


def make_scenario(n_actors=2, role=Role.REMOTE_ANALYST, mode="DominantOrPure", p=0.5,
                  sim_kw=None, **kw) -> ScenarioConfig:
    actors = tuple(default_profile(role, f"a{k}") for k in range(n_actors))
    sim = SimulationSettings(strategy=StrategyConfig(mode=mode, p=p), **(sim_kw or {}))
    return ScenarioConfig(actors=actors, simulation=sim, **kw)
