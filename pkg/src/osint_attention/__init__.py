"""Agent-based model of the OSINT attention economy.

Analysts race to publish or wait to verify; attention depends on timing,
network position and novelty; reputation evolves through a verification
network.
"""

from .engine import aggregate_metrics, run
from .game import PayoffLevels, PayoffSpec, build_matrix, solve
from .params import ActorProfile, Role, ScenarioConfig, default_profile, load_scenario

__all__ = [
    "ActorProfile", "PayoffLevels", "PayoffSpec", "Role", "ScenarioConfig",
    "aggregate_metrics", "build_matrix", "default_profile", "load_scenario", "run", "solve",
]
__version__ = "0.1.0"
