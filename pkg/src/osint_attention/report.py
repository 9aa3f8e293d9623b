"""Trace serialisation and SVG figures."""

from __future__ import annotations

import csv
import json
from collections import Counter
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .engine import TRACE_COLUMNS, SimulationTrace  # noqa: E402
from .params import ActorProfile  # noqa: E402
from .virality import ExponentialFit, fit_exponential  # noqa: E402

# keep glyphs as <text> so labels stay searchable and diffable
plt.rcParams["svg.fonttype"] = "none"
plt.rcParams["svg.hashsalt"] = "osint-attention"


class InsufficientDataError(ValueError):
    pass


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def emit_csv(trace: SimulationTrace, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["class" if c == "cls" else c for c in TRACE_COLUMNS])
        for row in trace.rows:
            w.writerow([format_value(getattr(row, c)) for c in TRACE_COLUMNS])
    return path


def read_csv(path) -> List[Dict[str, str]]:
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(fh))


def emit_summary(summary: dict, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return path


def virality_series(trace: SimulationTrace, cls: Optional[str] = None):
    """(cumulative index, attention) pairs for one event class; defaults to the commonest class."""
    pairs = trace.event_attention()
    if not pairs:
        raise InsufficientDataError("trace has no events")
    if cls is None:
        cls = Counter(e.cls for e, _ in pairs).most_common(1)[0][0]
    x = [e.class_count for e, a in pairs if e.cls == cls]
    y = [a for e, a in pairs if e.cls == cls]
    if len(x) < 2:
        raise InsufficientDataError(f"need at least two '{cls}' events, have {len(x)}")
    return cls, x, y


def emit_virality_figure(trace: SimulationTrace, path, cls: Optional[str] = None) -> ExponentialFit:
    cls, x, y = virality_series(trace, cls)
    fit = fit_exponential(x, y)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.scatter(x, y, color="tab:blue", label=f"{cls} events")
    xs = np.linspace(min(x), max(x), 200)
    ax.plot(xs, fit.scale * np.exp(-fit.decay * xs), color="tab:red",
            label=f"fit {fit.scale:.3g}·exp(-{fit.decay:.3g}x)")
    ax.set_xlabel("Cumulative Events")
    ax.set_ylabel("Views per Video")
    ax.set_title("Diminishing attention returns on repeated events")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return fit


def heatmap_points(profiles: Sequence[ActorProfile], rewards: Dict[str, float]):
    return [(p.platform_affordance, p.risk_exposure, rewards[p.id], f"{p.id} ({p.role.value})")
            for p in profiles]


def emit_heatmap_figure(profiles: Sequence[ActorProfile], rewards: Dict[str, float], path) -> list:
    pts = heatmap_points(profiles, rewards)
    if not pts:
        raise InsufficientDataError("no profiles to plot")
    xs, ys, cs, labels = zip(*pts)
    lo, hi = min(cs), max(cs)
    if hi == lo:
        lo, hi = lo - 1.0, hi + 1.0
    fig, ax = plt.subplots(figsize=(6, 5))
    sc = ax.scatter(xs, ys, c=cs, cmap="RdYlGn", vmin=lo, vmax=hi, s=160, edgecolors="black")
    for x, y, label in zip(xs, ys, labels):
        ax.annotate(label, (x, y), textcoords="offset points", xytext=(6, 6))
    ax.set_xlim(0, 10)
    ax.set_ylim(0, 10)
    ax.set_xlabel("Platform Affordance (Monetization, Reach)")
    ax.set_ylabel("Risk Exposure")
    ax.set_title("Risk-Reward Heatmap of OSINT Actor Types")
    fig.colorbar(sc, ax=ax, label="Realized reward")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return pts
