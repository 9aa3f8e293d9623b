"""Novelty saturation for repeated events of the same class."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np


@dataclass(frozen=True)
class ViralityParams:
    v0: float = 3.5
    decay: float = 0.4
    classes: Tuple[str, ...] = ("tank_kill",)

    def __post_init__(self):
        if not self.v0 > 0:
            raise ValueError("v0 must be positive")
        if self.decay < 0:
            raise ValueError("decay must be nonnegative")
        if not self.classes:
            raise ValueError("at least one event class is required")
        if len(set(self.classes)) != len(self.classes):
            raise ValueError("event classes must be unique")


class UnknownClassError(KeyError):
    pass


def novelty_value(class_count: int, p: ViralityParams) -> float:
    if class_count < 0:
        raise ValueError("class_count must be nonnegative")
    return p.v0 * math.exp(-p.decay * class_count)


def new_counter(p: ViralityParams) -> Dict[str, int]:
    return {c: 0 for c in p.classes}


def record_event(counter: Dict[str, int], cls: str) -> Dict[str, int]:
    """Return a copy of ``counter`` with ``cls`` incremented; counts are cumulative per run."""
    if cls not in counter:
        raise UnknownClassError(cls)
    out = dict(counter)
    out[cls] += 1
    return out


def register_class(counter: Dict[str, int], cls: str) -> Dict[str, int]:
    """Introduce a never-seen class (e.g. a first-destroyed weapon system) at count 0."""
    if cls in counter:
        return dict(counter)
    return {**counter, cls: 0}


@dataclass(frozen=True)
class ExponentialFit:
    decay: float
    intercept: float  # ln of the fitted scale
    r2: float

    @property
    def scale(self) -> float:
        return math.exp(self.intercept)


def fit_exponential(x: Sequence[float], y: Sequence[float]) -> ExponentialFit:
    """Least-squares line through (x, ln y): ln y = intercept - decay * x."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2 or np.unique(x).size < 2:
        raise ValueError("need at least two distinct x values to fit")
    if np.any(y <= 0):
        raise ValueError("exponential fit needs positive y")
    ly = np.log(y)
    slope, intercept = np.polyfit(x, ly, 1)
    resid = ly - (intercept + slope * x)
    ss_res = float(np.sum(resid ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    # a flat series fitted exactly explains everything there is to explain
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 1e-24 else (1.0 if ss_res <= 1e-24 else 0.0)
    return ExponentialFit(decay=float(-slope), intercept=float(intercept), r2=r2)
