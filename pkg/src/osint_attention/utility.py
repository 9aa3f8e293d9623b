"""Actor utility variants and a one-dimensional effort optimiser."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Optional, Tuple

import numpy as np

if TYPE_CHECKING:
    from .params import ActorProfile

GRID_POINTS = 10_000
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# name -> (value, derivative); every form is zero at the origin.
BENEFIT_FORMS = {
    "log1p": (math.log1p, lambda x: 1.0 / (1.0 + x)),
    "sqrt1p": (lambda x: math.sqrt(1.0 + x) - 1.0, lambda x: 0.5 / math.sqrt(1.0 + x)),
}
TIME_FORMS = {
    "linear": (lambda e: e, lambda e: 1.0),
    "quadratic": (lambda e: e * e, lambda e: 2.0 * e),
}
RISK_FORMS = {
    "quadratic": (lambda e: e * e, lambda e: 2.0 * e),
    "linear": (lambda e: e, lambda e: 1.0),
    "cubic": (lambda e: e ** 3, lambda e: 3.0 * e * e),
    "expm1": (math.expm1, math.exp),
}
MONEY_FORMS = {
    "linear": (lambda a: a, lambda a: 1.0),
    "sqrt1p": (lambda a: math.sqrt(1.0 + a) - 1.0, lambda a: 0.5 / math.sqrt(1.0 + a)),
}

VARIANTS = ("base", "reputation", "monetized")


@dataclass(frozen=True)
class UtilityForms:
    f_kind: str = "log1p"
    T_kind: str = "linear"
    R_kind: str = "quadratic"
    M_kind: str = "linear"

    def __post_init__(self):
        for kind, table, label in ((self.f_kind, BENEFIT_FORMS, "f_kind"),
                                   (self.T_kind, TIME_FORMS, "T_kind"),
                                   (self.R_kind, RISK_FORMS, "R_kind"),
                                   (self.M_kind, MONEY_FORMS, "M_kind")):
            if kind not in table:
                raise ValueError(f"{label} must be one of {sorted(table)}, got {kind!r}")

    def f(self, a):
        return BENEFIT_FORMS[self.f_kind][0](a)

    def df(self, a):
        return BENEFIT_FORMS[self.f_kind][1](a)

    def T(self, e):
        return TIME_FORMS[self.T_kind][0](e)

    def dT(self, e):
        return TIME_FORMS[self.T_kind][1](e)

    def R(self, e):
        return RISK_FORMS[self.R_kind][0](e)

    def dR(self, e):
        return RISK_FORMS[self.R_kind][1](e)

    def M(self, a):
        return MONEY_FORMS[self.M_kind][0](a)

    def dM(self, a):
        return MONEY_FORMS[self.M_kind][1](a)


DEFAULT_FORMS = UtilityForms()


@dataclass(frozen=True)
class UtilityInputs:
    attention: float
    effort: float
    profile: "ActorProfile"
    reputation: float = 1.0
    drho: float = 0.0

    def __post_init__(self):
        if self.attention < 0 or self.effort < 0:
            raise ValueError("attention and effort must be nonnegative")
        if not 0.0 <= self.reputation <= 1.0:
            raise ValueError("reputation must lie in [0, 1]")


def cost_terms(inp: UtilityInputs, forms: UtilityForms = DEFAULT_FORMS,
               beta: Optional[float] = None) -> float:
    """beta*T(E) + gamma*R(E); ``beta`` overrides the profile (used by subsidies)."""
    b = inp.profile.beta if beta is None else beta
    return b * forms.T(inp.effort) + inp.profile.gamma * forms.R(inp.effort)


def utility_base(inp: UtilityInputs, forms: UtilityForms = DEFAULT_FORMS) -> float:
    return inp.profile.alpha * forms.f(inp.attention) - cost_terms(inp, forms)


def reputation_attention_term(inp: UtilityInputs, tau: float,
                              forms: UtilityForms = DEFAULT_FORMS) -> float:
    return inp.profile.alpha * inp.reputation ** tau * forms.f(inp.attention)


def utility_reputation(inp: UtilityInputs, delta: float, tau: float,
                       forms: UtilityForms = DEFAULT_FORMS) -> float:
    if tau <= 1:
        raise ValueError("tau must exceed 1")
    return (reputation_attention_term(inp, tau, forms)
            - cost_terms(inp, forms) + delta * inp.drho)


def utility_monetized(inp: UtilityInputs, forms: UtilityForms = DEFAULT_FORMS) -> float:
    # Role asymmetry enters through the profile's own beta and gamma.
    return utility_base(inp, forms) + inp.profile.delta * forms.M(inp.attention)


def effort_utility(profile: ActorProfile, attention_of_effort: Callable[[float], float],
                   variant: str = "base", forms: UtilityForms = DEFAULT_FORMS,
                   reputation: float = 1.0, drho: float = 0.0,
                   rep_delta: float = 0.0) -> Callable[[float], float]:
    """U(E) for one utility variant with attention produced by ``attention_of_effort``."""
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")

    def u(e: float) -> float:
        inp = UtilityInputs(attention=attention_of_effort(e), effort=e, profile=profile,
                            reputation=reputation, drho=drho)
        if variant == "base":
            return utility_base(inp, forms)
        if variant == "reputation":
            return utility_reputation(inp, rep_delta, profile.tau, forms)
        return utility_monetized(inp, forms)

    return u


def effort_gradient(profile: ActorProfile, attention_of_effort: Callable[[float], float],
                    attention_slope: Callable[[float], float], e: float,
                    variant: str = "base", forms: UtilityForms = DEFAULT_FORMS,
                    reputation: float = 1.0) -> float:
    """Analytic dU/dE by the chain rule through A(E)."""
    a, da = attention_of_effort(e), attention_slope(e)
    benefit = profile.alpha * forms.df(a) * da
    if variant == "reputation":
        benefit *= reputation ** profile.tau
    elif variant == "monetized":
        benefit += profile.delta * forms.dM(a) * da
    elif variant != "base":
        raise ValueError(f"variant must be one of {VARIANTS}")
    return benefit - profile.beta * forms.dT(e) - profile.gamma * forms.dR(e)


def numeric_gradient(u: Callable[[float], float], at: float, h: float = 1e-5) -> float:
    if h <= 0:
        raise ValueError("h must be positive")
    return (u(at + h) - u(at - h)) / (2.0 * h)


def golden_section_max(u: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-9) -> float:
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = u(c), u(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = u(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = u(d)
    return 0.5 * (a + b)


def optimize_effort(profile: ActorProfile, attention_of_effort: Callable[[float], float],
                    bounds: Tuple[float, float], variant: str = "base",
                    forms: UtilityForms = DEFAULT_FORMS, **kwargs) -> Tuple[float, float]:
    """Maximise U(E) over ``bounds``; returns ``(E*, U*)``.

    Golden-section search assumes unimodality. The result is checked against
    a 10,000-point grid and, when the grid finds something better, the search
    is repeated inside the best grid cell.
    """
    lo, hi = bounds
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo < 0 or hi < lo:
        raise ValueError(f"invalid effort bounds {bounds!r}")
    u = effort_utility(profile, attention_of_effort, variant, forms, **kwargs)
    if hi == lo:
        return lo, u(lo)

    candidates = [lo, hi, golden_section_max(u, lo, hi)]
    best = max(candidates, key=u)

    grid = np.linspace(lo, hi, GRID_POINTS)
    values = np.array([u(x) for x in grid])
    k = int(np.argmax(values))
    if values[k] > u(best) + 1e-12:
        cell_lo, cell_hi = grid[max(k - 1, 0)], grid[min(k + 1, GRID_POINTS - 1)]
        refined = golden_section_max(u, cell_lo, cell_hi)
        best = max([best, float(grid[k]), refined], key=u)
    return best, u(best)
