"""Bayes factor functions over effect-size grids.

A BFF curve is the map omega -> ln BF10 where each omega fixes the prior
scale tau2 through the study design. This module evaluates single-study
curves, combines independent studies by summing log Bayes factors at a shared
omega, refines the grid argmax by golden-section search, and locates
threshold crossings by bisection on the true function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .bayes_factors import TestStatistic, log_bf
from .effect_sizes import EffectSize, StudyDesign, statistic_family_for, tau2_for

_REFINE_TOL = 1e-6
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Study:
    """A reported statistic together with the design that produced it."""

    statistic: TestStatistic
    design: StudyDesign
    label: str = ""

    def __post_init__(self) -> None:
        expected = statistic_family_for(self.design)
        if self.statistic.family is not expected:
            raise ValueError(
                f"statistic family {self.statistic.family.value} does not match "
                f"design {self.design.design.value} (expects {expected.value})"
            )
        if self.design.k is not None and self.statistic.df1 != self.design.k:
            raise ValueError(
                f"statistic df1={self.statistic.df1} does not match design "
                f"effect dimension k={self.design.k}"
            )

    def log_bf_at(self, omega: float) -> float:
        """ln BF10 at effect size omega; exactly 0 in the omega = 0 limit."""
        tau2 = tau2_for(self.design, EffectSize(omega))
        if tau2 == 0.0:
            return 0.0
        return log_bf(self.statistic, tau2)


@dataclass(frozen=True)
class EffectGrid:
    """A uniform omega grid of `steps` points spanning [min, max]."""

    min: float = 0.0
    max: float = 1.0
    steps: int = 500

    def __post_init__(self) -> None:
        if self.min < 0:
            raise ValueError(f"grid min must be >= 0, got {self.min}")
        if self.min >= self.max:
            raise ValueError(f"grid needs min < max, got [{self.min}, {self.max}]")
        if self.steps < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.steps}")

    def omegas(self) -> list[float]:
        return np.linspace(self.min, self.max, self.steps).tolist()


@dataclass(frozen=True)
class BFFCurve:
    """Grid evaluations of a BFF plus its refined maximum and BF=1 crossings.

    log_bf_fn is the exact function the points sample; refinement and
    crossing searches evaluate it directly rather than interpolating.
    """

    points: tuple[tuple[float, float], ...]
    max_log_bf: float
    argmax_omega: float
    crossings: tuple[float, ...]
    label: str = ""
    log_bf_fn: Callable[[float], float] = field(repr=False, compare=False, default=None)


def refine_max(
    points: Sequence[tuple[float, float]], fn: Callable[[float], float]
) -> tuple[float, float]:
    """Refine the argmax of fn within the grid bracket around the best point.

    Golden-section search narrows the bracket to width <= 1e-6; the result is
    never below the best grid value, so a monotone curve keeps its boundary
    argmax.
    """
    best = max(range(len(points)), key=lambda i: points[i][1])
    best_omega, best_value = points[best]
    a = points[best - 1][0] if best > 0 else best_omega
    b = points[best + 1][0] if best + 1 < len(points) else best_omega
    while b - a > _REFINE_TOL:
        c = b - _INV_PHI * (b - a)
        d = a + _INV_PHI * (b - a)
        if fn(c) >= fn(d):
            b = d
        else:
            a = c
    omega = 0.5 * (a + b)
    value = fn(omega)
    if value >= best_value:
        return omega, value
    return best_omega, best_value


def _crossings(
    points: Sequence[tuple[float, float]],
    fn: Callable[[float], float],
    threshold: float,
) -> tuple[float, ...]:
    """Omegas where fn crosses threshold, found by bisection on sign changes.

    Grid points landing exactly on the threshold (notably the omega = 0
    limit, where every curve starts at ln BF = 0) are not counted; only
    strict sign changes between adjacent points are.
    """
    found = []
    for (wa, ya), (wb, yb) in zip(points, points[1:]):
        ga, gb = ya - threshold, yb - threshold
        if ga == 0.0 or gb == 0.0 or (ga > 0) == (gb > 0):
            continue
        lo, hi, glo = wa, wb, ga
        while hi - lo > _REFINE_TOL:
            mid = 0.5 * (lo + hi)
            gmid = fn(mid) - threshold
            if gmid == 0.0:
                lo = hi = mid
            elif (gmid > 0) == (glo > 0):
                lo, glo = mid, gmid
            else:
                hi = mid
        found.append(0.5 * (lo + hi))
    return tuple(found)


def _build_curve(
    fn: Callable[[float], float], grid: EffectGrid, label: str
) -> BFFCurve:
    points = tuple((w, fn(w)) for w in grid.omegas())
    argmax_omega, max_log_bf = refine_max(points, fn)
    return BFFCurve(
        points=points,
        max_log_bf=max_log_bf,
        argmax_omega=argmax_omega,
        crossings=_crossings(points, fn, 0.0),
        label=label,
        log_bf_fn=fn,
    )


def evaluate_bff(study: Study, grid: EffectGrid = EffectGrid()) -> BFFCurve:
    """The BFF of one study on the given grid."""
    return _build_curve(study.log_bf_at, grid, study.label)


def combine(studies: Sequence[Study], grid: EffectGrid = EffectGrid()) -> BFFCurve:
    """Combined BFF of independent studies sharing one effect-size axis.

    The combined Bayes factor at omega is the product of the per-study Bayes
    factors, each evaluated at its own design's tau2 for that omega. Callers
    are responsible for the studies measuring comparable effects.
    """
    if len(studies) == 0:
        raise ValueError("combine requires at least one study")

    def fn(omega: float) -> float:
        return sum(s.log_bf_at(omega) for s in studies)

    label = " + ".join(s.label for s in studies if s.label)
    return _build_curve(fn, grid, label)


def find_crossings(curve: BFFCurve, threshold_log_bf: float) -> list[float]:
    """Omegas where the curve crosses the given log Bayes factor."""
    return list(_crossings(curve.points, curve.log_bf_fn, threshold_log_bf))
