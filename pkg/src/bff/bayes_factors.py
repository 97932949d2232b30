"""Closed-form Bayes factors for z, t, chi-squared, and F statistics.

Each function returns ln BF10 for the alternative that places a normal moment
prior (z, t) or a gamma prior (chi-squared, F) on the non-centrality
parameter, with prior scale tau2. The printed forms of these Bayes factors
multiply large powers by exponentials; everything here is rearranged into
sums of log1p terms so the functions stay finite for statistics and scales
far beyond the plotted ranges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class Family(Enum):
    """The statistic families with known closed-form Bayes factors."""

    Z = "z"
    T = "t"
    CHISQ = "chisq"
    F = "f"


@dataclass(frozen=True)
class TestStatistic:
    """A reported test statistic tagged with its family and degrees of freedom.

    df1 is nu for T, k for CHISQ and F; df2 is m (denominator) for F only.
    """

    family: Family
    value: float
    df1: int | None = None
    df2: int | None = None

    def __post_init__(self) -> None:
        if self.family is Family.Z:
            if self.df1 is not None or self.df2 is not None:
                raise ValueError("z statistics carry no degrees of freedom")
        elif self.family is Family.T:
            if self.df1 is None or self.df1 < 1:
                raise ValueError(f"t statistics need df1 >= 1, got {self.df1}")
            if self.df2 is not None:
                raise ValueError("t statistics carry no denominator df")
        elif self.family is Family.CHISQ:
            if self.df1 is None or self.df1 < 1:
                raise ValueError(f"chi-squared statistics need df1 >= 1, got {self.df1}")
            if self.df2 is not None:
                raise ValueError("chi-squared statistics carry no denominator df")
            if self.value < 0:
                raise ValueError(f"chi-squared statistic must be >= 0, got {self.value}")
        elif self.family is Family.F:
            if self.df1 is None or self.df1 < 1:
                raise ValueError(f"F statistics need df1 >= 1, got {self.df1}")
            if self.df2 is None or self.df2 < 1:
                raise ValueError(f"F statistics need df2 >= 1, got {self.df2}")
            if self.value < 0:
                raise ValueError(f"F statistic must be >= 0, got {self.value}")


@dataclass(frozen=True)
class OddsValue:
    """A Bayes factor carried as ln BF10; positive favors the alternative."""

    log_bf10: float

    @property
    def bf10(self) -> float:
        return math.exp(self.log_bf10)


def _check_tau2(tau2: float) -> None:
    if tau2 <= 0:
        raise ValueError(f"tau2 must be > 0, got {tau2}")


def log_bf_z(z: float, tau2: float) -> float:
    """ln BF10 for a z statistic under a J(0, tau2) prior on the mean shift."""
    _check_tau2(tau2)
    w = tau2 * z * z / (tau2 + 1.0)
    return -1.5 * math.log1p(tau2) + math.log1p(w) + 0.5 * w


def log_bf_t(t: float, nu: int, tau2: float) -> float:
    """ln BF10 for a t statistic on nu df under a J(0, tau2) prior."""
    if nu < 1:
        raise ValueError(f"nu must be >= 1, got {nu}")
    _check_tau2(tau2)
    t2 = t * t
    s = 1.0 + t2 / (nu * (1.0 + tau2))
    q = tau2 * (nu + 1.0) / (nu * (1.0 + tau2))
    return (
        -1.5 * math.log1p(tau2)
        + 0.5 * (nu + 1.0) * (math.log1p(t2 / nu) - math.log1p(t2 / (nu * (1.0 + tau2))))
        + math.log1p(q * t2 / s)
    )


def log_bf_chisq(h: float, k: int, tau2: float) -> float:
    """ln BF10 for a chi-squared statistic h on k df under a gamma prior."""
    if h < 0:
        raise ValueError(f"h must be >= 0, got {h}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    _check_tau2(tau2)
    u = tau2 * h / (tau2 + 1.0)
    return -(0.5 * k + 1.0) * math.log1p(tau2) + math.log1p(u / k) + 0.5 * u


def log_bf_f(f: float, k: int, m: int, tau2: float) -> float:
    """ln BF10 for an F statistic on (k, m) df under a gamma prior."""
    if f < 0:
        raise ValueError(f"f must be >= 0, got {f}")
    if k < 1 or m < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got ({k}, {m})")
    _check_tau2(tau2)
    v = m * (tau2 + 1.0)
    s = 1.0 + k * f / v
    return (
        -(0.5 * k + 1.0) * math.log1p(tau2)
        + 0.5 * (k + m) * (math.log1p(k * f / m) - math.log1p(k * f / v))
        + math.log1p((k + m) * tau2 * f / (v * s))
    )


def log_bf(stat: TestStatistic, tau2: float) -> float:
    """Dispatch to the closed form matching stat.family."""
    if stat.family is Family.Z:
        return log_bf_z(stat.value, tau2)
    if stat.family is Family.T:
        return log_bf_t(stat.value, stat.df1, tau2)
    if stat.family is Family.CHISQ:
        return log_bf_chisq(stat.value, stat.df1, tau2)
    return log_bf_f(stat.value, stat.df1, stat.df2, tau2)


def posterior_odds(bf: OddsValue, prior_odds: float) -> float:
    """Posterior odds of H1 to H0: BF10 times the prior odds."""
    if prior_odds <= 0:
        raise ValueError(f"prior_odds must be > 0, got {prior_odds}")
    return math.exp(bf.log_bf10) * prior_odds
