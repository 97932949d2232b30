"""Bayes factor functions for z, t, chi-squared, and F statistics.

Closed-form Bayes factors indexed by standardized effect size, combination
across replicated studies, and an independent numerical oracle that verifies
every closed form by direct integration.
"""

from .bayes_factors import (
    Family,
    OddsValue,
    TestStatistic,
    log_bf,
    log_bf_chisq,
    log_bf_f,
    log_bf_t,
    log_bf_z,
    posterior_odds,
)
from .curves import (
    BFFCurve,
    EffectGrid,
    Study,
    combine,
    evaluate_bff,
    find_crossings,
    refine_max,
)
from .effect_sizes import (
    Design,
    EffectSize,
    StudyDesign,
    Zone,
    classify_zone,
    rmses,
    statistic_family_for,
    tau2_for,
)
from .exports import CurveExport, build_export, emit, parse_csv, render
from .numerics import (
    DEFAULT_QUADRATURE,
    DEFAULT_SERIES,
    IntegrationError,
    QuadratureSpec,
    SeriesError,
    SeriesSpec,
    integrate,
    log_beta,
    log_gamma,
    sum_series,
)
from .priors import (
    GammaNCPPrior,
    NormalMomentPrior,
    gamma_log_density,
    gamma_mode,
    nm_log_density,
    nm_modes,
)

__version__ = "0.1.0"

__all__ = [
    "BFFCurve",
    "CurveExport",
    "DEFAULT_QUADRATURE",
    "DEFAULT_SERIES",
    "Design",
    "EffectGrid",
    "EffectSize",
    "Family",
    "GammaNCPPrior",
    "IntegrationError",
    "NormalMomentPrior",
    "OddsValue",
    "QuadratureSpec",
    "SeriesError",
    "SeriesSpec",
    "Study",
    "StudyDesign",
    "TestStatistic",
    "Zone",
    "build_export",
    "classify_zone",
    "combine",
    "emit",
    "evaluate_bff",
    "find_crossings",
    "gamma_log_density",
    "gamma_mode",
    "integrate",
    "log_beta",
    "log_bf",
    "log_bf_chisq",
    "log_bf_f",
    "log_bf_t",
    "log_bf_z",
    "log_gamma",
    "nm_log_density",
    "nm_modes",
    "parse_csv",
    "posterior_odds",
    "refine_max",
    "render",
    "rmses",
    "statistic_family_for",
    "tau2_for",
]
