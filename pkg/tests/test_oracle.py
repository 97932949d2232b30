"""Tests for the quadrature/series oracle used to verify the closed forms."""

import math

import pytest
from scipy import stats

from bff.bayes_factors import (
    Family,
    TestStatistic,
    log_bf,
    log_bf_chisq,
    log_bf_f,
)
from bff.numerics import QuadratureSpec, integrate
from bff.oracle import (
    NoncentralDensityQuery,
    log_bf_quadrature,
    log_density_noncentral,
    log_density_null,
    log_marginal_mixture_chisq,
    log_marginal_mixture_f,
    noncentral_t_log_density_series,
)

NORM_QUAD = QuadratureSpec(abs_tol=1e-9, rel_tol=1e-8, max_subdivisions=2000)


class TestQueryValidation:
    def test_noncentrality_sign(self):
        NoncentralDensityQuery(Family.Z, 1.0, -2.0)
        NoncentralDensityQuery(Family.T, 1.0, -2.0, df1=5)
        with pytest.raises(ValueError):
            NoncentralDensityQuery(Family.CHISQ, 5.0, -1.0, df1=3)
        with pytest.raises(ValueError):
            NoncentralDensityQuery(Family.F, 2.0, -1.0, df1=3, df2=20)


class TestNullDensities:
    def test_reference_values(self):
        assert math.isclose(
            log_density_null(Family.Z, 0.0), -0.9189385332046727, rel_tol=1e-14
        )
        assert math.isclose(
            log_density_null(Family.CHISQ, 2.0, 2), -1.6931471805599454, rel_tol=1e-14
        )
        # F(4,4) density at 1 is 3/8
        assert math.isclose(
            log_density_null(Family.F, 1.0, 4, 4), math.log(0.375), rel_tol=1e-14
        )

    def test_against_scipy(self):
        for x in [-3.0, -1.0, 0.0, 1.7]:
            assert abs(log_density_null(Family.Z, x) - stats.norm.logpdf(x)) <= 1e-12
        for nu in [1, 5, 30]:
            for x in [-4.0, 0.3, 2.5]:
                got = log_density_null(Family.T, x, nu)
                assert abs(got - stats.t.logpdf(x, nu)) <= 1e-12
        for k in [1, 2, 6]:
            for h in [0.3, 2.0, 10.0]:
                got = log_density_null(Family.CHISQ, h, k)
                assert abs(got - stats.chi2.logpdf(h, k)) <= 1e-12
        for k, m in [(1, 10), (3, 30), (8, 120)]:
            for f in [0.3, 1.0, 4.0]:
                got = log_density_null(Family.F, f, k, m)
                assert abs(got - stats.f.logpdf(f, k, m)) <= 1e-12


class TestNoncentralDensities:
    def test_reference_values(self):
        # 40-digit references:
        #   t:     -1.15643447591509226345
        #   chisq: -2.886391641779269663353
        #   f:     -1.498424707524162668381
        got = log_density_noncentral(NoncentralDensityQuery(Family.T, 2.0, 1.5, df1=10))
        assert math.isclose(got, -1.1564344759150923, rel_tol=1e-12)
        got = log_density_noncentral(
            NoncentralDensityQuery(Family.CHISQ, 10.2, 3.7, df1=4)
        )
        assert math.isclose(got, -2.8863916417792697, rel_tol=1e-12)
        got = log_density_noncentral(
            NoncentralDensityQuery(Family.F, 2.2, 2.9, df1=3, df2=25)
        )
        assert math.isclose(got, -1.4984247075241627, rel_tol=1e-12)

    def test_against_scipy(self):
        cases = [
            (NoncentralDensityQuery(Family.T, 2.0, 1.5, df1=10), stats.nct(10, 1.5)),
            (NoncentralDensityQuery(Family.T, -1.5, -1.0, df1=4), stats.nct(4, -1.0)),
            (NoncentralDensityQuery(Family.T, 3.0, 2.0, df1=25), stats.nct(25, 2.0)),
            (
                NoncentralDensityQuery(Family.CHISQ, 10.2, 3.7, df1=4),
                stats.ncx2(4, 3.7),
            ),
            (
                NoncentralDensityQuery(Family.CHISQ, 1.4, 0.5, df1=1),
                stats.ncx2(1, 0.5),
            ),
            (
                NoncentralDensityQuery(Family.F, 2.2, 2.9, df1=3, df2=25),
                stats.ncf(3, 25, 2.9),
            ),
            (
                NoncentralDensityQuery(Family.F, 0.8, 6.0, df1=8, df2=120),
                stats.ncf(8, 120, 6.0),
            ),
        ]
        for query, dist in cases:
            got = log_density_noncentral(query)
            assert math.isclose(got, dist.logpdf(query.value), rel_tol=1e-9, abs_tol=1e-9)

    def test_series_route_matches_integral_route(self):
        # When lam*t < 0 the series alternates and cancellation caps the
        # achievable agreement a little above 1e-9 in log space.
        for t in [-3.0, 0.5, 2.0, 6.0]:
            for nu in [3, 17]:
                for lam in [-2.0, 0.8, 4.0]:
                    via_integral = log_density_noncentral(
                        NoncentralDensityQuery(Family.T, t, lam, df1=nu)
                    )
                    via_series = noncentral_t_log_density_series(t, nu, lam)
                    assert math.isclose(
                        via_integral, via_series, rel_tol=1e-8, abs_tol=1e-12
                    )

    def test_zero_noncentrality_reduces_to_null(self):
        q = NoncentralDensityQuery(Family.CHISQ, 7.3, 0.0, df1=5)
        assert log_density_noncentral(q) == log_density_null(Family.CHISQ, 7.3, 5)
        q = NoncentralDensityQuery(Family.F, 1.9, 0.0, df1=3, df2=40)
        assert math.isclose(
            log_density_noncentral(q),
            log_density_null(Family.F, 1.9, 3, 40),
            rel_tol=1e-14,
        )
        q = NoncentralDensityQuery(Family.T, 1.3, 0.0, df1=9)
        assert math.isclose(
            log_density_noncentral(q),
            log_density_null(Family.T, 1.3, 9),
            rel_tol=1e-12,
        )
        assert math.isclose(
            noncentral_t_log_density_series(1.3, 9, 0.0),
            log_density_null(Family.T, 1.3, 9),
            rel_tol=1e-12,
        )

    def test_z_shift(self):
        q = NoncentralDensityQuery(Family.Z, 2.5, 2.5)
        assert log_density_noncentral(q) == -0.5 * math.log(2.0 * math.pi)

    @pytest.mark.parametrize("lam", [0.0, 1.0, 5.0, 20.0])
    def test_densities_integrate_to_one(self, lam):
        def z_density(x):
            return math.exp(
                log_density_noncentral(NoncentralDensityQuery(Family.Z, x, lam))
            )

        def t_density(x):
            return math.exp(
                log_density_noncentral(NoncentralDensityQuery(Family.T, x, lam, df1=6))
            )

        def chisq_density(x):
            return math.exp(
                log_density_noncentral(
                    NoncentralDensityQuery(Family.CHISQ, x, lam, df1=3)
                )
            )

        def f_density(x):
            return math.exp(
                log_density_noncentral(
                    NoncentralDensityQuery(Family.F, x, lam, df1=4, df2=14)
                )
            )

        assert abs(integrate(z_density, -math.inf, math.inf, NORM_QUAD) - 1.0) <= 1e-7
        assert abs(integrate(t_density, -math.inf, math.inf, NORM_QUAD) - 1.0) <= 1e-7
        assert abs(integrate(chisq_density, 0.0, math.inf, NORM_QUAD) - 1.0) <= 1e-7
        assert abs(integrate(f_density, 0.0, math.inf, NORM_QUAD) - 1.0) <= 1e-7


class TestQuadratureBayesFactors:
    def test_matches_closed_forms(self):
        cases = [
            (TestStatistic(Family.Z, 2.0), 1.125),
            (TestStatistic(Family.T, 2.5, df1=20), 1.0),
            (TestStatistic(Family.CHISQ, 12.65, df1=6), 0.866075),
            (TestStatistic(Family.F, 3.2, df1=3, df2=40), 2.0),
        ]
        for stat, tau2 in cases:
            closed = log_bf(stat, tau2)
            quad = log_bf_quadrature(stat, tau2)
            assert math.isclose(closed, quad, rel_tol=1e-8, abs_tol=1e-10)

    def test_rejects_nonpositive_tau2(self):
        with pytest.raises(ValueError):
            log_bf_quadrature(TestStatistic(Family.Z, 2.0), 0.0)


class TestMixtureMarginals:
    def test_chisq_mixture_recovers_closed_form(self):
        for h in [2.0, 12.65]:
            for k in [2, 6]:
                for tau2 in [0.3, 0.866075, 5.0]:
                    via_mixture = log_marginal_mixture_chisq(
                        h, k, tau2
                    ) - log_density_null(Family.CHISQ, h, k)
                    assert abs(via_mixture - log_bf_chisq(h, k, tau2)) <= 1e-12

    def test_f_mixture_recovers_closed_form(self):
        for f, k, m in [(1.0, 2, 82), (4.05, 2, 82), (2.2, 3, 25)]:
            for tau2 in [0.4, 1.5]:
                via_mixture = log_marginal_mixture_f(f, k, m, tau2) - log_density_null(
                    Family.F, f, k, m
                )
                assert abs(via_mixture - log_bf_f(f, k, m, tau2)) <= 1e-12

    def test_mixtures_integrate_to_one(self):
        def chisq_marginal(h):
            return math.exp(log_marginal_mixture_chisq(h, 6, 0.866075))

        def f_marginal(f):
            return math.exp(log_marginal_mixture_f(f, 3, 25, 0.8))

        assert abs(integrate(chisq_marginal, 0.0, math.inf, NORM_QUAD) - 1.0) <= 1e-7
        assert abs(integrate(f_marginal, 0.0, math.inf, NORM_QUAD) - 1.0) <= 1e-7

    def test_small_tau2_collapses_to_null(self):
        got = log_marginal_mixture_chisq(5.0, 3, 1e-12)
        assert math.isclose(got, log_density_null(Family.CHISQ, 5.0, 3), rel_tol=1e-9)
