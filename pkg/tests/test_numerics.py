import math

import numpy as np
import pytest
import scipy.optimize
import scipy.special
import scipy.stats

from tailpath.errors import BracketError, ConvergenceError, DomainError
from tailpath.numerics import (
    aitken_limit,
    betainc_regularized,
    brent_root,
    integrate_adaptive,
    maximize_1d,
    student_t_cdf,
    student_t_pdf,
    student_t_quantile,
)
from tailpath.singular import log_gap


class TestStudentT:
    @pytest.mark.parametrize("nu", [1.0, 2.0, 3.0, 4.0, 5.0, 10.0, 11.0, 25.0])
    def test_cdf_against_scipy(self, nu):
        for x in np.linspace(-8.0, 8.0, 33):
            assert student_t_cdf(float(x), nu) == pytest.approx(
                scipy.stats.t.cdf(x, df=nu), abs=1e-13
            )

    def test_pdf_against_scipy(self):
        for nu in (2.0, 4.0, 7.5):
            for x in np.linspace(-6.0, 6.0, 25):
                assert student_t_pdf(float(x), nu) == pytest.approx(
                    scipy.stats.t.pdf(x, df=nu), rel=1e-13
                )

    def test_cdf_against_quadrature_of_pdf(self):
        # independent in-repo oracle: integrate the density
        for nu in (3.0, 5.0):
            for x in (-2.5, -0.7, 0.4, 1.9):
                half = integrate_adaptive(
                    lambda s: student_t_pdf(s, nu), 0.0, x, abs_tol=1e-12
                )
                assert student_t_cdf(x, nu) == pytest.approx(0.5 + half, abs=1e-10)

    def test_reflection_identity(self):
        for nu in (1.5, 4.0, 9.0):
            for x in (0.0, 0.3, 1.7, 6.0, 40.0):
                total = student_t_cdf(x, nu) + student_t_cdf(-x, nu)
                assert abs(total - 1.0) <= 1e-12

    def test_pdf_even_and_normalized(self):
        for nu in (2.0, 6.0):
            assert student_t_pdf(1.3, nu) == pytest.approx(student_t_pdf(-1.3, nu), rel=0)
            mass = integrate_adaptive(
                lambda s: student_t_pdf(s, nu), -math.inf, math.inf, abs_tol=1e-11
            )
            assert mass == pytest.approx(1.0, abs=1e-9)

    def test_quantile_roundtrip(self):
        for nu in (2.0, 5.0, 30.0):
            for p in (1e-6, 0.01, 0.3, 0.5, 0.77, 0.999):
                x = student_t_quantile(p, nu)
                assert student_t_cdf(x, nu) == pytest.approx(p, abs=1e-12)

    def test_extreme_tails_dont_cancel(self):
        # half-tail evaluation keeps small probabilities meaningful
        p = student_t_cdf(-50.0, 4.0)
        assert 0.0 < p < 1e-6
        assert p == pytest.approx(scipy.stats.t.cdf(-50.0, df=4), rel=1e-10)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            student_t_cdf(0.0, -1.0)
        with pytest.raises(DomainError):
            student_t_quantile(0.0, 4.0)


class TestBetainc:
    def test_against_scipy(self):
        for a, b in ((0.5, 0.5), (2.0, 3.0), (5.5, 0.7), (10.0, 10.0)):
            for x in (0.0, 0.01, 0.2, 0.5, 0.9, 0.999, 1.0):
                assert betainc_regularized(a, b, x) == pytest.approx(
                    scipy.special.betainc(a, b, x), abs=1e-13
                )


class TestIntegrateAdaptive:
    def test_polynomial_exact(self):
        assert integrate_adaptive(lambda x: 1.0, 0.0, 1.0) == pytest.approx(1.0, abs=1e-14)
        assert integrate_adaptive(lambda x: x * x, 0.0, 3.0) == pytest.approx(9.0, abs=1e-12)

    def test_semi_infinite_exponential(self):
        got = integrate_adaptive(lambda x: math.exp(-x), 0.0, math.inf, abs_tol=1e-12)
        assert got == pytest.approx(1.0, abs=1e-10)

    def test_endpoint_singularity(self):
        got = integrate_adaptive(
            lambda x: x ** -0.5 if x > 0 else 0.0, 0.0, 1.0, rel_tol=1e-9
        )
        assert got == pytest.approx(2.0, abs=1e-8)

    def test_doubly_infinite_gaussianish(self):
        got = integrate_adaptive(
            lambda x: math.exp(-x * x), -math.inf, math.inf, abs_tol=1e-12
        )
        assert got == pytest.approx(math.sqrt(math.pi), abs=1e-10)

    def test_orientation_and_linearity(self):
        fwd = integrate_adaptive(lambda x: x, 0.0, 2.0)
        rev = integrate_adaptive(lambda x: x, 2.0, 0.0)
        assert fwd == pytest.approx(-rev, abs=1e-13)

    def test_budget_exhaustion_raises(self):
        # rapidly oscillating integrand with a tiny subdivision budget
        with pytest.raises(ConvergenceError):
            integrate_adaptive(
                lambda x: math.sin(1.0 / (x + 1e-9)),
                0.0,
                1.0,
                abs_tol=1e-15,
                rel_tol=1e-15,
                max_subdivisions=3,
            )


class TestBrent:
    def test_sqrt2(self):
        root = brent_root(lambda x: x * x - 2.0, 0.0, 2.0)
        assert root == pytest.approx(math.sqrt(2.0), abs=1e-13)

    def test_against_scipy_brentq_on_curve_gap(self):
        f = lambda x: log_gap(0.35, 0.7, 0.5, x)
        lo, hi = 0.25 * (1 + 1e-14), 1 - 1e-14
        ours = brent_root(f, lo, hi)
        ref = scipy.optimize.brentq(f, lo, hi, xtol=1e-15, rtol=8.9e-16)
        assert ours == pytest.approx(ref, abs=1e-12)

    def test_exact_endpoint_root(self):
        assert brent_root(lambda x: x - 1.0, 1.0, 2.0) == 1.0

    def test_no_sign_change_raises(self):
        with pytest.raises(BracketError):
            brent_root(lambda x: 1.0 + x * x, -1.0, 1.0)


class TestMaximize1d:
    def test_smooth_parabola(self):
        res = maximize_1d(lambda x: -((x - 0.3) ** 2), 0.0, 1.0)
        assert res.argmax == pytest.approx(0.3, abs=1e-9)
        assert res.max_value == pytest.approx(0.0, abs=1e-15)

    def test_constant_plateau_breaks_to_left(self):
        res = maximize_1d(lambda x: 5.0, 0.0, 1.0, n_grid=17)
        assert res.argmax == 0.0

    def test_kinked_profile(self):
        # min(0.35 b, 0.7 / b) peaks at sqrt(2); kink is not smooth
        res = maximize_1d(lambda b: min(0.35 * b, 0.7 / b), 0.5, 3.0)
        assert res.argmax == pytest.approx(math.sqrt(2.0), abs=1e-6)
        assert res.max_value == pytest.approx(math.sqrt(0.245), abs=1e-8)

    def test_improves_on_grid(self):
        f = lambda x: -((x - 0.123456) ** 2)
        coarse = max(f(g) for g in np.linspace(0.0, 1.0, 8))
        res = maximize_1d(f, 0.0, 1.0, n_grid=8)
        assert res.max_value >= coarse

    def test_nan_treated_as_dead_zone(self):
        f = lambda x: float("nan") if x < 0.5 else -((x - 0.7) ** 2)
        res = maximize_1d(f, 0.0, 1.0)
        assert res.argmax == pytest.approx(0.7, abs=1e-8)

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            maximize_1d(lambda x: x, 1.0, 0.0)


class TestAitken:
    def test_geometric_sequence(self):
        # x_k = L - c r^k is accelerated exactly
        seq = [1.0 - 0.5 * 0.3 ** k for k in range(3)]
        limit, err = aitken_limit(seq)
        assert limit == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_differences_fall_back(self):
        limit, err = aitken_limit([2.0, 2.0, 2.0])
        assert limit == 2.0
        assert err == 0.0

    def test_needs_three_points(self):
        with pytest.raises(DomainError):
            aitken_limit([1.0, 2.0])
