import math

import numpy as np
import pytest
import scipy.stats

from tailpath.copulas import (
    AsymGumbel,
    Comonotone,
    FGM,
    Independence,
    MarshallOlkin,
    PickandsFn,
    StudentT,
    Survival,
    rectangle_volume,
    survival,
)
from tailpath.errors import DomainError
from tailpath.numerics import integrate_adaptive, student_t_pdf

ALL_MODELS = [
    Independence(),
    Comonotone(),
    FGM(-1.0),
    FGM(0.6),
    MarshallOlkin(0.35, 0.7),
    AsymGumbel(0.35, 0.7, 2.0),
    StudentT(4.0, 0.5),
    survival(MarshallOlkin(0.35, 0.7)),
    survival(AsymGumbel(0.35, 0.7, 2.0)),
]


def model_id(model):
    return model.spec()


class TestClosedFormValues:
    def test_independence(self):
        assert Independence().cdf(0.3, 0.5) == 0.15

    def test_comonotone(self):
        assert Comonotone().cdf(0.3, 0.5) == 0.3

    def test_fgm_theta_minus_one(self):
        # 0.2*0.2*(1 - 0.8*0.8) = 0.04 * 0.36
        assert FGM(-1.0).cdf(0.2, 0.2) == pytest.approx(0.0144, abs=1e-15)

    def test_marshall_olkin(self):
        want = min(0.5 ** 0.65 * 0.5, 0.5 * 0.5 ** 0.3)
        assert MarshallOlkin(0.35, 0.7).cdf(0.5, 0.5) == pytest.approx(want, rel=1e-15)

    def test_survival_identity(self):
        base = MarshallOlkin(0.35, 0.7)
        s = survival(base)
        u = v = 0.9
        want = u + v - 1.0 + base.cdf(1.0 - u, 1.0 - v)
        assert s.cdf(u, v) == pytest.approx(want, rel=0)

    def test_ag_boundary_continuity(self):
        m = AsymGumbel(0.35, 0.7, 2.0)
        assert m.cdf(0.4, 1.0) == 0.4
        assert m.cdf(1.0, 0.8) == 0.8
        assert m.cdf(0.0, 0.7) == 0.0


class TestParameterValidation:
    def test_fgm_range(self):
        with pytest.raises(DomainError):
            FGM(1.5)

    def test_mo_range(self):
        with pytest.raises(DomainError):
            MarshallOlkin(0.0, 0.5)

    def test_ag_theta(self):
        with pytest.raises(DomainError):
            AsymGumbel(0.5, 0.5, 1.0)

    def test_t_params(self):
        with pytest.raises(DomainError):
            StudentT(0.0, 0.5)
        with pytest.raises(DomainError):
            StudentT(4.0, 1.0)

    def test_cdf_domain(self):
        with pytest.raises(DomainError):
            Independence().cdf(-0.1, 0.5)

    def test_survival_rejects_double_wrap(self):
        with pytest.raises(DomainError):
            Survival(Survival(Independence()))

    def test_survival_helper_unwraps(self):
        base = MarshallOlkin(0.35, 0.7)
        assert survival(survival(base)) is base


@pytest.mark.parametrize("model", ALL_MODELS, ids=model_id)
class TestSharedInvariants:
    def test_frechet_hoeffding(self, model):
        slack = 2e-8 if isinstance(model, StudentT) else 1e-15
        for u in np.linspace(0.0, 1.0, 21):
            for v in np.linspace(0.0, 1.0, 21):
                c = model.cdf(float(u), float(v))
                assert c >= max(u + v - 1.0, 0.0) - slack
                assert c <= min(u, v) + slack

    def test_uniform_margins(self, model):
        slack = 2e-8 if isinstance(model, StudentT) else 1e-12
        for w in (0.0, 0.21, 0.5, 0.83, 1.0):
            assert model.cdf(w, 1.0) == pytest.approx(w, abs=slack)
            assert model.cdf(1.0, w) == pytest.approx(w, abs=slack)

    def test_two_increasing(self, model):
        rng = np.random.default_rng(42)
        slack = 5e-8 if isinstance(model, StudentT) else 1e-12
        for _ in range(40):
            if isinstance(model, StudentT):
                # quadrature-backed cdf: use rectangles with sides >= 0.05
                # so true volumes dominate the error budget
                u1 = float(rng.uniform(0.0, 0.9))
                v1 = float(rng.uniform(0.0, 0.9))
                u2 = float(min(1.0, u1 + rng.uniform(0.05, 1.0 - u1 + 0.05)))
                v2 = float(min(1.0, v1 + rng.uniform(0.05, 1.0 - v1 + 0.05)))
            else:
                u1, u2 = sorted(map(float, rng.uniform(0.0, 1.0, 2)))
                v1, v2 = sorted(map(float, rng.uniform(0.0, 1.0, 2)))
            assert rectangle_volume(model, u1, u2, v1, v2) >= -slack

    def test_spec_round_trips_information(self, model):
        text = model.spec()
        assert text
        assert text == model.spec()


class TestStudentTCopula:
    def test_rho_zero_cross_median(self):
        # conditioning split: C(u, 1/2) = u/2 exactly when the correlation
        # vanishes, and symmetrically in the other argument
        m = StudentT(4.0, 0.0)
        for w in (0.1, 0.37, 0.5, 0.9):
            assert m.cdf(w, 0.5) == pytest.approx(w / 2.0, abs=1e-10)
            assert m.cdf(0.5, w) == pytest.approx(w / 2.0, abs=1e-10)

    def test_orthant_probability(self):
        # P(X<=0, Y<=0) = 1/4 + arcsin(rho) / (2 pi) for elliptical pairs
        m = StudentT(4.0, 0.5)
        want = 0.25 + math.asin(0.5) / (2.0 * math.pi)
        assert m.cdf(0.5, 0.5) == pytest.approx(want, abs=1e-10)

    def test_exchangeability(self):
        m = StudentT(3.0, -0.4)
        for u, v in ((0.2, 0.7), (0.05, 0.4), (0.66, 0.91)):
            assert m.cdf(u, v) == pytest.approx(m.cdf(v, u), abs=1e-8)

    def test_against_monte_carlo(self):
        m = StudentT(4.0, 0.5)
        pts = m.sample(10 ** 6, seed=1234)
        for u, v in ((0.1, 0.1), (0.3, 0.6), (0.8, 0.5)):
            emp = float(np.mean((pts[:, 0] <= u) & (pts[:, 1] <= v)))
            p = m.cdf(u, v)
            se = math.sqrt(p * (1.0 - p) / 10 ** 6)
            assert abs(emp - p) <= 4.0 * se

    def test_survival_t_equals_t(self):
        # elliptical symmetry: the survival copula coincides with the copula
        m = StudentT(4.0, 0.5)
        sm = Survival(m)
        for u, v in ((0.2, 0.3), (0.5, 0.8), (0.05, 0.95)):
            assert sm.cdf(u, v) == pytest.approx(m.cdf(u, v), abs=5e-8)


class TestPickands:
    def test_endpoints_and_symmetry_point(self):
        a = PickandsFn(0.35, 0.7, 2.0)
        assert a(0.0) == pytest.approx(1.0, abs=1e-15)
        assert a(1.0) == pytest.approx(1.0, abs=1e-15)
        mid = 0.5 * (1.0 - 0.7) + 0.5 * (1.0 - 0.35) + math.hypot(0.35, 0.7) / 2.0
        assert a(0.5) == pytest.approx(mid, rel=1e-15)

    def test_bounds_and_convexity(self):
        a = PickandsFn(0.35, 0.7, 2.0)
        ws = np.linspace(0.0, 1.0, 101)
        vals = [a(float(w)) for w in ws]
        for w, val in zip(ws, vals):
            assert max(w, 1.0 - w) - 1e-15 <= val <= 1.0 + 1e-15
        for i in range(1, 100):
            assert vals[i] <= 0.5 * (vals[i - 1] + vals[i + 1]) + 1e-15

    def test_domain(self):
        with pytest.raises(DomainError):
            PickandsFn(0.35, 0.7, 2.0)(1.2)


class TestSamplers:
    def test_comonotone_diagonal(self):
        pts = Comonotone().sample(1000, seed=11)
        assert np.all(pts[:, 0] == pts[:, 1])

    def test_seed_determinism(self):
        for model in ALL_MODELS:
            a = model.sample(64, seed=5)
            b = model.sample(64, seed=5)
            assert np.array_equal(a, b), model.spec()

    def test_output_shape_and_range(self):
        for model in ALL_MODELS:
            pts = model.sample(257, seed=2)
            assert pts.shape == (257, 2)
            assert np.all(pts >= 0.0) and np.all(pts <= 1.0), model.spec()

    @pytest.mark.parametrize(
        "model,n",
        [
            (Independence(), 40000),
            (MarshallOlkin(0.35, 0.7), 40000),
            (survival(MarshallOlkin(0.35, 0.7)), 40000),
            (FGM(-1.0), 20000),
            (AsymGumbel(0.35, 0.7, 2.0), 20000),
            (StudentT(4.0, 0.5), 30000),
        ],
        ids=lambda m: m.spec() if hasattr(m, "spec") else str(m),
    )
    def test_empirical_cdf_matches(self, model, n):
        pts = model.sample(n, seed=99)
        for u in (0.1, 0.5, 0.9):
            for v in (0.3, 0.7):
                p = model.cdf(u, v)
                emp = float(np.mean((pts[:, 0] <= u) & (pts[:, 1] <= v)))
                se = math.sqrt(max(p * (1.0 - p), 1e-12) / n)
                assert abs(emp - p) <= 4.0 * se, (model.spec(), u, v)

    def test_independence_kendall_tau(self):
        pts = Independence().sample(100_000, seed=17)
        tau = scipy.stats.kendalltau(pts[:, 0], pts[:, 1]).statistic
        assert abs(tau) <= 0.01

    def test_mo_kendall_tau(self):
        # Marshall-Olkin closed form: tau = ab / (a + b - ab)
        alpha, beta = 0.35, 0.7
        want = alpha * beta / (alpha + beta - alpha * beta)
        pts = MarshallOlkin(alpha, beta).sample(100_000, seed=23)
        tau = scipy.stats.kendalltau(pts[:, 0], pts[:, 1]).statistic
        assert tau == pytest.approx(want, abs=0.01)


class TestRectangleVolume:
    def test_full_square_is_one(self):
        for model in ALL_MODELS:
            vol = rectangle_volume(model, 0.0, 1.0, 0.0, 1.0)
            assert vol == pytest.approx(1.0, abs=5e-8), model.spec()

    def test_degenerate_rectangle_is_zero(self):
        assert rectangle_volume(Independence(), 0.3, 0.3, 0.1, 0.9) == 0.0
