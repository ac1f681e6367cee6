import math

import numpy as np
import pytest

from tailpath.copulas import (
    Comonotone,
    FGM,
    Independence,
    MarshallOlkin,
    AsymGumbel,
    StudentT,
    survival,
)
from tailpath.errors import DegenerateTailError, DomainError, ScheduleError
from tailpath.maxpath import (
    default_u_schedule,
    equivalence_report,
    maximize_slice,
    trace_path,
)
from tailpath.tailcopula import MinTailCopula


class TestMaximizeSlice:
    def test_comonotone_slice(self):
        # C(x, u^2/x) = min(x, u^2/x) is maximal at x = u, value u
        point = maximize_slice(Comonotone(), 0.1)
        assert point.phi_star == pytest.approx(0.1, abs=1e-9)
        assert point.pi_value == pytest.approx(0.1, abs=1e-10)
        assert point.ratio_b == pytest.approx(1.0, abs=1e-8)
        assert not point.argmax_at_boundary

    def test_independence_slice_is_flat(self):
        # C(x, u^2/x) = u^2 for every admissible x: a plateau at the floor,
        # so the maximum value is pinned even though the argmax is arbitrary
        point = maximize_slice(Independence(), 0.2)
        assert point.pi_value == pytest.approx(0.04, abs=1e-14)
        model = Independence()
        assert point.pi_value == pytest.approx(model.cdf(0.04, 1.0), abs=1e-14)

    def test_fgm_negative_theta_boundary(self):
        point = maximize_slice(FGM(-1.0), 0.3)
        assert point.argmax_at_boundary

    def test_smo_maximizer_rides_singular_curve(self):
        from tailpath.singular import singular_root

        model = survival(MarshallOlkin(0.35, 0.7))
        for u in (0.3, 0.1, 0.01, 0.001):
            point = maximize_slice(model, u)
            x_sing = singular_root(0.35, 0.7, u).x_star
            assert point.phi_star == pytest.approx(x_sing, abs=1e-9)
            assert not point.argmax_at_boundary

    def test_smo_ratio_approaches_attainer(self):
        # finite-u deviation from sqrt(2) shrinks like u/4
        model = survival(MarshallOlkin(0.35, 0.7))
        ratios = [maximize_slice(model, u).ratio_b for u in (0.1, 0.01, 0.001)]
        gaps = [abs(r - math.sqrt(2.0)) for r in ratios]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] <= 1e-3

    def test_slice_value_dominates_corners_and_diagonal(self):
        model = survival(AsymGumbel(0.35, 0.7, 2.0))
        for u in (0.3, 0.05, 0.003):
            point = maximize_slice(model, u)
            assert point.pi_value >= model.cdf(u, u) - 1e-12
            for b in (0.5, 1.0, 2.0):
                x = b * u
                if u * u <= x <= 1.0:
                    assert point.pi_value >= model.cdf(x, u * u / x) - 1e-10

    def test_admissibility_bounds(self):
        model = survival(MarshallOlkin(0.35, 0.7))
        for u in (0.5, 0.08, 0.004):
            point = maximize_slice(model, u)
            assert u * u <= point.phi_star <= 1.0
            assert point.pi_value <= min(point.phi_star, u * u / point.phi_star) + 1e-12
            assert point.pi_value <= u + 1e-12
            assert u <= point.ratio_b * u <= 1.0 / u

    def test_u_equal_one(self):
        point = maximize_slice(Comonotone(), 1.0)
        assert point.phi_star == 1.0
        assert point.pi_value == 1.0

    def test_warm_hint_cannot_hurt(self):
        model = survival(MarshallOlkin(0.35, 0.7))
        base = maximize_slice(model, 0.02)
        hinted = maximize_slice(model, 0.02, warm_hint=base.phi_star)
        assert hinted.pi_value >= base.pi_value - 1e-15

    def test_grid_doubling_stability(self):
        model = survival(AsymGumbel(0.35, 0.7, 2.0))
        a = maximize_slice(model, 0.01, n_grid=512)
        b = maximize_slice(model, 0.01, n_grid=1024)
        assert abs(a.pi_value - b.pi_value) <= 1e-8

    def test_domain(self):
        with pytest.raises(DomainError):
            maximize_slice(Comonotone(), 0.0)


class TestTracePath:
    def test_default_schedule_shape(self):
        sched = default_u_schedule()
        assert sched[0] == pytest.approx(0.1)
        assert sched[-1] == pytest.approx(1e-4)
        assert len(sched) == 7

    def test_smo_limits(self):
        path = trace_path(survival(MarshallOlkin(0.35, 0.7)))
        assert path.lambda_phi_star == pytest.approx(math.sqrt(0.245), abs=1e-4)
        assert path.b_limit == pytest.approx(math.sqrt(2.0), abs=1e-4)
        assert not path.failures
        assert len(path.points) == 7

    def test_t_copula_reduced_schedule(self):
        path = trace_path(StudentT(4.0, 0.5), [1e-1, 1e-2, 1e-3], n_grid=128)
        assert path.b_limit == pytest.approx(1.0, abs=0.02)

    def test_independence_floor(self):
        # pi/u = u -> 0: the path detects an evaporating ratio
        path = trace_path(Independence(), [0.1, 0.05, 0.025])
        assert path.lambda_phi_star == pytest.approx(0.0, abs=0.05)

    def test_points_align_with_schedule(self):
        sched = [0.1, 0.03, 0.009]
        path = trace_path(survival(MarshallOlkin(0.35, 0.7)), sched)
        assert [p.u for p in path.points] == sched

    def test_threads_match_sequential_values(self):
        sched = [0.1, 0.02, 0.004]
        model = survival(AsymGumbel(0.35, 0.7, 2.0))
        seq = trace_path(model, sched, threads=1)
        par = trace_path(model, sched, threads=4)
        for a, b in zip(seq.points, par.points):
            assert a.pi_value == pytest.approx(b.pi_value, abs=1e-9)

    def test_schedule_validation(self):
        model = Comonotone()
        with pytest.raises(ScheduleError):
            trace_path(model, [])
        with pytest.raises(ScheduleError):
            trace_path(model, [0.1, 0.2])
        with pytest.raises(ScheduleError):
            trace_path(model, [0.5, 1e-7])
        with pytest.raises(ScheduleError):
            trace_path(model, [1.5, 0.1])

    def test_short_schedule_reports_infinite_error(self):
        path = trace_path(Comonotone(), [0.1, 0.05])
        assert math.isinf(path.lambda_err)
        assert path.lambda_phi_star == pytest.approx(1.0, abs=1e-8)


class TestEquivalenceReport:
    def test_smo(self):
        rep = equivalence_report(survival(MarshallOlkin(0.35, 0.7)))
        assert rep.ok
        assert rep.lambda_diff <= 0.01
        assert rep.b_diff <= 0.02
        assert rep.b_star == pytest.approx(math.sqrt(2.0), abs=1e-6)

    def test_sag(self):
        rep = equivalence_report(survival(AsymGumbel(0.35, 0.7, 2.0)))
        assert rep.ok

    def test_explicit_tail_override(self):
        rep = equivalence_report(
            survival(MarshallOlkin(0.35, 0.7)), tail=MinTailCopula(0.35, 0.7)
        )
        assert rep.ok

    def test_json_payload_round_trips(self):
        rep = equivalence_report(survival(MarshallOlkin(0.35, 0.7)))
        payload = rep.to_json_dict()
        assert payload["lambda_ok"] and payload["b_ok"]
        assert payload["b_star"] == rep.b_star

    def test_degenerate_model_raises(self):
        with pytest.raises(DegenerateTailError):
            equivalence_report(FGM(-1.0))
