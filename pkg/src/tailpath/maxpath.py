"""Per-u search for the path of maximal dependence and its limits.

For a copula C and u in (0, 1], the admissible rectangle corners at level u
are (x, u^2/x) with x in [u^2, 1]. The slice maximizer phi_star(u) is the x
maximizing C(x, u^2/x); tracing it over a decreasing u schedule and
extrapolating Pi(u)/u and phi_star(u)/u gives the path-based maximal tail
dependence coefficient and the limiting rectangle ratio, which are compared
against the profile-maximization route (MTCM) by equivalence_report.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from .copulas import Copula
from .errors import DomainError, ScheduleError, TailPathError
from .numerics import aitken_limit, maximize_1d
from .tailcopula import MtcmResult, NumericTailCopula, analytic_tail_copula, mtcm

__all__ = [
    "EquivalenceReport",
    "PathPoint",
    "PathResult",
    "default_u_schedule",
    "equivalence_report",
    "maximize_slice",
    "trace_path",
]


@dataclass(frozen=True)
class PathPoint:
    """Slice maximizer at one u: location, value, and scale diagnostics."""

    u: float
    phi_star: float
    pi_value: float
    ratio_b: float
    pi_over_u: float
    argmax_at_boundary: bool

    @property
    def v_star(self) -> float:
        """Second rectangle coordinate u^2 / phi_star."""
        return self.u * self.u / self.phi_star


@dataclass(frozen=True)
class PathResult:
    """Traced path with extrapolated limits and their error estimates."""

    points: tuple[PathPoint, ...]
    lambda_phi_star: float
    lambda_err: float
    b_limit: float
    b_err: float
    failures: tuple[tuple[float, str], ...] = ()


def default_u_schedule() -> list[float]:
    """Half-decade schedule 10^-1, 10^-1.5, ..., 10^-4."""
    return [10.0 ** (-1.0 - 0.5 * k) for k in range(7)]


def _validate_schedule(schedule: Sequence[float]) -> list[float]:
    us = [float(u) for u in schedule]
    if not us:
        raise ScheduleError("u schedule is empty")
    for u in us:
        if not 0.0 < u <= 1.0:
            raise ScheduleError(f"schedule values must lie in (0, 1], got {u}")
    if any(b >= a for a, b in zip(us, us[1:])):
        raise ScheduleError("u schedule must be strictly decreasing")
    if us[-1] < 1e-5:
        raise ScheduleError(
            f"schedule floor is 1e-5 (cdf accuracy limit), got {us[-1]}"
        )
    return us


def maximize_slice(
    model: Copula,
    u: float,
    *,
    n_grid: int = 512,
    tol: float = 1e-10,
    warm_hint: float | None = None,
) -> PathPoint:
    """Maximize x -> C(x, u^2/x) over [u^2, 1] at one level u.

    The grid is logarithmic in x (linear in s = ln x), which resolves
    maximizers scaling like b*u uniformly over small u; endpoints are always
    included and flat slices tie-break to the smallest x. argmax_at_boundary
    flags a maximizer within one grid cell of u^2 or 1, the signature of a
    model whose slice suprema sit at inadmissible corners (tail-independent
    families like FGM).

    warm_hint is an advisory extra candidate (an x value, typically scaled
    from the previous level's maximizer): it can only add a refinement around
    itself, never shrink the searched grid.
    """
    if not 0.0 < u <= 1.0:
        raise DomainError(f"maximize_slice needs u in (0, 1], got {u}")
    if u == 1.0:
        pi = model.cdf(1.0, 1.0)
        return PathPoint(
            u=1.0, phi_star=1.0, pi_value=pi, ratio_b=1.0, pi_over_u=pi,
            argmax_at_boundary=True,
        )
    u_sq = u * u
    lo_s = 2.0 * math.log(u)
    hi_s = 0.0

    def slice_value(s: float) -> float:
        x = min(1.0, max(u_sq, math.exp(s)))
        v = min(1.0, u_sq / x)
        return model.cdf(x, v)

    result = maximize_1d(slice_value, lo_s, hi_s, n_grid=n_grid, tol=tol)
    step = (hi_s - lo_s) / (n_grid - 1)
    if warm_hint is not None:
        x_h = min(1.0, max(u_sq, float(warm_hint)))
        s_h = math.log(x_h)
        if slice_value(s_h) > result.max_value:
            cell = maximize_1d(
                slice_value,
                max(lo_s, s_h - step),
                min(hi_s, s_h + step),
                n_grid=3,
                tol=tol,
            )
            if cell.max_value > result.max_value or (
                cell.max_value == result.max_value and cell.argmax < result.argmax
            ):
                result = cell
    s_star = result.argmax
    x_star = min(1.0, max(u_sq, math.exp(s_star)))
    at_boundary = (s_star - lo_s) <= step or (hi_s - s_star) <= step
    return PathPoint(
        u=u,
        phi_star=x_star,
        pi_value=result.max_value,
        ratio_b=x_star / u,
        pi_over_u=result.max_value / u,
        argmax_at_boundary=at_boundary,
    )


def trace_path(
    model: Copula,
    u_schedule: Sequence[float] | None = None,
    *,
    n_grid: int = 512,
    tol: float = 1e-10,
    threads: int = 1,
) -> PathResult:
    """Trace the slice maximizer over a decreasing u schedule and extrapolate.

    lambda_phi_star accelerates pi_over_u and b_limit accelerates ratio_b,
    both by Aitken delta-squared on the last three successful points, with
    the spread-based estimate from the accelerator as the reported error.

    Sequential runs warm-start each slice from the previous maximizer scaled
    to the new level (on top of the full grid, never instead of it); with
    threads > 1 slices run independently without hints, which can only move
    results within the refinement tolerance. Per-point cdf failures are
    recorded in failures and skipped rather than aborting the trace.
    """
    us = _validate_schedule(default_u_schedule() if u_schedule is None else u_schedule)
    points: list[PathPoint] = []
    failures: list[tuple[float, str]] = []
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(maximize_slice, model, u, n_grid=n_grid, tol=tol)
                for u in us
            ]
            for u, fut in zip(us, futures):
                try:
                    points.append(fut.result())
                except TailPathError as exc:
                    failures.append((u, str(exc)))
    else:
        hint: float | None = None
        for u in us:
            try:
                point = maximize_slice(
                    model, u, n_grid=n_grid, tol=tol, warm_hint=hint
                )
            except TailPathError as exc:
                failures.append((u, str(exc)))
                continue
            points.append(point)
            hint = point.ratio_b * u
    if not points:
        raise ScheduleError("every scheduled slice failed; see failures")
    lam_seq = [p.pi_over_u for p in points]
    b_seq = [p.ratio_b for p in points]
    if len(points) >= 3:
        lam, lam_err = aitken_limit(lam_seq)
        b_lim, b_err = aitken_limit(b_seq)
    else:
        lam, lam_err = lam_seq[-1], math.inf
        b_lim, b_err = b_seq[-1], math.inf
    return PathResult(
        points=tuple(points),
        lambda_phi_star=lam,
        lambda_err=lam_err,
        b_limit=b_lim,
        b_err=b_err,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class EquivalenceReport:
    """Agreement between the path-limit route and the profile-maximum route.

    lambda_phi_star (extrapolated along the traced path) is compared with
    lambda_star (profile maximization), and the limiting rectangle ratio
    b_limit with the profile maximizer b_star. Each difference is flagged
    against a budget of the requested tolerance plus the extrapolation's own
    error estimate.
    """

    lambda_star: float
    lambda_phi_star: float
    lambda_diff: float
    lambda_budget: float
    lambda_ok: bool
    b_star: float
    b_limit: float
    b_diff: float
    b_budget: float
    b_ok: bool
    mtcm_result: MtcmResult
    path_result: PathResult

    @property
    def ok(self) -> bool:
        return self.lambda_ok and self.b_ok

    def to_json_dict(self) -> dict:
        return {
            "lambda_star": self.lambda_star,
            "lambda_phi_star": self.lambda_phi_star,
            "lambda_diff": self.lambda_diff,
            "lambda_ok": self.lambda_ok,
            "b_star": self.b_star,
            "b_limit": self.b_limit,
            "b_diff": self.b_diff,
            "b_ok": self.b_ok,
        }


def equivalence_report(
    model: Copula,
    tail: Callable[[float, float], float] | None = None,
    u_schedule: Sequence[float] | None = None,
    *,
    lambda_tol: float = 0.01,
    b_tol: float = 0.02,
    n_grid: int = 512,
    tol: float = 1e-10,
    threads: int = 1,
) -> EquivalenceReport:
    """Cross-check the two routes to maximal tail dependence on one model.

    Runs mtcm on the tail copula first (raising DegenerateTailError when the
    tail is identically zero, in which case no path limit exists to compare),
    then traces the path and reports both differences with pass/fail flags.
    When tail is omitted, the closed form is used if the family has one and
    the numeric-limit tail copula otherwise.
    """
    if tail is None:
        try:
            tail = analytic_tail_copula(model)
        except DomainError:
            tail = NumericTailCopula(model)
    m = mtcm(tail, n_grid=n_grid, tol=tol)
    path = trace_path(model, u_schedule, n_grid=n_grid, tol=tol, threads=threads)
    lambda_diff = abs(path.lambda_phi_star - m.lambda_star)
    b_diff = abs(path.b_limit - m.b_star)
    lambda_budget = lambda_tol + path.lambda_err
    b_budget = b_tol + path.b_err
    return EquivalenceReport(
        lambda_star=m.lambda_star,
        lambda_phi_star=path.lambda_phi_star,
        lambda_diff=lambda_diff,
        lambda_budget=lambda_budget,
        lambda_ok=lambda_diff <= lambda_budget,
        b_star=m.b_star,
        b_limit=path.b_limit,
        b_diff=b_diff,
        b_budget=b_budget,
        b_ok=b_diff <= b_budget,
        mtcm_result=m,
        path_result=path,
    )
