"""Tail copulas and the maximal tail concordance measure (MTCM).

The (lower) tail copula of a copula C is the limit of C(tx, ty)/t as t drops
to 0. This module provides the closed forms available for the families in
:mod:`tailpath.copulas` (survival Marshall-Olkin, survival extreme-value via a
Pickands function, Student-t), a numeric-limit fallback for any model with an
evaluable cdf, and the MTCM solver, which maximizes the profile b mapsto
Lambda(b, 1/b) over unit-area rectangles and reports the maximizer b_star and
maximum lambda_star.

Every tail copula here is exposed both as a plain function (direct formula
evaluation) and as a callable object usable by the solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .copulas import (
    AsymGumbel,
    Comonotone,
    Copula,
    FGM,
    Independence,
    MarshallOlkin,
    PickandsFn,
    StudentT,
    Survival,
)
from .errors import ConvergenceError, DegenerateTailError, DomainError
from .numerics import aitken_limit, maximize_1d, student_t_cdf

__all__ = [
    "MinTailCopula",
    "MtcmResult",
    "NumericTailCopula",
    "PickandsTailCopula",
    "TevTailCopula",
    "ZeroTailCopula",
    "analytic_tail_copula",
    "default_t_sequence",
    "mtcm",
    "profile_curve",
    "tail_copula_from_pickands",
    "tail_copula_numeric",
    "tail_copula_smo",
    "tail_copula_tev",
]


def _check_quadrant(x: float, y: float) -> None:
    if x < 0.0 or y < 0.0:
        raise DomainError(f"tail copula arguments must be nonnegative, got ({x}, {y})")


def tail_copula_smo(alpha: float, beta: float, x: float, y: float) -> float:
    """Tail copula of the survival Marshall-Olkin copula: min(alpha x, beta y)."""
    if not (0.0 < alpha <= 1.0 and 0.0 < beta <= 1.0):
        raise DomainError(
            f"tail_copula_smo needs alpha, beta in (0, 1], got ({alpha}, {beta})"
        )
    _check_quadrant(x, y)
    return min(alpha * x, beta * y)


def tail_copula_from_pickands(
    pickands: Callable[[float], float], x: float, y: float
) -> float:
    """Tail copula of the survival of an extreme-value copula.

    Lambda(x, y) = x + y - l(x, y) with the stable tail dependence function
    l(x, y) = (x + y) A(y / (x + y)). Any callable A on [0, 1] is accepted;
    with the exact lower bound A(w) = max(w, 1-w) this reduces to min(x, y),
    and A identically 1 gives the degenerate zero tail.
    """
    _check_quadrant(x, y)
    s = x + y
    if s == 0.0:
        return 0.0
    return s * (1.0 - pickands(y / s))


def tail_copula_tev(nu: float, rho: float, x: float, y: float) -> float:
    """Tail copula shared by the Student-t copula and its extreme-value limit.

    Lambda(x, y) = x T_{nu+1}(eta (rho - (y/x)^(-1/nu)))
                 + y T_{nu+1}(eta (rho - (x/y)^(-1/nu)))
    with eta = sqrt((nu+1)/(1-rho^2)).
    """
    if nu <= 0.0:
        raise DomainError(f"tail_copula_tev needs nu > 0, got {nu}")
    if not -1.0 < rho < 1.0:
        raise DomainError(f"tail_copula_tev needs rho in (-1, 1), got {rho}")
    _check_quadrant(x, y)
    if x == 0.0 or y == 0.0:
        return 0.0
    eta = math.sqrt((nu + 1.0) / (1.0 - rho * rho))
    inv_nu = 1.0 / nu
    term_x = x * student_t_cdf(eta * (rho - (y / x) ** (-inv_nu)), nu + 1.0)
    term_y = y * student_t_cdf(eta * (rho - (x / y) ** (-inv_nu)), nu + 1.0)
    return term_x + term_y


def default_t_sequence(
    x: float, y: float, *, cdf_abs_error: float = 1e-8, t_floor: float = 1e-5
) -> list[float]:
    """Geometric t sequence {0.1 * 2^-k} for the numeric tail-copula limit.

    Capped so that t * max(x, y) <= 1 (the cdf stays on the unit square) and
    floored where the cdf's absolute error divided by t would exceed 1e-3,
    which keeps error amplification in C(tx, ty)/t bounded.
    """
    hi = min(0.1, 1.0 / max(x, y, 1e-300))
    lo = max(t_floor, cdf_abs_error / 1e-3)
    seq = []
    t = hi
    while t >= lo:
        seq.append(t)
        t *= 0.5
    if not seq:
        seq = [lo]
    return seq


@dataclass(frozen=True)
class NumericTailValue:
    """Accelerated numeric tail-copula value with its reported error."""

    value: float
    error: float
    ratios: tuple[float, ...]


def tail_copula_numeric(
    model: Copula,
    x: float,
    y: float,
    t_sequence: Sequence[float] | None = None,
    *,
    cdf_abs_error: float = 1e-8,
) -> NumericTailValue:
    """Numeric-limit tail copula: extrapolate C(tx, ty)/t along a t sequence.

    Aitken delta-squared acceleration on the last three ratios; the reported
    error estimate is the spread of the last two raw ratios, a deliberately
    conservative bound since acceleration removes the leading correction.
    """
    _check_quadrant(x, y)
    if x == 0.0 or y == 0.0:
        return NumericTailValue(value=0.0, error=0.0, ratios=())
    if t_sequence is None:
        ts = default_t_sequence(x, y, cdf_abs_error=cdf_abs_error)
    else:
        ts = [float(t) for t in t_sequence]
        if any(t2 >= t1 for t1, t2 in zip(ts, ts[1:])):
            raise DomainError("t_sequence must be strictly decreasing")
        if not ts or ts[0] <= 0.0:
            raise DomainError("t_sequence must be positive")
        if ts[0] * max(x, y) > 1.0 + 1e-12:
            raise DomainError("t_sequence must satisfy t*max(x, y) <= 1")
    ratios = []
    for t in ts:
        ratios.append(model.cdf(min(t * x, 1.0), min(t * y, 1.0)) / t)
    if len(ratios) >= 3:
        value, _ = aitken_limit(ratios)
        error = abs(ratios[-1] - ratios[-2])
    elif len(ratios) == 2:
        value = ratios[-1]
        error = abs(ratios[-1] - ratios[-2])
    else:
        value = ratios[-1]
        error = abs(value)
    noise_floor = cdf_abs_error / ts[-1]
    return NumericTailValue(
        value=value, error=max(error, noise_floor * 1e-3), ratios=tuple(ratios)
    )


# -- callable wrappers, one per source in the family zoo ---------------------


@dataclass(frozen=True)
class MinTailCopula:
    """Piecewise-linear tail copula min(alpha x, beta y) (survival MO)."""

    alpha: float
    beta: float

    def __call__(self, x: float, y: float) -> float:
        return tail_copula_smo(self.alpha, self.beta, x, y)


@dataclass(frozen=True)
class PickandsTailCopula:
    """Tail copula x + y - (x+y) A(y/(x+y)) of a survival EV copula."""

    pickands: Callable[[float], float]

    def __call__(self, x: float, y: float) -> float:
        return tail_copula_from_pickands(self.pickands, x, y)


@dataclass(frozen=True)
class TevTailCopula:
    """Student-t tail copula (shared with the t extreme-value limit)."""

    nu: float
    rho: float

    def __call__(self, x: float, y: float) -> float:
        return tail_copula_tev(self.nu, self.rho, x, y)


@dataclass(frozen=True)
class ZeroTailCopula:
    """Degenerate tail copula of a tail-independent model."""

    def __call__(self, x: float, y: float) -> float:
        _check_quadrant(x, y)
        return 0.0


class NumericTailCopula:
    """Numeric-limit tail copula of an arbitrary model, callable as Lambda(x, y)."""

    def __init__(
        self,
        model: Copula,
        t_sequence: Sequence[float] | None = None,
        *,
        cdf_abs_error: float = 1e-8,
    ) -> None:
        self.model = model
        self.t_sequence = None if t_sequence is None else tuple(t_sequence)
        self.cdf_abs_error = float(cdf_abs_error)

    def value_and_error(self, x: float, y: float) -> NumericTailValue:
        return tail_copula_numeric(
            self.model, x, y, self.t_sequence, cdf_abs_error=self.cdf_abs_error
        )

    def __call__(self, x: float, y: float) -> float:
        return self.value_and_error(x, y).value


def analytic_tail_copula(model: Copula) -> Callable[[float, float], float]:
    """Closed-form tail copula of a model, where one is known.

    Tail-independent families (independence, FGM, plain MO and plain AG, whose
    lower tails vanish) map to the degenerate zero tail so that the MTCM
    solver can diagnose them uniformly.
    """
    if isinstance(model, Survival):
        inner = model.base
        if isinstance(inner, MarshallOlkin):
            return MinTailCopula(inner.alpha, inner.beta)
        if isinstance(inner, AsymGumbel):
            return PickandsTailCopula(inner.pickands)
        if isinstance(inner, StudentT):
            return TevTailCopula(inner.nu, inner.rho)
        if isinstance(inner, Comonotone):
            return MinTailCopula(1.0, 1.0)
        if isinstance(inner, (Independence, FGM)):
            return ZeroTailCopula()
        raise DomainError(f"no closed-form tail copula for {model!r}")
    if isinstance(model, StudentT):
        return TevTailCopula(model.nu, model.rho)
    if isinstance(model, Comonotone):
        return MinTailCopula(1.0, 1.0)
    if isinstance(model, (Independence, FGM)):
        return ZeroTailCopula()
    if isinstance(model, MarshallOlkin):
        if model.alpha == 1.0 and model.beta == 1.0:
            return MinTailCopula(1.0, 1.0)
        return ZeroTailCopula()
    if isinstance(model, AsymGumbel):
        return ZeroTailCopula()
    raise DomainError(f"no closed-form tail copula for {model!r}")


@dataclass(frozen=True)
class MtcmResult:
    """Maximal tail concordance: maximizer, maximum, and solver diagnostics."""

    b_star: float
    lambda_star: float
    unique: bool
    profile_samples: tuple[tuple[float, float], ...] = field(repr=False)
    n_evals: int

    def to_json_dict(self) -> dict:
        return {
            "b_star": self.b_star,
            "lambda_star": self.lambda_star,
            "unique": self.unique,
            "n_evals": self.n_evals,
        }


def mtcm(
    tail: Callable[[float, float], float],
    *,
    bracket: float = 1e3,
    n_grid: int = 512,
    tol: float = 1e-10,
    degeneracy_threshold: float = 1e-10,
    unique_atol: float = 1e-9,
    max_expansions: int = 6,
) -> MtcmResult:
    """Maximize the profile b -> Lambda(b, 1/b) and return (b_star, lambda_star).

    The search runs in s = ln b over [-ln(bracket), ln(bracket)], treating b
    and 1/b symmetrically: a grid scan, then golden-section refinement of the
    best grid cell. Since Lambda(b, 1/b) <= min(b, 1/b), any profile value
    above 1/bracket certifies that nothing outside the bracket can win; when
    the grid argmax instead crowds the boundary the bracket is widened by 10x
    (up to max_expansions, then ConvergenceError reports the anomaly).

    Raises DegenerateTailError when the profile maximum over the initial
    bracket is below degeneracy_threshold: the tail copula is identically
    zero at this resolution and every downstream tail quantity is undefined.

    The uniqueness flag is a grid-level diagnostic: it clears when some grid
    point outside the refined cell comes within unique_atol of the maximum
    (a plateau or a competing branch), and is not a certification.
    """
    if bracket <= 1.0:
        raise DomainError(f"mtcm bracket must exceed 1, got {bracket}")

    def profile(s: float) -> float:
        e = math.exp(s)
        return tail(e, 1.0 / e)

    s_max = math.log(bracket)
    expansions = 0
    n_evals = 0
    while True:
        ss = np.linspace(-s_max, s_max, n_grid)
        fs = np.array([profile(float(s)) for s in ss])
        n_evals += n_grid
        i_best = int(np.argmax(fs))
        f_best = float(fs[i_best])
        if f_best < degeneracy_threshold:
            raise DegenerateTailError(
                f"profile maximum {f_best:.3e} below degeneracy threshold "
                f"{degeneracy_threshold:.1e}: tail copula is degenerate"
            )
        edge_dist = min(float(ss[i_best]) + s_max, s_max - float(ss[i_best]))
        near_edge = edge_dist < 0.05 * (2.0 * s_max)
        provably_inside = f_best > math.exp(-s_max)
        if near_edge and not provably_inside:
            expansions += 1
            if expansions > max_expansions:
                raise ConvergenceError(
                    "profile maximum keeps crowding the search boundary after "
                    f"{max_expansions} bracket expansions (last bracket "
                    f"{math.exp(s_max):.1e}); attainment is suspect"
                )
            s_max += math.log(10.0)
            continue
        break

    lo = float(ss[max(i_best - 1, 0)])
    hi = float(ss[min(i_best + 1, n_grid - 1)])
    refined = maximize_1d(profile, lo, hi, n_grid=3, tol=tol)
    n_evals += refined.n_evals
    s_star, f_star = refined.argmax, refined.max_value
    if f_best > f_star or (f_best == f_star and float(ss[i_best]) < s_star):
        s_star, f_star = float(ss[i_best]), f_best

    near = np.nonzero(fs >= f_best - unique_atol)[0]
    unique = bool(near.size > 0 and near.min() >= i_best - 1 and near.max() <= i_best + 1)

    samples = tuple((float(math.exp(s)), float(f)) for s, f in zip(ss, fs))
    return MtcmResult(
        b_star=math.exp(s_star),
        lambda_star=f_star,
        unique=unique,
        profile_samples=samples,
        n_evals=n_evals,
    )


def profile_curve(
    tail: Callable[[float, float], float], b_values: Sequence[float]
) -> list[tuple[float, float]]:
    """Sample the profile b -> Lambda(b, 1/b) at the given abscissae."""
    out = []
    for b in b_values:
        b = float(b)
        if b <= 0.0:
            raise DomainError(f"profile abscissae must be positive, got {b}")
        out.append((b, tail(b, 1.0 / b)))
    return out
