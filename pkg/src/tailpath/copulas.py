"""Bivariate copula families used throughout the package.

Each family exposes the same small surface: ``cdf(u, v)`` evaluated exactly
from its closed form, and ``sample(n, seed)`` drawing from the model. Sampling
is exact where a stochastic representation exists (independence, comonotone,
Marshall-Olkin shocks, the Student-t scale mixture) and otherwise falls back
to conditional-distribution inversion with a numeric partial derivative, which
works for any absolutely continuous family at the cost of a root find per
draw.

The survival transform is a first-class wrapper because lower-tail questions
about a model are upper-tail questions about its survival copula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .numerics import brent_root, student_t_cdf, student_t_quantile, student_t_pdf
from .numerics import integrate_adaptive

__all__ = [
    "AsymGumbel",
    "Comonotone",
    "Copula",
    "FGM",
    "Independence",
    "MarshallOlkin",
    "PickandsFn",
    "StudentT",
    "Survival",
    "rectangle_volume",
    "survival",
]


def _check_unit_pair(u: float, v: float) -> None:
    if not (0.0 <= u <= 1.0 and 0.0 <= v <= 1.0):
        raise DomainError(f"copula arguments must lie in [0, 1]^2, got ({u}, {v})")


class Copula:
    """Common interface: a cdf on the unit square and a sampler."""

    #: short family tag used by the CLI and in exports
    name: str = "copula"

    def cdf(self, u: float, v: float) -> float:
        raise NotImplementedError

    def sample(self, n: int, seed: int | None = None) -> np.ndarray:
        """Draw n pairs as an (n, 2) array with uniform margins."""
        raise NotImplementedError

    def spec(self) -> str:
        """Model specification string, parseable by the CLI."""
        raise NotImplementedError

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"{type(self).__name__}({self.spec()!r})"

    # -- generic conditional-inversion sampler -------------------------------

    def _conditional_quantile(self, u: float, p: float) -> float:
        """Solve d/du C(u, v) = p for v, with a central-difference derivative."""
        h = min(1e-6, 0.5 * u, 0.5 * (1.0 - u))
        if h <= 0.0:
            h = 1e-9

        def g(v: float) -> float:
            return (self.cdf(min(u + h, 1.0), v) - self.cdf(max(u - h, 0.0), v)) / (
                2.0 * h
            ) - p

        g0, g1 = g(0.0), g(1.0)
        if g0 >= 0.0:
            return 0.0
        if g1 <= 0.0:
            return 1.0
        return brent_root(g, 0.0, 1.0, xtol=1e-12)

    def _sample_by_inversion(self, n: int, seed: int | None) -> np.ndarray:
        rng = np.random.default_rng(seed)
        u = rng.random(n)
        p = rng.random(n)
        v = np.empty(n)
        for i in range(n):
            v[i] = self._conditional_quantile(float(u[i]), float(p[i]))
        return np.column_stack([u, v])


class Independence(Copula):
    """Product copula: C(u, v) = u v."""

    name = "indep"

    def cdf(self, u: float, v: float) -> float:
        _check_unit_pair(u, v)
        return u * v

    def sample(self, n: int, seed: int | None = None) -> np.ndarray:
        rng = np.random.default_rng(seed)
        return rng.random((n, 2))

    def spec(self) -> str:
        return "indep"


class Comonotone(Copula):
    """Upper Frechet-Hoeffding bound: C(u, v) = min(u, v)."""

    name = "comono"

    def cdf(self, u: float, v: float) -> float:
        _check_unit_pair(u, v)
        return min(u, v)

    def sample(self, n: int, seed: int | None = None) -> np.ndarray:
        rng = np.random.default_rng(seed)
        u = rng.random(n)
        return np.column_stack([u, u])

    def spec(self) -> str:
        return "comono"


class FGM(Copula):
    """Farlie-Gumbel-Morgenstern family: C(u, v) = u v (1 + theta (1-u)(1-v)).

    theta in [-1, 1]. The whole family is tail independent, which makes it the
    standard degenerate-case stress test for everything downstream.
    """

    name = "fgm"

    def __init__(self, theta: float) -> None:
        if not -1.0 <= theta <= 1.0:
            raise DomainError(f"FGM needs theta in [-1, 1], got {theta}")
        self.theta = float(theta)

    def cdf(self, u: float, v: float) -> float:
        _check_unit_pair(u, v)
        return u * v * (1.0 + self.theta * (1.0 - u) * (1.0 - v))

    def sample(self, n: int, seed: int | None = None) -> np.ndarray:
        return self._sample_by_inversion(n, seed)

    def spec(self) -> str:
        return f"fgm:theta={self.theta:g}"


class MarshallOlkin(Copula):
    """Marshall-Olkin copula: C(u, v) = min(u^(1-alpha) v, u v^(1-beta)).

    alpha, beta in (0, 1]. Mass on the curve u^alpha = v^beta plus an
    absolutely continuous part; sampled exactly from the three-shock
    construction (two individual exponential shocks and one common shock).
    """

    name = "mo"

    def __init__(self, alpha: float, beta: float) -> None:
        if not (0.0 < alpha <= 1.0 and 0.0 < beta <= 1.0):
            raise DomainError(
                f"MarshallOlkin needs alpha, beta in (0, 1], got ({alpha}, {beta})"
            )
        self.alpha = float(alpha)
        self.beta = float(beta)

    def cdf(self, u: float, v: float) -> float:
        _check_unit_pair(u, v)
        if u == 0.0 or v == 0.0:
            return 0.0
        return min(u ** (1.0 - self.alpha) * v, u * v ** (1.0 - self.beta))

    def sample(self, n: int, seed: int | None = None) -> np.ndarray:
        rng = np.random.default_rng(seed)
        a, b = self.alpha, self.beta
        z12 = rng.exponential(1.0, size=n)
        # Individual shock rates (1-a)/a and (1-b)/b; rate 0 means no shock.
        if a < 1.0:
            z1 = rng.exponential(a / (1.0 - a), size=n)
        else:
            z1 = np.full(n, np.inf)
        if b < 1.0:
            z2 = rng.exponential(b / (1.0 - b), size=n)
        else:
            z2 = np.full(n, np.inf)
        x = np.minimum(z1, z12)
        y = np.minimum(z2, z12)
        return np.column_stack([np.exp(-x / a), np.exp(-y / b)])

    def spec(self) -> str:
        return f"mo:alpha={self.alpha:g},beta={self.beta:g}"


@dataclass(frozen=True)
class PickandsFn:
    """Asymmetric logistic Pickands dependence function.

    A(w) = (1-beta) w + (1-alpha)(1-w)
           + ((beta w)^theta + (alpha (1-w))^theta)^(1/theta)

    with alpha, beta in (0, 1] and theta > 1. Convex on [0, 1], pinned to
    A(0) = A(1) = 1, and sandwiched between max(w, 1-w) and 1.

    Orientation: w is the second coordinate's share throughout this package
    (the tail copula evaluates A(y/(x+y)), the copula A(ln v / ln(uv))), so
    alpha weights the first coordinate and beta the second. In the
    theta -> infinity limit the induced tail copula tends to min(alpha x,
    beta y), aligning with the Marshall-Olkin orientation: both families
    put the profile maximizer at sqrt(beta/alpha).
    """

    alpha: float
    beta: float
    theta: float

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha <= 1.0 and 0.0 < self.beta <= 1.0):
            raise DomainError(
                f"PickandsFn needs alpha, beta in (0, 1], got "
                f"({self.alpha}, {self.beta})"
            )
        if not self.theta > 1.0:
            raise DomainError(f"PickandsFn needs theta > 1, got {self.theta}")

    def __call__(self, w: float) -> float:
        if not 0.0 <= w <= 1.0:
            raise DomainError(f"Pickands argument must lie in [0, 1], got {w}")
        a, b, t = self.alpha, self.beta, self.theta
        mix = ((b * w) ** t + (a * (1.0 - w)) ** t) ** (1.0 / t)
        return (1.0 - b) * w + (1.0 - a) * (1.0 - w) + mix


class AsymGumbel(Copula):
    """Asymmetric Gumbel extreme-value copula.

    C(u, v) = exp( ln(uv) * A(ln v / ln(uv)) ) with the asymmetric logistic
    Pickands function A. Upper tail dependent; its survival copula is the
    lower-tail workhorse of this package.
    """

    name = "ag"

    def __init__(self, alpha: float, beta: float, theta: float) -> None:
        self.pickands = PickandsFn(alpha, beta, theta)
        self.alpha = self.pickands.alpha
        self.beta = self.pickands.beta
        self.theta = self.pickands.theta

    def cdf(self, u: float, v: float) -> float:
        _check_unit_pair(u, v)
        if u == 0.0 or v == 0.0:
            return 0.0
        if u == 1.0:
            return v
        if v == 1.0:
            return u
        s = math.log(u) + math.log(v)
        w = math.log(v) / s
        return math.exp(s * self.pickands(w))

    def sample(self, n: int, seed: int | None = None) -> np.ndarray:
        return self._sample_by_inversion(n, seed)

    def spec(self) -> str:
        return f"ag:alpha={self.alpha:g},beta={self.beta:g},theta={self.theta:g}"


class StudentT(Copula):
    """Bivariate Student-t copula with nu degrees of freedom, correlation rho.

    cdf via the exact conditional decomposition: integrate over the first
    coordinate, where the conditional law of the second given the first is a
    rescaled t with nu + 1 degrees of freedom. Radially symmetric, so it
    equals its own survival copula; tail dependent for every rho > -1.
    """

    name = "t"

    def __init__(self, nu: float, rho: float) -> None:
        if not nu > 0.0:
            raise DomainError(f"StudentT needs nu > 0, got {nu}")
        if not -1.0 < rho < 1.0:
            raise DomainError(f"StudentT needs rho in (-1, 1), got {rho}")
        self.nu = float(nu)
        self.rho = float(rho)

    def cdf(self, u: float, v: float) -> float:
        _check_unit_pair(u, v)
        if u == 0.0 or v == 0.0:
            return 0.0
        if u == 1.0:
            return v
        if v == 1.0:
            return u
        nu, rho = self.nu, self.rho
        xu = student_t_quantile(u, nu)
        yv = student_t_quantile(v, nu)
        scale = math.sqrt((nu + 1.0) / (1.0 - rho * rho))

        def integrand(s: float) -> float:
            z = (yv - rho * s) * scale / math.sqrt(nu + s * s)
            return student_t_pdf(s, nu) * student_t_cdf(z, nu + 1.0)

        return integrate_adaptive(integrand, -math.inf, xu, abs_tol=1e-12, rel_tol=1e-10)

    def sample(self, n: int, seed: int | None = None) -> np.ndarray:
        rng = np.random.default_rng(seed)
        nu, rho = self.nu, self.rho
        z1 = rng.standard_normal(n)
        z2 = rho * z1 + math.sqrt(1.0 - rho * rho) * rng.standard_normal(n)
        w = np.sqrt(rng.chisquare(nu, size=n) / nu)
        x = z1 / w
        y = z2 / w
        out = np.empty((n, 2))
        for i in range(n):
            out[i, 0] = student_t_cdf(float(x[i]), nu)
            out[i, 1] = student_t_cdf(float(y[i]), nu)
        return out

    def spec(self) -> str:
        return f"t:nu={self.nu:g},rho={self.rho:g}"


class Survival(Copula):
    """Survival copula of a base model: C^(u, v) = u + v - 1 + C(1-u, 1-v).

    The transform is an involution, so wrapping a Survival unwraps it (see
    the survival() helper); samples are the reflected samples of the base.
    """

    name = "surv"

    def __init__(self, base: Copula) -> None:
        if isinstance(base, Survival):
            raise DomainError(
                "nested Survival wrapper; use survival() which unwraps instead"
            )
        self.base = base

    def cdf(self, u: float, v: float) -> float:
        _check_unit_pair(u, v)
        return u + v - 1.0 + self.base.cdf(1.0 - u, 1.0 - v)

    def sample(self, n: int, seed: int | None = None) -> np.ndarray:
        return 1.0 - self.base.sample(n, seed)

    def spec(self) -> str:
        return f"surv-{self.base.spec()}"


def survival(model: Copula) -> Copula:
    """Survival transform with the involution applied: survival(survival(C)) is C."""
    if isinstance(model, Survival):
        return model.base
    return Survival(model)


def rectangle_volume(
    model: Copula, u1: float, u2: float, v1: float, v2: float
) -> float:
    """Probability mass the copula assigns to the rectangle [u1,u2] x [v1,v2]."""
    if u1 > u2 or v1 > v2:
        raise DomainError("rectangle_volume needs u1 <= u2 and v1 <= v2")
    return (
        model.cdf(u2, v2) - model.cdf(u1, v2) - model.cdf(u2, v1) + model.cdf(u1, v1)
    )
