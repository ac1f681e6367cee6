"""Self-contained numerical kernel: special functions, quadrature, roots, 1-d maximization.

The shipped package deliberately carries no special-function dependency, so the
Student-t distribution is built here from the regularized incomplete beta
function (continued fraction, Lentz's method) and log-gamma. Integration is
adaptive Gauss-Kronrod (G7/K15) with worst-interval bisection; infinite
endpoints are mapped to [0, 1) with the rational substitution x = a + t/(1-t),
whose Jacobian the open rule tolerates at t -> 1. Root finding is classic
Brent. Maximization is a coarse grid scan followed by golden-section
refinement around the best cell, which is robust for the kinked profiles this
package optimizes (piecewise-smooth with isolated corners).

Scalar routines accept and return plain floats; only the grid scan uses numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BracketError, ConvergenceError, DomainError

__all__ = [
    "OptimResult1D",
    "aitken_limit",
    "betainc_regularized",
    "brent_root",
    "integrate_adaptive",
    "maximize_1d",
    "student_t_cdf",
    "student_t_pdf",
    "student_t_quantile",
]

_EPS = float(np.finfo(float).eps)

# 15-point Kronrod abscissae on [-1, 1] (positive half; node 0 included once)
# with the embedded 7-point Gauss rule on the odd-indexed nodes.
_KRONROD_NODES = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
)
_KRONROD_WEIGHTS = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
)
_GAUSS_WEIGHTS = (
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
)


def betainc_regularized(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b).

    Continued-fraction evaluation (modified Lentz), with the symmetry swap
    I_x(a, b) = 1 - I_{1-x}(b, a) applied when x is past the convergence
    crossover (a + 1) / (a + b + 2).
    """
    if a <= 0.0 or b <= 0.0:
        raise DomainError(f"betainc_regularized requires a, b > 0, got a={a}, b={b}")
    if x < 0.0 or x > 1.0:
        raise DomainError(f"betainc_regularized requires x in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    if x > (a + 1.0) / (a + b + 2.0):
        return 1.0 - betainc_regularized(b, a, 1.0 - x)
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)

    tiny = 1e-300
    c = 1.0
    d = 1.0 - (a + b) * x / (a + 1.0)
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 300):
        m2 = 2 * m
        # even step
        num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2))
        d = 1.0 + num * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + num / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        # odd step
        num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0))
        d = 1.0 + num * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + num / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return front * h / a
    raise ConvergenceError(
        f"incomplete beta continued fraction stalled for a={a}, b={b}, x={x}"
    )


def student_t_pdf(x: float, nu: float) -> float:
    """Density of the Student-t distribution with nu degrees of freedom."""
    if nu <= 0.0:
        raise DomainError(f"student_t_pdf requires nu > 0, got {nu}")
    ln_norm = (
        math.lgamma(0.5 * (nu + 1.0))
        - math.lgamma(0.5 * nu)
        - 0.5 * math.log(nu * math.pi)
    )
    return math.exp(ln_norm - 0.5 * (nu + 1.0) * math.log1p(x * x / nu))


def student_t_cdf(x: float, nu: float) -> float:
    """Distribution function of Student-t via the incomplete beta function.

    Uses T_nu(x) = 1 - I_z(nu/2, 1/2) / 2 for x > 0 with z = nu / (nu + x^2),
    and symmetry for x < 0, so both tails are computed without cancellation.
    """
    if nu <= 0.0:
        raise DomainError(f"student_t_cdf requires nu > 0, got {nu}")
    if math.isnan(x):
        raise DomainError("student_t_cdf got NaN argument")
    if math.isinf(x):
        return 1.0 if x > 0 else 0.0
    if x == 0.0:
        return 0.5
    z = nu / (nu + x * x)
    half_tail = 0.5 * betainc_regularized(0.5 * nu, 0.5, z)
    return 1.0 - half_tail if x > 0.0 else half_tail


def student_t_quantile(p: float, nu: float) -> float:
    """Inverse of student_t_cdf: Newton iteration with a bisection safeguard."""
    if nu <= 0.0:
        raise DomainError(f"student_t_quantile requires nu > 0, got {nu}")
    if p <= 0.0 or p >= 1.0:
        raise DomainError(f"student_t_quantile requires p in (0, 1), got {p}")
    if p == 0.5:
        return 0.0
    # Bracket the root by doubling outward from a rough Cauchy-flavored start.
    scale = max(1.0, abs(math.tan(math.pi * (p - 0.5))))
    lo, hi = -scale, scale
    for _ in range(200):
        if student_t_cdf(lo, nu) <= p:
            break
        lo *= 2.0
    else:
        raise ConvergenceError(f"could not bracket t quantile for p={p}, nu={nu}")
    for _ in range(200):
        if student_t_cdf(hi, nu) >= p:
            break
        hi *= 2.0
    else:
        raise ConvergenceError(f"could not bracket t quantile for p={p}, nu={nu}")

    x = 0.5 * (lo + hi)
    for _ in range(120):
        f = student_t_cdf(x, nu) - p
        if f > 0.0:
            hi = x
        elif f < 0.0:
            lo = x
        else:
            return x
        df = student_t_pdf(x, nu)
        step_ok = df > 0.0
        if step_ok:
            x_new = x - f / df
            step_ok = lo < x_new < hi
        if not step_ok:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 1e-14 * max(1.0, abs(x_new)):
            return x_new
        x = x_new
    raise ConvergenceError(f"t quantile iteration stalled for p={p}, nu={nu}")


def _gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    """One Gauss-Kronrod 7/15 panel on [a, b]: (kronrod value, error estimate)."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    kronrod = _KRONROD_WEIGHTS[7] * fc
    gauss = _GAUSS_WEIGHTS[3] * fc
    for i in range(7):
        dx = half * _KRONROD_NODES[i]
        fsum = f(center - dx) + f(center + dx)
        kronrod += _KRONROD_WEIGHTS[i] * fsum
        if i % 2 == 1:
            gauss += _GAUSS_WEIGHTS[i // 2] * fsum
    kronrod *= half
    gauss *= half
    diff = abs(kronrod - gauss)
    # QUADPACK-style sharpening of the raw difference, floored near roundoff.
    err = diff if diff == 0.0 else min(diff, (200.0 * diff) ** 1.5)
    err = max(err, 50.0 * _EPS * abs(kronrod))
    return kronrod, err


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    *,
    abs_tol: float = 1e-10,
    rel_tol: float = 1e-8,
    max_subdivisions: int = 400,
) -> float:
    """Adaptive Gauss-Kronrod integral of f over [a, b], endpoints may be inf.

    Bisects the interval with the worst error estimate until the summed
    estimate meets max(abs_tol, rel_tol * |result|). Semi-infinite ranges are
    folded to [0, 1) through x = a + t/(1 - t); a doubly infinite range is
    split at zero. Raises ConvergenceError when the subdivision budget runs
    out, rather than returning a silently inaccurate value.
    """
    if abs_tol <= 0.0 or rel_tol <= 0.0:
        raise DomainError("integration tolerances must be positive")
    if math.isnan(a) or math.isnan(b):
        raise DomainError("integration endpoints must not be NaN")
    if a == b:
        return 0.0
    if a > b:
        return -integrate_adaptive(
            f, b, a, abs_tol=abs_tol, rel_tol=rel_tol, max_subdivisions=max_subdivisions
        )
    a_inf = math.isinf(a)
    b_inf = math.isinf(b)
    if a_inf and b_inf:
        half = integrate_adaptive(
            f, 0.0, math.inf, abs_tol=0.5 * abs_tol, rel_tol=rel_tol,
            max_subdivisions=max_subdivisions,
        )
        other = integrate_adaptive(
            f, -math.inf, 0.0, abs_tol=0.5 * abs_tol, rel_tol=rel_tol,
            max_subdivisions=max_subdivisions,
        )
        return half + other
    if b_inf:
        base = a

        def g(t: float) -> float:
            w = 1.0 - t
            return f(base + t / w) / (w * w)

        return integrate_adaptive(
            g, 0.0, 1.0, abs_tol=abs_tol, rel_tol=rel_tol,
            max_subdivisions=max_subdivisions,
        )
    if a_inf:
        base = b

        def g(t: float) -> float:
            w = 1.0 - t
            return f(base - t / w) / (w * w)

        return integrate_adaptive(
            g, 0.0, 1.0, abs_tol=abs_tol, rel_tol=rel_tol,
            max_subdivisions=max_subdivisions,
        )

    val, err = _gk15(f, a, b)
    panels = [(err, a, b, val)]
    total_val = val
    total_err = err
    for _ in range(max_subdivisions):
        if total_err <= max(abs_tol, rel_tol * abs(total_val)):
            return total_val
        worst = max(range(len(panels)), key=lambda i: panels[i][0])
        werr, wa, wb, wval = panels.pop(worst)
        mid = 0.5 * (wa + wb)
        if mid <= wa or mid >= wb:
            # Interval at floating-point resolution; keep its estimate as is.
            panels.append((0.0, wa, wb, wval))
            continue
        lval, lerr = _gk15(f, wa, mid)
        rval, rerr = _gk15(f, mid, wb)
        total_val += lval + rval - wval
        total_err += lerr + rerr - werr
        panels.append((lerr, wa, mid, lval))
        panels.append((rerr, mid, wb, rval))
    if total_err <= max(abs_tol, rel_tol * abs(total_val)):
        return total_val
    raise ConvergenceError(
        f"adaptive quadrature used {max_subdivisions} subdivisions, "
        f"error estimate {total_err:.3e} still above tolerance"
    )


def brent_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    xtol: float = 1e-13,
    max_iter: int = 200,
) -> float:
    """Brent's method for a root of f on [lo, hi] with a sign change.

    Raises BracketError when f(lo) and f(hi) have the same strict sign.
    """
    if not lo < hi:
        raise DomainError(f"brent_root needs lo < hi, got [{lo}, {hi}]")
    fa, fb = f(lo), f(hi)
    if fa == 0.0:
        return lo
    if fb == 0.0:
        return hi
    if (fa > 0.0) == (fb > 0.0):
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: f(lo)={fa:.6e}, f(hi)={fb:.6e}"
        )
    a, b = lo, hi
    c, fc = a, fa
    d = e = b - a
    for _ in range(max_iter):
        if (fb > 0.0) == (fc > 0.0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * _EPS * abs(b) + 0.5 * xtol
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1 or fb == 0.0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = xm
                e = d
        else:
            d = xm
            e = d
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, xm)
        fb = f(b)
    raise ConvergenceError(f"brent_root hit the {max_iter} iteration limit")


@dataclass(frozen=True)
class OptimResult1D:
    """Outcome of a 1-d maximization: location, value, effort, convergence."""

    argmax: float
    max_value: float
    n_evals: int
    converged: bool


_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def maximize_1d(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    n_grid: int = 512,
    tol: float = 1e-10,
    max_refine: int = 200,
) -> OptimResult1D:
    """Maximize f on [lo, hi]: coarse grid scan, then golden-section refinement.

    The grid scan makes the search robust to multiple local maxima and kinks;
    golden-section then shrinks the best grid cell's bracket below tol. The
    returned value never falls below the best grid sample (monotone
    improvement), and exact ties resolve toward the smaller abscissa.
    """
    if not lo < hi:
        raise DomainError(f"maximize_1d needs lo < hi, got [{lo}, {hi}]")
    if n_grid < 3:
        raise DomainError(f"maximize_1d needs n_grid >= 3, got {n_grid}")
    if tol <= 0.0:
        raise DomainError("maximize_1d needs tol > 0")
    xs = np.linspace(lo, hi, n_grid)
    fs = np.empty(n_grid)
    for i, x in enumerate(xs):
        v = f(float(x))
        fs[i] = v if math.isfinite(v) else -math.inf
    n_evals = n_grid
    i_best = int(np.argmax(fs))  # first occurrence: ties go to smaller abscissa
    best_x = float(xs[i_best])
    best_f = float(fs[i_best])
    if not math.isfinite(best_f):
        raise DomainError("objective returned no finite values on the grid")

    a = float(xs[max(i_best - 1, 0)])
    b = float(xs[min(i_best + 1, n_grid - 1)])
    converged = (b - a) <= tol
    x1 = b - _INV_GOLDEN * (b - a)
    x2 = a + _INV_GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    n_evals += 2
    for _ in range(max_refine):
        if (b - a) <= tol:
            converged = True
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLDEN * (b - a)
            f2 = f(x2)
        n_evals += 1
    for cand_x, cand_f in ((x1, f1), (x2, f2)):
        if math.isfinite(cand_f) and (
            cand_f > best_f or (cand_f == best_f and cand_x < best_x)
        ):
            best_x, best_f = cand_x, cand_f
    return OptimResult1D(argmax=best_x, max_value=best_f, n_evals=n_evals, converged=converged)


def aitken_limit(seq: Sequence[float]) -> tuple[float, float]:
    """Accelerated limit of a convergent sequence via Aitken's delta-squared.

    Uses the last three terms; the returned error estimate is the spread
    between the accelerated value and the final raw term. Falls back to the
    final term when the second difference is too small to divide by (already
    converged, or not geometric), with the last first-difference as error.
    """
    if len(seq) < 3:
        raise DomainError(f"aitken_limit needs at least 3 terms, got {len(seq)}")
    x0, x1, x2 = seq[-3], seq[-2], seq[-1]
    d1 = x1 - x0
    d2 = x2 - x1
    dd = d2 - d1
    if abs(dd) <= 1e-14 * max(abs(x0), abs(x1), abs(x2), 1e-30):
        return x2, abs(d2)
    acc = x2 - d2 * d2 / dd
    return acc, abs(acc - x2)
