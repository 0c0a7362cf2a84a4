"""Numerical integration on circles and on the weighted unit disk.

The weighted-area measure is d(mu_alpha) = (alpha+1)(1-|z|^2)^alpha dA(z)
with dA the normalized area measure; all disk integrals are computed after
the substitution u = 1 - r^2, which turns the radial factor into the Jacobi
weight u^alpha on (0, 1) handled exactly by Gauss-Jacobi nodes.  Angular
integrals use the uniform trapezoid rule, spectrally accurate for the smooth
periodic integrands that arise here.

Refinement doubles the node counts and compares successive values; the
difference of the last two iterates is reported as the error estimate,
never hidden.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import roots_jacobi

from .errors import ConvergenceError, SingularIntegrandWarning
from .models import AnalyticFunction

__all__ = [
    "QuadratureScheme",
    "NormResult",
    "circle_mean",
    "bergman_norm",
    "disk_moment",
    "hardy_stein_rhs",
    "m_alpha_integral",
]


@dataclass(frozen=True)
class QuadratureScheme:
    """Node counts, refinement policy and tolerance for disk integrals."""

    alpha: float = 0.0
    n_radial: int = 128
    n_angular: int = 512
    max_refinements: int = 6
    rel_tol: float = 1e-9

    def __post_init__(self):
        if not (self.alpha > -1):
            raise ValueError(f"alpha must be > -1, got {self.alpha}")
        if self.n_radial < 8:
            raise ValueError("n_radial must be >= 8")
        if self.n_angular < 16 or self.n_angular % 2:
            raise ValueError("n_angular must be even and >= 16")

    def with_alpha(self, alpha: float) -> "QuadratureScheme":
        return self if alpha == self.alpha else replace(self, alpha=alpha)


@dataclass(frozen=True)
class NormResult:
    """A computed norm with its error estimate and the scheme that made it."""

    value: float
    abs_error_estimate: float
    scheme_used: QuadratureScheme
    converged: bool

    def __float__(self):
        return self.value


@lru_cache(maxsize=64)
def _jacobi_unit(n: int, alpha: float):
    """Nodes/weights for integral_0^1 u^alpha g(u) du."""
    x, w = roots_jacobi(n, 0.0, alpha)
    u = 0.5 * (1.0 + x)
    w = w * 2.0 ** (-alpha - 1.0)
    u.setflags(write=False)
    w.setflags(write=False)
    return u, w


@lru_cache(maxsize=64)
def _jacobi_linear(n: int):
    """Nodes/weights for integral_0^1 x g(x) dx."""
    t, w = roots_jacobi(n, 0.0, 1.0)
    x = 0.5 * (1.0 + t)
    w = w / 4.0
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _angles(n: int) -> np.ndarray:
    return np.arange(n) * (2.0 * math.pi / n)


def _mu_alpha_integral(h, alpha: float, scheme: QuadratureScheme):
    """integral_D h d(mu_alpha) with doubling refinement on both axes.

    h maps a complex ndarray to an ndarray (possibly complex).
    Returns (value, abs_error_estimate, converged, levels_used).
    """
    prev = None
    value = None
    err = math.inf
    for level in range(scheme.max_refinements + 1):
        n_r = scheme.n_radial << level
        n_a = scheme.n_angular << level
        u, w = _jacobi_unit(n_r, alpha)
        r = np.sqrt(1.0 - u)
        Z = r[:, None] * np.exp(1j * _angles(n_a))[None, :]
        radial_profile = h(Z).mean(axis=1)
        value = (alpha + 1.0) * np.dot(w, radial_profile)
        if prev is not None:
            err = abs(value - prev)
            if err <= scheme.rel_tol * max(abs(value), 1e-300):
                return value, err, True, level
        prev = value
    return value, err, False, scheme.max_refinements


def circle_mean(f: AnalyticFunction, p: float, r: float, scheme: QuadratureScheme | None = None) -> float:
    """Integral p-mean of |f| over the circle of radius r.

    Uniform trapezoid rule with angular node doubling until two successive
    values agree to rel_tol.
    """
    if not (p > 0):
        raise ValueError(f"p must be > 0, got {p}")
    if not (0.0 <= r < 1.0):
        raise ValueError(f"r must be in [0, 1), got {r}")
    scheme = scheme or QuadratureScheme()
    prev = None
    for level in range(scheme.max_refinements + 1):
        n_a = scheme.n_angular << level
        z = r * np.exp(1j * _angles(n_a))
        mean_pow = float(np.mean(np.abs(f.eval(z)) ** p))
        value = mean_pow ** (1.0 / p)
        if prev is not None and abs(value - prev) <= scheme.rel_tol * max(abs(value), 1e-300):
            return value
        prev = value
    raise ConvergenceError(
        f"circle_mean did not converge to rel_tol={scheme.rel_tol} "
        f"after {scheme.max_refinements} angular doublings",
        last=value,
        previous=prev,
    )


def bergman_norm(
    f: AnalyticFunction,
    p: float,
    alpha: float,
    scheme: QuadratureScheme | None = None,
    strict: bool = True,
) -> NormResult:
    """Weighted Bergman norm ||f||_{A^p_alpha}.

    Radial integral in the substituted variable u = 1 - r^2 with Gauss-Jacobi
    nodes for the weight u^alpha; angular means by the trapezoid rule; node
    counts double until the integral settles to rel_tol.  With strict=True a
    failure to converge raises; otherwise the result is flagged.
    """
    if not (p > 0):
        raise ValueError(f"p must be > 0, got {p}")
    if not (alpha > -1):
        raise ValueError(f"alpha must be > -1, got {alpha}")
    scheme = (scheme or QuadratureScheme()).with_alpha(alpha)
    integral, err, converged, _ = _mu_alpha_integral(
        lambda Z: np.abs(f.eval(Z)) ** p, alpha, scheme
    )
    integral = float(np.real(integral))
    value = integral ** (1.0 / p)
    # propagate d(value)/d(integral) through the 1/p power
    abs_err = err * value / (p * integral) if integral > 0 else err
    if strict and not converged:
        raise ConvergenceError(
            f"bergman_norm(p={p}, alpha={alpha}) did not converge to "
            f"rel_tol={scheme.rel_tol}",
            last=value,
            previous=None,
        )
    return NormResult(value, abs_err, scheme, converged)


def disk_moment(
    f: AnalyticFunction,
    p: float,
    alpha: float,
    kind: str,
    scheme: QuadratureScheme | None = None,
) -> complex:
    """Weighted moments of |f| over the disk.

    kind "z_weighted":  integral |f|^p z d(mu_alpha)
    kind "f_weighted":  integral |f|^(p-2) f d(mu_alpha)   (needs p > 1)
    """
    if kind not in ("z_weighted", "f_weighted"):
        raise ValueError(f"kind must be 'z_weighted' or 'f_weighted', got {kind!r}")
    if not (p > 0):
        raise ValueError(f"p must be > 0, got {p}")
    if kind == "f_weighted" and not (p > 1):
        raise ValueError("f_weighted moment needs p > 1 for an integrable integrand")
    scheme = (scheme or QuadratureScheme()).with_alpha(alpha)

    if kind == "z_weighted":
        def h(Z):
            return np.abs(f.eval(Z)) ** p * Z
    else:
        def h(Z):
            F = f.eval(Z)
            aF = np.abs(F)
            with np.errstate(divide="ignore", invalid="ignore"):
                scale = np.where(aF > 0.0, aF ** (p - 2.0), 0.0)
            return scale * F

    value, err, converged, _ = _mu_alpha_integral(h, alpha, scheme)
    if not converged:
        raise ConvergenceError(
            f"disk_moment({kind}, p={p}, alpha={alpha}) did not converge "
            f"to rel_tol={scheme.rel_tol}",
            last=value,
            previous=None,
        )
    return complex(value)


def hardy_stein_rhs(
    f: AnalyticFunction,
    p: float,
    r: float,
    scheme: QuadratureScheme | None = None,
) -> float:
    """(p^2 / 2r) integral over the disk of radius r of |f'|^2 |f|^(p-2) dA.

    Equals d/dr of the p-th power of the circle mean for analytic f.  For
    p < 2 the integrand is singular at zeros of f; the precondition p > 1
    keeps it integrable, and a warning is emitted when |f| nearly vanishes
    on the grid.
    """
    if not (p > 1):
        raise ValueError(f"p must be > 1, got {p}")
    if not (0.0 < r < 1.0):
        raise ValueError(f"r must be in (0, 1), got {r}")
    scheme = scheme or QuadratureScheme()

    prev = None
    value = None
    err = math.inf
    warned = False
    for level in range(scheme.max_refinements + 1):
        n_x = max(32, scheme.n_radial // 2) << level
        n_a = scheme.n_angular << level
        x, w = _jacobi_linear(n_x)
        Z = (r * x)[:, None] * np.exp(1j * _angles(n_a))[None, :]
        F = f.eval(Z)
        aF = np.abs(F)
        if not warned and p < 2 and float(aF.min()) < 1e-8:
            warnings.warn(
                "hardy_stein_rhs integrand is nearly singular: min |f| < 1e-8 on the grid",
                SingularIntegrandWarning,
                stacklevel=2,
            )
            warned = True
        with np.errstate(divide="ignore", invalid="ignore"):
            g = np.abs(f.eval(Z, 1)) ** 2 * np.where(aF > 0.0, aF ** (p - 2.0), 0.0)
        # area integral over r*D via scaled nodes: 2 r^2 * integral_0^1 x mean_t g dx
        integral = 2.0 * r * r * float(np.dot(w, g.mean(axis=1)))
        value = p * p / (2.0 * r) * integral
        if prev is not None:
            err = abs(value - prev)
            if err <= scheme.rel_tol * max(abs(value), 1e-300):
                return value
        prev = value
    raise ConvergenceError(
        f"hardy_stein_rhs(p={p}, r={r}) did not converge to rel_tol={scheme.rel_tol}",
        last=value,
        previous=prev,
    )


def m_alpha_integral(alpha: float) -> float:
    """(1/pi) integral over t in (2 pi/3, pi) of min{(2|cos t|)^a, (2|cos t|-1)^a}.

    The weight factor from the polar-coordinate lower bound for the growth of
    the inclusion constant.  Monotonicity of x -> x^alpha picks the branch:
    2|cos t| - 1 <= 2|cos t|, so the min is the smaller base for alpha >= 0
    and the larger base for alpha < 0.
    """
    if not (alpha > -1):
        raise ValueError(f"alpha must be > -1, got {alpha}")
    if alpha >= 0:
        integrand = lambda t: (2.0 * abs(math.cos(t)) - 1.0) ** alpha
    else:
        integrand = lambda t: (2.0 * abs(math.cos(t))) ** alpha
    value, _ = quad(integrand, 2.0 * math.pi / 3.0, math.pi, epsabs=1e-14, epsrel=1e-13, limit=200)
    return value / math.pi
