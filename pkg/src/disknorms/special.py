"""Real Gamma, log-Gamma and Beta functions.

Every closed-form constant in the package is a ratio of Gamma values, some
of them astronomically large (e.g. Gamma(n + alpha + 3) for n ~ 30), so all
formulas elsewhere are assembled in log space and exponentiated once at the
end.  These wrappers add the domain checking the rest of the package relies
on; the underlying evaluation is the platform's log-Gamma.
"""

import math

__all__ = ["ln_gamma", "gamma", "beta", "ln_beta"]

# exp(ln_gamma(x)) overflows float64 shortly after x = 171.6
GAMMA_OVERFLOW_LIMIT = 170.0


def _check_positive(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"{name} must be finite and > 0, got {x!r}")
    return x


def ln_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    return math.lgamma(_check_positive(x))


def gamma(x: float) -> float:
    """Gamma(x) for 0 < x <= 170 (overflow guard; use ln_gamma beyond)."""
    x = _check_positive(x)
    if x > GAMMA_OVERFLOW_LIMIT:
        raise OverflowError(
            f"gamma({x}) would overflow; work in log space via ln_gamma"
        )
    return math.exp(math.lgamma(x))


def ln_beta(x: float, y: float) -> float:
    """Natural log of the Euler Beta function B(x, y), x, y > 0."""
    x = _check_positive(x, "x")
    y = _check_positive(y, "y")
    return math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y)


def beta(x: float, y: float) -> float:
    """Euler Beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y)."""
    return math.exp(ln_beta(x, y))
