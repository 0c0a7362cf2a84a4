"""Evaluable models of analytic functions on the unit disk.

A small catalog of closed-form functions (disk automorphisms, Bergman-kernel
powers, logarithmic models, extremal families for the Besov-to-Bloch
inclusion) plus truncated Taylor series.  Every model supports evaluation of
f, f' and f'' anywhere in the open disk, Taylor coefficients at 0, and the
Bloch seminorm sup |f'(z)| (1 - |z|^2), either in closed form or by grid
search with local refinement.

Models are immutable; all operations are pure and safe to call concurrently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ClosedFormUnavailable, DegenerateFunctionError

__all__ = [
    "AnalyticFunction",
    "Taylor",
    "Moebius",
    "Kernel",
    "LogOneSided",
    "LogTwoSided",
    "Linear",
    "Cauchy",
    "Monomial",
    "AtomicDecomposition",
    "LinearCombination",
    "DerivativeOf",
    "MoebiusCompose",
    "taylor_coefficients",
    "bloch_seminorm",
    "bloch_norm",
    "normalize_bloch",
    "parse_function_spec",
    "MAX_TAYLOR_TERMS",
]

_polyval = np.polynomial.polynomial.polyval

#: hard cap for requested Taylor coefficient counts
MAX_TAYLOR_TERMS = 4096

#: evaluation is only guaranteed this far from the boundary
BOUNDARY_MARGIN = 1e-12


def _check_in_disk(a: complex, name: str = "a") -> complex:
    a = complex(a)
    if not (abs(a) < 1.0):
        raise ValueError(f"{name} must lie in the open unit disk, got |{name}| = {abs(a)}")
    return a


class AnalyticFunction:
    """Base class for all function models."""

    def eval(self, z, order: int = 0):
        """Value of f, f' or f'' at z (scalar or array of points in the disk)."""
        if order not in (0, 1, 2):
            raise ValueError(f"order must be 0, 1 or 2, got {order!r}")
        arr = np.asarray(z, dtype=complex)
        if np.any(np.abs(arr) >= 1.0):
            raise ValueError("evaluation point outside the open unit disk")
        out = self._eval(arr, order)
        if np.isscalar(z) or np.ndim(z) == 0:
            return complex(out)
        return out

    def __call__(self, z):
        return self.eval(z, 0)

    def _eval(self, z: np.ndarray, order: int) -> np.ndarray:
        raise NotImplementedError

    def taylor(self, n: int) -> np.ndarray:
        """Coefficients a_0 .. a_n of the expansion at 0."""
        raise NotImplementedError

    def derivative(self) -> "AnalyticFunction":
        """Model of f'; closed-form per catalog case where cheap."""
        return DerivativeOf(self)

    def closed_form_bloch_seminorm(self) -> float:
        raise ClosedFormUnavailable(
            f"no closed-form Bloch seminorm for {type(self).__name__}"
        )


@dataclass(frozen=True, eq=False)
class Taylor(AnalyticFunction):
    """Polynomial f(z) = sum a_k z^k given by its coefficient list."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coefficients, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    def _eval(self, z, order):
        c = self.coefficients
        for _ in range(order):
            c = c[1:] * np.arange(1, len(c)) if len(c) > 1 else np.zeros(1, complex)
        return _polyval(z, c)

    def taylor(self, n):
        out = np.zeros(n + 1, dtype=complex)
        m = min(n + 1, len(self.coefficients))
        out[:m] = self.coefficients[:m]
        return out

    def derivative(self):
        c = self.coefficients
        if len(c) == 1:
            return Taylor(np.zeros(1, complex))
        return Taylor(c[1:] * np.arange(1, len(c)))

    def closed_form_bloch_seminorm(self):
        nz = np.nonzero(np.abs(self.coefficients) > 0)[0]
        deg = nz[-1] if nz.size else 0
        if deg == 0:
            return 0.0
        if deg == 1:
            return float(abs(self.coefficients[1]))
        raise ClosedFormUnavailable("no closed form for general polynomials")


@dataclass(frozen=True)
class Moebius(AnalyticFunction):
    """Disk automorphism phi_a(z) = (a - z) / (1 - conj(a) z)."""

    a: complex

    def __post_init__(self):
        object.__setattr__(self, "a", _check_in_disk(self.a))

    def _eval(self, z, order):
        ab = np.conj(self.a)
        d = 1.0 - ab * z
        if order == 0:
            return (self.a - z) / d
        if order == 1:
            return (abs(self.a) ** 2 - 1.0) / d**2
        return 2.0 * ab * (abs(self.a) ** 2 - 1.0) / d**3

    def taylor(self, n):
        out = np.zeros(n + 1, dtype=complex)
        out[0] = self.a
        if n >= 1:
            k = np.arange(n)
            out[1:] = -(1.0 - abs(self.a) ** 2) * np.conj(self.a) ** k
        return out

    def closed_form_bloch_seminorm(self):
        # Schwarz-Pick equality: |phi'(z)| (1-|z|^2) = 1 - |phi(z)|^2, max 1 at z = a
        return 1.0


@dataclass(frozen=True)
class Kernel(AnalyticFunction):
    """Bergman-kernel power k_zeta(z) = (1 - conj(zeta) z)^(-2(alpha+2)/p).

    The extremal function for pointwise evaluation in the weighted Bergman
    space with exponent p and weight power alpha.
    """

    zeta: complex
    p: float
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "zeta", _check_in_disk(self.zeta, "zeta"))
        if not (self.p > 0):
            raise ValueError(f"p must be > 0, got {self.p}")
        if not (self.alpha > -1):
            raise ValueError(f"alpha must be > -1, got {self.alpha}")

    @property
    def exponent(self) -> float:
        return 2.0 * (self.alpha + 2.0) / self.p

    def _eval(self, z, order):
        s = self.exponent
        zb = np.conj(self.zeta)
        d = 1.0 - zb * z
        if order == 0:
            return d ** (-s)
        if order == 1:
            return s * zb * d ** (-s - 1.0)
        return s * (s + 1.0) * zb**2 * d ** (-s - 2.0)

    def taylor(self, n):
        s = self.exponent
        zb = np.conj(self.zeta)
        out = np.zeros(n + 1, dtype=complex)
        out[0] = 1.0
        c = 1.0
        for k in range(1, n + 1):
            c *= (k - 1 + s) / k
            out[k] = c * zb**k
        return out

    def closed_form_bloch_seminorm(self):
        # sup over each circle sits on the ray through zeta; the radial
        # maximizer solves (1-s) t r^2 - 2 r + (s+1) t = 0, s = exponent
        t = abs(self.zeta)
        if t == 0.0:
            return 0.0
        s = self.exponent
        if abs(s - 1.0) < 1e-14:
            r = t
        else:
            r = (1.0 - math.sqrt(1.0 - (1.0 - s * s) * t * t)) / ((1.0 - s) * t)
        return s * t * (1.0 - r * r) / (1.0 - t * r) ** (s + 1.0)


@dataclass(frozen=True)
class LogOneSided(AnalyticFunction):
    """f(z) = scale * log(1 - z); one logarithmic singularity at z = 1.

    scale = -1/2 gives the unit-Bloch-seminorm growth test function.
    """

    scale: float

    def _eval(self, z, order):
        if order == 0:
            return self.scale * np.log(1.0 - z)
        if order == 1:
            return -self.scale / (1.0 - z)
        return -self.scale / (1.0 - z) ** 2

    def taylor(self, n):
        out = np.zeros(n + 1, dtype=complex)
        if n >= 1:
            k = np.arange(1, n + 1)
            out[1:] = -self.scale / k
        return out

    def closed_form_bloch_seminorm(self):
        # sup (1-|z|^2)/|1-z| = 2, approached along the real axis
        return 2.0 * abs(self.scale)


@dataclass(frozen=True)
class LogTwoSided(AnalyticFunction):
    """f(z) = scale * log((1 + z)/(1 - z)); singularities at both z = +-1.

    scale = 1/2 gives the unit-Bloch-norm model used for the contractivity
    crossing check.
    """

    scale: float

    def _eval(self, z, order):
        if order == 0:
            return self.scale * (np.log(1.0 + z) - np.log(1.0 - z))
        if order == 1:
            return 2.0 * self.scale / (1.0 - z**2)
        return 4.0 * self.scale * z / (1.0 - z**2) ** 2

    def taylor(self, n):
        out = np.zeros(n + 1, dtype=complex)
        k = np.arange(1, n + 1, 2)
        out[k] = 2.0 * self.scale / k
        return out

    def closed_form_bloch_seminorm(self):
        # (1-|z|^2)/|1-z^2| <= 1 with equality on the real axis
        return 2.0 * abs(self.scale)


@dataclass(frozen=True)
class Linear(AnalyticFunction):
    """f(z) = slope * z + offset; the degenerate extremal family."""

    slope: complex
    offset: complex = 0.0

    def _eval(self, z, order):
        if order == 0:
            return self.slope * z + self.offset
        if order == 1:
            return np.full_like(z, self.slope)
        return np.zeros_like(z)

    def taylor(self, n):
        out = np.zeros(n + 1, dtype=complex)
        out[0] = self.offset
        if n >= 1:
            out[1] = self.slope
        return out

    def derivative(self):
        return Monomial(0, self.slope)

    def closed_form_bloch_seminorm(self):
        return float(abs(self.slope))


@dataclass(frozen=True)
class Cauchy(AnalyticFunction):
    """Shifted Cauchy kernel, the non-degenerate Besov-to-Bloch extremal family:

        f(z) = gamma * (1 - |zeta|^2)/conj(zeta) * 1/(1 - conj(zeta) z) + delta
    """

    gamma: complex
    delta: complex
    zeta: complex

    def __post_init__(self):
        z = _check_in_disk(self.zeta, "zeta")
        if z == 0:
            raise ValueError("zeta must be nonzero; use Linear for zeta = 0")
        object.__setattr__(self, "zeta", z)

    @property
    def _front(self) -> complex:
        return self.gamma * (1.0 - abs(self.zeta) ** 2) / np.conj(self.zeta)

    def _eval(self, z, order):
        zb = np.conj(self.zeta)
        d = 1.0 - zb * z
        if order == 0:
            return self._front / d + self.delta
        if order == 1:
            return self._front * zb / d**2
        return 2.0 * self._front * zb**2 / d**3

    def taylor(self, n):
        zb = np.conj(self.zeta)
        out = np.zeros(n + 1, dtype=complex)
        out[0] = self._front + self.delta
        if n >= 1:
            k = np.arange(n)
            out[1:] = self.gamma * (1.0 - abs(self.zeta) ** 2) * zb**k
        return out

    def closed_form_bloch_seminorm(self):
        # |f'(z)|(1-|z|^2) = |gamma| (1-|zeta|^2)(1-|z|^2)/|1-conj(zeta) z|^2,
        # maximized at z = zeta by the Schwarz-Pick bound
        return float(abs(self.gamma))


@dataclass(frozen=True)
class Monomial(AnalyticFunction):
    """f(z) = coefficient * z^degree."""

    degree: int
    coefficient: complex = 1.0

    def __post_init__(self):
        if self.degree < 0 or int(self.degree) != self.degree:
            raise ValueError(f"degree must be a non-negative integer, got {self.degree}")
        object.__setattr__(self, "degree", int(self.degree))

    def _eval(self, z, order):
        n, c = self.degree, self.coefficient
        if order > n:
            return np.zeros_like(z)
        fac = 1.0
        for j in range(order):
            fac *= n - j
        return c * fac * z ** (n - order)

    def taylor(self, n):
        out = np.zeros(n + 1, dtype=complex)
        if self.degree <= n:
            out[self.degree] = self.coefficient
        return out

    def derivative(self):
        if self.degree == 0:
            return Monomial(0, 0.0)
        return Monomial(self.degree - 1, self.coefficient * self.degree)

    def closed_form_bloch_seminorm(self):
        n = self.degree
        if n == 0:
            return 0.0
        if n == 1:
            return float(abs(self.coefficient))
        # max of n r^(n-1) (1-r^2) at r^2 = (n-1)/(n+1)
        return float(
            abs(self.coefficient)
            * n
            * ((n - 1) / (n + 1)) ** ((n - 1) / 2)
            * 2.0
            / (n + 1)
        )


@dataclass(frozen=True, eq=False)
class AtomicDecomposition(AnalyticFunction):
    """f(z) = sum_k b_k phi_{a_k}(z), an explicit atomic sum of automorphisms."""

    atoms: tuple

    def __post_init__(self):
        checked = tuple((complex(b), _check_in_disk(a)) for b, a in self.atoms)
        object.__setattr__(self, "atoms", checked)

    def _eval(self, z, order):
        out = np.zeros_like(z)
        for b, a in self.atoms:
            ab = np.conj(a)
            d = 1.0 - ab * z
            if order == 0:
                out = out + b * (a - z) / d
            elif order == 1:
                # phi_a'(z) = (|a|^2 - 1)/(1 - conj(a) z)^2
                out = out + b * (abs(a) ** 2 - 1.0) / d**2
            else:
                out = out + b * 2.0 * ab * (abs(a) ** 2 - 1.0) / d**3
        return out

    def taylor(self, n):
        out = np.zeros(n + 1, dtype=complex)
        for b, a in self.atoms:
            out += b * Moebius(a).taylor(n)
        return out

    def coefficient_l1(self) -> float:
        return float(sum(abs(b) for b, _ in self.atoms))

    def closed_form_bloch_seminorm(self):
        if len(self.atoms) == 0:
            return 0.0
        if len(self.atoms) == 1:
            return float(abs(self.atoms[0][0]))
        raise ClosedFormUnavailable("no closed form for multi-atom sums")


@dataclass(frozen=True, eq=False)
class LinearCombination(AnalyticFunction):
    """f(z) = sum_k c_k g_k(z) for models g_k with scalar weights c_k."""

    terms: tuple

    def __post_init__(self):
        checked = tuple((complex(c), g) for c, g in self.terms)
        object.__setattr__(self, "terms", checked)

    def _eval(self, z, order):
        out = np.zeros_like(z)
        for c, g in self.terms:
            out = out + c * g._eval(z, order)
        return out

    def taylor(self, n):
        out = np.zeros(n + 1, dtype=complex)
        for c, g in self.terms:
            out += c * g.taylor(n)
        return out

    def derivative(self):
        return LinearCombination(tuple((c, g.derivative()) for c, g in self.terms))


@dataclass(frozen=True, eq=False)
class DerivativeOf(AnalyticFunction):
    """Symbolic derivative wrapper; order-2 evaluation is not available."""

    base: AnalyticFunction

    def _eval(self, z, order):
        if order == 2:
            raise ValueError("second derivative of a derivative model needs f'''")
        return self.base._eval(z, order + 1)

    def taylor(self, n):
        c = self.base.taylor(n + 1)
        return c[1:] * np.arange(1, n + 2)


@dataclass(frozen=True, eq=False)
class MoebiusCompose(AnalyticFunction):
    """f(phi_a(z)); used to probe conformal invariance of the Bloch seminorm."""

    base: AnalyticFunction
    a: complex

    def __post_init__(self):
        object.__setattr__(self, "a", _check_in_disk(self.a))

    def _eval(self, z, order):
        ab = np.conj(self.a)
        d = 1.0 - ab * z
        w = (self.a - z) / d
        if order == 0:
            return self.base._eval(w, 0)
        dphi = (abs(self.a) ** 2 - 1.0) / d**2
        if order == 1:
            return self.base._eval(w, 1) * dphi
        d2phi = 2.0 * ab * (abs(self.a) ** 2 - 1.0) / d**3
        return self.base._eval(w, 2) * dphi**2 + self.base._eval(w, 1) * d2phi

    def taylor(self, n):
        raise NotImplementedError("Taylor coefficients of a composition are not supported")

    def closed_form_bloch_seminorm(self):
        # the Bloch seminorm is invariant under composition with automorphisms
        return self.base.closed_form_bloch_seminorm()


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def taylor_coefficients(f: AnalyticFunction, n: int) -> np.ndarray:
    """First n+1 Taylor coefficients of f at 0."""
    if n < 0 or n > MAX_TAYLOR_TERMS:
        raise ValueError(f"n must be in [0, {MAX_TAYLOR_TERMS}], got {n}")
    return f.taylor(int(n))


_GOLDEN_STENCIL = np.array([-1.0, -0.381966011250105, 0.381966011250105, 1.0])


def _bloch_numeric(
    f: AnalyticFunction,
    n_radial: int = 256,
    n_angular: int = 512,
    refine_tol: float = 1e-8,
    r_max: float = 1.0 - 1e-9,
) -> float:
    """Grid search for sup |f'|(1-|z|^2) with golden-section refinement.

    Returns a lower bound for the sup; for polynomial models the refinement
    brings it within ~refine_tol of the true value.
    """
    radii = r_max * np.sin(np.linspace(0.0, np.pi / 2, n_radial))
    angles = np.arange(n_angular) * (2.0 * np.pi / n_angular)
    Z = radii[:, None] * np.exp(1j * angles)[None, :]
    vals = np.abs(f._eval(Z, 1)) * (1.0 - np.abs(Z) ** 2)
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    best = float(vals[i, j])
    r0, t0 = float(radii[i]), float(angles[j])
    h_r = np.pi / 2 / (n_radial - 1)
    h_t = 2.0 * np.pi / n_angular

    def g(zz):
        return np.abs(f._eval(zz, 1)) * (1.0 - np.abs(zz) ** 2)

    step_r, step_t = h_r, h_t
    while max(step_r, step_t) > refine_tol * 1e-1:
        rr = np.clip(r0 + step_r * _GOLDEN_STENCIL, 0.0, r_max)
        tt = t0 + step_t * _GOLDEN_STENCIL
        zz = np.concatenate([rr * np.exp(1j * t0), r0 * np.exp(1j * tt)])
        vv = g(zz)
        k = int(np.argmax(vv))
        if vv[k] > best:
            best = float(vv[k])
            if k < 4:
                r0 = float(rr[k])
            else:
                t0 = float(tt[k - 4])
        else:
            step_r *= 0.45
            step_t *= 0.45
    return best


def bloch_seminorm(f: AnalyticFunction, mode: str = "auto", **grid_kwargs) -> float:
    """Bloch seminorm sup_z |f'(z)| (1 - |z|^2).

    mode "closed_form" uses the catalog value and raises ClosedFormUnavailable
    for models without one; "numeric" always grid-searches (a certified lower
    bound, within the refinement tolerance for polynomials); "auto" tries the
    closed form first.
    """
    if mode == "closed_form":
        return f.closed_form_bloch_seminorm()
    if mode == "numeric":
        return _bloch_numeric(f, **grid_kwargs)
    if mode == "auto":
        try:
            return f.closed_form_bloch_seminorm()
        except ClosedFormUnavailable:
            return _bloch_numeric(f, **grid_kwargs)
    raise ValueError(f"mode must be 'closed_form', 'numeric' or 'auto', got {mode!r}")


def bloch_norm(f: AnalyticFunction, mode: str = "auto") -> float:
    """|f(0)| + Bloch seminorm."""
    return abs(f.eval(0.0)) + bloch_seminorm(f, mode)


def normalize_bloch(f: AnalyticFunction, mode: str = "auto") -> AnalyticFunction:
    """(f - f(0)) / seminorm: unit Bloch seminorm, vanishing at the origin."""
    rho = bloch_seminorm(f, mode)
    if rho < 1e-14:
        raise DegenerateFunctionError("cannot normalize a function with zero Bloch seminorm")
    f0 = f.eval(0.0)
    if isinstance(f, Taylor):
        c = f.coefficients / rho
        c = c.copy()
        c[0] = 0.0
        return Taylor(c)
    if isinstance(f, Monomial) and f.degree >= 1:
        return Monomial(f.degree, f.coefficient / rho)
    terms = [(1.0 / rho, f)]
    if f0 != 0:
        terms.append((-f0 / rho, Monomial(0, 1.0)))
    return LinearCombination(tuple(terms))


# ---------------------------------------------------------------------------
# function-spec mini grammar (shared with the command line)
# ---------------------------------------------------------------------------


def parse_function_spec(spec: str) -> AnalyticFunction:
    """Parse the textual mini grammar for function models.

    Forms:
        moebius:a_re,a_im
        kernel:zeta_re,zeta_im,p,alpha
        log1:scale
        log2:scale
        mono:n,c_re,c_im
        taylor:c0_re,c0_im,c1_re,c1_im,...
        b1:b_re,b_im,a_re,a_im;b_re,b_im,a_re,a_im;...
    """
    head, sep, body = spec.partition(":")
    if not sep:
        raise ValueError(f"malformed function spec {spec!r}: missing ':'")
    head = head.strip().lower()

    def floats(text):
        try:
            return [float(t) for t in text.split(",")] if text else []
        except ValueError as exc:
            raise ValueError(f"malformed numbers in function spec {spec!r}") from exc

    if head == "moebius":
        v = floats(body)
        if len(v) != 2:
            raise ValueError("moebius spec needs a_re,a_im")
        return Moebius(complex(v[0], v[1]))
    if head == "kernel":
        v = floats(body)
        if len(v) != 4:
            raise ValueError("kernel spec needs zeta_re,zeta_im,p,alpha")
        return Kernel(complex(v[0], v[1]), v[2], v[3])
    if head == "log1":
        v = floats(body)
        if len(v) != 1:
            raise ValueError("log1 spec needs scale")
        return LogOneSided(v[0])
    if head == "log2":
        v = floats(body)
        if len(v) != 1:
            raise ValueError("log2 spec needs scale")
        return LogTwoSided(v[0])
    if head == "mono":
        v = floats(body)
        if len(v) != 3:
            raise ValueError("mono spec needs n,c_re,c_im")
        return Monomial(int(v[0]), complex(v[1], v[2]))
    if head == "taylor":
        v = floats(body)
        if len(v) == 0 or len(v) % 2:
            raise ValueError("taylor spec needs an even number of values (re,im pairs)")
        c = np.array(v[0::2]) + 1j * np.array(v[1::2])
        return Taylor(c)
    if head == "b1":
        atoms = []
        for part in filter(None, (s.strip() for s in body.split(";"))):
            v = floats(part)
            if len(v) != 4:
                raise ValueError("each b1 atom needs b_re,b_im,a_re,a_im")
            atoms.append((complex(v[0], v[1]), complex(v[2], v[3])))
        return AtomicDecomposition(tuple(atoms))
    raise ValueError(f"unknown function spec kind {head!r}")
