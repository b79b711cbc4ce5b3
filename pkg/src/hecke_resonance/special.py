"""Analytic kernels for the approximate functional equation.

The cutoff is

    V(y, x) = (1/2 pi i) int_{(c)} rho_s(x) y^(-s) ds/s,   rho_s(x) = Gamma(x+s+1/2)/Gamma(x+1/2),

and ``W_K(n, ell) = V(2 pi n / sqrt|D|, ell/2)``.  Shifting the contour left
picks up the pole at ``s = 0`` and then the poles of the Gamma factor; summing
those residues gives ``V(y, x) = Q(x + 1/2, y)``, the regularized upper
incomplete Gamma function.  Both the contour integral and the incomplete Gamma
function are implemented so that each checks the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import mpmath
import numpy as np
from scipy import integrate

from .quadratic_field import DomainError, FieldContext

ArrayLike = Union[float, complex, np.ndarray]

# B_{2k} / (2k (2k-1)) for the Stirling series
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_SHIFT_TO = 15.0
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class KernelConfig:
    abs_tol: float = 1e-10
    quad_line: float = 1.0
    quad_halfwidth: Optional[float] = None  # None means max(50, 8 sqrt(x))
    quad_step: float = 0.05
    precision_mode: str = "standard"

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")
        if not self.quad_step > 0:
            raise DomainError("quad_step must be positive")
        if self.quad_halfwidth is not None and self.quad_halfwidth < 10:
            raise DomainError("quad_halfwidth must be at least 10")
        if self.precision_mode not in ("standard", "extended"):
            raise DomainError("precision_mode must be 'standard' or 'extended'")

    def halfwidth(self, x: float) -> float:
        if self.quad_halfwidth is not None:
            return self.quad_halfwidth
        return max(50.0, 8.0 * math.sqrt(x))


DEFAULT_KERNEL = KernelConfig()


# ---------------------------------------------------------------------------
# log Gamma
# ---------------------------------------------------------------------------

def _stirling_tail(z: np.ndarray) -> np.ndarray:
    r = 1.0 / z
    r2 = r * r
    acc = np.zeros_like(z)
    for c in reversed(_STIRLING):
        acc = acc * r2 + c
    return acc * r


def _shift_count(z: np.ndarray) -> np.ndarray:
    return np.maximum(0, np.ceil(_SHIFT_TO - np.abs(z))).astype(np.int64)


def _log_gamma_array(z: np.ndarray) -> np.ndarray:
    m = _shift_count(z)
    shift = np.zeros_like(z)
    for k in range(int(m.max(initial=0))):
        active = k < m
        shift = shift + np.where(active, np.log(np.where(active, z + k, 1.0)), 0.0)
    w = z + m
    return (w - 0.5) * np.log(w) - w + _HALF_LOG_2PI + _stirling_tail(w) - shift


def log_gamma(z: ArrayLike, mode: str = "standard"):
    """Principal branch of log Gamma(z) for Re z > 0.

    ``mode="extended"`` evaluates with mpmath at 40 digits and returns an
    ``mpc``; the double precision result carries a relative error of a few
    ulps, which is an absolute error of order 1e-9 once |z| ~ 1e6.
    """
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise DomainError("log_gamma needs finite input")
    if np.any(arr.real <= 0):
        raise DomainError("log_gamma needs Re z > 0")
    if mode == "extended":
        if arr.ndim:
            raise DomainError("extended mode is scalar only")
        with mpmath.workdps(40):
            return mpmath.loggamma(mpmath.mpc(arr.real.item(), arr.imag.item()))
    if mode != "standard":
        raise DomainError(f"unknown mode {mode!r}")
    out = _log_gamma_array(np.atleast_1d(arr))
    if arr.ndim == 0:
        v = complex(out[0])
        return v.real if np.isrealobj(z) and not isinstance(z, complex) else v
    return out


def log_gamma_ratio(a: float, s: ArrayLike) -> np.ndarray:
    """log Gamma(a + s) - log Gamma(a) without cancellation for large ``a``."""
    s_arr = np.atleast_1d(np.asarray(s, dtype=complex))
    if a <= 0 or np.any((a + s_arr).real <= 0):
        raise DomainError("log_gamma_ratio needs Re a > 0 and Re(a + s) > 0")
    # shift both arguments up so the Stirling series applies to each
    m = int(max(0, math.ceil(_SHIFT_TO - a), int(_shift_count(a + s_arr).max(initial=0))))
    shift = np.zeros_like(s_arr)
    for k in range(m):
        shift += np.log1p(s_arr / (a + k))
    b = a + m
    w = b + s_arr
    main = (b - 0.5) * np.log1p(s_arr / b) + s_arr * np.log(w) - s_arr
    tail = _stirling_tail(w) - _stirling_tail(np.array([b + 0j]))[0]
    out = main + tail - shift
    return out if np.ndim(s) else out[0]


def rho(s: ArrayLike, x: float):
    """rho_s(x) = Gamma(x + s + 1/2) / Gamma(x + 1/2)."""
    if not math.isfinite(x) or x < 0.5:
        raise DomainError("rho needs x >= 1/2")
    s_arr = np.asarray(s, dtype=complex)
    if np.any((x + s_arr + 0.5).real <= 0):
        raise DomainError("rho is evaluated at a pole or left of the first pole")
    return np.exp(log_gamma_ratio(x + 0.5, s))


# ---------------------------------------------------------------------------
# the cutoff V(y, x)
# ---------------------------------------------------------------------------

def _check_yx(y: float, x: float) -> None:
    if not (math.isfinite(y) and math.isfinite(x)):
        raise DomainError("non-finite input")
    if y <= 0 or x <= 0:
        raise DomainError("V(y, x) needs y > 0 and x > 0")


def cutoff_V_quadrature(y: float, x: float, cfg: KernelConfig = DEFAULT_KERNEL, line: Optional[float] = None) -> float:
    """V(y, x) by the trapezoidal rule on the vertical line Re s = ``line``.

    A line left of 0 (but right of -x-1/2) is allowed; the residue 1 at
    ``s = 0`` is then added back.
    """
    _check_yx(y, x)
    c = cfg.quad_line if line is None else line
    if c == 0 or c <= -(x + 0.5):
        raise DomainError("quadrature line must avoid the poles")
    h = cfg.quad_step
    T = cfg.halfwidth(x)
    n = int(math.ceil(T / h))
    t = h * np.arange(-n, n + 1)
    s = c + 1j * t
    logf = log_gamma_ratio(x + 0.5, s) - s * math.log(y)
    f = np.exp(logf) / s
    # ds = i dt, so (1/2 pi i) int f ds = (1/2 pi) int f dt; the sum is real by symmetry
    val = h * math.fsum(f.real) / (2.0 * math.pi)
    return val + (1.0 if c < 0 else 0.0)


def _log_series_P(a: float, y: float) -> float:
    """log P(a, y) from the power series, valid for any y but used for y <= a + 1."""
    term = 1.0 / a
    total = term
    k = 0
    while True:
        k += 1
        term *= y / (a + k)
        total += term
        if term < total * 1e-17 or k > 100_000:
            break
    return a * math.log(y) - y - math.lgamma(a) + math.log(total)


def _log_cf_Q(a: float, y: float) -> float:
    """log Q(a, y) by the Lentz continued fraction, for y > a + 1."""
    tiny = 1e-300
    b = y + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 100_000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return a * math.log(y) - y - math.lgamma(a) + math.log(h)


def log_cutoff_V(y: float, x: float) -> float:
    """log V(y, x) = log Q(x + 1/2, y), accurate also when V is tiny."""
    _check_yx(y, x)
    a = x + 0.5
    if y <= a + 1.0:
        return math.log1p(-math.exp(_log_series_P(a, y)))
    return _log_cf_Q(a, y)


def log_cutoff_complement(y: float, x: float) -> float:
    """log(1 - V(y, x)) = log P(x + 1/2, y), accurate also when 1 - V is tiny."""
    _check_yx(y, x)
    a = x + 0.5
    if y <= a + 1.0:
        return _log_series_P(a, y)
    return math.log1p(-math.exp(_log_cf_Q(a, y)))


def cutoff_V_gamma(y: float, x: float) -> float:
    """V(y, x) = Q(x + 1/2, y) by series or continued fraction."""
    return math.exp(log_cutoff_V(y, x))


def W_K(n: ArrayLike, ell: float, ctx: FieldContext):
    """W_K(n, ell) = V(2 pi n / sqrt|D|, ell / 2); vectorised in ``n`` via scipy."""
    from scipy.special import gammaincc

    if ell <= 0:
        raise DomainError("W_K needs ell > 0")
    n_arr = np.asarray(n, dtype=float)
    if np.any(n_arr <= 0):
        raise DomainError("W_K needs n > 0")
    y = 2.0 * math.pi * n_arr / math.sqrt(abs(ctx.D))
    if n_arr.ndim == 0:
        return cutoff_V_gamma(float(y), ell / 2.0)
    return gammaincc(ell / 2.0 + 0.5, y)


# ---------------------------------------------------------------------------
# lemma verifiers
# ---------------------------------------------------------------------------

def _log_stirling_approx(x: float, sigma: float, t: float) -> complex:
    kappa = x + sigma
    q = t / kappa
    F = -t * math.atan(q) + 0.5 * kappa * math.log1p(q * q)
    psi = (
        kappa * math.atan(q)
        + t * math.log1p(sigma / x)
        + 0.5 * t * math.log1p(q * q)
        + t * (math.log(x) - 1.0)
    )
    return complex(sigma * (math.log(x) - 1.0) + kappa * math.log1p(sigma / x) + F, psi)


def rho_stirling_approx(x: float, sigma: float, t: float) -> complex:
    """(x/e)^sigma (1 + sigma/x)^(x+sigma) exp(F(t) + i psi(t)) with kappa = x + sigma."""
    return complex(np.exp(_log_stirling_approx(x, sigma, t)))


def verify_rho_asymptotics(x: float, sigma: float, t: float) -> float:
    """|rho_s(x) / approximation - 1| for s = sigma + i t."""
    if x < 1 or abs(sigma) > x / 2:
        raise DomainError("needs x >= 1 and |sigma| <= x/2")
    log_exact = complex(log_gamma_ratio(x + 0.5, complex(sigma, t)))
    return abs(np.expm1(log_exact - _log_stirling_approx(x, sigma, t)))


def verify_rho_derivative(x: float, s: complex, n: int) -> float:
    """Error of d^n/dx^n rho_s(x) against rho_s(x) log^n(1 + s/x).

    Central differences with step ``x * 1e-4``; relative error when the
    prediction is nonzero, absolute error otherwise.
    """
    s = complex(s)
    if x < 1 or abs(s.real) > x / 2:
        raise DomainError("needs x >= 1 and |Re s| <= x/2")
    if n not in (1, 2):
        raise DomainError("n must be 1 or 2")
    h = x * 1e-4
    f = lambda u: complex(rho(s, u))  # noqa: E731
    if n == 1:
        fd = (f(x + h) - f(x - h)) / (2 * h)
    else:
        fd = (f(x + h) - 2 * f(x) + f(x - h)) / (h * h)
    pred = f(x) * complex(np.log1p(s / x)) ** n
    if pred == 0:
        return abs(fd)
    return abs(fd - pred) / abs(pred)


def decay_constants(x: float) -> dict:
    """Measured constants C in the n = 0 envelopes at y = x/2 and y = 2x.

    ``|1 - V(x/2, x)| = C1 (1/2)^sqrt(x)`` and ``V(2x, x) = C2 (1/2)^sqrt(x)``.
    """
    env = -math.sqrt(x) * math.log(2.0)
    return {
        "value_low": math.exp(log_cutoff_complement(x / 2, x) - env),
        "value_high": math.exp(log_cutoff_V(2 * x, x) - env),
    }


def dV_dx(y: float, x: float, h: Optional[float] = None) -> float:
    """Central difference of V in x at fixed y, done on the smaller of V and 1 - V."""
    h = x * 1e-4 if h is None else h
    use_complement = log_cutoff_complement(y, x) < log_cutoff_V(y, x)
    g = log_cutoff_complement if use_complement else log_cutoff_V
    lp, l0, lm = g(y, x + h), g(y, x), g(y, x - h)
    # d/dx e^g = e^g g'
    deriv = math.exp(l0) * (lp - lm) / (2 * h)
    return -deriv if use_complement else deriv


def derivative_decay_constants(x: float) -> dict:
    """Measured C in |dV/dx| <= C x^(-1/2) (1/2)^sqrt(x) at y = x/2 and y = 2x."""
    env = x ** -0.5 * 0.5 ** math.sqrt(x)
    return {
        "deriv_low": abs(dV_dx(x / 2, x)) / env,
        "deriv_high": abs(dV_dx(2 * x, x)) / env,
    }


# ---------------------------------------------------------------------------
# smooth weight
# ---------------------------------------------------------------------------

def bump_phi(u: ArrayLike):
    """Phi(u) = exp(1 - 1/(1 - (2u-3)^2)) on (1, 2), zero elsewhere; Phi(3/2) = 1."""
    arr = np.asarray(u, dtype=float)
    w = 2.0 * arr - 3.0
    inside = np.abs(w) < 1.0
    safe = np.where(inside, w, 0.0)
    out = np.where(inside, np.exp(1.0 - 1.0 / (1.0 - safe * safe)), 0.0)
    return float(out) if out.ndim == 0 else out


def _bump_even(w: float) -> float:
    return bump_phi(1.5 + w)


def bump_phi_hat(v: float) -> complex:
    """Fourier transform int Phi(u) e(-u v) du.

    Phi is symmetric about 3/2, so this is exp(-3 pi i v) times a cosine
    transform over [0, 1/2].
    """
    if v == 0:
        val, _ = integrate.quad(_bump_even, 0.0, 0.5, epsabs=1e-15, epsrel=1e-13, limit=200)
        return complex(2.0 * val)
    val, _ = integrate.quad(
        _bump_even, 0.0, 0.5, weight="cos", wvar=2.0 * math.pi * abs(v),
        epsabs=1e-14, epsrel=1e-12, limit=500,
    )
    return 2.0 * val * complex(math.cos(3 * math.pi * v), -math.sin(3 * math.pi * v))


__all__ = [
    "DEFAULT_KERNEL",
    "KernelConfig",
    "W_K",
    "bump_phi",
    "bump_phi_hat",
    "cutoff_V_gamma",
    "cutoff_V_quadrature",
    "dV_dx",
    "decay_constants",
    "derivative_decay_constants",
    "log_cutoff_V",
    "log_cutoff_complement",
    "log_gamma",
    "log_gamma_ratio",
    "rho",
    "rho_stirling_approx",
    "verify_rho_asymptotics",
    "verify_rho_derivative",
]
