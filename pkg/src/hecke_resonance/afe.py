"""Central values L(1/2, xi) from the approximate functional equation.

    L(1/2, xi) = sum_k (xi(k) + conj xi(k)) Nk^(-1/2) W_K(Nk, |ell|)

The ideal sum is split by class.  For a representative ``c_j`` of each class,
ideals ``k`` in the inverse class correspond to nonzero ``beta in c_j`` up to
units via ``(beta) = k c_j``, so ``Nk = N(beta)/N(c_j)`` and
``xi(k) = exp(i ell arg beta) / xi(c_j)``.  The inner lattice sums do not
depend on the class character, so all ``h_K`` characters of one frequency
share them.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import gammaincc

from .characters import AngularCharacter, char_eval, make_characters
from .ideals import Ideal, element_args, ideal_from_hnf, orbit_points
from .quadratic_field import DomainError, FieldContext

LOG_FLOOR = 1e-12


@dataclass(frozen=True)
class AfeConfig:
    slack: float = 6.0
    target_abs_err: float = 1e-8
    oracle_T: float = 1e4

    def __post_init__(self):
        if not self.slack >= 2:
            raise DomainError("slack must be at least 2")
        if not self.target_abs_err > 0:
            raise DomainError("target_abs_err must be positive")
        if not self.oracle_T >= 10:
            raise DomainError("oracle_T must be at least 10")


DEFAULT_AFE = AfeConfig()


@dataclass(frozen=True)
class AfeResult:
    ell: int
    class_char_index: int
    value: float
    imag_residue: float
    n_terms: int
    est_err: float
    slack_used: float

    @property
    def floored(self) -> bool:
        return abs(self.value) < LOG_FLOOR

    @property
    def log_abs(self) -> float:
        return math.log(max(abs(self.value), LOG_FLOOR))


# ---------------------------------------------------------------------------
# class representatives and lattice points
# ---------------------------------------------------------------------------

def _form_to_hnf(ctx: FieldContext, form: Tuple[int, int, int]) -> Tuple[int, int, int]:
    a, b, _ = form
    # the ideal [a, (-b + sqrt D)/2]
    bp = (-b - 1) // 2 if ctx.w_is_half else -b // 2
    return a, bp % a, 1


@lru_cache(maxsize=None)
def class_rep_ideals(ctx: FieldContext) -> Tuple[Ideal, ...]:
    """The primitive ideal of each reduced form, in class-table order."""
    return tuple(ideal_from_hnf(ctx, _form_to_hnf(ctx, f)) for f in ctx.class_reps)


class LatticeCache:
    """Orbit representatives of each class lattice, grown on demand.  Thread-safe."""

    def __init__(self, ctx: FieldContext):
        self.ctx = ctx
        self.reps = class_rep_ideals(ctx)
        self._bound = 0
        self._data: List[Tuple[np.ndarray, np.ndarray]] = []
        self._lock = threading.Lock()

    def get(self, max_k: float) -> List[Tuple[np.ndarray, np.ndarray]]:
        """Per class: (k, arg beta) for ideals of norm k <= max_k, sorted by k."""
        need = int(math.floor(max_k))
        with self._lock:
            if need > self._bound:
                bound = max(need, int(self._bound * 1.25))
                data = []
                for c in self.reps:
                    norms, u, v = orbit_points(self.ctx, c.hnf, bound * c.norm)
                    data.append((norms // c.norm, element_args(self.ctx, u, v)))
                self._data, self._bound = data, bound
            data = self._data
        out = []
        for k, th in data:
            n = int(np.searchsorted(k, need, side="right"))
            out.append((k[:n], th[:n]))
        return out


_CACHES: Dict[int, LatticeCache] = {}
_CACHES_LOCK = threading.Lock()


def lattice_cache(ctx: FieldContext) -> LatticeCache:
    with _CACHES_LOCK:
        if ctx.d not in _CACHES:
            _CACHES[ctx.d] = LatticeCache(ctx)
        return _CACHES[ctx.d]


# ---------------------------------------------------------------------------
# truncation
# ---------------------------------------------------------------------------

def ideal_density(ctx: FieldContext) -> float:
    """kappa with #{k : Nk <= M} ~ kappa M."""
    return 2.0 * math.pi * ctx.h_K / (ctx.omega_K * math.sqrt(abs(ctx.D)))


def tail_estimate(ctx: FieldContext, ell: int, M: float) -> float:
    """Bound for the discarded terms with Nk > M, from the ideal density."""
    a = abs(ell) / 2.0 + 0.5
    c = 2.0 * math.pi / math.sqrt(abs(ctx.D))
    z = c * M
    kappa = ideal_density(ctx)
    qa = gammaincc(a, z)
    # int_z^inf Q(a, t) dt = a Q(a+1, z) - z Q(a, z)
    integral = max(a * gammaincc(a + 1.0, z) - z * qa, 0.0)
    edge = 2.0 * kappa * M * M**-0.5 * qa
    return 2.0 * (edge + 2.0 * kappa * M**-0.5 * integral / c)


def truncation(ctx: FieldContext, ell: int, cfg: AfeConfig) -> Tuple[float, float, float]:
    """(M, slack, est_err) with slack raised by factors 1.5 until est_err <= target."""
    slack = cfg.slack
    base = abs(ell) * math.sqrt(abs(ctx.D)) / (4.0 * math.pi)
    while True:
        M = max(slack * base, 1.0)
        est = tail_estimate(ctx, ell, M)
        if est <= cfg.target_abs_err:
            return M, slack, est
        slack *= 1.5


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _lattice_sums(ctx: FieldContext, ell: int, M: float) -> Tuple[np.ndarray, int]:
    """S_j = sum_{beta in c_j} exp(i ell arg beta) Nk^(-1/2) W_K(Nk, |ell|) for each class j."""
    data = lattice_cache(ctx).get(M)
    a = abs(ell) / 2.0 + 0.5
    c = 2.0 * math.pi / math.sqrt(abs(ctx.D))
    sums = np.empty(len(data), dtype=complex)
    n_terms = 0
    for j, (k, th) in enumerate(data):
        kf = k.astype(float)
        w = gammaincc(a, c * kf) / np.sqrt(kf)
        sums[j] = np.sum(np.exp(1j * (ell * th)) * w)
        n_terms += len(k)
    return sums, n_terms


def _check_ell(ctx: FieldContext, ell: int) -> None:
    if ell == 0:
        raise DomainError("ell = 0 is the trivial character, whose L-function has a pole")
    if ell % ctx.omega_K:
        raise DomainError(f"omega_K = {ctx.omega_K} does not divide ell = {ell}")


def rep_values(chars: Sequence[AngularCharacter]) -> np.ndarray:
    """Matrix of 1 / xi(c_j), rows by character, columns by class."""
    if not chars:
        return np.zeros((0, 0), dtype=complex)
    reps = class_rep_ideals(chars[0].ctx)
    return np.array([[1.0 / char_eval(xi, c) for c in reps] for xi in chars], dtype=complex)


def evaluate_frequency(ctx: FieldContext, ell: int, cfg: AfeConfig = DEFAULT_AFE,
                       chars: Optional[Sequence[AngularCharacter]] = None) -> List[AfeResult]:
    """AFE values of every character of frequency ``ell``, by class_char_index."""
    _check_ell(ctx, ell)
    chars = make_characters(ctx, ell) if chars is None else list(chars)
    M, slack, est = truncation(ctx, ell, cfg)
    sums, n_terms = _lattice_sums(ctx, ell, M)
    inv = rep_values(chars)
    out = []
    for xi, row in zip(chars, inv):
        raw = complex(np.dot(row, sums))
        out.append(AfeResult(ell, xi.class_char_index, 2.0 * raw.real, abs(raw.imag), n_terms, est, slack))
    return out


def afe_evaluate(xi: AngularCharacter, ctx: Optional[FieldContext] = None,
                 cfg: AfeConfig = DEFAULT_AFE) -> AfeResult:
    ctx = xi.ctx if ctx is None else ctx
    return evaluate_frequency(ctx, xi.ell, cfg, [xi])[0]


def afe_central_value(xi: AngularCharacter, ctx: Optional[FieldContext] = None,
                      cfg: AfeConfig = DEFAULT_AFE) -> float:
    """L(1/2, xi) as a real number."""
    res = afe_evaluate(xi, ctx, cfg)
    if res.imag_residue > 1e-9:
        raise RuntimeError(f"imaginary residue {res.imag_residue:.3e} exceeds 1e-9")
    return res.value


def evaluate_family(ctx: FieldContext, ells: Iterable[int], cfg: AfeConfig = DEFAULT_AFE,
                    threads: int = 1) -> List[AfeResult]:
    """AFE values over many frequencies, ordered by (ell, class_char_index).

    Each frequency is computed independently, so the output does not depend
    on ``threads``.
    """
    ells = [e for e in ells if e != 0 and e % ctx.omega_K == 0]
    if ells:
        # grow the shared lattice cache once, before any worker starts
        lattice_cache(ctx).get(max(truncation(ctx, e, cfg)[0] for e in ells))
    work = lambda e: evaluate_frequency(ctx, e, cfg)  # noqa: E731
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(work, ells))
    else:
        chunks = [work(e) for e in ells]
    out = [r for chunk in chunks for r in chunk]
    out.sort(key=lambda r: (r.ell, r.class_char_index))
    return out


# ---------------------------------------------------------------------------
# oracle and completion
# ---------------------------------------------------------------------------

def smoothed_series_value(s: complex, xi: AngularCharacter, ctx: Optional[FieldContext] = None,
                          T: float = 1e4, order: int = 0) -> complex:
    """sum_k xi(k) Nk^(-s) w(Nk/T) over Nk <= 50 T.

    ``order = 0`` uses ``w(u) = exp(-u)``, whose error is about
    ``|L(s-1, xi)|/T``.  ``order = m`` uses ``w(u) = Q(m+1, u)``, i.e.
    ``exp(-u) sum_{j<=m} u^j/j!``; its Mellin transform has no poles at
    ``-1, ..., -m``, so the error drops to about ``|L(s-m-1, xi)|/T^(m+1)``.
    """
    ctx = xi.ctx if ctx is None else ctx
    s = complex(s)
    if s.real < 0.5:
        raise DomainError("needs Re s >= 1/2")
    if T < 10:
        raise DomainError("needs T >= 10")
    if order < 0:
        raise DomainError("order must be nonnegative")
    data = lattice_cache(ctx).get(50 * T)
    inv = rep_values([xi])[0]
    total = 0j
    for j, (k, th) in enumerate(data):
        kf = k.astype(float)
        w = np.exp(-kf / T) if order == 0 else gammaincc(order + 1.0, kf / T)
        terms = np.exp(1j * (xi.ell * th) - s * np.log(kf)) * w
        total += inv[j] * np.sum(terms)
    return total


def direct_ideal_sum(s: complex, xi: AngularCharacter, B: float) -> complex:
    """sum_{Nk <= B} xi(k) Nk^(-s) by explicit ideal enumeration (slow oracle)."""
    from .ideals import enumerate_ideals

    terms = [char_eval(xi, k) * k.norm ** (-complex(s)) for k in enumerate_ideals(xi.ctx, B)]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


@dataclass(frozen=True)
class LambdaValue:
    L_half: float
    log_abs_L: float
    log_abs_lambda: float
    sign: int
    floored: bool


def lambda_log_factor(ctx: FieldContext, ell: int) -> float:
    """log of |D|^(1/4) (2 pi)^(-1/2) Gamma(1/2 + |ell|/2)."""
    return 0.25 * math.log(abs(ctx.D)) - 0.5 * math.log(2 * math.pi) + math.lgamma(0.5 + abs(ell) / 2.0)


def completed_lambda(xi: AngularCharacter, ctx: Optional[FieldContext] = None,
                     cfg: AfeConfig = DEFAULT_AFE) -> LambdaValue:
    """Lambda(1/2, xi) in log form: log|Lambda| and its sign."""
    ctx = xi.ctx if ctx is None else ctx
    L = afe_central_value(xi, ctx, cfg)
    return lambda_from_value(ctx, xi.ell, L)


def lambda_from_value(ctx: FieldContext, ell: int, L: float) -> LambdaValue:
    floored = abs(L) < LOG_FLOOR
    log_L = math.log(max(abs(L), LOG_FLOOR))
    return LambdaValue(L, log_L, log_L + lambda_log_factor(ctx, ell), (L > 0) - (L < 0), floored)


__all__ = [
    "AfeConfig",
    "AfeResult",
    "DEFAULT_AFE",
    "LambdaValue",
    "afe_central_value",
    "afe_evaluate",
    "class_rep_ideals",
    "completed_lambda",
    "direct_ideal_sum",
    "evaluate_family",
    "evaluate_frequency",
    "ideal_density",
    "lambda_from_value",
    "lambda_log_factor",
    "lattice_cache",
    "smoothed_series_value",
    "tail_estimate",
    "truncation",
]
