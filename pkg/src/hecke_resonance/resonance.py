"""Resonator, moments, Rankin diagnostics and the extreme-value search.

The resonator is ``R(xi) = sum_{Na <= N} xi(a) r(a)`` with ``r`` multiplicative,
supported on squarefree products of split primes, and ``r(p) = r(conj p)``.
Comparing

    sum_ell Phi(ell/X) sum_xi L(1/2, xi) |R(xi)|^2   and   sum_ell Phi(ell/X) sum_xi |R(xi)|^2

bounds the largest |L(1/2, xi)| on ``X <= ell <= 2X`` from below.  Both sums
are computed directly; the diagonal terms (``k a conj(b)`` generated by a
rational integer) are computed separately in closed form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import gammaincc
from sympy import primerange

from .afe import AfeConfig, AfeResult, DEFAULT_AFE, evaluate_family, truncation
from .characters import AngularCharacter, make_characters
from .ideals import (
    Ideal,
    PrimeIdeal,
    conj_prime,
    coprime_core_split,
    element_args,
    orbit_points,
    p0_pprime_split,
    primes_above,
    unit_ideal,
)
from .quadratic_field import DomainError, FieldContext, Split, splitting_type
from .special import bump_phi, bump_phi_hat

DEFAULT_EPSILON = 0.05
BRUTE_BUDGET = 10**6
PRODUCT_BUDGET = 10**6


class ResourceError(RuntimeError):
    """A brute-force enumeration would exceed its budget."""


# ---------------------------------------------------------------------------
# resonator coefficients
# ---------------------------------------------------------------------------

def resonator_length_param(N: float) -> float:
    """L = sqrt(log N log log N / 2), or 0 when log log N <= 0."""
    if N <= math.e:
        return 0.0
    return math.sqrt(0.5 * math.log(N) * math.log(math.log(N)))


def rankin_alpha(L: float) -> float:
    """alpha = 1/log^3 L; NaN when L <= 1, where the formula has no meaning."""
    if L <= 1.0:
        return float("nan")
    return 1.0 / math.log(L) ** 3


@dataclass(frozen=True)
class ResonatorSpec:
    """Resonator data.  ``pairs`` holds one prime per conjugate pair."""

    ctx: FieldContext
    N: float
    L_param: float
    alpha: float
    pairs: Tuple[PrimeIdeal, ...]
    r_values: Tuple[float, ...]
    kind: str = "full"

    @property
    def support(self) -> Tuple[PrimeIdeal, ...]:
        return self.pairs

    @property
    def support_empty(self) -> bool:
        return not self.pairs

    def r_map(self) -> Dict[PrimeIdeal, float]:
        out = {}
        for P, r in zip(self.pairs, self.r_values):
            out[P] = r
            out[conj_prime(self.ctx, P)] = r
        return out

    def r(self, a: Ideal) -> float:
        """r(a), multiplicative and zero off squarefree support products."""
        rm = self.r_map()
        val = 1.0
        for P, e in a.factors:
            if e > 1 or P not in rm:
                return 0.0
            val *= rm[P]
        return val

    def support_primes(self) -> List[Tuple[PrimeIdeal, float]]:
        """Both members of every pair, by (norm, prime)."""
        return sorted(self.r_map().items())

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "N": repr(self.N),
            "L_param": repr(self.L_param),
            "alpha": repr(self.alpha),
            "support": [
                {"p": P.p, "which": P.which, "norm": P.norm, "r": repr(r)}
                for P, r in zip(self.pairs, self.r_values)
            ],
        }


def _split_pairs(ctx: FieldContext, lo: float, hi: float) -> List[PrimeIdeal]:
    out = []
    for p in primerange(max(2, math.ceil(lo)), math.floor(hi) + 1):
        if splitting_type(p, ctx) is Split.SPLIT:
            out.append(primes_above(ctx, p)[0])
    return out


def _coeff(L: float, norm: int) -> float:
    return L / (math.sqrt(norm) * math.log(norm))


def resonator_coeffs(N: float, ctx: FieldContext) -> ResonatorSpec:
    """The coefficients r(p) = L/(sqrt(Np) log Np) on split p with L^2 <= Np <= exp(log^2 L)."""
    if not (math.isfinite(N) and N >= math.exp(10)):
        raise DomainError(
            "resonator_coeffs needs N >= e^10: below that log log N is too small for the "
            "support window L^2 <= Np <= exp(log^2 L) to be meaningful"
        )
    L = resonator_length_param(N)
    pairs = _split_pairs(ctx, L * L, math.exp(math.log(L) ** 2))
    return ResonatorSpec(ctx, N, L, rankin_alpha(L), tuple(pairs),
                         tuple(_coeff(L, P.norm) for P in pairs), "full")


def desk_resonator(N: float, ctx: FieldContext) -> ResonatorSpec:
    """Small-N resonator: the same r(p) on split p with L^2 <= Np and Np^2 <= N.

    The full window ``L^2 <= Np <= exp(log^2 L)`` is empty unless N is
    astronomically large.  Here every conjugate pair ``p conj(p)`` of the
    support fits under the length N.
    """
    if not (math.isfinite(N) and N >= 1):
        raise DomainError("N must be finite and at least 1")
    L = resonator_length_param(N)
    pairs = _split_pairs(ctx, max(L * L, 2), math.sqrt(N)) if L > 0 else []
    return ResonatorSpec(ctx, N, L, rankin_alpha(L), tuple(pairs),
                         tuple(_coeff(L, P.norm) for P in pairs), "desk")


def custom_resonator(ctx: FieldContext, N: float, pairs: Sequence[Tuple[PrimeIdeal, float]],
                     alpha: Optional[float] = None) -> ResonatorSpec:
    """A resonator with prescribed r on the given pair representatives."""
    seen = set()
    for P, r in pairs:
        if P.kind is not Split.SPLIT:
            raise DomainError(f"{P.tag()} is not a split prime")
        key = P.p
        if key in seen:
            raise DomainError("one representative per conjugate pair")
        seen.add(key)
        if not r > 0:
            raise DomainError("r must be positive on the support")
    L = resonator_length_param(N)
    a = rankin_alpha(L) if alpha is None else alpha
    ps = tuple(P for P, _ in pairs)
    return ResonatorSpec(ctx, N, L, a, ps, tuple(float(r) for _, r in pairs), "custom")


# ---------------------------------------------------------------------------
# resonator evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SupportProduct:
    ideal: Ideal
    primes: Tuple[int, ...]  # indices into spec.support_primes()
    r: float


def support_products(spec: ResonatorSpec, max_norm: Optional[float] = None) -> List[SupportProduct]:
    """Squarefree products of support primes with norm <= max_norm (default N)."""
    bound = spec.N if max_norm is None else max_norm
    primes = spec.support_primes()
    out: List[SupportProduct] = []

    def rec(i: int, idx: Tuple[int, ...], norm: int, r: float) -> None:
        if len(out) >= PRODUCT_BUDGET:
            raise ResourceError("too many resonator support products")
        f = {primes[j][0]: 1 for j in idx}
        out.append(SupportProduct(Ideal(spec.ctx, f), idx, r))
        for j in range(i, len(primes)):
            P, rp = primes[j]
            if norm * P.norm > bound:
                break
            rec(j + 1, idx + (j,), norm * P.norm, r * rp)

    rec(0, (), 1, 1.0)
    return out


def _resonator_from_prime_values(products: Sequence[SupportProduct], z: Sequence[complex]) -> complex:
    total = []
    for sp in products:
        v = sp.r
        for j in sp.primes:
            v *= z[j]
        total.append(v)
    return complex(math.fsum(t.real for t in total), math.fsum(t.imag for t in total))


def resonator_eval(xi: AngularCharacter, spec: ResonatorSpec, ctx: Optional[FieldContext] = None,
                   products: Optional[Sequence[SupportProduct]] = None) -> complex:
    """R(xi) = sum_{Na <= N} xi(a) r(a)."""
    products = support_products(spec) if products is None else products
    z = [xi.at_prime(P) for P, _ in spec.support_primes()]
    return _resonator_from_prime_values(products, z)


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------

def family_ells(ctx: FieldContext, X: float, closed: bool = True) -> List[int]:
    """Multiples of omega_K in [X, 2X] (or the open interval when ``closed`` is false)."""
    w = ctx.omega_K
    lo = math.ceil(X / w) * w
    out = [e for e in range(lo, int(math.floor(2 * X)) + 1, w)]
    if not closed:
        out = [e for e in out if X < e < 2 * X]
    return out


def _check_length(spec: ResonatorSpec, X: float, power: float, what: str) -> None:
    if X < 100:
        raise DomainError("X must be at least 100")
    if spec.N > X**power * (1 + 1e-12):
        raise DomainError(
            f"resonator length N = {spec.N:.6g} violates the length constraint "
            f"N <= X^{power:.4g} = {X**power:.6g} required for the {what}"
        )


def _sum(vals: Iterable[float]) -> float:
    return math.fsum(vals)


def denominator_model(X: float, spec: ResonatorSpec) -> float:
    """h_K omega_K^-1 X Phi^(0) prod'(1 + 4r^2 + r^4)."""
    ctx = spec.ctx
    prod = math.exp(_sum(math.log1p(4 * r * r + r**4) for r in spec.r_values))
    return ctx.h_K / ctx.omega_K * X * bump_phi_hat(0).real * prod


def _abs2_R_by_ell(spec: ResonatorSpec, ells: Sequence[int], products: Sequence[SupportProduct]) -> Dict[Tuple[int, int], float]:
    out = {}
    for ell in ells:
        for xi in make_characters(spec.ctx, ell):
            out[(ell, xi.class_char_index)] = abs(resonator_eval(xi, spec, products=products)) ** 2
    return out


def moment_denominator(X: float, spec: ResonatorSpec, ctx: Optional[FieldContext] = None,
                       epsilon: float = DEFAULT_EPSILON) -> Tuple[float, float]:
    """(direct, diagonal_model) for sum_ell Phi(ell/X) sum_xi |R(xi)|^2."""
    _check_length(spec, X, 1 - epsilon, "denominator")
    ells = family_ells(spec.ctx, X, closed=False)
    products = support_products(spec)
    R2 = _abs2_R_by_ell(spec, ells, products)
    direct = _sum(bump_phi(ell / X) * v for (ell, _), v in sorted(R2.items()))
    return direct, denominator_model(X, spec)


@dataclass(frozen=True)
class NumeratorParts:
    direct: float
    diagonal_lower: float
    diagonal_exact: float
    offdiag_mass: float


def _diagonal_weights(spec: ResonatorSpec, products: Sequence[SupportProduct],
                      flagged_only: bool = False) -> Dict[int, float]:
    """sum of r(a) r(b) grouped by N(a'' b''), over support products a, b."""
    split = [p0_pprime_split(sp.ideal)[1] for sp in products]
    out: Dict[int, List[float]] = {}
    for i, a in enumerate(products):
        for j, b in enumerate(products):
            _, a2, b2, flag = coprime_core_split(split[i], split[j])
            if flagged_only and not flag:
                continue
            out.setdefault(a2.norm * b2.norm, []).append(a.r * b.r)
    return {k: _sum(v) for k, v in sorted(out.items())}


def _diag_exact_ell(ctx: FieldContext, ell: int, weights: Dict[int, float], M: float) -> float:
    a = abs(ell) / 2.0 + 0.5
    c = 2.0 * math.pi / math.sqrt(abs(ctx.D))
    terms = []
    for n2, w in weights.items():
        nmax = int(math.isqrt(int(M // n2)))
        if nmax < 1:
            continue
        n = np.arange(1, nmax + 1, dtype=float)
        # sum_n (n^2 N'')^(-1/2) W(n^2 N'', ell)
        s = np.sum(gammaincc(a, c * n * n * n2) / n) / math.sqrt(n2)
        terms.append(w * s)
    return _sum(terms)


def moment_numerator(X: float, spec: ResonatorSpec, ctx: Optional[FieldContext] = None,
                     cfg: AfeConfig = DEFAULT_AFE, epsilon: float = DEFAULT_EPSILON,
                     values: Optional[Sequence[AfeResult]] = None, threads: int = 1,
                     want_lower: bool = True, conjugate_family: bool = False) -> NumeratorParts:
    """Direct numerator, the extracted diagonal lower bound, and the off-diagonal mass.

    With ``conjugate_family`` the sum runs over the families of ``-ell``
    instead; the result must not change.
    """
    ctx = spec.ctx
    _check_length(spec, X, 1 - epsilon, "numerator")
    if want_lower:
        _check_length(spec, X, 0.25 - epsilon, "diagonal lower bound")
    ells = family_ells(ctx, X, closed=False)
    if conjugate_family:
        ells = [-e for e in reversed(ells)]
    if values is None:
        values = evaluate_family(ctx, ells, cfg, threads)
    Lval = {(v.ell, v.class_char_index): v.value for v in values}
    products = support_products(spec)
    R2 = _abs2_R_by_ell(spec, ells, products)
    direct = _sum(bump_phi(abs(ell) / X) * Lval[(ell, j)] * v for (ell, j), v in sorted(R2.items()))

    weights = _diagonal_weights(spec, products)
    exact = 2.0 * ctx.h_K * _sum(
        bump_phi(abs(ell) / X) * _diag_exact_ell(ctx, ell, weights, truncation(ctx, ell, cfg)[0]) for ell in ells
    )

    lower = float("nan")
    if want_lower:
        kmax = X / (2.0 * ctx.c_K)
        terms = []
        for n2, w in weights.items():
            nmax = math.isqrt(int(kmax // n2))
            if nmax >= 1:
                terms.append(w / math.sqrt(n2) * _sum(1.0 / n for n in range(1, nmax + 1)))
        lower = 2.0 * ctx.h_K / ctx.omega_K * bump_phi_hat(0).real * X * _sum(terms)
    return NumeratorParts(direct, lower, exact, abs(direct - exact))


# ---------------------------------------------------------------------------
# Rankin's trick
# ---------------------------------------------------------------------------

def _xi_log_factor(r: float, n: float, a1: float, a2: float) -> float:
    q = n**-0.5
    if a1 == 0 and a2 == 0:
        return math.log1p(4 * r * q + 4 * r * r + 4 * r**3 * q + r**4)
    if a1 == a2:
        pa = n**a1
        return math.log1p(4 * r * q * pa + 4 * r * r * pa**2 + 4 * r**3 * q * pa**3 + r**4 * pa**4)
    if a2 == 0:
        pa = n**a1
        return math.log1p(
            2 * r * q * (1 + pa)
            + r * r * (1 + 2 * pa + pa * pa)
            + 2 * r**3 * q * (pa + pa * pa)
            + r**4 * pa * pa
        )
    raise DomainError("supported (alpha1, alpha2): (0, 0), (a, 0), (a, a)")


def log_euler_xi(alpha1: float, alpha2: float, spec: ResonatorSpec) -> float:
    if alpha1 < 0 or alpha2 < 0:
        raise DomainError("alphas must be nonnegative")
    if not (alpha2 == 0 or alpha1 == alpha2):
        raise DomainError("supported (alpha1, alpha2): (0, 0), (a, 0), (a, a)")
    total = [_xi_log_factor(r, P.norm, alpha1, alpha2) for P, r in zip(spec.pairs, spec.r_values)]
    return _sum(total) - (alpha1 + alpha2) * math.log(spec.N)


def euler_xi(alpha1: float, alpha2: float, spec: ResonatorSpec) -> float:
    """Xi(alpha1, alpha2) from its Euler product."""
    return math.exp(log_euler_xi(alpha1, alpha2, spec))


def brute_xi(alpha1: float, alpha2: float, spec: ResonatorSpec, budget: int = BRUTE_BUDGET) -> float:
    """Xi(alpha1, alpha2) by summing over all pairs (a, b) of support products."""
    if alpha1 < 0 or alpha2 < 0:
        raise DomainError("alphas must be nonnegative")
    if not (alpha2 == 0 or alpha1 == alpha2):
        raise DomainError("supported (alpha1, alpha2): (0, 0), (a, 0), (a, a)")
    ctx = spec.ctx
    n_a = 4 ** len(spec.pairs)
    if n_a * n_a > budget:
        raise ResourceError(f"{n_a * n_a} pairs exceed the brute-force budget of {budget}")
    local = []
    for P, r in zip(spec.pairs, spec.r_values):
        Q = conj_prime(ctx, P)
        local.append([({}, 1.0), ({P: 1}, r), ({Q: 1}, r), ({P: 1, Q: 1}, r * r)])
    ideals = []
    for combo in itertools.product(*local) if local else [()]:
        f: Dict[PrimeIdeal, int] = {}
        r = 1.0
        for g, rv in combo:
            f.update(g)
            r *= rv
        a = Ideal(ctx, f)
        ideals.append((a, p0_pprime_split(a)[1], r))
    core: Dict[Tuple[Ideal, Ideal], Optional[float]] = {}
    terms = []
    for a, ap, ra in ideals:
        wa = ra * a.norm**alpha1
        for b, bp, rb in ideals:
            key = (ap, bp)
            if key not in core:
                _, a2, b2, flag = coprime_core_split(ap, bp)
                core[key] = 1.0 / math.sqrt(a2.norm * b2.norm) if flag else None
            q = core[key]
            if q is not None:
                terms.append(wa * rb * b.norm**alpha2 * q)
    return _sum(terms) * spec.N ** (-(alpha1 + alpha2))


@dataclass(frozen=True)
class RankinDiagnostics:
    alpha: float
    G_alpha: float
    H_alpha: float
    E_alpha: float
    xi_00: float
    xi_a0: float
    xi_aa: float
    log_xi_00: float
    log_xi_a0: float
    log_xi_aa: float

    @property
    def ratio_a0(self) -> float:
        return math.exp(self.log_xi_a0 - self.log_xi_00)

    @property
    def ratio_aa(self) -> float:
        return math.exp(self.log_xi_aa - self.log_xi_00)

    @property
    def error_ratio(self) -> float:
        return self.ratio_a0 + self.ratio_aa


def rankin_diagnostics(spec: ResonatorSpec) -> RankinDiagnostics:
    a = spec.alpha
    if not (a > 0 and math.isfinite(a)):
        raise DomainError("Rankin diagnostics need a finite alpha > 0 (L_param > 1)")
    logN = math.log(spec.N)
    G = _sum(a * r * math.log(P.norm) / math.sqrt(P.norm) + (a * r * math.log(P.norm)) ** 2
             for P, r in zip(spec.pairs, spec.r_values))
    H = -a * logN + a * _sum(4 * r * r * math.log(P.norm) for P, r in zip(spec.pairs, spec.r_values))
    E = logN / math.log(logN) ** 3
    l00, la0, laa = log_euler_xi(0, 0, spec), log_euler_xi(a, 0, spec), log_euler_xi(a, a, spec)
    ex = lambda v: math.exp(v) if v < 700 else float("inf")  # noqa: E731
    return RankinDiagnostics(a, G, H, E, ex(l00), ex(la0), ex(laa), l00, la0, laa)


def predicted_gain(spec: ResonatorSpec) -> float:
    """sum' 4 r(p) / sqrt(Np)."""
    return _sum(4 * r / math.sqrt(P.norm) for P, r in zip(spec.pairs, spec.r_values))


# ---------------------------------------------------------------------------
# off-diagonal lattice counts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OffDiagonalProbe:
    a: str
    b: str
    nu: int
    m: int
    window_Dnu: Tuple[float, float]
    window_Im: Tuple[float, float]
    count: int
    bound: float
    eta: float

    @property
    def ratio(self) -> float:
        return self.count / self.bound


def offdiagonal_probe(X: float, spec: ResonatorSpec, ctx: Optional[FieldContext] = None,
                      nu_max: int = 4, m_max: int = 4,
                      pairs: Optional[Sequence[Tuple[Ideal, Ideal]]] = None,
                      sample: int = 4, seed: int = 0,
                      epsilon: float = DEFAULT_EPSILON) -> List[OffDiagonalProbe]:
    """Count k with Nk in D_nu(X), k a conj(b) principal but not rational, |arg| in I_m(X).

    ``D_nu(X) = (2^-nu X/c_K, 2^(1-nu) X/c_K]`` and ``I_m(X) = [m, m+1) X^(-1/2)``.
    The pairs default to ``((1), (1))`` plus a seeded sample of support products.
    """
    ctx = spec.ctx
    if X < 100:
        raise DomainError("X must be at least 100")
    if pairs is None:
        one = unit_ideal(ctx)
        pairs = [(one, one)]
        prods = [sp.ideal for sp in support_products(spec)]
        if len(prods) > 1:
            rng = np.random.default_rng(seed)
            for _ in range(sample):
                i, j = rng.integers(0, len(prods), size=2)
                pairs.append((prods[int(i)], prods[int(j)]))
    A = X / ctx.c_K
    sx = math.sqrt(X)
    out = []
    for a, b in pairs:
        n = a * b.conj()
        norms, u, v = orbit_points(ctx, n.hnf, int(math.floor(2 * A * n.norm)))
        keep = v != 0  # rational generators are the diagonal
        kn = norms[keep] / n.norm
        args = np.abs(element_args(ctx, u[keep], v[keep]))
        for nu in range(nu_max + 1):
            lo, hi = 2.0**-nu * A, 2.0 ** (1 - nu) * A
            in_d = (kn > lo) & (kn <= hi)
            for m in range(m_max + 1):
                in_i = (args >= m / sx) & (args < (m + 1) / sx)
                cnt = int(np.count_nonzero(in_d & in_i))
                out.append(OffDiagonalProbe(
                    a.label(), b.label(), nu, m, (lo, hi), (m / sx, (m + 1) / sx), cnt,
                    2.0 ** (-nu / 2) * sx + 1.0, 1.0 + epsilon,
                ))
    return out


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MomentReport:
    X: float
    numerator_direct: float
    numerator_diagonal: float
    numerator_diagonal_exact: float
    denominator_direct: float
    denominator_diagonal: float
    offdiag_mass: float
    ratio_lower_bound: float
    predicted_gain: float
    plain_mean: float


@dataclass(frozen=True)
class SearchResult:
    ell_star: int
    class_index_star: int
    log_abs_L_star: float
    weighted_avg_bound: float
    predicted_gain: float
    report: MomentReport
    values: Tuple[AfeResult, ...] = field(repr=False)

    def to_json(self) -> dict:
        return {
            "ell_star": self.ell_star,
            "class_index_star": self.class_index_star,
            "log_abs_L_star": repr(self.log_abs_L_star),
            "weighted_avg_bound": repr(self.weighted_avg_bound),
            "predicted_gain": repr(self.predicted_gain),
            "moments": {k: repr(v) for k, v in asdict(self.report).items()},
        }


def extreme_value_search(X: float, spec: ResonatorSpec, ctx: Optional[FieldContext] = None,
                         cfg: AfeConfig = DEFAULT_AFE, epsilon: float = DEFAULT_EPSILON,
                         threads: int = 1) -> SearchResult:
    """Largest log|L(1/2, xi)| over omega_K | ell in [X, 2X] and all class characters."""
    ctx = spec.ctx
    _check_length(spec, X, 0.25 - epsilon, "extreme-value search")
    values = evaluate_family(ctx, family_ells(ctx, X), cfg, threads)
    best = max(values, key=lambda v: (v.log_abs, -v.ell, -v.class_char_index))
    interior = [v for v in values if X < v.ell < 2 * X]
    num = moment_numerator(X, spec, ctx, cfg, epsilon, values=interior)
    den_direct, den_model = moment_denominator(X, spec, ctx, epsilon)
    weights = [(bump_phi(v.ell / X), v.value) for v in interior]
    plain = _sum(w * L for w, L in weights) / _sum(w for w, _ in weights)
    ratio = abs(num.direct) / den_direct
    gain = predicted_gain(spec)
    report = MomentReport(X, num.direct, num.diagonal_lower, num.diagonal_exact, den_direct, den_model,
                          num.offdiag_mass, ratio, gain, plain)
    return SearchResult(best.ell, best.class_char_index, best.log_abs, ratio, gain, report, tuple(values))


__all__ = [
    "MomentReport",
    "NumeratorParts",
    "OffDiagonalProbe",
    "RankinDiagnostics",
    "ResonatorSpec",
    "ResourceError",
    "SearchResult",
    "brute_xi",
    "custom_resonator",
    "denominator_model",
    "desk_resonator",
    "euler_xi",
    "extreme_value_search",
    "family_ells",
    "log_euler_xi",
    "moment_denominator",
    "moment_numerator",
    "offdiagonal_probe",
    "predicted_gain",
    "rankin_alpha",
    "rankin_diagnostics",
    "resonator_coeffs",
    "resonator_eval",
    "resonator_length_param",
    "support_products",
]
