"""Nonzero integral ideals of an imaginary quadratic field.

An :class:`Ideal` is stored by its prime factorization.  The Z-lattice of an
ideal, in Hermite normal form ``[a, b + c*w]`` (see
:mod:`hecke_resonance.quadratic_field` for the meaning of ``w``), is built
lazily from the factorization and is only needed for generator searches and
lattice sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np
from sympy import factorint, primerange

from .quadratic_field import DomainError, FieldContext, Split, reduce_form, splitting_type

Element = Tuple[int, int]
HNF = Tuple[int, int, int]


# ---------------------------------------------------------------------------
# Z-lattices in HNF
# ---------------------------------------------------------------------------

def hnf(vectors: Iterable[Element]) -> HNF:
    """HNF ``(a, b, c)`` of the rank-2 lattice spanned by integer vectors.

    The lattice is ``{x*(a, 0) + y*(b, c)}`` with ``a, c > 0`` and ``0 <= b < a``.
    """
    vecs = [tuple(v) for v in vectors]
    g, lift = 0, (0, 0)
    for u, v in vecs:
        if v == 0:
            continue
        if g == 0:
            g, lift = abs(v), ((u, v) if v > 0 else (-u, -v))
            continue
        d, x, y = _xgcd(lift[1], v)
        lift = (x * lift[0] + y * u, d)
        g = d
    if g == 0:
        raise DomainError("vectors do not span a rank-2 lattice")
    a = 0
    for u, v in vecs:
        a = math.gcd(a, u - (v // g) * lift[0])
    # the lift itself is in the lattice, so no further kernel generators are needed
    if a == 0:
        raise DomainError("vectors do not span a rank-2 lattice")
    return a, lift[0] % a, g


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf_contains(h: HNF, x: Element) -> bool:
    a, b, c = h
    u, v = x
    if v % c:
        return False
    return (u - (v // c) * b) % a == 0


def hnf_mul(ctx: FieldContext, h1: HNF, h2: HNF) -> HNF:
    g1 = [(h1[0], 0), (h1[1], h1[2])]
    g2 = [(h2[0], 0), (h2[1], h2[2])]
    return hnf(ctx.mul(x, y) for x in g1 for y in g2)


def hnf_conj(ctx: FieldContext, h: HNF) -> HNF:
    a, b, c = h
    return hnf([(a, 0), ctx.conj((b, c))])


def hnf_norm(h: HNF) -> int:
    return h[0] * h[2]


def hnf_form(ctx: FieldContext, h: HNF) -> Tuple[int, int, int]:
    """Reduced binary quadratic form attached to the ideal class of ``h``."""
    a, b, c = h
    A, Bp = a // c, b // c
    B = -2 * Bp - 1 if ctx.w_is_half else -2 * Bp
    num = B * B - ctx.D
    if num % (4 * A):
        raise DomainError(f"{h} is not an ideal")
    return reduce_form((A, B, num // (4 * A)))


def reduced_basis(ctx: FieldContext, h: HNF) -> Tuple[Element, Element]:
    """Lagrange-reduced Z-basis of the ideal lattice with respect to the norm form."""
    e1: Element = (h[0], 0)
    e2: Element = (h[1], h[2])

    def dot(x: Element, y: Element) -> int:
        # bilinear form attached to the norm: N(x+y) - N(x) - N(y)
        return ctx.norm((x[0] + y[0], x[1] + y[1])) - ctx.norm(x) - ctx.norm(y)

    n1, n2 = ctx.norm(e1), ctx.norm(e2)
    if n2 < n1:
        e1, e2, n1, n2 = e2, e1, n2, n1
    while True:
        q = round(dot(e1, e2) / (2 * n1))
        e2 = (e2[0] - q * e1[0], e2[1] - q * e1[1])
        n2 = ctx.norm(e2)
        if n2 >= n1:
            return e1, e2
        e1, e2, n1, n2 = e2, e1, n2, n1


# ---------------------------------------------------------------------------
# prime ideals and ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class PrimeIdeal:
    """A prime ideal above the rational prime ``p``.

    ``which`` is 0 or 1 for the two primes above a split ``p`` and 0 otherwise.
    """

    p: int
    which: int
    norm: int
    kind: Split
    hnf: HNF

    def tag(self) -> str:
        return f"({self.p},{self.which})"


@lru_cache(maxsize=None)
def primes_above(ctx: FieldContext, p: int) -> Tuple[PrimeIdeal, ...]:
    """Prime ideals above ``p``, in the documented stable order."""
    kind = splitting_type(p, ctx)
    if kind is Split.INERT:
        return (PrimeIdeal(p, 0, p * p, kind, (p, 0, p)),)
    roots = ctx.minpoly_roots(p)
    hs = [(p, (-r) % p, 1) for r in roots]
    if kind is Split.RAMIFIED:
        return (PrimeIdeal(p, 0, p, kind, hs[0]),)
    # order the conjugate pair by the sign of Im of the canonical generator
    # when principal; otherwise by the root order
    keys = []
    for h in hs:
        gen = _generator_coords(ctx, h)
        keys.append(0 if gen is None else (0 if gen[1] > 0 else 1))
    if keys[0] > keys[1]:
        hs.reverse()
    return tuple(PrimeIdeal(p, i, p, kind, h) for i, h in enumerate(hs))


def prime_ideal(ctx: FieldContext, p: int, which: int = 0) -> PrimeIdeal:
    return primes_above(ctx, p)[which]


def conj_prime(ctx: FieldContext, P: PrimeIdeal) -> PrimeIdeal:
    if P.kind is Split.SPLIT:
        return primes_above(ctx, P.p)[1 - P.which]
    return P


@lru_cache(maxsize=None)
def prime_class(ctx: FieldContext, P: PrimeIdeal) -> int:
    return ctx.class_index_of_form(hnf_form(ctx, P.hnf))


class Ideal:
    """A nonzero integral ideal, stored by prime factorization.  Immutable."""

    __slots__ = ("ctx", "factors", "norm", "__dict__")

    def __init__(self, ctx: FieldContext, factors: Optional[Dict[PrimeIdeal, int]] = None):
        items = tuple(sorted((P, e) for P, e in (factors or {}).items() if e))
        if any(e < 0 for _, e in items):
            raise DomainError("integral ideals need nonnegative exponents")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "factors", items)
        n = 1
        for P, e in items:
            n *= P.norm ** e
        object.__setattr__(self, "norm", n)

    def __setattr__(self, name, value):
        if name in ("ctx", "factors", "norm"):
            raise AttributeError("Ideal is immutable")
        object.__setattr__(self, name, value)

    # -- basics ------------------------------------------------------------
    @property
    def factorization(self) -> Dict[PrimeIdeal, int]:
        return dict(self.factors)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ideal) and self.ctx.d == other.ctx.d and self.factors == other.factors

    def __hash__(self) -> int:
        return hash((self.ctx.d, self.factors))

    def __mul__(self, other: "Ideal") -> "Ideal":
        f = self.factorization
        for P, e in other.factors:
            f[P] = f.get(P, 0) + e
        return Ideal(self.ctx, f)

    def __pow__(self, k: int) -> "Ideal":
        return Ideal(self.ctx, {P: e * k for P, e in self.factors})

    def conj(self) -> "Ideal":
        return Ideal(self.ctx, {conj_prime(self.ctx, P): e for P, e in self.factors})

    def divides(self, other: "Ideal") -> bool:
        f = other.factorization
        return all(f.get(P, 0) >= e for P, e in self.factors)

    def quotient(self, other: "Ideal") -> "Ideal":
        """``self / other``; raises when ``other`` does not divide ``self``."""
        f = self.factorization
        for P, e in other.factors:
            f[P] = f.get(P, 0) - e
        return Ideal(self.ctx, f)

    def gcd(self, other: "Ideal") -> "Ideal":
        f = other.factorization
        return Ideal(self.ctx, {P: min(e, f.get(P, 0)) for P, e in self.factors})

    def is_unit(self) -> bool:
        return not self.factors

    def __repr__(self) -> str:
        return f"Ideal({self.ctx.d}: {self.label()})"

    def label(self) -> str:
        """Serialized form ``"(p,i)^e * ..."``, ``"(1)"`` for the unit ideal."""
        if not self.factors:
            return "(1)"
        return " * ".join(P.tag() + (f"^{e}" if e > 1 else "") for P, e in self.factors)

    # -- lattice data ------------------------------------------------------
    @cached_property
    def hnf(self) -> HNF:
        h: HNF = (1, 0, 1)
        for P, e in self.factors:
            for _ in range(e):
                h = hnf_mul(self.ctx, h, P.hnf)
        return h

    @cached_property
    def class_index(self) -> int:
        ctx = self.ctx
        k = 0
        for P, e in self.factors:
            k = ctx.compose(k, ctx.class_power(prime_class(ctx, P), e))
        return k

    def class_index_from_lattice(self) -> int:
        return self.ctx.class_index_of_form(hnf_form(self.ctx, self.hnf))

    @property
    def z_basis(self) -> Tuple[complex, complex]:
        a, b, c = self.hnf
        return complex(a), self.ctx.embed((b, c))

    def is_principal(self) -> bool:
        return self.class_index == 0


def unit_ideal(ctx: FieldContext) -> Ideal:
    return Ideal(ctx)


def ideal_of_prime(ctx: FieldContext, P: PrimeIdeal, e: int = 1) -> Ideal:
    return Ideal(ctx, {P: e})


def principal_ideal(ctx: FieldContext, x: Element) -> Ideal:
    """The ideal (x) for a nonzero element x = u + v*w."""
    if x == (0, 0):
        raise DomainError("zero ideal")
    return ideal_from_hnf(ctx, hnf([x, ctx.mul(x, (0, 1))]))


def rational_ideal(ctx: FieldContext, n: int) -> Ideal:
    if n == 0:
        raise DomainError("zero ideal")
    return principal_ideal(ctx, (abs(n), 0))


def ideal_from_generators(ctx: FieldContext, gens: Iterable[Element]) -> Ideal:
    """Ideal generated over O_K by the given elements."""
    vecs = []
    for g in gens:
        vecs += [tuple(g), ctx.mul(tuple(g), (0, 1))]
    if all(v == (0, 0) for v in vecs):
        raise DomainError("zero ideal")
    return ideal_from_hnf(ctx, hnf(vecs))


def ideal_from_hnf(ctx: FieldContext, h: HNF) -> Ideal:
    """Factor an ideal given by its HNF."""
    n = hnf_norm(h)
    factors: Dict[PrimeIdeal, int] = {}
    for p in factorint(n):
        for P in primes_above(ctx, p):
            e, power = 0, (1, 0, 1)
            while True:
                nxt = hnf_mul(ctx, power, P.hnf)
                if hnf_norm(nxt) > n or not all(hnf_contains(nxt, v) for v in ((h[0], 0), (h[1], h[2]))):
                    break
                power, e = nxt, e + 1
            if e:
                factors[P] = e
    I = Ideal(ctx, factors)
    if I.norm != n or I.hnf != h:
        raise DomainError(f"{h} is not an ideal of O_K")
    return I


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrincipalGenerator:
    """Canonical generator: the unique unit multiple with arg in [-pi/omega_K, pi/omega_K)."""

    coords: Element
    gamma: complex

    @property
    def arg_gamma(self) -> float:
        return math.atan2(self.gamma.imag, self.gamma.real)


def _elements_of_norm(ctx: FieldContext, h: HNF, n: int) -> List[Element]:
    e1, e2 = reduced_basis(ctx, h)
    A = ctx.norm(e1)
    C = ctx.norm(e2)
    B = ctx.norm((e1[0] + e2[0], e1[1] + e2[1])) - A - C
    disc = 4 * A * C - B * B
    out = []
    m2max = math.isqrt(4 * A * n // disc) + 1
    for m2 in range(-m2max, m2max + 1):
        # A m1^2 + B m2 m1 + C m2^2 - n = 0
        q = B * B * m2 * m2 - 4 * A * (C * m2 * m2 - n)
        if q < 0:
            continue
        r = math.isqrt(q)
        if r * r != q:
            continue
        for num in {-B * m2 + r, -B * m2 - r}:
            if num % (2 * A) == 0:
                m1 = num // (2 * A)
                out.append((m1 * e1[0] + m2 * e2[0], m1 * e1[1] + m2 * e2[1]))
    return out


@lru_cache(maxsize=200_000)
def _generator_coords(ctx: FieldContext, h: HNF) -> Optional[Element]:
    n = hnf_norm(h)
    for x in _elements_of_norm(ctx, h, n):
        if ctx.in_unit_window(x):
            return x
    return None


def principal_generator(a: Ideal) -> Optional[PrincipalGenerator]:
    """Canonical generator of ``a``, or ``None`` when ``a`` is not principal."""
    if a.class_index != 0:
        return None
    x = _generator_coords(a.ctx, a.hnf)
    if x is None:  # pragma: no cover - would contradict the class computation
        raise RuntimeError(f"principal ideal {a} without generator")
    return PrincipalGenerator(x, a.ctx.embed(x))


def canonical_element(ctx: FieldContext, x: Element) -> Element:
    """The unit multiple of ``x`` lying in the canonical argument window."""
    for u in ctx.units():
        y = ctx.mul(x, u)
        if ctx.in_unit_window(y):
            return y
    raise RuntimeError("no unit multiple in window")  # pragma: no cover


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def prime_ideals_up_to(ctx: FieldContext, B: float) -> List[PrimeIdeal]:
    out = []
    for p in primerange(2, int(B) + 1):
        for P in primes_above(ctx, p):
            if P.norm <= B:
                out.append(P)
    out.sort()
    return out


def enumerate_ideals(ctx: FieldContext, B: float) -> List[Ideal]:
    """All ideals of norm <= B, sorted by (norm, label)."""
    if not math.isfinite(B):
        raise DomainError("B must be finite")
    if B < 1:
        return []
    primes = prime_ideals_up_to(ctx, B)
    out: List[Ideal] = []

    def rec(start: int, f: Dict[PrimeIdeal, int], n: int) -> None:
        out.append(Ideal(ctx, f))
        for i in range(start, len(primes)):
            P = primes[i]
            if n * P.norm > B:
                break
            e, m = 0, n
            while m * P.norm <= B:
                m *= P.norm
                e += 1
                g = dict(f)
                g[P] = e
                rec(i + 1, g, m)

    primes.sort(key=lambda P: (P.norm, P.p, P.which))
    rec(0, {}, 1)
    out.sort(key=lambda I: (I.norm, I.factors))
    return out


# ---------------------------------------------------------------------------
# P_0 / P' decompositions
# ---------------------------------------------------------------------------

def p0_pprime_split(a: Ideal) -> Tuple[Ideal, Ideal]:
    """Write ``a = a0 * a'`` with ``a0`` rationally generated and ``a'`` free of such factors."""
    ctx = a.ctx
    f = a.factorization
    a0: Dict[PrimeIdeal, int] = {}
    ap: Dict[PrimeIdeal, int] = {}
    for P, e in f.items():
        if P.kind is Split.INERT:
            a0[P] = e
        elif P.kind is Split.RAMIFIED:
            a0[P] = 2 * (e // 2)
            ap[P] = e % 2
        else:
            e_bar = f.get(conj_prime(ctx, P), 0)
            m = min(e, e_bar)
            a0[P] = m
            ap[P] = e - m
    return Ideal(ctx, a0), Ideal(ctx, ap)


def in_pprime(a: Ideal) -> bool:
    return p0_pprime_split(a)[0].is_unit()


def coprime_core_split(ap: Ideal, bp: Ideal) -> Tuple[Ideal, Ideal, Ideal, bool]:
    """``(c', a'', b'', flag)`` with ``a' = c' a''``, ``b' = c' b''``, ``gcd(a'', b'') = 1``.

    ``flag`` reports whether ``(a'' conj(a''), b'' conj(b'')) = (1)``.
    """
    if not (in_pprime(ap) and in_pprime(bp)):
        raise DomainError("inputs must lie in P'")
    c = ap.gcd(bp)
    a2 = ap.quotient(c)
    b2 = bp.quotient(c)
    flag = (a2 * a2.conj()).gcd(b2 * b2.conj()).is_unit()
    return c, a2, b2, flag


class DiagonalClass:
    IN_P0 = "InP0"
    IN_P_NOT_P0 = "InPNotP0"
    NOT_PRINCIPAL = "NotPrincipal"


def diagonal_classify(k: Ideal, a: Ideal, b: Ideal) -> Tuple[str, Optional[PrincipalGenerator]]:
    """Classify ``k * a * conj(b)`` as rationally generated, principal, or neither."""
    n = k * a * b.conj()
    gen = principal_generator(n)
    if gen is None:
        return DiagonalClass.NOT_PRINCIPAL, None
    u, v = gen.coords
    if v == 0 and u > 0:
        return DiagonalClass.IN_P0, gen
    return DiagonalClass.IN_P_NOT_P0, gen


# ---------------------------------------------------------------------------
# vectorised lattice points (AFE and probes)
# ---------------------------------------------------------------------------

def orbit_points(ctx: FieldContext, h: HNF, max_norm: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nonzero elements of the lattice ``h`` with norm <= ``max_norm``, one per unit orbit.

    Returns ``(norms, u, v)`` as int64 arrays, sorted by norm; the orbit
    representative is the element in the canonical argument window.
    """
    e1, e2 = reduced_basis(ctx, h)
    A = ctx.norm(e1)
    C = ctx.norm(e2)
    B = ctx.norm((e1[0] + e2[0], e1[1] + e2[1])) - A - C
    disc = 4 * A * C - B * B
    m2max = math.isqrt(4 * A * max_norm // disc) + 1
    m2 = np.arange(-m2max, m2max + 1, dtype=np.int64)
    # roots of A m1^2 + B m2 m1 + C m2^2 - max_norm = 0
    q = (B * B - 4 * A * C) * m2.astype(np.float64) ** 2 + 4.0 * A * max_norm
    ok = q >= 0
    m2 = m2[ok]
    sq = np.sqrt(q[ok])
    lo = np.floor((-B * m2 - sq) / (2 * A)).astype(np.int64) - 1
    hi = np.ceil((-B * m2 + sq) / (2 * A)).astype(np.int64) + 1
    counts = hi - lo + 1
    m2r = np.repeat(m2, counts)
    offs = np.arange(counts.sum(), dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    m1r = np.repeat(lo, counts) + offs
    u = m1r * e1[0] + m2r * e2[0]
    v = m1r * e1[1] + m2r * e2[1]
    if ctx.w_is_half:
        norms = u * u + u * v + ((1 - ctx.d) // 4) * v * v
    else:
        norms = u * u - ctx.d * v * v
    keep = (norms > 0) & (norms <= max_norm) & _window_mask(ctx, u, v)
    u, v, norms = u[keep], v[keep], norms[keep]
    order = np.lexsort((v, u, norms))
    return norms[order], u[order], v[order]


def _window_mask(ctx: FieldContext, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    if ctx.omega_K == 4:
        return (-u <= v) & (v < u)
    if ctx.omega_K == 6:
        return (-u <= 2 * v) & (v < u)
    re2 = 2 * u + v if ctx.w_is_half else u
    return (re2 > 0) | ((re2 == 0) & (v < 0))


def element_args(ctx: FieldContext, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    w = ctx.omega_complex
    return np.arctan2(v * w.imag, u + v * w.real)


def iter_support_products(primes: List[PrimeIdeal], ctx: FieldContext, max_norm: float) -> Iterator[Ideal]:
    """Squarefree products of the given prime ideals with norm <= max_norm."""
    primes = sorted(primes, key=lambda P: (P.norm, P))

    def rec(i: int, f: Dict[PrimeIdeal, int], n: int) -> Iterator[Ideal]:
        yield Ideal(ctx, f)
        for j in range(i, len(primes)):
            P = primes[j]
            if n * P.norm > max_norm:
                break
            g = dict(f)
            g[P] = 1
            yield from rec(j + 1, g, n * P.norm)

    yield from rec(0, {}, 1)


__all__ = [
    "DiagonalClass",
    "Ideal",
    "PrimeIdeal",
    "PrincipalGenerator",
    "canonical_element",
    "conj_prime",
    "coprime_core_split",
    "diagonal_classify",
    "element_args",
    "enumerate_ideals",
    "hnf",
    "ideal_from_generators",
    "ideal_from_hnf",
    "ideal_of_prime",
    "in_pprime",
    "iter_support_products",
    "orbit_points",
    "p0_pprime_split",
    "prime_class",
    "prime_ideal",
    "prime_ideals_up_to",
    "primes_above",
    "principal_generator",
    "principal_ideal",
    "rational_ideal",
    "unit_ideal",
]
