"""Imaginary quadratic fields and their class groups.

A field K = Q(sqrt(d)) is described by :class:`FieldContext`.  The class
group is computed from reduced positive definite binary quadratic forms of
discriminant D with Gauss composition; everything is exact integer
arithmetic.

Elements of the ring of integers are integer pairs ``(u, v)`` meaning
``u + v*w`` where ``w = sqrt(d)`` if d = 2, 3 mod 4 and ``w = (1 + sqrt(d))/2``
if d = 1 mod 4.  The complex embedding sends sqrt(d) to ``i*sqrt(|d|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Dict, List, Sequence, Tuple

from sympy import factorint, isprime

Form = Tuple[int, int, int]


class DomainError(ValueError):
    """Raised for inputs outside the mathematical domain of an operation."""


# ---------------------------------------------------------------------------
# binary quadratic forms
# ---------------------------------------------------------------------------

def _normalize(f: Form) -> Form:
    a, b, c = f
    if -a < b <= a:
        return f
    r = (a - b) // (2 * a)
    return a, b + 2 * r * a, a * r * r + b * r + c


def reduce_form(f: Form) -> Form:
    """Reduce a positive definite form: |b| <= a <= c, b >= 0 if a == c or |b| == a."""
    a, b, c = _normalize(f)
    while a > c or (a == c and b < 0):
        s = (c + b) // (2 * c)
        a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
    return _normalize((a, b, c))


def reduced_forms(D: int) -> List[Form]:
    """All reduced primitive forms of negative discriminant ``D``."""
    forms = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (a == c or abs(b) == a) and b < 0:
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append((a, b, c))
        a += 1
    return forms


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def compose_forms(f1: Form, f2: Form) -> Form:
    """Gauss composition of two primitive forms of the same discriminant (reduced output)."""
    if f1[1] ** 2 - 4 * f1[0] * f1[2] != f2[1] ** 2 - 4 * f2[0] * f2[2]:
        raise DomainError("forms have different discriminants")
    if f1[0] > f2[0]:
        f1, f2 = f2, f1
    a1, b1, _ = f1
    a2, b2, c2 = f2
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, y1, _ = _xgcd(a2, a1)
    if s % d == 0:
        x2, y2, d1 = 0, -1, d
    else:
        d1, x2, v = _xgcd(s, d)
        y2 = -v
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    return reduce_form((a3, b3, c3))


def form_inverse(f: Form) -> Form:
    a, b, c = f
    return reduce_form((a, -b, c))


# ---------------------------------------------------------------------------
# field context
# ---------------------------------------------------------------------------

class Split(Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(abs(n)).values())


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D | n) for n >= 1."""
    if n < 1:
        raise DomainError("kronecker symbol needs n >= 1")
    result = 1
    for p, e in factorint(n).items():
        if p == 2:
            if D % 2 == 0:
                k = 0
            else:
                k = 1 if D % 8 in (1, 7) else -1
        else:
            r = D % p
            if r == 0:
                k = 0
            else:
                k = 1 if pow(r, (p - 1) // 2, p) == 1 else -1
        result *= k ** e
    return result


@dataclass(frozen=True, eq=False)
class FieldContext:
    """Arithmetic data of K = Q(sqrt(d)), d < 0 squarefree.  Immutable."""

    d: int
    D: int
    omega_K: int
    class_reps: Tuple[Form, ...]
    composition: Tuple[Tuple[int, ...], ...]
    _index: Dict[Form, int] = field(repr=False, compare=False, hash=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldContext) and other.d == self.d

    def __hash__(self) -> int:
        return hash(("FieldContext", self.d))

    # -- basic invariants --------------------------------------------------
    @property
    def h_K(self) -> int:
        return len(self.class_reps)

    @property
    def c_K(self) -> float:
        return 4.0 * math.pi / math.sqrt(abs(self.D))

    @property
    def identity(self) -> int:
        return 0

    @property
    def w_is_half(self) -> bool:
        """True when the integral basis is {1, (1+sqrt d)/2}."""
        return self.d % 4 == 1

    @property
    def omega_complex(self) -> complex:
        s = math.sqrt(-self.d)
        return complex(0.5, s / 2) if self.w_is_half else complex(0.0, s)

    # -- element arithmetic ------------------------------------------------
    def mul(self, x: Tuple[int, int], y: Tuple[int, int]) -> Tuple[int, int]:
        u1, v1 = x
        u2, v2 = y
        if self.w_is_half:
            k = (self.d - 1) // 4
            return u1 * u2 + k * v1 * v2, u1 * v2 + u2 * v1 + v1 * v2
        return u1 * u2 + self.d * v1 * v2, u1 * v2 + u2 * v1

    def norm(self, x: Tuple[int, int]) -> int:
        u, v = x
        if self.w_is_half:
            return u * u + u * v + ((1 - self.d) // 4) * v * v
        return u * u - self.d * v * v

    def conj(self, x: Tuple[int, int]) -> Tuple[int, int]:
        u, v = x
        return (u + v, -v) if self.w_is_half else (u, -v)

    def embed(self, x: Tuple[int, int]) -> complex:
        u, v = x
        return u + v * self.omega_complex

    def in_unit_window(self, x: Tuple[int, int]) -> bool:
        """Exact test of arg(x) in [-pi/omega_K, pi/omega_K)."""
        u, v = x
        if self.omega_K == 4:
            return -u <= v < u
        if self.omega_K == 6:
            return -u <= 2 * v and v < u
        re2 = 2 * u + v if self.w_is_half else u
        return re2 > 0 or (re2 == 0 and v < 0)

    def units(self) -> List[Tuple[int, int]]:
        if self.omega_K == 4:
            return [(1, 0), (0, 1), (-1, 0), (0, -1)]
        if self.omega_K == 6:
            # w = (1+sqrt(-3))/2 is a primitive sixth root of unity
            out, z = [], (1, 0)
            for _ in range(6):
                out.append(z)
                z = self.mul(z, (0, 1))
            return out
        return [(1, 0), (-1, 0)]

    # -- class group -------------------------------------------------------
    def class_index_of_form(self, f: Form) -> int:
        a, b, c = f
        if b * b - 4 * a * c != self.D:
            raise DomainError(f"form {f} has wrong discriminant")
        return self._index[reduce_form(f)]

    def compose(self, i: int, j: int) -> int:
        return self.composition[i][j]

    def inverse(self, i: int) -> int:
        return self.composition[i].index(0)

    def class_power(self, i: int, k: int) -> int:
        out = 0
        k %= self.class_order(i)
        for _ in range(k):
            out = self.compose(out, i)
        return out

    def class_order(self, i: int) -> int:
        n, x = 1, i
        while x != 0:
            x = self.compose(x, i)
            n += 1
        return n

    @cached_property
    def cyclic_decomposition(self) -> Tuple[Tuple[int, int], ...]:
        """Generators and orders ``((g_1, n_1), ...)`` of a direct product of cyclic groups."""
        return _decompose(self)

    @cached_property
    def class_exponents(self) -> Tuple[Tuple[int, ...], ...]:
        """For each class index j the exponent vector k with j = prod g_i^k_i."""
        gens = self.cyclic_decomposition
        table: Dict[int, Tuple[int, ...]] = {}
        vecs = [()]
        for g, n in gens:
            vecs = [v + (k,) for v in vecs for k in range(n)]
        for v in vecs:
            x = 0
            for (g, _), k in zip(gens, v):
                x = self.compose(x, self.class_power(g, k))
            table[x] = v
        return tuple(table[j] for j in range(self.h_K))

    # -- primes ------------------------------------------------------------
    def minpoly_roots(self, p: int) -> List[int]:
        """Roots in [0, p) of the minimal polynomial of w modulo p, ascending."""
        if self.w_is_half:
            k = (1 - self.d) // 4
            f = lambda r: (r * r - r + k) % p  # noqa: E731
        else:
            f = lambda r: (r * r - self.d) % p  # noqa: E731
        if p < 2000:
            return [r for r in range(p) if f(r) == 0]
        from sympy.ntheory import sqrt_mod

        if self.w_is_half:
            # (2r - 1)^2 = d mod p for odd p
            inv2 = pow(2, -1, p)
            roots = {((s + 1) * inv2) % p for s in sqrt_mod(self.d % p, p, all_roots=True)}
        else:
            roots = set(sqrt_mod(self.d % p, p, all_roots=True))
        return sorted(r for r in roots if f(r) == 0)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "D": self.D,
            "omega_K": self.omega_K,
            "h_K": self.h_K,
            "class_reps": [list(f) for f in self.class_reps],
            "composition": [list(row) for row in self.composition],
            "c_K": repr(self.c_K),
            "embedding": "sqrt(d) -> i*sqrt(|d|)",
        }


def _decompose(ctx: FieldContext) -> Tuple[Tuple[int, int], ...]:
    h = ctx.h_K
    if h == 1:
        return ()
    subgroup = {0}
    gens: List[Tuple[int, int]] = []
    while len(subgroup) < h:
        best, best_m = None, 0
        for g in range(h):
            m, x = 1, g
            while x not in subgroup:
                x = ctx.compose(x, g)
                m += 1
            if m > best_m:
                best, best_m = g, m
        # lift to an element of exact order best_m independent of the subgroup
        chosen = None
        for s in sorted(subgroup):
            g = ctx.compose(best, s)
            if ctx.class_order(g) == best_m:
                chosen = g
                break
        if chosen is None:
            raise RuntimeError("class group decomposition failed")
        new = set()
        x = 0
        for _ in range(best_m):
            new |= {ctx.compose(x, s) for s in subgroup}
            x = ctx.compose(x, chosen)
        if len(new) != len(subgroup) * best_m:
            raise RuntimeError("class group decomposition is not direct")
        subgroup = new
        gens.append((chosen, best_m))
    return tuple(gens)


def build_field(d: int) -> FieldContext:
    """Build the arithmetic context of Q(sqrt(d)) for squarefree d < 0."""
    if not isinstance(d, int) or isinstance(d, bool):
        raise DomainError("d must be an integer")
    if d >= 0:
        raise DomainError(f"d = {d} is not negative")
    if not is_squarefree(d):
        raise DomainError(f"d = {d} is not squarefree")
    return _build_field(d)


@lru_cache(maxsize=64)
def _build_field(d: int) -> FieldContext:
    D = d if d % 4 == 1 else 4 * d
    omega = 6 if d == -3 else 4 if d == -1 else 2
    forms = reduced_forms(D)
    forms.sort(key=lambda f: (f[0], abs(f[1]), -f[1]))
    index = {f: i for i, f in enumerate(forms)}
    table = tuple(
        tuple(index[compose_forms(f, g)] for g in forms) for f in forms
    )
    return FieldContext(d, D, omega, tuple(forms), table, index)


def splitting_type(p: int, ctx: FieldContext) -> Split:
    """Splitting behaviour of the rational prime ``p`` in K."""
    if p < 2 or not isprime(p):
        raise DomainError(f"{p} is not prime")
    k = kronecker(ctx.D, p)
    if k == 0:
        return Split.RAMIFIED
    return Split.SPLIT if k == 1 else Split.INERT


def divisor_sum_count(ctx: FieldContext, B: float) -> int:
    """Number of ideals of norm <= B, as sum_{n<=B} sum_{m|n} chi_D(m)."""
    n_max = int(math.floor(B))
    chi = [0] + [kronecker(ctx.D, m) for m in range(1, n_max + 1)]
    # sum_{m <= B} chi(m) * floor(B/m)
    return sum(chi[m] * (n_max // m) for m in range(1, n_max + 1))


def check_group_laws(ctx: FieldContext) -> None:
    """Exhaustively assert the composition table is an abelian group."""
    h = ctx.h_K
    t = ctx.composition
    for i in range(h):
        if t[0][i] != i or t[i][0] != i:
            raise AssertionError("identity fails")
        if 0 not in t[i]:
            raise AssertionError("missing inverse")
        for j in range(h):
            if t[i][j] != t[j][i]:
                raise AssertionError("not commutative")
            for k in range(h):
                if t[t[i][j]][k] != t[i][t[j][k]]:
                    raise AssertionError("not associative")


__all__: Sequence[str] = (
    "DomainError",
    "FieldContext",
    "Split",
    "build_field",
    "check_group_laws",
    "compose_forms",
    "divisor_sum_count",
    "form_inverse",
    "kronecker",
    "reduce_form",
    "reduced_forms",
    "splitting_type",
)
