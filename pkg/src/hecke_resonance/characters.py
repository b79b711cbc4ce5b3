"""Angular characters of frequency ``ell``.

On principal ideals an angular character is ``xi((beta)) = exp(i*ell*arg beta)``;
this is well defined exactly when ``omega_K | ell``.  It extends to the whole
ideal group in ``h_K`` ways.  The extension is fixed on one prime ideal
``g_i`` per cyclic factor of the class group: if ``g_i`` has order ``n_i``
then ``g_i^n_i = (gamma_i)`` and ``xi(g_i)`` must be an ``n_i``-th root of
``exp(i*ell*arg gamma_i)``.  Choosing a root for every factor gives the
characters, indexed in mixed radix by the root choices.

To evaluate at a prime ``p`` in class ``prod g_i^k_i`` we multiply by
``prod g_i^(n_i - k_i)``, which is principal, and read off its generator.
The arguments of those generators do not depend on ``ell`` and are cached
per field.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

from sympy import primerange

from .ideals import (
    Ideal,
    PrimeIdeal,
    ideal_of_prime,
    prime_class,
    primes_above,
    principal_generator,
)
from .quadratic_field import DomainError, FieldContext

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ClassGenerators:
    """One prime ideal per cyclic factor, with the argument of gamma_i."""

    primes: Tuple[PrimeIdeal, ...]
    orders: Tuple[int, ...]
    args: Tuple[float, ...]


@lru_cache(maxsize=None)
def class_generators(ctx: FieldContext) -> ClassGenerators:
    decomp = ctx.cyclic_decomposition
    wanted = {g: None for g, _ in decomp}
    for p in primerange(2, 10**7):
        for P in primes_above(ctx, p):
            c = prime_class(ctx, P)
            if c in wanted and wanted[c] is None:
                wanted[c] = P
        if all(v is not None for v in wanted.values()):
            break
    primes, orders, args = [], [], []
    for g, n in decomp:
        P = wanted[g]
        if P is None:  # pragma: no cover - Chebotarev makes this unreachable
            raise RuntimeError(f"no prime ideal found in class {g}")
        gen = principal_generator(ideal_of_prime(ctx, P, n))
        primes.append(P)
        orders.append(n)
        args.append(gen.arg_gamma)
    return ClassGenerators(tuple(primes), tuple(orders), tuple(args))


@lru_cache(maxsize=1_000_000)
def _prime_data(ctx: FieldContext, P: PrimeIdeal) -> Tuple[float, Tuple[int, ...]]:
    """``(arg gamma_b, (n_i - k_i))`` for ``b = P * prod g_i^(n_i - k_i)``."""
    return _principal_completion(ctx, ideal_of_prime(ctx, P), 1)


def _principal_completion(ctx: FieldContext, a: Ideal, lap: int) -> Tuple[float, Tuple[int, ...]]:
    gens = class_generators(ctx)
    ks = ctx.class_exponents[a.class_index]
    comp = tuple(lap * n - k for n, k in zip(gens.orders, ks))
    b = a
    for P, m in zip(gens.primes, comp):
        b = b * ideal_of_prime(ctx, P, m)
    gen = principal_generator(b)
    if gen is None:  # pragma: no cover - guarded by the class computation
        raise RuntimeError("completion is not principal")
    return gen.arg_gamma, comp


@dataclass(frozen=True)
class AngularCharacter:
    """The character with frequency ``ell`` and root choices ``roots``."""

    ctx: FieldContext
    ell: int
    class_char_index: int
    roots: Tuple[int, ...]
    extension_table: Tuple[complex, ...]

    def __call__(self, a: Ideal) -> complex:
        return char_eval(self, a)

    def at_prime(self, P: PrimeIdeal) -> complex:
        arg, comp = _prime_data(self.ctx, P)
        val = cmath.exp(1j * (self.ell * arg))
        for z, m in zip(self.extension_table, comp):
            val /= z**m
        return val

    def conjugate(self) -> "AngularCharacter":
        """The member of the family for ``-ell`` taking conjugate values."""
        gens = class_generators(self.ctx)
        base = _base_roots(self.ctx, -self.ell)
        roots = []
        for z, b, n in zip(self.extension_table, base, gens.orders):
            # conj(z) = b * e(j/n) for a unique j
            j = round(cmath.phase(z.conjugate() / b) * n / TWO_PI) % n
            roots.append(j)
        return _make(self.ctx, -self.ell, tuple(roots))


def _base_roots(ctx: FieldContext, ell: int) -> List[complex]:
    gens = class_generators(ctx)
    out = []
    for n, a in zip(gens.orders, gens.args):
        theta = math.fmod(ell * a, TWO_PI)
        if theta < 0:
            theta += TWO_PI
        out.append(cmath.exp(1j * theta / n))
    return out


def _make(ctx: FieldContext, ell: int, roots: Tuple[int, ...]) -> AngularCharacter:
    gens = class_generators(ctx)
    base = _base_roots(ctx, ell)
    table = tuple(b * cmath.exp(1j * TWO_PI * j / n) for b, j, n in zip(base, roots, gens.orders))
    idx = 0
    for j, n in zip(roots, gens.orders):
        idx = idx * n + j
    return AngularCharacter(ctx, ell, idx, roots, table)


def make_characters(ctx: FieldContext, ell: int) -> List[AngularCharacter]:
    """All ``h_K`` characters of frequency ``ell``; empty unless ``omega_K | ell``."""
    if ell % ctx.omega_K:
        return []
    orders = class_generators(ctx).orders
    out = []
    for idx in range(ctx.h_K):
        roots, q = [], idx
        for n in reversed(orders):
            roots.append(q % n)
            q //= n
        out.append(_make(ctx, ell, tuple(reversed(roots))))
    return out


def char_eval(xi: AngularCharacter, a: Ideal) -> complex:
    """``xi(a)`` by multiplicativity over the prime factorization."""
    val = 1 + 0j
    for P, e in a.factors:
        val *= xi.at_prime(P) ** e
    return val


def char_eval_direct(xi: AngularCharacter, a: Ideal, lap: int = 1) -> complex:
    """``xi(a)`` from one principal completion of the whole ideal.

    ``lap`` selects the completion ``a * prod g_i^(lap*n_i - k_i)``; every
    ``lap >= 1`` must give the same value.
    """
    if lap < 1:
        raise DomainError("lap must be positive")
    arg, comp = _principal_completion(xi.ctx, a, lap)
    val = cmath.exp(1j * (xi.ell * arg))
    for z, m in zip(xi.extension_table, comp):
        val /= z**m
    return val


def char_orthogonality_sum(ctx: FieldContext, ell: int, a: Ideal) -> complex:
    """``sum_{xi} xi(a)`` over the family of frequency ``ell``."""
    if ell % ctx.omega_K:
        raise DomainError(f"omega_K = {ctx.omega_K} does not divide ell = {ell}")
    return sum((char_eval(xi, a) for xi in make_characters(ctx, ell)), 0j)


def orthogonality_expected(ctx: FieldContext, ell: int, a: Ideal) -> complex:
    gen = principal_generator(a)
    if gen is None:
        return 0j
    return ctx.h_K * cmath.exp(1j * ell * gen.arg_gamma)


__all__ = [
    "AngularCharacter",
    "ClassGenerators",
    "char_eval",
    "char_eval_direct",
    "char_orthogonality_sum",
    "class_generators",
    "make_characters",
    "orthogonality_expected",
]
