import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hecke_resonance.ideals import (
    DiagonalClass,
    Ideal,
    canonical_element,
    conj_prime,
    coprime_core_split,
    diagonal_classify,
    enumerate_ideals,
    ideal_from_generators,
    ideal_from_hnf,
    ideal_of_prime,
    in_pprime,
    orbit_points,
    p0_pprime_split,
    prime_ideal,
    prime_ideals_up_to,
    principal_generator,
    principal_ideal,
    rational_ideal,
    unit_ideal,
)
from hecke_resonance.quadratic_field import DomainError, build_field

FIELDS = [-1, -2, -3, -5, -6, -14, -23, -47, -105]


def random_ideal(ctx, data, max_primes=4, bound=200):
    primes = prime_ideals_up_to(ctx, bound)
    k = data.draw(st.integers(0, max_primes))
    f = {}
    for _ in range(k):
        P = data.draw(st.sampled_from(primes))
        f[P] = f.get(P, 0) + data.draw(st.integers(1, 2))
    return Ideal(ctx, f)


fields = st.sampled_from(FIELDS).map(build_field)


# -- examples -----------------------------------------------------------------

def test_gaussian_enumeration():
    K = build_field(-1)
    ideals = enumerate_ideals(K, 5)
    assert [a.norm for a in ideals] == [1, 2, 4, 5, 5]
    gens = {principal_generator(a).coords for a in ideals}
    assert gens == {(1, 0), (1, -1), (2, 0), (2, 1), (2, -1)}


def test_minus_five_enumeration():
    K = build_field(-5)
    ideals = enumerate_ideals(K, 2)
    assert len(ideals) == 2
    assert ideals[1] == ideal_from_generators(K, [(2, 0), (1, 1)])


@pytest.mark.parametrize("d", FIELDS)
def test_norm_one(d):
    K = build_field(d)
    assert enumerate_ideals(K, 1) == [unit_ideal(K)]


def test_generator_of_one_plus_two_i():
    K = build_field(-1)
    g = principal_generator(principal_ideal(K, (1, 2)))
    assert g.coords == (2, -1)
    assert g.arg_gamma == pytest.approx(-0.4636476090008061, abs=1e-15)
    assert principal_generator(unit_ideal(K)).coords == (1, 0)


def test_split_prime_order():
    K = build_field(-1)
    assert principal_generator(ideal_of_prime(K, prime_ideal(K, 5, 0))).coords == (2, 1)
    assert principal_generator(ideal_of_prime(K, prime_ideal(K, 5, 1))).coords == (2, -1)


def test_non_principal():
    K = build_field(-5)
    a = ideal_from_generators(K, [(2, 0), (1, 1)])
    assert principal_generator(a) is None
    assert not a.is_principal()
    assert principal_generator(a * a).coords == (2, 0)


def test_p0_split_examples():
    K = build_field(-1)
    p, pb = prime_ideal(K, 5, 0), prime_ideal(K, 5, 1)
    a = Ideal(K, {p: 2, pb: 1})
    a0, ap = p0_pprime_split(a)
    assert a0 == rational_ideal(K, 5) and ap == ideal_of_prime(K, p)
    a0, ap = p0_pprime_split(rational_ideal(K, 3))
    assert a0 == rational_ideal(K, 3) and ap.is_unit()
    one_i = principal_ideal(K, (1, 1))
    a0, ap = p0_pprime_split(one_i)
    assert a0.is_unit() and ap == one_i


def test_coprime_core_examples():
    K = build_field(-1)
    p, pb = ideal_of_prime(K, prime_ideal(K, 5, 0)), ideal_of_prime(K, prime_ideal(K, 5, 1))
    c, a2, b2, flag = coprime_core_split(p, p)
    assert c == p and a2.is_unit() and b2.is_unit() and flag
    c, a2, b2, flag = coprime_core_split(p, pb)
    assert c.is_unit() and a2 == p and b2 == pb and not flag
    q = principal_ideal(K, (3, 2))
    assert q.norm == 13
    c, a2, b2, flag = coprime_core_split(p, q)
    assert c.is_unit() and flag
    with pytest.raises(DomainError):
        coprime_core_split(rational_ideal(K, 5), p)


def test_diagonal_classify_examples():
    K = build_field(-1)
    one = unit_ideal(K)
    p = ideal_of_prime(K, prime_ideal(K, 5, 0))
    pb = ideal_of_prime(K, prime_ideal(K, 5, 1))
    assert diagonal_classify(one, p, p)[0] == DiagonalClass.IN_P0
    cls, gen = diagonal_classify(pb**2, p**2, one)
    assert cls == DiagonalClass.IN_P0 and gen.coords == (25, 0)
    cls, gen = diagonal_classify(p, one, one)
    assert cls == DiagonalClass.IN_P_NOT_P0 and gen.coords == (2, 1)
    K5 = build_field(-5)
    a = ideal_from_generators(K5, [(2, 0), (1, 1)])
    assert diagonal_classify(a, unit_ideal(K5), unit_ideal(K5))[0] == DiagonalClass.NOT_PRINCIPAL


# -- properties ---------------------------------------------------------------

@given(fields, st.data())
def test_norm_multiplicative(K, data):
    a, b = random_ideal(K, data), random_ideal(K, data)
    assert (a * b).norm == a.norm * b.norm
    h = (a * b).hnf
    assert h[0] * h[2] == (a * b).norm


@given(fields, st.data())
def test_class_homomorphism(K, data):
    a, b = random_ideal(K, data), random_ideal(K, data)
    assert (a * b).class_index == K.compose(a.class_index, b.class_index)
    assert a.class_index == a.class_index_from_lattice()


@given(fields, st.data())
def test_conjugation(K, data):
    a = random_ideal(K, data)
    assert a.conj().norm == a.norm
    assert a.conj().class_index == K.inverse(a.class_index)
    assert (a * a.conj()) == rational_ideal(K, a.norm)


@given(fields, st.data())
def test_hnf_round_trip(K, data):
    a = random_ideal(K, data)
    assert ideal_from_hnf(K, a.hnf) == a


@given(fields, st.integers(-60, 60), st.integers(-60, 60))
def test_generator_window(K, u, v):
    if (u, v) == (0, 0):
        return
    a = principal_ideal(K, (u, v))
    g = principal_generator(a)
    assert K.norm(g.coords) == a.norm
    assert abs(abs(g.gamma) ** 2 - a.norm) <= 1e-12 * a.norm
    w = math.pi / K.omega_K
    assert -w - 1e-15 <= g.arg_gamma < w + 1e-15
    assert sum(K.in_unit_window(K.mul(g.coords, e)) for e in K.units()) == 1
    assert g.coords == canonical_element(K, (u, v))
    assert principal_ideal(K, g.coords) == a


@given(fields, st.data())
def test_decomposition_idempotent(K, data):
    a = random_ideal(K, data)
    a0, ap = p0_pprime_split(a)
    assert a0 * ap == a
    assert in_pprime(ap)
    g = principal_generator(a0)
    assert g is not None and g.coords[1] == 0
    b0, bp = p0_pprime_split(ap)
    assert b0.is_unit() and bp == ap


@given(fields, st.data())
def test_coprime_core(K, data):
    a = p0_pprime_split(random_ideal(K, data))[1]
    b = p0_pprime_split(random_ideal(K, data))[1]
    c, a2, b2, flag = coprime_core_split(a, b)
    assert c * a2 == a and c * b2 == b
    assert a2.gcd(b2).is_unit()
    assert flag == (a2 * a2.conj()).gcd(b2 * b2.conj()).is_unit()


def test_diagonal_criterion():
    # small argument forces a rational generator when norms are bounded
    K = build_field(-1)
    N, X = 50, 5000
    ideals = enumerate_ideals(K, N)
    for a in ideals:
        for b in ideals:
            g = principal_generator(a * b.conj())
            if g is not None and abs(g.arg_gamma) < X ** (-1 + 0.1):
                assert diagonal_classify(unit_ideal(K), a, b)[0] == DiagonalClass.IN_P0


@pytest.mark.parametrize("d", [-1, -3, -5, -23])
def test_orbit_points_count(d):
    # one representative per unit orbit: count equals ideals of norm <= B in the inverse class
    K = build_field(d)
    B = 400
    for a in enumerate_ideals(K, 12):
        norms, u, v = orbit_points(K, a.hnf, B * a.norm)
        assert np.all(norms % a.norm == 0)
        expected = sum(1 for k in enumerate_ideals(K, B) if K.compose(k.class_index, a.class_index) == 0)
        assert len(norms) == expected
