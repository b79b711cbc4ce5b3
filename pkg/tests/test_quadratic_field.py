import math

import pytest
from hypothesis import given, strategies as st

from hecke_resonance.ideals import enumerate_ideals, ideal_from_generators, primes_above
from hecke_resonance.quadratic_field import (
    DomainError,
    Split,
    build_field,
    check_group_laws,
    compose_forms,
    divisor_sum_count,
    is_squarefree,
    reduce_form,
    reduced_forms,
    splitting_type,
)
from sympy import primerange

FIELDS = [-1, -2, -3, -5, -6, -14, -23, -26, -47, -71, -89, -105, -210]
# h(-d) for the fields above, from standard class number tables
CLASS_NUMBERS = {-1: 1, -2: 1, -3: 1, -5: 2, -6: 2, -14: 4, -23: 3, -26: 6, -47: 5, -71: 7, -89: 12,
                 -105: 8, -210: 8}

squarefree_negative = st.integers(min_value=1, max_value=3000).filter(is_squarefree).map(lambda n: -n)


def test_gaussian_and_eisenstein():
    K = build_field(-1)
    assert (K.D, K.omega_K, K.h_K) == (-4, 4, 1)
    K = build_field(-3)
    assert (K.D, K.omega_K, K.h_K) == (-3, 6, 1)


def test_minus_five():
    K = build_field(-5)
    assert (K.D, K.omega_K, K.h_K) == (-20, 2, 2)
    assert sorted(K.class_reps) == [(1, 0, 5), (2, 2, 3)]


@pytest.mark.parametrize("d", FIELDS)
def test_class_numbers(d):
    assert build_field(d).h_K == CLASS_NUMBERS[d]


@pytest.mark.parametrize("d", [0, 1, 7, -4, -12, -18])
def test_rejects_bad_d(d):
    with pytest.raises(DomainError):
        build_field(d)


@given(squarefree_negative)
def test_field_invariants(d):
    K = build_field(d)
    assert K.D < 0 and K.D % 4 in (0, 1)
    assert K.D == (d if d % 4 == 1 else 4 * d)
    assert K.omega_K == {-1: 4, -3: 6}.get(d, 2)
    assert K.h_K == len(reduced_forms(K.D))
    assert K.c_K == pytest.approx(4 * math.pi / math.sqrt(abs(K.D)), rel=1e-15)


@given(squarefree_negative)
def test_group_laws(d):
    check_group_laws(build_field(d))


@pytest.mark.parametrize("d", [-1, -3, -5, -23, -105])
def test_splitting_partition(d):
    K = build_field(d)
    for p in primerange(2, 10**4):
        kind = splitting_type(p, K)
        Ps = primes_above(K, p)
        assert math.prod(P.norm for P in Ps) == (p * p if kind is not Split.RAMIFIED else p)
        if kind is Split.RAMIFIED:
            # P^2 = (p)
            assert Ps[0].norm ** 2 == p * p
        assert len(Ps) == {Split.SPLIT: 2, Split.INERT: 1, Split.RAMIFIED: 1}[kind]


def test_small_primes_gaussian():
    K = build_field(-1)
    assert splitting_type(5, K) is Split.SPLIT
    assert splitting_type(3, K) is Split.INERT
    assert splitting_type(2, K) is Split.RAMIFIED
    assert primes_above(K, 3)[0].norm == 9
    with pytest.raises(DomainError):
        splitting_type(9, K)


def test_form_classes_minus_five():
    K = build_field(-5)
    a = ideal_from_generators(K, [(2, 0), (1, 1)])
    assert a.norm == 2
    assert K.class_reps[a.class_index] == (2, 2, 3)
    assert (a * a).class_index == 0
    b = ideal_from_generators(K, [(7, 1)])
    assert b.class_index == 0


@given(squarefree_negative, st.data())
def test_composition_matches_table(d, data):
    K = build_field(d)
    i = data.draw(st.integers(0, K.h_K - 1))
    j = data.draw(st.integers(0, K.h_K - 1))
    f = reduce_form(compose_forms(K.class_reps[i], K.class_reps[j]))
    assert K.class_index_of_form(f) == K.compose(i, j)


@pytest.mark.parametrize("d", [-1, -3, -5, -14, -23])
def test_ideal_count_oracle(d):
    K = build_field(d)
    for B in (1, 5, 30, 300):
        assert len(enumerate_ideals(K, B)) == divisor_sum_count(K, B)


@given(squarefree_negative, st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_element_arithmetic(d, a, b, c, e):
    K = build_field(d)
    x, y = (a, b), (c, e)
    assert K.norm(K.mul(x, y)) == K.norm(x) * K.norm(y)
    assert K.mul(x, K.conj(x)) == (K.norm(x), 0)
    z = K.embed(K.mul(x, y))
    assert abs(z - K.embed(x) * K.embed(y)) <= 1e-9 * (1 + abs(z))
    if x != (0, 0):
        inside = [u for u in K.units() if K.in_unit_window(K.mul(x, u))]
        assert len(inside) == 1
