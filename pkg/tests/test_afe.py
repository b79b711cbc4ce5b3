import math
import time

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hecke_resonance.afe import (
    AfeConfig,
    afe_central_value,
    afe_evaluate,
    class_rep_ideals,
    completed_lambda,
    direct_ideal_sum,
    evaluate_family,
    evaluate_frequency,
    lambda_log_factor,
    smoothed_series_value,
    truncation,
)
from hecke_resonance.characters import make_characters
from hecke_resonance.quadratic_field import DomainError, build_field

# L(1/2, xi) from the order-3 smoothed Dirichlet series at T = 1e4 (independent of the AFE code path)
ORACLE = {
    (-1, 4, 0): 0.5200744676949313,
    (-1, 8, 0): 1.6841245886468474,
    (-1, 40, 0): 6.019841844739136,
    (-3, 6, 0): 0.8025269875128432,
    (-5, 2, 0): 0.9787967191565684,
    (-5, 2, 1): 0.7229650981524715,
    (-23, 2, 0): 1.15945678537335,
    (-23, 2, 1): 0.613469679943543,
    (-23, 2, 2): 0.9894807023187976,
}


@pytest.mark.parametrize("key", sorted(ORACLE))
def test_frozen_oracle(key):
    d, ell, j = key
    xi = make_characters(build_field(d), ell)[j]
    assert afe_central_value(xi) == pytest.approx(ORACLE[key], abs=1e-9)


def test_slack_doubling_gaussian():
    xi = make_characters(build_field(-1), 4)[0]
    a = afe_central_value(xi, cfg=AfeConfig(slack=6))
    b = afe_central_value(xi, cfg=AfeConfig(slack=12))
    assert abs(a - b) <= 1e-8


def test_literal_oracle_at_ell_4():
    xi = make_characters(build_field(-1), 4)[0]
    o = smoothed_series_value(0.5, xi, T=1e4)
    assert abs(afe_central_value(xi) - o.real) <= 1e-4


def test_smoothed_series_converged_at_two():
    xi = make_characters(build_field(-1), 4)[0]
    a = smoothed_series_value(2, xi, T=1e4, order=2)
    b = smoothed_series_value(2, xi, T=2e4, order=2)
    assert abs(a - b) <= 1e-6
    # the plain smoother moves by L(1, xi) (1/T1 - 1/T2) between the two cutoffs
    a0 = smoothed_series_value(2, xi, T=1e4)
    b0 = smoothed_series_value(2, xi, T=2e4)
    L1 = abs(smoothed_series_value(1, xi, T=1e4, order=3))
    assert abs(a0 - b0) == pytest.approx(L1 * (1e-4 - 5e-5), rel=0.05)


def test_smoothed_series_vs_direct_sum():
    # the plain exp(-N/T) smoother is biased by about L(1, xi)/T at s = 2, which is 6e-5 here;
    # the order-2 smoother removes that term
    xi = make_characters(build_field(-1), 4)[0]
    direct = direct_ideal_sum(2, xi, 1e5)
    assert abs(smoothed_series_value(2, xi, T=1e4, order=2) - direct) <= 1e-5
    bias = abs(smoothed_series_value(2, xi, T=1e4) - direct)
    L1 = abs(smoothed_series_value(1, xi, T=1e4, order=3))
    assert bias == pytest.approx(L1 / 1e4, rel=0.05)


@pytest.mark.slow
def test_smoothed_series_vs_direct_sum_full_range():
    xi = make_characters(build_field(-1), 4)[0]
    direct = direct_ideal_sum(2, xi, 1e6)
    assert abs(smoothed_series_value(2, xi, T=1e4, order=2) - direct) <= 1e-5


@pytest.mark.parametrize("d", [-1, -3, -5])
def test_truncation_monotone(d):
    K = build_field(d)
    for ell in range(K.omega_K, 41, K.omega_K):
        res = {s: evaluate_frequency(K, ell, AfeConfig(slack=s)) for s in (4, 6, 9, 12)}
        for s1 in res:
            for s2 in res:
                for r1, r2 in zip(res[s1], res[s2]):
                    assert abs(r1.value - r2.value) <= r1.est_err + r2.est_err + 1e-12


@given(st.sampled_from([-1, -3, -5, -14, -23]), st.integers(1, 300), st.data())
def test_conjugate_frequency(d, k, data):
    K = build_field(d)
    ell = k * K.omega_K
    xi = data.draw(st.sampled_from(make_characters(K, ell)))
    r = afe_evaluate(xi)
    assert r.imag_residue <= 1e-9
    assert afe_central_value(xi.conjugate()) == pytest.approx(r.value, abs=1e-10)


@given(st.sampled_from([-1, -5, -23]), st.integers(1, 30))
def test_family_matches_single(d, k):
    K = build_field(d)
    ell = k * K.omega_K
    fam = evaluate_family(K, [ell])
    for xi, r in zip(make_characters(K, ell), fam):
        assert r.value == afe_central_value(xi)


def test_family_is_thread_independent():
    K = build_field(-23)
    ells = list(range(2, 200, 2))
    a = evaluate_family(K, ells, threads=1)
    b = evaluate_family(K, ells, threads=4)
    assert [(r.ell, r.class_char_index, r.value) for r in a] == [(r.ell, r.class_char_index, r.value) for r in b]


def test_truncation_target():
    cfg = AfeConfig()
    for d in (-1, -5):
        K = build_field(d)
        for ell in (2, 4, 8, 40, 400, 10**4):
            if ell % K.omega_K:
                continue
            M, slack, est = truncation(K, ell, cfg)
            assert est <= cfg.target_abs_err and slack >= cfg.slack


def test_cost_at_large_ell():
    K = build_field(-1)
    xi = make_characters(K, 10**4)[0]
    afe_central_value(xi)  # warm the lattice cache
    t = time.perf_counter()
    afe_central_value(xi)
    assert time.perf_counter() - t <= 0.05


def test_lambda_consistency():
    for d, ell in [(-1, 4), (-1, 400), (-5, 6), (-23, 10)]:
        K = build_field(d)
        for xi in make_characters(K, ell):
            lam = completed_lambda(xi)
            fac = 0.25 * math.log(abs(K.D)) - 0.5 * math.log(2 * math.pi) + math.lgamma(0.5 + ell / 2)
            assert lam.log_abs_lambda - lam.log_abs_L == pytest.approx(fac, abs=1e-9)
            assert lambda_log_factor(K, ell) == pytest.approx(fac, abs=1e-12)
            assert lam.sign == (1 if lam.L_half > 0 else -1)


def test_class_reps_cover_group():
    for d in (-5, -23, -89):
        K = build_field(d)
        reps = class_rep_ideals(K)
        assert sorted(r.class_index for r in reps) == list(range(K.h_K))


def test_domain_errors():
    K = build_field(-1)
    with pytest.raises(DomainError):
        evaluate_frequency(K, 2)
    with pytest.raises(DomainError):
        evaluate_frequency(K, 0)
    with pytest.raises(DomainError):
        AfeConfig(slack=1)
    xi = make_characters(K, 4)[0]
    with pytest.raises(DomainError):
        smoothed_series_value(0.25, xi)
