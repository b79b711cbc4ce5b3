"""Acceptance criteria, one test per criterion at its stated tolerance.

Each test prints a single ``[PASS]``/``[FAIL]`` line.  Run the file directly
(``python3 tests/test_acceptance.py``) for the summary without pytest.
"""

import math
import time

import numpy as np
import pytest
from sympy import primerange

from hecke_resonance.afe import AfeConfig, afe_central_value, smoothed_series_value
from hecke_resonance.characters import (
    char_eval,
    char_eval_direct,
    char_orthogonality_sum,
    make_characters,
    orthogonality_expected,
)
from hecke_resonance.ideals import Ideal, prime_ideal, prime_ideals_up_to
from hecke_resonance.quadratic_field import Split, build_field, splitting_type
from hecke_resonance.resonance import (
    brute_xi,
    custom_resonator,
    desk_resonator,
    euler_xi,
    extreme_value_search,
    moment_denominator,
    moment_numerator,
    rankin_diagnostics,
    resonator_coeffs,
    resonator_length_param,
)
from hecke_resonance.special import (
    cutoff_V_gamma,
    cutoff_V_quadrature,
    decay_constants,
    derivative_decay_constants,
    log_cutoff_complement,
    log_cutoff_V,
    verify_rho_asymptotics,
    verify_rho_derivative,
)


def criterion_1():
    t0 = time.perf_counter()
    worst = 0.0
    for x in (0.5, 2, 10, 50, 200):
        for y in (x / 4, x / 2, x, 2 * x, 4 * x):
            worst = max(worst, abs(cutoff_V_quadrature(y, x) - cutoff_V_gamma(y, x)))
    dt = time.perf_counter() - t0
    return worst <= 1e-9 and dt <= 60, f"max |quad - gamma| = {worst:.2e} (<= 1e-9), {dt:.1f} s (<= 60 s)"


def criterion_2():
    exact = max(abs(cutoff_V_gamma(y, 0.5) - math.exp(-y)) for y in (0.1, 1, 10))
    rng = np.random.default_rng(2)
    pts = rng.uniform(0, 500, size=(1000, 2))
    pts[pts == 0] = 1e-300
    # 0 < V < 1 strictly: both log V and log(1 - V) are finite
    strict = all(math.isfinite(log_cutoff_V(y, x)) and math.isfinite(log_cutoff_complement(y, x))
                 and 0.0 <= cutoff_V_gamma(y, x) <= 1.0 for y, x in pts)
    return exact <= 1e-10 and strict, f"max |V(y,1/2) - e^-y| = {exact:.2e} (<= 1e-10), 0<V<1 on 1000 points: {strict}"


def criterion_3():
    val = der = 0.0
    for x in (25, 100, 400):
        val = max(val, *decay_constants(x).values())
        der = max(der, *derivative_decay_constants(x).values())
    return val <= 10 and der <= 50, f"C_value = {val:.3f} (<= 10), C_deriv = {der:.3f} (<= 50)"


def criterion_4():
    worst_a = worst_d = 0.0
    for x in (10, 100, 1000):
        for sigma in (0, 1):
            for t in (0, 1, 5):
                worst_a = max(worst_a, x * verify_rho_asymptotics(x, sigma, t) / 10)
                worst_d = max(worst_d, x * verify_rho_derivative(x, complex(sigma, t), 1) / 20)
    return worst_a <= 1 and worst_d <= 1, (
        f"max err/(10/x) = {worst_a:.3f}, max deriv err/(20/x) = {worst_d:.3f} (both <= 1)")


def _random_ideal(ctx, rng, primes, max_primes=4):
    f = {}
    for _ in range(rng.integers(0, max_primes + 1)):
        P = primes[rng.integers(len(primes))]
        f[P] = f.get(P, 0) + int(rng.integers(1, 4))
    return Ideal(ctx, f)


def criterion_5():
    rng = np.random.default_rng(5)
    orth = well = 0.0
    for d in (-1, -3, -5):
        K = build_field(d)
        primes = prime_ideals_up_to(K, 150)
        for _ in range(200):
            a = _random_ideal(K, rng, primes)
            ell = K.omega_K * int(rng.choice([-1, 1]) * rng.integers(1, 51))
            orth = max(orth, abs(char_orthogonality_sum(K, ell, a) - orthogonality_expected(K, ell, a)))
        for _ in range(200):
            a, b = _random_ideal(K, rng, primes), _random_ideal(K, rng, primes)
            ell = K.omega_K * int(rng.integers(1, 51))
            for xi in make_characters(K, ell):
                ab = char_eval(xi, a * b)
                well = max(well,
                           abs(ab - char_eval(xi, a) * char_eval(xi, b)),
                           abs(ab - char_eval_direct(xi, a * b, 1)),
                           abs(ab - char_eval_direct(xi, a * b, 2)))
    return orth <= 1e-12 and well <= 1e-12, f"orthogonality err = {orth:.2e}, well-definedness err = {well:.2e} (<= 1e-12)"


def _afe_vs_oracle(order):
    K = build_field(-1)
    t0 = time.perf_counter()
    stab = orc = 0.0
    for ell in range(4, 41, 4):
        xi = make_characters(K, ell)[0]
        a = afe_central_value(xi, cfg=AfeConfig(slack=6))
        b = afe_central_value(xi, cfg=AfeConfig(slack=12))
        stab = max(stab, abs(a - b))
        orc = max(orc, abs(a - smoothed_series_value(0.5, xi, T=1e4, order=order)))
    return stab, orc, time.perf_counter() - t0


def criterion_6():
    stab, orc, dt = _afe_vs_oracle(0)
    ok = stab <= 1e-8 and orc <= 1e-3 and dt <= 120
    return ok, f"slack stability = {stab:.2e} (<= 1e-8), oracle err = {orc:.2e} (<= 1e-3), {dt:.1f} s (<= 120 s)"


def criterion_6_order3():
    stab, orc, dt = _afe_vs_oracle(3)
    ok = stab <= 1e-8 and orc <= 1e-3 and dt <= 120
    return ok, f"order-3 oracle err = {orc:.2e} (<= 1e-3), slack stability = {stab:.2e}, {dt:.1f} s"


def criterion_7():
    N = math.exp(40)
    L = resonator_length_param(N)
    worst = 0.0
    for d in (-1, -3, -5):
        K = build_field(d)
        pool = [prime_ideal(K, p) for p in primerange(2, 200) if splitting_type(p, K) is Split.SPLIT][:4]
        for mask in range(1 << 4):
            chosen = [P for i, P in enumerate(pool) if mask >> i & 1]
            spec = custom_resonator(K, N, [(P, L / (math.sqrt(P.norm) * math.log(P.norm))) for P in chosen])
            a = spec.alpha
            for a1, a2 in ((0.0, 0.0), (a, 0.0), (a, a)):
                worst = max(worst, abs(euler_xi(a1, a2, spec) / brute_xi(a1, a2, spec) - 1))
    return worst <= 1e-10, f"max rel |euler/brute - 1| = {worst:.2e} over 3 fields x 16 supports (<= 1e-10)"


def criterion_8():
    K = build_field(-1)
    t0 = time.perf_counter()
    spec = desk_resonator(50, K)
    rel = {}
    for X in (500, 5000):
        direct, model = moment_denominator(X, spec)
        rel[X] = abs(direct - model) / abs(direct)
    dt = time.perf_counter() - t0
    ok = rel[500] <= 0.05 and rel[5000] <= 0.01 and dt <= 300
    return ok, (f"rel diff {rel[500]:.2e} at X=500 (<= 0.05), {rel[5000]:.2e} at X=5000 (<= 0.01), "
                f"{len(spec.pairs)} pair(s), {dt:.1f} s")


def criterion_9():
    K = build_field(-1)
    parts, ok = [], True
    for logN in (40, 70, 100):
        rd = rankin_diagnostics(resonator_coeffs(math.exp(logN), K))
        ok &= rd.H_alpha < 0 and rd.error_ratio < 1
        parts.append(f"e^{logN}: H={rd.H_alpha:.3f}, ratio={rd.error_ratio:.3f}")
    return ok, "; ".join(parts)


def criterion_10():
    K = build_field(-1)
    t0 = time.perf_counter()
    peaks, ok, parts = [], True, []
    for X in (2**10, 2**12, 2**14):
        res = extreme_value_search(X, desk_resonator(X ** (0.25 - 0.05), K))
        thr = 0.5 * math.sqrt(math.log(X) / math.log(math.log(X)))
        c_gap = abs(math.log(res.weighted_avg_bound) - res.predicted_gain)
        c_tol = math.log(10) + abs(math.log(res.report.plain_mean))
        ok &= res.log_abs_L_star >= thr and c_gap <= c_tol
        peaks.append(res.log_abs_L_star)
        parts.append(f"X=2^{int(math.log2(X))}: ell*={res.ell_star} log|L|={res.log_abs_L_star:.3f}>={thr:.3f}")
    ok &= peaks[0] <= peaks[1] <= peaks[2]
    dt = time.perf_counter() - t0
    ok &= dt <= 1800
    return ok, "; ".join(parts) + f"; non-decreasing: {peaks[0] <= peaks[1] <= peaks[2]}; {dt:.1f} s"


def _offdiag_ratio(X, N):
    parts = moment_numerator(X, desk_resonator(N, build_field(-1)), want_lower=False)
    return parts.offdiag_mass / abs(parts.direct)


def criterion_11():
    r12 = _offdiag_ratio(2**12, (2**12) ** 0.2)
    r13 = _offdiag_ratio(2**13, (2**13) ** 0.2)
    return r12 <= 0.2 and r13 < r12, f"offdiag/|direct| = {r12:.2e} at 2^12 (<= 0.2), {r13:.2e} at 2^13 (decreasing)"


def criterion_11_support():
    r12, r13 = _offdiag_ratio(2**12, 50), _offdiag_ratio(2**13, 50)
    return r12 <= 0.2 and r13 < r12, f"N=50 (one pair): {r12:.2e} at 2^12, {r13:.2e} at 2^13"


CRITERIA = [
    ("1", criterion_1),
    ("2", criterion_2),
    ("3", criterion_3),
    ("4", criterion_4),
    ("5", criterion_5),
    ("6", criterion_6),
    ("6 (supplementary, order-3 oracle)", criterion_6_order3),
    ("7", criterion_7),
    ("8", criterion_8),
    ("9", criterion_9),
    ("10", criterion_10),
    ("11", criterion_11),
    ("11 (supplementary, nonempty support)", criterion_11_support),
]


def _line(name, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}"


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[n.split()[0] + ("s" if " " in n else "") for n, _ in CRITERIA])
def test_criterion(name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    for name, fn in CRITERIA:
        print(_line(name, *fn()), flush=True)
