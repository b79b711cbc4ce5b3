"""Central values L(1/2, xi) from the approximate functional equation.

Each value is a lattice sum weighted by W_K.  The smoothed Dirichlet series
is an independent check; with the plain exp(-N/T) weight its bias grows
with ell, while the higher-order weight Q(4, N/T) stays accurate.
"""

from hecke_resonance import AfeConfig, build_field, evaluate_family, make_characters
from hecke_resonance.afe import afe_evaluate, completed_lambda, smoothed_series_value

G = build_field(-1)
print(f"{'ell':>4} {'L(1/2)':>20} {'terms':>6} {'oracle e^-u':>12} {'oracle Q(4,u)':>14}")
for ell in (4, 8, 16, 40):
    xi = make_characters(G, ell)[0]
    r = afe_evaluate(xi)
    plain = abs(r.value - smoothed_series_value(0.5, xi, T=1e4).real)
    high = abs(r.value - smoothed_series_value(0.5, xi, T=1e4, order=3).real)
    print(f"{ell:4d} {r.value:20.15f} {r.n_terms:6d} {plain:12.2e} {high:14.2e}")

a = afe_evaluate(make_characters(G, 40)[0], cfg=AfeConfig(slack=6)).value
b = afe_evaluate(make_characters(G, 40)[0], cfg=AfeConfig(slack=12)).value
print("\nslack 6 vs 12 at ell = 40:", abs(a - b))

K = build_field(-23)
print("\nQ(sqrt -23), h = 3, ell = 2:")
for r in evaluate_family(K, [2]):
    lam = completed_lambda(make_characters(K, 2)[r.class_char_index])
    print(f"  character {r.class_char_index}: L = {r.value:.12f}  log|Lambda| = {lam.log_abs_lambda:.6f}")
