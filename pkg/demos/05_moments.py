"""Resonators, moments and the Rankin penalty.

At full scale (N = e^40 and up) the resonator window holds up to hundreds of
primes and only the Euler-product side is computable; the Rankin diagnostics
show the penalized diagonal error is small.  At desk scale a short resonator
is used and the two moments are computed directly and compared with their
diagonal models.
"""

import math

from hecke_resonance import build_field, desk_resonator, moment_denominator, moment_numerator
from hecke_resonance import rankin_diagnostics, resonator_coeffs
from hecke_resonance.resonance import brute_xi, custom_resonator, euler_xi

G = build_field(-1)
for logN in (40, 70, 100):
    spec = resonator_coeffs(math.exp(logN), G)
    rd = rankin_diagnostics(spec)
    print(f"N=e^{logN}: L={spec.L_param:.4f} pairs={len(spec.pairs):4d} "
          f"H={rd.H_alpha:+.4f} (Xi(a,0)+Xi(a,a))/Xi(0,0)={rd.error_ratio:.4f}")

# A tiny support where Xi can also be summed by brute force.
small = resonator_coeffs(math.exp(40), G)
spec = custom_resonator(G, small.N, list(zip(small.pairs[:3], small.r_values[:3])))
a = spec.alpha
for a1, a2 in ((0, 0), (a, 0), (a, a)):
    print(f"Xi({a1:.4f}, {a2:.4f}): euler {euler_xi(a1, a2, spec):.15f}  brute {brute_xi(a1, a2, spec):.15f}")

spec = desk_resonator(50, G)
print("\ndesk resonator N=50 support:", [P.tag() for P in spec.pairs], "r =", spec.r_values)
for X in (500, 5000):
    direct, model = moment_denominator(X, spec)
    print(f"denominator X={X}: direct {direct:.10f}  diagonal model {model:.10f}")

X = 2048
parts = moment_numerator(X, desk_resonator(X ** 0.2, G))
print(f"\nnumerator X={X}: direct {parts.direct:.4f}  exact diagonal {parts.diagonal_exact:.4f}  "
      f"lower bound {parts.diagonal_lower:.4f}  off-diagonal/direct {parts.offdiag_mass / parts.direct:.2e}")
