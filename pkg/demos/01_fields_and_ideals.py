"""Fields, class groups and ideals.

Builds a few imaginary quadratic fields, prints their invariants, then
factors ideals and reads off canonical generators of principal ones.
"""

from hecke_resonance import build_field, enumerate_ideals, principal_generator
from hecke_resonance.ideals import ideal_of_prime, prime_ideal, principal_ideal

for d in (-1, -3, -5, -23, -89):
    K = build_field(d)
    print(f"d={d:4d}  D={K.D:5d}  omega={K.omega_K}  h={K.h_K:2d}  "
          f"cyclic factors={[n for _, n in K.cyclic_decomposition]}  c_K={K.c_K:.5f}")

# In Q(sqrt -5) the primes above 2 and 3 are not principal, but their product is.
K = build_field(-5)
p2, p3 = prime_ideal(K, 2), prime_ideal(K, 3)
for a in (ideal_of_prime(K, p2), ideal_of_prime(K, p3), ideal_of_prime(K, p2) * ideal_of_prime(K, p3)):
    gen = principal_generator(a)
    shown = "not principal" if gen is None else f"generated by {gen.gamma:.4f}"
    print(f"{a.label():>14}  norm {a.norm:3d}  class {a.class_index}  {shown}")

# Canonical generators sit in the sector |arg| < pi/omega_K.
G = build_field(-1)
print("\ncanonical generator of (1+i):", principal_generator(principal_ideal(G, (1, 1))).gamma)

counts = {B: len(enumerate_ideals(G, B)) for B in (100, 1000, 10000)}
print("ideals of Z[i] with norm <= B:", counts, "(density pi/4 per unit norm)")
