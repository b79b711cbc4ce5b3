"""Angular characters and the orthogonality relation.

For Z[i] there is one character per frequency ell divisible by 4.  For
Q(sqrt -5) each frequency carries h_K = 2 characters, which differ by the
class-group character.
"""

import cmath

from hecke_resonance import build_field, make_characters
from hecke_resonance.characters import char_orthogonality_sum
from hecke_resonance.ideals import ideal_of_prime, prime_ideal, principal_ideal

G = build_field(-1)
xi = make_characters(G, 4)[0]
for P in (prime_ideal(G, 5, 0), prime_ideal(G, 13, 0), prime_ideal(G, 2)):
    z = xi(ideal_of_prime(G, P))
    print(f"xi_4({P.tag()}) = {z:.6f}   arg/pi = {cmath.phase(z) / cmath.pi:+.6f}")

K = build_field(-5)
chars = make_characters(K, 2)
p3 = ideal_of_prime(K, prime_ideal(K, 3))
print("\nQ(sqrt -5), ell = 2: values on a non-principal prime")
for c in chars:
    print(f"  index {c.class_char_index}: {c(p3):.6f}")

# Summing over the family kills non-principal ideals and returns h_K e(ell arg gamma) otherwise.
print("family sum on p3        :", char_orthogonality_sum(K, 2, p3))
print("family sum on (1+sqrt-5):", char_orthogonality_sum(K, 2, principal_ideal(K, (1, 1))))
