"""The cutoff V(y, x) and its two implementations.

V is defined by a contour integral of rho_s(x) y^-s / s.  Shifting the
contour shows it equals the regularized upper incomplete Gamma Q(x+1/2, y);
both routes are computed here and compared, then the sharp transition near
y = x is displayed together with the measured decay constants.
"""


from hecke_resonance.special import (
    bump_phi_hat,
    cutoff_V_gamma,
    cutoff_V_quadrature,
    decay_constants,
    log_cutoff_V,
    verify_rho_asymptotics,
)

print(f"{'x':>6} {'y':>7} {'quadrature':>22} {'incomplete gamma':>22}")
for x in (2, 10, 50):
    for y in (x / 2, x, 2 * x):
        print(f"{x:6g} {y:7g} {cutoff_V_quadrature(y, x):22.15f} {cutoff_V_gamma(y, x):22.15f}")

print("\nfar tail, log domain: log V(4000, 100) =", log_cutoff_V(4000, 100))
for x in (25, 100, 400):
    print(f"x={x:3d} decay constants", {k: f"{v:.3e}" for k, v in decay_constants(x).items()})

print("\nStirling approximation of rho_s(x), relative error at s = 1 + 5i:")
for x in (10, 100, 1000):
    print(f"  x={x:5d}  {verify_rho_asymptotics(x, 1, 5):.3e}  (x * err = {x * verify_rho_asymptotics(x, 1, 5):.3f})")

print("\nbump transform: Phi_hat(0) =", bump_phi_hat(0).real, " |Phi_hat(3)| =", abs(bump_phi_hat(3)))
print("decay of |Phi_hat(v)| at v = 1, 2, 4, 8:", [f"{abs(bump_phi_hat(v)):.2e}" for v in (1, 2, 4, 8)])
