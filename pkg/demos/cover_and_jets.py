"""The cover curve, its 3-isogeny, and the first-order jets on the identity fiber.

Run:  python demos/cover_and_jets.py
"""

from fractions import Fraction

from lefpencil.ellcurve import CoverDatum, WeierstrassCurve, add_points, count_points_mod_p
from lefpencil.sections import build_fiber0_data, g_invariance_check

cover = CoverDatum(WeierstrassCurve(1, 1, Fraction(-3, 4)), 1, Fraction(3, 2))
curve = cover.curve
print("cover:        ", curve)
print("C1:           ", cover.C1, " 2*C1 =", add_points(curve, cover.C1, cover.C1))
print("mu = w'(alpha):", cover.mu)

quotient = cover.quotient()
print("quotient:     ", quotient)
for p in (5, 7, 11, 13):
    print(f"  #E(F_{p}) = {count_points_mod_p(curve, p)}   #E'(F_{p}) = {count_points_mod_p(quotient, p)}")

print("G-action check passed:", g_invariance_check(cover)["passed"])

fiber0 = build_fiber0_data(cover)
print()
print(fiber0.dump())
