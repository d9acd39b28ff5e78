"""The singular-member matrix at the point (0:1:1) of the identity fiber.

The kernel of this 4x5 matrix is the unique member of the linear system
singular there; the signed 4x4 minors give the same vector.

Run:  python demos/q0_kernel.py
"""

from fractions import Fraction

from lefpencil.arith import QQ, canonical_vector, exact_nullspace
from lefpencil.certify import eta_matrix
from lefpencil.ellcurve import CoverDatum, WeierstrassCurve
from lefpencil.sections import FiberStratum

cover = CoverDatum(WeierstrassCurve(1, 1, Fraction(-3, 4)), 1, Fraction(3, 2))
M = eta_matrix(cover, "0", FiberStratum(2), restrict=False)
A = M.evaluate({"Z0p": 0, "Z1": 1})
for label, row in zip(("value", "d/dt", "d/dZ0p", "d/dZ1"), A.to_rows()):
    print(f"{label:>7}: " + "  ".join(f"{str(x):>5}" for x in row))

kernel = exact_nullspace(A)
print("kernel:      ", [str(x) for x in canonical_vector(kernel[0], QQ)])
print("signed minors:", [str(x) for x in M.value_at({"Z0p": 0, "Z1": 1})])
b, mu = cover.beta, cover.mu
print("expected:    ", [str(x) for x in canonical_vector([-2 * b * b, 0, 4 * b * b, 4 * b * b, mu], QQ)])
