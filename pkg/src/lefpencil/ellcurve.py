"""Weierstrass curves ``y^2 = x^3 + a2 x^2 + a4 x + a6`` over QQ.

Group law, order-3 torsion checks, Velu's 3-isogeny, the translated
coordinate functions ``x o tau_Q`` as rational functions, and exact Laurent
expansions of ``x`` and ``y`` in the local parameter ``t = x/y`` at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import QQ, format_rational, parse_rational
from .multipoly import MultiPoly, Ring

__all__ = [
    "WeierstrassCurve", "CurvePoint", "INFINITY", "CurveRationalFunction",
    "LaurentSeries", "CoverDatum", "NotOnCurve", "add_points", "verify_order_three",
    "velu_3_isogeny", "translation_x", "translation_y", "expand_at_infinity",
    "count_points_mod_p", "reduce_mod_curve", "XY_RING", "point", "negate", "multiply",
]

XY_RING = Ring(("x", "y"), QQ)


class NotOnCurve(ValueError):
    pass


@dataclass(frozen=True)
class CurvePoint:
    x: Fraction | None = None
    y: Fraction | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        if self.is_infinity:
            return "O"
        return f"({format_rational(self.x)}, {format_rational(self.y)})"


INFINITY = CurvePoint()


def point(x, y) -> CurvePoint:
    return CurvePoint(Fraction(x), Fraction(y))


@dataclass(frozen=True)
class WeierstrassCurve:
    a2: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a2", "a4", "a6"):
            object.__setattr__(self, name, parse_rational(getattr(self, name)))
        if self.discriminant() == 0:
            raise ValueError("singular cubic: discriminant is zero")

    def w(self, x):
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def w_prime(self, x):
        return (3 * x + 2 * self.a2) * x + self.a4

    def discriminant(self) -> Fraction:
        """Discriminant of the cubic ``w``."""
        b, c, d = self.a2, self.a4, self.a6
        return b * b * c * c - 4 * c ** 3 - 4 * b ** 3 * d - 27 * d * d + 18 * b * c * d

    def contains(self, P: CurvePoint) -> bool:
        return P.is_infinity or P.y * P.y == self.w(P.x)

    def w_poly(self, ring: Ring = XY_RING, xvar: str = "x") -> MultiPoly:
        x = ring.gen(xvar)
        return x ** 3 + x ** 2 * self.a2 + x * self.a4 + self.a6

    def relation(self, ring: Ring = XY_RING, xvar: str = "x", yvar: str = "y") -> MultiPoly:
        """The curve polynomial ``y^2 - w(x)``."""
        return ring.gen(yvar) ** 2 - self.w_poly(ring, xvar)

    def to_dict(self) -> dict:
        return {"a2": format_rational(self.a2), "a4": format_rational(self.a4),
                "a6": format_rational(self.a6)}

    @classmethod
    def from_dict(cls, d: dict) -> "WeierstrassCurve":
        return cls(parse_rational(d["a2"]), parse_rational(d["a4"]), parse_rational(d["a6"]))

    def __str__(self):
        terms = [("x^2", self.a2), ("x", self.a4), ("", self.a6)]
        s = "y^2 = x^3"
        for mono, c in terms:
            if c:
                mag = format_rational(abs(c))
                body = mono if (mag == "1" and mono) else (f"{mag}{mono}" if not mono else f"{mag}*{mono}")
                s += (" - " if c < 0 else " + ") + body
        return s


# ---------------------------------------------------------------------------
# group law

def negate(c: WeierstrassCurve, P: CurvePoint) -> CurvePoint:
    return P if P.is_infinity else CurvePoint(P.x, -P.y)


def add_points(c: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """Chord-and-tangent addition with the point at infinity as identity."""
    for R in (P, Q):
        if not c.contains(R):
            raise NotOnCurve(f"{R} is not on {c}")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return INFINITY
        lam = c.w_prime(P.x) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - c.a2 - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return CurvePoint(x3, y3)


def multiply(c: WeierstrassCurve, n: int, P: CurvePoint) -> CurvePoint:
    if n < 0:
        return multiply(c, -n, negate(c, P))
    R, Q = INFINITY, P
    while n:
        if n & 1:
            R = add_points(c, R, Q)
        Q = add_points(c, Q, Q)
        n >>= 1
    return R


def verify_order_three(c: WeierstrassCurve, P: CurvePoint) -> bool:
    """True iff ``P`` is affine, on the curve, and ``2P = -P``."""
    if P.is_infinity or not c.contains(P):
        return False
    if P.y == 0:
        return False
    return add_points(c, P, P) == negate(c, P)


def velu_3_isogeny(c: WeierstrassCurve, Q: CurvePoint) -> WeierstrassCurve:
    """Codomain of the isogeny with kernel ``{O, Q, -Q}`` (Velu, a1 = a3 = 0)."""
    if not verify_order_three(c, Q):
        raise ValueError(f"{Q} is not a point of order 3 on {c}")
    gx = c.w_prime(Q.x)
    gy = -2 * Q.y
    v = 2 * gx
    u = gy * gy
    w = u + Q.x * v
    return WeierstrassCurve(c.a2, c.a4 - 5 * v, c.a6 - 4 * c.a2 * v - 7 * w)


def count_points_mod_p(c: WeierstrassCurve, p: int) -> int:
    """Number of points over GF(p) by exhaustion (p odd, good reduction)."""
    coeffs = []
    for a in (c.a2, c.a4, c.a6):
        if a.denominator % p == 0:
            raise ValueError(f"bad reduction at {p}")
        coeffs.append(a.numerator * pow(a.denominator, -1, p) % p)
    a2, a4, a6 = coeffs
    squares = [0] * p
    for y in range(p):
        squares[y * y % p] += 1
    total = 1
    for x in range(p):
        total += squares[(((x + a2) * x + a4) * x + a6) % p]
    return total


# ---------------------------------------------------------------------------
# rational functions on the curve

def reduce_mod_curve(f: MultiPoly, c: WeierstrassCurve, xvar="x", yvar="y") -> MultiPoly:
    """Canonical representative modulo ``y^2 - w(x)``: at most linear in ``y``."""
    ring = f.ring
    yi = ring.index(yvar)
    wpoly = c.w_poly(ring, xvar)
    wpowers = [ring.one]
    out = ring.zero
    for k, coeff in sorted(f.coefficients_in(yvar).items()):
        q, r = divmod(k, 2)
        while len(wpowers) <= q:
            wpowers.append(wpowers[-1] * wpoly)
        term = coeff * wpowers[q]
        if r:
            term = term * ring.gen(yi)
        out = out + term
    return out


@dataclass(frozen=True)
class CurveRationalFunction:
    """``numerator / denominator`` in ``QQ[x, y]``, read modulo the curve relation."""

    numerator: MultiPoly
    denominator: MultiPoly
    curve: WeierstrassCurve

    def evaluate(self, P: CurvePoint) -> Fraction:
        vals = {"x": P.x, "y": P.y}
        d = self.denominator.evaluate(vals)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {P}")
        return self.numerator.evaluate(vals) / d

    def __sub__(self, other):
        if isinstance(other, CurveRationalFunction):
            num = self.numerator * other.denominator - other.numerator * self.denominator
            return CurveRationalFunction(num, self.denominator * other.denominator, self.curve)
        return CurveRationalFunction(self.numerator - self.denominator * Fraction(other),
                                     self.denominator, self.curve)

    def reduced(self) -> "CurveRationalFunction":
        return CurveRationalFunction(reduce_mod_curve(self.numerator, self.curve),
                                     reduce_mod_curve(self.denominator, self.curve), self.curve)

    def equals(self, other: "CurveRationalFunction") -> bool:
        """Equality as functions on the curve (cross-multiply and reduce)."""
        diff = self.numerator * other.denominator - other.numerator * self.denominator
        return reduce_mod_curve(diff, self.curve).is_zero()

    def compose(self, X: "CurveRationalFunction", Y: "CurveRationalFunction") -> "CurveRationalFunction":
        """``self(X, Y)`` for rational functions ``X, Y`` with a common denominator handled by clearing."""
        n = max(_weighted_degree(self.numerator), _weighted_degree(self.denominator))
        num = _homogenize_subst(self.numerator, X, Y, n)
        den = _homogenize_subst(self.denominator, X, Y, n)
        return CurveRationalFunction(num, den, self.curve)


def _weighted_degree(f: MultiPoly) -> int:
    return max((sum(e) for e in f.term_dict), default=0)


def _homogenize_subst(f: MultiPoly, X: CurveRationalFunction, Y: CurveRationalFunction, n: int) -> MultiPoly:
    # f(Xn/Xd, Yn/Yd) * (Xd*Yd)^n, a polynomial
    ring = f.ring
    out = ring.zero
    for (i, j), c in f.term_dict.items():
        term = (X.numerator ** i * X.denominator ** (n - i) * Y.numerator ** j
                * Y.denominator ** (n - j)) * c
        out = out + term
    return out


def translation_x(c: WeierstrassCurve, Q: CurvePoint) -> CurveRationalFunction:
    """``x o tau_Q = ((y - yQ)^2 - (x - xQ)^2 (x + xQ + a2)) / (x - xQ)^2``."""
    if Q.is_infinity:
        raise ValueError("translation point must be affine")
    x, y = XY_RING.gens()
    dx = x - Q.x
    num = (y - Q.y) ** 2 - dx ** 2 * (x + Q.x + c.a2)
    return CurveRationalFunction(num, dx ** 2, c)


def translation_y(c: WeierstrassCurve, Q: CurvePoint) -> CurveRationalFunction:
    """``y o tau_Q = (lambda (x - x3) - y)`` written over the denominator ``(x - xQ)^3``."""
    if Q.is_infinity:
        raise ValueError("translation point must be affine")
    x, y = XY_RING.gens()
    dx = x - Q.x
    dy = y - Q.y
    # x3 * dx^2 = dy^2 - dx^2 (x + xQ + a2)
    x3num = dy ** 2 - dx ** 2 * (x + Q.x + c.a2)
    num = dy * (x * dx ** 2 - x3num) - y * dx ** 3
    return CurveRationalFunction(num, dx ** 3, c)


# ---------------------------------------------------------------------------
# Laurent series

class LaurentSeries:
    """Truncated Laurent series ``sum_{k >= val} c_k t^k + O(t^prec)`` over QQ."""

    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, val: int, coeffs: Sequence, prec: int):
        coeffs = [Fraction(c) for c in coeffs][:max(prec - val, 0)]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        self.val = val if coeffs else prec
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def monomial(cls, k: int, prec: int, c=1) -> "LaurentSeries":
        return cls(k, [c], prec)

    @classmethod
    def constant(cls, c, prec: int) -> "LaurentSeries":
        return cls(0, [c], prec)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        if k >= self.prec:
            raise IndexError(f"coefficient t^{k} beyond precision O(t^{self.prec})")
        i = k - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other, self.prec)
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val)
        return LaurentSeries(lo, [self[k] + other[k] if k < prec else 0 for k in range(lo, prec)], prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentSeries) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            c = Fraction(other)
            return LaurentSeries(self.val, [x * c for x in self.coeffs], self.prec)
        if self.is_zero() or other.is_zero():
            prec = min(self.prec + other.val, other.prec + self.val)
            return LaurentSeries(prec, [], prec)
        val = self.val + other.val
        prec = min(self.prec + other.val, other.prec + self.val)
        out = [Fraction(0)] * max(prec - val, 0)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= len(out):
                    break
                out[i + j] += a * b
        return LaurentSeries(val, out, prec)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        if self.is_zero():
            raise ZeroDivisionError("series is zero to working precision")
        n = self.prec - self.val  # relative precision
        a = self.coeffs + [Fraction(0)] * (n - len(self.coeffs))
        inv = [Fraction(0)] * n
        inv[0] = 1 / a[0]
        for k in range(1, n):
            s = sum(a[j] * inv[k - j] for j in range(1, k + 1))
            inv[k] = -s * inv[0]
        return LaurentSeries(-self.val, inv, -self.val + n)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return LaurentSeries.constant(1, self.prec - self.val)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by ``t^k``."""
        return LaurentSeries(self.val + k, self.coeffs, self.prec + k)

    def valuation(self) -> int:
        return self.val

    def __repr__(self):
        terms = [f"{format_rational(c)}*t^{self.val + i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms + [f"O(t^{self.prec})"])


def expand_at_infinity(c: WeierstrassCurve, order: int) -> tuple[LaurentSeries, LaurentSeries]:
    """``x(t), y(t)`` with ``t = x/y``, both known to absolute precision ``O(t^order)``.

    Solves ``w = t^3 + a2 t^2 w + a4 t w^2 + a6 w^3`` for ``w = 1/y`` by
    fixed-point iteration, then ``x = t/w`` and ``y = 1/w``.
    """
    if order < 4:
        raise ValueError("order must be at least 4")
    wprec = order + 6
    t = LaurentSeries.monomial(1, wprec)
    t2, t3 = t * t, t * t * t
    w = t3
    for _ in range(wprec):
        nxt = t3 + t2 * w * c.a2 + t * w * w * c.a4 + w * w * w * c.a6
        nxt = LaurentSeries(nxt.val, nxt.coeffs, wprec)
        if nxt.val == w.val and nxt.coeffs == w.coeffs:
            break
        w = nxt
    winv = w.inverse()
    x = t * winv
    y = winv
    x = LaurentSeries(x.val, x.coeffs, min(x.prec, order))
    y = LaurentSeries(y.val, y.coeffs, min(y.prec, order))
    return x, y


# ---------------------------------------------------------------------------
# cover datum

@dataclass(frozen=True)
class CoverDatum:
    """The cover curve, its 3-torsion point ``C1 = (alpha, beta)`` and derived data."""

    curve: WeierstrassCurve
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", parse_rational(self.alpha))
        object.__setattr__(self, "beta", parse_rational(self.beta))

    @property
    def C1(self) -> CurvePoint:
        return CurvePoint(self.alpha, self.beta)

    @property
    def C2(self) -> CurvePoint:
        return CurvePoint(self.alpha, -self.beta)

    @property
    def mu(self) -> Fraction:
        return self.curve.w_prime(self.alpha)

    def validate(self) -> dict:
        """Checks used by certificate runs; raises nothing, reports booleans."""
        on_curve = self.curve.contains(self.C1)
        order3 = on_curve and verify_order_three(self.curve, self.C1)
        report = {"on_curve": on_curve, "order_three": order3, "beta_nonzero": self.beta != 0,
                  "mu": format_rational(self.mu)}
        if on_curve:
            report["double_C1"] = str(add_points(self.curve, self.C1, self.C1))
        return report

    def quotient(self) -> WeierstrassCurve:
        return velu_3_isogeny(self.curve, self.C1)

    @classmethod
    def from_dict(cls, d: dict) -> "CoverDatum":
        return cls(WeierstrassCurve.from_dict(d), parse_rational(d["alpha"]), parse_rational(d["beta"]))

    def to_dict(self) -> dict:
        return dict(self.curve.to_dict(), alpha=format_rational(self.alpha),
                    beta=format_rational(self.beta))
