"""Polynomial models of the five G-invariant sections on the 3-fold cover.

The sections are written in terms of the functions ``f, g, h`` on the cover
curve and the relative fiber coordinates ``Z0, Z1, Z2``:

    Psi1 = f Z0^4 + g Z1^4 + h Z2^4
    Psi2 = Z0 Z1 Z2 (Z0 + Z1 + Z2)
    Psi3 = f Z0^3 Z2 + g Z1^3 Z0 + h Z2^3 Z1
    Psi4 = f Z0^3 Z1 + g Z1^3 Z2 + h Z2^3 Z0
    Psi5 = g h Z1^2 Z2^2 + f h Z0^2 Z2^2 + f g Z0^2 Z1^2

On the affine chart U (the curve minus the kernel points) the sections are
cleared by the common denominator ``(x - alpha)^2``.  Near the fiber over
the identity the chart ``(t, Z0' : Z1 : Z2)`` with ``Z0 = t Z0'`` is used,
and only the first-order jets in ``t`` are kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import QQ, format_rational, parse_rational
from .ellcurve import (
    CoverDatum, CurveRationalFunction, LaurentSeries, XY_RING, expand_at_infinity,
    reduce_mod_curve, translation_x, translation_y,
)
from .multipoly import MultiPoly, NotDivisible, Ring

__all__ = [
    "TEMPLATE_RING", "SECTION_TEMPLATES", "FiberStratum", "STRATA", "ChartModel",
    "Fiber0Data", "PencilSpec", "J1_PENCIL", "build_chart_U", "build_fiber0_data",
    "g_invariance_check", "pencil_section", "cleared_products", "SeriesDivisionError",
]

# f, g, h are the placeholder letters F, G, H
TEMPLATE_RING = Ring(("F", "G", "H", "Z0", "Z1", "Z2"), QQ)
SECTION_TEMPLATES = tuple(TEMPLATE_RING.parse(s) for s in (
    "F*Z0^4 + G*Z1^4 + H*Z2^4",
    "Z0*Z1*Z2*(Z0 + Z1 + Z2)",
    "F*Z0^3*Z2 + G*Z1^3*Z0 + H*Z2^3*Z1",
    "F*Z0^3*Z1 + G*Z1^3*Z2 + H*Z2^3*Z0",
    "G*H*Z1^2*Z2^2 + F*H*Z0^2*Z2^2 + F*G*Z0^2*Z1^2",
))


class SeriesDivisionError(ArithmeticError):
    """The ``t``-adic division in the jet recipe was not exact."""


@dataclass(frozen=True)
class FiberStratum:
    """Affine piece of a projective fiber: ``Z[chart] = 1`` and ``Z[i] = 0`` for ``i in zeros``."""

    chart: int
    zeros: tuple = ()

    @property
    def key(self) -> str:
        parts = [f"Z{i}=0" for i in self.zeros] + [f"Z{self.chart}=1"]
        return ",".join(parts)

    def coordinates(self) -> tuple[int, int]:
        """Indices of the two affine coordinates of the chart."""
        return tuple(i for i in range(3) if i != self.chart)

    def free(self) -> tuple:
        return tuple(i for i in self.coordinates() if i not in self.zeros)


STRATA = (FiberStratum(0), FiberStratum(1, (0,)), FiberStratum(2, (0, 1)))


def _fiber_names(prefix_zero: str) -> tuple[str, str, str]:
    return (prefix_zero, "Z1", "Z2")


# ---------------------------------------------------------------------------
# chart U

def cleared_products(cover: CoverDatum, exponents=None) -> dict[tuple, MultiPoly]:
    """``d * f^i g^j h^k`` as polynomials in ``QQ[x, y]``, with ``d = (x - alpha)^2``.

    ``exponents`` defaults to the ``(i, j, k)`` occurring in the section
    templates.  Products are reduced modulo the curve before the exact
    division, which raises :class:`NotDivisible` when the product is not
    regular on U.
    """
    c = cover.curve
    x, y = XY_RING.gens()
    dx = x - cover.alpha
    g = translation_x(c, cover.C2) - cover.alpha
    h = translation_x(c, cover.C1) - cover.alpha
    d = dx ** 2
    if g.denominator != d or h.denominator != d:
        raise ValueError("translation denominators differ from (x - alpha)^2")
    nums = (dx ** 3, reduce_mod_curve(g.numerator, c), reduce_mod_curve(h.numerator, c))
    if exponents is None:
        exponents = {e[:3] for t in SECTION_TEMPLATES for e in t.term_dict}
    out = {}
    for e in sorted(exponents):
        k = sum(e)
        prod = XY_RING.one
        for n, m in zip(nums, e):
            prod = prod * n ** m
        prod = reduce_mod_curve(prod, c)
        if k == 0:
            out[e] = d
        elif k == 1:
            out[e] = prod
        else:
            out[e] = reduce_mod_curve(prod.exact_div(dx ** (2 * k - 2)), c)
    return out


@dataclass
class ChartModel:
    """Cleared sections on the chart U for one fiber stratum.

    ``ring`` has variables ``x, y``, the two affine fiber coordinates of the
    stratum's chart, and the pencil parameter ``a``.  ``sections`` are the
    polynomials ``d * Psi_i`` before the stratum's zero coordinates are set.
    """

    cover: CoverDatum
    stratum: FiberStratum
    ring: Ring
    relation: MultiPoly
    sections: list
    denominator: MultiPoly
    fiber_vars: tuple

    def restrict(self, f: MultiPoly) -> MultiPoly:
        """Set the stratum's zero coordinates."""
        subs = {f"Z{i}": 0 for i in self.stratum.zeros}
        return f.substitute(subs) if subs else f

    def free_ring(self, with_parameter: bool = True) -> Ring:
        drop = {f"Z{i}" for i in self.stratum.zeros}
        if not with_parameter:
            drop.add("a")
        return Ring(tuple(v for v in self.ring.variables if v not in drop), self.ring.domain)

    def tangent_derivative(self, f: MultiPoly) -> MultiPoly:
        """``C_y * df/dx - C_x * df/dy``: derivative along the curve."""
        C = self.relation
        return C.diff("y") * f.diff("x") - C.diff("x") * f.diff("y")

    def dump(self) -> str:
        lines = [f"# chart U, stratum {self.stratum.key}, ring {', '.join(self.ring.variables)}",
                 f"relation: {self.relation}", f"denominator: {self.denominator}"]
        lines += [f"Psi{i + 1}: {s}" for i, s in enumerate(self.sections)]
        return "\n".join(lines)


def build_chart_U(cover: CoverDatum, stratum: FiberStratum = STRATA[0]) -> ChartModel:
    """Cleared sections ``d * Psi_i`` on the chart U for a fiber stratum."""
    coords = [f"Z{i}" for i in stratum.coordinates()]
    ring = Ring(("x", "y", *coords, "a"), QQ)
    prods = cleared_products(cover)
    # template ring -> chart ring: F^i G^j H^k -> d f^i g^j h^k, Z_chart -> 1
    zmap = {f"Z{i}": (ring.one if i == stratum.chart else ring.gen(f"Z{i}")) for i in range(3)}
    sections = []
    for tmpl in SECTION_TEMPLATES:
        total = ring.zero
        for (kf, kg, kh, *zexp), c in tmpl.term_dict.items():
            coeff = prods[(kf, kg, kh)].to_ring(ring)
            mono = ring.const(c)
            for i, k in enumerate(zexp):
                if k:
                    mono = mono * zmap[f"Z{i}"] ** k
            total = total + coeff * mono
        sections.append(total)
    x = ring.gen("x")
    return ChartModel(cover, stratum, ring, cover.curve.relation(ring), sections,
                      (x - cover.alpha) ** 2, tuple(coords))


# ---------------------------------------------------------------------------
# G-action

def g_invariance_check(cover: CoverDatum) -> dict:
    """Check the cyclic G-action on ``f, g, h`` and on the section templates.

    Translation by ``C2`` pulls ``f -> g -> h -> f`` back (verified as
    identities of rational functions modulo the curve) while shifting
    ``Z0 -> Z1 -> Z2 -> Z0``; each ``Psi_i`` must be fixed by the combined
    substitution.
    """
    c = cover.curve
    X2, Y2 = translation_x(c, cover.C2), translation_y(c, cover.C2)
    X1 = translation_x(c, cover.C1)
    x, _ = XY_RING.gens()
    ident = CurveRationalFunction(x, XY_RING.one, c)
    # x o tau_C2 o tau_C2 = x o tau_C1 and x o tau_C1 o tau_C2 = x
    gg = X2.compose(X2, Y2)
    hh = X1.compose(X2, Y2)
    checks = {
        "f_to_g": True,  # g is defined as f o tau_C2
        "g_to_h": gg.equals(X1),
        "h_to_f": hh.equals(ident),
    }
    T = TEMPLATE_RING
    shift = {"F": T.gen("G"), "G": T.gen("H"), "H": T.gen("F"),
             "Z0": T.gen("Z1"), "Z1": T.gen("Z2"), "Z2": T.gen("Z0")}
    for i, s in enumerate(SECTION_TEMPLATES, start=1):
        checks[f"Psi{i}_fixed"] = s.substitute(shift) == s
    checks["passed"] = all(checks.values())
    return checks


# ---------------------------------------------------------------------------
# fiber over the identity

@dataclass
class Fiber0Data:
    """First-order ``t``-jets of ``chi_i = t^-1 Psi_i(t Z0', Z1, Z2)`` along ``t = 0``.

    ``values[i]`` and ``derivatives[i]`` are homogeneous quartics in
    ``QQ[Z0p, Z1, Z2]``.
    """

    cover: CoverDatum
    ring: Ring
    values: list
    derivatives: list
    series_order: int

    def dehomogenize(self, stratum: FiberStratum) -> tuple[Ring, list, list]:
        """Jets on the affine chart of ``stratum`` (zero coordinates not yet set)."""
        names = ("Z0p", "Z1", "Z2")
        coords = tuple(names[i] for i in stratum.coordinates())
        ring = Ring(coords + ("a",), QQ)
        subs = {names[i]: (ring.one if i == stratum.chart else ring.gen(names[i])) for i in range(3)}
        vals = [v.substitute(subs, ring) for v in self.values]
        ders = [d.substitute(subs, ring) for d in self.derivatives]
        return ring, vals, ders

    def dump(self) -> str:
        lines = [f"# fiber over the identity, series order {self.series_order}"]
        for i, (v, d) in enumerate(zip(self.values, self.derivatives), start=1):
            lines.append(f"chi{i}(0): {v}")
            lines.append(f"d/dt chi{i}(0): {d}")
        return "\n".join(lines)


def _function_series(cover: CoverDatum, order: int) -> dict[str, LaurentSeries]:
    c = cover.curve
    xs, ys = expand_at_infinity(c, order)
    out = {"F": xs - cover.alpha}
    for name, Q in (("G", cover.C2), ("H", cover.C1)):
        X = translation_x(c, Q)
        num = _eval_series_poly(X.numerator, xs, ys)
        den = _eval_series_poly(X.denominator, xs, ys)
        out[name] = num / den - cover.alpha
    return out


def _eval_series_poly(f: MultiPoly, xs: LaurentSeries, ys: LaurentSeries) -> LaurentSeries:
    total = None
    for (i, j), c in f.term_dict.items():
        term = (xs ** i) * (ys ** j) * c if (i or j) else LaurentSeries.constant(c, xs.prec + 10)
        total = term if total is None else total + term
    return total if total is not None else LaurentSeries(xs.prec, [], xs.prec)


def build_fiber0_data(cover: CoverDatum, series_order: int = 6) -> Fiber0Data:
    """Exact first-order jets of the ``chi_i`` from Laurent expansions of ``f, g, h``.

    Raises :class:`SeriesDivisionError` if some ``chi_i`` would have a pole
    at ``t = 0`` (the division by ``t`` is not exact).
    """
    if series_order < 6:
        raise ValueError("series order must be at least 6")
    fgh = _function_series(cover, series_order)
    ring = Ring(("Z0p", "Z1", "Z2"), QQ)
    values, derivs = [], []
    for idx, tmpl in enumerate(SECTION_TEMPLATES, start=1):
        val, der = {}, {}
        for (kf, kg, kh, z0, z1, z2), c in tmpl.term_dict.items():
            s = LaurentSeries.constant(c, series_order)
            for name, k in (("F", kf), ("G", kg), ("H", kh)):
                if k:
                    s = s * fgh[name] ** k
            # Z0 = t Z0' contributes t^z0; the recipe divides by t once
            s = s.shift(z0 - 1)
            if s.prec < 2:
                raise SeriesDivisionError(f"chi{idx}: precision exhausted, raise series_order")
            if not s.is_zero() and s.val < 0:
                raise SeriesDivisionError(f"chi{idx}: term {tmpl.ring.monomial((kf, kg, kh, z0, z1, z2))} "
                                          f"has a pole of order {-s.val} at t = 0")
            e = (z0, z1, z2)
            if s[0]:
                val[e] = val.get(e, 0) + s[0]
            if s[1]:
                der[e] = der.get(e, 0) + s[1]
        values.append(MultiPoly(ring, val))
        derivs.append(MultiPoly(ring, der))
    return Fiber0Data(cover, ring, values, derivs, series_order)


# ---------------------------------------------------------------------------
# pencils

@dataclass(frozen=True)
class PencilSpec:
    """Pencil ``a * gen0 + b * gen1`` with generators given in the section basis."""

    gen0: tuple
    gen1: tuple

    def __post_init__(self):
        g0 = tuple(parse_rational(c) for c in self.gen0)
        g1 = tuple(parse_rational(c) for c in self.gen1)
        if len(g0) != 5 or len(g1) != 5:
            raise ValueError("pencil generators need five coefficients")
        object.__setattr__(self, "gen0", g0)
        object.__setattr__(self, "gen1", g1)
        if not self.independent():
            raise ValueError("pencil generators are linearly dependent")

    def independent(self) -> bool:
        return any(self.gen0[i] * self.gen1[j] != self.gen0[j] * self.gen1[i]
                   for i in range(5) for j in range(i + 1, 5))

    def to_dict(self) -> dict:
        return {"gen0": [format_rational(c) for c in self.gen0],
                "gen1": [format_rational(c) for c in self.gen1]}

    @classmethod
    def from_dict(cls, d: dict) -> "PencilSpec":
        return cls(tuple(d["gen0"]), tuple(d["gen1"]))


J1_PENCIL = PencilSpec((1, 0, 0, 0, 0), (0, 0, 1, -1, 0))

PARAMETER_STRATA = ("b=1", "a=1,b=0")


def combine(sections: Sequence[MultiPoly], coeffs: Sequence[Fraction]) -> MultiPoly:
    ring = sections[0].ring
    total = ring.zero
    for s, c in zip(sections, coeffs):
        if c:
            total = total + s * c
    return total


def pencil_section(sections: Sequence[MultiPoly], pencil: PencilSpec, parameter: str = "b=1") -> MultiPoly:
    """Pencil member on a chart: ``a*S0 + S1`` for ``b=1``, or ``S0`` for ``a=1,b=0``.

    ``sections`` are the five section polynomials (cleared sections or jet
    values/derivatives), all in one ring that contains ``a``.
    """
    s0 = combine(sections, pencil.gen0)
    s1 = combine(sections, pencil.gen1)
    if parameter == "b=1":
        return sections[0].ring.gen("a") * s0 + s1
    if parameter == "a=1,b=0":
        return s0
    raise ValueError(f"unknown parameter stratum {parameter!r}")
