"""Verification stages for a pencil on the symmetric cube.

Every stage builds exact polynomial systems over QQ and then solves them
over each domain of the run's backend: QQ itself in rational mode, or
GF(p) for each configured prime in modular mode.  Results that must be
integers (lengths, degrees, triviality verdicts) are compared across primes.

Chart U systems are saturated by ``x - alpha`` via an extra variable
``tau`` and the generator ``1 - tau*(x - alpha)``.  The quotient of the
augmented ring is the localization at ``x != alpha``, so its length is the
length of the saturated scheme and ``tau`` never has to be eliminated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..arith import QQ, GF, ExactMatrix, PrimeField, canonical_vector, is_probable_prime, modular_primes
from ..ellcurve import CoverDatum, count_points_mod_p
from ..groebner import (
    GroebnerBasis, Ideal, buchberger, is_zero_dimensional, minimal_polynomial,
    multiplication_matrix, quotient_dimension,
)
from ..sections import (
    PARAMETER_STRATA, STRATA, ChartModel, Fiber0Data, FiberStratum, PencilSpec,
    build_chart_U, build_fiber0_data, combine, pencil_section,
)
from ..multipoly import MultiPoly, Ring, TermOrder
from ..unipoly import (
    UniPoly, irreducibility_witness, is_squarefree, modular_irreducibility_witness, squarefree_lcm,
)

__all__ = [
    "BadPrimeSuspected", "Backend", "PolySystem", "SolvedSystem", "EtaMatrix",
    "BasePointsReport", "BaseLocusReport", "CriticalSchemeReport", "EliminantReport", "EtaReport",
    "cover_validation", "base_points", "base_locus_smoothness", "critical_scheme",
    "parameter_eliminant", "eta_matrix", "eta_definedness", "eta_value", "stratum_label",
]

JET_NAMES = ("Z0p", "Z1", "Z2")
CHART_NAMES = ("Z0", "Z1", "Z2")


class BadPrimeSuspected(RuntimeError):
    """Counts disagree between primes of a modular run."""


@dataclass(frozen=True)
class Backend:
    """Coefficient domains a run is carried out over."""

    mode: str
    primes: tuple = ()
    seed: int = 0

    @classmethod
    def create(cls, mode: str, prime_count: int = 3, seed: int = 0) -> "Backend":
        if mode == "rational":
            return cls("rational", (), seed)
        if mode == "modular":
            return cls("modular", tuple(modular_primes(prime_count, seed)), seed)
        raise ValueError(f"unknown mode {mode!r}")

    def domains(self) -> list:
        return [QQ] if self.mode == "rational" else [GF(p) for p in self.primes]

    @staticmethod
    def label(domain) -> str:
        return "QQ" if not isinstance(domain, PrimeField) else str(domain.p)

    def agree(self, what: str, values: dict):
        """Return the common value of ``values`` (keyed by domain label) or raise."""
        distinct = {repr(v) for v in values.values()}
        if len(distinct) > 1:
            raise BadPrimeSuspected(f"bad prime suspected: {what} differs across primes {values}")
        return next(iter(values.values()))


def stratum_label(base: str, stratum: FiberStratum, parameter: str | None = None) -> str:
    names = JET_NAMES if base == "0" else CHART_NAMES
    parts = [f"{names[i]}=0" for i in stratum.zeros] + [f"{names[stratum.chart]}=1"]
    label = f"{base}|{','.join(parts)}"
    return f"{label}|{parameter}" if parameter else label


# ---------------------------------------------------------------------------
# polynomial systems

@dataclass
class PolySystem:
    """Generators over QQ in ``ring``; ``saturate_by`` removes a hypersurface."""

    key: str
    ring: Ring
    generators: list
    saturate_by: MultiPoly | None = None

    def augmented_ring(self, domain) -> Ring:
        names = (("tau",) if self.saturate_by is not None else ()) + self.ring.variables
        return Ring(names, domain, TermOrder("degrevlex"))

    def solve(self, domain) -> "SolvedSystem":
        ring = self.augmented_ring(domain)
        gens = [g.to_ring(ring) for g in self.generators]
        if self.saturate_by is not None:
            gens.append(ring.one - ring.gen("tau") * self.saturate_by.to_ring(ring))
        gens = [g for g in gens if not g.is_zero()]
        G = buchberger(Ideal(gens, ring))
        zd = is_zero_dimensional(G)
        n, basis = quotient_dimension(G) if zd else (None, None)
        return SolvedSystem(self, domain, ring, G, zd, n, basis)


@dataclass
class SolvedSystem:
    system: PolySystem
    domain: object
    ring: Ring
    basis: GroebnerBasis
    zero_dimensional: bool
    length: int | None
    standard: list | None

    def embed(self, f: MultiPoly) -> MultiPoly:
        return f.to_ring(self.ring)

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        return self.basis.normal_form(self.embed(f))

    def is_trivial(self) -> bool:
        return self.basis.is_trivial()

    def extended(self, extra: Sequence[MultiPoly]) -> GroebnerBasis:
        """Basis of the ideal enlarged by ``extra`` (already in this ring)."""
        gens = list(self.basis.basis) + [e for e in extra if not e.is_zero()]
        return buchberger(Ideal(gens, self.ring))


def _drop_zero_coordinates(f: MultiPoly, stratum: FiberStratum, names) -> MultiPoly:
    subs = {names[i]: 0 for i in stratum.zeros}
    return f.substitute(subs) if subs else f


def _restricted_ring(ring: Ring, stratum: FiberStratum, names, keep_parameter: bool) -> Ring:
    drop = {names[i] for i in stratum.zeros}
    if not keep_parameter:
        drop.add("a")
    return Ring(tuple(v for v in ring.variables if v not in drop), QQ)


def _finish(key, gens, ring, saturate_by=None) -> PolySystem:
    out = [g.to_ring(ring) for g in gens if not g.is_zero()]
    return PolySystem(key, ring, out, saturate_by.to_ring(ring) if saturate_by is not None else None)


def _chart(cover: CoverDatum, stratum: FiberStratum, cache: dict) -> ChartModel:
    if stratum not in cache:
        cache[stratum] = build_chart_U(cover, stratum)
    return cache[stratum]


def _fiber_jets(fd: Fiber0Data, stratum: FiberStratum):
    ring, vals, ders = fd.dehomogenize(stratum)
    coords = tuple(v for v in ring.variables if v != "a")
    return ring, vals, ders, coords


def _solve_all(systems: Sequence[PolySystem], backend: Backend, on_system=None) -> dict:
    """``{domain label: {key: SolvedSystem}}``"""
    out = {}
    for K in backend.domains():
        lab = backend.label(K)
        out[lab] = {}
        for s in systems:
            out[lab][s.key] = s.solve(K)
            if on_system:
                on_system(lab, s.key)
    return out


def _common(backend: Backend, solved: dict, what: str, fn: Callable) -> dict:
    keys = next(iter(solved.values())).keys()
    return {k: backend.agree(f"{what} of {k}", {lab: fn(d[k]) for lab, d in solved.items()}) for k in keys}


# ---------------------------------------------------------------------------
# cover

def cover_validation(cover: CoverDatum, count_bound: int = 60) -> dict:
    """Order-3 check, Velu quotient, and point-count agreement over small primes."""
    report = cover.validate()
    report["passed"] = bool(report["on_curve"] and report["order_three"] and report["beta_nonzero"])
    if not report["passed"]:
        return report
    E = cover.quotient()
    report["quotient"] = E.to_dict()
    report["quotient_equation"] = str(E)
    counts = {}
    coeffs = (cover.curve.a2, cover.curve.a4, cover.curve.a6, E.a2, E.a4, E.a6)
    for p in range(5, count_bound):
        if not is_probable_prime(p) or any(Fraction(c).denominator % p == 0 for c in coeffs):
            continue
        if any(not _is_p_unit(D, p) for D in (cover.curve.discriminant(), E.discriminant())):
            continue
        counts[p] = (count_points_mod_p(cover.curve, p), count_points_mod_p(E, p))
    report["point_counts"] = {str(p): list(v) for p, v in counts.items()}
    report["isogenous_counts"] = all(a == b for a, b in counts.values())
    report["passed"] = report["isogenous_counts"]
    return report


def _is_p_unit(q: Fraction, p: int) -> bool:
    q = Fraction(q)
    return q.numerator % p != 0 and q.denominator % p != 0


# ---------------------------------------------------------------------------
# base points

@dataclass
class BasePointsReport:
    strata: dict
    total_length: int
    rational_point_vanishes: bool
    cubic: str
    cubic_expected: str
    chart_U_trivial: dict
    passed: bool

    def to_dict(self) -> dict:
        return {"strata": self.strata, "total_length": self.total_length,
                "point_1_0_0_is_base_point": self.rational_point_vanishes,
                "cubic": self.cubic, "cubic_expected": self.cubic_expected,
                "chart_U_base_locus_empty": self.chart_U_trivial, "passed": self.passed}


def base_points(cover: CoverDatum, backend: Backend, series_order: int = 6,
                fiber0: Fiber0Data | None = None, expected_length: int = 4) -> BasePointsReport:
    """Common zeros of the five sections.

    On the fiber over the identity these are the common zeros of the jet
    values; on chart U the saturated ideal of the cleared sections must be
    trivial.  The points other than ``(1:0:0)`` lie on the line
    ``Z2 = -Z1``, and on it ``Z0p`` satisfies a cubic which is reported as
    the minimal polynomial of ``Z0p`` in the chart ``Z1 = 1``.
    """
    fd = fiber0 or build_fiber0_data(cover, series_order)
    systems = []
    for st in STRATA:
        ring, vals, _, _ = _fiber_jets(fd, st)
        R = _restricted_ring(ring, st, JET_NAMES, False)
        gens = [_drop_zero_coordinates(v, st, JET_NAMES) for v in vals]
        systems.append(_finish(stratum_label("0", st), gens, R))
    # chart Z1 = 1 restricted to Z2 = -1: the cubic branch
    _, vals, _, _ = _fiber_jets(fd, FiberStratum(1))
    R = Ring(("Z0p", "Z2"), QQ)
    cubic_sys = _finish("0|Z1=1|Z2=-1", list(vals) + [R.gen("Z2") + 1], R)
    cache: dict = {}
    u_systems = []
    for st in STRATA:
        m = _chart(cover, st, cache)
        R = m.free_ring(with_parameter=False)
        gens = [m.relation] + [m.restrict(s) for s in m.sections]
        u_systems.append(_finish(stratum_label("U", st), gens, R, R.gen("x") - cover.alpha))

    fiber = _solve_all(systems, backend)
    lengths = _common(backend, fiber, "base-point length",
                      lambda s: s.length if s.zero_dimensional else None)
    cub = _solve_all([cubic_sys], backend)
    cubic_polys = {}
    for lab, d in cub.items():
        s = d[cubic_sys.key]
        M = multiplication_matrix(s.basis, "Z0p", s.standard)
        cubic_polys[lab] = minimal_polynomial(M, "r")
    expected = UniPoly([-2 * cover.beta, 0, 0, 1], QQ, "r")
    cubic_ok = all(f == (expected if lab == "QQ" else expected.reduce_mod(int(lab)))
                   for lab, f in cubic_polys.items())
    cubic_text = cubic_polys.get("QQ", expected if cubic_ok else None)
    ufib = _solve_all(u_systems, backend)
    u_trivial = _common(backend, ufib, "chart U base locus", lambda s: s.is_trivial())
    total = sum(v for v in lengths.values() if v is not None)
    point = {"Z0p": 1, "Z1": 0, "Z2": 0}
    vanish = all(v.evaluate(point) == 0 for v in fd.values)
    passed = (all(v is not None for v in lengths.values()) and total == expected_length and vanish
              and cubic_ok and all(u_trivial.values()))
    return BasePointsReport(lengths, total, vanish,
                            cubic_text.to_str() if cubic_text is not None else "mismatch",
                            expected.to_str(), u_trivial, passed)


# ---------------------------------------------------------------------------
# base locus smoothness

def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


@dataclass
class BaseLocusReport:
    strata: dict
    passed: bool

    def to_dict(self) -> dict:
        return {"strata": {k: ("smooth" if v else "singular") for k, v in self.strata.items()},
                "passed": self.passed}


def base_locus_systems(cover: CoverDatum, pencil: PencilSpec, fd: Fiber0Data) -> list[PolySystem]:
    from itertools import combinations
    systems = []
    cache: dict = {}
    for st in STRATA:
        m = _chart(cover, st, cache)
        F0 = combine(m.sections, pencil.gen0)
        F1 = combine(m.sections, pencil.gen1)
        C = m.relation
        vars_ = ("x", "y") + m.fiber_vars
        jac = [[f.diff(v) for v in vars_] for f in (C, F0, F1)]
        minors = [_det3([[row[j] for j in cols] for row in jac]) for cols in combinations(range(4), 3)]
        gens = [m.restrict(g) for g in [C, F0, F1] + minors]
        R = m.free_ring(with_parameter=False)
        systems.append(_finish(stratum_label("U", st), gens, R, R.gen("x") - cover.alpha))
    for st in STRATA:
        ring, vals, ders, coords = _fiber_jets(fd, st)
        F0, F1 = combine(vals, pencil.gen0), combine(vals, pencil.gen1)
        D0, D1 = combine(ders, pencil.gen0), combine(ders, pencil.gen1)
        rows = [[D0] + [F0.diff(c) for c in coords], [D1] + [F1.diff(c) for c in coords]]
        minors = [rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i] for i, j in combinations(range(3), 2)]
        gens = [_drop_zero_coordinates(g, st, JET_NAMES) for g in [F0, F1] + minors]
        R = _restricted_ring(ring, st, JET_NAMES, False)
        systems.append(_finish(stratum_label("0", st), gens, R))
    return systems


def base_locus_smoothness(cover: CoverDatum, pencil: PencilSpec, backend: Backend,
                          series_order: int = 6, fiber0: Fiber0Data | None = None) -> BaseLocusReport:
    """The base curve ``F0 = F1 = 0`` is smooth iff every singular-locus ideal is trivial."""
    fd = fiber0 or build_fiber0_data(cover, series_order)
    solved = _solve_all(base_locus_systems(cover, pencil, fd), backend)
    verdicts = _common(backend, solved, "base locus", lambda s: s.is_trivial())
    return BaseLocusReport(verdicts, all(verdicts.values()))


# ---------------------------------------------------------------------------
# critical scheme

@dataclass
class CriticalSchemeReport:
    strata: dict                 # key -> {"zero_dimensional", "length"}
    N_U: int | None
    n0: int | None
    grand_total: int | None
    passed: bool
    solved: dict = field(default_factory=dict, repr=False)    # label -> key -> SolvedSystem
    systems: dict = field(default_factory=dict, repr=False)   # key -> PolySystem

    def to_dict(self) -> dict:
        return {"strata": self.strata, "N_U": self.N_U, "n0": self.n0,
                "grand_total": self.grand_total,
                "N_U_divisible_by_3": self.N_U is not None and self.N_U % 3 == 0,
                "passed": self.passed}


def critical_systems(cover: CoverDatum, pencil: PencilSpec, fd: Fiber0Data) -> list[PolySystem]:
    systems = []
    cache: dict = {}
    for st in STRATA:
        m = _chart(cover, st, cache)
        for param in PARAMETER_STRATA:
            F = pencil_section(m.sections, pencil, param)
            gens = [m.relation, F, m.tangent_derivative(F)] + [F.diff(v) for v in m.fiber_vars]
            gens = [m.restrict(g) for g in gens]
            R = m.free_ring(with_parameter=(param == "b=1"))
            systems.append(_finish(stratum_label("U", st, param), gens, R, R.gen("x") - cover.alpha))
    for st in STRATA:
        ring, vals, ders, coords = _fiber_jets(fd, st)
        for param in PARAMETER_STRATA:
            Fv = pencil_section(vals, pencil, param)
            Fd = pencil_section(ders, pencil, param)
            gens = [Fv, Fd] + [Fv.diff(c) for c in coords]
            gens = [_drop_zero_coordinates(g, st, JET_NAMES) for g in gens]
            R = _restricted_ring(ring, st, JET_NAMES, param == "b=1")
            systems.append(_finish(stratum_label("0", st, param), gens, R))
    return systems


def critical_scheme(cover: CoverDatum, pencil: PencilSpec, backend: Backend,
                    series_order: int = 6, fiber0: Fiber0Data | None = None) -> CriticalSchemeReport:
    """Length of the scheme of pairs (point, member) with the point singular on the member."""
    fd = fiber0 or build_fiber0_data(cover, series_order)
    systems = critical_systems(cover, pencil, fd)
    solved = _solve_all(systems, backend)
    info = _common(backend, solved, "critical scheme",
                   lambda s: {"zero_dimensional": s.zero_dimensional, "length": s.length})
    ok = all(v["zero_dimensional"] for v in info.values())
    N_U = sum(v["length"] for k, v in info.items() if k.startswith("U|")) if ok else None
    n0 = sum(v["length"] for k, v in info.items() if k.startswith("0|")) if ok else None
    grand = N_U + 3 * n0 if ok else None
    passed = ok and N_U % 3 == 0
    return CriticalSchemeReport(info, N_U, n0, grand, passed, solved, {s.key: s for s in systems})


# ---------------------------------------------------------------------------
# eliminant

@dataclass
class EliminantReport:
    per_stratum: dict            # key -> degree
    degree: int | None
    squarefree: bool
    boundary_member_singular: bool
    singular_members: int | None
    polynomials: dict            # domain label -> canonical text
    witness: object
    passed: bool
    eliminants: dict = field(default_factory=dict, repr=False)   # label -> UniPoly

    def to_dict(self) -> dict:
        return {"per_stratum_degree": self.per_stratum, "degree": self.degree,
                "squarefree": self.squarefree,
                "boundary_member_singular": self.boundary_member_singular,
                "singular_members": self.singular_members,
                "eliminant": self.polynomials,
                "irreducibility": self.witness.to_dict() if self.witness else None,
                "passed": self.passed}


def parameter_eliminant(report: CriticalSchemeReport, backend: Backend,
                        irreducibility_prime_bound: int = 2000) -> EliminantReport:
    """Minimal polynomials of multiplication by ``a`` per stratum, and their lcm.

    Strata over the identity fiber repeat parameter values already seen on
    chart U (by the free translation action), so taking the lcm does not
    inflate the count.
    """
    if not report.passed and not all(v["zero_dimensional"] for v in report.strata.values()):
        raise ValueError("eliminant needs a zero-dimensional critical scheme")
    per = {}
    combined = {}
    for lab, d in report.solved.items():
        polys = []
        per[lab] = {}
        for key, s in d.items():
            if not key.endswith("|b=1") or not s.length:
                continue
            M = multiplication_matrix(s.basis, "a", s.standard)
            mp = minimal_polynomial(M, "s")
            per[lab][key] = mp.degree
            polys.append(mp)
        combined[lab] = squarefree_lcm(polys) if polys else UniPoly([1], QQ, "s")
    per_common = backend.agree("eliminant degrees", per)
    degree = backend.agree("eliminant degree", {lab: f.degree for lab, f in combined.items()})
    sqf = all(is_squarefree(f) for f in combined.values() if f.degree > 0)
    boundary = any(v["length"] for k, v in report.strata.items() if k.endswith("|a=1,b=0"))
    texts = {lab: (_primitive_text(f) if lab == "QQ" else f.to_str()) for lab, f in combined.items()}
    if backend.mode == "rational":
        witness = irreducibility_witness(combined["QQ"], irreducibility_prime_bound, backend.seed)
    else:
        witness = modular_irreducibility_witness({int(lab): f for lab, f in combined.items()}, backend.seed)
    members = degree + (1 if boundary else 0)
    return EliminantReport(per_common, degree, sqf, boundary, members, texts, witness, sqf, combined)


def _primitive_text(f: UniPoly) -> str:
    _, ints = f.primitive()
    return UniPoly(ints, QQ, f.var).to_str()


# ---------------------------------------------------------------------------
# eta map

@dataclass
class EtaMatrix:
    """Rows: section values, tangent derivatives, two fiber-coordinate derivatives."""

    key: str
    rows: list        # 4 lists of 5 MultiPoly over QQ
    coordinates: tuple

    @staticmethod
    def signed_minors(rows, mul=lambda a, b: a * b) -> list:
        """``(-m1, m2, -m3, m4, -m5)``; ``m_i`` deletes column ``i``."""
        r0, r1, r2, r3 = rows
        m2 = {}
        for a in range(5):
            for b in range(a + 1, 5):
                m2[a, b] = mul(r2[a], r3[b]) - mul(r2[b], r3[a])
        m3 = {}
        for a in range(5):
            for b in range(a + 1, 5):
                for c in range(b + 1, 5):
                    m3[a, b, c] = mul(r1[a], m2[b, c]) - mul(r1[b], m2[a, c]) + mul(r1[c], m2[a, b])
        out = []
        for skip in range(5):
            cols = [j for j in range(5) if j != skip]
            det = None
            for pos, cj in enumerate(cols):
                rest = tuple(c for c in cols if c != cj)
                term = mul(r0[cj], m3[rest])
                det = term if det is None else (det - term if pos % 2 else det + term)
            out.append(-det if skip % 2 == 0 else det)
        return out

    def evaluate(self, point: dict) -> ExactMatrix:
        vals = []
        for row in self.rows:
            for e in row:
                names = e.ring.variables
                vals.append(e.evaluate({v: point.get(v, 0) for v in names}))
        return ExactMatrix(4, 5, vals, QQ)

    def value_at(self, point: dict) -> list:
        """Canonically scaled ``eta`` at a point; raises if all minors vanish."""
        m = self.evaluate(point)
        vec = self.signed_minors(m.to_rows())
        if not any(vec):
            raise ZeroDivisionError("all 4x4 minors vanish: eta undefined at this point")
        return canonical_vector(list(vec), QQ)


def eta_matrix(cover: CoverDatum, base: str, stratum: FiberStratum,
               fiber0: Fiber0Data | None = None, series_order: int = 6,
               restrict: bool = True) -> EtaMatrix:
    """Value/derivative matrix of the five sections on chart U (``base="U"``) or the identity fiber (``"0"``)."""
    if base == "U":
        m = build_chart_U(cover, stratum)
        rows = [list(m.sections), [m.tangent_derivative(s) for s in m.sections]]
        rows += [[s.diff(v) for s in m.sections] for v in m.fiber_vars]
        if restrict:
            rows = [[m.restrict(e) for e in row] for row in rows]
        R = m.free_ring(with_parameter=False) if restrict else Ring(("x", "y") + m.fiber_vars, QQ)
        rows = [[e.to_ring(R) for e in row] for row in rows]
        return EtaMatrix(stratum_label("U", stratum), rows, R.variables)
    fd = fiber0 or build_fiber0_data(cover, series_order)
    ring, vals, ders, coords = _fiber_jets(fd, stratum)
    rows = [list(vals), list(ders)] + [[v.diff(c) for v in vals] for c in coords]
    if restrict:
        rows = [[_drop_zero_coordinates(e, stratum, JET_NAMES) for e in row] for row in rows]
    R = _restricted_ring(ring, stratum, JET_NAMES, False) if restrict else Ring(coords, QQ)
    rows = [[e.to_ring(R) for e in row] for row in rows]
    return EtaMatrix(stratum_label("0", stratum), rows, R.variables)


def eta_value(matrix: EtaMatrix, point: dict) -> list:
    return matrix.value_at(point)


@dataclass
class EtaReport:
    strata: dict
    passed: bool

    def to_dict(self) -> dict:
        return {"strata": {k: ("defined" if v else "undefined somewhere") for k, v in self.strata.items()},
                "passed": self.passed}


def eta_definedness(cover: CoverDatum, report: CriticalSchemeReport, backend: Backend,
                    series_order: int = 6, fiber0: Fiber0Data | None = None) -> EtaReport:
    """No critical point annihilates all five minors.

    For each stratum the minors are formed in the quotient ring (normal form
    after every product) and adjoined to the critical-scheme basis; the
    result must be the unit ideal.
    """
    fd = fiber0 or build_fiber0_data(cover, series_order)
    matrices = {}
    verdicts = {}
    for lab, d in report.solved.items():
        verdicts[lab] = {}
        for key, s in d.items():
            if s.is_trivial():
                verdicts[lab][key] = True
                continue
            base, fiber, _ = key.split("|")
            st = _parse_fiber(fiber)
            mk = f"{base}|{fiber}"
            if mk not in matrices:
                matrices[mk] = eta_matrix(cover, base, st, fd)
            M = matrices[mk]
            rows = [[s.normal_form(e) for e in row] for row in M.rows]
            nf = s.basis.normal_form
            minors = EtaMatrix.signed_minors(rows, lambda a, b: nf(a * b))
            verdicts[lab][key] = s.extended(minors).is_trivial()
    common = backend.agree("eta definedness", verdicts)
    return EtaReport(common, all(common.values()))


def _parse_fiber(text: str) -> FiberStratum:
    parts = text.split(",")
    names = [p.split("=")[0] for p in parts]
    idx = {n: i for i, n in enumerate(JET_NAMES)} | {n: i for i, n in enumerate(CHART_NAMES)}
    return FiberStratum(idx[names[-1]], tuple(idx[n] for n in names[:-1]))
