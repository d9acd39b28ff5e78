"""Buchberger's algorithm and zero-dimensional ideal queries.

Internally a polynomial is a pair of parallel lists ``(mons, coefs)`` sorted
descending, where each monomial is packed into one integer whose integer
order *is* the term order.  Multiplying monomials is then integer addition
(up to a constant offset), and divisibility is a guard-bit subtraction test.

Over GF(p) coefficients are residues and basis elements are kept monic.
Over QQ the engine works fraction-free on primitive integer polynomials and
only converts to monic rational polynomials on output.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce as _fold
from typing import Sequence

from .arith import QQ, ExactMatrix, PrimeField
from .multipoly import MAX_EXP, MultiPoly, Ring, RingMismatch, TermOrder

__all__ = [
    "Ideal", "GroebnerBasis", "GroebnerAbort", "NotZeroDimensional", "buchberger",
    "normal_form", "is_trivial", "saturate", "rabinowitsch", "is_zero_dimensional",
    "quotient_dimension", "standard_monomials", "multiplication_matrix",
    "minimal_polynomial", "eliminate",
]

_FIELD_BITS = 16
_VALUE_MASK = (1 << (_FIELD_BITS - 1)) - 1
_GUARD = 1 << (_FIELD_BITS - 1)


class GroebnerAbort(RuntimeError):
    """Resource limit reached; ``diagnostics`` describes the partial state."""

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


class NotZeroDimensional(ValueError):
    pass


class _Packer:
    """Packs exponent vectors into order-preserving integers.

    Fields (most significant first) are ``deg`` (a partial degree), ``exp``
    (an exponent, larger is bigger) or ``neg`` (``MAX_EXP - exponent``,
    larger is bigger).  Every order used here is expressible with these.
    """

    def __init__(self, nvars: int, order: TermOrder):
        self.nvars = nvars
        self.order = order
        if order.kind == "lex":
            layout = [("exp", i) for i in range(nvars)]
        elif order.kind == "degrevlex":
            layout = [("deg", tuple(range(nvars)))] + [("neg", i) for i in reversed(range(nvars))]
        else:
            k = order.k
            head, tail = range(k), range(k, nvars)
            layout = ([("deg", tuple(head))] + [("neg", i) for i in reversed(head)]
                      + [("deg", tuple(tail))] + [("neg", i) for i in reversed(tail)])
        nf = len(layout)
        self.layout = [(kind, arg, (nf - 1 - j) * _FIELD_BITS) for j, (kind, arg) in enumerate(layout)]
        self.offset = 0
        self.exp_mask = self.exp_guard = self.neg_mask = self.neg_guard = 0
        self.exp_shift = [0] * nvars
        self.deg_shifts = []
        for kind, arg, sh in self.layout:
            if kind == "neg":
                self.offset |= MAX_EXP << sh
                self.neg_mask |= _VALUE_MASK << sh
                self.neg_guard |= _GUARD << sh
                self.exp_shift[arg] = sh
            elif kind == "exp":
                self.exp_mask |= _VALUE_MASK << sh
                self.exp_guard |= _GUARD << sh
                self.exp_shift[arg] = sh
            else:
                self.deg_shifts.append((arg, sh))
        self.negated = order.kind != "lex"
        self.one = self.encode((0,) * nvars)

    def encode(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError("exponent vector length does not match ring")
        key = 0
        for kind, arg, sh in self.layout:
            if kind == "deg":
                v = sum(exps[i] for i in arg)
            elif kind == "exp":
                v = exps[arg]
            else:
                if exps[arg] > MAX_EXP or exps[arg] < 0:
                    raise OverflowError(f"exponent {exps[arg]} outside [0, {MAX_EXP}]")
                v = MAX_EXP - exps[arg]
            key |= v << sh
        return key

    def decode(self, key: int) -> tuple:
        out = [0] * self.nvars
        for i, sh in enumerate(self.exp_shift):
            v = (key >> sh) & _VALUE_MASK
            out[i] = MAX_EXP - v if self.negated else v
        return tuple(out)

    def mul(self, a: int, b: int) -> int:
        return a + b - self.offset

    def div(self, a: int, b: int) -> int:
        """``a / b`` assuming ``b`` divides ``a``."""
        return a - b + self.offset

    def divides(self, a: int, b: int) -> bool:
        """Does monomial ``a`` divide ``b``?"""
        if self.negated:
            return (((a & self.neg_mask) | self.neg_guard) - (b & self.neg_mask)) & self.neg_guard == self.neg_guard
        return ((b | self.exp_guard) - a) & self.exp_guard == self.exp_guard

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.decode(a), self.decode(b)
        return self.encode(tuple(max(x, y) for x, y in zip(ea, eb)))

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.decode(a), self.decode(b)
        return all(x == 0 or y == 0 for x, y in zip(ea, eb))

    def degree(self, key: int) -> int:
        return sum(self.decode(key))


# ---------------------------------------------------------------------------
# conversion helpers

def _to_internal(poly: MultiPoly, packer: _Packer, p: int | None):
    """Sorted ``(mons, coefs)``; over QQ coefficients become a primitive integer vector."""
    items = [(packer.encode(e), c) for e, c in poly.term_dict.items()]
    items.sort(reverse=True)
    mons = [m for m, _ in items]
    if p is not None:
        coefs = [c.value for _, c in items]
        return mons, coefs
    den = 1
    for _, c in items:
        den = den * c.denominator // math.gcd(den, c.denominator)
    coefs = [int(c * den) for _, c in items]
    return mons, coefs


def _from_internal(mons, coefs, packer: _Packer, ring: Ring, p: int | None) -> MultiPoly:
    dom = ring.domain
    if p is not None:
        return MultiPoly(ring, {packer.decode(m): dom(c) for m, c in zip(mons, coefs)})
    return MultiPoly(ring, {packer.decode(m): Fraction(c) for m, c in zip(mons, coefs)})


def _make_monic(coefs, p):
    inv = pow(coefs[0], -1, p)
    return [c * inv % p for c in coefs]


def _primitive(coefs):
    g = _fold(math.gcd, coefs, 0)
    if coefs[0] < 0:
        g = -g
    if g in (0, 1):
        return coefs
    return [c // g for c in coefs]


# ---------------------------------------------------------------------------
# the engine

class _Engine:
    """Mutable state of one Buchberger run (never shared between runs)."""

    def __init__(self, packer: _Packer, p: int | None):
        self.pk = packer
        self.p = p
        self.polys: list[tuple[list, list]] = []
        self.lms: list[int] = []
        self.sugar: list[int] = []
        self.active: list[int] = []
        self._cache: dict[int, int] = {}
        self.stats = {"pairs_reduced": 0, "zero_reductions": 0, "basis_added": 0,
                      "pairs_pruned": 0}

    # reducer lookup --------------------------------------------------------

    def _set_active(self, active):
        self.active = active
        self._cache = {}
        pk = self.pk
        if pk.negated:
            self._probe = [((self.lms[i] & pk.neg_mask) | pk.neg_guard, i) for i in active]
        else:
            self._probe = [(self.lms[i], i) for i in active]

    def find_reducer(self, m: int) -> int:
        cache = self._cache
        r = cache.get(m)
        if r is not None:
            return r
        pk = self.pk
        r = -1
        if pk.negated:
            mm = m & pk.neg_mask
            ng = pk.neg_guard
            for a, i in self._probe:
                if (a - mm) & ng == ng:
                    r = i
                    break
        else:
            eg = pk.exp_guard
            mg = m | eg
            for a, i in self._probe:
                if (mg - a) & eg == eg:
                    r = i
                    break
        cache[m] = r
        return r

    # reduction -------------------------------------------------------------

    def reduce(self, mons, coefs, full=True):
        if self.p is not None:
            return self._reduce_mod(mons, coefs, full)
        return self._reduce_int(mons, coefs, full)[:2]

    def _reduce_mod(self, mons, coefs, full=True):
        p = self.p
        polys = self.polys
        find = self.find_reducer
        acc = dict(zip(mons, coefs))
        heap = [-m for m in mons]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        rm, rc = [], []
        while heap:
            m = -pop(heap)
            c = acc.pop(m) % p
            if not c:
                continue
            r = find(m)
            if r < 0:
                rm.append(m)
                rc.append(c)
                if not full:
                    while heap:
                        m = -pop(heap)
                        c = acc.pop(m) % p
                        if c:
                            rm.append(m)
                            rc.append(c)
                    break
                continue
            gm, gc = polys[r]
            delta = m - gm[0]
            get = acc.get
            for k, d in zip(gm[1:], gc[1:]):
                k += delta
                v = get(k)
                if v is None:
                    acc[k] = -c * d
                    push(heap, -k)
                else:
                    acc[k] = v - c * d
        return rm, rc

    def _reduce_int(self, mons, coefs, full=True):
        polys = self.polys
        find = self.find_reducer
        acc = dict(zip(mons, coefs))
        heap = [-m for m in mons]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        rm, rc = [], []
        scale = Fraction(1)
        steps = 0
        while heap:
            m = -pop(heap)
            c = acc.pop(m)
            if not c:
                continue
            r = find(m)
            if r < 0:
                rm.append(m)
                rc.append(c)
                if not full:
                    while heap:
                        m = -pop(heap)
                        c = acc.pop(m)
                        if c:
                            rm.append(m)
                            rc.append(c)
                    break
                continue
            gm, gc = polys[r]
            a = gc[0]
            g = math.gcd(a, c)
            fa, fc = a // g, c // g
            if fa < 0:
                fa, fc = -fa, -fc
            if fa != 1:
                for k in acc:
                    acc[k] *= fa
                rc = [x * fa for x in rc]
                scale *= fa
            delta = m - gm[0]
            get = acc.get
            for k, d in zip(gm[1:], gc[1:]):
                k += delta
                v = get(k)
                if v is None:
                    acc[k] = -fc * d
                    push(heap, -k)
                else:
                    acc[k] = v - fc * d
            steps += 1
            if steps % 16 == 0:
                cont = _fold(math.gcd, rc, 0)
                cont = _fold(math.gcd, acc.values(), cont)
                if cont > 1:
                    for k in acc:
                        acc[k] //= cont
                    rc = [x // cont for x in rc]
                    scale /= cont
        if rc:
            cont = _fold(math.gcd, rc, 0)
            if rc[0] < 0:
                cont = -cont
            rc = [x // cont for x in rc]
            scale /= cont
        return rm, rc, scale

    def normalize(self, mons, coefs):
        if self.p is not None:
            return mons, _make_monic(coefs, self.p)
        return mons, _primitive(coefs)

    # pairs -----------------------------------------------------------------

    def spoly(self, i, j):
        pk = self.pk
        (fm, fc), (gm, gc) = self.polys[i], self.polys[j]
        L = pk.lcm(fm[0], gm[0])
        di, dj = L - fm[0], L - gm[0]
        acc: dict[int, int] = {}
        if self.p is not None:
            for k, c in zip(fm[1:], fc[1:]):
                acc[k + di] = c
            for k, c in zip(gm[1:], gc[1:]):
                k += dj
                acc[k] = acc.get(k, 0) - c
            p = self.p
            items = sorted(((k, v % p) for k, v in acc.items() if v % p), reverse=True)
        else:
            a, b = fc[0], gc[0]
            g = math.gcd(a, b)
            fa, fb = b // g, a // g
            for k, c in zip(fm[1:], fc[1:]):
                acc[k + di] = fa * c
            for k, c in zip(gm[1:], gc[1:]):
                k += dj
                acc[k] = acc.get(k, 0) - fb * c
            items = sorted(((k, v) for k, v in acc.items() if v), reverse=True)
        return [k for k, _ in items], [v for _, v in items]

    def add(self, mons, coefs, sugar, pairs):
        """Insert a fully reduced, normalized element and update the pair list (Gebauer-Moeller)."""
        pk = self.pk
        for m in (mons[0],):
            if max(pk.decode(m), default=0) > MAX_EXP:
                raise OverflowError("exponent overflow in basis element")
        h = len(self.polys)
        self.polys.append((mons, coefs))
        self.lms.append(mons[0])
        self.sugar.append(sugar)
        self.stats["basis_added"] += 1
        hlm = mons[0]
        divides, lcm = pk.divides, pk.lcm

        cand = []
        for g in self.active:
            L = lcm(self.lms[g], hlm)
            cand.append((L, g, L == pk.mul(self.lms[g], hlm)))
        kept = []
        for idx, (L, g, cop) in enumerate(cand):
            if cop:
                kept.append((L, g, cop))
                continue
            if any(divides(L2, L) for L2, _, _ in cand[idx + 1:]) or any(divides(L2, L) for L2, _, _ in kept):
                continue
            kept.append((L, g, cop))
        new = []
        for L, g, cop in kept:
            if cop:
                continue
            dL = pk.degree(L)
            s = max(self.sugar[g] + dL - pk.degree(self.lms[g]), sugar + dL - pk.degree(hlm))
            new.append((s, L, g, h))

        survivors = []
        for pair in pairs:
            s, L, i, j = pair
            if divides(hlm, L) and lcm(self.lms[i], hlm) != L and lcm(self.lms[j], hlm) != L:
                self.stats["pairs_pruned"] += 1
                continue
            survivors.append(pair)
        survivors.extend(new)
        heapq.heapify(survivors)

        self._set_active([g for g in self.active if not divides(hlm, self.lms[g])] + [h])
        return survivors

    def run(self, inputs, max_pairs=None, max_seconds=None):
        """Compute a minimal Groebner basis; return its element indices."""
        self._set_active([])
        pairs: list = []
        start = time.monotonic()
        for mons, coefs in sorted(inputs, key=lambda f: f[0][0]):
            sug = max(self.pk.degree(m) for m in mons)
            rm, rc = self.reduce(mons, coefs)
            if not rm:
                continue
            rm, rc = self.normalize(rm, rc)
            pairs = self.add(rm, rc, sug, pairs)
            if rm[0] == self.pk.one:
                return self.active
        while pairs:
            if max_pairs is not None and self.stats["pairs_reduced"] >= max_pairs:
                raise GroebnerAbort("pair limit reached", self.diagnostics(pairs))
            if max_seconds is not None and time.monotonic() - start > max_seconds:
                raise GroebnerAbort("time limit reached", self.diagnostics(pairs))
            s, L, i, j = heapq.heappop(pairs)
            self.stats["pairs_reduced"] += 1
            mons, coefs = self.spoly(i, j)
            if not mons:
                self.stats["zero_reductions"] += 1
                continue
            rm, rc = self.reduce(mons, coefs)
            if not rm:
                self.stats["zero_reductions"] += 1
                continue
            rm, rc = self.normalize(rm, rc)
            pairs = self.add(rm, rc, s, pairs)
            if rm[0] == self.pk.one:
                return self.active
        return self.active

    def diagnostics(self, pairs):
        return dict(self.stats, basis_size=len(self.active), pairs_left=len(pairs),
                    max_sugar=max((s for s, *_ in pairs), default=0))

    def interreduce(self, indices):
        """Reduced basis from a minimal basis; tails are reduced by the other elements."""
        order = sorted(indices, key=lambda i: self.lms[i])
        out = []
        for i in order:
            self._set_active([j for j in order if j != i])
            mons, coefs = self.polys[i]
            if self.p is None:
                rm, rc, scale = self._reduce_int(mons[1:], coefs[1:])
                out.append(([mons[0]] + rm, [Fraction(coefs[0])] + [Fraction(c) / scale for c in rc]))
            else:
                rm, rc = self._reduce_mod(mons[1:], coefs[1:])
                out.append(([mons[0]] + rm, [coefs[0]] + rc))
        out.sort(key=lambda f: f[0][0], reverse=True)
        return out


# ---------------------------------------------------------------------------
# public types

@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: tuple

    def __init__(self, generators: Sequence[MultiPoly], ring: Ring | None = None):
        gens = [g for g in generators if not g.is_zero()]
        if ring is None:
            if not generators:
                raise ValueError("ring required for an empty generator list")
            ring = generators[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatch(f"generator in {g.ring}, ideal in {ring}")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def order(self) -> TermOrder:
        return self.ring.order

    def __add__(self, other) -> "Ideal":
        gens = other.generators if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.generators + tuple(gens), self.ring)


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis, sorted by leading monomial descending."""

    ring: Ring
    basis: list
    stats: dict = field(default_factory=dict)
    _packer: _Packer = field(default=None, repr=False)
    _internal: list = field(default=None, repr=False)

    def __post_init__(self):
        if self._packer is None:
            self._packer = _Packer(self.ring.nvars, self.ring.order)
        if self._internal is None:
            p = _modulus(self.ring)
            self._internal = [_to_internal(g, self._packer, p) for g in self.basis]

    @property
    def order(self) -> TermOrder:
        return self.ring.order

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial() for g in self.basis]

    def _engine(self) -> _Engine:
        # read-only after construction; only its divisor cache grows
        eng = self.__dict__.get("_reducer")
        if eng is None:
            eng = _Engine(self._packer, _modulus(self.ring))
            eng.polys = list(self._internal)
            eng.lms = [m[0] for m, _ in eng.polys]
            eng._set_active(list(range(len(eng.polys))))
            self.__dict__["_reducer"] = eng
        return eng

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        return normal_form(f, self)

    def is_trivial(self) -> bool:
        return is_trivial(self)

    def to_text(self) -> str:
        """One polynomial per line, leading monomial descending."""
        return "\n".join(g.to_str() for g in self.basis)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and self.basis == other.basis


def _modulus(ring: Ring) -> int | None:
    if isinstance(ring.domain, PrimeField):
        return ring.domain.p
    if ring.domain == QQ:
        return None
    raise TypeError(f"unsupported coefficient domain {ring.domain!r}")


def buchberger(ideal: Ideal | Sequence[MultiPoly], *, max_pairs: int | None = None,
               max_seconds: float | None = None) -> GroebnerBasis:
    """Reduced Groebner basis under the ideal's ring order.

    Pairs are selected by sugar, ties broken by the lcm in the active order
    and then by the index pair, so output and statistics are deterministic.
    Raises :class:`GroebnerAbort` if ``max_pairs`` or ``max_seconds`` is exceeded.
    """
    if not isinstance(ideal, Ideal):
        ideal = Ideal(list(ideal))
    ring = ideal.ring
    p = _modulus(ring)
    pk = _Packer(ring.nvars, ring.order)
    eng = _Engine(pk, p)
    inputs = [_to_internal(g, pk, p) for g in ideal.generators]
    if p is not None:
        inputs = [(m, _make_monic(c, p)) for m, c in inputs]
    else:
        inputs = [(m, _primitive(c)) for m, c in inputs]
    t0 = time.monotonic()
    active = eng.run(inputs, max_pairs=max_pairs, max_seconds=max_seconds)
    if any(eng.lms[i] == pk.one for i in active):
        reduced = [([pk.one], [1])]
    else:
        reduced = eng.interreduce(active)
    basis = []
    internal = []
    for mons, coefs in reduced:
        if p is not None:
            coefs = _make_monic(coefs, p)
            basis.append(_from_internal(mons, coefs, pk, ring, p))
            internal.append((mons, coefs))
        else:
            lc = Fraction(coefs[0])
            rat = [Fraction(c) / lc for c in coefs]
            poly = MultiPoly(ring, {pk.decode(m): c for m, c in zip(mons, rat)})
            basis.append(poly)
            internal.append(_to_internal(poly, pk, None))
            internal[-1] = (internal[-1][0], _primitive(internal[-1][1]))
    stats = dict(eng.stats, seconds=round(time.monotonic() - t0, 3), basis_size=len(basis))
    return GroebnerBasis(ring, basis, stats, pk, internal)


def normal_form(f: MultiPoly, G: GroebnerBasis) -> MultiPoly:
    """Remainder of ``f`` on division by ``G``."""
    if f.ring != G.ring:
        raise RingMismatch(f"{f.ring} vs {G.ring}")
    if f.is_zero():
        return f
    pk = G._packer
    p = _modulus(G.ring)
    eng = G._engine()
    if p is not None:
        mons, coefs = _to_internal(f, pk, p)
        rm, rc = eng._reduce_mod(mons, coefs)
        return _from_internal(rm, [c % p for c in rc], pk, G.ring, p)
    items = sorted(((pk.encode(e), c) for e, c in f.term_dict.items()), reverse=True)
    den = 1
    for _, c in items:
        den = den * c.denominator // math.gcd(den, c.denominator)
    mons = [m for m, _ in items]
    coefs = [int(c * den) for _, c in items]
    rm, rc, scale = eng._reduce_int(mons, coefs)
    factor = 1 / (scale * den)
    return MultiPoly(G.ring, {pk.decode(m): Fraction(c) * factor for m, c in zip(rm, rc)})


def is_trivial(G: GroebnerBasis) -> bool:
    """True iff the basis is {1}, i.e. the ideal has no zeros over an algebraic closure."""
    return len(G.basis) == 1 and G.basis[0].is_constant()


def rabinowitsch(ideal: Ideal, f: MultiPoly, var: str = "tau") -> Ideal:
    """``I + <1 - var*f>`` in the ring with ``var`` prepended as the first variable."""
    ring = ideal.ring
    if var in ring.variables:
        raise ValueError(f"auxiliary variable {var!r} already in ring")
    big = Ring((var,) + ring.variables, ring.domain, TermOrder.block(1))
    gens = [g.to_ring(big) for g in ideal.generators]
    gens.append(big.one - big.gen(var) * f.to_ring(big))
    return Ideal(gens, big)


def eliminate(ideal: Ideal, variables: Sequence[str], **kw) -> Ideal:
    """Elimination ideal ``I  cap  k[remaining vars]`` via a block order."""
    ring = ideal.ring
    rest = [v for v in ring.variables if v not in variables]
    big = Ring(tuple(variables) + tuple(rest), ring.domain, TermOrder.block(len(variables)))
    G = buchberger(Ideal([g.to_ring(big) for g in ideal.generators], big), **kw)
    k = len(variables)
    keep = [g for g in G.basis if all(not any(e[:k]) for e in g.term_dict)]
    return Ideal([g.to_ring(ring) for g in keep], ring)


def saturate(ideal: Ideal, f: MultiPoly, **kw) -> Ideal:
    """``I : f^inf`` via an auxiliary variable ``tau`` with ``1 - tau*f``, then eliminating ``tau``."""
    if f.is_zero():
        raise ValueError("cannot saturate by zero")
    aux = "tau"
    while aux in ideal.ring.variables:
        aux += "_"
    R = rabinowitsch(ideal, f, aux)
    G = buchberger(R, **kw)
    keep = [g for g in G.basis if all(e[0] == 0 for e in g.term_dict)]
    out = Ideal([g.to_ring(ideal.ring) for g in keep], ideal.ring)
    if not out.generators:
        return Ideal([], ideal.ring)
    return Ideal(buchberger(out).basis, ideal.ring)


def is_zero_dimensional(G: GroebnerBasis) -> bool:
    """Every variable has a pure power among the leading monomials."""
    if is_trivial(G):
        return True
    n = G.ring.nvars
    found = [False] * n
    for e in G.leading_monomials():
        nz = [i for i, k in enumerate(e) if k]
        if len(nz) == 1:
            found[nz[0]] = True
    return all(found)


def standard_monomials(G: GroebnerBasis) -> list[tuple]:
    """Monomials outside the leading-term ideal, ascending in the ring order."""
    if not is_zero_dimensional(G):
        raise NotZeroDimensional("quotient is infinite-dimensional")
    if is_trivial(G):
        return []
    lms = G.leading_monomials()
    n = G.ring.nvars

    def standard(e):
        return not any(all(a <= b for a, b in zip(l, e)) for l in lms)

    start = (0,) * n
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(n):
                e2 = e[:i] + (e[i] + 1,) + e[i + 1:]
                if e2 not in seen and standard(e2):
                    seen.add(e2)
                    nxt.append(e2)
        frontier = nxt
    return sorted(seen, key=G.ring.order.key)


def quotient_dimension(G: GroebnerBasis) -> tuple[int, list[tuple]]:
    """``(dim_k k[x]/I, standard monomial basis)``."""
    basis = standard_monomials(G)
    return len(basis), basis


def _multiplication_columns(G: GroebnerBasis, f: MultiPoly, basis: list[tuple]):
    """Sparse columns ``{row: coeff}`` of multiplication by ``f`` on the quotient."""
    pk = G._packer
    p = _modulus(G.ring)
    index = {pk.encode(e): i for i, e in enumerate(basis)}
    ring = G.ring
    cols = []
    fnf = normal_form(f, G)
    for e in basis:
        prod = fnf.mul_term(e, ring.domain.one)
        r = normal_form(prod, G)
        col = {}
        for e2, c in r.term_dict.items():
            col[index[pk.encode(e2)]] = c.value if p is not None else c
        cols.append(col)
    return cols


def multiplication_matrix(G: GroebnerBasis, var, basis: list[tuple] | None = None) -> ExactMatrix:
    """Matrix of multiplication by ``var`` (a variable name or polynomial) on the quotient.

    Column ``j`` holds the coordinates of ``NF(var * b_j)`` in the standard basis.
    """
    if basis is None:
        basis = standard_monomials(G)
    f = var if isinstance(var, MultiPoly) else G.ring.gen(var)
    cols = _multiplication_columns(G, f, basis)
    n = len(basis)
    zero = 0
    entries = [cols[j].get(i, zero) for i in range(n) for j in range(n)]
    return ExactMatrix(n, n, entries, G.ring.domain)


def minimal_polynomial(m: ExactMatrix, var: str = "s"):
    """Monic minimal polynomial of a square matrix, as a :class:`~lefpencil.unipoly.UniPoly`."""
    from .unipoly import UniPoly
    if m.rows != m.cols:
        raise ValueError("matrix must be square")
    p = m.domain.p if isinstance(m.domain, PrimeField) else None
    cols = []
    for j in range(m.cols):
        col = {}
        for i in range(m.rows):
            e = m[i, j]
            if e:
                col[i] = e.value if p is not None else e
        cols.append(col)
    coeffs = sparse_minimal_polynomial(cols, m.rows, p)
    return UniPoly(coeffs, m.domain, var)


def sparse_minimal_polynomial(cols: list[dict], n: int, p: int | None) -> list:
    """Minimal polynomial (ascending coefficients, monic) of a sparse column matrix.

    Exact: the result is the lcm over all unit vectors ``e_j`` of the
    minimal polynomial of ``e_j``, built incrementally.
    """
    def norm(x):
        return x % p if p is not None else x

    def inv(x):
        return pow(x, -1, p) if p is not None else 1 / Fraction(x)

    def matvec(v):
        out: dict = {}
        for j, a in v.items():
            for i, b in cols[j].items():
                out[i] = out.get(i, 0) + a * b
        return {i: norm(x) for i, x in out.items() if norm(x)}

    def apply_poly(P, v):
        acc = {}
        for c in reversed(P):
            acc = matvec(acc)
            if c:
                for i, x in v.items():
                    acc[i] = acc.get(i, 0) + c * x
                acc = {i: norm(x) for i, x in acc.items() if norm(x)}
        return acc

    def vec_minpoly(w):
        rows = []  # (pivot, vec, poly) with vec[pivot] == 1
        u = w
        k = 0
        while True:
            vec = dict(u)
            poly = {k: 1}
            for piv, rv, rp in rows:
                c = vec.get(piv)
                if c:
                    for i, x in rv.items():
                        vec[i] = norm(vec.get(i, 0) - c * x)
                    for d, x in rp.items():
                        poly[d] = norm(poly.get(d, 0) - c * x)
                    vec = {i: x for i, x in vec.items() if x}
            if not vec:
                return [poly.get(d, 0) for d in range(k + 1)]
            piv = min(vec)
            s = inv(vec[piv])
            rows.append((piv, {i: norm(x * s) for i, x in vec.items()},
                         {d: norm(x * s) for d, x in poly.items() if x}))
            u = matvec(u)
            k += 1

    P = [1]
    for j in range(n):
        w = apply_poly(P, {j: 1})
        if not w:
            continue
        mu = vec_minpoly(w)
        P = _poly_mul(P, mu, p)
    return P


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    if p is not None:
        out = [x % p for x in out]
    return out
