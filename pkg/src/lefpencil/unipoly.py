"""Univariate polynomials over QQ and GF(p).

Arithmetic over GF(p) runs on plain residue lists (ascending coefficients)
through the ``gf_*`` helpers; :class:`UniPoly` is the user-facing wrapper.
Factorization mod p is the classical pipeline: squarefree decomposition,
distinct-degree splitting, then Cantor-Zassenhaus equal-degree splitting.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import GF, QQ, FpElem, PrimeField, is_probable_prime

__all__ = [
    "UniPoly", "IrreducibilityWitness", "is_squarefree", "factor_mod_p",
    "irreducibility_witness", "is_irreducible_mod_p", "squarefree_lcm",
]


# ---------------------------------------------------------------------------
# GF(p) helpers on residue lists

def gf_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def gf_add(a, b, p):
    n = max(len(a), len(b))
    return gf_trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def gf_sub(a, b, p):
    n = max(len(a), len(b))
    return gf_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return gf_trim([c % p for c in out])


def gf_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return gf_trim(q), gf_trim(a[:db])


def gf_rem(a, b, p):
    return gf_divmod(a, b, p)[1]


def gf_monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gf_gcd(a, b, p):
    a, b = gf_trim(list(a)), gf_trim(list(b))
    while b:
        a, b = b, gf_rem(a, b, p)
    return gf_monic(a, p)


def gf_deriv(a, p):
    return gf_trim([i * a[i] % p for i in range(1, len(a))])


def gf_powmod(base, e, f, p):
    result = [1]
    base = gf_rem(base, f, p)
    while e:
        if e & 1:
            result = gf_rem(gf_mul(result, base, p), f, p)
        e >>= 1
        if e:
            base = gf_rem(gf_mul(base, base, p), f, p)
    return result


def gf_compose_frobenius(h, xp, f, p):
    """Evaluate ``h(xp) mod f`` (used for repeated Frobenius powers)."""
    out: list = []
    for c in reversed(h):
        out = gf_add(gf_rem(gf_mul(out, xp, p), f, p), [c] if c else [], p)
    return out


# ---------------------------------------------------------------------------
# UniPoly

class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of ``var**i``."""

    __slots__ = ("coeffs", "domain", "var")

    def __init__(self, coeffs: Sequence, domain=QQ, var: str = "s"):
        cs = [domain(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.domain = domain
        self.var = var

    @classmethod
    def from_residues(cls, residues: Sequence[int], p: int, var="s") -> "UniPoly":
        return cls([FpElem(c, p) for c in residues], GF(p), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coeff(self):
        return self.coeffs[-1]

    def residues(self) -> list[int]:
        return [c.value for c in self.coeffs]

    @property
    def p(self) -> int | None:
        return self.domain.p if isinstance(self.domain, PrimeField) else None

    def _wrap(self, coeffs) -> "UniPoly":
        if self.p is not None:
            return UniPoly.from_residues(coeffs, self.p, self.var)
        return UniPoly(coeffs, self.domain, self.var)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.domain == other.domain and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.domain, self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.domain.zero
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)], self.domain, self.var)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.domain, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.domain, self.var)
        if self.p is not None:
            return self._wrap(gf_mul(self.residues(), other.residues(), self.p))
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self.domain, self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return UniPoly(out, self.domain, self.var)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if self.p is not None:
            q, r = gf_divmod(self.residues(), other.residues(), self.p)
            return self._wrap(q), self._wrap(r)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        q = [Fraction(0)] * max(len(a) - db, 0)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] / b[-1]
            if c:
                q[i - db] = c
                for j in range(db + 1):
                    a[i - db + j] -= c * b[j]
        return UniPoly(q, self.domain, self.var), UniPoly(a[:db], self.domain, self.var)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (self.domain.one / self.leading_coeff)

    def derivative(self) -> "UniPoly":
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:], self.domain, self.var)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        if self.p is not None:
            return self._wrap(gf_gcd(self.residues(), other.residues(), self.p))
        a, b = self, other
        while not b.is_zero():
            a, b = b, (a % b).monic()
        return a.monic()

    def lcm(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly([], self.domain, self.var)
        return ((self * other) // self.gcd(other)).monic()

    def evaluate(self, x):
        acc = self.domain.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reduce_mod(self, p: int) -> "UniPoly":
        return UniPoly([GF(p)(c) for c in self.coeffs], GF(p), self.var)

    def primitive(self) -> tuple[Fraction, list[int]]:
        """``(content, integer coefficients)`` with positive leading coefficient."""
        if self.p is not None:
            raise TypeError("primitive part is only defined over QQ")
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints) if ints else 1
        if ints and ints[-1] < 0:
            g = -g
        return Fraction(g, den), [i // g for i in ints]

    def to_str(self) -> str:
        """Multipoly text grammar in the single variable ``var``, descending."""
        if not self.coeffs:
            return "0"
        parts = []
        modular = self.p is not None
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if modular:
                neg, mag = False, str(c.value)
            else:
                neg, mag = c < 0, self.domain.to_str(abs(c))
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            body = mag if not mono else (mono if mag == "1" else f"{mag}*{mono}")
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    @classmethod
    def parse(cls, text: str, domain=QQ, var: str = "s") -> "UniPoly":
        from .multipoly import Ring
        poly = Ring((var,), domain).parse(text)
        deg = max((e[0] for e in poly.term_dict), default=-1)
        coeffs = [poly.term_dict.get((i,), domain.zero) for i in range(deg + 1)]
        return cls(coeffs, domain, var)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"UniPoly({self.to_str()!r} over {self.domain!r})"


# ---------------------------------------------------------------------------
# squarefreeness and factorization

def is_squarefree(f: UniPoly) -> bool:
    """True iff ``gcd(f, f')`` is constant."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    return f.gcd(f.derivative()).degree == 0


def _gf_sqf_decomposition(f: list, p: int) -> list[tuple[list, int]]:
    """Squarefree decomposition of a monic polynomial over GF(p)."""
    out = []
    fp = gf_deriv(f, p)
    if not fp:
        # f is a p-th power: f(x) = g(x^p)
        g = [f[i] for i in range(0, len(f), p)]
        return [(h, m * p) for h, m in _gf_sqf_decomposition(g, p)]
    c = gf_gcd(f, fp, p)
    w = gf_divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gf_gcd(w, c, p)
        z = gf_divmod(w, y, p)[0]
        if len(z) > 1:
            out.append((gf_monic(z, p), i))
        i += 1
        w = y
        c = gf_divmod(c, y, p)[0]
    if len(c) > 1:
        g = [c[i] for i in range(0, len(c), p)]
        out.extend((h, m * p) for h, m in _gf_sqf_decomposition(g, p))
    return out


def _gf_ddf(f: list, p: int) -> list[tuple[list, int]]:
    """Distinct-degree factorization of a monic squarefree polynomial."""
    out = []
    x = [0, 1]
    h = x
    i = 1
    f = list(f)
    while len(f) - 1 >= 2 * i:
        h = gf_powmod(h, p, f, p)
        g = gf_gcd(f, gf_sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, i))
            f = gf_divmod(f, g, p)[0]
            h = gf_rem(h, f, p)
        i += 1
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _gf_edf(f: list, d: int, p: int, rng: random.Random) -> list[list]:
    """Cantor-Zassenhaus equal-degree splitting (p odd)."""
    n = len(f) - 1
    if n == d:
        return [f]
    e = (p ** d - 1) // 2
    while True:
        a = gf_trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        g = gf_gcd(f, a, p)
        if 1 < len(g) < len(f):
            break
        b = gf_sub(gf_powmod(a, e, f, p), [1], p)
        g = gf_gcd(f, b, p)
        if 1 < len(g) < len(f):
            break
    return _gf_edf(g, d, p, rng) + _gf_edf(gf_divmod(f, g, p)[0], d, p, rng)


def factor_mod_p(f: UniPoly, seed: int = 0) -> list[tuple[UniPoly, int]]:
    """Complete factorization of ``f`` over GF(p) into monic irreducibles with multiplicity.

    Factors are sorted by (degree, coefficients) for reproducible output.
    """
    p = f.p
    if p is None:
        raise TypeError("factor_mod_p needs a polynomial over GF(p)")
    if p == 2:
        raise ValueError("p must be odd")
    if f.is_zero():
        raise ValueError("zero polynomial")
    rng = random.Random(seed)
    mon = gf_monic(f.residues(), p)
    out = []
    for sq, mult in _gf_sqf_decomposition(mon, p):
        for g, d in _gf_ddf(sq, p):
            for h in _gf_edf(g, d, p, rng):
                out.append((h, mult))
    out.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    return [(UniPoly.from_residues(h, p, f.var), m) for h, m in out]


def is_irreducible_mod_p(f: UniPoly) -> bool:
    """Rabin's test over GF(p)."""
    p = f.p
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    g = gf_monic(f.residues(), p)
    x = [0, 1]
    powers = {}
    h = x
    for k in range(1, n + 1):
        h = gf_powmod(h, p, g, p)
        powers[k] = h
    if gf_sub(powers[n], x, p):
        return False
    for q in _prime_factors(n):
        if len(gf_gcd(g, gf_sub(powers[n // q], x, p), p)) > 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass
class IrreducibilityWitness:
    prime: int | None
    pattern: list = field(default_factory=list)
    verdict: str = "inconclusive"
    scanned: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"prime": self.prime, "pattern": self.pattern, "verdict": self.verdict,
                "primes_scanned": len(self.scanned)}


def _degree_pattern(f: UniPoly, seed: int) -> list[int]:
    return sorted(h.degree for h, m in factor_mod_p(f, seed) for _ in range(m))


def irreducibility_witness(f: UniPoly, prime_bound: int, seed: int = 0) -> IrreducibilityWitness:
    """Scan odd primes below ``prime_bound`` for one where ``f`` stays irreducible.

    A prime is admissible if it keeps the degree and keeps ``f`` squarefree.
    """
    if f.p is not None:
        raise TypeError("irreducibility_witness needs a polynomial over QQ")
    _, ints = f.primitive()
    n = len(ints) - 1
    if not is_squarefree(f):
        return IrreducibilityWitness(None, [], "inconclusive")
    scanned = {}
    for p in range(3, prime_bound):
        if not is_probable_prime(p) or ints[-1] % p == 0:
            continue
        fp = UniPoly.from_residues([c % p for c in ints], p, f.var)
        if not is_squarefree(fp):
            continue
        if n == 1 or is_irreducible_mod_p(fp):
            scanned[p] = [n]
            return IrreducibilityWitness(p, [n], "irreducible-certified", scanned)
        scanned[p] = _degree_pattern(fp, seed)
    return IrreducibilityWitness(None, [], "squarefree-only", scanned)


def modular_irreducibility_witness(images: dict[int, UniPoly], seed: int = 0) -> IrreducibilityWitness:
    """Witness search among already-reduced images ``{p: f mod p}`` (modular mode)."""
    scanned = {}
    for p in sorted(images):
        fp = images[p]
        if not is_squarefree(fp):
            continue
        if fp.degree == 1 or is_irreducible_mod_p(fp):
            scanned[p] = [fp.degree]
            return IrreducibilityWitness(p, [fp.degree], "irreducible-certified", scanned)
        scanned[p] = _degree_pattern(fp, seed)
    verdict = "squarefree-only" if scanned else "inconclusive"
    return IrreducibilityWitness(None, [], verdict, scanned)


def squarefree_lcm(polys: Sequence[UniPoly]) -> UniPoly:
    """Monic lcm of the given polynomials."""
    it = iter(polys)
    acc = next(it).monic()
    for f in it:
        acc = acc.lcm(f)
    return acc
