"""Exact scalars and exact linear algebra.

Integers are Python ints and rationals are :class:`fractions.Fraction`.
Prime-field elements are :class:`FpElem`.  A *domain* object (``QQ`` or
``GF(p)``) converts between these and knows its zero and one, so that the
polynomial and matrix code can be written once for both coefficient kinds.
"""

from __future__ import annotations

import functools
import math
import random
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "QQ", "GF", "FpElem", "RationalField", "PrimeField", "ExactMatrix",
    "rref", "exact_nullspace", "crt", "rational_reconstruct",
    "crt_and_rational_reconstruct", "ReconstructionError", "is_probable_prime",
    "modular_primes", "format_rational", "parse_rational", "canonical_vector",
]


def format_rational(q) -> str:
    """Serialize a rational as ``"p/q"`` or ``"p"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    return Fraction(str(s).strip())


class FpElem:
    """Element of the prime field Z/pZ, stored as a residue in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise ValueError(f"field mismatch: GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElem(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElem(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElem(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElem(self.value * v, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "FpElem":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return FpElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return FpElem(self.value * pow(v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElem(v, self.p) / self

    def __neg__(self):
        return FpElem(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElem(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self.value == v

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FpElem({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class RationalField:
    """The field of rational numbers; elements are ``Fraction``."""

    name = "QQ"
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, FpElem):
            raise TypeError("cannot lift a prime-field element to QQ")
        if isinstance(x, str):
            return parse_rational(x)
        return Fraction(x)

    def to_str(self, c) -> str:
        return format_rational(c)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field GF(p); elements are :class:`FpElem`."""

    def __init__(self, p: int):
        if p < 2 or not is_probable_prime(p):
            raise ValueError(f"modulus must be prime, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = FpElem(0, p)
        self.one = FpElem(1, p)

    def __call__(self, x) -> FpElem:
        if isinstance(x, FpElem):
            if x.p != self.p:
                raise ValueError(f"field mismatch: GF({x.p}) into GF({self.p})")
            return x
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return FpElem(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return FpElem(int(x), self.p)

    def to_str(self, c) -> str:
        return str(c.value)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------------------
# primes

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def modular_primes(count: int, seed: int = 0, lower: int = 2**30) -> list[int]:
    """Return ``count`` distinct primes above ``lower`` drawn from a seeded search."""
    rng = random.Random(seed)
    primes: list[int] = []
    while len(primes) < count:
        n = rng.randrange(lower, 2 * lower) | 1
        while not is_probable_prime(n):
            n += 2
        if n not in primes:
            primes.append(n)
    return primes


# ---------------------------------------------------------------------------
# CRT and rational reconstruction

class ReconstructionError(ArithmeticError):
    """Raised when no rational in the admissible box matches the residues."""


def crt(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int]:
    """Combine ``x = r_i mod m_i`` into ``(x mod M, M)``."""
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        if math.gcd(m, n) != 1:
            raise ValueError("moduli must be pairwise coprime")
        t = (r - x) * pow(m, -1, n) % n
        x += m * t
        m *= n
    return x % m, m


def rational_reconstruct(u: int, m: int) -> Fraction:
    """Find ``a/b`` with ``|a|, b <= sqrt(m/2)`` and ``a = b*u mod m``.

    Extended Euclid stopped at the half-size remainder (Wang's algorithm).
    """
    u %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, u
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        raise ReconstructionError(f"no rational reconstruction of {u} mod {m}")
    if s1 < 0:
        r1, s1 = -r1, -s1
    return Fraction(r1, s1)


def crt_and_rational_reconstruct(residues: Iterable[FpElem]) -> Fraction:
    """Lift residues modulo distinct primes to the unique small rational.

    Raises :class:`ReconstructionError` when the moduli are insufficient.
    """
    residues = list(residues)
    moduli = [r.p for r in residues]
    if len(set(moduli)) != len(moduli):
        raise ValueError("moduli must be distinct")
    x, m = crt([r.value for r in residues], moduli)
    return rational_reconstruct(x, m)


# ---------------------------------------------------------------------------
# matrices

class ExactMatrix:
    """Dense row-major matrix over ``QQ`` or ``GF(p)``.

    Entries are stored already converted into the domain.  Instances are
    treated as immutable; all operations return new matrices.
    """

    __slots__ = ("rows", "cols", "domain", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable, domain=QQ):
        self.rows = rows
        self.cols = cols
        self.domain = domain
        self.entries = tuple(domain(e) for e in entries)
        if len(self.entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], domain=QQ) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r], domain)

    @classmethod
    def identity(cls, n: int, domain=QQ) -> "ExactMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)], domain)

    @classmethod
    def zeros(cls, rows: int, cols: int, domain=QQ) -> "ExactMatrix":
        return cls(rows, cols, [0] * (rows * cols), domain)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.domain, self.entries) == (
            other.rows, other.cols, other.domain, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols} over {self.domain!r}, {self.to_rows()})"

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        zero = self.domain.zero
        out = []
        cols = [other.column(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                s = zero
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                out.append(s)
        return ExactMatrix(self.rows, other.cols, out, self.domain)

    def column(self, j: int) -> list:
        return list(self.entries[j::self.cols])

    def apply(self, v: Sequence) -> list:
        """Matrix-vector product ``m @ v``."""
        zero = self.domain.zero
        out = []
        for i in range(self.rows):
            s = zero
            for a, b in zip(self.row(i), v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           [self[i, j] for j in range(self.cols) for i in range(self.rows)],
                           self.domain)

    def rank(self) -> int:
        return rref(self)[1]


def rref(m: ExactMatrix) -> tuple[ExactMatrix, int, list[int]]:
    """Reduced row echelon form: ``(matrix, rank, pivot columns)``."""
    rows = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = m.domain.one / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    flat = [e for row in rows for e in row]
    return ExactMatrix(m.rows, m.cols, flat, m.domain), len(pivots), pivots


def canonical_vector(v: list, domain) -> list:
    """Scale so the vector is a primitive integer vector with positive leading entry.

    Over GF(p) the vector is made monic at its first nonzero entry.
    """
    if isinstance(domain, PrimeField):
        lead = next(e for e in v if e)
        inv = lead.inverse()
        return [e * inv for e in v]
    den = 1
    for e in v:
        den = den * e.denominator // math.gcd(den, e.denominator)
    ints = [int(e * den) for e in v]
    g = functools.reduce(math.gcd, ints, 0)
    ints = [i // g for i in ints]
    if next(i for i in ints if i) < 0:
        ints = [-i for i in ints]
    return [Fraction(i) for i in ints]


def exact_nullspace(m: ExactMatrix) -> list[list]:
    """Basis of ``ker(m)`` with each vector in canonical scaling."""
    red, _, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [m.domain.zero] * m.cols
        v[f] = m.domain.one
        for i, pc in enumerate(pivots):
            v[pc] = -red[i, f]
        basis.append(canonical_vector(v, m.domain))
    return basis
