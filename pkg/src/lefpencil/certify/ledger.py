"""Intersection numbers on the symmetric cube and the Euler characteristic ledger."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..arith import format_rational

__all__ = ["IntersectionClass", "D0", "G0", "EulerLedger", "euler_ledger", "TRIPLE_NUMBERS"]

# D0^3, D0^2 G0, D0 G0^2, G0^3
TRIPLE_NUMBERS = {(3, 0): 1, (2, 1): 1, (1, 2): 0, (0, 3): 0}


@dataclass(frozen=True)
class IntersectionClass:
    """A polynomial in the divisor classes ``D0`` and ``G0``.

    ``terms`` maps ``(i, j)`` to the coefficient of ``D0^i G0^j``; products
    of divisors give cycles of higher codimension, and :meth:`degree`
    evaluates a codimension-3 class.
    """

    terms: tuple = ()

    @classmethod
    def divisor(cls, cD, cG) -> "IntersectionClass":
        return cls._make({(1, 0): Fraction(cD), (0, 1): Fraction(cG)})

    @classmethod
    def _make(cls, d: dict) -> "IntersectionClass":
        return cls(tuple(sorted((k, Fraction(v)) for k, v in d.items() if v)))

    def _dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: "IntersectionClass") -> "IntersectionClass":
        d = self._dict()
        for k, v in other.terms:
            d[k] = d.get(k, 0) + v
        return self._make(d)

    def __neg__(self):
        return self._make({k: -v for k, v in self.terms})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return self._make({k: Fraction(c) * v for k, v in self.terms})

    def __mul__(self, other):
        if not isinstance(other, IntersectionClass):
            return self.__rmul__(other)
        d: dict = {}
        for (i, j), a in self.terms:
            for (k, l), b in other.terms:
                key = (i + k, j + l)
                d[key] = d.get(key, 0) + a * b
        return self._make(d)

    def codimension(self) -> int | None:
        degs = {i + j for (i, j), _ in self.terms}
        if len(degs) > 1:
            raise ValueError("mixed codimension")
        return degs.pop() if degs else None

    def degree(self) -> Fraction:
        """Degree of a codimension-3 class."""
        if self.codimension() not in (3, None):
            raise ValueError("degree is defined for codimension-3 classes only")
        return sum((v * TRIPLE_NUMBERS[k] for k, v in self.terms), Fraction(0))

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for (i, j), v in sorted(self.terms, reverse=True):
            mono = "*".join(s for s in ((f"D0^{i}" if i > 1 else "D0" if i else ""),
                                         (f"G0^{j}" if j > 1 else "G0" if j else "")) if s)
            mag = format_rational(abs(v))
            body = mono if mag == "1" and mono else f"{mag}*{mono}" if mono else mag
            out += (" - " if v < 0 else " + ") + body if out else ("-" if v < 0 else "") + body
        return out


D0 = IntersectionClass.divisor(1, 0)
G0 = IntersectionClass.divisor(0, 1)


@dataclass(frozen=True)
class EulerLedger:
    gamma: IntersectionClass
    canonical: IntersectionClass
    gamma_dot_gamma_plus_k: Fraction
    e_symmetric_cube: int
    e_gamma: Fraction
    e_total_space: Fraction
    e_pencil: int
    e_member: int
    target: Fraction

    def to_dict(self) -> dict:
        return {
            "gamma": str(self.gamma),
            "canonical_on_member": str(self.canonical),
            "gamma_dot_gamma_plus_K": format_rational(self.gamma_dot_gamma_plus_k),
            "e_symmetric_cube": self.e_symmetric_cube,
            "e_base_curve": format_rational(self.e_gamma),
            "e_total_space": format_rational(self.e_total_space),
            "e_pencil": self.e_pencil,
            "e_member": self.e_member,
            "target": format_rational(self.target),
        }


def euler_ledger(e_symmetric_cube: int = 0, e_member: int = 9, e_pencil: int = 2) -> EulerLedger:
    """Euler characteristic bookkeeping for the blow-up of the symmetric cube along a base curve.

    The base curve is ``Gamma = Z . Z`` with ``Z ~ 4 D0 - G0``; by adjunction
    on a member, ``-e(Gamma) = Gamma.(Gamma + K)`` with ``K = D0``.
    """
    member = 4 * D0 - G0
    K = D0
    # Gamma.(Gamma + K) on a member = Z . Z . (Z + K) on the threefold
    gk = (member * member * (member + K)).degree()
    e_gamma = -gk
    e_total = e_symmetric_cube + e_gamma
    target = e_pencil * e_member - e_total
    return EulerLedger(member, K, gk, e_symmetric_cube, e_gamma, e_total, e_pencil, e_member, target)
