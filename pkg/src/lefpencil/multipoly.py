"""Sparse multivariate polynomials over QQ or GF(p).

A :class:`Ring` fixes the variables, the coefficient domain and the active
:class:`TermOrder`.  A :class:`MultiPoly` is a mapping from exponent tuples
to nonzero coefficients; its canonical term list is sorted descending in
the ring's order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .arith import QQ, FpElem, PrimeField

__all__ = ["TermOrder", "LEX", "DEGREVLEX", "Ring", "MultiPoly", "MAX_EXP",
           "RingMismatch", "ExponentOverflow", "NotDivisible"]

MAX_EXP = 1023


class RingMismatch(ValueError):
    pass


class ExponentOverflow(OverflowError):
    pass


class NotDivisible(ArithmeticError):
    """Raised by :meth:`MultiPoly.exact_div` on a nonzero remainder."""


@dataclass(frozen=True)
class TermOrder:
    """Monomial order: ``lex``, ``degrevlex``, or ``block`` with ``k`` eliminated variables.

    ``block(k)`` compares the first ``k`` exponents by degrevlex and breaks
    ties with degrevlex on the remaining ones.
    """

    kind: str = "degrevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "block"):
            raise ValueError(f"unknown term order {self.kind!r}")

    @classmethod
    def block(cls, k: int) -> "TermOrder":
        return cls("block", k)

    def key(self, exps: tuple) -> tuple:
        """Sort key: ``a > b`` in the order iff ``key(a) > key(b)``."""
        if self.kind == "lex":
            return exps
        if self.kind == "degrevlex":
            return (sum(exps), tuple(-e for e in reversed(exps)))
        head, tail = exps[:self.k], exps[self.k:]
        return (sum(head), tuple(-e for e in reversed(head)),
                sum(tail), tuple(-e for e in reversed(tail)))

    def __str__(self):
        return f"block({self.k})" if self.kind == "block" else self.kind


LEX = TermOrder("lex")
DEGREVLEX = TermOrder("degrevlex")


@dataclass(frozen=True)
class Ring:
    variables: tuple
    domain: object = QQ
    order: TermOrder = DEGREVLEX

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")
        if self.order.kind == "block" and not 0 <= self.order.k <= len(self.variables):
            raise ValueError("block size out of range")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, var) -> int:
        if isinstance(var, int):
            return var
        try:
            return self.variables.index(var)
        except ValueError:
            raise KeyError(f"unknown variable {var!r} in ring {self.variables}") from None

    def gen(self, var) -> "MultiPoly":
        i = self.index(var)
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): self.domain.one})

    def gens(self) -> list["MultiPoly"]:
        return [self.gen(v) for v in self.variables]

    def const(self, c) -> "MultiPoly":
        c = self.domain(c)
        return MultiPoly(self, {(0,) * self.nvars: c} if c else {})

    @property
    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    @property
    def one(self) -> "MultiPoly":
        return self.const(1)

    def monomial(self, exps, coeff=1) -> "MultiPoly":
        return MultiPoly(self, {tuple(exps): self.domain(coeff)})

    def with_order(self, order: TermOrder) -> "Ring":
        return Ring(self.variables, self.domain, order)

    def with_domain(self, domain) -> "Ring":
        return Ring(self.variables, domain, self.order)

    def with_variables(self, variables, order: TermOrder | None = None) -> "Ring":
        return Ring(tuple(variables), self.domain, order or self.order)

    def __call__(self, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x.to_ring(self)
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)

    def parse(self, text: str) -> "MultiPoly":
        return _Parser(self, text).parse()

    def __str__(self):
        return f"{self.domain!r}[{', '.join(self.variables)}] ({self.order})"


class MultiPoly:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "_terms", "_sorted")

    def __init__(self, ring: Ring, terms: Mapping[tuple, object]):
        self.ring = ring
        self._terms = {e: c for e, c in terms.items() if c}
        self._sorted = None

    # -- structure ---------------------------------------------------------

    @property
    def term_dict(self) -> dict:
        return self._terms

    def terms(self) -> list[tuple[tuple, object]]:
        """Terms sorted descending in the ring's order."""
        if self._sorted is None:
            key = self.ring.order.key
            self._sorted = sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)
        return self._sorted

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_coeff(self):
        return self._terms.get((0,) * self.ring.nvars, self.ring.domain.zero)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree(self, var) -> int:
        i = self.ring.index(var)
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def variables_used(self) -> list[str]:
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return [self.ring.variables[i] for i in sorted(used)]

    def leading_term(self, order: TermOrder | None = None) -> tuple[tuple, object]:
        """``(exponents, coefficient)`` of the largest term."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = (order or self.ring.order).key
        e = max(self._terms, key=key)
        return e, self._terms[e]

    def leading_monomial(self, order: TermOrder | None = None) -> tuple:
        return self.leading_term(order)[0]

    def leading_coeff(self, order: TermOrder | None = None):
        return self.leading_term(order)[1]

    def monic(self) -> "MultiPoly":
        lc = self.leading_coeff()
        return self * (self.ring.domain.one / lc)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other
        if isinstance(other, (int, Fraction, FpElem)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            out[e] = c if v is None else v + c
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction, FpElem)):
                c = self.ring.domain(other)
                return MultiPoly(self.ring, {e: v * c for e, v in self._terms.items()})
            return NotImplemented
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        res = MultiPoly(self.ring, out)
        res._check_exponents()
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _check_exponents(self):
        for e in self._terms:
            if max(e, default=0) > MAX_EXP:
                raise ExponentOverflow(f"exponent above {MAX_EXP} in {e}")

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self._terms == other._terms
        o = self._coerce(other) if other is not None else None
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def mul_term(self, exps: tuple, coeff) -> "MultiPoly":
        return MultiPoly(self.ring, {tuple(a + b for a, b in zip(e, exps)): c * coeff
                                     for e, c in self._terms.items()})

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Quotient ``self / divisor``; raises :class:`NotDivisible` on a nonzero remainder."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = divisor.leading_term()
        key = self.ring.order.key
        rem = dict(self._terms)
        quot: dict = {}
        while rem:
            e = max(rem, key=key)
            c = rem[e]
            shift = tuple(a - b for a, b in zip(e, lm))
            if min(shift) < 0:
                raise NotDivisible("polynomial is not divisible by the divisor")
            q = c / lc
            quot[shift] = q
            for e2, c2 in divisor._terms.items():
                k = tuple(a + b for a, b in zip(e2, shift))
                v = rem.get(k, 0) - q * c2
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return MultiPoly(self.ring, quot)

    # -- calculus and substitution -------------------------------------------

    def diff(self, var) -> "MultiPoly":
        """Formal partial derivative."""
        i = self.ring.index(var)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = c * e[i]
        return MultiPoly(self.ring, out)

    def substitute(self, assignments: Mapping, ring: Ring | None = None) -> "MultiPoly":
        """Simultaneous substitution ``var -> polynomial``.

        The result lives in ``ring`` (default: this ring).  Variables without
        an assignment are mapped to the variable of the same name in the
        target ring.
        """
        target = ring or self.ring
        images = []
        for v in self.ring.variables:
            if v in assignments:
                img = assignments[v]
                images.append(img if isinstance(img, MultiPoly) else target.const(img))
            else:
                images.append(target.gen(v))
        for i, img in enumerate(images):
            if img.ring != target:
                raise RingMismatch(f"image of {self.ring.variables[i]} lives in {img.ring}")
        cache: list[dict] = [{0: target.one, 1: images[i]} for i in range(self.ring.nvars)]

        def power(i, k):
            c = cache[i]
            if k not in c:
                c[k] = power(i, k - 1) * images[i]
            return c[k]

        out: dict = {}
        for e, c in self._terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for e2, c2 in term._terms.items():
                v = out.get(e2)
                out[e2] = c2 if v is None else v + c2
        return MultiPoly(target, out)

    def evaluate(self, values: Mapping):
        """Evaluate with every variable assigned a scalar."""
        dom = self.ring.domain
        vals = [dom(values[v]) for v in self.ring.variables]
        total = dom.zero
        for e, c in self._terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    def to_ring(self, ring: Ring) -> "MultiPoly":
        """Re-embed by variable name into ``ring``; coefficients are converted."""
        idx = [ring.variables.index(v) if v in ring.variables else -1 for v in self.ring.variables]
        out = {}
        for e, c in self._terms.items():
            e2 = [0] * ring.nvars
            for i, k in zip(idx, e):
                if i >= 0:
                    e2[i] = k
                elif k:
                    raise RingMismatch(f"variable missing from target ring {ring.variables}")
            out[tuple(e2)] = ring.domain(c)
        return MultiPoly(ring, out)

    def reduce_mod(self, p: int) -> "MultiPoly":
        from .arith import GF
        return self.to_ring(self.ring.with_domain(GF(p)))

    def coefficients_in(self, var) -> dict[int, "MultiPoly"]:
        """Split as ``sum_k var^k * c_k`` with ``c_k`` free of ``var``."""
        i = self.ring.index(var)
        out: dict[int, dict] = {}
        for e, c in self._terms.items():
            out.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: MultiPoly(self.ring, t) for k, t in out.items()}

    # -- text ----------------------------------------------------------------

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.to_str()!r})"

    def to_str(self) -> str:
        if not self._terms:
            return "0"
        dom = self.ring.domain
        modular = isinstance(dom, PrimeField)
        parts = []
        for e, c in self.terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}"
                            for v, k in zip(self.ring.variables, e) if k)
            if modular:
                neg, mag = False, str(c.value)
            else:
                neg, mag = c < 0, dom.to_str(abs(c))
            if not mono:
                body = mag
            elif mag == "1":
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive-descent parser for the canonical text grammar.

    Accepts ``+ - * / ^`` (``**`` as a synonym), parentheses, integer
    literals and variable names.  ``/`` is only allowed by a nonzero constant.
    """

    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
            num, name, op = m.groups()
            self.tokens.append(("num", int(num)) if num else ("name", name) if name else ("op", op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> MultiPoly:
        if not self.tokens:
            raise ValueError("empty polynomial text")
        p = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing tokens in polynomial text: {self.tokens[self.i:]}")
        return p

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while True:
            kind, val = self.peek()
            if kind == "op" and val in ("+", "-"):
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                d = self.factor()
                if not d.is_constant() or d.is_zero():
                    raise ValueError("division only by nonzero constants")
                p = p * (self.ring.domain.one / d.constant_coeff())
            else:
                return p

    def factor(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val in ("^", "**"):
            self.take()
            kind, n = self.take()
            if kind != "num":
                raise ValueError("exponent must be an integer literal")
            return base ** n
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "name":
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return p
        if kind == "op" and val == "-":
            return -self.factor()
        raise ValueError(f"unexpected token {val!r}")


def poly_from_terms(ring: Ring, terms: Iterable[tuple[tuple, object]]) -> MultiPoly:
    out: dict = {}
    for e, c in terms:
        c = ring.domain(c)
        v = out.get(e)
        out[e] = c if v is None else v + c
    return MultiPoly(ring, out)
