import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lefpencil.arith import GF, QQ
from lefpencil.unipoly import (
    UniPoly, factor_mod_p, irreducibility_witness, is_irreducible_mod_p, is_squarefree,
    squarefree_lcm,
)
from lefpencil.unipoly import modular_irreducibility_witness


def up(text, p=None):
    return UniPoly.parse(text, GF(p) if p else QQ)


def _brute_irreducible(res, p):
    """Trial division by every monic polynomial of degree 1..n//2 over GF(p)."""
    n = len(res) - 1
    f = UniPoly.from_residues(res, p)
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = UniPoly.from_residues(list(tail) + [1], p)
            if (f % g).is_zero():
                return False
    return True


def test_spec_examples():
    assert is_squarefree(up("s^2 - 1"))
    assert not is_squarefree(up("s^3 - 3*s + 2"))  # (s - 1)^2 (s + 2)
    assert is_irreducible_mod_p(up("s^2 + 1", 7))
    fac = factor_mod_p(up("s^2 + 1", 5))
    assert [(f.to_str(), m) for f, m in fac] == [("s + 2", 1), ("s + 3", 1)]
    # -1 is a non-residue mod 3 and mod 7; the scan stops at the first one
    w = irreducibility_witness(up("s^2 + 1"), 10)
    assert (w.prime, w.verdict, w.pattern) == (3, "irreducible-certified", [2])
    assert is_irreducible_mod_p(up("s^2 + 1", 3))
    w = irreducibility_witness(up("s^4 + 1"), 200)
    assert w.verdict == "squarefree-only" and w.prime is None
    assert all(sum(pat) == 4 and max(pat) <= 2 for pat in w.scanned.values())
    w = irreducibility_witness(up("s - 1"), 10)
    assert (w.prime, w.verdict) == (3, "irreducible-certified")


def test_witness_inconclusive_without_squarefree():
    assert irreducibility_witness(up("(s - 1)^2"), 50).verdict == "inconclusive"


def test_witness_skips_primes_dividing_leading_coefficient():
    # 3*s^2 + 1 would lose its degree mod 3
    w = irreducibility_witness(up("3*s^2 + 1"), 50)
    assert w.prime not in (3,) and w.verdict == "irreducible-certified"
    assert 3 not in w.scanned


def test_modular_witness():
    images = {5: up("s^2 + 1", 5), 7: up("s^2 + 1", 7)}
    w = modular_irreducibility_witness(images)
    assert w.prime == 7 and w.scanned[5] == [1, 1]
    w = modular_irreducibility_witness({5: up("s^2 + 1", 5)})
    assert w.verdict == "squarefree-only"
    assert modular_irreducibility_witness({5: up("(s+1)^2", 5)}).verdict == "inconclusive"


def test_repeated_factors_and_text():
    f = up("(s + 1)^3 * (s^2 + 1) * s", 11)
    fac = factor_mod_p(f)
    assert [(g.to_str(), m) for g, m in fac] == [("s", 1), ("s + 1", 3), ("s^2 + 1", 1)]
    assert up("-1/2*s^3 + s - 7").to_str() == "-1/2*s^3 + s - 7"
    assert UniPoly([]).to_str() == "0"


def test_arithmetic_and_primitive():
    f, g = up("s^2 - 1"), up("s + 1")
    q, r = divmod(f, g)
    assert q == up("s - 1") and r.is_zero()
    assert f.gcd(up("s^2 + 2*s + 1")) == g
    assert f.lcm(g) == f
    assert up("2/3*s - 4/9").primitive() == (Fraction(2, 9), [-2, 3])
    assert up("-2*s + 4").primitive() == (Fraction(-2), [-2, 1])
    assert f.evaluate(Fraction(3)) == 8
    assert squarefree_lcm([up("2*s - 2"), up("s^2 - 1")]) == f
    with pytest.raises(TypeError):
        factor_mod_p(f)
    with pytest.raises(TypeError):
        irreducibility_witness(up("s", 5), 10)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_all_small_polynomials_against_trial_division(p):
    for n in range(1, 5 if p < 7 else 4):
        for tail in itertools.product(range(p), repeat=n):
            res = list(tail) + [1]
            expected = _brute_irreducible(res, p)
            assert is_irreducible_mod_p(UniPoly.from_residues(res, p)) == expected, res
            fac = factor_mod_p(UniPoly.from_residues(res, p))
            assert (len(fac) == 1 and fac[0][1] == 1) == expected


def _product(fac, p):
    acc = UniPoly.from_residues([1], p)
    for g, m in fac:
        for _ in range(m):
            acc = acc * g
    return acc


primes = st.sampled_from([3, 5, 7, 11, 13, 101, 1009, 1_000_003])


@given(primes, st.lists(st.integers(0, 10**9), min_size=2, max_size=14), st.integers(0, 99))
def test_factorization_reproduces_input(p, raw, seed):
    res = [c % p for c in raw]
    res[-1] = res[-1] or 1
    f = UniPoly.from_residues(res, p)
    fac = factor_mod_p(f, seed=seed)
    assert _product(fac, p) == f.monic()
    for g, m in fac:
        assert g.leading_coeff.value == 1 and m >= 1
        assert is_irreducible_mod_p(g)
    assert factor_mod_p(f, seed=seed + 1) == fac


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=9), st.integers(0, 3))
def test_squarefree_agrees_with_good_reduction(raw, k):
    raw[-1] = raw[-1] or 1
    f = UniPoly(raw)
    if k:
        f = f * UniPoly([k, 1]) * UniPoly([k, 1])
    sqf = is_squarefree(f)
    for p in (1_000_003, 1_000_033):
        fp = f.reduce_mod(p)
        fac = factor_mod_p(fp)
        # discriminants of these tiny inputs are far below p, so p is a good prime
        assert sqf == all(m == 1 for _, m in fac)


@given(st.lists(st.integers(-20, 20), min_size=3, max_size=8))
def test_witness_implies_no_rational_factor_of_low_degree(raw):
    raw[-1] = raw[-1] or 1
    f = UniPoly(raw)
    if not is_squarefree(f):
        return
    w = irreducibility_witness(f, 60)
    if w.verdict != "irreducible-certified":
        return
    # rational roots would survive every reduction: check the rational root theorem
    _, ints = f.primitive()
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        assert f.degree == 1
        return
    for num in (d for d in range(1, abs(a0) + 1) if a0 % d == 0):
        for den in (d for d in range(1, abs(an) + 1) if an % d == 0):
            for sgn in (1, -1):
                assert f.evaluate(Fraction(sgn * num, den)) != 0 or f.degree == 1
