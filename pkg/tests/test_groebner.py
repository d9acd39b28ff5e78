import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lefpencil.arith import GF, QQ, ExactMatrix
from lefpencil.groebner import (
    GroebnerAbort, Ideal, NotZeroDimensional, buchberger, eliminate, is_trivial,
    is_zero_dimensional, minimal_polynomial, multiplication_matrix, normal_form,
    quotient_dimension, saturate, standard_monomials,
)
from lefpencil.multipoly import LEX, MultiPoly, Ring, TermOrder

RL = Ring(("x", "y"), QQ, LEX)
R2 = Ring(("x", "y"), QQ)


def test_spec_lex_basis_and_normal_form():
    x, y = RL.gens()
    G = buchberger(Ideal([x ** 2 - 1, x * y - 1]))
    assert G.basis == [x - y, y ** 2 - 1]
    assert normal_form(x ** 2, G) == RL.one
    assert all(normal_form(g, G).is_zero() for g in (x ** 2 - 1, x * y - 1))
    n, basis = quotient_dimension(G)
    assert n == 2 and basis == [(0, 0), (0, 1)]
    M = multiplication_matrix(G, "y", basis)
    assert M.to_rows() == [[0, 1], [1, 0]]
    assert minimal_polynomial(M).coeffs == (-1, 0, 1)


def test_trivial_and_principal():
    x, y = RL.gens()
    assert buchberger(Ideal([x])).basis == [x]
    for gens in ([x, x + 1], [x ** 2 + 1, x - 1], [RL.one]):
        G = buchberger(Ideal(gens))
        assert is_trivial(G) and G.basis == [RL.one]
        assert normal_form(RL.one, G).is_zero()
        assert quotient_dimension(G)[0] == 0
        assert multiplication_matrix(G, "x").rows == 0
    assert not is_trivial(buchberger(Ideal([x])))


def test_zero_dimensionality():
    x, y = R2.gens()
    assert is_zero_dimensional(buchberger(Ideal([x ** 2, y ** 3])))
    assert not is_zero_dimensional(buchberger(Ideal([x * y])))
    G = buchberger(Ideal([x ** 2, y ** 2]))
    assert quotient_dimension(G)[0] == 4
    assert set(standard_monomials(G)) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    with pytest.raises(NotZeroDimensional):
        quotient_dimension(buchberger(Ideal([x * y])))


def test_nilpotent_multiplication():
    X = Ring(("x",), QQ)
    x = X.gen("x")
    G = buchberger(Ideal([x ** 2]))
    M = multiplication_matrix(G, "x")
    assert M.to_rows() == [[0, 0], [1, 0]]
    assert minimal_polynomial(M).coeffs == (0, 0, 1)
    assert minimal_polynomial(ExactMatrix.identity(4)).coeffs == (-1, 1)


def test_saturation_examples():
    x, y = R2.gens()
    assert buchberger(saturate(Ideal([x * y]), x)).basis == [y]
    assert buchberger(saturate(Ideal([x ** 2]), x)).basis == [R2.one]
    I = Ideal([x ** 2 - y, y ** 3 - x])
    assert buchberger(saturate(I, R2.one)) == buchberger(I)


def test_saturation_removes_embedded_component():
    x, y = R2.gens()
    # (x*(x-1), x*y) = (x) cap (x-1, y); saturating by x drops the line x = 0
    G = buchberger(saturate(Ideal([x * (x - 1), x * y]), x))
    assert sorted(g.to_str() for g in G) == ["x - 1", "y"]


def test_resource_limit_aborts_with_diagnostics():
    R = Ring(("x", "y", "z"), QQ)
    x, y, z = R.gens()
    I = Ideal([x * y ** 2 - z + 1, x ** 2 * y - y * z - 2, y * z ** 2 - x * y + 3])
    with pytest.raises(GroebnerAbort) as info:
        buchberger(I, max_pairs=1)
    assert info.value.diagnostics["pairs_reduced"] == 1
    assert info.value.diagnostics["pairs_left"] > 0
    with pytest.raises(GroebnerAbort):
        buchberger(I, max_seconds=0.0)
    assert is_zero_dimensional(buchberger(I))


def test_gf_computation():
    K = Ring(("x", "y"), GF(7), LEX)
    x, y = K.gens()
    G = buchberger(Ideal([x ** 2 - 1, x * y - 1]))
    assert [g.to_str() for g in G] == ["x + 6*y", "y^2 + 6"]


# --- random systems -----------------------------------------------------------

def _rand_poly(ring, rng, deg, nterms, lo=-3, hi=3):
    terms = {}
    for _ in range(nterms):
        e = [0] * ring.nvars
        for _ in range(rng.randint(0, deg)):
            e[rng.randrange(ring.nvars)] += 1
        c = rng.randint(lo, hi)
        if c:
            terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return MultiPoly(ring, terms)


def _zero_dim_system(ring, rng):
    gens = []
    for i in range(ring.nvars):
        e = [0] * ring.nvars
        e[i] = rng.randint(1, 2 if ring.nvars > 2 else 3)
        gens.append(ring.monomial(tuple(e)) + _rand_poly(ring, rng, sum(e) - 1, 3))
    return gens


# bivariate resultant oracle: f monic in y => dim QQ[x,y]/(f,g) = deg_x Res_y(f, g)

def _upoly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _det(rows):
    n = len(rows)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [u - f * v for u, v in zip(a[r], a[c])]
    return det


def _coeffs_in_y(poly, xv):
    out = {}
    for (i, j), c in poly.term_dict.items():
        out[j] = out.get(j, 0) + Fraction(c) * xv ** i
    m = max(out, default=0)
    return [out.get(j, 0) for j in range(m + 1)]


def _sylvester_det(f, g, xv):
    a, b = _coeffs_in_y(f, xv), _coeffs_in_y(g, xv)
    m, n = len(a) - 1, len(b) - 1
    if n == 0:
        return b[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(a)) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(b)) + [0] * (size - n - 1 - i))
    return _det(rows)


def _resultant_degree(f, g, bound):
    pts = list(range(bound + 2))
    vals = [_sylvester_det(f, g, Fraction(t)) for t in pts]
    # Newton divided differences give the exact interpolant
    coef = list(vals)
    for k in range(1, len(pts)):
        for i in range(len(pts) - 1, k - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (pts[i] - pts[i - k])
    deg = max((i for i, c in enumerate(coef) if c), default=-1)
    return deg


@pytest.mark.parametrize("seed", range(50))
def test_quotient_dimension_matches_resultant(seed):
    rng = random.Random(seed)
    d1, d2 = rng.randint(1, 3), rng.randint(1, 3)
    x, y = R2.gens()
    f = y ** d1
    for j in range(d1):
        f = f + _rand_poly(Ring(("x",), QQ), rng, d1 - j, 2).to_ring(R2) * y ** j
    g = _rand_poly(R2, rng, d2, 5)
    if g.is_zero():
        g = x + y + 1
    bound = d1 * max(g.total_degree(), 1) + d1 * d1
    res_deg = _resultant_degree(f, g, bound)
    G = buchberger(Ideal([f, g]))
    if res_deg < 0:
        assert not is_zero_dimensional(G)
        return
    assert is_zero_dimensional(G)
    assert quotient_dimension(G)[0] == res_deg


@pytest.mark.parametrize("seed", range(24))
def test_minimal_polynomial_generates_elimination_ideal(seed):
    rng = random.Random(1000 + seed)
    R = Ring(("x", "y", "z")[: 2 + seed % 2], QQ)
    gens = _zero_dim_system(R, rng)
    G = buchberger(Ideal(gens))
    assert is_zero_dimensional(G)
    var = R.variables[-1]
    mp = minimal_polynomial(multiplication_matrix(G, var), "s")
    others = [v for v in R.variables if v != var]
    E = buchberger(eliminate(Ideal(gens), others))
    assert len(E.basis) == 1
    elim = E.basis[0]
    ucoef = [Fraction(0)] * (elim.degree(var) + 1)
    idx = R.index(var)
    for e, c in elim.term_dict.items():
        ucoef[e[idx]] = c
    assert list(mp.coeffs) == ucoef
    # and the eliminant lies in the ideal
    assert normal_form(elim, G).is_zero()


# --- property tests -------------------------------------------------------------

seeds = st.integers(0, 10**6)


@given(seeds)
def test_buchberger_idempotent(seed):
    rng = random.Random(seed)
    gens = [_rand_poly(R2, rng, 3, 4) for _ in range(2)]
    gens = [g for g in gens if not g.is_zero()] or [R2.gen("x")]
    G = buchberger(Ideal(gens))
    assert buchberger(Ideal(G.basis, R2)) == G
    lms = G.leading_monomials()
    for i, a in enumerate(lms):
        for j, b in enumerate(lms):
            if i != j:
                assert not all(u <= v for u, v in zip(a, b))
    assert all(g.leading_coeff() == 1 for g in G)


@given(seeds)
def test_membership_via_cofactors(seed):
    rng = random.Random(seed)
    gens = _zero_dim_system(R2, rng)
    G = buchberger(Ideal(gens))
    cof = [_rand_poly(R2, rng, 2, 3) for _ in gens]
    member = sum((c * g for c, g in zip(cof, gens)), R2.zero)
    assert normal_form(member, G).is_zero()
    std = standard_monomials(G)
    r = sum((R2.monomial(m, rng.randint(1, 5)) for m in std[:3]), R2.zero)
    assert normal_form(member + r, G) == r


@pytest.mark.parametrize("seed", range(10))
def test_modular_image_of_rational_basis(seed):
    rng = random.Random(500 + seed)
    gens = _zero_dim_system(R2, rng)
    G = buchberger(Ideal(gens))
    p = 1_000_003
    Rp = R2.with_domain(GF(p))
    Gp = buchberger(Ideal([g.to_ring(Rp) for g in gens], Rp))
    assert [g.to_ring(Rp) for g in G.basis] == Gp.basis


def test_basis_dump_format():
    x, y = RL.gens()
    G = buchberger(Ideal([x ** 2 - 1, x * y - 1]))
    assert G.to_text() == "x - y\ny^2 - 1"
