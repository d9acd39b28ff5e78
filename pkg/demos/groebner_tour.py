"""A short tour of the Groebner engine on small systems.

Run:  python demos/groebner_tour.py
"""

from lefpencil.arith import GF, QQ
from lefpencil.groebner import (
    Ideal, buchberger, minimal_polynomial, multiplication_matrix, quotient_dimension, saturate,
)
from lefpencil.multipoly import LEX, Ring
from lefpencil.unipoly import factor_mod_p, irreducibility_witness

R = Ring(("x", "y"), QQ)
x, y = R.gens()
I = Ideal([x ** 2 + y ** 2 - 5, x * y - 2])
G = buchberger(I)
print("basis (degrevlex):")
print(G.to_text())
n, std = quotient_dimension(G)
print("quotient dimension:", n, " standard monomials:", std)

mp = minimal_polynomial(multiplication_matrix(G, "x", std), "s")
print("minimal polynomial of x:", mp)
print("  factored mod 101:", [(str(f), m) for f, m in factor_mod_p(mp.reduce_mod(101))])

# removing a component: (x*y) has the axes as components, saturating by x drops x = 0
print("saturate <x*y> by x:", buchberger(saturate(Ideal([x * y]), x)).to_text())

Rl = Ring(("x", "y"), GF(10007), LEX)
xl, yl = Rl.gens()
print("lex basis mod 10007:")
print(buchberger(Ideal([xl ** 2 + yl ** 2 - 5, xl * yl - 2])).to_text())

w = irreducibility_witness(mp, 100)
print("irreducibility scan of the minimal polynomial:", w.to_dict())
