"""Generators of the Schouten bracket and volume forms on R^m.

Multivectors on R^m are functions of (x, xi).  A volume e^w dx^1..dx^m
gives a divergence, hence a generator Delta; this script compares it with
the operator -star^-1 d star built from the volume and shows that it
squares to zero.
"""

from gbv.oddpoisson import probe_basis
from gbv.schouten import del_mu, modular_vector_field, multivector, schouten_generator, vector_field_to_multivector
from gbv.supernum import parse


def show(label, value):
    print(f"  {label:<34} {value.format('xi')}")


m = 2
w = parse("x1^2 + x2", m, m)
gen = schouten_generator(m, w)

print(f"volume e^w dx1 dx2 with w = {w}")
for text in ["x1*xi1", "x1*x2*xi1 + x2^2*xi2", "x2*xi1*xi2", "x1^3"]:
    A = parse(text, m, m)
    show(f"Delta({text})", gen(A))
    assert gen(A) == del_mu(w, A)

bad = [A for A in probe_basis(m, m, 3) if gen(gen(A))]
print(f"Delta^2 vanishes on all {len(probe_basis(m, m, 3))} probe monomials: {not bad}")

# the modular vector field of a Poisson bivector is Delta applied to it
P = multivector("x2*xi1*xi2", m)
Z = vector_field_to_multivector(modular_vector_field(P, w))
show("modular field of x2 d1^d2", Z)
show("Delta(P)", gen(P))
