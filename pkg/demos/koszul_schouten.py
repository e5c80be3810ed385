"""Differential forms of a Poisson manifold.

The Koszul-Schouten bracket on forms is generated by [d, i_P] and, for the
canonical divergence on forms, that operator is the generator the theory
predicts.  Run on the linear Poisson structure of so(3)^*.
"""

from gbv.derham import Bivector, KoszulSchoutenStructure, d, del_P, i_P, ks_generator, poisson_bracket
from gbv.oddpoisson import probe_basis
from gbv.supernum import parse

P = Bivector(3, [["0", "x3", "-x2"], ["-x3", "0", "x1"], ["x2", "-x1", "0"]])
print("P =", P, " Poisson:", P.is_poisson, " constant determinant:", P.is_nondegenerate)

ks = KoszulSchoutenStructure(P)
f, g = parse("x1*x2", 3, 3), parse("x3^2", 3, 3)
print("{f,g}        =", poisson_bracket(P, f, g))
print("[[f, dg]]    =", ks.bracket(f, d(g)))
print("[[df, dg]]   =", ks.bracket(d(f), d(g)))
print("d{f,g}       =", d(poisson_bracket(P, f, g)))

alpha = parse("x1*s2*s3 + x2^2*s1", 3, 3)
print("i_P(alpha)   =", i_P(P, alpha))
print("del_P(alpha) =", del_P(P, alpha))

gen = ks_generator(P)
probes = probe_basis(3, 3, 2)
agree = all(gen(a) == del_P(P, a) for a in probes)
square = all(not gen(gen(a)) for a in probes)
print(f"generator = del_P on {len(probes)} probes: {agree};  squares to zero: {square}")
