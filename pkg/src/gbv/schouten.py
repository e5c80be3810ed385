"""Multivectors on R^m as functions on R^{m|m} with odd coordinates xi_1..xi_m.

A vector field ``sum X^i d/dx^i`` is the element ``sum X^i xi_i``.  The
Schouten bracket is the canonical odd bracket with ``[[xi_i, x^j]] = delta``;
on two vector fields it is their Lie bracket and ``[[X, f]] = X(f)``.

Forms live in the same algebra with ``s^i`` read as ``dx^i``; the star map
contracts multivectors into the flat volume ``dx^1 ... dx^m``.
"""

from __future__ import annotations

from .dervec import GradedVectorField, de_rham_field
from .divergence import CoordinateDivergence, DivergenceOp
from .oddpoisson import Generator, OddPoissonStructure
from .supernum import DimensionError, ParityError, Poly, SuperFunction, parse

__all__ = [
    "SchoutenStructure",
    "schouten_bracket",
    "multivector",
    "volume_weight",
    "schouten_generator",
    "star0",
    "star0_inv",
    "del_mu",
    "modular_vector_field",
    "vector_field_to_multivector",
    "multivector_to_vector_field",
]


class SchoutenStructure(OddPoissonStructure):
    """Schouten bracket on R^{m|m}.

    For homogeneous ``f``::

        [[f, g]] = (-1)^{|f|+1} sum_i d_xi_i f . d_x^i g  -  sum_i d_x^i f . d_xi_i g

    with left odd derivatives.
    """

    kind = "schouten"
    nondegenerate = True

    def __init__(self, m: int):
        super().__init__(m, m)

    def _bracket(self, f, g, pf, pg):
        out = SuperFunction.zero(self.m, self.m)
        for i in range(self.m):
            a = f.diff_s(i)
            if a:
                b = g.diff_x(i)
                if b:
                    out = out + a * b if pf else out - a * b
            a = f.diff_x(i)
            if a:
                b = g.diff_s(i)
                if b:
                    out = out - a * b
        return out

    def hamiltonian(self, f):
        p = f.parity
        if p is None:
            raise ParityError(f"hamiltonian of a non-homogeneous element {f}")
        even = [f.diff_s(i) if p else -f.diff_s(i) for i in range(self.m)]
        odd = [-f.diff_x(i) for i in range(self.m)]
        return GradedVectorField._raw(self.m, self.m, even, odd, p ^ 1)

    def __repr__(self):
        return f"SchoutenStructure({self.m})"


def schouten_bracket(A: SuperFunction, B: SuperFunction) -> SuperFunction:
    if A.dims != B.dims or A.m != A.n:
        raise DimensionError("Schouten bracket needs two multivectors on the same R^m")
    return SchoutenStructure(A.m).bracket(A, B)


def multivector(text: str, m: int) -> SuperFunction:
    """Parse a multivector; ``xi<j>`` and ``s<j>`` both name the odd coordinates."""
    return parse(text, m, m)


def volume_weight(w, m: int) -> SuperFunction:
    """Normalise a weight ``w`` (text, Poly or SuperFunction) for ``mu = e^w dx^1...dx^m``."""
    if isinstance(w, str):
        w = parse(w, m, m)
    elif isinstance(w, Poly):
        if w.nvars != m:
            raise DimensionError("weight polynomial has the wrong number of variables")
        w = SuperFunction.from_poly(w, m)
    elif isinstance(w, SuperFunction):
        if w.m != m:
            raise DimensionError("weight lives on a different base")
        w = w.with_dims(m, m)
    else:
        raise TypeError(f"cannot use {type(w).__name__} as a volume weight")
    if w.odd_degrees - {0}:
        raise ParityError(f"volume weight must be a function on the base, got {w}")
    return w


def schouten_generator(m: int, w=None) -> Generator:
    """Generator of the Schouten bracket for the volume ``e^w dx^1...dx^m``.

    The associated berezinian divergence is the coordinate one deformed by ``w``.
    """
    dv: DivergenceOp = CoordinateDivergence(m, m)
    if w is not None:
        wf = volume_weight(w, m)
        if wf:
            dv = dv.deform(wf)
    return Generator(SchoutenStructure(m), dv)


# star map ------------------------------------------------------------------

# xi_{i1}...xi_{ik} |-> d/ds^{i1} ... d/ds^{ik} (s^1...s^m): the last factor is
# contracted first.  The other order breaks agreement with the generator.
def _contract(I: tuple, m: int) -> tuple[int, tuple]:
    vol = list(range(m))
    sign = 1
    for i in reversed(I):
        pos = vol.index(i)
        if pos & 1:
            sign = -sign
        vol.pop(pos)
    return sign, tuple(vol)


def star0(A: SuperFunction) -> SuperFunction:
    """Contract the multivector ``A`` into ``dx^1 ... dx^m``."""
    m = A.m
    if A.n != m:
        raise DimensionError("star0 needs a multivector on R^{m|m}")
    acc = {}
    for odd, exps, c in A.items():
        sign, rest = _contract(odd, m)
        acc[(rest, exps)] = c * sign
    return SuperFunction(m, m, acc)


def star0_inv(alpha: SuperFunction) -> SuperFunction:
    """Inverse of :func:`star0`."""
    m = alpha.m
    if alpha.n != m:
        raise DimensionError("star0_inv needs a form on R^{m|m}")
    acc = {}
    for odd, exps, c in alpha.items():
        comp = tuple(i for i in range(m) if i not in odd)
        sign, rest = _contract(comp, m)
        assert rest == odd
        acc[(comp, exps)] = c * sign
    return SuperFunction(m, m, acc)


def del_mu(w, A: SuperFunction) -> SuperFunction:
    """``-star^{-1} d star`` for the volume ``e^w dx^1...dx^m``.

    The ``e^w`` factors cancel, leaving ``-star0^{-1}(d + dw ^)star0``.
    """
    m = A.m
    d = de_rham_field(m)
    alpha = star0(A)
    beta = d(alpha)
    if w is not None:
        wf = volume_weight(w, m)
        if wf:
            beta = beta + d(wf) * alpha
    return -star0_inv(beta)


# modular vector field -----------------------------------------------------


def _poisson_matrix(P: SuperFunction):
    m = P.m
    mat = [[SuperFunction.zero(m, m) for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i != j:
                # P = sum_{i<j} P^{ij} xi_i xi_j, so P^{ij} = d_xi_j d_xi_i P
                mat[i][j] = P.diff_s(i).diff_s(j)
    return mat


def modular_vector_field(P: SuperFunction, w=None) -> GradedVectorField:
    """The field ``f |-> div_mu(H_f)`` on R^m, ``H_f = sum P^{ij} d_i f d_j``.

    ``P`` must be a Poisson bivector and ``div_mu X = sum d_i X^i + X(w)``.
    """
    m = P.m
    if P.n != m or P.odd_degrees - {2}:
        raise ValueError("modular vector field needs a bivector")
    if SchoutenStructure(m).bracket(P, P):
        raise ValueError("bivector is not Poisson")
    wf = volume_weight(w, m) if w is not None else SuperFunction.zero(m, m)
    mat = _poisson_matrix(P)
    coeffs = []
    for i in range(m):
        # Z(x^i) = div_mu(H_{x^i}) with H_{x^i} = sum_j P^{ij} d_j
        c = SuperFunction.zero(m, m)
        for j in range(m):
            c = c + mat[i][j].diff_x(j) + mat[i][j] * wf.diff_x(j)
        coeffs.append(c.with_dims(m, 0))
    z = SuperFunction.zero(m, 0)
    if m == 0:
        return GradedVectorField.zero(0, 0)
    return GradedVectorField(coeffs, [], 0) if any(coeffs) else GradedVectorField._raw(m, 0, [z] * m, [], 0)


def vector_field_to_multivector(X: GradedVectorField) -> SuperFunction:
    """``sum X^i d/dx^i`` on R^{m|0} to ``sum X^i xi_i`` on R^{m|m}."""
    m = X.m
    out = SuperFunction.zero(m, m)
    for i, c in enumerate(X.even):
        out = out + c.with_dims(m, m) * SuperFunction.s(m, m, i)
    return out


def multivector_to_vector_field(A: SuperFunction) -> GradedVectorField:
    """Inverse of :func:`vector_field_to_multivector` on degree-one multivectors."""
    m = A.m
    if A.odd_degrees - {1}:
        raise ValueError("not a vector field")
    coeffs = [A.coefficient((i,)) for i in range(m)]
    return GradedVectorField._raw(m, 0, [SuperFunction.from_poly(c, 0) for c in coeffs], [], 0)
