"""Differential forms on R^m as functions on R^{m|m} with ``s^i = dx^i``.

Besides the canonical derivations ``d``, ``i_X`` and ``L_X`` this module
builds the Koszul-Schouten bracket of a Poisson bivector ``P`` from the
operator ``del_P = [d, i_P]``, and compares ``del_P`` with the generator
obtained from the canonical divergence.

Sign conventions
----------------
``i_P = sum_{i<j} P^{ij} d/ds^i d/ds^j`` with left derivatives, so that
``i_P(s^i s^j) = -P^{ij}``.  This is the normalisation for which
``[[f, dg]]_P = {f, g} = sum P^{ij} d_i f d_j g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dervec import GradedVectorField, commutator, de_rham_field
from .divergence import CoordinateDivergence
from .oddpoisson import Generator, OddPoissonStructure, Residuals
from .supernum import DimensionError, ParityError, SuperFunction, parse

__all__ = [
    "Bivector",
    "VectorValuedForm",
    "d",
    "i_X",
    "lie_X",
    "i_P",
    "del_P",
    "insertion_field",
    "lie_field",
    "insertion_field_L",
    "lie_field_K",
    "contraction_C",
    "div_can",
    "KoszulSchoutenStructure",
    "koszul_schouten",
    "poisson_bracket",
    "symplectic_form",
    "theorem_bb_check",
]


def _fn(c, m: int) -> SuperFunction:
    """Coerce text / number / SuperFunction into a function on the base inside R^{m|m}."""
    if isinstance(c, SuperFunction):
        f = c.with_dims(m, m)
    elif isinstance(c, str):
        f = parse(c, m, m)
    else:
        f = SuperFunction.constant(m, m, c)
    if f.odd_degrees - {0}:
        raise ParityError(f"expected a function on the base, got {f}")
    return f


def _form(alpha, m: int) -> SuperFunction:
    if isinstance(alpha, str):
        return parse(alpha, m, m)
    if alpha.dims != (m, m):
        raise DimensionError(f"form on R^{alpha.m}|{alpha.n} used on R^{m}|{m}")
    return alpha


# bivectors -----------------------------------------------------------------


class Bivector:
    """``P = sum_{i<j} P^{ij} d_i ^ d_j`` with polynomial coefficients."""

    def __init__(self, m: int, matrix):
        self.m = m
        if len(matrix) != m or any(len(row) != m for row in matrix):
            raise DimensionError(f"bivector matrix must be {m}x{m}")
        mat = [[_fn(c, m) for c in row] for row in matrix]
        for i in range(m):
            if mat[i][i]:
                raise ValueError(f"diagonal entry P^{i + 1}{i + 1} must vanish")
            for j in range(i + 1, m):
                if mat[i][j] + mat[j][i]:
                    raise ValueError(f"P^{i + 1}{j + 1} and P^{j + 1}{i + 1} are not opposite")
        self.matrix = tuple(tuple(r) for r in mat)

    @classmethod
    def from_upper(cls, m: int, entries: dict) -> Bivector:
        """Build from ``{(i, j): P^{ij}}`` with 0-based ``i < j``."""
        z = SuperFunction.zero(m, m)
        mat = [[z] * m for _ in range(m)]
        for (i, j), c in entries.items():
            c = _fn(c, m)
            mat[i][j] = c
            mat[j][i] = -c
        return cls(m, mat)

    @classmethod
    def from_multivector(cls, P: SuperFunction) -> Bivector:
        m = P.m
        if P.n != m or P.odd_degrees - {2}:
            raise ValueError("not a bivector")
        return cls(m, [[P.diff_s(i).diff_s(j) if i != j else SuperFunction.zero(m, m) for j in range(m)] for i in range(m)])

    def __getitem__(self, ij):
        i, j = ij
        return self.matrix[i][j]

    def as_multivector(self) -> SuperFunction:
        """``sum_{i<j} P^{ij} xi_i xi_j`` in the Schouten model."""
        m = self.m
        out = SuperFunction.zero(m, m)
        for i in range(m):
            for j in range(i + 1, m):
                if self.matrix[i][j]:
                    out = out + self.matrix[i][j] * SuperFunction.s(m, m, i) * SuperFunction.s(m, m, j)
        return out

    def schouten_square(self) -> SuperFunction:
        from .schouten import SchoutenStructure

        A = self.as_multivector()
        return SchoutenStructure(self.m).bracket(A, A)

    @property
    def is_poisson(self) -> bool:
        return not self.schouten_square()

    def determinant(self) -> SuperFunction:
        return _det([list(r) for r in self.matrix], self.m)

    @property
    def is_nondegenerate(self) -> bool:
        """True when the determinant is a nonzero constant (so the inverse is polynomial)."""
        det = self.determinant()
        return bool(det) and det.even_degree == 0

    def __repr__(self):
        ent = ", ".join(
            f"P^{i + 1}{j + 1}={self.matrix[i][j]}" for i in range(self.m) for j in range(i + 1, self.m) if self.matrix[i][j]
        )
        return f"Bivector({self.m}; {ent or '0'})"


def _det(mat, m):
    if m == 0:
        return SuperFunction.constant(0, 0, 1)
    if m == 1:
        return mat[0][0]
    out = SuperFunction.zero(*mat[0][0].dims)
    for j in range(m):
        if mat[0][j]:
            minor = [row[:j] + row[j + 1:] for row in mat[1:]]
            term = mat[0][j] * _det(minor, m - 1)
            out = out + term if j % 2 == 0 else out - term
    return out


def poisson_bracket(P: Bivector, f: SuperFunction, g: SuperFunction) -> SuperFunction:
    """``{f, g} = sum_{i,j} P^{ij} d_i f d_j g`` for functions on the base."""
    out = SuperFunction.zero(P.m, P.m)
    for i in range(P.m):
        fi = f.diff_x(i)
        if not fi:
            continue
        for j in range(P.m):
            if P.matrix[i][j]:
                out = out + P.matrix[i][j] * fi * g.diff_x(j)
    return out


# canonical operators ---------------------------------------------------------


def d(alpha: SuperFunction) -> SuperFunction:
    return de_rham_field(alpha.m)(alpha)


def insertion_field(X: Sequence, m: int | None = None) -> GradedVectorField:
    """``i_X = sum X^i d/ds^i`` for a vector field with components ``X``."""
    if isinstance(X, GradedVectorField):
        m = X.m
        X = X.even
    m = len(X) if m is None else m
    coeffs = [_fn(c, m) for c in X]
    z = SuperFunction.zero(m, m)
    return GradedVectorField._raw(m, m, [z] * m, coeffs, 1)


def lie_field(X: Sequence, m: int | None = None) -> GradedVectorField:
    """``L_X = [i_X, d]``."""
    iX = insertion_field(X, m)
    return commutator(iX, de_rham_field(iX.m))


def i_X(X, alpha: SuperFunction) -> SuperFunction:
    return insertion_field(X, alpha.m)(alpha)


def lie_X(X, alpha: SuperFunction) -> SuperFunction:
    return lie_field(X, alpha.m)(alpha)


def i_P(P: Bivector, alpha: SuperFunction) -> SuperFunction:
    """Second-order operator ``sum_{i<j} P^{ij} d/ds^i d/ds^j``."""
    alpha = _form(alpha, P.m)
    out = SuperFunction.zero(P.m, P.m)
    for i in range(P.m):
        for j in range(i + 1, P.m):
            c = P.matrix[i][j]
            if c:
                t = alpha.diff_s(j).diff_s(i)
                if t:
                    out = out + c * t
    return out


def del_P(P: Bivector, alpha: SuperFunction) -> SuperFunction:
    """``[d, i_P] = d i_P - i_P d``; lowers form degree by one."""
    alpha = _form(alpha, P.m)
    return d(i_P(P, alpha)) - i_P(P, d(alpha))


# vector-valued forms -----------------------------------------------------------


@dataclass(frozen=True)
class VectorValuedForm:
    """``K = sum_i K_i (x) d/dx^i`` with every ``K_i`` a form of degree ``k``."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a vector-valued form needs at least one component")
        m = comps[0].m
        for c in comps:
            if c.dims != (m, m):
                raise DimensionError("components live in different algebras")
        degs = set().union(*(c.odd_degrees for c in comps))
        if len(degs) > 1:
            raise ValueError(f"components have mixed form degrees {sorted(degs)}")
        if len(comps) != m:
            raise DimensionError(f"expected {m} components, got {len(comps)}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def decomposable(cls, omega: SuperFunction, X: Sequence) -> VectorValuedForm:
        """``omega (x) X``."""
        m = omega.m
        return cls(tuple(omega * _fn(c, m) for c in X))

    @property
    def m(self) -> int:
        return self.components[0].m

    @property
    def degree(self) -> int | None:
        """Form degree, or ``None`` for the zero tensor."""
        degs = set().union(*(c.odd_degrees for c in self.components))
        return degs.pop() if degs else None


def contraction_C(L: VectorValuedForm) -> SuperFunction:
    """``(1,1)``-contraction: ``C(omega (x) X) = i_X omega``, zero on degree 0."""
    out = SuperFunction.zero(L.m, L.m)
    for i, c in enumerate(L.components):
        out = out + c.diff_s(i)
    return out


def insertion_field_L(L: VectorValuedForm, degree: int | None = None) -> GradedVectorField:
    """``i_L``: the derivation ``alpha |-> sum L_i ^ d/ds^i alpha``.

    For ``L`` of form degree ``k+1`` it has parity ``k``.
    """
    k1 = L.degree if L.degree is not None else (degree if degree is not None else 1)
    m = L.m
    z = SuperFunction.zero(m, m)
    return GradedVectorField._raw(m, m, [z] * m, L.components, (k1 - 1) & 1)


def lie_field_K(K: VectorValuedForm, degree: int | None = None) -> GradedVectorField:
    """``L_K = [i_K, d]``; parity equals the form degree of ``K``."""
    iK = insertion_field_L(K, degree)
    return commutator(iK, de_rham_field(K.m))


def div_can(D: GradedVectorField) -> SuperFunction:
    """Divergence of the canonical berezinian, read in the chart ``(x, dx)``."""
    if D.m != D.n:
        raise DimensionError("div_can needs a derivation of forms on R^{m|m}")
    return CoordinateDivergence(D.m, D.n)(D)


# Koszul-Schouten bracket ---------------------------------------------------------


class KoszulSchoutenStructure(OddPoissonStructure):
    """The odd bracket on forms generated by ``del_P``::

        [[a, b]]_P = (-1)^{|a|}(del_P(ab) - del_P(a) b - (-1)^{|a|} a del_P(b))
    """

    kind = "koszul_schouten"

    def __init__(self, P: Bivector):
        super().__init__(P.m, P.m)
        self.P = P
        self.nondegenerate = P.is_nondegenerate

    def _bracket(self, a, b, pa, pb):
        dP = lambda u: del_P(self.P, u)  # noqa: E731
        val = dP(a * b) - dP(a) * b
        val = val - a * dP(b) if not pa else val + a * dP(b)
        return -val if pa else val

    def __repr__(self):
        return f"KoszulSchoutenStructure({self.P!r})"


def koszul_schouten(P: Bivector, alpha: SuperFunction, beta: SuperFunction) -> SuperFunction:
    return KoszulSchoutenStructure(P).bracket(_form(alpha, P.m), _form(beta, P.m))


def ks_generator(P: Bivector) -> Generator:
    """Generator of the Koszul-Schouten bracket from the canonical divergence."""
    return Generator(KoszulSchoutenStructure(P), CoordinateDivergence(P.m, P.m))


def symplectic_form(P: Bivector) -> SuperFunction:
    """``omega = sum_{i<j} (P^{-1})_{ij} s^i s^j`` for ``P`` with constant nonzero determinant.

    With the conventions above ``d = [[omega, .]]_P``.
    """
    if not P.is_nondegenerate:
        raise ValueError("symplectic form needs a bivector with constant nonzero determinant")
    m = P.m
    det = P.determinant().body().constant_term()
    mat = [list(r) for r in P.matrix]
    out = SuperFunction.zero(m, m)
    for i in range(m):
        for j in range(i + 1, m):
            # inverse entry (i, j) = cofactor(j, i) / det
            minor = [row[:i] + row[i + 1:] for k, row in enumerate(mat) if k != j]
            cof = _det(minor, m - 1) if m > 1 else SuperFunction.constant(m, m, 1)
            if (i + j) % 2:
                cof = -cof
            if cof:
                out = out + cof.scale(Fraction(1) / det) * SuperFunction.s(m, m, i) * SuperFunction.s(m, m, j)
    return out


def theorem_bb_check(P: Bivector, probes: Sequence[SuperFunction]) -> Residuals:
    """Compare the canonical-divergence generator with ``del_P`` on ``probes``.

    Records ``Delta a - del_P a``, ``Delta^2 a`` and ``(d del_P + del_P d) a``.
    """
    gen = ks_generator(P)
    res = Residuals("theorem_bb")
    for a in probes:
        a = _form(a, P.m)
        da = gen(a)
        res.add(f"generator({a})", da - del_P(P, a))
        res.add(f"square({a})", gen(da))
        res.add(f"d_commutes({a})", d(del_P(P, a)) + del_P(P, d(a)))
    return res
