"""Torsionless connections on R^m and the induced graded connection on multivectors.

A connection is given by Christoffel symbols ``gamma[k][i][j]`` (0-based,
``nabla_{d_i} d_j = sum_k gamma[k][i][j] d_k``), symmetric in ``i, j``.
Vector fields on R^m are tuples of functions living in the multivector
algebra R^{m|m} with no odd part, so they can be mixed freely with
multivectors.

On R^{m|m} (odd coordinates ``xi_k = d/dx^k``) the frame

    B_j = nabla_{d_j} = d/dx^j + sum gamma[l][j][k] xi_l d/dxi_k      (even)
    C^j = i_{dx^j}    = d/dxi_j                                     (odd)

generates all derivations.  The graded Levi-Civita connection of the odd
metric ``<B_i, C^j> = delta`` is stored as its action table on this frame.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .dervec import GradedVectorField, commutator
from .divergence import SupertraceDivergence
from .oddpoisson import Generator, Residuals
from .schouten import SchoutenStructure
from .supernum import DimensionError, ParityError, SuperFunction, parse

__all__ = [
    "Connection",
    "GradedConnection",
    "Endomorphism",
    "nabla",
    "curvature_R",
    "div_nabla",
    "levi_civita",
    "str_divergence",
    "supertrace",
    "graded_curvature",
    "graded_torsion",
    "curvtr_check",
    "metric",
    "lc_certificate",
    "koszul_delta",
    "theorem_cc_check",
    "generator_difference_defect",
]

VectorField = tuple  # of SuperFunction on R^{m|m} with no odd part


def _sgn(k):
    return -1 if k & 1 else 1


class Connection:
    """Torsionless linear connection on R^m."""

    def __init__(self, m: int, christoffels):
        self.m = m
        z = SuperFunction.zero(m, m)
        if christoffels is None:
            gam = [[[z] * m for _ in range(m)] for _ in range(m)]
        else:
            if len(christoffels) != m or any(len(a) != m or any(len(b) != m for b in a) for a in christoffels):
                raise DimensionError(f"christoffel array must be {m}x{m}x{m}")
            gam = [[[self._fn(c) for c in row] for row in plane] for plane in christoffels]
        for k in range(m):
            for i in range(m):
                for j in range(i + 1, m):
                    if gam[k][i][j] != gam[k][j][i]:
                        raise ValueError(
                            f"christoffel symbols not symmetric: gamma^{k + 1}_{i + 1}{j + 1} != gamma^{k + 1}_{j + 1}{i + 1}"
                        )
        self.gamma = tuple(tuple(tuple(r) for r in plane) for plane in gam)

    def _fn(self, c):
        m = self.m
        if isinstance(c, SuperFunction):
            f = c.with_dims(m, m)
        elif isinstance(c, str):
            f = parse(c, m, m)
        else:
            f = SuperFunction.constant(m, m, c)
        if f.odd_degrees - {0}:
            raise ParityError(f"christoffel symbol must be a function on the base, got {f}")
        return f

    @classmethod
    def flat(cls, m: int) -> Connection:
        return cls(m, None)

    def vector(self, comps: Sequence) -> VectorField:
        if len(comps) != self.m:
            raise DimensionError(f"expected {self.m} components")
        return tuple(self._fn(c) for c in comps)

    def coordinate_field(self, i: int) -> VectorField:
        return tuple(SuperFunction.constant(self.m, self.m, 1 if k == i else 0) for k in range(self.m))

    @property
    def is_flat(self) -> bool:
        m = self.m
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if any(curvature_R(self, self.coordinate_field(i), self.coordinate_field(j), self.coordinate_field(k))):
                        return False
        return True

    def __repr__(self):
        nz = [
            f"G^{k + 1}_{i + 1}{j + 1}={self.gamma[k][i][j]}"
            for k in range(self.m)
            for i in range(self.m)
            for j in range(i, self.m)
            if self.gamma[k][i][j]
        ]
        return f"Connection({self.m}; {', '.join(nz) or 'flat'})"


# base geometry -----------------------------------------------------------------


def _apply(X: VectorField, f: SuperFunction) -> SuperFunction:
    out = SuperFunction.zero(f.m, f.n)
    for i, c in enumerate(X):
        if c:
            out = out + c * f.diff_x(i)
    return out


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    return tuple(_apply(X, b) - _apply(Y, a) for a, b in zip(X, Y))


def nabla(c: Connection, X: VectorField, Y: VectorField) -> VectorField:
    """``(nabla_X Y)^k = X(Y^k) + gamma^k_{ij} X^i Y^j``."""
    m = c.m
    out = []
    for k in range(m):
        v = _apply(X, Y[k])
        for i in range(m):
            if X[i]:
                for j in range(m):
                    if Y[j] and c.gamma[k][i][j]:
                        v = v + c.gamma[k][i][j] * X[i] * Y[j]
        out.append(v)
    return tuple(out)


def curvature_R(c: Connection, X: VectorField, Y: VectorField, Z: VectorField) -> VectorField:
    """``R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z``."""
    a = nabla(c, X, nabla(c, Y, Z))
    b = nabla(c, Y, nabla(c, X, Z))
    e = nabla(c, lie_bracket(X, Y), Z)
    return tuple(p - q - r for p, q, r in zip(a, b, e))


def div_nabla(c: Connection, X: VectorField) -> SuperFunction:
    """``Tr(nabla_X - ad_X) = sum d_k X^k + gamma^k_{ki} X^i``."""
    m = c.m
    out = SuperFunction.zero(m, m)
    for k in range(m):
        out = out + X[k].diff_x(k)
        for i in range(m):
            if c.gamma[k][k][i] and X[i]:
                out = out + c.gamma[k][k][i] * X[i]
    return out


def torsion(c: Connection, X: VectorField, Y: VectorField) -> VectorField:
    a, b, e = nabla(c, X, Y), nabla(c, Y, X), lie_bracket(X, Y)
    return tuple(p - q - r for p, q, r in zip(a, b, e))


def to_multivector(X: VectorField) -> SuperFunction:
    m = len(X)
    out = SuperFunction.zero(m, m)
    for i, c in enumerate(X):
        out = out + c * SuperFunction.s(m, m, i)
    return out


def from_multivector(A: SuperFunction) -> VectorField:
    if A.odd_degrees - {1}:
        raise ValueError(f"{A} is not a vector field")
    return tuple(A.diff_s(i) for i in range(A.m))


# graded connection ------------------------------------------------------------


class Endomorphism:
    """A module endomorphism of the derivations of R^{m|m}, given as a callable."""

    def __init__(self, m: int, fn: Callable[[GradedVectorField], GradedVectorField], parity: int):
        self.m, self.fn, self.parity = m, fn, parity & 1

    def __call__(self, E):
        return self.fn(E)


class GradedConnection:
    """Graded linear connection on R^{m|m} stored as an action table on the frame
    ``(B_1..B_m, C^1..C^m)``.

    ``table[a][b]`` is ``nabla nabla_{frame[a]} frame[b]`` as a field in
    coordinates; the action on general fields follows from function-linearity
    in the first slot and the Leibniz rule in the second.
    """

    def __init__(self, base: Connection, table):
        self.base = base
        self.m = base.m
        self.table = table
        self.frame = _frame(base)
        self.parity = self._observed_parity()

    @property
    def dims(self):
        return self.m, self.m

    def _observed_parity(self) -> int | None:
        ps = set()
        for a, row in enumerate(self.table):
            for b, T in enumerate(row):
                if not T.is_zero():
                    ps.add(T.parity ^ self.frame[a].parity ^ self.frame[b].parity)
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def frame_coefficients(self, D: GradedVectorField) -> list[SuperFunction]:
        """Left coefficients of ``D`` in the frame (``B`` part first)."""
        m = self.m
        g = self.base.gamma
        a = [D(SuperFunction.x(m, m, j)) for j in range(m)]
        b = []
        for k in range(m):
            v = D(SuperFunction.s(m, m, k))
            for j in range(m):
                if a[j]:
                    for l in range(m):
                        if g[l][j][k]:
                            v = v - a[j] * g[l][j][k] * SuperFunction.s(m, m, l)
            b.append(v)
        return a + b

    def combine(self, coeffs: Sequence[SuperFunction], parity: int) -> GradedVectorField:
        return _combine(self.m, coeffs, self.frame, parity)

    def __call__(self, D: GradedVectorField, E: GradedVectorField) -> GradedVectorField:
        """``nabla nabla_D E``."""
        if D.dims != self.dims or E.dims != self.dims:
            raise DimensionError("fields on the wrong supermanifold")
        m2 = 2 * self.m
        dc = self.frame_coefficients(D)
        ec = self.frame_coefficients(E)
        even = [SuperFunction.zero(self.m, self.m)] * self.m
        odd = [SuperFunction.zero(self.m, self.m)] * self.m
        for a in range(m2):
            if not dc[a]:
                continue
            Fa = self.frame[a]
            pa = Fa.parity
            inner_e = [SuperFunction.zero(self.m, self.m)] * self.m
            inner_o = [SuperFunction.zero(self.m, self.m)] * self.m
            for b in range(m2):
                eb = ec[b]
                if not eb:
                    continue
                Fb = self.frame[b]
                der = Fa(eb)
                if der:
                    inner_e = [x + der * y for x, y in zip(inner_e, Fb.even)]
                    inner_o = [x + der * y for x, y in zip(inner_o, Fb.odd)]
                T = self.table[a][b]
                if not T.is_zero():
                    s = _sgn(pa & _par(eb))
                    inner_e = [x + (eb * y).scale(s) for x, y in zip(inner_e, T.even)]
                    inner_o = [x + (eb * y).scale(s) for x, y in zip(inner_o, T.odd)]
            even = [x + dc[a] * y for x, y in zip(even, inner_e)]
            odd = [x + dc[a] * y for x, y in zip(odd, inner_o)]
        p = D.parity ^ E.parity ^ (self.parity or 0)
        return GradedVectorField(even, odd, p) if self.m else GradedVectorField.zero(0, 0, p)

    def str_divergence(self, D: GradedVectorField) -> SuperFunction:
        """``sTr(nabla nabla_D - ad_D)``."""
        T = Endomorphism(self.m, lambda E: self(D, E) - commutator(D, E), D.parity)
        return supertrace(T)

    def curvature(self, D1: GradedVectorField, D2: GradedVectorField) -> Endomorphism:
        return graded_curvature(self, D1, D2)

    def __repr__(self):
        return f"GradedConnection(levi_civita of {self.base!r})"


def _par(f: SuperFunction) -> int:
    p = f.parity
    if p is None:
        raise ParityError(f"coefficient {f} is not homogeneous")
    return p


def _frame(c: Connection) -> list[GradedVectorField]:
    m = c.m
    z = SuperFunction.zero(m, m)
    frame = []
    for j in range(m):
        even = [SuperFunction.constant(m, m, 1 if i == j else 0) for i in range(m)]
        odd = []
        for k in range(m):
            v = z
            for l in range(m):
                if c.gamma[l][j][k]:
                    v = v + c.gamma[l][j][k] * SuperFunction.s(m, m, l)
            odd.append(v)
        frame.append(GradedVectorField._raw(m, m, even, odd, 0))
    for j in range(m):
        frame.append(GradedVectorField.d_ds(m, m, j))
    return frame


def _combine(m, coeffs, basis, parity) -> GradedVectorField:
    even = [SuperFunction.zero(m, m)] * m
    odd = [SuperFunction.zero(m, m)] * m
    for c, F in zip(coeffs, basis):
        if c:
            even = [x + c * y for x, y in zip(even, F.even)]
            odd = [x + c * y for x, y in zip(odd, F.odd)]
    if m == 0:
        return GradedVectorField.zero(0, 0, parity)
    return GradedVectorField(even, odd, parity)


def levi_civita(c: Connection) -> GradedConnection:
    """Levi-Civita connection of the odd metric ``<nabla_X, i_alpha> = alpha(X)``:

    * ``nn_{B_i} B_j = gamma^k_{ij} B_k + sum_l R(d_l, d_j)d_i . C^l``
    * ``nn_{B_i} C^j = -gamma^j_{ik} C^k``
    * ``nn_{C^j} = 0``
    """
    m = c.m
    frame = _frame(c)
    zero_odd = GradedVectorField.zero(m, m, 1)
    zero_even = GradedVectorField.zero(m, m, 0)
    table = [[None] * (2 * m) for _ in range(2 * m)]
    e = [c.coordinate_field(i) for i in range(m)]
    for i in range(m):
        for j in range(m):
            coeffs = [c.gamma[k][i][j] for k in range(m)]
            for l in range(m):
                coeffs.append(to_multivector(curvature_R(c, e[l], e[j], e[i])))
            table[i][j] = _combine(m, coeffs, frame, 0)
            coeffs = [SuperFunction.zero(m, m)] * m + [-c.gamma[j][i][k] for k in range(m)]
            table[i][m + j] = _combine(m, coeffs, frame, 1)
    for a in range(m, 2 * m):
        for b in range(2 * m):
            table[a][b] = zero_odd if b < m else zero_even
    return GradedConnection(c, table)


# supertrace and curvature ----------------------------------------------------


def _coordinate_basis(m):
    return [GradedVectorField.d_dx(m, m, i) for i in range(m)] + [GradedVectorField.d_ds(m, m, i) for i in range(m)]


def supertrace(T: Endomorphism, frame: GradedConnection | None = None) -> SuperFunction:
    """``sum (-1)^{|e_a|} (left coefficient of e_a in T(e_a))``.

    Uses the coordinate basis unless a graded connection is given, in which
    case its frame ``(B, C)`` is used.
    """
    m = T.m
    out = SuperFunction.zero(m, m)
    if frame is None:
        for i, E in enumerate(_coordinate_basis(m)):
            V = T(E)
            if i < m:
                out = out + V.even[i]
            else:
                out = out - V.odd[i - m]
    else:
        for a, E in enumerate(frame.frame):
            co = frame.frame_coefficients(T(E))[a]
            out = out + co if a < m else out - co
    return out


def str_divergence(gc: GradedConnection, D: GradedVectorField) -> SuperFunction:
    return gc.str_divergence(D)


def graded_curvature(gc: GradedConnection, D1: GradedVectorField, D2: GradedVectorField) -> Endomorphism:
    """``[nn_{D1}, nn_{D2}] - nn_{[D1,D2]}``."""
    s = _sgn(D1.parity & D2.parity)
    br = commutator(D1, D2)

    def R(E):
        return gc(D1, gc(D2, E)) - gc(D2, gc(D1, E)).scale(s) - gc(br, E)

    return Endomorphism(gc.m, R, D1.parity ^ D2.parity)


def graded_torsion(gc: GradedConnection, D1: GradedVectorField, D2: GradedVectorField) -> GradedVectorField:
    s = _sgn(D1.parity & D2.parity)
    return gc(D1, D2) - gc(D2, D1).scale(s) - commutator(D1, D2)


def curvtr_check(gc: GradedConnection, D1: GradedVectorField, D2: GradedVectorField) -> SuperFunction:
    """``R^div(D1, D2) + sTr(R(D1, D2))``; zero for a torsionless connection."""
    dv = SupertraceDivergence(gc)
    return dv.curvature(D1, D2) + supertrace(graded_curvature(gc, D1, D2))


# odd metric ------------------------------------------------------------------


def metric(gc: GradedConnection, D: GradedVectorField, E: GradedVectorField) -> SuperFunction:
    """``<D, E> = sum a^j e_j + (-1)^{|E|} sum b_k c^k`` for ``D = a.B + b.C``, ``E = c.B + e.C``.

    Graded symmetric, odd, with ``<B_j, C^k> = <C^k, B_j> = delta``.
    """
    m = gc.m
    dc = gc.frame_coefficients(D)
    ec = gc.frame_coefficients(E)
    out = SuperFunction.zero(m, m)
    s = _sgn(E.parity)
    for j in range(m):
        out = out + dc[j] * ec[m + j] + (dc[m + j] * ec[j]).scale(s)
    return out


def lc_certificate(gc: GradedConnection, D1, D2, D3) -> SuperFunction:
    """Residual of the Koszul-type formula characterising the Levi-Civita connection."""
    p1, p2, p3 = D1.parity, D2.parity, D3.parity
    g = lambda A, B: metric(gc, A, B)  # noqa: E731
    lhs = g(gc(D1, D2), D3).scale(2)
    rhs = D1(g(D2, D3)) + g(commutator(D1, D2), D3)
    rhs = rhs + (D2(g(D3, D1)) - g(commutator(D2, D3), D1)).scale(_sgn(p1 & (p2 ^ p3)))
    rhs = rhs - (D3(g(D1, D2)) - g(commutator(D3, D1), D2)).scale(_sgn(p3 & (p1 ^ p2)))
    return lhs - rhs


# Koszul's generator ----------------------------------------------------------


def koszul_delta(c: Connection, A: SuperFunction) -> SuperFunction:
    """Degree -1 operator on multivectors extending ``-div_nabla`` and generating
    the Schouten bracket.

    Each monomial ``a xi_{i1}...xi_{ik}`` is split as ``X_1 ^ ... ^ X_k`` with
    ``X_1 = a d_{i1}`` and ``X_r = d_{ir}``; then

        sum_r (-1)^{r+1} (-div X_r) X_1..^r..X_k
          + sum_{r<t} (-1)^{r+t} [X_r, X_t] X_1..^r..^t..X_k
    """
    m = c.m
    if A.dims != (m, m):
        raise DimensionError("multivector on the wrong base")
    sch = SchoutenStructure(m)
    out = SuperFunction.zero(m, m)
    for odd, exps, coef in A.items():
        k = len(odd)
        if k == 0:
            continue
        a = SuperFunction(m, m, {((), exps): coef})
        X = [a * SuperFunction.s(m, m, odd[0])] + [SuperFunction.s(m, m, i) for i in odd[1:]]

        def wedge(skip):
            w = SuperFunction.constant(m, m, 1)
            for r, Xr in enumerate(X):
                if r not in skip:
                    w = w * Xr
            return w

        for r in range(k):
            dv = div_nabla(c, from_multivector(X[r]))
            term = -dv * wedge({r})
            out = out + term if r % 2 == 0 else out - term
        for r in range(k):
            for t in range(r + 1, k):
                br = sch.bracket(X[r], X[t])
                term = br * wedge({r, t})
                out = out + term if (r + t) % 2 == 0 else out - term
    return out


def schouten_lc_generator(c: Connection) -> Generator:
    return Generator(SchoutenStructure(c.m), SupertraceDivergence(levi_civita(c)))


def theorem_cc_check(c: Connection, probes: Sequence[SuperFunction], square: bool | None = None) -> Residuals:
    """Compare the supertrace generator with :func:`koszul_delta` on ``probes``.

    When the base connection is flat (or ``square`` is true) also record
    ``Delta^2`` on every probe.
    """
    gen = schouten_lc_generator(c)
    if square is None:
        square = c.is_flat
    res = Residuals("theorem_cc")
    for A in probes:
        v = gen(A)
        res.add(f"generator({A})", v - koszul_delta(c, A))
        if square:
            res.add(f"square({A})", gen(v))
    return res


def generator_difference_defect(c1: Connection, c2: Connection, f: SuperFunction) -> SuperFunction:
    """``Delta' f - Delta f - (-1)^{|f|} 1/2 sTr(u(X_f))`` with ``u(D) = nn'_D - nn_D``."""
    g1, g2 = levi_civita(c1), levi_civita(c2)
    sch = SchoutenStructure(c1.m)
    out = SuperFunction.zero(c1.m, c1.m)
    for p, part in f.parts():
        X = sch.hamiltonian(part)
        u = Endomorphism(c1.m, lambda E: g2(X, E) - g1(X, E), X.parity)
        d1 = Generator(sch, SupertraceDivergence(g1))(part)
        d2 = Generator(sch, SupertraceDivergence(g2))(part)
        out = out + d2 - d1 - supertrace(u).scale(_sgn(p) * Fraction(1, 2))
    return out
