"""Odd Poisson brackets, their hamiltonian fields and BV generators.

Conventions.  For an odd bracket the natural degree of ``f`` is shifted by
one, so skew-symmetry reads

    [[f, g]] = -(-1)^{(|f|-1)(|g|-1)} [[g, f]]

and the hamiltonian field ``X_f = [[f, .]]`` has parity ``|f| + 1``.  Given a
divergence ``div`` the operator

    Delta f = (-1)^{|f|} 1/2 div(X_f)

is a generator of the bracket, meaning that the Leibniz defect of ``Delta``
reproduces the bracket.  Every ``*_defect`` function below returns the
residual of one identity; all of them are expected to vanish identically.

Everything here is bilinear, so non-homogeneous arguments are split into
parity parts before any sign is computed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable

from .dervec import GradedVectorField, commutator
from .divergence import DivergenceOp
from .supernum import DimensionError, ParityError, SuperFunction, monomial_basis

__all__ = [
    "OddPoissonStructure",
    "Generator",
    "Certificate",
    "Residuals",
    "bracket",
    "hamiltonian",
    "generator_apply",
    "bv_defect",
    "square_defect",
    "curvature_link_defect",
    "derdelta_defect",
    "deform_generator",
    "master_defect",
    "master_square_defect",
    "exp_nilpotent",
    "exp_master_defect",
    "newgenerator_defect",
    "skew_defect",
    "jacobi_defect",
    "leibniz_defect",
    "hamiltonian_morphism_defect",
    "probe_basis",
    "is_qs",
    "is_weak_sp",
    "is_weak_qsp",
    "is_qsp",
]

HALF = Fraction(1, 2)


def _sgn(k: int) -> int:
    return -1 if k & 1 else 1


class OddPoissonStructure:
    """An odd bracket on R^{m|n}.

    Subclasses implement :meth:`_bracket` for homogeneous arguments.  The
    public :meth:`bracket` splits its inputs into parity parts.
    """

    kind = "generic"
    #: set by models whose bracket is known to be nondegenerate
    nondegenerate = False

    def __init__(self, m: int, n: int):
        self.m, self.n = m, n

    @property
    def dims(self):
        return self.m, self.n

    def _bracket(self, f: SuperFunction, g: SuperFunction, pf: int, pg: int) -> SuperFunction:
        raise NotImplementedError

    def bracket(self, f: SuperFunction, g: SuperFunction) -> SuperFunction:
        if f.dims != self.dims or g.dims != self.dims:
            raise DimensionError(f"bracket on R^{self.m}|{self.n} given elements of R^{f.m}|{f.n}, R^{g.m}|{g.n}")
        out = SuperFunction.zero(self.m, self.n)
        for pf, fp in f.parts():
            for pg, gp in g.parts():
                out = out + self._bracket(fp, gp, pf, pg)
        return out

    def hamiltonian(self, f: SuperFunction) -> GradedVectorField:
        p = f.parity
        if p is None:
            raise ParityError(f"hamiltonian of a non-homogeneous element {f}")
        return GradedVectorField.from_action(self.m, self.n, lambda c: self.bracket(f, c), p ^ 1)


class BracketStructure(OddPoissonStructure):
    """An odd bracket given by a callable on homogeneous pairs."""

    def __init__(self, m: int, n: int, fn: Callable[[SuperFunction, SuperFunction], SuperFunction], kind="generic"):
        super().__init__(m, n)
        self._fn = fn
        self.kind = kind

    def _bracket(self, f, g, pf, pg):
        return self._fn(f, g)


class Generator:
    """``Delta f = (-1)^{|f|} 1/2 div(X_f)`` for a bracket ``pi`` and divergence ``dv``."""

    def __init__(self, pi: OddPoissonStructure, dv: DivergenceOp):
        if pi.dims != (dv.m, dv.n):
            raise DimensionError("bracket and divergence live on different supermanifolds")
        self.pi, self.dv = pi, dv

    @property
    def dims(self):
        return self.pi.dims

    def __call__(self, f: SuperFunction) -> SuperFunction:
        out = SuperFunction.zero(*self.dims)
        for p, part in f.parts():
            val = self.dv(self.pi.hamiltonian(part))
            out = out + val.scale(_sgn(p) * HALF)
        return out

    apply = __call__

    def bracket(self, f, g):
        return self.pi.bracket(f, g)

    def __repr__(self):
        return f"Generator({self.pi!r}, {self.dv!r})"


def bracket(pi: OddPoissonStructure, f: SuperFunction, g: SuperFunction) -> SuperFunction:
    return pi.bracket(f, g)


def hamiltonian(pi: OddPoissonStructure, f: SuperFunction) -> GradedVectorField:
    return pi.hamiltonian(f)


def generator_apply(gen: Generator, f: SuperFunction) -> SuperFunction:
    return gen(f)


def _bilinear(fn):
    """Apply ``fn(..., f, g, pf, pg)`` to every pair of homogeneous parts and sum."""

    def wrapper(obj, f, g):
        out = SuperFunction.zero(*f.dims)
        for pf, fp in f.parts():
            for pg, gp in g.parts():
                out = out + fn(obj, fp, gp, pf, pg)
        return out

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _trilinear(fn):
    def wrapper(obj, f, g, h):
        out = SuperFunction.zero(*f.dims)
        for pf, fp in f.parts():
            for pg, gp in g.parts():
                for ph, hp in h.parts():
                    out = out + fn(obj, fp, gp, hp, pf, pg, ph)
        return out

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# bracket axioms ----------------------------------------------------------


@_bilinear
def skew_defect(pi, f, g, pf, pg):
    """``[[f,g]] + (-1)^{(|f|-1)(|g|-1)} [[g,f]]``."""
    br = pi.bracket
    return br(f, g) + br(g, f).scale(_sgn((pf ^ 1) & (pg ^ 1)))


@_trilinear
def jacobi_defect(pi, f, g, h, pf, pg, ph):
    """``[[f,[[g,h]]]] - [[[[f,g]],h]] - (-1)^{(|f|-1)(|g|-1)} [[g,[[f,h]]]]``."""
    br = pi.bracket
    return br(f, br(g, h)) - br(br(f, g), h) - br(g, br(f, h)).scale(_sgn((pf ^ 1) & (pg ^ 1)))


@_trilinear
def leibniz_defect(pi, f, g, h, pf, pg, ph):
    """``[[f,gh]] - [[f,g]]h - (-1)^{(|f|-1)|g|} g[[f,h]]``."""
    br = pi.bracket
    return br(f, g * h) - br(f, g) * h - (g * br(f, h)).scale(_sgn((pf ^ 1) & pg))


def hamiltonian_morphism_defect(pi: OddPoissonStructure, f: SuperFunction, g: SuperFunction) -> GradedVectorField:
    """``X_{[[f,g]]} - [X_f, X_g]`` for homogeneous ``f``, ``g``."""
    return pi.hamiltonian(pi.bracket(f, g)) - commutator(pi.hamiltonian(f), pi.hamiltonian(g))


# generator identities ----------------------------------------------------


@_bilinear
def bv_defect(gen, f, g, pf, pg):
    """``[[f,g]] - (-1)^{|f|}(Delta(fg) - (Delta f)g - (-1)^{|f|} f Delta g)``."""
    D = gen
    s = _sgn(pf)
    leib = D(f * g) - D(f) * g - (f * D(g)).scale(s)
    return gen.bracket(f, g) - leib.scale(s)


def _bracket_derivation_defect(gen, Dop, f, g, pf):
    """``Dop[[f,g]] - [[Dop f, g]] - (-1)^{|f|-1}[[f, Dop g]]`` for an odd operator ``Dop``."""
    br = gen.bracket
    return Dop(br(f, g)) - br(Dop(f), g) - br(f, Dop(g)).scale(_sgn(pf ^ 1))


@_bilinear
def square_defect(gen, f, g, pf, pg):
    """Residual of the identity relating the Leibniz defect of ``Delta^2`` to
    the failure of ``Delta`` to be a derivation of the bracket."""
    D2 = lambda u: gen(gen(u))  # noqa: E731
    lhs = D2(f * g) - D2(f) * g - f * D2(g)
    rhs = _bracket_derivation_defect(gen, gen, f, g, pf).scale(_sgn(pf))
    return lhs - rhs


@_bilinear
def curvature_link_defect(gen, f, g, pf, pg):
    """``Delta[[f,g]] - [[Delta f,g]] - (-1)^{|f|-1}[[f,Delta g]]`` minus
    ``(-1)^{|f|+|g|-1} 1/2 R^div(X_f, X_g)``."""
    lhs = _bracket_derivation_defect(gen, gen, f, g, pf)
    R = gen.dv.curvature(gen.pi.hamiltonian(f), gen.pi.hamiltonian(g))
    return lhs - R.scale(_sgn(pf ^ pg ^ 1) * HALF)


def derdelta_defect(gen: Generator, D: GradedVectorField, f: SuperFunction, g: SuperFunction) -> SuperFunction:
    """For an odd derivation ``D`` with ``K = [D, Delta] = D Delta + Delta D``:
    ``K(fg) - (Kf)g - f(Kg)`` minus ``(-1)^{|f|}(D[[f,g]] - [[Df,g]] - (-1)^{|f|-1}[[f,Dg]])``."""
    if D.parity != 1:
        raise ParityError("derdelta identity needs an odd derivation")
    K = lambda u: D(gen(u)) + gen(D(u))  # noqa: E731

    def one(f, g, pf, pg):
        lhs = K(f * g) - K(f) * g - f * K(g)
        return lhs - _bracket_derivation_defect(gen, D, f, g, pf).scale(_sgn(pf))

    out = SuperFunction.zero(*gen.dims)
    for pf, fp in f.parts():
        for pg, gp in g.parts():
            out = out + one(fp, gp, pf, pg)
    return out


# deformations ------------------------------------------------------------


def deform_generator(gen: Generator, w: SuperFunction) -> Generator:
    """Generator of the same bracket for the divergence deformed by ``w``."""
    return Generator(gen.pi, gen.dv.deform(w))


def _check_even(w):
    if not w.is_of_parity(0):
        raise ParityError(f"weight must be even, got {w}")


def deform_defect(gen: Generator, w: SuperFunction, f: SuperFunction) -> SuperFunction:
    """``Delta' f - Delta f - [[w,f]]`` with ``Delta'`` built from the deformed divergence."""
    _check_even(w)
    return deform_generator(gen, w)(f) - gen(f) - gen.bracket(w, f)


def master_defect(gen: Generator, w: SuperFunction) -> SuperFunction:
    """``Delta w + 1/2 [[w,w]]``; zero exactly when ``w`` solves the master equation."""
    _check_even(w)
    return gen(w) + gen.bracket(w, w).scale(HALF)


def master_square_defect(gen: Generator, w: SuperFunction, f: SuperFunction) -> SuperFunction:
    """``(Delta + X_w)^2 f - [[Delta w + 1/2[[w,w]], f]]``.

    Meaningful when ``Delta^2 = 0``; in that case the residual vanishes.
    """
    _check_even(w)
    op = lambda u: gen(u) + gen.bracket(w, u)  # noqa: E731
    return op(op(f)) - gen.bracket(master_defect(gen, w), f)


def exp_nilpotent(w: SuperFunction) -> SuperFunction:
    """``exp(w)`` for an even ``w`` whose body vanishes, so that ``w`` is nilpotent.

    The series stops once a power vanishes; ``w^k = 0`` for ``k > n/2``.
    """
    _check_even(w)
    if w.body():
        raise ValueError("exp_nilpotent needs an element with zero body")
    out = SuperFunction.constant(*w.dims, 1)
    term = out
    k = 0
    while True:
        k += 1
        term = (term * w).scale(Fraction(1, k))
        if not term:
            return out
        out = out + term


def exp_master_defect(gen: Generator, w: SuperFunction) -> SuperFunction:
    """``Delta w + 1/2[[w,w]] - e^{-w} Delta(e^w)`` for nilpotent ``w``."""
    e, einv = exp_nilpotent(w), exp_nilpotent(-w)
    return master_defect(gen, w) - einv * gen(e)


def newgenerator_defect(gen: Generator, w: SuperFunction, f: SuperFunction) -> SuperFunction:
    """``Delta' f - e^{-w} Delta(e^w f)`` for nilpotent ``w``.

    Vanishes when ``w`` solves the master equation.  In general the residual
    equals ``-(Delta w + 1/2[[w,w]]) f``.
    """
    e, einv = exp_nilpotent(w), exp_nilpotent(-w)
    return deform_generator(gen, w)(f) - einv * gen(e * f)


# probes and predicates ---------------------------------------------------


def probe_basis(m: int, n: int, degree: int) -> list[SuperFunction]:
    """All monomials with even degree at most ``degree``."""
    return monomial_basis(m, n, degree)


@dataclass
class Certificate:
    """Outcome of a predicate checked on a finite probe set."""

    holds: bool
    degree: int | None = None
    checked: int = 0
    counterexample: str | None = None
    notes: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.holds

    def describe(self) -> str:
        if not self.holds:
            return f"fails: {self.counterexample}"
        if self.degree is None:
            return "holds"
        return f"verified to degree {self.degree} on {self.checked} probes"


class Residuals:
    """Named residuals of an identity check; passes iff every residual is zero."""

    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.failures: list[tuple[str, SuperFunction]] = []

    def add(self, label: str, r) -> None:
        self.checked += 1
        if r:
            self.failures.append((label, r))

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed

    def first(self) -> str:
        if not self.failures:
            return "0"
        label, r = self.failures[0]
        return f"{label}: {r}"

    def __repr__(self):
        return f"Residuals({self.name!r}, checked={self.checked}, failures={len(self.failures)})"


def is_qs(D: GradedVectorField, dv: DivergenceOp) -> Certificate:
    """``D^2 = 0`` and ``div(D) = 0`` for an odd field ``D``."""
    if D.parity != 1 and not D.is_zero():
        raise ParityError("QS structure needs an odd vector field")
    sq = commutator(D, D)
    if not sq.is_zero():
        return Certificate(False, counterexample=f"[D,D] = {sq.format()}")
    dd = dv(D)
    if dd:
        return Certificate(False, counterexample=f"div(D) = {dd}")
    return Certificate(True)


def is_weak_sp(pi: OddPoissonStructure, dv: DivergenceOp, degree: int = 3) -> Certificate:
    """``Delta^2 = 0`` checked on every monomial of even degree at most ``degree``."""
    gen = Generator(pi, dv)
    probes = probe_basis(*pi.dims, degree)
    for f in probes:
        r = gen(gen(f))
        if r:
            return Certificate(False, degree, counterexample=f"Delta^2({f}) = {r}")
    return Certificate(True, degree, len(probes))


def _pairs(m, n, degree, rng, extra):
    # a biderivation is fixed by its values on generators, so coordinate
    # pairs carry the proof; a few random monomial pairs guard the plumbing
    coords = [SuperFunction.constant(m, n, 1)]
    coords += [SuperFunction.x(m, n, i) for i in range(m)]
    coords += [SuperFunction.s(m, n, j) for j in range(n)]
    pairs = list(product(coords, coords))
    probes = probe_basis(m, n, degree)
    for _ in range(extra):
        pairs.append((rng.choice(probes), rng.choice(probes)))
    return pairs


def bracket_derivation_defect(pi: OddPoissonStructure, D: GradedVectorField, f, g) -> SuperFunction:
    """``D[[f,g]] - [[Df,g]] - (-1)^{(|f|-1)|D|}[[f,Dg]]``."""
    out = SuperFunction.zero(*pi.dims)
    br = pi.bracket
    for pf, fp in f.parts():
        for pg, gp in g.parts():
            s = _sgn((pf ^ 1) & D.parity)
            out = out + D(br(fp, gp)) - br(D(fp), gp) - br(fp, D(gp)).scale(s)
    return out


def is_weak_qsp(
    pi: OddPoissonStructure, D: GradedVectorField, dv: DivergenceOp, degree: int = 3, seed: int = 0, extra: int = 20
) -> Certificate:
    """Weak SP, QS, and ``D`` a derivation of the bracket (checked on probes)."""
    sp = is_weak_sp(pi, dv, degree)
    if not sp:
        return sp
    qs = is_qs(D, dv)
    if not qs:
        return qs
    rng = random.Random(seed)
    pairs = _pairs(*pi.dims, degree, rng, extra)
    for f, g in pairs:
        r = bracket_derivation_defect(pi, D, f, g)
        if r:
            return Certificate(False, degree, counterexample=f"D not a derivation of the bracket at ({f}, {g}): {r}")
    return Certificate(True, degree, sp.checked + len(pairs))


def is_qsp(pi: OddPoissonStructure, h: SuperFunction, dv: DivergenceOp, degree: int = 3, seed: int = 0) -> Certificate:
    """Weak QSP with ``D = X_h`` for even ``h`` and a nondegenerate bracket.

    Nondegeneracy is taken from the model (``pi.nondegenerate``), not computed.
    """
    if not h.is_of_parity(0):
        raise ParityError("QSP structure needs an even hamiltonian")
    if not pi.nondegenerate:
        return Certificate(False, degree, counterexample="bracket not known to be nondegenerate")
    cert = is_weak_qsp(pi, pi.hamiltonian(h), dv, degree, seed)
    cert.notes.append("nondegeneracy asserted by the model")
    return cert


def first_nonzero(residuals: Iterable[SuperFunction]) -> SuperFunction | None:
    for r in residuals:
        if r:
            return r
    return None
