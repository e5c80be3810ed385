"""Divergence operators on R^{m|n} and their curvature.

A divergence is an even linear map ``div`` from graded vector fields to
functions with ``div(fD) = f div(D) + (-1)^{|f||D|} D(f)``.  Three kinds are
provided: the one attached to the coordinate berezinian, a deformation of any
divergence by an even weight ``w`` (the change of volume ``xi -> xi.e^{2w}``),
and the supertrace divergence of a graded connection.
"""

from __future__ import annotations

from .dervec import GradedVectorField, commutator
from .supernum import DimensionError, ParityError, SuperFunction

__all__ = [
    "DivergenceOp",
    "CoordinateDivergence",
    "DeformedDivergence",
    "SupertraceDivergence",
    "evaluate",
    "curvature",
    "deform",
]


class DivergenceOp:
    m: int
    n: int

    def __call__(self, D: GradedVectorField) -> SuperFunction:
        if D.dims != (self.m, self.n):
            raise DimensionError(f"divergence on R^{self.m}|{self.n} applied to field on R^{D.m}|{D.n}")
        return self._evaluate(D)

    evaluate = __call__

    def _evaluate(self, D):
        raise NotImplementedError

    def curvature(self, D1: GradedVectorField, D2: GradedVectorField) -> SuperFunction:
        """``div[D1,D2] - D1(div D2) + (-1)^{|D1||D2|} D2(div D1)``."""
        sign = -1 if D1.parity & D2.parity else 1
        return self(commutator(D1, D2)) - D1(self(D2)) + D2(self(D1)).scale(sign)

    def deform(self, w: SuperFunction) -> DeformedDivergence:
        return DeformedDivergence(self, w)

    @property
    def kind(self) -> str:
        raise NotImplementedError


class CoordinateDivergence(DivergenceOp):
    """Divergence of the coordinate berezinian on R^{m|n}:
    ``sum dg^i/dx^i + sum (-1)^{|h^r|} dh^r/ds^r``.
    """

    kind = "coordinate"

    def __init__(self, m: int, n: int):
        self.m, self.n = m, n

    def _evaluate(self, D):
        out = SuperFunction.zero(self.m, self.n)
        for i, g in enumerate(D.even):
            out = out + g.diff_x(i)
        # every h^r has parity |D| + 1
        sign = 1 if D.parity else -1
        for r, h in enumerate(D.odd):
            out = out + h.diff_s(r).scale(sign)
        return out

    def __repr__(self):
        return f"CoordinateDivergence({self.m}, {self.n})"


class DeformedDivergence(DivergenceOp):
    """``div'(D) = div(D) + D(2w)`` for an even weight ``w``."""

    kind = "deformed"

    def __init__(self, base: DivergenceOp, w: SuperFunction):
        if w.dims != (base.m, base.n):
            raise DimensionError("weight lives in a different algebra")
        if not w.is_of_parity(0):
            raise ParityError(f"deformation weight must be even, got {w}")
        self.base, self.w = base, w
        self.m, self.n = base.m, base.n
        self._two_w = w.scale(2)

    def _evaluate(self, D):
        return self.base(D) + D(self._two_w)

    def __repr__(self):
        return f"DeformedDivergence({self.base!r}, w={self.w})"


class SupertraceDivergence(DivergenceOp):
    """``div(D) = sTr(nabla_D - ad_D)`` for a graded connection."""

    kind = "supertrace"

    def __init__(self, connection):
        self.connection = connection
        self.m, self.n = connection.dims

    def _evaluate(self, D):
        return self.connection.str_divergence(D)

    def __repr__(self):
        return f"SupertraceDivergence({self.connection!r})"


def evaluate(dv: DivergenceOp, D: GradedVectorField) -> SuperFunction:
    return dv(D)


def curvature(dv: DivergenceOp, D1: GradedVectorField, D2: GradedVectorField) -> SuperFunction:
    return dv.curvature(D1, D2)


def deform(dv: DivergenceOp, w: SuperFunction) -> DeformedDivergence:
    return dv.deform(w)


def axiom_defect(dv: DivergenceOp, f: SuperFunction, D: GradedVectorField) -> SuperFunction:
    """Residual of ``div(fD) - f div(D) - (-1)^{|f||D|} D(f)``; zero for a divergence."""
    from .dervec import module_action

    p = f.parity
    if p is None:
        raise ParityError("axiom check needs a homogeneous function")
    sign = -1 if p & D.parity else 1
    return dv(module_action(f, D)) - f * dv(D) - D(f).scale(sign)
