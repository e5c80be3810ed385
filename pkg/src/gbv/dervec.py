"""Graded vector fields on R^{m|n}, stored by coordinate coefficients."""

from __future__ import annotations

import re
from typing import Sequence

from .supernum import DimensionError, ParityError, SuperFunction, parse

__all__ = [
    "GradedVectorField",
    "apply",
    "commutator",
    "module_action",
    "de_rham_field",
    "parse_vector_field",
]


class GradedVectorField:
    """``D = sum g^i d/dx^i + sum h^r d/ds^r`` with a definite parity.

    For parity ``p`` every ``g^i`` must have parity ``p`` and every ``h^r``
    parity ``p + 1``; zero coefficients are compatible with either.
    """

    __slots__ = ("m", "n", "even", "odd", "parity")

    def __init__(self, even: Sequence[SuperFunction], odd: Sequence[SuperFunction], parity: int | None = None):
        even = tuple(even)
        odd = tuple(odd)
        coeffs = even + odd
        if not coeffs:
            raise ValueError("cannot infer dimensions of a field on R^{0|0}; use GradedVectorField.zero")
        m, n = coeffs[0].dims
        if len(even) != m or len(odd) != n:
            raise DimensionError(f"expected {m} even and {n} odd coefficients, got {len(even)} and {len(odd)}")
        if any(c.dims != (m, n) for c in coeffs):
            raise DimensionError("coefficients live in different algebras")
        if parity is None:
            parity = _infer_parity(even, odd)
        parity &= 1
        for g in even:
            if not g.is_of_parity(parity):
                raise ParityError(f"even-direction coefficient {g} is not of parity {parity}")
        for h in odd:
            if not h.is_of_parity(parity ^ 1):
                raise ParityError(f"odd-direction coefficient {h} is not of parity {parity ^ 1}")
        self.m, self.n = m, n
        self.even, self.odd, self.parity = even, odd, parity

    @classmethod
    def _raw(cls, m, n, even, odd, parity):
        D = cls.__new__(cls)
        D.m, D.n, D.even, D.odd, D.parity = m, n, tuple(even), tuple(odd), parity
        return D

    @classmethod
    def zero(cls, m: int, n: int, parity: int = 0) -> GradedVectorField:
        z = SuperFunction.zero(m, n)
        return cls._raw(m, n, (z,) * m, (z,) * n, parity & 1)

    @classmethod
    def d_dx(cls, m: int, n: int, i: int) -> GradedVectorField:
        z, one = SuperFunction.zero(m, n), SuperFunction.constant(m, n, 1)
        return cls._raw(m, n, [one if k == i else z for k in range(m)], [z] * n, 0)

    @classmethod
    def d_ds(cls, m: int, n: int, j: int) -> GradedVectorField:
        z, one = SuperFunction.zero(m, n), SuperFunction.constant(m, n, 1)
        return cls._raw(m, n, [z] * m, [one if k == j else z for k in range(n)], 1)

    @classmethod
    def from_action(cls, m: int, n: int, action, parity: int) -> GradedVectorField:
        """The derivation whose values on the coordinates are given by ``action``."""
        even = [action(SuperFunction.x(m, n, i)) for i in range(m)]
        odd = [action(SuperFunction.s(m, n, j)) for j in range(n)]
        return cls(even, odd, parity) if even or odd else cls.zero(m, n, parity)

    @property
    def dims(self):
        return self.m, self.n

    def coefficients(self) -> tuple[SuperFunction, ...]:
        return self.even + self.odd

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients())

    def __call__(self, f: SuperFunction) -> SuperFunction:
        if f.dims != self.dims:
            raise DimensionError(f"field on R^{self.m}|{self.n} applied to element of R^{f.m}|{f.n}")
        out = SuperFunction.zero(self.m, self.n)
        for i, g in enumerate(self.even):
            if g:
                df = f.diff_x(i)
                if df:
                    out = out + g * df
        for j, h in enumerate(self.odd):
            if h:
                df = f.diff_s(j)
                if df:
                    out = out + h * df
        return out

    def _check(self, other):
        if not isinstance(other, GradedVectorField):
            return NotImplemented
        if other.dims != self.dims:
            raise DimensionError("fields on different supermanifolds")
        if other.parity != self.parity and not other.is_zero() and not self.is_zero():
            raise ParityError("sum of fields with different parities is not homogeneous")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        p = other.parity if self.is_zero() else self.parity
        return GradedVectorField._raw(
            self.m, self.n,
            [a + b for a, b in zip(self.even, other.even)],
            [a + b for a, b in zip(self.odd, other.odd)],
            p,
        )

    def __neg__(self):
        return GradedVectorField._raw(self.m, self.n, [-a for a in self.even], [-a for a in self.odd], self.parity)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> GradedVectorField:
        return GradedVectorField._raw(
            self.m, self.n, [a.scale(c) for a in self.even], [a.scale(c) for a in self.odd], self.parity
        )

    def __rmul__(self, f):
        if isinstance(f, SuperFunction):
            return module_action(f, self)
        return self.scale(f)

    def __eq__(self, other):
        if not isinstance(other, GradedVectorField):
            return NotImplemented
        if self.dims != other.dims or self.coefficients() != other.coefficients():
            return False
        return self.parity == other.parity or self.is_zero()

    def __hash__(self):
        return hash((self.dims, self.coefficients()))

    def format(self, odd: str = "s") -> str:
        parts = []
        for i, g in enumerate(self.even):
            if g:
                parts.append(f"({g.format(odd)})d/dx{i + 1}")
        for j, h in enumerate(self.odd):
            if h:
                parts.append(f"({h.format(odd)})d/d{odd}{j + 1}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"GradedVectorField[{self.parity}]({self.format()})"


def _infer_parity(even, odd) -> int:
    for g in even:
        if g:
            p = g.parity
            if p is None:
                raise ParityError(f"coefficient {g} is not homogeneous")
            return p
    for h in odd:
        if h:
            p = h.parity
            if p is None:
                raise ParityError(f"coefficient {h} is not homogeneous")
            return p ^ 1
    return 0


def apply(D: GradedVectorField, f: SuperFunction) -> SuperFunction:
    return D(f)


def commutator(D1: GradedVectorField, D2: GradedVectorField) -> GradedVectorField:
    """Graded commutator ``D1 D2 - (-1)^{|D1||D2|} D2 D1``.

    Computed on the coordinate functions, where ``D(x^i)`` and ``D(s^r)`` are
    just the stored coefficients.
    """
    if D1.dims != D2.dims:
        raise DimensionError("fields on different supermanifolds")
    sign = -1 if D1.parity & D2.parity else 1
    even = [D1(b) - D2(a).scale(sign) for a, b in zip(D1.even, D2.even)]
    odd = [D1(b) - D2(a).scale(sign) for a, b in zip(D1.odd, D2.odd)]
    return GradedVectorField._raw(D1.m, D1.n, even, odd, D1.parity ^ D2.parity)


def module_action(f: SuperFunction, D: GradedVectorField) -> GradedVectorField:
    """The field ``fD``: every coefficient multiplied on the left by ``f``."""
    if f.dims != D.dims:
        raise DimensionError("function and field live on different supermanifolds")
    p = f.parity
    if p is None:
        raise ParityError("module action needs a homogeneous function")
    return GradedVectorField._raw(D.m, D.n, [f * g for g in D.even], [f * h for h in D.odd], p ^ D.parity)


def de_rham_field(m: int) -> GradedVectorField:
    """The de Rham differential ``sum s^i d/dx^i`` on R^{m|m} (``s^i = dx^i``)."""
    z = SuperFunction.zero(m, m)
    return GradedVectorField._raw(m, m, [SuperFunction.s(m, m, i) for i in range(m)], [z] * m, 1)


_FIELD_TERM = re.compile(r"\(\s*(.*?)\s*\)\s*d/d(x|s|xi)(\d+)")


def parse_vector_field(text: str, m: int, n: int, parity: int | None = None) -> GradedVectorField:
    """Parse ``(<superfn>)d/dx<i> + (<superfn>)d/ds<j>`` terms joined by ``+``.

    Coefficient text must not itself contain parentheses.
    """
    even = [SuperFunction.zero(m, n)] * m
    odd = [SuperFunction.zero(m, n)] * n
    rest = text.strip()
    if rest == "0":
        return GradedVectorField.zero(m, n, parity or 0)
    pos = 0
    while pos < len(rest):
        mt = _FIELD_TERM.match(rest, pos)
        if not mt:
            raise ValueError(f"cannot parse vector field term at position {pos}: {rest[pos:]!r}")
        coef = parse(mt.group(1), m, n)
        idx = int(mt.group(3)) - 1
        if mt.group(2) == "x":
            if not 0 <= idx < m:
                raise IndexError(f"d/dx{idx + 1} out of range for m={m}")
            even[idx] = even[idx] + coef
        else:
            if not 0 <= idx < n:
                raise IndexError(f"d/ds{idx + 1} out of range for n={n}")
            odd[idx] = odd[idx] + coef
        pos = mt.end()
        tail = rest[pos:].lstrip()
        if tail.startswith("+"):
            pos = len(rest) - len(tail) + 1
            while pos < len(rest) and rest[pos].isspace():
                pos += 1
        elif tail:
            raise ValueError(f"expected '+' between terms, got {tail!r}")
        else:
            break
    if m + n == 0:
        return GradedVectorField.zero(m, n, parity or 0)
    return GradedVectorField(even, odd, parity)
