"""Exact arithmetic in Q[x1..xm] (x) Lambda(s1..sn).

Elements are stored as sparse dictionaries keyed by ``(odd, exps)`` where
``odd`` is a strictly increasing tuple of 0-based odd generator indices and
``exps`` is the exponent tuple of the even generators.  Coefficients are
Python ints or :class:`fractions.Fraction`; nothing is ever rounded.

Text syntax (1-based indices)::

    3/2*x1^2*s1*s2 - s2

Odd generators may be written ``s<j>`` or ``xi<j>``; they are the same
variable.  Odd factors may appear in any order when parsing and are
normalised with the Koszul sign.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping

__all__ = [
    "DimensionError",
    "ParityError",
    "Poly",
    "SuperFunction",
    "add",
    "mul",
    "partial",
    "berezin_fiber",
    "parse",
    "monomial_basis",
]


class DimensionError(ValueError):
    """Operands live in algebras of different dimensions."""


class ParityError(ValueError):
    """An operand does not have the required (homogeneous) parity."""


def _coef(c):
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return _coef(Fraction(c))
    if isinstance(c, Rational):
        return _coef(Fraction(c.numerator, c.denominator))
    raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")


def _fmt_coef(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


@lru_cache(maxsize=1 << 16)
def _odd_mul(a: tuple, b: tuple):
    """Product of two odd monomials: ``(sign, merged)`` or ``None`` if zero."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    sa = set(a)
    if not sa.isdisjoint(b):
        return None
    # sign = (-1)^(number of pairs i in a, j in b with i > j)
    inv = 0
    for j in b:
        for i in a:
            if i > j:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(a + b))


def _exp_key(exps: tuple):
    # graded-lex, higher powers of earlier variables first
    return (sum(exps), tuple(-e for e in exps))


class Poly:
    """Polynomial with exact rational coefficients in ``nvars`` even variables."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise DimensionError(f"exponent {exps} has wrong length for {nvars} variables")
                c = _coef(c)
                if c != 0:
                    clean[exps] = clean.get(exps, 0) + c
            clean = {k: v for k, v in clean.items() if v != 0}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, nvars: int, c) -> Poly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> Poly:
        """The 0-based ``i``-th coordinate function."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def terms(self) -> dict:
        return dict(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items(), key=lambda kv: _exp_key(kv[0])))

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, 0)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def _check(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionError(f"{self.nvars} vs {other.nvars} variables")
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = _coef(other)
            if c == 0:
                return Poly._raw(self.nvars, {})
            return Poly._raw(self.nvars, {e: v * c for e, v in self._terms.items()})
        other = self._check(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: _coef(c) for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomial")
        result = Poly.constant(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def diff(self, i: int) -> Poly:
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return Poly._raw(self.nvars, out)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def to_superfunction(self, n: int = 0) -> SuperFunction:
        return SuperFunction._raw(self.nvars, n, {((), e): c for e, c in self._terms.items()})

    def __str__(self):
        return self.to_superfunction().format()

    def __repr__(self):
        return f"Poly({self.nvars}, {str(self)!r})"


class SuperFunction:
    """An element of Q[x1..xm] (x) Lambda(s1..sn) in normal form.

    Instances are immutable.  Arithmetic operators work between elements of
    the same ambient dimensions ``(m, n)``; rational scalars are accepted on
    either side.
    """

    __slots__ = ("m", "n", "_terms", "_hash")

    def __init__(self, m: int, n: int, terms: Mapping[tuple, object] | None = None):
        if m < 0 or n < 0:
            raise ValueError("dimensions must be non-negative")
        self.m = m
        self.n = n
        out: dict = {}
        if terms:
            for (odd, exps), c in terms.items():
                c = _coef(c)
                exps = tuple(exps)
                if len(exps) != m:
                    raise DimensionError(f"exponent {exps} has wrong length for m={m}")
                if any(e < 0 for e in exps):
                    raise ValueError("negative exponent")
                odd = tuple(odd)
                if any(not 0 <= j < n for j in odd):
                    raise DimensionError(f"odd index out of range in {odd} for n={n}")
                sign = 1
                if list(odd) != sorted(set(odd)):
                    if len(set(odd)) != len(odd):
                        continue
                    # bubble into ascending order collecting transpositions
                    lst = list(odd)
                    for a in range(len(lst)):
                        for b in range(len(lst) - 1 - a):
                            if lst[b] > lst[b + 1]:
                                lst[b], lst[b + 1] = lst[b + 1], lst[b]
                                sign = -sign
                    odd = tuple(lst)
                key = (odd, exps)
                out[key] = out.get(key, 0) + sign * c
        self._terms = {k: v for k, v in out.items() if v != 0}
        self._hash = None

    @classmethod
    def _raw(cls, m, n, terms):
        f = cls.__new__(cls)
        f.m = m
        f.n = n
        f._terms = terms
        f._hash = None
        return f

    @classmethod
    def _from_acc(cls, m, n, acc):
        out = {}
        for k, c in acc.items():
            if c:
                if type(c) is Fraction and c.denominator == 1:
                    c = c.numerator
                out[k] = c
        return cls._raw(m, n, out)

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, m: int, n: int) -> SuperFunction:
        return cls._raw(m, n, {})

    @classmethod
    def constant(cls, m: int, n: int, c) -> SuperFunction:
        return cls(m, n, {((), (0,) * m): c})

    @classmethod
    def x(cls, m: int, n: int, i: int) -> SuperFunction:
        """Even coordinate ``x^(i+1)`` (0-based ``i``)."""
        if not 0 <= i < m:
            raise IndexError(f"even coordinate {i} out of range for m={m}")
        e = [0] * m
        e[i] = 1
        return cls._raw(m, n, {((), tuple(e)): 1})

    @classmethod
    def s(cls, m: int, n: int, j: int) -> SuperFunction:
        """Odd coordinate ``s^(j+1)`` (0-based ``j``)."""
        if not 0 <= j < n:
            raise IndexError(f"odd coordinate {j} out of range for n={n}")
        return cls._raw(m, n, {((j,), (0,) * m): 1})

    @classmethod
    def from_poly(cls, p: Poly, n: int = 0) -> SuperFunction:
        return p.to_superfunction(n)

    # inspection -----------------------------------------------------------

    @property
    def dims(self) -> tuple[int, int]:
        return self.m, self.n

    def items(self) -> Iterator[tuple[tuple, tuple, object]]:
        """Yield ``(odd, exps, coef)`` in canonical order."""
        for (odd, exps), c in sorted(self._terms.items(), key=_term_key):
            yield odd, exps, c

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def odd_monomials(self) -> list[tuple]:
        return sorted({odd for odd, _ in self._terms}, key=lambda o: (len(o), o))

    def coefficient(self, odd: Iterable[int]) -> Poly:
        """Polynomial coefficient of the odd monomial ``odd`` (0-based, ascending)."""
        odd = tuple(odd)
        return Poly._raw(self.m, {e: c for (o, e), c in self._terms.items() if o == odd})

    def body(self) -> Poly:
        return self.coefficient(())

    @property
    def parity(self) -> int | None:
        """0 or 1 for homogeneous elements, ``None`` when mixed; zero is even."""
        ps = {len(odd) & 1 for odd, _ in self._terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def is_of_parity(self, p: int) -> bool:
        return all((len(odd) & 1) == p for odd, _ in self._terms)

    def parts(self) -> list[tuple[int, SuperFunction]]:
        """Homogeneous components as ``[(parity, part), ...]`` (nonzero parts only)."""
        even = {k: v for k, v in self._terms.items() if not len(k[0]) & 1}
        odd = {k: v for k, v in self._terms.items() if len(k[0]) & 1}
        out = []
        if even:
            out.append((0, SuperFunction._raw(self.m, self.n, even)))
        if odd:
            out.append((1, SuperFunction._raw(self.m, self.n, odd)))
        return out

    def even_part(self) -> SuperFunction:
        return SuperFunction._raw(self.m, self.n, {k: v for k, v in self._terms.items() if not len(k[0]) & 1})

    def odd_part(self) -> SuperFunction:
        return SuperFunction._raw(self.m, self.n, {k: v for k, v in self._terms.items() if len(k[0]) & 1})

    def degree_part(self, k: int) -> SuperFunction:
        """Component of odd (exterior) degree ``k``."""
        return SuperFunction._raw(self.m, self.n, {key: v for key, v in self._terms.items() if len(key[0]) == k})

    @property
    def even_degree(self) -> int:
        return max((sum(e) for _, e in self._terms), default=-1)

    @property
    def odd_degrees(self) -> set[int]:
        return {len(o) for o, _ in self._terms}

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> SuperFunction:
        if isinstance(other, SuperFunction):
            if (other.m, other.n) != (self.m, self.n):
                raise DimensionError(f"R^{self.m}|{self.n} vs R^{other.m}|{other.n}")
            return other
        if isinstance(other, Poly):
            if other.nvars != self.m:
                raise DimensionError(f"polynomial in {other.nvars} variables, expected {self.m}")
            return other.to_superfunction(self.n)
        return SuperFunction.constant(self.m, self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return SuperFunction._from_acc(self.m, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperFunction._raw(self.m, self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                del out[k]
        return SuperFunction._from_acc(self.m, self.n, out)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> SuperFunction:
        c = _coef(c)
        if c == 0:
            return SuperFunction._raw(self.m, self.n, {})
        return SuperFunction._from_acc(self.m, self.n, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, (SuperFunction, Poly)):
            return self.scale(other)
        other = self._coerce(other)
        acc: dict = {}
        get = acc.get
        for (o1, e1), c1 in self._terms.items():
            for (o2, e2), c2 in other._terms.items():
                r = _odd_mul(o1, o2)
                if r is None:
                    continue
                sign, o = r
                k = (o, tuple([a + b for a, b in zip(e1, e2)]))
                acc[k] = get(k, 0) + (c1 * c2 if sign > 0 else -c1 * c2)
        return SuperFunction._from_acc(self.m, self.n, acc)

    def __rmul__(self, other):
        # scalars and polynomials are even, so they commute
        if isinstance(other, Poly):
            return self._coerce(other) * self
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = SuperFunction.constant(self.m, self.n, 1)
        for _ in range(k):
            result = result * self
        return result

    def diff_x(self, i: int) -> SuperFunction:
        """Partial derivative along the even coordinate ``i`` (0-based)."""
        if not 0 <= i < self.m:
            raise IndexError(f"even coordinate {i} out of range for m={self.m}")
        out = {}
        for (odd, e), c in self._terms.items():
            k = e[i]
            if k:
                out[(odd, e[:i] + (k - 1,) + e[i + 1:])] = c * k
        return SuperFunction._raw(self.m, self.n, out)

    def diff_s(self, j: int) -> SuperFunction:
        """Left derivative along the odd coordinate ``j`` (0-based).

        The generator is moved to the front, collecting one sign per
        transposition, and then deleted.
        """
        if not 0 <= j < self.n:
            raise IndexError(f"odd coordinate {j} out of range for n={self.n}")
        out = {}
        for (odd, e), c in self._terms.items():
            if j in odd:
                pos = odd.index(j)
                out[(odd[:pos] + odd[pos + 1:], e)] = -c if pos & 1 else c
        return SuperFunction._raw(self.m, self.n, out)

    def map_coefficients(self, fn: Callable[[Poly], Poly]) -> SuperFunction:
        """Apply ``fn`` to the polynomial coefficient of every odd monomial."""
        out: dict = {}
        for odd in self.odd_monomials():
            p = fn(self.coefficient(odd))
            for e, c in p._terms.items():
                out[(odd, e)] = c
        return SuperFunction._raw(self.m, self.n, out)

    def with_dims(self, m: int, n: int) -> SuperFunction:
        """Re-embed into another ambient algebra.

        Shrinking is allowed only when no term uses a dropped variable.
        """
        out = {}
        for (o, e), c in self._terms.items():
            if any(j >= n for j in o) or any(e[m:]):
                raise DimensionError(f"{self} does not fit in R^{m}|{n}")
            out[(o, e[:m] + (0,) * (m - self.m))] = c
        return SuperFunction._raw(m, n, out)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, SuperFunction):
            return (self.m, self.n) == (other.m, other.n) and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SuperFunction.constant(self.m, self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, self.n, frozenset(self._terms.items())))
        return self._hash

    # text -----------------------------------------------------------------

    def format(self, odd: str = "s", even: str = "x") -> str:
        if not self._terms:
            return "0"
        pieces = []
        for o, e, c in self.items():
            factors = [f"{even}{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k]
            factors += [f"{odd}{j + 1}" for j in o]
            mag = -c if c < 0 else c
            if factors:
                body = "*".join(factors) if mag == 1 else _fmt_coef(mag) + "*" + "*".join(factors)
            else:
                body = _fmt_coef(mag)
            if not pieces:
                pieces.append("-" + body if c < 0 else body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"SuperFunction({self.m}, {self.n}, {self.format()!r})"


def _term_key(kv):
    (odd, exps), _ = kv
    return (len(odd), odd) + _exp_key(exps)


# module-level operations ------------------------------------------------


def add(f: SuperFunction, g: SuperFunction) -> SuperFunction:
    if not isinstance(g, SuperFunction) or f.dims != g.dims:
        raise DimensionError("add requires elements of the same algebra")
    return f + g


def mul(f: SuperFunction, g: SuperFunction) -> SuperFunction:
    if not isinstance(g, SuperFunction) or f.dims != g.dims:
        raise DimensionError("mul requires elements of the same algebra")
    return f * g


_COORD = re.compile(r"^(x|s|xi)(\d+)$")


def partial(f: SuperFunction, var: str) -> SuperFunction:
    """Partial derivative by a coordinate name such as ``"x2"``, ``"s1"`` or ``"xi3"``."""
    mt = _COORD.match(var)
    if not mt:
        raise ValueError(f"not a coordinate name: {var!r}")
    idx = int(mt.group(2)) - 1
    if mt.group(1) == "x":
        if not 0 <= idx < f.m:
            raise DimensionError(f"{var} out of range for m={f.m}")
        return f.diff_x(idx)
    if not 0 <= idx < f.n:
        raise DimensionError(f"{var} out of range for n={f.n}")
    return f.diff_s(idx)


def berezin_fiber(f: SuperFunction) -> Poly:
    """Odd-variable part of the Berezin integral.

    Returns ``(-1)^(n(n-1)/2)`` times the coefficient of ``s1 s2 ... sn``.
    """
    n = f.n
    top = f.coefficient(range(n))
    return -top if (n * (n - 1) // 2) & 1 else top


def monomial_basis(m: int, n: int, degree: int) -> list[SuperFunction]:
    """All monomials ``x^a s^I`` with total even degree at most ``degree``."""
    from itertools import combinations

    exps = [e for e in _exponents(m, degree)]
    odds = [c for k in range(n + 1) for c in combinations(range(n), k)]
    return [SuperFunction._raw(m, n, {(o, e): 1}) for o in odds for e in exps]


def _exponents(m: int, degree: int):
    if m == 0:
        yield ()
        return
    for total in range(degree + 1):
        yield from _compositions(total, m)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|/|\+|-|\(|\)|,))")


class ParseError(ValueError):
    """Malformed expression text; ``pos`` is the character offset."""

    def __init__(self, msg, pos=None):
        super().__init__(msg if pos is None else f"{msg} at position {pos}")
        self.pos = pos


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = mt.start(mt.lastindex)
        if mt.group(1):
            out.append(("num", int(mt.group(1)), start))
        elif mt.group(2):
            out.append(("name", mt.group(2), start))
        else:
            out.append(("op", mt.group(3), start))
        pos = mt.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, m, n, functions):
        self.toks = _tokenize(text)
        self.i = 0
        self.m, self.n = m, n
        self.functions = functions or {}

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, got {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        val = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return val

    def expr(self):
        val = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                const = rhs._terms.get(((), (0,) * self.m))
                if len(rhs) != 1 or const is None:
                    raise ParseError("division only by a nonzero rational constant", pos)
                val = val.scale(Fraction(1) / Fraction(const))
        return val

    def unary(self):
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+", self.peek()[2]):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            k = self.take("num")[1]
            return base ** k
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return SuperFunction.constant(self.m, self.n, val)
        if kind == "op" and val == "(":
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        if kind == "name":
            self.take()
            mt = _COORD.match(val)
            if mt and not (self.peek()[0] == "op" and self.peek()[1] == "("):
                idx = int(mt.group(2)) - 1
                if mt.group(1) == "x":
                    if not 0 <= idx < self.m:
                        raise ParseError(f"{val} out of range for m={self.m}", pos)
                    return SuperFunction.x(self.m, self.n, idx)
                if not 0 <= idx < self.n:
                    raise ParseError(f"{val} out of range for n={self.n}", pos)
                return SuperFunction.s(self.m, self.n, idx)
            if val in self.functions:
                self.take("op", "(")
                args = []
                if not (self.peek()[0] == "op" and self.peek()[1] == ")"):
                    args.append(self.expr())
                    while self.peek()[0] == "op" and self.peek()[1] == ",":
                        self.take()
                        args.append(self.expr())
                self.take("op", ")")
                try:
                    return self.functions[val](*args)
                except TypeError as exc:
                    raise ParseError(f"bad call to {val}: {exc}", pos) from exc
            raise ParseError(f"unknown name {val!r}", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def parse(text: str, m: int, n: int, functions: Mapping[str, Callable] | None = None) -> SuperFunction:
    """Parse superfunction text into the algebra ``R^{m|n}``.

    ``functions`` maps names to callables taking and returning
    :class:`SuperFunction`; it lets callers extend the grammar with
    operators such as ``delta(...)``.
    """
    return _Parser(text, m, n, functions).parse()
