from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gbv.sampling import random_homogeneous, random_superfunction
from gbv.supernum import (
    DimensionError,
    ParseError,
    SuperFunction,
    add,
    berezin_fiber,
    monomial_basis,
    mul,
    parse,
    partial,
)

from conftest import F, seeds
import random


# addition and products

def test_add_zero_is_identity():
    assert add(F("s1", 1, 2), F("0", 1, 2)) == F("s1", 1, 2)


def test_add_inverse_cancels():
    assert add(F("s1", 1, 2), F("-1*s1", 1, 2)) == SuperFunction.zero(1, 2)
    assert not add(F("s1", 1, 2), F("-s1", 1, 2))


def test_add_disjoint_supports_keeps_both_terms():
    f = add(F("x1", 1, 2), F("s1*s2", 1, 2))
    assert len(f) == 2
    assert f == F("x1 + s1*s2", 1, 2)


def test_odd_square_vanishes():
    assert mul(F("s1*s2", 1, 2), F("s1", 1, 2)) == F("0", 1, 2)


def test_odd_generators_anticommute():
    assert mul(F("s2", 0, 2), F("s1", 0, 2)) == F("-s1*s2", 0, 2)


def test_square_of_mixed_element():
    f = F("x1 + s1*s2", 1, 2)
    assert f * f == F("x1^2 + 2*x1*s1*s2", 1, 2)


def test_xi_and_s_name_the_same_generator():
    assert F("xi1*xi2", 2) == F("s1*s2", 2)


def test_rational_coefficients_stay_exact():
    f = F("x1/3 + s1/2", 1, 1)
    assert f.coefficient((0,)).constant_term() == Fraction(1, 2)
    assert (f.scale(6)) == F("2*x1 + 3*s1", 1, 1)


# derivatives

def test_left_derivative_first_factor():
    assert partial(F("s1*s2", 0, 2), "s1") == F("s2", 0, 2)


def test_left_derivative_second_factor_picks_sign():
    assert partial(F("s1*s2", 0, 2), "s2") == F("-s1", 0, 2)


def test_even_derivative():
    assert partial(F("x1^2*s1", 1, 1), "x1") == F("2*x1*s1", 1, 1)


def test_partial_rejects_unknown_coordinate():
    with pytest.raises(DimensionError):
        partial(F("x1", 1, 1), "x3")


# Berezin integral over the fibre

def test_berezin_top_term_sign_two_odd():
    assert berezin_fiber(F("5*s1*s2", 0, 2)).constant_term() == -5


def test_berezin_without_top_term():
    assert not berezin_fiber(F("x1", 1, 2))


def test_berezin_one_odd():
    b = berezin_fiber(F("x1*s1", 1, 1))
    assert b == F("x1", 1, 0).body()


# parser

@pytest.mark.parametrize("text", ["x1 +", "x4", "s1 ** 2", "2 / x1", "foo(x1)", "(x1"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text, 2, 2)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse("x1 + x9", 2, 2)
    assert exc.value.pos == 5


def test_parse_round_trip_through_format():
    f = F("3*x1^2*s1 - x2*s1*s2 + 7", 2)
    assert parse(f.format(), 2, 2) == f


def test_monomial_basis_size():
    # monomials in x1 of degree <= 2, times 1, s1, s2, s1s2
    assert len(monomial_basis(1, 2, 2)) == 12


# algebraic laws on random elements

def _three(seed, m=2, n=3):
    rng = random.Random(seed)
    return [random_superfunction(rng, m, n, 2) for _ in range(3)]


@given(seeds)
def test_product_is_associative(seed):
    f, g, h = _three(seed)
    assert (f * g) * h == f * (g * h)


@given(seeds)
def test_product_distributes(seed):
    f, g, h = _three(seed)
    assert f * (g + h) == f * g + f * h


@given(seeds)
def test_graded_commutativity(seed):
    rng = random.Random(seed)
    pf, f = random_homogeneous(rng, 2, 3, 2)
    pg, g = random_homogeneous(rng, 2, 3, 2)
    sign = -1 if pf and pg else 1
    assert f * g == (g * f).scale(sign)


@given(seeds, st.integers(0, 2))
def test_odd_derivative_is_graded_leibniz(seed, j):
    rng = random.Random(seed)
    pf, f = random_homogeneous(rng, 2, 3, 2)
    g = random_superfunction(rng, 2, 3, 2)
    sign = -1 if pf else 1
    assert (f * g).diff_s(j) == f.diff_s(j) * g + (f * g.diff_s(j)).scale(sign)


@given(seeds, st.integers(0, 2), st.integers(0, 2))
def test_odd_derivatives_anticommute(seed, i, j):
    f = random_superfunction(random.Random(seed), 1, 3, 2)
    assert f.diff_s(i).diff_s(j) == -f.diff_s(j).diff_s(i)
