import random

import pytest
from hypothesis import given

from gbv.derham import Bivector, KoszulSchoutenStructure, d, lie_field, poisson_bracket
from gbv.divergence import CoordinateDivergence
from gbv.dervec import GradedVectorField, de_rham_field, parse_vector_field
from gbv.oddpoisson import (
    Generator,
    bv_defect,
    curvature_link_defect,
    deform_defect,
    deform_generator,
    derdelta_defect,
    exp_master_defect,
    exp_nilpotent,
    hamiltonian_morphism_defect,
    is_qs,
    is_qsp,
    is_weak_qsp,
    is_weak_sp,
    jacobi_defect,
    leibniz_defect,
    master_defect,
    master_square_defect,
    newgenerator_defect,
    probe_basis,
    skew_defect,
)
from gbv.sampling import random_even, random_field, random_homogeneous
from gbv.schouten import SchoutenStructure, schouten_generator
from gbv.supernum import ParityError, SuperFunction

from conftest import F, seeds

LP3 = Bivector(3, [["0", "x3", "-x2"], ["-x3", "0", "x1"], ["x2", "-x1", "0"]])
SYMP2 = Bivector(2, [["0", "1"], ["-1", "0"]])


def ks_gen(P):
    return Generator(KoszulSchoutenStructure(P), CoordinateDivergence(P.m, P.m))


# brackets

def test_canonical_pairing():
    assert SchoutenStructure(1).bracket(F("xi1", 1), F("x1", 1)) == F("1", 1)


def test_constant_bivector_bracket_vanishes():
    P = F("xi1*xi2", 2)
    assert not SchoutenStructure(2).bracket(P, P)


def test_ks_bracket_of_function_and_exact_form():
    ks = KoszulSchoutenStructure(LP3)
    f, g = F("x1*x2", 3), F("x3^2 + x1", 3)
    assert ks.bracket(f, d(g)) == poisson_bracket(LP3, f, g)


def test_schouten_hamiltonian_of_euler_multivector():
    X = SchoutenStructure(1).hamiltonian(F("x1*xi1", 1))
    assert X == parse_vector_field("(x1)d/dx1 + (-s1)d/ds1", 1, 1)


def test_hamiltonian_of_constant_is_zero():
    assert SchoutenStructure(2).hamiltonian(F("1", 2)).is_zero()
    assert KoszulSchoutenStructure(LP3).hamiltonian(F("1", 3)).is_zero()


def test_ks_hamiltonian_of_exact_form_is_lie_derivative():
    P = Bivector(2, [["0", "x1"], ["-x1", "0"]])
    g = F("x1*x2^2", 2)
    H = [poisson_bracket(P, g, F(f"x{i + 1}", 2)) for i in range(2)]
    assert KoszulSchoutenStructure(P).hamiltonian(d(g)) == lie_field(H, 2)


# generators

def test_generator_on_euler_multivector():
    assert schouten_generator(1)(F("x1*xi1", 1)) == F("-1", 1)


def test_generator_kills_constants_and_constant_bivector():
    gen = schouten_generator(2)
    assert not gen(F("1", 2))
    assert not gen(F("xi1*xi2", 2))


def test_bv_defect_on_units():
    one = F("1", 2)
    assert not bv_defect(schouten_generator(2), one, one)


def test_deformed_generator_on_xi():
    gen = schouten_generator(1)
    w, f = F("x1^2", 1), F("xi1", 1)
    assert deform_generator(gen, w)(f) == F("-2*x1", 1)
    assert gen(f) + gen.bracket(w, f) == F("-2*x1", 1)


def test_zero_weight_leaves_generator_alone():
    gen = schouten_generator(2)
    f = F("x1*x2*xi1 + xi1*xi2", 2)
    assert deform_generator(gen, F("0", 2))(f) == gen(f)


def test_master_defect_of_constants():
    gen = schouten_generator(2)
    assert not master_defect(gen, F("0", 2))
    assert not master_defect(gen, F("5", 2))


def test_master_square_on_probes():
    gen = schouten_generator(2)
    w = F("x1*xi1*xi2", 2)
    probes = probe_basis(2, 2, 2)
    assert len(probes) >= 20
    for f in probes[:20]:
        assert not master_square_defect(gen, w, f)


def test_odd_weight_rejected():
    with pytest.raises(ParityError):
        master_defect(schouten_generator(1), F("xi1", 1))


def test_exp_of_nilpotent_truncates():
    w = F("s1*s2 + s3*s4", 0, 4)
    assert exp_nilpotent(w) == F("1 + s1*s2 + s3*s4 + s1*s2*s3*s4", 0, 4)
    with pytest.raises(ValueError):
        exp_nilpotent(F("x1", 1, 1))


# predicates

def test_symplectic_cotangent_model_is_qsp():
    pi = SchoutenStructure(2)
    dv = CoordinateDivergence(2, 2)
    P = F("xi1*xi2", 2)
    D = pi.hamiltonian(P)
    assert is_weak_sp(pi, dv)
    assert is_qs(D, dv)
    assert is_weak_qsp(pi, D, dv)
    assert is_qsp(pi, P, dv)


def test_de_rham_differential_is_qs():
    assert is_qs(de_rham_field(1), CoordinateDivergence(1, 1))


def test_zero_field_is_qs():
    assert is_qs(GradedVectorField.zero(2, 2, 1), CoordinateDivergence(2, 2))


def test_non_square_zero_field_is_not_qs():
    D = parse_vector_field("(s1)d/dx1 + (x1)d/ds1", 1, 1)
    cert = is_qs(D, CoordinateDivergence(1, 1))
    assert not cert and "[D,D]" in cert.counterexample


def test_degenerate_ks_structure_is_not_qsp():
    pi = KoszulSchoutenStructure(LP3)
    assert not is_qsp(pi, F("0", 3), CoordinateDivergence(3, 3), degree=1)


# random identities

def _structures():
    return [
        Generator(SchoutenStructure(2), CoordinateDivergence(2, 2)),
        Generator(SchoutenStructure(2), CoordinateDivergence(2, 2).deform(F("x1*x2 + x1*xi1*xi2", 2))),
        ks_gen(SYMP2),
        ks_gen(LP3),
    ]


@given(seeds)
def test_bracket_axioms_random(seed):
    rng = random.Random(seed)
    for gen in _structures():
        m = gen.pi.m
        f, g, h = (random_homogeneous(rng, m, m, 2)[1] for _ in range(3))
        assert not skew_defect(gen.pi, f, g)
        assert not jacobi_defect(gen.pi, f, g, h)
        assert not leibniz_defect(gen.pi, f, g, h)
        assert hamiltonian_morphism_defect(gen.pi, f, g).is_zero()


@given(seeds)
def test_generator_identities_random(seed):
    rng = random.Random(seed)
    for gen in _structures():
        m = gen.pi.m
        f, g = (random_homogeneous(rng, m, m, 2)[1] for _ in range(2))
        assert not bv_defect(gen, f, g)
        assert not curvature_link_defect(gen, f, g)
        D = random_field(rng, m, m, 1, parity=1)
        assert not derdelta_defect(gen, D, f, g)


@given(seeds)
def test_deformation_laws_random(seed):
    rng = random.Random(seed)
    gen = ks_gen(SYMP2)
    w = random_even(rng, 2, 2, 2)
    f = random_homogeneous(rng, 2, 2, 2)[1]
    assert not deform_defect(gen, w, f)
    assert not master_square_defect(gen, w, f)
    nil = SuperFunction(2, 2, {(o, e): c for o, e, c in w.items() if o})
    assert not exp_master_defect(gen, nil)
    assert newgenerator_defect(gen, nil, f) == -master_defect(gen, nil) * f
