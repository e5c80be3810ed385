"""Acceptance criteria, one test each, at exact (zero normal form) tolerance."""

import json
from itertools import product

from gbv.cli import main
from gbv.connections import (
    Connection,
    curvtr_check,
    div_nabla,
    graded_torsion,
    lc_certificate,
    levi_civita,
    theorem_cc_check,
)
from gbv.derham import (
    Bivector,
    KoszulSchoutenStructure,
    VectorValuedForm,
    contraction_C,
    d,
    div_can,
    insertion_field,
    insertion_field_L,
    lie_field,
    lie_field_K,
    symplectic_form,
    theorem_bb_check,
)
from gbv.dervec import de_rham_field
from gbv.divergence import CoordinateDivergence, SupertraceDivergence
from gbv.oddpoisson import (
    Generator,
    bv_defect,
    curvature_link_defect,
    deform_defect,
    is_qs,
    is_qsp,
    is_weak_qsp,
    is_weak_sp,
    jacobi_defect,
    leibniz_defect,
    master_square_defect,
    probe_basis,
    skew_defect,
    square_defect,
)
from gbv.sampling import (
    random_base_function,
    random_base_vector,
    random_even,
    random_field,
    random_form,
    random_homogeneous,
    rng_for,
)
from gbv.schouten import SchoutenStructure, del_mu, schouten_generator
from gbv.scenario import parse_scenario
from gbv.suites import run
from gbv.supernum import SuperFunction

SEED = 2024
DEG = 3

SYMP2 = Bivector(2, [["0", "1"], ["-1", "0"]])
LP3 = Bivector(3, [["0", "x3", "-x2"], ["-x3", "0", "x1"], ["x2", "-x1", "0"]])
FLAT2 = Connection.flat(2)
FLAT3 = Connection.flat(3)
CURVED2 = Connection(2, [[["x2", "x1*x2"], ["x1*x2", "0"]], [["x2^2", "0"], ["0", "x1"]]])
CURVED3 = Connection(
    3,
    [
        [["0", "0", "0"], ["0", "0", "x1"], ["0", "x1", "0"]],
        [["x3", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]],
        [["x2", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]],
    ],
)


def bracket_models():
    return {
        "schouten1": SchoutenStructure(1),
        "schouten2": SchoutenStructure(2),
        "schouten3": SchoutenStructure(3),
        "ks_symplectic2": KoszulSchoutenStructure(SYMP2),
        "ks_lie_poisson3": KoszulSchoutenStructure(LP3),
    }


def generator_models():
    """(label, generator) over every model/divergence combination."""
    out = []
    w2 = SuperFunction(2, 2, {((), (1, 1)): 1, ((), (2, 0)): -2})
    for label, pi in (("schouten2", SchoutenStructure(2)), ("ks_symplectic2", KoszulSchoutenStructure(SYMP2)),
                      ("ks_lie_poisson3", KoszulSchoutenStructure(LP3))):
        m = pi.m
        w = w2 if m == 2 else SuperFunction(3, 3, {((), (1, 0, 1)): 1, ((0, 1), (0, 0, 0)): 3})
        out.append((f"{label}/coordinate", Generator(pi, CoordinateDivergence(m, m))))
        out.append((f"{label}/deformed", Generator(pi, CoordinateDivergence(m, m).deform(w))))
    for label, c in (("flat", FLAT2), ("curved", CURVED2)):
        out.append((f"schouten2/supertrace_{label}", Generator(SchoutenStructure(2), SupertraceDivergence(levi_civita(c)))))
    return out


def hom(rng, m):
    return random_homogeneous(rng, m, m, DEG)[1]


def test_criterion_01_bracket_axioms():
    for label, pi in bracket_models().items():
        rng = rng_for(SEED, f"c1:{label}")
        m = pi.m
        for _ in range(200):
            f, g, h = hom(rng, m), hom(rng, m), hom(rng, m)
            assert not skew_defect(pi, f, g), (label, f, g)
            assert not jacobi_defect(pi, f, g, h), (label, f, g, h)
            assert not leibniz_defect(pi, f, g, h), (label, f, g, h)


def test_criterion_02_bracket_is_leibniz_defect_of_generator():
    for label, gen in generator_models():
        rng = rng_for(SEED, f"c2:{label}")
        m = gen.pi.m
        for _ in range(200):
            f, g = hom(rng, m), hom(rng, m)
            assert not bv_defect(gen, f, g), (label, f, g)


def test_criterion_03_coordinate_divergence_is_flat():
    for m, n in ((1, 1), (2, 2), (3, 2)):
        rng = rng_for(SEED, f"c3:{m}|{n}")
        dv = CoordinateDivergence(m, n)
        for _ in range(100):
            D1, D2 = random_field(rng, m, n, DEG), random_field(rng, m, n, DEG)
            assert not dv.curvature(D1, D2), (D1, D2)


def test_criterion_04_square_and_curvature_identities():
    for label, gen in generator_models():
        rng = rng_for(SEED, f"c4:{label}")
        m = gen.pi.m
        for _ in range(100):
            f, g = hom(rng, m), hom(rng, m)
            assert not curvature_link_defect(gen, f, g), (label, f, g)
            assert not square_defect(gen, f, g), (label, f, g)


def test_criterion_05_deformation_laws():
    models = {
        "schouten2": Generator(SchoutenStructure(2), CoordinateDivergence(2, 2)),
        "ks_symplectic2": Generator(KoszulSchoutenStructure(SYMP2), CoordinateDivergence(2, 2)),
        "ks_lie_poisson3": Generator(KoszulSchoutenStructure(LP3), CoordinateDivergence(3, 3)),
    }
    for label, gen in models.items():
        rng = rng_for(SEED, f"c5:{label}")
        m = gen.pi.m
        probes = probe_basis(m, m, DEG)
        for _ in range(50):
            w = random_even(rng, m, m, DEG)
            for f in rng.sample(probes, 20):
                assert not deform_defect(gen, w, f), (label, w, f)
                assert not master_square_defect(gen, w, f), (label, w, f)


def test_criterion_06_schouten_generator_is_del_mu():
    for m in (1, 2, 3):
        rng = rng_for(SEED, f"c6:{m}")
        w = random_base_function(rng, m, m, DEG)
        gen = schouten_generator(m, w)
        for _ in range(100):
            A = hom(rng, m)
            assert gen(A) == del_mu(w, A), (m, w, A)
        for A in probe_basis(m, m, DEG):
            assert not gen(gen(A)), (m, w, A)


def test_criterion_07_canonical_divergence_of_natural_derivations():
    for m in (2, 3):
        rng = rng_for(SEED, f"c7:{m}")
        assert not div_can(de_rham_field(m))
        for _ in range(100):
            X = random_base_vector(rng, m, DEG)
            assert not div_can(insertion_field(X, m))
            assert not div_can(lie_field(X, m))
            # i_L for L of form degree k+1: expected (-1)^k C(L)
            k1 = rng.randint(1, m)
            L = VectorValuedForm.decomposable(random_form(rng, m, k1, DEG), random_base_vector(rng, m, DEG))
            k = k1 - 1
            assert div_can(insertion_field_L(L, k1)) == contraction_C(L).scale((-1) ** k), (m, L)
            # L_K for K of form degree k: expected -d C(K)
            k = rng.randint(1, m)
            K = VectorValuedForm.decomposable(random_form(rng, m, k, DEG), random_base_vector(rng, m, DEG))
            assert div_can(lie_field_K(K, k)) == -d(contraction_C(K)), (m, K)


def test_criterion_08_koszul_schouten_generator():
    for label, P in (("symplectic2", SYMP2), ("lie_poisson3", LP3)):
        rng = rng_for(SEED, f"c8:{label}")
        forms = [random_form(rng, P.m, rng.randint(0, P.m), DEG) for _ in range(100)]
        res = theorem_bb_check(P, forms)
        assert res.checked == 300
        assert res, res.first()


def test_criterion_09_qs_and_qsp_predicates():
    # cotangent model with P = xi1 xi2
    pi = SchoutenStructure(2)
    dv = CoordinateDivergence(2, 2)
    P = SYMP2.as_multivector()
    assert P == SuperFunction(2, 2, {((0, 1), (0, 0)): 1})
    D = pi.hamiltonian(P)
    for cert in (is_weak_sp(pi, dv, DEG), is_qs(D, dv), is_weak_qsp(pi, D, dv, DEG, SEED), is_qsp(pi, P, dv, DEG, SEED)):
        assert cert, cert.describe()
    # tangent model: d on forms
    for Q in (SYMP2, LP3):
        ks = KoszulSchoutenStructure(Q)
        dvc = CoordinateDivergence(Q.m, Q.m)
        dr = de_rham_field(Q.m)
        for cert in (is_qs(dr, dvc), is_weak_qsp(ks, dr, dvc, DEG, SEED)):
            assert cert, cert.describe()
    omega = symplectic_form(SYMP2)
    ks = KoszulSchoutenStructure(SYMP2)
    for a in probe_basis(2, 2, DEG):
        assert d(a) == ks.bracket(omega, a), a
    cert = is_qsp(ks, omega, CoordinateDivergence(2, 2), DEG, SEED)
    assert cert, cert.describe()


def test_criterion_10_connections():
    # basis-field identities for the supertrace divergence
    for c in (CURVED2, CURVED3):
        gc = levi_civita(c)
        m = c.m
        z = SuperFunction.zero(m, m)
        for i in range(m):
            X = c.coordinate_field(i)
            assert gc.str_divergence(gc.combine(list(X) + [z] * m, 0)) == div_nabla(c, X)
            assert not gc.str_divergence(gc.frame[m + i])
    # divergence curvature is minus the supertrace of the curvature
    assert not CURVED2.is_flat
    gc = levi_civita(CURVED2)
    for D1, D2 in product(gc.frame, repeat=2):
        assert not curvtr_check(gc, D1, D2)
    rng = rng_for(SEED, "c10")
    for _ in range(20):
        D1, D2 = random_field(rng, 2, 2, 2), random_field(rng, 2, 2, 2)
        assert not curvtr_check(gc, D1, D2)
    # supertrace generator equals Koszul's operator; squares to zero when flat
    for c in (FLAT2, CURVED2, FLAT3, CURVED3):
        probes = probe_basis(c.m, c.m, DEG)
        res = theorem_cc_check(c, probes)
        assert res, res.first()
        # flat connections also record the square of the generator on every probe
        assert res.checked == (2 if c.is_flat else 1) * len(probes)
    # Levi-Civita certificate on all basis triples
    for c in (FLAT2, CURVED2, CURVED3):
        gc = levi_civita(c)
        for D1, D2, D3 in product(gc.frame, repeat=3):
            assert not lc_certificate(gc, D1, D2, D3)
        for D1, D2 in product(gc.frame, repeat=2):
            assert graded_torsion(gc, D1, D2).is_zero()


def test_criterion_11_determinism_and_exit_codes(tmp_path, capsys):
    sc = {"model": "koszul_schouten", "m": 2, "P": [["0", "1"], ["-1", "0"]], "trials": 20, "seed": 5}
    a = run(parse_scenario(json.dumps(sc))).to_json(timing=False)
    b = run(parse_scenario(json.dumps(sc))).to_json(timing=False)
    assert a == b
    good = tmp_path / "good.json"
    good.write_text(json.dumps(sc))
    outs = []
    for _ in range(2):
        assert main(["verify", str(good), "--format", "json", "--no-timing"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["schema"] == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "model": "koszul_schouten", "m": 3,
        "P": [["0", "x2", "0"], ["-x2", "0", "x1"], ["0", "-x1", "0"]],
        "suites": ["jacobi"], "trials": 50,
    }))
    assert main(["verify", str(bad), "--format", "json"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is False and report["info"]["poisson"] is False
    assert main(["verify", str(bad), "--suite", "no_such_suite"]) == 2
