"""Named verification suites and the report they produce.

Every check draws its random elements from ``rng_for(seed, suite)`` so that a
suite's outcome depends only on the scenario, the seed and the trial count,
never on which other suites ran.  A check passes iff every residual it
computed is the zero normal form.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Callable

from . import connections as cn
from . import derham as dr
from . import oddpoisson as op
from .dervec import GradedVectorField, de_rham_field
from .divergence import CoordinateDivergence
from .sampling import (
    random_base_function,
    random_base_vector,
    random_even,
    random_field,
    random_form,
    random_homogeneous,
    rng_for,
)
from .scenario import Scenario
from .schouten import del_mu, modular_vector_field, schouten_generator, vector_field_to_multivector
from .supernum import SuperFunction

__all__ = ["CheckRecord", "Report", "SuiteError", "SUITES", "DEFAULT_SUITES", "run_suite", "run"]

SCHEMA = 1


class SuiteError(ValueError):
    """Unknown suite, or a suite that does not apply to the scenario's model."""


@dataclass
class CheckRecord:
    name: str
    suite: str
    anchor: str
    trials: int
    residual: str
    passed: bool
    elapsed: float = 0.0


@dataclass
class Report:
    scenario: dict
    seed: object
    trials: int
    checks: list[CheckRecord] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def suites(self) -> dict:
        out: dict = {}
        for c in self.checks:
            out[c.suite] = out.get(c.suite, True) and c.passed
        return out

    def to_dict(self, timing: bool = True) -> dict:
        checks = []
        for c in self.checks:
            d = asdict(c)
            if timing:
                d["elapsed"] = round(d["elapsed"], 6)
            else:
                del d["elapsed"]
            checks.append(d)
        return {
            "schema": SCHEMA,
            "scenario": self.scenario,
            "seed": self.seed,
            "trials": self.trials,
            "info": self.info,
            "suites": self.suites(),
            "checks": checks,
            "passed": self.passed,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def to_text(self, timing: bool = True) -> str:
        lines = []
        for c in self.checks:
            t = f"  {c.elapsed:.3f}s" if timing else ""
            flag = "PASS" if c.passed else "FAIL"
            lines.append(f"{flag}  {c.suite}/{c.name}  [{c.trials}]{t}  {c.anchor}")
            if not c.passed:
                lines.append(f"      residual: {c.residual}")
        for k, v in self.info.items():
            lines.append(f"info  {k}: {v}")
        lines.append("all passed" if self.passed else "FAILED")
        return "\n".join(lines)


# plumbing --------------------------------------------------------------------


class _Ctx:
    def __init__(self, sc: Scenario, suite: str, trials: int, seed):
        self.sc = sc
        self.suite = suite
        self.trials = trials
        self.rng = rng_for(seed, suite)
        self.records: list[CheckRecord] = []
        self.odd = sc.odd_name

    def text(self, r) -> str:
        if isinstance(r, GradedVectorField):
            return r.format(self.odd) or "0"
        if isinstance(r, SuperFunction):
            return r.format(self.odd)
        return str(r)

    def check(self, name: str, anchor: str, cases: Callable[[], object], n: int | None = None):
        """Run ``cases()`` ``n`` times; each call returns ``(label, residual)``."""
        n = self.trials if n is None else n
        t0 = time.perf_counter()
        residual, done = "0", 0
        for _ in range(n):
            label, r = cases()
            done += 1
            if _nonzero(r):
                residual = f"{label}: {self.text(r)}"
                break
        self._push(name, anchor, done, residual, t0)

    def over(self, name: str, anchor: str, items, fn: Callable):
        """Deterministic variant: ``fn(item)`` returns the residual for each item."""
        t0 = time.perf_counter()
        residual, done = "0", 0
        for it in items:
            r = fn(it)
            done += 1
            if _nonzero(r):
                residual = f"{self.text(it)}: {self.text(r)}" if not isinstance(it, tuple) else f"{it!r}: {self.text(r)}"
                break
        self._push(name, anchor, done, residual, t0)

    def certificate(self, name: str, anchor: str, fn: Callable[[], op.Certificate]):
        t0 = time.perf_counter()
        cert = fn()
        residual = "0" if cert else (cert.counterexample or "fails")
        self._push(name, anchor, max(cert.checked, 1), residual, t0)

    def residuals(self, name: str, anchor: str, res: op.Residuals, t0: float):
        self._push(name, anchor, res.checked, res.first() if not res else "0", t0)

    def _push(self, name, anchor, trials, residual, t0):
        self.records.append(
            CheckRecord(name, self.suite, anchor, trials, residual, residual == "0", time.perf_counter() - t0)
        )


def _nonzero(r) -> bool:
    if isinstance(r, GradedVectorField):
        return not r.is_zero()
    return bool(r)


def _hom(ctx: _Ctx):
    return random_homogeneous(ctx.rng, *ctx.sc.dims, ctx.sc.probe_degree)[1]


def _probes(sc: Scenario):
    return op.probe_basis(*sc.dims, sc.probe_degree)


def _require(sc: Scenario, suite: str, model: str | None = None, P=False, conn=False):
    if model is not None and sc.model != model:
        raise SuiteError(f"suite {suite!r} needs the {model} model")
    if P and sc.P is None:
        raise SuiteError(f"suite {suite!r} needs a bivector P")
    if conn and sc.connection is None:
        raise SuiteError(f"suite {suite!r} needs christoffels")


# suites ----------------------------------------------------------------------


def _axioms(ctx: _Ctx, which=("skew", "jacobi", "leibniz", "hamiltonian")):
    pi = ctx.sc.structure()
    anchors = {
        "skew": "graded skew-symmetry of the odd bracket",
        "jacobi": "graded Jacobi identity of the odd bracket",
        "leibniz": "graded Leibniz rule of the odd bracket",
        "hamiltonian": "f -> X_f is a morphism of brackets",
    }
    for name in which:
        if name == "skew":
            ctx.check(name, anchors[name], lambda: _pair(ctx, lambda f, g: op.skew_defect(pi, f, g)))
        elif name == "jacobi":
            ctx.check(name, anchors[name], lambda: _triple(ctx, lambda f, g, h: op.jacobi_defect(pi, f, g, h)))
        elif name == "leibniz":
            ctx.check(name, anchors[name], lambda: _triple(ctx, lambda f, g, h: op.leibniz_defect(pi, f, g, h)))
        else:
            ctx.check(
                name, anchors[name], lambda: _pair(ctx, lambda f, g: op.hamiltonian_morphism_defect(pi, f, g)),
                n=max(1, ctx.trials // 4),
            )


def _pair(ctx, fn):
    f, g = _hom(ctx), _hom(ctx)
    return f"({ctx.text(f)}, {ctx.text(g)})", fn(f, g)


def _triple(ctx, fn):
    f, g, h = _hom(ctx), _hom(ctx), _hom(ctx)
    return f"({ctx.text(f)}, {ctx.text(g)}, {ctx.text(h)})", fn(f, g, h)


def suite_axioms(ctx):
    _axioms(ctx)


def suite_jacobi(ctx):
    _axioms(ctx, ("jacobi",))


def suite_generator(ctx):
    pi = ctx.sc.structure()
    for label, dv in ctx.sc.divergences():
        gen = op.Generator(pi, dv)
        ctx.check(
            f"bv[{label}]",
            "bracket is the Leibniz defect of the generator",
            lambda: _pair(ctx, lambda f, g: op.bv_defect(gen, f, g)),
        )


def suite_curvature(ctx):
    sc = ctx.sc
    dv = CoordinateDivergence(*sc.dims)

    def case():
        D1 = random_field(ctx.rng, *sc.dims, sc.probe_degree)
        D2 = random_field(ctx.rng, *sc.dims, sc.probe_degree)
        return f"({ctx.text(D1)}, {ctx.text(D2)})", dv.curvature(D1, D2)

    ctx.check("coordinate", "coordinate divergence has zero curvature", case)
    if sc.w is not None and sc.w:
        dvw = dv.deform(sc.w)

        def case_w():
            D1 = random_field(ctx.rng, *sc.dims, sc.probe_degree)
            D2 = random_field(ctx.rng, *sc.dims, sc.probe_degree)
            return f"({ctx.text(D1)}, {ctx.text(D2)})", dvw.curvature(D1, D2)

        ctx.check("deformed", "deforming by an even weight keeps the curvature zero", case_w)


def suite_identities(ctx):
    pi = ctx.sc.structure()
    for label, dv in ctx.sc.divergences():
        gen = op.Generator(pi, dv)
        ctx.check(
            f"square[{label}]",
            "Leibniz defect of the square of the generator",
            lambda: _pair(ctx, lambda f, g: op.square_defect(gen, f, g)),
        )
        ctx.check(
            f"curvature_link[{label}]",
            "failure of the generator to differentiate the bracket equals half the divergence curvature",
            lambda: _pair(ctx, lambda f, g: op.curvature_link_defect(gen, f, g)),
        )
    gen = ctx.sc.generator()

    def dd():
        D = random_field(ctx.rng, *ctx.sc.dims, 2, parity=1)
        f, g = _hom(ctx), _hom(ctx)
        return f"({ctx.text(D)}, {ctx.text(f)}, {ctx.text(g)})", op.derdelta_defect(gen, D, f, g)

    ctx.check("derdelta", "Leibniz defect of [D, generator] for an odd derivation D", dd, n=max(1, ctx.trials // 4))


def suite_deformation(ctx):
    sc = ctx.sc
    base = op.Generator(sc.structure(), sc.base_divergence())

    def weight():
        if sc.model == "schouten":
            return random_base_function(ctx.rng, *sc.dims, sc.probe_degree)
        return random_even(ctx.rng, *sc.dims, sc.probe_degree)

    def deform():
        w, f = weight(), _hom(ctx)
        return f"(w={ctx.text(w)}, {ctx.text(f)})", op.deform_defect(base, w, f)

    ctx.check("deform", "deformed divergence adds the hamiltonian field of the weight", deform)

    if op.is_weak_sp(sc.structure(), sc.base_divergence(), 1):
        probes = _probes(sc)

        def msq():
            w, f = weight(), ctx.rng.choice(probes)
            return f"(w={ctx.text(w)}, {ctx.text(f)})", op.master_square_defect(base, w, f)

        ctx.check("master_square", "square of the deformed generator is the field of the master defect", msq)


def _nilpotent(ctx):
    sc = ctx.sc
    while True:
        w = random_even(ctx.rng, *sc.dims, sc.probe_degree)
        w = SuperFunction(*sc.dims, {(o, e): c for o, e, c in w.items() if o})
        if w:
            return w


def suite_master(ctx):
    sc = ctx.sc
    gen = op.Generator(sc.structure(), sc.base_divergence())

    def expo():
        w = _nilpotent(ctx)
        return f"w={ctx.text(w)}", op.exp_master_defect(gen, w)

    ctx.check("exp", "master defect equals e^-w Delta e^w for nilpotent w", expo)

    def newgen():
        w, f = _nilpotent(ctx), _hom(ctx)
        return f"(w={ctx.text(w)}, {ctx.text(f)})", op.newgenerator_defect(gen, w, f) + op.master_defect(gen, w) * f

    ctx.check("conjugation", "deformed generator is the conjugate by e^w up to the master defect", newgen)


def suite_square(ctx):
    sc = ctx.sc
    pi = sc.structure()
    ctx.certificate("square_zero", "the generator squares to zero on the probe basis", lambda: op.is_weak_sp(pi, sc.divergence(), sc.probe_degree))


def suite_theorem_aa(ctx):
    sc = ctx.sc
    _require(sc, "theorem_aa", "schouten")
    w = sc.w if sc.w is not None else SuperFunction.zero(*sc.dims)
    gen = schouten_generator(sc.m, w)

    def case():
        A = random_homogeneous(ctx.rng, *sc.dims, sc.probe_degree)[1]
        return ctx.text(A), gen(A) - del_mu(w, A)

    ctx.check("generator_is_del_mu", "Schouten generator of e^w dx equals -star^-1 d star", case)
    ctx.over("square_zero", "generator squares to zero on the probe basis", _probes(sc), lambda A: gen(gen(A)))
    if sc.P is not None and sc.P.is_poisson:
        P = sc.P.as_multivector()
        t0 = time.perf_counter()
        Z = vector_field_to_multivector(modular_vector_field(P, w))
        r = Z - gen(P)
        ctx._push("modular_field", "modular vector field equals the generator applied to P", 1,
                  "0" if not r else ctx.text(r), t0)


def suite_theorem_bb(ctx):
    sc = ctx.sc
    _require(sc, "theorem_bb", "koszul_schouten", P=True)
    P = sc.P
    t0 = time.perf_counter()
    forms = [random_form(ctx.rng, sc.m, ctx.rng.randint(0, sc.m), sc.probe_degree) for _ in range(ctx.trials)]
    ctx.residuals("generator_is_del_P", "canonical generator equals [d, i_P], squares to zero, commutes with d",
                  dr.theorem_bb_check(P, forms), t0)


def suite_fn_lemma(ctx):
    """Canonical divergence of the Frolicher-Nijenhuis derivations, in the
    signs observed with the coordinate divergence (see the notes in README)."""
    sc = ctx.sc
    m = sc.m
    dv = CoordinateDivergence(m, m)
    t0 = time.perf_counter()
    r = dv(de_rham_field(m))
    ctx._push("d", "canonical divergence of d vanishes", 1, "0" if not r else ctx.text(r), t0)

    def vec():
        return random_base_vector(ctx.rng, m, sc.probe_degree)

    def iX():
        X = vec()
        return str([ctx.text(c) for c in X]), dv(dr.insertion_field(X, m))

    def LX():
        X = vec()
        return str([ctx.text(c) for c in X]), dv(dr.lie_field(X, m))

    def decomposable():
        k1 = ctx.rng.randint(1, m)
        omega = random_form(ctx.rng, m, k1, sc.probe_degree)
        return dr.VectorValuedForm.decomposable(omega, vec()), k1

    def iL():
        L, k1 = decomposable()
        k = k1 - 1
        sign = -1 if k % 2 == 0 else 1  # (-1)^{k+1}
        return f"deg {k1}", dv(dr.insertion_field_L(L, k1)) - dr.contraction_C(L).scale(sign)

    def LK():
        K, k = decomposable()
        return f"deg {k}", dv(dr.lie_field_K(K, k)) - dr.d(dr.contraction_C(K))

    ctx.check("i_X", "insertion of a vector field is divergence free", iX)
    ctx.check("L_X", "Lie derivative along a vector field is divergence free", LX)
    ctx.check("i_L", "divergence of i_L is (-1)^(k+1) C(L) for L of degree k+1", iL)
    ctx.check("L_K", "divergence of L_K is d C(K)", LK)


def suite_qsp(ctx):
    sc = ctx.sc
    seed = ctx.rng.randrange(2**31)
    deg = sc.probe_degree
    if sc.model == "schouten":
        _require(sc, "qsp", P=True)
        pi = sc.structure()
        dv = sc.divergence()
        P = sc.P.as_multivector()
        D = pi.hamiltonian(P)
        ctx.certificate("weak_sp", "generator squares to zero", lambda: op.is_weak_sp(pi, dv, deg))
        ctx.certificate("qs", "d_P squares to zero and is divergence free", lambda: op.is_qs(D, dv))
        ctx.certificate("weak_qsp", "d_P differentiates the bracket", lambda: op.is_weak_qsp(pi, D, dv, deg, seed))
        ctx.certificate("qsp", "d_P is hamiltonian with even hamiltonian P", lambda: op.is_qsp(pi, P, dv, deg, seed))
        return
    _require(sc, "qsp", "koszul_schouten", P=True)
    P = sc.P
    pi = sc.structure()
    dv = CoordinateDivergence(*sc.dims)
    D = de_rham_field(sc.m)
    ctx.certificate("qs", "d squares to zero and is divergence free", lambda: op.is_qs(D, dv))
    ctx.certificate("weak_qsp", "d differentiates the Koszul-Schouten bracket", lambda: op.is_weak_qsp(pi, D, dv, deg, seed))
    if P.is_nondegenerate:
        omega = dr.symplectic_form(P)
        ctx.over("d_is_hamiltonian", "d is the hamiltonian field of the inverse of P", _probes(sc),
                 lambda a: D(a) - pi.bracket(omega, a))
        ctx.certificate("qsp", "d is hamiltonian with even hamiltonian", lambda: op.is_qsp(pi, omega, dv, deg, seed))


def suite_connections(ctx):
    sc = ctx.sc
    _require(sc, "connections", "schouten", conn=True)
    c = sc.connection
    gc = cn.levi_civita(c)
    m = sc.m
    fr = gc.frame
    idx = range(2 * m)
    ctx.info = {"levi_civita_parity": gc.parity}
    ctx.over("levi_civita", "six-term characterisation of the Levi-Civita connection on frame triples",
             list(product(idx, idx, idx)), lambda t: cn.lc_certificate(gc, fr[t[0]], fr[t[1]], fr[t[2]]))
    ctx.over("torsion", "graded torsion vanishes on frame pairs", list(product(idx, idx)),
             lambda t: cn.graded_torsion(gc, fr[t[0]], fr[t[1]]))
    z = SuperFunction.zero(m, m)

    def ooo_B(i):
        X = c.coordinate_field(i)
        return gc.str_divergence(gc.combine(list(X) + [z] * m, 0)) - cn.div_nabla(c, X)

    def ooo_C(i):
        return gc.str_divergence(fr[m + i])

    ctx.over("div_of_lift", "supertrace divergence of nabla_X is div_nabla X", list(range(m)), ooo_B)
    ctx.over("div_of_insertion", "supertrace divergence of i_alpha vanishes", list(range(m)), ooo_C)

    def lift_random():
        X = random_base_vector(ctx.rng, m, sc.probe_degree)
        return str([ctx.text(a) for a in X]), gc.str_divergence(gc.combine(list(X) + [z] * m, 0)) - cn.div_nabla(c, X)

    ctx.check("div_of_lift_random", "supertrace divergence of nabla_X is div_nabla X", lift_random)

    def curv():
        D1 = random_field(ctx.rng, m, m, 1)
        D2 = random_field(ctx.rng, m, m, 1)
        return f"({ctx.text(D1)}, {ctx.text(D2)})", cn.curvtr_check(gc, D1, D2)

    ctx.over("curvature_trace_frame", "divergence curvature is minus the supertrace of the curvature",
             list(product(idx, idx)), lambda t: cn.curvtr_check(gc, fr[t[0]], fr[t[1]]))
    ctx.check("curvature_trace", "divergence curvature is minus the supertrace of the curvature", curv,
              n=max(1, ctx.trials // 4))

    e = [c.coordinate_field(i) for i in range(m)]

    def odd_combo(coeffs):
        return gc.combine([z] * m + coeffs, 1)

    def transpose(t):
        a, b, j = t
        lhs = cn.graded_curvature(gc, fr[a], fr[b])(fr[m + j])
        return lhs - odd_combo([-cn.curvature_R(c, e[a], e[b], e[k])[j] for k in range(m)])

    def mixed(t):
        a, j, w = t
        lhs = cn.graded_curvature(gc, fr[a], fr[m + j])(fr[w])
        return lhs - odd_combo([-cn.curvature_R(c, e[l], e[w], e[a])[j] for l in range(m)])

    def insertions(t):
        A, B, E = t
        return cn.graded_curvature(gc, fr[A], fr[B])(fr[E])

    ctx.over("curvature_on_insertions", "curvature of lifts acts on insertions by the transpose of R",
             list(product(range(m), repeat=3)), transpose)
    ctx.over("curvature_mixed", "curvature of a lift and an insertion, evaluated on lifts",
             list(product(range(m), repeat=3)), mixed)
    ctx.over("curvature_insertion_pairs", "curvature vanishes on pairs of insertions",
             list(product(range(m, 2 * m), range(m, 2 * m), idx)), insertions)

    def frame_indep():
        D = random_field(ctx.rng, m, m, 1)
        T = cn.Endomorphism(m, lambda E: gc(D, E), D.parity)
        return ctx.text(D), cn.supertrace(T) - cn.supertrace(T, gc)

    ctx.check("supertrace_frame", "supertrace is the same in the coordinate and the connection frame", frame_indep,
              n=max(1, ctx.trials // 4))
    _koszul(ctx)
    flat = cn.Connection.flat(m)

    def diff():
        f = _hom(ctx)
        return ctx.text(f), cn.generator_difference_defect(flat, c, f)

    ctx.check("generator_difference", "generators of two connections differ by half a supertrace", diff,
              n=max(1, ctx.trials // 4))


def _koszul(ctx):
    sc = ctx.sc
    t0 = time.perf_counter()
    res = cn.theorem_cc_check(sc.connection, _probes(sc))
    ctx.residuals("supertrace_generator_is_koszul",
                  "supertrace generator equals Koszul's operator (and squares to zero when flat)", res, t0)


def suite_theorem_cc(ctx):
    _require(ctx.sc, "theorem_cc", "schouten", conn=True)
    _koszul(ctx)


SUITES: dict[str, Callable[[_Ctx], None]] = {
    "axioms": suite_axioms,
    "jacobi": suite_jacobi,
    "generator": suite_generator,
    "curvature": suite_curvature,
    "identities": suite_identities,
    "deformation": suite_deformation,
    "master": suite_master,
    "square": suite_square,
    "theorem_aa": suite_theorem_aa,
    "theorem_bb": suite_theorem_bb,
    "fn_lemma": suite_fn_lemma,
    "qsp": suite_qsp,
    "connections": suite_connections,
    "theorem_cc": suite_theorem_cc,
}


def default_suites(sc: Scenario) -> list[str]:
    out = ["axioms", "generator", "curvature", "identities", "deformation", "master"]
    if sc.model == "schouten":
        out += ["theorem_aa"]
        if sc.P is not None:
            out += ["qsp"]
        if sc.connection is not None:
            out += ["connections"]
    else:
        out += ["fn_lemma"]
        if sc.P is not None:
            out += ["theorem_bb", "qsp"]
    return out


DEFAULT_SUITES = default_suites


def run_suite(sc: Scenario, suite: str, trials: int | None = None, seed=None) -> tuple[list[CheckRecord], dict]:
    if suite not in SUITES:
        raise SuiteError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    ctx = _Ctx(sc, suite, sc.trials if trials is None else trials, sc.seed if seed is None else seed)
    ctx.info = {}
    SUITES[suite](ctx)
    return ctx.records, ctx.info


def run(sc: Scenario, suites=None, trials: int | None = None, seed=None) -> Report:
    """Run ``suites`` (default: the scenario's list, else the model defaults)."""
    names = list(suites or sc.suites or default_suites(sc))
    for s in names:
        if s not in SUITES:
            raise SuiteError(f"unknown suite {s!r}; known: {', '.join(SUITES)}")
    trials = sc.trials if trials is None else trials
    seed = sc.seed if seed is None else seed
    info = {}
    if sc.P is not None:
        info["poisson"] = sc.P.is_poisson
        info["nondegenerate"] = sc.P.is_nondegenerate
    report = Report(scenario=sc.summary(), seed=seed, trials=trials, info=info)
    for s in names:
        records, extra = run_suite(sc, s, trials, seed)
        report.checks.extend(records)
        info.update(extra)
    return report
