"""Scenario files: JSON descriptions of a model and the checks to run on it.

Example::

    {"model": "koszul_schouten", "m": 2, "P": [["0", "1"], ["-1", "0"]],
     "suites": ["theorem_bb"], "trials": 50, "seed": 7}

Keys: ``model`` (``"schouten"`` or ``"koszul_schouten"``), ``m``, ``w``,
``P`` (matrix of polynomial texts), ``christoffels`` (``m x m x m`` texts,
``christoffels[k][i][j]`` is the coefficient of ``d_k`` in
``nabla_{d_i} d_j``), ``divergence`` (``{"kind": "coordinate"|"deformed",
"w": text}``), ``suites``, ``trials``, ``seed``, ``probe_degree``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .connections import Connection
from .derham import Bivector, KoszulSchoutenStructure
from .divergence import CoordinateDivergence, DivergenceOp, SupertraceDivergence
from .oddpoisson import Generator, OddPoissonStructure
from .schouten import SchoutenStructure
from .supernum import ParseError, SuperFunction, parse

__all__ = ["Scenario", "ScenarioError", "parse_scenario", "MODELS"]

MODELS = ("schouten", "koszul_schouten")
KNOWN_KEYS = {"model", "m", "w", "P", "christoffels", "divergence", "suites", "trials", "seed", "probe_degree", "name"}


class ScenarioError(ValueError):
    """Raised with the full list of problems found in a scenario."""

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


@dataclass
class Scenario:
    model: str
    m: int
    w: SuperFunction | None = None
    P: Bivector | None = None
    connection: Connection | None = None
    divergence_kind: str = "coordinate"
    suites: list[str] = field(default_factory=list)
    trials: int = 20
    seed: int = 0
    probe_degree: int = 3
    name: str | None = None
    raw: dict = field(default_factory=dict)

    @property
    def dims(self):
        return self.m, self.m

    @property
    def odd_name(self) -> str:
        return "xi" if self.model == "schouten" else "s"

    def structure(self) -> OddPoissonStructure:
        if self.model == "schouten":
            return SchoutenStructure(self.m)
        P = self.P if self.P is not None else Bivector(self.m, [["0"] * self.m for _ in range(self.m)])
        return KoszulSchoutenStructure(P)

    def base_divergence(self) -> DivergenceOp:
        return CoordinateDivergence(self.m, self.m)

    def divergence(self) -> DivergenceOp:
        """The divergence selected by the scenario (coordinate, possibly deformed by ``w``)."""
        dv = self.base_divergence()
        if self.divergence_kind == "deformed" and self.w is not None and self.w:
            dv = dv.deform(self.w)
        return dv

    def divergences(self) -> list[tuple[str, DivergenceOp]]:
        """Every divergence the scenario makes available, labelled."""
        out = [("coordinate", self.base_divergence())]
        if self.w is not None and self.w:
            out.append(("deformed", self.base_divergence().deform(self.w)))
        if self.connection is not None and self.model == "schouten":
            from .connections import levi_civita

            out.append(("supertrace", SupertraceDivergence(levi_civita(self.connection))))
        return out

    def generator(self) -> Generator:
        return Generator(self.structure(), self.divergence())

    def summary(self) -> dict:
        return {k: self.raw[k] for k in sorted(self.raw) if k not in ("suites", "trials", "seed")}


def _poly(text, m, where, errors, odd_ok=False):
    if not isinstance(text, (str, int)):
        errors.append(f"{where}: expected polynomial text, got {type(text).__name__}")
        return None
    try:
        f = parse(str(text), m, m)
    except ParseError as exc:
        errors.append(f"{where}: {exc}")
        return None
    if not odd_ok and f.odd_degrees - {0}:
        errors.append(f"{where}: expected a function on the base, got {f}")
        return None
    return f


def parse_scenario(text: str) -> Scenario:
    """Parse and validate scenario JSON; raises :class:`ScenarioError` listing every problem."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError([f"line {exc.lineno} column {exc.colno}: {exc.msg}"]) from None
    if not isinstance(data, dict):
        raise ScenarioError(["top level must be a JSON object"])
    return scenario_from_dict(data)


def scenario_from_dict(data: dict) -> Scenario:
    errors: list[str] = []
    for k in data:
        if k not in KNOWN_KEYS:
            errors.append(f"{k}: unknown key")
    model = data.get("model")
    if model not in MODELS:
        errors.append(f"model: expected one of {', '.join(MODELS)}, got {model!r}")
    m = data.get("m")
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        errors.append(f"m: expected a non-negative integer, got {m!r}")
        raise ScenarioError(errors)

    w = None
    if "w" in data:
        w = _poly(data["w"], m, "w", errors, odd_ok=True)
        if w is not None and not w.is_of_parity(0):
            errors.append(f"w: weight must be even, got {w}")
            w = None
        elif w is not None and model == "schouten" and w.odd_degrees - {0}:
            errors.append("w: volume weight must be a function on the base")

    P = None
    if "P" in data:
        mat = data["P"]
        if not isinstance(mat, list) or len(mat) != m or any(not isinstance(r, list) or len(r) != m for r in mat):
            errors.append(f"P: expected a {m}x{m} matrix of polynomial texts")
        else:
            ent = [[_poly(c, m, f"P[{i}][{j}]", errors) for j, c in enumerate(r)] for i, r in enumerate(mat)]
            if all(e is not None for r in ent for e in r):
                try:
                    P = Bivector(m, ent)
                except ValueError as exc:
                    errors.append(f"P: {exc}")

    conn = None
    if "christoffels" in data:
        G = data["christoffels"]
        shape_ok = (
            isinstance(G, list)
            and len(G) == m
            and all(isinstance(a, list) and len(a) == m and all(isinstance(b, list) and len(b) == m for b in a) for a in G)
        )
        if not shape_ok:
            errors.append(f"christoffels: expected an {m}x{m}x{m} array of polynomial texts")
        else:
            ent = [
                [[_poly(c, m, f"christoffels[{k}][{i}][{j}]", errors) for j, c in enumerate(row)] for i, row in enumerate(pl)]
                for k, pl in enumerate(G)
            ]
            if all(e is not None for pl in ent for row in pl for e in row):
                try:
                    conn = Connection(m, ent)
                except ValueError as exc:
                    errors.append(f"christoffels: {exc}")
        if model == "koszul_schouten":
            errors.append("christoffels: only meaningful for the schouten model")

    kind = "deformed" if w is not None and w else "coordinate"
    if "divergence" in data:
        dv = data["divergence"]
        if not isinstance(dv, dict) or dv.get("kind") not in ("coordinate", "deformed"):
            errors.append('divergence: expected {"kind": "coordinate"|"deformed", "w": text}')
        else:
            kind = dv["kind"]
            if "w" in dv:
                w2 = _poly(dv["w"], m, "divergence.w", errors, odd_ok=True)
                if w2 is not None and not w2.is_of_parity(0):
                    errors.append(f"divergence.w: weight must be even, got {w2}")
                elif w2 is not None:
                    w = w2

    suites = data.get("suites", [])
    if not isinstance(suites, list) or not all(isinstance(s, str) for s in suites):
        errors.append("suites: expected a list of suite names")
        suites = []
    trials = data.get("trials", 20)
    if not isinstance(trials, int) or isinstance(trials, bool) or trials < 0:
        errors.append(f"trials: expected a non-negative integer, got {trials!r}")
    seed = data.get("seed", 0)
    if not isinstance(seed, (int, str)) or isinstance(seed, bool):
        errors.append(f"seed: expected an integer or string, got {seed!r}")
    probe_degree = data.get("probe_degree", 3)
    if not isinstance(probe_degree, int) or isinstance(probe_degree, bool) or probe_degree < 0:
        errors.append(f"probe_degree: expected a non-negative integer, got {probe_degree!r}")

    if errors:
        raise ScenarioError(errors)
    return Scenario(
        model=model,
        m=m,
        w=w,
        P=P,
        connection=conn,
        divergence_kind=kind,
        suites=list(suites),
        trials=trials,
        seed=seed,
        probe_degree=probe_degree,
        name=data.get("name"),
        raw=dict(data),
    )
