"""Horizontal half-spaces and a sound inner approximation of the edge."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..lie import LieAlgebra, center, ideal_generated, lie_generated
from ..linalg import Subspace, Vector, as_vector, format_rational, nullspace, parse_rational

RULES = ("R1", "R2", "R3", "R4", "R5")


@dataclass(frozen=True)
class HalfSpace:
    """W = {v in V1 : lam(v) >= 0}; lam is given on the V1 basis."""

    lam: tuple[Fraction, ...]

    def __init__(self, lam: Iterable):
        object.__setattr__(self, "lam", as_vector(lam))
        if not any(c != 0 for c in self.lam):
            raise ValueError("lambda must be nonzero")

    def check(self, g: LieAlgebra) -> None:
        if len(self.lam) != g.rank:
            raise ValueError(f"lambda has {len(self.lam)} entries but V1 has dimension {g.rank}")

    def boundary(self, g: LieAlgebra) -> Subspace:
        self.check(g)
        ker = nullspace([list(self.lam)], g.rank)
        pad = (Fraction(0),) * (g.dim - g.rank)
        return Subspace.span([tuple(v) + pad for v in ker], g.dim)

    def value(self, g: LieAlgebra, v: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(self.lam, v[: g.rank])), Fraction(0))

    def outside_vector(self, g: LieAlgebra) -> Vector:
        """A standard basis vector of V1 with lam > 0 after sign choice."""
        p = next(i for i, c in enumerate(self.lam) if c != 0)
        return g.unit(p)


@dataclass
class SaturationConfig:
    rules: frozenset = frozenset(RULES)
    generators: tuple[Vector, ...] = ()  # extra V1 vectors for R3, in V1 coordinates
    r2_samples: int = 0  # extra random elements of E tried in R2
    seed: int = 0


@dataclass(frozen=True)
class TraceStep:
    rule: str
    inputs: dict
    added: tuple[Vector, ...]

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "inputs": {k: [[format_rational(c) for c in v] for v in vs] for k, vs in sorted(self.inputs.items())},
            "added": [[format_rational(c) for c in v] for v in self.added],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TraceStep":
        return cls(
            data["rule"],
            {k: [tuple(parse_rational(c) for c in v) for v in vs] for k, vs in data["inputs"].items()},
            tuple(tuple(parse_rational(c) for c in v) for v in data["added"]),
        )


@dataclass
class EdgeApprox:
    edge: Subspace
    trace: list[TraceStep] = field(default_factory=list)

    def rule_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.trace:
            out[s.rule] = out.get(s.rule, 0) + 1
        return out


def _new_vectors(e: Subspace, vectors: Iterable[Vector]) -> tuple[Vector, ...]:
    """Those vectors that enlarge e, keeping only independent ones."""
    out = []
    cur = e
    for v in vectors:
        if not cur.contains(v):
            out.append(tuple(v))
            cur = cur.extend([v])
    return tuple(out)


def r2_solutions(g: LieAlgebra, e: Subspace, y: Vector) -> list[Vector]:
    """Basis of {X in V1 : ad_Y^2 X in E}, as vectors of g."""
    rows = []
    cols = [e.reduce(g.ad(y, g.unit(i), 2)) for i in g.layer_indices(1)]
    for c in range(g.dim):
        row = [col[c] for col in cols]
        if any(x != 0 for x in row):
            rows.append(row)
    pad = (Fraction(0),) * (g.dim - g.rank)
    if not rows:
        return [g.unit(i) for i in g.layer_indices(1)]
    return [tuple(v) + pad for v in nullspace(rows, g.rank)]


def _r1(g, e, cfg):
    added = _new_vectors(e, (g.bracket(a, b) for i, a in enumerate(e.basis) for b in e.basis[i + 1 :]))
    return TraceStep("R1", {}, added) if added else None


def _r2_candidates(e: Subspace, cfg: SaturationConfig) -> list[Vector]:
    ys = list(e.basis)
    if cfg.r2_samples and e.dim > 1:
        rng = random.Random(f"{cfg.seed}:R2:{e.basis}")
        for _ in range(cfg.r2_samples):
            c = [Fraction(rng.randint(-3, 3)) for _ in e.basis]
            ys.append(tuple(sum((ci * v[k] for ci, v in zip(c, e.basis)), Fraction(0)) for k in range(e.ambient)))
    return ys


def _r2(g, e, cfg):
    for y in _r2_candidates(e, cfg):
        if all(c == 0 for c in y):
            continue
        xs = r2_solutions(g, e, y)
        added = _new_vectors(e, (g.bracket(x, y) for x in xs))
        if added:
            return TraceStep("R2", {"Y": [y], "X": xs}, added)
    return None


def _generator_list(g: LieAlgebra, cfg: SaturationConfig) -> list[Vector]:
    pad = (Fraction(0),) * (g.dim - g.rank)
    gens = [g.unit(i) for i in g.layer_indices(1)]
    gens += [tuple(as_vector(v)) + pad for v in cfg.generators]
    return gens


def _r3(g, e, cfg):
    gens = _generator_list(g, cfg)
    for i, x in enumerate(gens):
        for y in gens[i + 1 :]:
            w = g.bracket(x, y)
            if e.contains(w):
                continue
            if all(c == 0 for c in g.ad(x, y, 2)) and all(c == 0 for c in g.ad(y, x, 2)):
                return TraceStep("R3", {"X": [x], "Y": [y]}, (w,))
    return None


def _r4(g, e, cfg):
    added = _new_vectors(e, (center(g) & g.layer_space(2)).basis)
    return TraceStep("R4", {}, added) if added else None


def _r5(g, e, cfg):
    if g.step > 4:
        return None
    seeds = (e & g.layer_space(2)).basis
    if not seeds:
        return None
    added = _new_vectors(e, ideal_generated(g, seeds).basis)
    return TraceStep("R5", {"Z": list(seeds)}, added) if added else None


_APPLY = {"R1": _r1, "R2": _r2, "R3": _r3, "R4": _r4, "R5": _r5}


def saturate_edge(g: LieAlgebra, w: HalfSpace, config: SaturationConfig | None = None) -> EdgeApprox:
    """Grow E from the boundary of W by the closure rules until nothing changes.

    Rules are tried in the order R1..R5 and the search restarts at R1 after any
    growth, so the trace is deterministic.
    """
    cfg = config or SaturationConfig()
    unknown = set(cfg.rules) - set(RULES)
    if unknown:
        raise ValueError(f"unknown rules: {sorted(unknown)}")
    g.require_stratified()
    e = w.boundary(g)
    trace = [TraceStep("init", {}, e.basis)]
    while True:
        for rule in RULES:
            if rule not in cfg.rules:
                continue
            step = _APPLY[rule](g, e, cfg)
            if step is not None:
                trace.append(step)
                e = e.extend(step.added)
                break
        else:
            return EdgeApprox(e, trace)


def replay_trace(g: LieAlgebra, w: HalfSpace, trace: Sequence[TraceStep]) -> tuple[Subspace | None, str | None]:
    """Re-check every step from scratch; returns (E, None) or (None, first failure)."""
    if not trace or trace[0].rule != "init":
        return None, "trace must start with init"
    e = w.boundary(g)
    if Subspace.span(trace[0].added, g.dim) != e:
        return None, "init step does not match the boundary of W"
    v1 = g.layer_space(1)
    for n, step in enumerate(trace[1:], start=1):
        where = f"step {n} ({step.rule})"
        if any(len(v) != g.dim for vs in step.inputs.values() for v in vs) or any(len(v) != g.dim for v in step.added):
            return None, f"{where}: vector of wrong length"
        if step.rule == "R1":
            allowed = lie_generated(g, e.basis)
            if not all(allowed.contains(v) for v in step.added):
                return None, f"{where}: added vector is not in the generated subalgebra"
        elif step.rule == "R2":
            (y,) = step.inputs.get("Y", [None])
            xs = step.inputs.get("X", [])
            if y is None or not e.contains(y):
                return None, f"{where}: Y is not in E"
            for x in xs:
                if not v1.contains(x):
                    return None, f"{where}: X is not horizontal"
                if not e.contains(g.ad(y, x, 2)):
                    return None, f"{where}: ad_Y^2 X is not in E"
            allowed = Subspace.span([g.bracket(x, y) for x in xs], g.dim)
            if not all(allowed.contains(v) for v in step.added):
                return None, f"{where}: added vector is not a bracket [X,Y]"
        elif step.rule == "R3":
            (x,), (y,) = step.inputs["X"], step.inputs["Y"]
            if not (v1.contains(x) and v1.contains(y)):
                return None, f"{where}: X or Y is not horizontal"
            if any(c != 0 for c in g.ad(x, y, 2)) or any(c != 0 for c in g.ad(y, x, 2)):
                return None, f"{where}: ad_X^2 Y or ad_Y^2 X is nonzero"
            allowed = Subspace.span([g.bracket(x, y)], g.dim)
            if not all(allowed.contains(v) for v in step.added):
                return None, f"{where}: added vector is not [X,Y]"
        elif step.rule == "R4":
            allowed = center(g) & g.layer_space(2)
            if not all(allowed.contains(v) for v in step.added):
                return None, f"{where}: added vector is not central in V2"
        elif step.rule == "R5":
            if g.step > 4:
                return None, f"{where}: rule needs step at most 4"
            zs = step.inputs.get("Z", [])
            v2 = g.layer_space(2)
            if not all(v2.contains(z) and e.contains(z) for z in zs):
                return None, f"{where}: seed is not in V2 and E"
            allowed = ideal_generated(g, zs)
            if not all(allowed.contains(v) for v in step.added):
                return None, f"{where}: added vector is not in the generated ideal"
        else:
            return None, f"{where}: unknown rule"
        e = e.extend(step.added)
    return e, None


def diamond_terms(g: LieAlgebra, basis: Sequence[Vector]) -> list[Vector]:
    """ad_{X_i}^2 X_j and ad^2_{ad_{X_i}^k X_j} X_i for 2 <= k <= (s-3)/2."""
    out = []
    s = g.step
    for xi in basis:
        for xj in basis:
            out.append(g.ad(xi, xj, 2))
            for k in range(2, (s - 3) // 2 + 1):
                u = g.ad(xi, xj, k)
                out.append(g.ad(u, xi, 2))
    return out


def candidate_bases(g: LieAlgebra, w: HalfSpace) -> list[list[Vector]]:
    """The standard V1 basis and one adapted to the boundary of W."""
    std = [g.unit(i) for i in g.layer_indices(1)]
    x = w.outside_vector(g)
    adapted = list(w.boundary(g).basis) + [x]
    return [std, adapted] if adapted != std else [std]
