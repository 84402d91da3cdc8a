"""Semigeneration decisions with checkable certificates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..engel import EngelStructure, engel_structure
from ..lie import LieAlgebra, is_hom_ideal, quotient
from ..linalg import Subspace, Vector, format_rational, nullspace, parse_rational, rank
from .edge import (
    HalfSpace,
    SaturationConfig,
    TraceStep,
    candidate_bases,
    diamond_terms,
    replay_trace,
    saturate_edge,
)
from .quotients import EngelSearch, find_engel_quotients
from .types import ConstructionCert, StarReport, check_type_star, verify_construction, verify_star_report

SEMIGENERATED = "SEMIGENERATED"
NOT_SEMIGENERATED = "NOT_SEMIGENERATED"
UNKNOWN = "UNKNOWN"


def _vecs_out(vs) -> list[list[str]]:
    return [[format_rational(c) for c in v] for v in vs]


def _vecs_in(vs) -> list[tuple[Fraction, ...]]:
    return [tuple(parse_rational(c) for c in v) for v in vs]


@dataclass
class StepTwoCert:
    step: int

    kind = "step_two"

    def to_json(self) -> dict:
        return {"kind": self.kind, "step": self.step}

    def verify(self, g: LieAlgebra) -> str | None:
        if not g.is_stratified:
            return "algebra is not stratified"
        return None if g.step <= 2 else f"step is {g.step}, not at most 2"

    def describe(self) -> str:
        return f"step {self.step} <= 2"


@dataclass
class SaturationCert:
    lam: tuple[Fraction, ...]
    trace: list[TraceStep]
    reason: str  # V3, V2 or diamond_terms
    basis: list[Vector] | None = None

    kind = "saturation"

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "lambda": [format_rational(c) for c in self.lam],
            "reason": self.reason,
            "trace": [s.to_json() for s in self.trace],
        }
        if self.basis is not None:
            out["basis"] = _vecs_out(self.basis)
        return out

    def verify(self, g: LieAlgebra) -> str | None:
        w = HalfSpace(self.lam)
        try:
            e, err = replay_trace(g, w, self.trace)
        except (ValueError, KeyError) as exc:
            return f"malformed trace: {exc}"
        if err:
            return err
        if self.reason in ("V3", "V2"):
            if g.step > 4:
                return "layer criterion needs step at most 4"
            k = 3 if self.reason == "V3" else 2
            return None if g.layer_space(k) <= e else f"V{k} is not contained in E"
        if self.reason == "diamond_terms":
            b = self.basis or []
            if len(b) != g.rank or rank(b) != g.rank or not all(g.layer_space(1).contains(v) for v in b):
                return "diamond basis is not a basis of V1"
            for t in diamond_terms(g, b):
                if not e.contains(t):
                    return "a diamond term is not in E"
            return None
        return f"unknown reason {self.reason!r}"

    def describe(self) -> str:
        if self.reason == "diamond_terms":
            return "diamond terms of a basis lie in the saturated edge"
        return f"{self.reason} contained in the saturated edge"


def bad_boundary_image(q: LieAlgebra, s: EngelStructure) -> Subspace:
    return Subspace.span(s.ys, q.dim)


def _boundary_is_bad(q: LieAlgebra, s: EngelStructure, image: Subspace) -> bool:
    """Is ``image`` (a subspace of V1 of the quotient) the boundary of a non-semigenerating half-space?"""
    if image.dim != s.n:
        return False
    if s.n >= 2:
        return image == Subspace.span(s.ys, q.dim)
    return not image.contains(s.x)


@dataclass
class EngelQuotientCert:
    ideal: list[Vector]
    n: int
    lam: tuple[Fraction, ...]  # a half-space of g mapped onto a bad one of the quotient

    kind = "engel_quotient"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ideal": _vecs_out(self.ideal),
            "n": self.n,
            "lambda": [format_rational(c) for c in self.lam],
        }

    def verify(self, g: LieAlgebra) -> str | None:
        ideal = Subspace.span(self.ideal, g.dim)
        if not is_hom_ideal(g, ideal):
            return "ideal is not a homogeneous ideal"
        q, proj = quotient(g, ideal)
        s = engel_structure(q)
        if not isinstance(s, EngelStructure):
            return f"quotient is not of Engel type ({s})"
        if s.n != self.n:
            return f"quotient is E{s.n}, not E{self.n}"
        w = HalfSpace(self.lam)
        if len(self.lam) != g.rank:
            return "lambda has the wrong length"
        if not _boundary_is_bad(q, s, proj.image(w.boundary(g))):
            return "the half-space does not map onto a non-semigenerating half-space"
        return None

    def describe(self) -> str:
        if not any(any(c != 0 for c in v) for v in self.ideal):
            return f"Engel quotient (ideal = 0, n = {self.n})"
        return f"Engel quotient (ideal of dimension {len(self.ideal)}, n = {self.n})"


@dataclass
class DiamondCert:
    route: str  # construction or star
    construction: ConstructionCert | None = None
    star: StarReport | None = None

    kind = "diamond"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "route": self.route}
        if self.construction is not None:
            out["construction"] = self.construction.to_json()
        if self.star is not None:
            out["star"] = self.star.to_json()
        return out

    def verify(self, g: LieAlgebra) -> str | None:
        if not g.is_stratified:
            return "algebra is not stratified"
        if self.route == "construction" and self.construction is not None:
            return verify_construction(g, self.construction)
        if self.route == "star" and self.star is not None and self.star.answer == "YES":
            return verify_star_report(g, self.star)
        return "incomplete diamond certificate"

    def describe(self) -> str:
        return "type (diamond) via " + ("product-quotient construction" if self.route == "construction" else "type (star) basis")


@dataclass
class EngelSearchCert:
    """Step 3 and no Engel quotient, established by an exhaustive search."""

    log: list[str]

    kind = "engel_search"

    def to_json(self) -> dict:
        return {"kind": self.kind, "log": list(self.log)}

    def verify(self, g: LieAlgebra) -> str | None:
        if not g.is_stratified or g.step != 3:
            return "exhaustive-search certificate needs a stratified step-3 algebra"
        s = find_engel_quotients(g, use_sampling=False)
        if s.quotients:
            return "an Engel quotient exists"
        return None if s.exhaustive else "search is not exhaustive"

    def describe(self) -> str:
        return "exhaustive Engel-quotient search is empty"


CERT_TYPES = {c.kind: c for c in (StepTwoCert, SaturationCert, EngelQuotientCert, DiamondCert, EngelSearchCert)}


def cert_from_json(data: dict):
    kind = data.get("kind")
    if kind == "step_two":
        return StepTwoCert(int(data["step"]))
    if kind == "saturation":
        return SaturationCert(
            tuple(parse_rational(c) for c in data["lambda"]),
            [TraceStep.from_json(s) for s in data["trace"]],
            data["reason"],
            _vecs_in(data["basis"]) if "basis" in data else None,
        )
    if kind == "engel_quotient":
        return EngelQuotientCert(_vecs_in(data["ideal"]), int(data["n"]), tuple(parse_rational(c) for c in data["lambda"]))
    if kind == "diamond":
        return DiamondCert(
            data["route"],
            ConstructionCert.from_json(data["construction"]) if "construction" in data else None,
            StarReport.from_json(data["star"]) if "star" in data else None,
        )
    if kind == "engel_search":
        return EngelSearchCert(list(data.get("log", [])))
    raise ValueError(f"unknown certificate kind {kind!r}")


@dataclass
class Decision:
    verdict: str
    certificate: object | None
    scope: str  # algebra or halfspace
    lam: tuple[Fraction, ...] | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "schema": 1,
            "kind": "decision",
            "scope": self.scope,
            "verdict": self.verdict,
            "certificate": self.certificate.to_json() if self.certificate is not None else None,
            "notes": list(self.notes),
        }
        if self.lam is not None:
            out["lambda"] = [format_rational(c) for c in self.lam]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "Decision":
        if data.get("schema") != 1:
            raise ValueError("unsupported schema")
        cert = cert_from_json(data["certificate"]) if data.get("certificate") else None
        lam = tuple(parse_rational(c) for c in data["lambda"]) if "lambda" in data else None
        return cls(data["verdict"], cert, data["scope"], lam, list(data.get("notes", [])))

    def summary(self) -> str:
        if self.certificate is None:
            return f"{self.verdict}; " + ("; ".join(self.notes) if self.notes else "no certificate")
        return f"{self.verdict}; certificate: {self.certificate.describe()}"


_SEARCH_CACHE: dict = {}


def _search(g: LieAlgebra, seed: int, max_samples: int, workers: int) -> EngelSearch:
    key = (g, seed, max_samples)
    if key not in _SEARCH_CACHE:
        _SEARCH_CACHE[key] = find_engel_quotients(g, seed=seed, max_samples=max_samples, workers=workers)
    return _SEARCH_CACHE[key]


def _bad_lambda(g: LieAlgebra, ideal: Subspace, s: EngelStructure) -> tuple[Fraction, ...]:
    """A covector on V1 of g whose kernel maps onto the abelian hyperplane of the quotient."""
    q, proj = quotient(g, ideal)
    hyper = proj.preimage(Subspace.span(s.ys, q.dim)) & g.layer_space(1)
    rows = [list(v[: g.rank]) for v in hyper.basis]
    (lam,) = nullspace(rows, g.rank) if rows else [tuple(Fraction(1) for _ in range(g.rank))]
    return tuple(lam)


def decide_halfspace(
    g: LieAlgebra,
    lam: Sequence,
    config: SaturationConfig | None = None,
    seed: int = 0,
    max_samples: int = 200,
    workers: int = 1,
) -> Decision:
    g.require_stratified()
    w = HalfSpace(lam)
    w.check(g)
    approx = saturate_edge(g, w, config)
    e = approx.edge
    if g.step <= 4:
        for k in (3, 2):
            if g.layer_space(k) <= e:
                return Decision(SEMIGENERATED, SaturationCert(w.lam, approx.trace, f"V{k}"), "halfspace", w.lam)
    for basis in candidate_bases(g, w):
        if all(e.contains(t) for t in diamond_terms(g, basis)):
            return Decision(SEMIGENERATED, SaturationCert(w.lam, approx.trace, "diamond_terms", basis), "halfspace", w.lam)
    search = _search(g, seed, max_samples, workers)
    bd = w.boundary(g)
    for eq in search.quotients:
        q, proj = quotient(g, eq.ideal)
        if _boundary_is_bad(q, eq.structure, proj.image(bd)):
            cert = EngelQuotientCert(list(eq.ideal.basis), eq.n, w.lam)
            return Decision(NOT_SEMIGENERATED, cert, "halfspace", w.lam)
    notes = [f"edge approximation has dimension {e.dim}"]
    return Decision(UNKNOWN, None, "halfspace", w.lam, notes)


def decide_semigenerated(
    g: LieAlgebra,
    diamond_cert: ConstructionCert | None = None,
    seed: int = 0,
    max_samples: int = 200,
    workers: int = 1,
) -> Decision:
    g.require_stratified()
    if g.step <= 2:
        return Decision(SEMIGENERATED, StepTwoCert(g.step), "algebra")
    if diamond_cert is not None and verify_construction(g, diamond_cert) is None:
        return Decision(SEMIGENERATED, DiamondCert("construction", diamond_cert), "algebra")
    search = _search(g, seed, max_samples, workers)
    if search.quotients:
        eq = search.quotients[0]
        lam = _bad_lambda(g, eq.ideal, eq.structure)
        return Decision(NOT_SEMIGENERATED, EngelQuotientCert(list(eq.ideal.basis), eq.n, lam), "algebra", notes=search.log)
    if g.step == 3 and search.exhaustive:
        return Decision(SEMIGENERATED, EngelSearchCert(search.log), "algebra")
    star = check_type_star(g)
    if star.answer == "YES":
        return Decision(SEMIGENERATED, DiamondCert("star", star=star), "algebra")
    return Decision(UNKNOWN, None, "algebra", notes=search.log + [f"type (star): {star.answer}"])


@dataclass(frozen=True)
class Verification:
    ok: bool
    failure: str | None = None

    def __bool__(self):
        return self.ok


def verify_certificate(g: LieAlgebra, decision: Decision) -> Verification:
    """Re-check a decision from the certificate alone."""
    cert = decision.certificate
    if decision.verdict == UNKNOWN:
        return Verification(cert is None, None if cert is None else "UNKNOWN carries no certificate")
    if cert is None:
        return Verification(False, "missing certificate")
    positive = (StepTwoCert, SaturationCert, DiamondCert, EngelSearchCert)
    if decision.verdict == SEMIGENERATED and not isinstance(cert, positive):
        return Verification(False, "certificate kind does not support SEMIGENERATED")
    if decision.verdict == NOT_SEMIGENERATED and not isinstance(cert, EngelQuotientCert):
        return Verification(False, "certificate kind does not support NOT_SEMIGENERATED")
    if decision.scope == "halfspace":
        if decision.lam is None:
            return Verification(False, "half-space decision without lambda")
        if isinstance(cert, (SaturationCert, EngelQuotientCert)):
            a = HalfSpace(decision.lam).boundary(g)
            if HalfSpace(cert.lam).boundary(g) != a:
                return Verification(False, "certificate is for another half-space")
    elif isinstance(cert, SaturationCert):
        return Verification(False, "saturation certificates only decide a half-space")
    try:
        err = cert.verify(g)
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        err = f"malformed certificate: {exc}"
    return Verification(err is None, err)
