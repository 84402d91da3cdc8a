"""Type (star) and type (diamond) checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..lie import LieAlgebra, extend_v1_map, is_hom_ideal, is_isomorphism_matrix, product, quotient
from ..linalg import (
    QForm,
    Subspace,
    Vector,
    as_vector,
    format_rational,
    mat_mul,
    nullspace,
    parse_rational,
    rank,
    signature,
    solve,
    unit_vector,
)
from .. import presentation


@dataclass(frozen=True)
class RadicalStep:
    form: tuple[int, int]  # (index j of X_j in V1, coordinate index in g)
    constraints: tuple[Vector, ...]  # functionals on V1 coordinates a_1..a_m
    dim_after: int


@dataclass
class StarReport:
    answer: str  # YES, NO or UNKNOWN
    rank: int
    steps: list[RadicalStep] = field(default_factory=list)
    final: Subspace | None = None
    basis: list[Vector] | None = None

    def witness_text(self) -> str:
        if self.answer == "YES":
            return f"basis of V1 with ad_X^2(V1) = 0: {len(self.basis or [])} vectors"
        if self.answer == "UNKNOWN":
            return f"indefinite forms remain on a subspace of dimension {self.final.dim}"
        if not self.steps:
            return f"all forms vanish only on a subspace of dimension {self.final.dim} < {self.rank}"
        parts = []
        for st in self.steps:
            cons = ", ".join(f"{_functional_text(c)} = 0" for c in st.constraints)
            parts.append(f"forces {cons}, then span dim {st.dim_after} < {self.rank}")
        return "radical chain " + "; ".join(parts)

    def to_json(self) -> dict:
        return {
            "answer": self.answer,
            "rank": self.rank,
            "steps": [
                {
                    "form": list(s.form),
                    "constraints": [[format_rational(c) for c in v] for v in s.constraints],
                    "dim_after": s.dim_after,
                }
                for s in self.steps
            ],
            "final": [[format_rational(c) for c in v] for v in self.final.basis] if self.final else None,
            "basis": [[format_rational(c) for c in v] for v in self.basis] if self.basis else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "StarReport":
        def vecs(vs):
            return [tuple(parse_rational(c) for c in v) for v in vs]

        steps = [RadicalStep(tuple(s["form"]), tuple(vecs(s["constraints"])), s["dim_after"]) for s in data["steps"]]
        final = Subspace.span(vecs(data["final"]), data["rank"]) if data.get("final") is not None else None
        return cls(data["answer"], data["rank"], steps, final, vecs(data["basis"]) if data.get("basis") else None)


def _functional_text(c: Sequence) -> str:
    parts = []
    for i, x in enumerate(c):
        if x == 0:
            continue
        name = f"a{i + 1}"
        if x == 1:
            parts.append(name)
        elif x == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"{format_rational(x)}*{name}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def star_forms(g: LieAlgebra) -> list[tuple[tuple[int, int], QForm]]:
    """Quadratic forms a -> coordinate c of ad_Y^2 X_j with Y = sum a_i X_i, in a fixed order."""
    m = g.rank
    v1 = list(g.layer_indices(1))
    out = []
    # [X_p, [X_q, X_j]] for all p, q, j
    inner = {(q, j): g.basis_bracket(v1[q], v1[j]) for q in range(m) for j in range(m)}
    outer = {(p, q, j): g.bracket(g.unit(v1[p]), inner[(q, j)]) for p in range(m) for q in range(m) for j in range(m)}
    for j in range(m):
        for c in g.layer_indices(3):
            mat = [[(outer[(p, q, j)][c] + outer[(q, p, j)][c]) / 2 for q in range(m)] for p in range(m)]
            if any(x != 0 for row in mat for x in row):
                out.append(((j, c), QForm(tuple(tuple(r) for r in mat))))
    return out


def check_type_star(g: LieAlgebra) -> StarReport:
    """Cut V1 down by radicals of semidefinite forms until only zero or indefinite forms remain."""
    g.require_stratified()
    m = g.rank
    forms = star_forms(g)
    u = Subspace.full(m)
    steps: list[RadicalStep] = []
    while True:
        changed = False
        for key, q in forms:
            r = q.restrict(u.basis)
            if r.is_zero():
                continue
            pos, neg, _ = signature(r)
            if pos and neg:
                continue
            # u in U with B Q u = 0
            bq = mat_mul([list(b) for b in u.basis], [list(row) for row in q.matrix])
            new = Subspace.span([_combo(c, u.basis, m) for c in nullspace(r.matrix, u.dim)], m)
            ann_old = u.annihilator()
            cons = Subspace.span([ann_old.reduce(row) for row in bq], m)
            steps.append(RadicalStep(key, cons.basis, new.dim))
            u = new
            changed = True
            break
        if not changed:
            break
    remaining = [q for _, q in forms if not q.restrict(u.basis).is_zero()] if u.dim else []
    if remaining:
        return StarReport("UNKNOWN", m, steps, u)
    if u.dim == m:
        basis = [unit_vector(m, i) for i in range(m)]
        return StarReport("YES", m, steps, u, basis)
    return StarReport("NO", m, steps, u)


def _combo(c: Sequence, basis: Sequence[Sequence], n: int) -> Vector:
    return tuple(sum((ci * b[k] for ci, b in zip(c, basis)), Fraction(0)) for k in range(n))


def verify_star_report(g: LieAlgebra, rep: StarReport) -> str | None:
    """Replay a star report; returns None when it holds, else the first failure."""
    m = g.rank
    forms = dict(star_forms(g))
    if rep.answer == "YES":
        b = [as_vector(v) for v in rep.basis or []]
        if len(b) != m or rank(b) != m:
            return "witness is not a basis of V1"
        pad = (Fraction(0),) * (g.dim - m)
        for y in b:
            for i in g.layer_indices(1):
                if any(c != 0 for c in g.ad(tuple(y) + pad, g.unit(i), 2)):
                    return "ad_Y^2(V1) is nonzero for a witness vector"
        return None
    if rep.answer != "NO":
        return "only YES and NO reports carry a witness"
    u = Subspace.full(m)
    for n, st in enumerate(rep.steps):
        q = forms.get(tuple(st.form))
        if q is None:
            return f"step {n}: unknown form"
        r = q.restrict(u.basis)
        pos, neg, _ = signature(r)
        if pos and neg:
            return f"step {n}: form is indefinite on the current subspace"
        u = Subspace.span([_combo(c, u.basis, m) for c in nullspace(r.matrix, u.dim)], m) if u.dim else u
        if u.dim != st.dim_after:
            return f"step {n}: dimension mismatch"
    if u.dim >= m:
        return "final subspace is not proper"
    return None


# type (diamond)


def abelian_hyperplane(g: LieAlgebra) -> Subspace | None:
    """An abelian subalgebra of V1 of codimension one, if any.

    Every hyperplane misses some basis vector e_p and is then spanned by
    e_i + a_i e_p (i != p), so solving the linear system for each p is exhaustive.
    """
    m = g.rank
    if m < 2:
        return None
    v1 = list(g.layer_indices(1))
    for p in range(m):
        x = g.unit(v1[p])
        es = [g.unit(v1[i]) for i in range(m) if i != p]
        k = len(es)
        rows, rhs = [], []
        for i in range(k):
            for j in range(i + 1, k):
                eij, eix, ejx = g.bracket(es[i], es[j]), g.bracket(es[i], x), g.bracket(es[j], x)
                for c in g.layer_indices(2):
                    row = [Fraction(0)] * k
                    row[j] += eix[c]
                    row[i] -= ejx[c]
                    rows.append(row)
                    rhs.append(-eij[c])
        a = solve(rows, rhs, k) if rows else (Fraction(0),) * k
        if a is not None:
            return Subspace.span([tuple(e + ai * xx for e, xx in zip(es[i], x)) for i, ai in enumerate(a)], g.dim)
    return None


@dataclass
class ConstructionCert:
    """g is isomorphic to (g_1 x ... x g_n)/i with the factor conditions holding."""

    factors: list[LieAlgebra]
    ideal: list[Vector]  # in product coordinates
    v1_images: list[Vector]  # image of each V1 basis vector of g, in quotient coordinates

    def to_json(self) -> dict:
        return {
            "factors": [presentation.to_dict(f) for f in self.factors],
            "ideal": [[format_rational(c) for c in v] for v in self.ideal],
            "v1_images": [[format_rational(c) for c in v] for v in self.v1_images],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConstructionCert":
        return cls(
            [presentation.from_dict(f) for f in data["factors"]],
            [tuple(parse_rational(c) for c in v) for v in data["ideal"]],
            [tuple(parse_rational(c) for c in v) for v in data["v1_images"]],
        )


def product_layout(factors: Sequence[LieAlgebra]) -> list[tuple[int, int]]:
    """(factor, index) for each basis vector of product(*factors), in order."""
    depth = max(len(a.layer_dims) for a in factors)
    order = []
    for k in range(1, depth + 1):
        for f, a in enumerate(factors):
            order.extend((f, i) for i in a.layer_indices(k))
    return order


def verify_construction(g: LieAlgebra, cert: ConstructionCert) -> str | None:
    for f in cert.factors:
        if not f.is_stratified:
            return f"factor {f.name} is not stratified"
    prod = product(*cert.factors)
    ideal = Subspace.span(cert.ideal, prod.dim)
    if not is_hom_ideal(prod, ideal):
        return "ideal is not a homogeneous ideal of the product"
    layout = product_layout(cert.factors)
    for l, f in enumerate(cert.factors):
        idx = [n for n, (ff, _) in enumerate(layout) if ff == l]
        proj = Subspace.span([tuple(v[n] for n in idx) for v in ideal.basis], f.dim)
        v1 = [f.unit(i) for i in f.layer_indices(1)]
        for xi in v1:
            for xj in v1:
                for k in range(2, f.step + 1):
                    u = f.ad(xi, xj, k)
                    if not proj.contains(u):
                        return f"factor {l + 1}: ad^{k} term is not in the projected ideal"
                    if not proj.contains(f.ad(u, xi, 2)):
                        return f"factor {l + 1}: squared term for k = {k} is not in the projected ideal"
    q, _ = quotient(prod, ideal)
    if q.dim != g.dim or q.layer_dims != g.layer_dims:
        return "quotient has different layer dimensions"
    m = extend_v1_map(g, q, cert.v1_images)
    if m is None or not is_isomorphism_matrix(g, q, m):
        return "V1 map does not extend to an isomorphism onto the quotient"
    return None


@dataclass
class DiamondReport:
    answer: str  # YES, NO or UNKNOWN
    route: str
    star: StarReport | None = None
    hyperplane: Subspace | None = None
    construction: ConstructionCert | None = None

    def witness_text(self) -> str:
        if self.route == "construction":
            return "product-quotient construction verified"
        if self.route == "step_two":
            return "step at most 2"
        if self.route == "star":
            return "type (star) basis"
        if self.route == "abelian_hyperplane":
            return f"abelian hyperplane of V1 of dimension {self.hyperplane.dim} and not type (star): {self.star.witness_text()}"
        return "no certificate found"


def check_type_diamond(g: LieAlgebra, cert: ConstructionCert | None = None) -> DiamondReport:
    g.require_stratified()
    if cert is not None:
        err = verify_construction(g, cert)
        if err is None:
            return DiamondReport("YES", "construction", construction=cert)
    if g.step <= 2:
        return DiamondReport("YES", "step_two")
    star = check_type_star(g)
    if star.answer == "YES":
        return DiamondReport("YES", "star", star=star)
    if star.answer == "NO":
        h = abelian_hyperplane(g)
        if h is not None:
            return DiamondReport("NO", "abelian_hyperplane", star=star, hyperplane=h)
    return DiamondReport("UNKNOWN", "none", star=star)
