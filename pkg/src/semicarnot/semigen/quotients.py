"""Search for homogeneous ideals whose quotient is of Engel type.

An Engel quotient has a one-dimensional top layer, so its ideal meets V3 in a
hyperplane ker(phi) and contains every layer above 3. Because the quotient must
be trimmed, phi then forces the rest of the ideal:

    i2 = {y in V2 : phi([V1, y]) = 0}
    i1 = {x in V1 : [V1, x] in i2 + ker(phi), phi([V2, x]) = 0}

so the search runs over the covectors phi on V3 alone.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..engel import EngelStructure, NotEngel, engel_gram_diagonal, engel_structure
from ..lie import LieAlgebra, quotient
from ..linalg import Subspace, nullspace
from ..polynomial import (
    RatFunc,
    count_real_roots,
    p_mul,
    rational_roots,
    sample_points_between_roots,
    squarefree,
)


@dataclass(frozen=True)
class EngelQuotient:
    ideal: Subspace
    n: int
    structure: EngelStructure
    phi: tuple
    layer: str


@dataclass
class EngelSearch:
    quotients: list[EngelQuotient]
    exhaustive: bool
    log: list[str] = field(default_factory=list)


def forced_ideal(g: LieAlgebra, phi: Sequence) -> Subspace:
    """The ideal determined by a nonzero covector phi on V3 (works over any exact field)."""
    v1, v2, v3 = (list(g.layer_indices(k)) for k in (1, 2, 3))
    zero = phi[0] * 0

    def phi_of(vec):
        total = zero
        for c, i in zip(phi, v3):
            if c != 0 and vec[i] != 0:
                total = total + c * vec[i]
        return total

    ker3 = nullspace([list(phi)], len(v3))

    def embed(coeffs, idx):
        out = [zero] * g.dim
        for c, i in zip(coeffs, idx):
            out[i] = c
        return tuple(out)

    k3 = [embed(v, v3) for v in ker3] + [g.unit(i) for i in range(g.dim) if g.degree[i] >= 4]
    # i2
    rows = [[phi_of(g.basis_bracket(x, y)) for y in v2] for x in v1]
    i2 = [embed(v, v2) for v in nullspace(rows, len(v2))]
    i2_space = Subspace.span([tuple(c for c, d in zip(v, g.degree) if d == 2) for v in i2], len(v2)) if i2 else Subspace.zero(len(v2))
    ann2 = i2_space.annihilator().basis
    # i1
    rows = []
    for xp in v1:
        br = [g.basis_bracket(xp, x) for x in v1]
        for f in ann2:
            rows.append([sum((fc * b[i] for fc, i in zip(f, v2) if fc != 0), zero) for b in br])
    for y in v2:
        rows.append([phi_of(g.basis_bracket(y, x)) for x in v1])
    i1 = [embed(v, v1) for v in nullspace(rows, len(v1))]
    return Subspace.span(i1 + i2 + k3, g.dim)


def evaluate_candidate(g: LieAlgebra, phi: Sequence) -> tuple[Subspace, EngelStructure | NotEngel]:
    ideal = forced_ideal(g, phi)
    q, _ = quotient(g, ideal, check=False)
    return ideal, engel_structure(q)


def _parametric_critical(g: LieAlgebra) -> tuple:
    """Run the forced chain and recognizer with phi = e0* + t e1* over Q(t).

    Returns the product of every polynomial whose sign or vanishing the run
    depended on; off its roots the outcome is the same for every t.
    """
    t = RatFunc.t()
    phi = (RatFunc((Fraction(1),)), t)
    rec: list = []
    RatFunc.recorder = rec
    try:
        ideal = forced_ideal(g, phi)
        q, _ = quotient(g, ideal, check=False)
        engel_gram_diagonal(q)
    finally:
        RatFunc.recorder = None
    crit: tuple = (Fraction(1),)
    seen = set()
    for p in rec:
        s = squarefree(p)
        if s not in seen:
            seen.add(s)
            crit = squarefree(p_mul(crit, s))
    return crit


def find_engel_quotients(
    g: LieAlgebra,
    seed: int = 0,
    max_samples: int = 200,
    workers: int = 1,
    use_sampling: bool = True,
) -> EngelSearch:
    g.require_stratified()
    log: list[str] = []
    if g.step < 3:
        return EngelSearch([], True, ["step below 3: no Engel quotients"])
    d3 = g.layer_dims[2]
    found: list[EngelQuotient] = []
    seen: set = set()

    def consider(phi, layer):
        ideal, res = evaluate_candidate(g, phi)
        if isinstance(res, EngelStructure) and ideal not in seen:
            seen.add(ideal)
            found.append(EngelQuotient(ideal, res.n, res, tuple(phi), layer))
            return True
        return False

    exhaustive = False
    # L1: coordinate hyperplanes of V3 (the only candidate when dim V3 = 1)
    for k in range(d3):
        phi = tuple(Fraction(1) if i == k else Fraction(0) for i in range(d3))
        consider(phi, "L1")
    log.append(f"L1: {d3} coordinate candidates, {len(found)} Engel quotients")
    if d3 == 1:
        exhaustive = True
    elif d3 == 2:
        # L2: phi = e0* + t e1*, with e1* already covered
        crit = _parametric_critical(g)
        rats = rational_roots(crit)
        real = count_real_roots(crit) if len(crit) > 1 else 0
        irr = real - len(rats)
        for r in rats:
            consider((Fraction(1), r), "L2")
        pts = sample_points_between_roots(crit) if len(crit) > 1 else [Fraction(0)]
        for p in pts:
            consider((Fraction(1), p), "L2")
        exhaustive = irr == 0
        log.append(
            f"L2: critical polynomial of degree {len(crit) - 1}, {len(rats)} rational and {irr} irrational real roots, "
            f"{len(pts)} generic samples"
        )
    if use_sampling and not found and not exhaustive and max_samples > 0:
        def draw(i):
            rng = random.Random(f"{seed}:L3:{i}")
            while True:
                phi = tuple(Fraction(rng.randint(-3, 3)) for _ in range(d3))
                if any(phi):
                    return phi

        phis = [draw(i) for i in range(max_samples)]
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda p: evaluate_candidate(g, p), phis))
        else:
            results = [evaluate_candidate(g, p) for p in phis]
        for phi, (ideal, res) in zip(phis, results):
            if isinstance(res, EngelStructure) and ideal not in seen:
                seen.add(ideal)
                found.append(EngelQuotient(ideal, res.n, res, phi, "L3"))
        log.append(f"L3: {max_samples} seeded samples (seed {seed}), {len(found)} Engel quotients in total")
    return EngelSearch(found, exhaustive, log)
