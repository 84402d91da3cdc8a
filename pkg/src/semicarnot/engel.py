"""Engel-type algebras: construction, recognition, automorphisms, and a flow model."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lie import LieAlgebra, centralizer, bracket_spaces, extend_v1_map, is_isomorphism_matrix
from .linalg import (
    Subspace,
    Vector,
    as_vector,
    inverse,
    lagrange_diagonal,
    mat_mul,
    nullspace,
    solve,
    transpose,
)


def engel_names(n: int) -> list[str]:
    sub = [""] if n == 1 else [str(i) for i in range(1, n + 1)]
    return ["X"] + [f"Y{s}" for s in sub] + [f"T{s}" for s in sub] + ["Z"]


def make_engel(n: int) -> LieAlgebra:
    """Basis X, Y1..Yn, T1..Tn, Z with [Yi, X] = Ti and [Yi, Ti] = Z."""
    if n < 1:
        raise ValueError("n must be at least 1")
    names = engel_names(n)
    z = 2 * n + 1
    br = {}
    for i in range(1, n + 1):
        br[(0, i)] = {n + i: Fraction(-1)}  # [X, Yi] = -Ti
        br[(i, n + i)] = {z: Fraction(1)}
    return LieAlgebra(f"E{n}", (n + 1, n, 1), names, br)


@dataclass(frozen=True)
class EngelStructure:
    """Adapted basis of an algebra recognized as Engel type, in its own coordinates."""

    n: int
    x: Vector
    ys: tuple[Vector, ...]
    ts: tuple[Vector, ...]
    z: Vector
    gram: tuple[tuple[Fraction, ...], ...]

    def abelian_hyperplane(self, dim: int) -> Subspace:
        return Subspace.span(self.ys, dim)

    def x_line(self, dim: int) -> Subspace:
        return Subspace.span([self.x], dim)


@dataclass(frozen=True)
class NotEngel:
    step: int
    reason: str

    def __bool__(self):
        return False

    def __str__(self):
        return f"step {self.step}: {self.reason}"


def _engel_core(g: LieAlgebra):
    """Steps 1-4 and the raw Gram matrix; returns NotEngel or (n, x, ys, ts, z, gram)."""
    if g.stratification_defect() is not None:
        return NotEngel(1, "not stratified")
    d = g.layer_dims
    if g.step != 3 or d[0] != d[1] + 1 or d[2] != 1:
        return NotEngel(1, f"layers {tuple(d)} are not (n+1, n, 1)")
    n = d[1]
    v1, v2 = g.layer_space(1), g.layer_space(2)
    xline = centralizer(g, v2, v1)
    if xline.dim != 1:
        return NotEngel(2, f"{{v in V1 : [v,V2] = 0}} has dimension {xline.dim}, not 1")
    x = xline.basis[0]
    adx = centralizer(g, Subspace.span([x], g.dim), v1)
    if adx.dim != 1:
        return NotEngel(3, f"ad_X on V1 has kernel of dimension {adx.dim}, not 1")
    image = bracket_spaces(g, Subspace.span([x], g.dim), v1)
    if image.dim != n:
        return NotEngel(3, f"ad_X(V1) has dimension {image.dim}, not {n}")
    # complement of the X line inside V1, then shift by multiples of X
    xpiv = xline.pivots[0]
    es = [g.unit(i) for i in g.layer_indices(1) if i != xpiv]
    # [e_i + a_i X, e_j + a_j X] = [e_i,e_j] + a_j [e_i,X] - a_i [e_j,X]
    rows, rhs = [], []
    for i in range(n):
        for j in range(i + 1, n):
            eij = g.bracket(es[i], es[j])
            eix = g.bracket(es[i], x)
            ejx = g.bracket(es[j], x)
            for c in g.layer_indices(2):
                row = [Fraction(0)] * n
                row[j] = row[j] + eix[c]
                row[i] = row[i] - ejx[c]
                rows.append(row)
                rhs.append(-eij[c])
    if rows:
        a = solve(rows, rhs, n)
        if a is None:
            return NotEngel(4, "no abelian hyperplane complementary to the X line")
        if nullspace(rows, n):
            return NotEngel(4, "abelian hyperplane is not unique")
    else:
        a = (Fraction(0),) * n
    ys = [tuple(e + ai * xx for e, xx in zip(es[i], x)) for i, ai in enumerate(a)]
    ts = [g.bracket(y, x) for y in ys]
    zi = g.layer_indices(3)[0]
    gram = [[g.bracket(ys[i], ts[j])[zi] for j in range(n)] for i in range(n)]
    return n, x, ys, ts, g.unit(zi), gram


def engel_structure(g: LieAlgebra) -> EngelStructure | NotEngel:
    core = _engel_core(g)
    if isinstance(core, NotEngel):
        return core
    n, x, ys, ts, z, gram = core
    for i in range(n):
        for j in range(i):
            if gram[i][j] != gram[j][i]:
                return NotEngel(5, "Gram matrix is not symmetric")
    diag = lagrange_diagonal(gram)
    if not (all(v > 0 for v in diag) or all(v < 0 for v in diag)):
        return NotEngel(5, "Gram matrix is not definite")
    if diag[0] < 0:
        # X -> -X flips T and the Gram matrix
        x = tuple(-c for c in x)
        ts = [tuple(-c for c in t) for t in ts]
        gram = [[-v for v in row] for row in gram]
    return EngelStructure(n, tuple(x), tuple(map(tuple, ys)), tuple(map(tuple, ts)), tuple(z), tuple(tuple(r) for r in gram))


def recognize_engel(g: LieAlgebra) -> EngelStructure | None:
    s = engel_structure(g)
    return s if isinstance(s, EngelStructure) else None


def engel_gram_diagonal(g: LieAlgebra):
    """Pivots of the Gram matrix diagonalization, or NotEngel; usable over any exact field."""
    core = _engel_core(g)
    if isinstance(core, NotEngel):
        return core
    gram = core[-1]
    n = core[0]
    for i in range(n):
        for j in range(i):
            if gram[i][j] != gram[j][i]:
                return NotEngel(5, "Gram matrix is not symmetric")
    return lagrange_diagonal(gram)


def verify_automorphism(n: int, a, b, A: Sequence[Sequence]) -> bool:
    """Does X -> aX, Yi -> b * sum_k A[k][i] Yk extend to an automorphism of E_n?"""
    a, b = Fraction(a), Fraction(b)
    A = [as_vector(r) for r in A]
    if len(A) != n or any(len(r) != n for r in A):
        raise ValueError("A must be n x n")
    if a == 0 or b == 0:
        raise ValueError("a and b must be nonzero")
    try:
        inverse(A)
    except ValueError:
        raise ValueError("A is singular") from None
    g = make_engel(n)
    images = [tuple(a if k == 0 else Fraction(0) for k in range(n + 1))]
    for i in range(n):
        images.append((Fraction(0),) + tuple(b * A[k][i] for k in range(n)))
    full = [tuple(list(v) + [Fraction(0)] * (g.dim - n - 1)) for v in images]
    m = extend_v1_map(g, g, full)
    return m is not None and is_isomorphism_matrix(g, g, m)


def transformed_gram(gram, a, b, A) -> list[list[Fraction]]:
    """Gram matrix after the V1 change X -> aX, Y -> bA Y."""
    At = transpose([as_vector(r) for r in A])
    m = mat_mul(mat_mul(At, gram), [as_vector(r) for r in A])
    return [[Fraction(a) * Fraction(b) ** 2 * v for v in row] for row in m]


def is_nonabnormal(g: LieAlgebra, nu: Sequence) -> bool:
    """ad_nu(V1) = V2 and ad_nu^2(V1) = V3 (step at most 3)."""
    nu = as_vector(nu)
    if len(nu) != g.dim:
        raise ValueError("vector has the wrong length")
    if any(c != 0 for i, c in enumerate(nu) if g.degree[i] != 1):
        raise ValueError("nu must lie in V1")
    if g.step > 3:
        raise ValueError("abnormality test needs step at most 3")
    v1 = [g.unit(i) for i in g.layer_indices(1)]
    one = Subspace.span([g.bracket(nu, v) for v in v1], g.dim)
    two = Subspace.span([g.bracket(nu, g.bracket(nu, v)) for v in v1], g.dim)
    return one == g.layer_space(2) and two == g.layer_space(3)


# explicit vector field model on R^{2(n+1)}


def vf_realization(n: int) -> dict[str, list[tuple[Fraction, dict[int, int]]]]:
    """Polynomial vector fields: name -> per-coordinate list of monomials (coeff, {var: power}).

    Coordinates are 0-based here: x_0..x_{n-1} are the Y directions, x_n the X
    direction, x_{n+1}..x_{2n} the T directions and x_{2n+1} the last one.
    """
    dim = 2 * (n + 1)
    last = dim - 1
    fields: dict[str, list[list]] = {}

    def blank():
        return [[] for _ in range(dim)]

    names = engel_names(n)
    for i in range(n):
        f = blank()
        f[i].append((Fraction(1), {}))
        fields[names[1 + i]] = f
        t = blank()
        t[n + 1 + i].append((Fraction(1), {}))
        t[last].append((Fraction(1), {i: 1}))
        fields[names[1 + n + i]] = t
    x = blank()
    x[n].append((Fraction(1), {}))
    for i in range(n):
        x[n + 1 + i].append((Fraction(1), {i: 1}))
        x[last].append((Fraction(1, 2), {i: 2}))
    fields["X"] = x
    z = blank()
    z[last].append((Fraction(1), {}))
    fields["Z"] = z
    return fields


def _split(n: int, v: Sequence) -> tuple[Fraction, list, list, Fraction]:
    v = as_vector(v)
    if len(v) != 2 * n + 2:
        raise ValueError("field vector must use the X, Y, T, Z basis of E_n")
    return v[0], list(v[1 : n + 1]), list(v[n + 1 : 2 * n + 1]), v[2 * n + 1]


def flow_segment(n: int, start: Sequence, v: Sequence, t) -> Vector:
    """Exact time-t flow of the constant combination v of the E_n fields from ``start``."""
    a, b, c, d = _split(n, v)
    t = Fraction(t)
    p = list(as_vector(start))
    x0 = p[:n]
    out = list(p)
    for i in range(n):
        out[i] = x0[i] + b[i] * t
    out[n] = p[n] + a * t
    for i in range(n):
        out[n + 1 + i] = p[n + 1 + i] + a * (x0[i] * t + b[i] * t * t / 2) + c[i] * t
    last = p[2 * n + 1] + d * t
    for i in range(n):
        # integral of a x_i^2/2 + c_i x_i along x_i(s) = x0 + b s
        sq = x0[i] ** 2 * t + x0[i] * b[i] * t**2 + b[i] ** 2 * t**3 / 3
        lin = x0[i] * t + b[i] * t**2 / 2
        last += a * sq / 2 + c[i] * lin
    out[2 * n + 1] = last
    return tuple(out)


def flow(n: int, word: Sequence[tuple[Sequence, object]], start: Sequence | None = None) -> Vector:
    """Compose flows: each entry is (field vector in the E_n basis, time)."""
    p = start if start is not None else (Fraction(0),) * (2 * n + 2)
    for v, t in word:
        p = flow_segment(n, p, v, t)
    return tuple(p)


def exp_point(n: int, v: Sequence) -> Vector:
    """The point reached from the origin by the time-1 flow of v."""
    return flow_segment(n, (Fraction(0),) * (2 * n + 2), v, 1)


def c_coordinate(n: int, v: Sequence):
    """Last model coordinate of exp(v); the invariant set is where this is >= 0."""
    return exp_point(n, v)[-1]
