"""Graded nilpotent Lie algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import (
    Subspace,
    Vector,
    as_vector,
    inverse,
    is_zero,
    mat_vec,
    nullspace,
    solve,
    transpose,
    unit_vector,
    zero_vector,
)


class LieError(ValueError):
    pass


class PresentationError(LieError):
    pass


class JacobiViolation(LieError):
    def __init__(self, names: tuple[str, str, str], residual: Vector):
        self.names = names
        self.residual = residual
        super().__init__(f"JacobiViolation({','.join(names)})")


class GradingViolation(LieError):
    def __init__(self, left: str, right: str):
        self.names = (left, right)
        super().__init__(f"GradingViolation({left},{right})")


class NotStratified(LieError):
    pass


class NotAnIdeal(LieError):
    pass


class NotHomogeneous(LieError):
    pass


class LieAlgebra:
    """A positively graded Lie algebra with basis ordered layer by layer.

    ``brackets`` maps index pairs (i, j) to sparse results {k: coefficient};
    either order may be given, antisymmetry fills in the rest.
    """

    def __init__(
        self,
        name: str,
        layer_dims: Sequence[int],
        names: Sequence[str],
        brackets: Mapping[tuple[int, int], Mapping[int, object]],
        check: bool = True,
    ):
        self.name = name
        self.layer_dims = tuple(int(d) for d in layer_dims)
        self.names = tuple(names)
        n = sum(self.layer_dims)
        if len(self.names) != n:
            raise PresentationError(f"{len(self.names)} basis names but layers sum to {n}")
        if len(set(self.names)) != n:
            raise PresentationError("duplicate basis names")
        if any(d < 0 for d in self.layer_dims):
            raise PresentationError("negative layer dimension")
        self.dim = n
        self.degree = tuple(k + 1 for k, d in enumerate(self.layer_dims) for _ in range(d))
        self.offsets = tuple(sum(self.layer_dims[:k]) for k in range(len(self.layer_dims) + 1))
        table: list[list[dict]] = [[{} for _ in range(n)] for _ in range(n)]
        for (i, j), res in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise PresentationError(f"bracket index out of range: {(i, j)}")
            res = {k: c for k, c in res.items() if c != 0}
            if i == j:
                if res:
                    raise PresentationError(f"[{self.names[i]},{self.names[i]}] must vanish")
                continue
            prev = table[i][j]
            if prev and prev != res:
                raise PresentationError(f"conflicting values for [{self.names[i]},{self.names[j]}]")
            table[i][j] = dict(res)
            table[j][i] = {k: -c for k, c in res.items()}
        self._table = table
        if check:
            self.check_grading()
            self.check_jacobi()

    # basic structure

    @property
    def step(self) -> int:
        dims = list(self.layer_dims)
        while dims and dims[-1] == 0:
            dims.pop()
        return len(dims)

    @property
    def rank(self) -> int:
        return self.layer_dims[0] if self.layer_dims else 0

    def layer_indices(self, k: int) -> range:
        """Basis indices of layer k (1-based); empty beyond the top layer."""
        if k < 1 or k > len(self.layer_dims):
            return range(0)
        return range(self.offsets[k - 1], self.offsets[k])

    def layer_space(self, k: int) -> Subspace:
        return Subspace.span([self.unit(i) for i in self.layer_indices(k)], self.dim)

    def layers_from(self, k: int) -> Subspace:
        idx = [i for i in range(self.dim) if self.degree[i] >= k]
        return Subspace.span([self.unit(i) for i in idx], self.dim)

    def unit(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise LieError(f"unknown basis element {name!r}") from None

    def structure(self) -> dict[tuple[int, int], dict[int, object]]:
        """Nonzero brackets [e_i, e_j] for i < j."""
        return {
            (i, j): dict(self._table[i][j])
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
            if self._table[i][j]
        }

    def basis_bracket(self, i: int, j: int) -> Vector:
        out = list(zero_vector(self.dim))
        for k, c in self._table[i][j].items():
            out[k] = c
        return tuple(out)

    def bracket(self, v: Sequence, w: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        nw = [(j, b) for j, b in enumerate(w) if b != 0]
        for i, a in enumerate(v):
            if a == 0:
                continue
            row = self._table[i]
            for j, b in nw:
                for k, c in row[j].items():
                    out[k] = out[k] + a * b * c
        return tuple(out)

    def ad(self, v: Sequence, w: Sequence, power: int = 1) -> Vector:
        for _ in range(power):
            w = self.bracket(v, w)
        return tuple(w)

    def ad_matrix(self, v: Sequence) -> list[list]:
        cols = [self.bracket(v, self.unit(j)) for j in range(self.dim)]
        return transpose(cols)

    def vector(self, coeffs: Mapping[str, object]) -> Vector:
        out = list(zero_vector(self.dim))
        for name, c in coeffs.items():
            out[self.index(name)] = as_vector([c])[0]
        return tuple(out)

    def layer_of(self, v: Sequence) -> int | None:
        """The single layer v lives in, or None if v is zero or mixed."""
        ks = {self.degree[i] for i, x in enumerate(v) if x != 0}
        return ks.pop() if len(ks) == 1 else None

    def format_vector(self, v: Sequence) -> str:
        parts = []
        for i, c in enumerate(v):
            if c == 0:
                continue
            if c == 1:
                parts.append(self.names[i])
            elif c == -1:
                parts.append(f"-{self.names[i]}")
            else:
                parts.append(f"{c}*{self.names[i]}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    # checks

    def check_grading(self) -> None:
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                target = self.degree[i] + self.degree[j]
                for k in self._table[i][j]:
                    if self.degree[k] != target:
                        raise GradingViolation(self.names[i], self.names[j])

    def jacobi_residual(self, i: int, j: int, k: int) -> Vector:
        ei, ej, ek = self.unit(i), self.unit(j), self.unit(k)
        a = self.bracket(ei, self.basis_bracket(j, k))
        b = self.bracket(ej, self.basis_bracket(k, i))
        c = self.bracket(ek, self.basis_bracket(i, j))
        return tuple(x + y + z for x, y, z in zip(a, b, c))

    def check_jacobi(self) -> None:
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if self.degree[i] + self.degree[j] + self.degree[k] > len(self.layer_dims):
                        continue
                    r = self.jacobi_residual(i, j, k)
                    if not is_zero(r):
                        raise JacobiViolation((self.names[i], self.names[j], self.names[k]), r)

    def stratification_defect(self) -> int | None:
        """First k with V_{k+1} != [V_1, V_k], or None when stratified."""
        if self.step == 0:
            return None
        if any(d == 0 for d in self.layer_dims[: self.step]):
            return 0
        v1 = list(self.layer_indices(1))
        for k in range(1, self.step):
            got = Subspace.span(
                [self.basis_bracket(a, b) for a in v1 for b in self.layer_indices(k)], self.dim
            )
            if got.dim != self.layer_dims[k]:
                return k
        return None

    @property
    def is_stratified(self) -> bool:
        return self.stratification_defect() is None

    def require_stratified(self) -> None:
        k = self.stratification_defect()
        if k is not None:
            raise NotStratified(f"{self.name}: V{k + 1} is not [V1,V{k}]")

    # equality is on presentations

    def _key(self):
        return (self.layer_dims, self.names, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.structure().items())))

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, layers={self.layer_dims})"


# subspaces attached to an algebra


def bracket_spaces(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    return Subspace.span([g.bracket(x, y) for x in a.basis for y in b.basis], g.dim)


def full_space(g: LieAlgebra) -> Subspace:
    return Subspace.full(g.dim)


def centralizer(g: LieAlgebra, s: Subspace, within: Subspace | None = None) -> Subspace:
    """{v in within : [v, s] = 0}."""
    within = within if within is not None else full_space(g)
    if not within.basis:
        return within
    rows = []
    for y in s.basis:
        cols = [g.bracket(x, y) for x in within.basis]
        rows.extend(transpose(cols))
    if not rows:
        return within
    coeffs = nullspace(rows, within.dim)
    return Subspace.span(
        [tuple(sum((c * x for c, x in zip(cf, col)), Fraction(0)) for col in zip(*within.basis)) for cf in coeffs],
        g.dim,
    )


def center_layers(g: LieAlgebra) -> list[Subspace]:
    """The center intersected with each layer, computed layer by layer."""
    full = full_space(g)
    return [centralizer(g, full, g.layer_space(k)) for k in range(1, len(g.layer_dims) + 1)]


def center(g: LieAlgebra) -> Subspace:
    out = Subspace.zero(g.dim)
    for z in center_layers(g):
        out = out + z
    return out


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    """g = g^1 ⊇ g^2 ⊇ ... down to the first zero term (excluded)."""
    series = [full_space(g)]
    while True:
        nxt = bracket_spaces(g, full_space(g), series[-1])
        if nxt.dim == 0:
            return series
        series.append(nxt)


def derived(g: LieAlgebra) -> Subspace:
    return bracket_spaces(g, full_space(g), full_space(g))


@dataclass(frozen=True)
class Trimmed:
    trimmed: bool
    center: Subspace
    layer_dims: tuple[int, ...]

    def __bool__(self):
        return self.trimmed


def is_trimmed(g: LieAlgebra) -> Trimmed:
    """True when the center is exactly the top layer and that layer is a line."""
    layers = center_layers(g)
    dims = tuple(z.dim for z in layers)
    s = g.step
    ok = s >= 1 and g.layer_dims[s - 1] == 1 and dims[s - 1] == 1 and sum(dims) == 1
    return Trimmed(ok, center(g), dims)


def homogeneous_parts(g: LieAlgebra, s: Subspace) -> list[Subspace]:
    return [s & g.layer_space(k) for k in range(1, len(g.layer_dims) + 1)]


def is_homogeneous(g: LieAlgebra, s: Subspace) -> bool:
    return sum(p.dim for p in homogeneous_parts(g, s)) == s.dim


def is_subalgebra(g: LieAlgebra, s: Subspace) -> bool:
    return all(s.contains(g.bracket(a, b)) for a in s.basis for b in s.basis)


def is_ideal(g: LieAlgebra, s: Subspace) -> bool:
    return all(s.contains(g.bracket(g.unit(i), b)) for i in range(g.dim) for b in s.basis)


def is_hom_ideal(g: LieAlgebra, s: Subspace) -> bool:
    return is_homogeneous(g, s) and is_ideal(g, s)


def _close(g: LieAlgebra, start: Subspace, left: Sequence[Vector]) -> Subspace:
    s = start
    frontier = list(s.basis)
    while frontier:
        new = []
        for y in frontier:
            for x in left:
                w = g.bracket(x, y)
                if not s.contains(w):
                    s = s.extend([w])
                    new.append(w)
        frontier = new
    return s


def ideal_generated(g: LieAlgebra, vectors: Iterable[Sequence]) -> Subspace:
    start = Subspace.span(vectors, g.dim)
    return _close(g, start, [g.unit(i) for i in range(g.rank)] if g.is_stratified else [g.unit(i) for i in range(g.dim)])


def lie_generated(g: LieAlgebra, vectors: Iterable[Sequence]) -> Subspace:
    s = Subspace.span(vectors, g.dim)
    while True:
        t = s.extend(g.bracket(a, b) for a in s.basis for b in s.basis)
        if t.dim == s.dim:
            return s
        s = t


def ad_power_closure(g: LieAlgebra, x: Sequence, seed: Iterable[Sequence]) -> Subspace:
    """Smallest subspace containing ``seed`` and stable under ad_x."""
    return _close(g, Subspace.span(seed, g.dim), [tuple(x)])


# constructions


class Projection:
    """The quotient map g -> g/i in the complement-of-pivots coordinates."""

    def __init__(self, g: LieAlgebra, ideal: Subspace):
        self.source = g
        self.ideal = ideal
        self.keep = ideal.complement_indices()

    def __call__(self, v: Sequence) -> Vector:
        r = self.ideal.reduce(v)
        return tuple(r[i] for i in self.keep)

    def lift(self, w: Sequence) -> Vector:
        out = list(zero_vector(self.source.dim))
        for i, c in zip(self.keep, w):
            out[i] = c
        return tuple(out)

    def image(self, s: Subspace) -> Subspace:
        return Subspace.span([self(v) for v in s.basis], len(self.keep))

    def preimage(self, s: Subspace) -> Subspace:
        return self.ideal.extend(self.lift(v) for v in s.basis)


def quotient(g: LieAlgebra, ideal: Subspace, name: str | None = None, check: bool = True) -> tuple[LieAlgebra, Projection]:
    if check:
        if not is_homogeneous(g, ideal):
            raise NotHomogeneous("ideal is not homogeneous")
        if not is_ideal(g, ideal):
            raise NotAnIdeal("subspace is not an ideal")
    proj = Projection(g, ideal)
    keep = proj.keep
    pos = {old: new for new, old in enumerate(keep)}
    layers = [0] * len(g.layer_dims)
    for i in keep:
        layers[g.degree[i] - 1] += 1
    while layers and layers[-1] == 0:
        layers.pop()
    br = {}
    for a in keep:
        for b in keep:
            if a < b:
                img = proj(g.basis_bracket(a, b))
                res = {k: c for k, c in enumerate(img) if c != 0}
                if res:
                    br[(pos[a], pos[b])] = res
    h = LieAlgebra(name or f"{g.name}/i", layers, [g.names[i] for i in keep], br, check=False)
    return h, proj


def product(*algebras: LieAlgebra, name: str | None = None) -> LieAlgebra:
    """Direct product, laid out layer by layer; clashing names get a factor suffix."""
    if not algebras:
        return LieAlgebra(name or "0", (), (), {})
    depth = max(len(a.layer_dims) for a in algebras)
    counts: dict[str, int] = {}
    for a in algebras:
        for nm in a.names:
            counts[nm] = counts.get(nm, 0) + 1
    order = []  # (factor, old index)
    for k in range(1, depth + 1):
        for f, a in enumerate(algebras):
            order.extend((f, i) for i in a.layer_indices(k))
    pos = {key: n for n, key in enumerate(order)}
    names = [
        algebras[f].names[i] if counts[algebras[f].names[i]] == 1 else f"{algebras[f].names[i]}_{f + 1}"
        for f, i in order
    ]
    layers = [sum(a.layer_dims[k] if k < len(a.layer_dims) else 0 for a in algebras) for k in range(depth)]
    br = {}
    for f, a in enumerate(algebras):
        for (i, j), res in a.structure().items():
            br[(pos[(f, i)], pos[(f, j)])] = {pos[(f, k)]: c for k, c in res.items()}
    return LieAlgebra(name or " x ".join(a.name for a in algebras), layers, names, br, check=False)


def dilate(g: LieAlgebra, v: Sequence, t) -> Vector:
    return tuple(x * t ** g.degree[i] for i, x in enumerate(v))


def change_basis(g: LieAlgebra, new_basis: Sequence[Sequence], name: str | None = None, names: Sequence[str] | None = None) -> LieAlgebra:
    """The same algebra written in the basis whose i-th element is new_basis[i].

    The new basis must be graded (element i homogeneous of degree g.degree[i]).
    """
    b = [as_vector(v) for v in new_basis]
    for i, v in enumerate(b):
        if g.layer_of(v) != g.degree[i]:
            raise NotHomogeneous(f"new basis vector {i} is not in layer {g.degree[i]}")
    inv = inverse(transpose(b))
    br = {}
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            w = mat_vec(inv, g.bracket(b[i], b[j]))
            res = {k: c for k, c in enumerate(w) if c != 0}
            if res:
                br[(i, j)] = res
    return LieAlgebra(name or g.name, g.layer_dims, names or g.names, br, check=False)


def is_homomorphism(g: LieAlgebra, h: LieAlgebra, m: Sequence[Sequence]) -> bool:
    """m is the matrix (h.dim x g.dim) of a linear map g -> h; check it respects brackets."""
    img = [mat_vec(m, g.unit(i)) for i in range(g.dim)]
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = mat_vec(m, g.basis_bracket(i, j))
            if lhs != h.bracket(img[i], img[j]):
                return False
    return True


def extend_v1_map(g: LieAlgebra, h: LieAlgebra, v1_images: Sequence[Sequence]) -> list[list] | None:
    """Extend a map V1(g) -> V1(h) to a graded homomorphism g -> h.

    ``v1_images[i]`` is the image of the i-th V1 basis vector, in h coordinates.
    Returns the full matrix or None when no homomorphism extends it.
    """
    g.require_stratified()
    images: dict[int, Vector] = {}
    for i, w in zip(g.layer_indices(1), v1_images):
        images[i] = as_vector(w)
    if len(images) != g.rank:
        raise LieError("need one image per V1 basis vector")
    v1 = list(g.layer_indices(1))
    for k in range(2, g.step + 1):
        gens = []  # (bracket in g, image in h)
        for a in v1:
            for b in g.layer_indices(k - 1):
                gens.append((g.basis_bracket(a, b), h.bracket(images[a], images[b])))
        idx = list(g.layer_indices(k))
        # express each basis vector of V_k as a combination of the generating brackets
        mat = transpose([[src[i] for i in idx] for src, _ in gens])
        for t, i in enumerate(idx):
            target = [Fraction(1) if s == t else Fraction(0) for s in range(len(idx))]
            c = solve(mat, target, len(gens))
            if c is None:
                return None
            out = [Fraction(0)] * h.dim
            for cf, (_, im) in zip(c, gens):
                if cf != 0:
                    out = [x + cf * y for x, y in zip(out, im)]
            images[i] = tuple(out)
    m = transpose([images[i] for i in range(g.dim)])
    return m if is_homomorphism(g, h, m) else None


def is_isomorphism_matrix(g: LieAlgebra, h: LieAlgebra, m: Sequence[Sequence]) -> bool:
    if g.dim != h.dim or not is_homomorphism(g, h, m):
        return False
    try:
        inverse(m)
    except ValueError:
        return False
    return True


def trivial_algebra() -> LieAlgebra:
    return LieAlgebra("0", (), (), {})


__all__ = [
    "LieAlgebra", "LieError", "PresentationError", "JacobiViolation", "GradingViolation",
    "NotStratified", "NotAnIdeal", "NotHomogeneous", "Projection", "Trimmed",
    "bracket_spaces", "center", "center_layers", "centralizer", "lower_central_series",
    "derived", "is_trimmed", "is_homogeneous", "is_hom_ideal", "is_ideal", "is_subalgebra",
    "homogeneous_parts", "ideal_generated", "lie_generated", "ad_power_closure", "quotient",
    "product", "dilate", "change_basis", "is_homomorphism", "extend_v1_map",
    "is_isomorphism_matrix", "trivial_algebra"
]
