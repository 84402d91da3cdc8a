"""Exact linear algebra over the rationals.

Every routine only uses field operations and zero tests on the entries, so the
same code also runs over other exact fields (the parametric search feeds it
rational functions in one variable).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple
Matrix = list


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip()
    if not s or any(c in s for c in ".eE "):
        raise ValueError(f"not a rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _coerce(x):
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return parse_rational(x)
    return x


def as_vector(v: Iterable) -> Vector:
    return tuple(_coerce(x) for x in v)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def is_zero(v: Sequence) -> bool:
    return not any(x != 0 for x in v)


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def dot(u: Sequence, v: Sequence):
    total = Fraction(0)
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            total = total + a * b
    return total


def combine(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    out = list(zero_vector(n))
    for c, v in zip(coeffs, vectors):
        if c == 0:
            continue
        for i, x in enumerate(v):
            if x != 0:
                out[i] = out[i] + c * x
    return tuple(out)


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b)) if b else []
    return [[dot(row, col) for col in cols] for row in a]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def identity(n: int) -> list[list]:
    return [list(unit_vector(n, i)) for i in range(n)]


def rref(rows: Iterable[Sequence], ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(_coerce(x) for x in r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv if x != 0 else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b if b != 0 else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of {x : m x = 0}, one vector per free column."""
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    red, piv = rref(m, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, piv):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(m: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> Vector | None:
    """One solution of m x = b, or None when inconsistent."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    aug = [list(row) + [rhs] for row, rhs in zip(m, b)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> list[list]:
    n = len(m)
    aug = [list(_coerce(x) for x in row) + list(unit_vector(n, i)) for i, row in enumerate(m)]
    red, piv = rref(aug, n)
    if piv != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient stored by its canonical RREF basis."""

    ambient: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int) -> "Subspace":
        rows = [as_vector(v) for v in vectors]
        for v in rows:
            if len(v) != ambient:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient}")
        red, piv = rref(rows, ambient)
        return cls(ambient, tuple(tuple(r) for r in red), tuple(piv))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, (), ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls.span([unit_vector(ambient, i) for i in range(ambient)], ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return is_zero(self.reduce(v))

    __contains__ = contains

    def reduce(self, v: Sequence) -> Vector:
        """Normal form of v modulo the subspace (zero on the pivot columns)."""
        w = list(as_vector(v))
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c != 0:
                w = [a - c * b if b != 0 else a for a, b in zip(w, row)]
        return tuple(w)

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of v in the RREF basis; raises if v is not in the span."""
        v = as_vector(v)
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return tuple(v[p] for p in self.pivots)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def extend(self, vectors: Iterable[Sequence]) -> "Subspace":
        return Subspace.span(self.basis + tuple(as_vector(v) for v in vectors), self.ambient)

    def complement_indices(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(i for i in range(self.ambient) if i not in piv)

    def annihilator(self) -> "Subspace":
        """Covectors vanishing on the subspace."""
        if not self.basis:
            return Subspace.full(self.ambient)
        return Subspace.span(nullspace(self.basis, self.ambient), self.ambient)


def span(vectors: Iterable[Sequence], ambient: int) -> Subspace:
    return Subspace.span(vectors, ambient)


def canonicalize(vectors: Iterable[Sequence], ambient: int) -> Subspace:
    return Subspace.span(vectors, ambient)


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def member(v: Sequence, a: Subspace) -> bool:
    return a.contains(v)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise ValueError("ambient dimensions differ")
    if not a.basis or not b.basis:
        return Subspace.zero(a.ambient)
    # x in a ∩ b  iff  x = sum c_i a_i with x annihilated by ann(b)
    ann = b.annihilator().basis
    if not ann:
        return a
    m = [[dot(f, ai) for ai in a.basis] for f in ann]
    coeffs = nullspace(m, a.dim)
    return Subspace.span([combine(c, a.basis, a.ambient) for c in coeffs], a.ambient)


def quotient_coords(v: Sequence, ideal: Subspace, complement: Sequence[Sequence]) -> Vector:
    """Coordinates of v modulo ``ideal`` along ``complement``.

    ``complement`` together with the ideal basis must be a basis of the ambient space.
    """
    n = ideal.ambient
    cols = [as_vector(c) for c in complement] + list(ideal.basis)
    if len(cols) != n or rank(cols) != n:
        raise ValueError("complement and ideal do not form a basis")
    x = solve(transpose(cols), as_vector(v), n)
    assert x is not None
    return x[: len(complement)]


# Quadratic forms


@dataclass(frozen=True)
class QForm:
    """Symmetric bilinear form q(x) = x^T M x."""

    matrix: tuple[tuple, ...]

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> "QForm":
        m = tuple(as_vector(r) for r in rows)
        n = len(m)
        for i in range(n):
            if len(m[i]) != n:
                raise ValueError("form matrix must be square")
            for j in range(i):
                if m[i][j] != m[j][i]:
                    raise ValueError("form matrix must be symmetric")
        return cls(m)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence):
        return dot(x, mat_vec(self.matrix, x))

    def restrict(self, basis: Sequence[Sequence]) -> "QForm":
        b = [as_vector(v) for v in basis]
        mb = [mat_vec(self.matrix, v) for v in b]
        return QForm(tuple(tuple(dot(u, w) for w in mb) for u in b))

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.matrix)


def lagrange_diagonal(m: Sequence[Sequence]) -> list:
    """Diagonal entries of a congruence diagonalization, by symmetric elimination."""
    a = [list(r) for r in m]
    diag = []
    while a:
        n = len(a)
        k = next((i for i in range(n) if a[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                diag.extend([a[0][0] * 0] * n)
                break
            i, j = pair
            # x_i -> x_i + x_j makes the (i, i) entry 2 a_ij
            for r in range(n):
                a[r][i] = a[r][i] + a[r][j]
            for c in range(n):
                a[i][c] = a[i][c] + a[j][c]
            k = i
        p = a[k][k]
        diag.append(p)
        rest = [r for r in range(n) if r != k]
        a = [[a[r][c] - a[r][k] * a[k][c] / p for c in rest] for r in rest]
    return diag


def signature(q: QForm | Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) index of inertia."""
    m = q.matrix if isinstance(q, QForm) else q
    d = lagrange_diagonal(m)
    pos = sum(1 for x in d if x > 0)
    neg = sum(1 for x in d if x < 0)
    return pos, neg, len(d) - pos - neg


def radical(q: QForm) -> Subspace:
    n = q.dim
    if n == 0:
        return Subspace.zero(0)
    return Subspace.span(nullspace(q.matrix, n), n)


def is_definite(q: QForm) -> bool:
    pos, neg, zero = signature(q)
    return zero == 0 and (pos == 0 or neg == 0) and q.dim > 0


def is_semidefinite(q: QForm) -> bool:
    pos, neg, _ = signature(q)
    return pos == 0 or neg == 0
