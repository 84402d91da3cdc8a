"""Hall bases and free nilpotent Lie algebras."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lie import LieAlgebra, lie_generated, ad_power_closure
from .linalg import Subspace


@dataclass(frozen=True)
class HallElement:
    index: int
    degree: int
    left: int | None = None  # index of Y in [Y, Z]
    right: int | None = None  # index of Z
    generator: int | None = None


def hall_basis(rank: int, step: int) -> list[HallElement]:
    """Hall basis elements of degree <= step, in the basis order (which refines degree).

    [Y, Z] is kept when Y < Z and, if Z = [U, V], Y >= U.
    """
    if rank < 1 or step < 1:
        raise ValueError("rank and step must be positive")
    elems = [HallElement(i, 1, generator=i) for i in range(rank)]
    by_degree = {1: list(range(rank))}
    for k in range(2, step + 1):
        level = []
        for dy in range(1, k // 2 + 1):
            dz = k - dy
            for y in by_degree[dy]:
                for z in by_degree[dz]:
                    if not y < z:
                        continue
                    ez = elems[z]
                    if ez.generator is None and y < ez.left:
                        continue
                    e = HallElement(len(elems), k, y, z)
                    elems.append(e)
                    level.append(e.index)
        by_degree[k] = level
    return elems


def hall_name(elems: list[HallElement], i: int) -> str:
    e = elems[i]
    if e.generator is not None:
        return f"X{e.generator + 1}"
    return f"[{hall_name(elems, e.left)},{hall_name(elems, e.right)}]"


def witt_dimension(rank: int, k: int) -> int:
    """Dimension of the degree-k part of the free Lie algebra, by the Moebius formula."""
    total = 0
    for d in range(1, k + 1):
        if k % d == 0:
            total += _moebius(d) * rank ** (k // d)
    return total // k


def _moebius(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


class _Rewriter:
    def __init__(self, elems: list[HallElement], step: int):
        self.elems = elems
        self.step = step
        self.lookup = {(e.left, e.right): e.index for e in elems if e.generator is None}

    def br(self, a: int, b: int) -> dict[int, Fraction]:
        return self._br(a, b)

    @lru_cache(maxsize=None)
    def _br_cached(self, a: int, b: int) -> tuple:
        return tuple(sorted(self._compute(a, b).items()))

    def _br(self, a: int, b: int) -> dict[int, Fraction]:
        return dict(self._br_cached(a, b))

    def _compute(self, a: int, b: int) -> dict[int, Fraction]:
        ea, eb = self.elems[a], self.elems[b]
        if a == b or ea.degree + eb.degree > self.step:
            return {}
        if a > b:
            return {k: -c for k, c in self._br(b, a).items()}
        key = (a, b)
        if key in self.lookup:
            return {self.lookup[key]: Fraction(1)}
        # b = [u, v] with a < u: [a,[u,v]] = [[a,u],v] + [u,[a,v]]
        u, v = eb.left, eb.right
        out: dict[int, Fraction] = {}
        for w, c in self._br(a, u).items():
            for k, d in self._br(w, v).items():
                out[k] = out.get(k, 0) + c * d
        for w, c in self._br(a, v).items():
            for k, d in self._br(u, w).items():
                out[k] = out.get(k, 0) + c * d
        return {k: c for k, c in out.items() if c != 0}


def free_nilpotent(rank: int, step: int) -> LieAlgebra:
    elems = hall_basis(rank, step)
    rw = _Rewriter(elems, step)
    n = len(elems)
    brackets = {}
    for a in range(n):
        for b in range(a + 1, n):
            res = rw.br(a, b)
            if res:
                brackets[(a, b)] = res
    layers = [sum(1 for e in elems if e.degree == k) for k in range(1, step + 1)]
    names = [hall_name(elems, i) for i in range(n)]
    return LieAlgebra(f"free({rank},{step})", layers, names, brackets, check=False)


def hall_closure_subalgebra(g: LieAlgebra, x, boundary: Subspace) -> Subspace:
    """Smallest subalgebra containing the boundary and all ad_x^k of it."""
    return lie_generated(g, ad_power_closure(g, x, boundary.basis).basis)
