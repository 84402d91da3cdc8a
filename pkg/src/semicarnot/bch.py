"""Truncated Baker-Campbell-Hausdorff products and semigroup sampling."""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .engel import flow_segment
from .lie import LieAlgebra
from .linalg import Vector, as_vector, dot, format_rational


class UnsupportedStep(ValueError):
    pass


def bch_product(g: LieAlgebra, a: Sequence, b: Sequence) -> Vector:
    """log(exp a exp b), exact for step at most 4."""
    if g.step > 4:
        raise UnsupportedStep(f"BCH truncation is only exact up to step 4, got step {g.step}")
    a, b = as_vector(a), as_vector(b)
    ab = g.bracket(a, b)
    a_ab = g.bracket(a, ab)
    b_ba = g.bracket(b, tuple(-c for c in ab))
    b_a_ab = g.bracket(b, a_ab)
    return tuple(
        x + y + p / 2 + (q + r) / 12 - s / 24
        for x, y, p, q, r, s in zip(a, b, ab, a_ab, b_ba, b_a_ab)
    )


def bch_word(g: LieAlgebra, factors: Sequence[Sequence]) -> Vector:
    out = tuple(Fraction(0) for _ in range(g.dim))
    for f in factors:
        out = bch_product(g, out, f)
    return out


def group_inverse(v: Sequence) -> Vector:
    return tuple(-c for c in as_vector(v))


@dataclass
class SampleRun:
    algebra: str
    lam: tuple[Fraction, ...]
    seed: int
    word_length: int
    count: int
    points: list[Vector]
    words: list[list[Vector]]
    layer_dims: tuple[int, ...]
    observed: list[Fraction] | None = None

    def summary(self) -> dict:
        out = {}
        start = 0
        for k, d in enumerate(self.layer_dims, start=1):
            coords = [c for p in self.points for c in p[start : start + d]]
            start += d
            out[f"V{k}"] = [format_rational(min(coords)), format_rational(max(coords))] if coords else None
        if self.observed is not None:
            obs = self.observed
            out["observed"] = {
                "min": format_rational(min(obs)),
                "max": format_rational(max(obs)),
                "negative": sum(1 for o in obs if o < 0),
                "zero": sum(1 for o in obs if o == 0),
                "positive": sum(1 for o in obs if o > 0),
            }
        return out

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": "sample_run",
            "algebra": self.algebra,
            "lambda": [format_rational(c) for c in self.lam],
            "seed": self.seed,
            "word_length": self.word_length,
            "count": self.count,
            "points": [[format_rational(c) for c in p] for p in self.points],
            "summary": self.summary(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _sample_v1(rng: random.Random, rank: int, bound: int, density: int) -> list[Fraction]:
    top = bound * density
    return [Fraction(rng.randint(-top, top), density) for _ in range(rank)]


def _reflect(w: list[Fraction], lam: Sequence[Fraction]) -> list[Fraction]:
    """Reflect across the boundary hyperplane when lam(w) < 0."""
    lw = dot(lam, w)
    if lw >= 0:
        return w
    f = 2 * lw / dot(lam, lam)
    return [x - f * l for x, l in zip(w, lam)]


def sample_word(g: LieAlgebra, lam: Sequence, seed: int, index: int, word_length: int, bound: int = 2, density: int = 4) -> list[Vector]:
    """The index-th random word; it depends only on (seed, index)."""
    rng = random.Random(f"{seed}:{index}")
    lam = as_vector(lam)
    pad = (Fraction(0),) * (g.dim - g.rank)
    return [tuple(_reflect(_sample_v1(rng, g.rank, bound, density), lam)) + pad for _ in range(word_length)]


def sample_semigroup(
    g: LieAlgebra,
    lam: Sequence,
    word_length: int,
    count: int,
    seed: int = 0,
    bound: int = 2,
    density: int = 4,
    workers: int = 1,
    observe: Callable[[Vector], Fraction] | None = None,
) -> SampleRun:
    """Exact products exp(w1)...exp(wk) with every w_i in the half-space lam >= 0."""
    lam = as_vector(lam)
    if len(lam) != g.rank or all(c == 0 for c in lam):
        raise ValueError("lambda must be a nonzero covector on V1")
    if word_length < 1 or count < 0:
        raise ValueError("word_length must be positive and count non-negative")

    def one(i: int):
        w = sample_word(g, lam, seed, i, word_length, bound, density)
        return w, bch_word(g, w)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(count)))
    else:
        results = [one(i) for i in range(count)]
    words = [w for w, _ in results]
    points = [p for _, p in results]
    observed = [observe(p) for p in points] if observe else None
    return SampleRun(g.name, lam, seed, word_length, count, points, words, g.layer_dims, observed)


def check_monotone_coordinate(n: int, trajectory: Sequence[tuple[Sequence, object]], start: Sequence | None = None) -> bool:
    """Along a piecewise flow in the half-space X* >= 0 of E_n, the last model
    coordinate has derivative a * sum x_i^2 / 2 on each segment, so it never decreases.

    ``trajectory`` is a list of (V1 vector in the X, Y1..Yn basis, time >= 0).
    The derivative identity is checked on the exact cubic in t for each segment.
    """
    dim = 2 * n + 2
    p = tuple(as_vector(start)) if start is not None else (Fraction(0),) * dim
    for v, t in trajectory:
        v = as_vector(v)
        t = Fraction(t)
        if len(v) != n + 1:
            raise ValueError("segment directions must be V1 vectors")
        a, b = v[0], v[1:]
        if a < 0 or t < 0:
            raise ValueError("segment leaves the half-space X* >= 0")
        full = tuple(v) + (Fraction(0),) * (n + 1)
        # last coordinate along the segment is a cubic c0 + c1 s + c2 s^2 + c3 s^3
        samples = [flow_segment(n, p, full, s)[-1] for s in (0, 1, 2, 3)]
        coeffs = _interpolate_cubic(samples)
        x0 = p[:n]
        expected = [
            a * sum(x * x for x in x0) / 2,
            a * sum(x * y for x, y in zip(x0, b)),
            a * sum(y * y for y in b) / 2,
        ]
        deriv = [coeffs[1], 2 * coeffs[2], 3 * coeffs[3]]
        if deriv != expected:
            return False
        end = flow_segment(n, p, full, t)
        if end[-1] < p[-1]:
            return False
        p = end
    return True


def _interpolate_cubic(vals: Sequence[Fraction]) -> list[Fraction]:
    # values at s = 0, 1, 2, 3 -> monomial coefficients, via finite differences
    v0, v1, v2, v3 = vals
    d1, d2, d3 = v1 - v0, v2 - 2 * v1 + v0, v3 - 3 * v2 + 3 * v1 - v0
    c3 = d3 / 6
    c2 = (d2 - 6 * c3) / 2
    c1 = d1 - c2 - c3
    return [v0, c1, c2, c3]
