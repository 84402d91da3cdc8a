import random
from fractions import Fraction

from semicarnot.lie import LieAlgebra, change_basis, ideal_generated
from semicarnot.linalg import rank


def random_homogeneous(g: LieAlgebra, rng: random.Random, layer: int | None = None):
    k = layer if layer is not None else rng.randint(1, g.step)
    v = [Fraction(0)] * g.dim
    while all(c == 0 for c in v):
        for i in g.layer_indices(k):
            v[i] = Fraction(rng.randint(-3, 3))
    return tuple(v)


def random_ideal(g: LieAlgebra, rng: random.Random):
    gens = [random_homogeneous(g, rng) for _ in range(rng.randint(1, 2))]
    return ideal_generated(g, gens)


def random_graded_isomorph(g: LieAlgebra, rng: random.Random) -> LieAlgebra:
    """Apply a random invertible block-diagonal change of basis."""
    basis = [None] * g.dim
    for k in range(1, g.step + 1):
        idx = list(g.layer_indices(k))
        while True:
            block = [[Fraction(rng.randint(-2, 2)) for _ in idx] for _ in idx]
            if rank(block) == len(idx):
                break
        for r, i in enumerate(idx):
            v = [Fraction(0)] * g.dim
            for c, j in enumerate(idx):
                v[j] = block[r][c]
            basis[i] = tuple(v)
    return change_basis(g, basis, name=f"{g.name}'")
