import itertools
import random
from fractions import Fraction

import pytest

from stableforms.exteralg import LinearMap, alt_form

PYTHAGOREAN = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (20, 21, 29)]


def random_invertible(rng: random.Random, n: int, span: int = 3) -> LinearMap:
    while True:
        g = LinearMap.from_rows([[rng.randint(-span, span) for _ in range(n)] for _ in range(n)])
        if g.det() != 0:
            return g


def rational_rotation(rng: random.Random, n: int, steps: int = 8) -> LinearMap:
    """Product of Givens rotations with Pythagorean cosines: exactly orthogonal."""
    g = LinearMap.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        a, b, c = PYTHAGOREAN[rng.randrange(len(PYTHAGOREAN))]
        co, si = Fraction(a, c), Fraction(b, c)
        rows = [[Fraction(1 if r == s else 0) for s in range(n)] for r in range(n)]
        rows[i][i], rows[i][j], rows[j][i], rows[j][j] = co, -si, si, co
        g = g.compose(LinearMap.from_rows(rows))
    return g


def random_three_form(rng: random.Random, dim: int, span: int = 3, nterms: int = 8):
    idxs = list(itertools.combinations(range(1, dim + 1), 3))
    picked = rng.sample(idxs, min(nterms, len(idxs)))
    return alt_form(dim, 3, {i: Fraction(rng.randint(-span, span)) for i in picked})


@pytest.fixture
def rng():
    return random.Random(20240817)
