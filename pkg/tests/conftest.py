import random
from fractions import Fraction

import pytest

from jordanalg.catalog import catalog_order, load_catalog, resolve_all
from jordanalg.ratlin import Matrix, invert


@pytest.fixture(scope="session")
def entries():
    return catalog_order(load_catalog())


@pytest.fixture(scope="session")
def env(entries):
    return resolve_all(entries)


def random_invertible_matrix(n, rng, dense=False):
    """Random invertible rational matrix.

    Default form: permutation with +-1/2-ish scaling composed with two
    transvections (invertible by construction, keeps tables manageable).
    Dense form: uniform small integer entries, retried until invertible.
    """
    if dense:
        while True:
            m = Matrix.from_rows(
                [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
            )
            if invert(m) is not None:
                return m
    rows = [[Fraction(0)] * n for _ in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    for i, p in enumerate(perm):
        rows[i][p] = Fraction(rng.choice([1, -1, 2, 1, 1]))
    if n >= 2:
        for _ in range(2):
            i, j = rng.sample(range(n), 2)
            c = Fraction(rng.choice([1, -1, 2, -2, 1]), rng.choice([1, 2]))
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return Matrix.from_rows(rows)


def seeded_rng(tag: str) -> random.Random:
    return random.Random(f"jordanalg:{tag}")
