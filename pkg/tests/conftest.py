import numpy as np
import pytest

from fourierlab import TrigPolynomial, ValueSpace


def philox(*key) -> np.random.Generator:
    padded = (tuple(key) + (0,))[:2]
    return np.random.Generator(np.random.Philox(key=np.array(padded, dtype=np.uint64)))


def random_poly(rng, d=1, N=8, space=None, scalar=False) -> TrigPolynomial:
    if space is None:
        space = ValueSpace(2.0, 1 if scalar else 3)
    if d == 1:
        idxs = range(-N, N + 1)
    else:
        idxs = [(i, j) for i in range(-N, N + 1) for j in range(-N, N + 1)]
    coeffs = {n: space.point(rng.standard_normal(space.m)
                             + 1j * rng.standard_normal(space.m)) for n in idxs}
    return TrigPolynomial(space, d, coeffs)


@pytest.fixture
def rng():
    return philox(2024, 7)
