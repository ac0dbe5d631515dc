import random
from fractions import Fraction

import pytest

from gnoe import (
    Extension,
    FrobeniusMap,
    GaloisField,
    IdentityMap,
    IntegerModRing,
    MatrixRing,
    PolynomialRing,
    QQ,
    SubstitutionMap,
    cayley_tower,
)


@pytest.fixture
def rng():
    return random.Random(20260809)


@pytest.fixture(scope="session")
def f4():
    return GaloisField(2, 2)


@pytest.fixture(scope="session")
def f8():
    return GaloisField(2, 3)


@pytest.fixture(scope="session")
def m2f2():
    return MatrixRing(IntegerModRing(2))


@pytest.fixture(scope="session")
def poly_f2():
    return PolynomialRing(IntegerModRing(2))


@pytest.fixture(scope="session")
def f4_frobenius_ext(f4):
    return Extension(f4, FrobeniusMap(f4, 1))


@pytest.fixture(scope="session")
def subst_ext(poly_f2):
    return Extension(poly_f2, SubstitutionMap(poly_f2, 2))


@pytest.fixture(scope="session")
def tower_q():
    return cayley_tower(QQ, [Fraction(-1)] * 3)


@pytest.fixture(scope="session")
def quaternions(tower_q):
    return tower_q[2].algebra


@pytest.fixture(scope="session")
def octonions(tower_q):
    return tower_q[3].algebra


@pytest.fixture(scope="session")
def ordinary_f2_ext():
    ring = IntegerModRing(2)
    return Extension(ring, IdentityMap(ring))
