import pytest

from quiverfilt import GF, QQ, Matrix, Rep, kronecker, linear_quiver, quasi_simple


@pytest.fixture(scope="session")
def k2():
    return kronecker(2)


@pytest.fixture(scope="session")
def k3():
    return kronecker(3)


@pytest.fixture(scope="session")
def k4():
    return kronecker(4)


@pytest.fixture(scope="session")
def a3():
    return linear_quiver(3)


@pytest.fixture
def r0():
    return quasi_simple(QQ, QQ.of(0))


@pytest.fixture
def r1():
    return quasi_simple(QQ, QQ.of(1))


@pytest.fixture
def rinf():
    return quasi_simple(QQ, "inf")


def make_x11(quiver, field, scalars):
    """(1,1)-dimensional rep on an r-arrow Kronecker quiver from arrow scalars."""
    maps = {
        arrow[0]: Matrix.from_rows(field, [[field.of(c)]])
        for arrow, c in zip(quiver.arrows, scalars)
    }
    return Rep(quiver, field, {1: 1, 2: 1}, maps)


@pytest.fixture(scope="session")
def fields():
    return [QQ, GF(5)]
