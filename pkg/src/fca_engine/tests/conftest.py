import pytest

from fca_engine.classification import Side, make_classification, power
from fca_engine.concept_lattice import clg
from fca_engine.order_core import antichain, chain

K1_CXT = "B\n\n2\n2\n1\n2\na\nb\nX.\nXX\n"


@pytest.fixture
def k1():
    return make_classification(["1", "2"], ["a", "b"], [("1", "a"), ("2", "a"), ("2", "b")])


@pytest.fixture
def k2():
    # six concepts; {p,r} share no type
    return make_classification(
        ["p", "q", "r"],
        ["u", "v", "w"],
        [("p", "u"), ("p", "v"), ("q", "v"), ("q", "w"), ("r", "w")],
    )


@pytest.fixture
def empty_context():
    return make_classification([], [], [])


@pytest.fixture
def power_xy():
    return power(["x", "y"], Side.INSTANCES)


@pytest.fixture
def chain2():
    return chain(2)


@pytest.fixture
def antichain2():
    return antichain(["a", "b"])


@pytest.fixture
def k1_lattice(k1):
    return clg(k1)


@pytest.fixture
def k1_cxt():
    return K1_CXT


@pytest.fixture
def k1_file(tmp_path):
    path = tmp_path / "K1.cxt"
    path.write_text(K1_CXT)
    return path
