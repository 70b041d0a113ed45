import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fca_engine.classification import derivation_connection, unit_counit
from fca_engine.errors import BoundaryMismatch, NotCoreflection, NotPoset, NotReflection, SquareNotCommuting
from fca_engine.galois import (
    compose_galois,
    connection_mismatch,
    from_function,
    from_relation,
    identity_connection,
    inverse_connection,
    make_galois,
    polar_factorize,
)
from fca_engine.generators import random_context, random_infomorphism
from fca_engine.order_core import chain, make_preorder
from fca_engine.quartet import (
    axis_morphism,
    check_quartet,
    compose_quartets_horizontally,
    factor_coreflection_quartet,
    factor_reflection_quartet,
)


@pytest.fixture
def k1_connection():
    return from_relation(["1", "2"], ["a", "b"], [[True, False], [True, True]])


def identity_quartet(g):
    return check_quartet(g, g, identity_connection(g.source), identity_connection(g.target))


def test_identity_square_commutes(k1_connection):
    q = identity_quartet(k1_connection)
    assert q.g1 is k1_connection


def test_non_commuting_square(chain2):
    g = identity_connection(chain2)
    constant = make_galois(chain2, chain2, [0, 0], [1, 1])
    with pytest.raises(SquareNotCommuting) as e:
        check_quartet(g, g, g, constant)
    assert e.value.witness["equation"] == "left(g1).left(b) = left(a).left(g2)"
    assert e.value.witness["element"] == "1"


def test_boundaries_are_checked(chain2):
    small, large = identity_connection(chain2), identity_connection(chain(3))
    with pytest.raises(BoundaryMismatch):
        check_quartet(small, large, small, small)


def test_horizontal_pasting(k1_connection):
    first = identity_quartet(k1_connection)
    second = identity_quartet(identity_connection(k1_connection.target))
    pasted = compose_quartets_horizontally(first, second)
    assert connection_mismatch(pasted.g1, k1_connection) is None
    assert connection_mismatch(pasted.b, identity_connection(k1_connection.target)) is None


def test_pasting_needs_a_shared_edge(chain2):
    g = identity_connection(chain2)
    constant = make_galois(chain2, chain2, [0, 0], [1, 1])
    quartet = check_quartet(g, g, g, g)
    other = check_quartet(constant, constant, constant, constant)
    with pytest.raises(BoundaryMismatch):
        compose_quartets_horizontally(quartet, other)


def test_reflection_factor_of_identity_quartet(k1_connection):
    refl = polar_factorize(k1_connection).refl
    c = factor_reflection_quartet(identity_quartet(refl))
    assert len(c.source) == len(refl.source)
    assert connection_mismatch(c, identity_connection(c.source)) is None


def test_reflection_factor_needs_a_reflection(k1_connection):
    with pytest.raises(NotReflection):
        factor_reflection_quartet(identity_quartet(k1_connection))


def test_coreflection_factor_of_identity_quartet(k1_connection):
    corefl = polar_factorize(k1_connection).corefl
    d = factor_coreflection_quartet(identity_quartet(corefl))
    assert connection_mismatch(d, identity_connection(d.source)) is None


def test_coreflection_factor_needs_a_coreflection(k1_connection):
    with pytest.raises(NotCoreflection):
        factor_coreflection_quartet(identity_quartet(polar_factorize(k1_connection).refl))


def test_factoring_requires_posets():
    loop = make_preorder(["a", "b"], [("a", "b"), ("b", "a")], close=True)
    with pytest.raises(NotPoset):
        factor_reflection_quartet(identity_quartet(identity_connection(loop)))


def test_axis_morphism_of_identity_quartet(k1_connection):
    split = axis_morphism(identity_quartet(k1_connection))
    h = split.axis_map
    assert connection_mismatch(h, identity_connection(h.source)) is None
    upper, lower = split.refl_quartet, split.corefl_quartet
    assert connection_mismatch(compose_galois(upper.g1, lower.g1), k1_connection) is None


def derivation_quartet(f):
    return check_quartet(
        derivation_connection(f.target),
        derivation_connection(f.source),
        from_function(f.inst_function()),
        inverse_connection(f.typ_function()),
    )


def test_infomorphism_gives_a_derivation_quartet(k1):
    eta, _ = unit_counit(k1)
    q = derivation_quartet(eta)
    assert len(q.g1.source) == 4


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_random_infomorphisms_give_derivation_quartets(seed):
    rng = np.random.default_rng(seed)
    f = random_infomorphism(rng, random_context(rng, 3), 3)
    derivation_quartet(f)
