"""Quartets: commuting squares of Galois connections.

A quartet ``<a, b> : g1 => g2`` has vertical edges ``g1 : A1 <-> B1`` and
``g2 : A2 <-> B2`` and horizontal edges ``a : A1 <-> A2`` and ``b : B1 <-> B2``
such that ``g1 o b = a o g2``.
"""

import logging
from dataclasses import dataclass

from fca_engine.errors import BoundaryMismatch, NotCoreflection, NotPoset, NotReflection, SquareNotCommuting, ensure
from fca_engine.galois import (
    GaloisConnection,
    classify_connection,
    compose_galois,
    connection_mismatch,
    diagonal_fill,
    kernel_factorize,
    polar_factorize,
)
from fca_engine.order_core import Preorder

logger = logging.getLogger(__name__)

_EQUATIONS = {
    "left": "left(g1).left(b) = left(a).left(g2)",
    "right": "right(g2).right(a) = right(b).right(g1)",
}


@dataclass(frozen=True, eq=False)
class Quartet:
    g1: GaloisConnection
    g2: GaloisConnection
    a: GaloisConnection
    b: GaloisConnection


def check_quartet(g1: GaloisConnection, g2: GaloisConnection, a: GaloisConnection, b: GaloisConnection) -> Quartet:
    for name, ok in (
        ("source of g1 / source of a", g1.source == a.source),
        ("source of g2 / target of a", g2.source == a.target),
        ("target of g1 / source of b", g1.target == b.source),
        ("target of g2 / target of b", g2.target == b.target),
    ):
        if not ok:
            raise BoundaryMismatch(f"Quartet boundaries disagree: {name}", boundary=name)

    mismatch = connection_mismatch(compose_galois(g1, b), compose_galois(a, g2))
    if mismatch is not None:
        side = mismatch["side"]
        raise SquareNotCommuting(
            f"Square does not commute at {mismatch.get('element')}",
            equation=_EQUATIONS[side],
            **mismatch,
        )
    return Quartet(g1=g1, g2=g2, a=a, b=b)


def compose_quartets_horizontally(first: Quartet, second: Quartet) -> Quartet:
    """Paste ``<a, c> : u1 => u2`` and ``<c, d> : v1 => v2`` into ``<a, d> : u1 o v1 => u2 o v2``."""
    if connection_mismatch(first.b, second.a) is not None:
        raise BoundaryMismatch("Shared edge of the two quartets differs")
    return check_quartet(
        compose_galois(first.g1, second.g1),
        compose_galois(first.g2, second.g2),
        first.a,
        second.b,
    )


def _require_posets(q: Quartet) -> None:
    for role, order in (("A1", q.g1.source), ("B1", q.g1.target), ("A2", q.g2.source), ("B2", q.g2.target)):
        if not order.is_poset():
            raise NotPoset(f"Quartet 0-cell {role} is not a poset", role=role)


def _agrees(order: Preorder, actual, expected) -> bool:
    return bool((order.leq[actual, expected] & order.leq[expected, actual]).all())


def _assert_reproduces(q: Quartet, first: Quartet, second: Quartet) -> None:
    composite = compose_quartets_horizontally(first, second)
    for edge in ("g1", "g2", "a", "b"):
        mismatch = connection_mismatch(getattr(composite, edge), getattr(q, edge))
        ensure(mismatch is None, "quartet factorization", f"Pasted quartet differs on {edge}", edge=edge, mismatch=mismatch)


def factor_reflection_quartet(q: Quartet) -> GaloisConnection:
    """Factor a quartet whose source ``g1`` is a reflection through the kernels of the left adjoints.

    Returns ``c : ker(left g1) <-> ker(left g2)`` with ``left c = left a`` and
    ``right c = closure(g2).right(a)``.
    """
    _require_posets(q)
    if not classify_connection(q.g1).reflection:
        raise NotReflection("The source of the quartet is not a reflection")
    g1, g2, a, b = q.g1, q.g2, q.a, q.b

    ensure(
        _agrees(b.target, b.left, g2.left[a.left[g1.right]]),
        "reflection special condition",
        "left(b) differs from right(g1).left(a).left(g2)",
    )
    ensure(
        _agrees(b.source, b.right, g1.left[a.right[g2.right]]),
        "reflection special condition",
        "right(b) differs from right(g2).right(a).left(g1)",
    )

    pieces1, pieces2 = kernel_factorize(g1), kernel_factorize(g2)
    c = GaloisConnection(pieces1.ker_left, pieces2.ker_left, a.left, a.right[g2.closure])

    outer = check_quartet(pieces1.clo_g, pieces2.clo_g, a, c)
    inner = check_quartet(pieces1.lift0_g, pieces2.lift0_g, c, b)
    _assert_reproduces(q, outer, inner)
    return c


def factor_coreflection_quartet(q: Quartet) -> GaloisConnection:
    """Factor a quartet whose target ``g2`` is a coreflection through the kernels of the right adjoints.

    Returns ``d : ker(right g1) <-> ker(right g2)`` with ``left d = interior(g1).left(b)``
    and ``right d = right b``.
    """
    _require_posets(q)
    if not classify_connection(q.g2).coreflection:
        raise NotCoreflection("The target of the quartet is not a coreflection")
    g1, g2, a, b = q.g1, q.g2, q.a, q.b

    ensure(
        _agrees(a.target, a.left, g2.right[b.left[g1.left]]),
        "coreflection special condition",
        "left(a) differs from left(g1).left(b).right(g2)",
    )
    ensure(
        _agrees(a.source, a.right, g1.right[b.right[g2.left]]),
        "coreflection special condition",
        "right(a) differs from left(g2).right(b).right(g1)",
    )

    pieces1, pieces2 = kernel_factorize(g1), kernel_factorize(g2)
    d = GaloisConnection(pieces1.ker_right, pieces2.ker_right, b.left[g1.interior], b.right)

    outer = check_quartet(pieces1.lift1_g, pieces2.lift1_g, a, d)
    inner = check_quartet(pieces1.int_g, pieces2.int_g, d, b)
    _assert_reproduces(q, outer, inner)
    return d


@dataclass(frozen=True, eq=False)
class AxisMorphism:
    axis_map: GaloisConnection
    refl_quartet: Quartet
    corefl_quartet: Quartet


def axis_morphism(q: Quartet) -> AxisMorphism:
    """Split a quartet along the polar factorizations of its vertical edges."""
    _require_posets(q)
    polar1, polar2 = polar_factorize(q.g1), polar_factorize(q.g2)
    h = diagonal_fill(
        e=polar1.refl,
        m=polar2.corefl,
        r=compose_galois(q.a, polar2.refl),
        s=compose_galois(polar1.corefl, q.b),
    )
    upper = check_quartet(polar1.refl, polar2.refl, q.a, h)
    lower = check_quartet(polar1.corefl, polar2.corefl, h, q.b)
    _assert_reproduces(q, upper, lower)
    logger.debug(f"Axis morphism between axes of {len(h.source)} and {len(h.target)} bipole(s)")
    return AxisMorphism(axis_map=h, refl_quartet=upper, corefl_quartet=lower)
