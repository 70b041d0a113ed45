"""Galois connections between finite preorders.

A connection ``g : A <-> B`` is stored as two index arrays, ``left`` (A -> B) and
``right`` (B -> A). Composition is written diagrammatically in comments: ``f.g`` means
"apply f, then g". Pointwise comparisons are made up to equivalence (mutual ``<=``).
"""

import itertools
import logging
from collections.abc import Hashable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from fca_engine.config import DIAGONAL_SEARCH_LIMIT, INDUCED_LATTICE_LIMIT, MAX_CARRIER_SIZE, MAX_POWERSET_BASE
from fca_engine.errors import (
    AdjointnessViolated,
    BoundaryMismatch,
    CapacityExceeded,
    NoBound,
    NotComplete,
    NotCoreflection,
    NotMonotone,
    NotPoset,
    NotReflection,
    SquareNotCommuting,
    ensure,
)
from fca_engine.order_core import (
    Extremum,
    MapKind,
    MonotoneMap,
    Preorder,
    SetFunction,
    classify_map,
    extremum,
    frozen_array,
    kernel_preorder,
    missing_meet,
    powerset_order,
)
from fca_engine.utils.bitsets import full_mask, indices_of, intersection_table, mask_of, union_table
from fca_engine.utils.decorators import timeit_decorator

logger = logging.getLogger(__name__)


class GaloisConnection:
    """An adjoint pair ``<left, right> : source <-> target``, validated on construction."""

    __slots__ = ("source", "target", "left", "right")

    def __init__(self, source: Preorder, target: Preorder, left: Sequence[int], right: Sequence[int]):
        self.source = source
        self.target = target
        for side, mapping, start, end in (("left", left, source, target), ("right", right, target, source)):
            try:
                MonotoneMap(start, end, mapping)
            except NotMonotone as e:
                raise NotMonotone(f"The {side} adjoint is not monotone: {e.message}", side=side, **e.witness) from e
        self.left = frozen_array(left, np.int64)
        self.right = frozen_array(right, np.int64)
        self._check_adjointness()

    def _check_adjointness(self) -> None:
        source, target = self.source, self.target
        # left(a) <= b   versus   a <= right(b)
        lhs = target.leq[self.left]
        rhs = source.leq[:, self.right]
        broken = np.argwhere(lhs != rhs)
        if len(broken):
            a, b = (int(i) for i in broken[0])
            raise AdjointnessViolated(
                f"left({source.labels[a]}) <= {target.labels[b]} disagrees with "
                f"{source.labels[a]} <= right({target.labels[b]})",
                a=source.labels[a],
                b=target.labels[b],
                left_holds=bool(lhs[a, b]),
            )
        ensure(
            bool(np.all(source.leq[np.arange(len(source)), self.closure])),
            "unit inequality",
            "a <= right(left(a)) fails",
        )
        ensure(
            bool(np.all(target.leq[self.interior, np.arange(len(target))])),
            "counit inequality",
            "left(right(b)) <= b fails",
        )

    @property
    def closure(self) -> np.ndarray:
        return self.right[self.left]

    @property
    def interior(self) -> np.ndarray:
        return self.left[self.right]

    def __repr__(self) -> str:
        return f"GaloisConnection({len(self.source)} <-> {len(self.target)})"


def make_galois(source: Preorder, target: Preorder, left: Sequence[int], right: Sequence[int]) -> GaloisConnection:
    return GaloisConnection(source, target, left, right)


def identity_connection(preorder: Preorder) -> GaloisConnection:
    identity = np.arange(len(preorder))
    return GaloisConnection(preorder, preorder, identity, identity)


def _same_boundaries(g: GaloisConnection, h: GaloisConnection) -> bool:
    return g.source == h.source and g.target == h.target


def connection_mismatch(g: GaloisConnection, h: GaloisConnection) -> dict | None:
    """First pointwise disagreement (up to equivalence) between two parallel connections."""
    if not _same_boundaries(g, h):
        return {"side": "boundary", "message": "connections are not parallel"}
    for side, order, mine, theirs, domain in (
        ("left", g.target, g.left, h.left, g.source),
        ("right", g.source, g.right, h.right, g.target),
    ):
        agree = order.leq[mine, theirs] & order.leq[theirs, mine]
        bad = np.flatnonzero(~agree)
        if len(bad):
            x = int(bad[0])
            return {
                "side": side,
                "element": domain.labels[x],
                "expected": order.labels[theirs[x]],
                "actual": order.labels[mine[x]],
            }
    return None


def compose_galois(g1: GaloisConnection, g2: GaloisConnection) -> GaloisConnection:
    """``g1 o g2 : A <-> C`` with left = left1.left2 and right = right2.right1."""
    if g1.target != g2.source:
        raise BoundaryMismatch(
            "Target of the first connection differs from the source of the second",
            first_target=len(g1.target),
            second_source=len(g2.source),
        )
    return GaloisConnection(g1.source, g2.target, g2.left[g1.left], g1.right[g2.right])


@dataclass(frozen=True, eq=False)
class ClosureInterior:
    closure: np.ndarray
    interior: np.ndarray
    closed: tuple[int, ...]
    open: tuple[int, ...]


def closure_interior(g: GaloisConnection) -> ClosureInterior:
    source, target = g.source, g.target
    closure, interior = g.closure, g.interior
    eq_a, eq_b = source.equivalence, target.equivalence
    ids_a, ids_b = np.arange(len(source)), np.arange(len(target))

    ensure(bool(np.all(source.leq[ids_a, closure])), "closure increasing", "a <= a* fails")
    ensure(bool(np.all(eq_a[closure[closure], closure])), "closure idempotent", "a** == a* fails")
    ensure(bool(np.all(target.leq[interior, ids_b])), "interior decreasing", "b° <= b fails")
    ensure(bool(np.all(eq_b[interior[interior], interior])), "interior idempotent", "b°° == b° fails")

    return ClosureInterior(
        closure=closure,
        interior=interior,
        closed=tuple(int(a) for a in np.flatnonzero(eq_a[ids_a, closure])),
        open=tuple(int(b) for b in np.flatnonzero(eq_b[ids_b, interior])),
    )


@dataclass(frozen=True)
class ConnectionKind:
    reflection: bool
    coreflection: bool


def classify_connection(g: GaloisConnection) -> ConnectionKind:
    """Reflection: interior is the identity up to equivalence. Coreflection: closure is."""
    parts = closure_interior(g)
    kind = ConnectionKind(
        reflection=len(parts.open) == len(g.target),
        coreflection=len(parts.closed) == len(g.source),
    )
    if kind.reflection:
        ensure(
            classify_map(MonotoneMap(g.target, g.source, g.right)) is MapKind.ISOTONE,
            "reflection right adjoint isotone",
            "Right adjoint of a reflection does not reflect order",
        )
    if kind.coreflection:
        ensure(
            classify_map(MonotoneMap(g.source, g.target, g.left)) is MapKind.ISOTONE,
            "coreflection left adjoint isotone",
            "Left adjoint of a coreflection does not reflect order",
        )
    return kind


@dataclass
class InducedLatticeReport:
    reflection: bool
    coreflection: bool
    subsets_checked: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures


def _require_complete_poset(preorder: Preorder, role: str) -> None:
    if not preorder.is_poset():
        raise NotPoset(f"The {role} must be a poset", role=role)
    witness = missing_meet(preorder)
    if witness is not None:
        raise NotComplete(
            f"The {role} is not a complete lattice",
            role=role,
            subset=[preorder.labels[i] for i in witness],
        )


def _bounds(preorder: Preorder, subset: Sequence[int]) -> tuple[int, int]:
    return extremum(preorder, subset, Extremum.MEET), extremum(preorder, subset, Extremum.JOIN)


def _sweep(report, free: Preorder, sweep_carrier: Preorder, image_of, identities) -> None:
    """Evaluate ``identities`` for every subset of ``sweep_carrier``."""
    if len(sweep_carrier) > INDUCED_LATTICE_LIMIT:
        raise CapacityExceeded(
            f"Subset sweep over {len(sweep_carrier)} elements exceeds {INDUCED_LATTICE_LIMIT}",
            size=len(sweep_carrier),
            limit=INDUCED_LATTICE_LIMIT,
        )
    for mask in range(1 << len(sweep_carrier)):
        subset = indices_of(mask)
        report.subsets_checked += 1
        try:
            own = _bounds(sweep_carrier, subset)
            other = _bounds(free, [image_of[x] for x in subset])
        except NoBound as e:
            report.failures.append({"identity": "bounds exist", "subset": e.witness.get("subset")})
            continue
        for name, holds in identities(own, other):
            if not holds:
                report.failures.append(
                    {"identity": name, "subset": [sweep_carrier.labels[x] for x in subset]}
                )


def check_induced_lattice(g: GaloisConnection) -> InducedLatticeReport:
    """Check the bound-transfer identities a (co)reflection induces from a complete lattice."""
    kind = classify_connection(g)
    if not (kind.reflection or kind.coreflection):
        raise NotReflection("Connection is neither a reflection nor a coreflection")
    A, B = g.source, g.target
    report = InducedLatticeReport(reflection=kind.reflection, coreflection=kind.coreflection)

    if kind.reflection:
        _require_complete_poset(A, "source")
        closure = g.closure

        def reflection_identities(own, other):
            (meet_b, join_b), (meet_a, join_a) = own, other
            return [
                ("join transfers through left", B.equivalent(join_b, int(g.left[join_a]))),
                ("meet transfers through left", B.equivalent(meet_b, int(g.left[meet_a]))),
                ("right of join is closed join", A.equivalent(int(g.right[join_b]), int(closure[join_a]))),
                ("right preserves meets", A.equivalent(int(g.right[meet_b]), meet_a)),
            ]

        _sweep(report, A, B, g.right, reflection_identities)

    if kind.coreflection:
        _require_complete_poset(B, "target")
        interior = g.interior

        def coreflection_identities(own, other):
            (meet_a, join_a), (meet_b, join_b) = own, other
            return [
                ("join transfers through right", A.equivalent(join_a, int(g.right[join_b]))),
                ("meet transfers through right", A.equivalent(meet_a, int(g.right[meet_b]))),
                ("left preserves joins", B.equivalent(int(g.left[join_a]), join_b)),
                ("left of meet is open meet", B.equivalent(int(g.left[meet_a]), int(interior[meet_b]))),
            ]

        _sweep(report, B, A, g.left, coreflection_identities)

    if not report.holds:
        logger.warning(f"Induced lattice identities failed {len(report.failures)} time(s)")
    return report


@dataclass(frozen=True, eq=False)
class PolarFactorization:
    bipoles: tuple[tuple[int, int], ...]
    axis: Preorder
    refl: GaloisConnection
    corefl: GaloisConnection


def _check_capacity(*orders: Preorder) -> None:
    for order in orders:
        if len(order) > MAX_CARRIER_SIZE:
            raise CapacityExceeded(
                f"Carrier of {len(order)} elements exceeds {MAX_CARRIER_SIZE}",
                size=len(order),
                limit=MAX_CARRIER_SIZE,
            )


@timeit_decorator
def polar_factorize(g: GaloisConnection) -> PolarFactorization:
    """Factor ``g`` as a reflection onto its axis of bipoles followed by a coreflection."""
    A, B = g.source, g.target
    _check_capacity(A, B)
    parts = closure_interior(g)
    canon_a, canon_b = A.canonical_map(), B.canonical_map()

    poles = [a for a in parts.closed if canon_a[a] == a]
    bipoles = tuple((a, int(canon_b[g.left[a]])) for a in poles)
    position = {a: p for p, (a, _) in enumerate(bipoles)}
    axis = Preorder(
        [f"({A.labels[a]},{B.labels[b]})" for a, b in bipoles],
        A.leq[np.ix_(poles, poles)],
    )

    embed0 = [position[int(canon_a[parts.closure[a]])] for a in range(len(A))]
    embed1 = [position[int(canon_a[g.right[b]])] for b in range(len(B))]
    project0 = [a for a, _ in bipoles]
    project1 = [b for _, b in bipoles]
    refl = GaloisConnection(A, axis, embed0, project0)
    corefl = GaloisConnection(axis, B, project1, embed1)

    closed, opened = set(parts.closed), set(parts.open)
    for a, b in bipoles:
        ensure(a in closed and b in opened, "bipole poles", "Bipole is not closed/open", a=A.labels[a], b=B.labels[b])
        ensure(
            A.equivalent(a, int(g.right[b])) and B.equivalent(b, int(g.left[a])),
            "bipole polarity",
            "Bipole poles are not mapped onto each other",
            a=A.labels[a],
            b=B.labels[b],
        )
    ends = np.array(project1, dtype=np.int64)
    ensure(
        np.array_equal(axis.leq, B.leq[np.ix_(ends, ends)]),
        "bipolar order",
        "Source and target orders disagree on bipoles",
    )
    ensure(classify_connection(refl).reflection, "refl is a reflection", "Axis embedding is not a reflection")
    ensure(classify_connection(corefl).coreflection, "corefl is a coreflection", "Axis projection is not a coreflection")
    mismatch = connection_mismatch(compose_galois(refl, corefl), g)
    ensure(mismatch is None, "polar factorization", "refl o corefl differs from g", mismatch=mismatch)
    if A.is_poset() and B.is_poset():
        ensure(axis.is_poset(), "axis is a poset", "Axis of a poset connection is not a poset")

    logger.debug(f"Polar factorization through {len(bipoles)} bipole(s)")
    return PolarFactorization(bipoles=bipoles, axis=axis, refl=refl, corefl=corefl)


@dataclass(frozen=True, eq=False)
class KernelFactorization:
    ker_left: Preorder
    ker_right: Preorder
    clo_g: GaloisConnection
    lift0_g: GaloisConnection
    int_g: GaloisConnection
    lift1_g: GaloisConnection
    lift_g: GaloisConnection


def kernel_factorize(g: GaloisConnection) -> KernelFactorization:
    """Factor ``g`` through the kernels of its adjoints."""
    A, B = g.source, g.target
    ker_left = kernel_preorder(MonotoneMap(A, B, g.left))
    ker_right = kernel_preorder(MonotoneMap(B, A, g.right))
    ids_a, ids_b = np.arange(len(A)), np.arange(len(B))

    pieces = KernelFactorization(
        ker_left=ker_left,
        ker_right=ker_right,
        clo_g=GaloisConnection(A, ker_left, ids_a, g.closure),
        lift0_g=GaloisConnection(ker_left, B, g.left, g.right),
        int_g=GaloisConnection(ker_right, B, g.interior, ids_b),
        lift1_g=GaloisConnection(A, ker_right, g.left, g.right),
        lift_g=GaloisConnection(ker_left, ker_right, g.left, g.right),
    )
    for name, composite, expected in (
        ("clo o lift0 = g", compose_galois(pieces.clo_g, pieces.lift0_g), g),
        ("lift1 o int = g", compose_galois(pieces.lift1_g, pieces.int_g), g),
        ("clo o lift = lift1", compose_galois(pieces.clo_g, pieces.lift_g), pieces.lift1_g),
        ("lift o int = lift0", compose_galois(pieces.lift_g, pieces.int_g), pieces.lift0_g),
    ):
        mismatch = connection_mismatch(composite, expected)
        ensure(mismatch is None, name, f"Kernel factorization identity '{name}' fails", mismatch=mismatch)
    return pieces


def _require_posets(**orders: Preorder) -> None:
    for role, order in orders.items():
        if not order.is_poset():
            raise NotPoset(f"The {role} 0-cell is not a poset", role=role)


def diagonal_fill(
    e: GaloisConnection,
    m: GaloisConnection,
    r: GaloisConnection,
    s: GaloisConnection,
) -> GaloisConnection:
    """Unique ``h`` with ``e o h = r`` and ``h o m = s`` for a square ``e o s = r o m``.

    ``e : A <-> B`` is a reflection, ``m : C <-> D`` a coreflection,
    ``r : A <-> C`` and ``s : B <-> D``.
    """
    _require_posets(A=e.source, B=e.target, C=m.source, D=m.target)
    for name, ok in (
        ("e/r sources", e.source == r.source),
        ("e target/s source", e.target == s.source),
        ("r target/m source", r.target == m.source),
        ("s/m targets", s.target == m.target),
    ):
        if not ok:
            raise BoundaryMismatch(f"Square boundaries disagree: {name}", boundary=name)
    if not classify_connection(e).reflection:
        raise NotReflection("The top edge of the square must be a reflection")
    if not classify_connection(m).coreflection:
        raise NotCoreflection("The bottom edge of the square must be a coreflection")
    mismatch = connection_mismatch(compose_galois(e, s), compose_galois(r, m))
    if mismatch is not None:
        raise SquareNotCommuting("e o s differs from r o m", **mismatch)

    # left: s.left then m.right (== e.right then r.left)
    h_left = m.right[s.left]
    ensure(np.array_equal(h_left, r.left[e.right]), "diagonal left", "Two descriptions of the left adjoint disagree")
    # right: r.right then e.left (== m.left then s.right)
    h_right = e.left[r.right]
    ensure(np.array_equal(h_right, s.right[m.left]), "diagonal right", "Two descriptions of the right adjoint disagree")

    h = GaloisConnection(e.target, m.source, h_left, h_right)
    ensure(connection_mismatch(compose_galois(e, h), r) is None, "e o h = r", "Upper triangle fails")
    ensure(connection_mismatch(compose_galois(h, m), s) is None, "h o m = s", "Lower triangle fails")
    return h


def enumerate_galois(source: Preorder, target: Preorder) -> Iterator[GaloisConnection]:
    """Every Galois connection ``source <-> target`` (right adjoints up to canonical choice)."""
    for order in (source, target):
        if len(order) > DIAGONAL_SEARCH_LIMIT:
            raise CapacityExceeded(
                f"Exhaustive search over {len(order)} elements exceeds {DIAGONAL_SEARCH_LIMIT}",
                size=len(order),
                limit=DIAGONAL_SEARCH_LIMIT,
            )
    for left in itertools.product(range(len(target)), repeat=len(source)):
        left = np.array(left, dtype=np.int64)
        if not np.all(target.leq[np.ix_(left, left)][source.leq]):
            continue
        right = []
        for b in range(len(target)):
            below = target.leq[left, b]
            greatest = np.flatnonzero(below & np.all(~below[:, None] | source.leq, axis=0))
            if not len(greatest):
                break
            right.append(int(greatest[0]))
        else:
            yield GaloisConnection(source, target, left, right)


def _check_base(*sizes: int) -> None:
    for size in sizes:
        if size > MAX_POWERSET_BASE:
            raise CapacityExceeded(
                f"Base set of {size} elements exceeds {MAX_POWERSET_BASE}",
                size=size,
                limit=MAX_POWERSET_BASE,
            )


def from_relation(
    x_labels: Sequence[Hashable],
    y_labels: Sequence[Hashable],
    relation,
) -> GaloisConnection:
    """Derivation connection ``P(X) <-> P(Y)^op`` of a relation given as an |X|x|Y| matrix."""
    relation = np.asarray(relation, dtype=bool).reshape(len(x_labels), len(y_labels))
    _check_base(len(x_labels), len(y_labels))
    rows = [mask_of(np.flatnonzero(row)) for row in relation]
    cols = [mask_of(np.flatnonzero(col)) for col in relation.T]
    return GaloisConnection(
        powerset_order(x_labels),
        powerset_order(y_labels).opposite(),
        intersection_table(rows, full_mask(len(y_labels))),
        intersection_table(cols, full_mask(len(x_labels))),
    )


def _image_tables(h: SetFunction) -> tuple[list[int], list[int]]:
    singles = [1 << int(b) for b in h.map]
    fibres = [mask_of(np.flatnonzero(h.map == b)) for b in range(len(h.target))]
    return union_table(singles), union_table(fibres)


def from_function(h: SetFunction) -> GaloisConnection:
    """``dir(h) = <direct image, inverse image> : P(X1) <-> P(X2)``."""
    _check_base(len(h.source), len(h.target))
    direct, inverse = _image_tables(h)
    return GaloisConnection(powerset_order(h.source), powerset_order(h.target), direct, inverse)


def inverse_connection(h: SetFunction) -> GaloisConnection:
    """``inv(h) = <inverse image, direct image> : P(X2)^op <-> P(X1)^op``."""
    _check_base(len(h.source), len(h.target))
    direct, inverse = _image_tables(h)
    return GaloisConnection(
        powerset_order(h.target).opposite(),
        powerset_order(h.source).opposite(),
        inverse,
        direct,
    )
