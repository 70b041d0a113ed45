"""Concept lattices, concept morphisms and theory lattices.

A :class:`ConceptLattice` is the quintuple ``<order, instances, types, iota, tau>``.
Extents and intents of its elements are read back from the order:
``ext(c) = {x | iota(x) <= c}`` and ``int(c) = {y | c <= tau(y)}``.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from fca_engine.classification import Classification, Infomorphism, Side, derivation_connection, derive
from fca_engine.config import CONTINUITY_LIMIT, MAX_POWERSET_BASE, MAX_SUBSET_BASE
from fca_engine.errors import (
    AdjointnessViolated,
    BoundaryMismatch,
    CapacityExceeded,
    InstanceNotPreserved,
    NotAdjoint,
    NotComplete,
    NotMonotone,
    NotPoset,
    TypeNotPreserved,
    UnknownLabel,
    ensure,
)
from fca_engine.galois import (
    GaloisConnection,
    classify_connection,
    compose_galois,
    connection_mismatch,
    from_function,
    inverse_connection,
    kernel_factorize,
)
from fca_engine.order_core import (
    Extremum,
    Preorder,
    SetFunction,
    extremum,
    frozen_array,
    index_labels,
    inverse_image,
    is_order_isomorphism,
    missing_meet,
    powerset_order,
)
from fca_engine.quartet import Quartet, check_quartet
from fca_engine.utils.bitsets import full_mask, indices_of, intersection_table, is_subset, iter_bits
from fca_engine.utils.decorators import timeit_decorator

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class FormalConcept:
    extent: int
    intent: int


def _inclusion_matrix(masks: Sequence[int]) -> np.ndarray:
    values = np.array(list(masks), dtype=object)
    if not len(values):
        return np.zeros((0, 0), dtype=bool)
    return ((values[:, None] & ~values[None, :]) == 0).astype(bool)


class ConceptLattice:
    __slots__ = ("order", "instances", "types", "iota", "tau", "extents", "intents", "context", "_by_extent", "_by_intent")

    def __init__(
        self,
        order: Preorder,
        instances: Iterable[str],
        types: Iterable[str],
        iota: Sequence[int],
        tau: Sequence[int],
        context: Classification | None = None,
    ):
        self.order = order
        self.instances, _ = index_labels(instances)
        self.types, _ = index_labels(types)
        self.iota = frozen_array(iota, np.int64)
        self.tau = frozen_array(tau, np.int64)
        for name, mapping, size in (("iota", self.iota, len(self.instances)), ("tau", self.tau, len(self.types))):
            if mapping.shape != (size,):
                raise ValueError(f"{name} must have {size} entries, got {mapping.shape}")
            if size and (mapping.min() < 0 or mapping.max() >= len(order)):
                raise UnknownLabel(f"{name} value outside the lattice", map=name)

        below = order.leq[self.iota]
        above = order.leq[:, self.tau]
        self.extents = tuple(sum(1 << int(x) for x in np.flatnonzero(below[:, c])) for c in range(len(order)))
        self.intents = tuple(sum(1 << int(y) for y in np.flatnonzero(above[c])) for c in range(len(order)))
        self.context = context
        self._by_extent: dict[int, int] = {}
        self._by_intent: dict[int, int] = {}
        for c in range(len(order)):
            self._by_extent.setdefault(self.extents[c], c)
            self._by_intent.setdefault(self.intents[c], c)

    def __len__(self) -> int:
        return len(self.order)

    def __repr__(self) -> str:
        return f"ConceptLattice({len(self)} concepts, {len(self.instances)} instances, {len(self.types)} types)"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ConceptLattice)
            and self.order == other.order
            and self.instances == other.instances
            and self.types == other.types
            and np.array_equal(self.iota, other.iota)
            and np.array_equal(self.tau, other.tau)
        )

    __hash__ = None

    @property
    def concepts(self) -> tuple[FormalConcept, ...]:
        return tuple(FormalConcept(e, i) for e, i in zip(self.extents, self.intents))

    def concept(self, c: int) -> FormalConcept:
        return FormalConcept(self.extents[c], self.intents[c])

    def position(self, concept: FormalConcept) -> int:
        c = self._by_extent.get(concept.extent)
        if c is None or self.intents[c] != concept.intent:
            raise UnknownLabel("Concept is not an element of the lattice", extent=concept.extent, intent=concept.intent)
        return c

    def by_extent(self, extent: int) -> int | None:
        return self._by_extent.get(extent)

    def by_intent(self, intent: int) -> int | None:
        return self._by_intent.get(intent)

    @property
    def top(self) -> int:
        return extremum(self.order, [], Extremum.MEET)

    @property
    def bottom(self) -> int:
        return extremum(self.order, [], Extremum.JOIN)


def make_concept_lattice(
    order: Preorder,
    instances: Iterable[str],
    types: Iterable[str],
    iota: Sequence[int],
    tau: Sequence[int],
) -> ConceptLattice:
    """Validate a hand-built quintuple. Density is reported by :func:`density_check`, not enforced."""
    if not order.is_poset():
        raise NotPoset("Concept lattice order must be a poset")
    witness = missing_meet(order)
    if witness is not None:
        raise NotComplete(
            "Concept lattice order is not a complete lattice",
            subset=[order.labels[i] for i in witness],
        )
    return ConceptLattice(order, instances, types, iota, tau)


def concepts(context: Classification) -> list[FormalConcept]:
    """Every formal concept of ``context``, sorted by extent bitmask."""
    n_inst, n_type = len(context.instances), len(context.types)
    if min(n_inst, n_type) > MAX_SUBSET_BASE:
        raise CapacityExceeded(
            f"Concept enumeration over {min(n_inst, n_type)} elements exceeds {MAX_SUBSET_BASE}",
            size=min(n_inst, n_type),
            limit=MAX_SUBSET_BASE,
        )
    if n_inst <= n_type:
        # X^A for every instance subset; the distinct values are the intents
        intents = set(intersection_table(context.row_masks, full_mask(n_type)))
        found = {FormalConcept(derive(context, Side.TYPES, y), y) for y in intents}
    else:
        extents = set(intersection_table(context.col_masks, full_mask(n_inst)))
        found = {FormalConcept(x, derive(context, Side.INSTANCES, x)) for x in extents}
    return sorted(found)


@timeit_decorator
def clg(context: Classification) -> ConceptLattice:
    """The concept lattice of a classification."""
    found = concepts(context)
    extents = [c.extent for c in found]
    position = {e: i for i, e in enumerate(extents)}
    order = Preorder([str(i) for i in range(len(found))], _inclusion_matrix(extents))

    iota = [position[derive(context, Side.TYPES, row)] for row in context.row_masks]
    tau = [position[col] for col in context.col_masks]
    lattice = ConceptLattice(order, context.instances, context.types, iota, tau, context=context)

    ensure(lattice.concepts == tuple(found), "extents and intents from iota and tau", "Read-back concepts differ")
    ensure(order.is_poset(), "concept order is a poset", "Concept order is not antisymmetric")
    ensure(
        np.array_equal(order.leq, _inclusion_matrix([c.intent for c in found]).T),
        "extent order is dual intent order",
        "Extent inclusion disagrees with reverse intent inclusion",
    )
    ensure(
        all(lattice.intents[lattice.iota[x]] == context.row_masks[x] for x in range(len(context.instances))),
        "int = iota.int",
        "Instance intents differ from intents of their generated concepts",
    )
    ensure(
        all(lattice.extents[lattice.tau[y]] == context.col_masks[y] for y in range(len(context.types))),
        "ext = tau.ext",
        "Type extents differ from extents of their generated concepts",
    )
    logger.debug(f"Enumerated {len(found)} concept(s)")
    return lattice


def _derivations(lattice: ConceptLattice) -> Classification:
    return lattice.context if lattice.context is not None else clsn(lattice)


def lattice_extremum(lattice: ConceptLattice, subset: Iterable[int], kind: Extremum) -> FormalConcept:
    """Meet or join of concept indices, computed from extents and intents."""
    members = list(subset)
    context = _derivations(lattice)
    full_inst, full_type = full_mask(len(lattice.instances)), full_mask(len(lattice.types))
    if kind is Extremum.MEET:
        extent, union = full_inst, 0
        for c in members:
            extent &= lattice.extents[c]
            union |= lattice.intents[c]
        result = FormalConcept(extent, derive(context, Side.INSTANCES, derive(context, Side.TYPES, union)))
    else:
        union, intent = 0, full_type
        for c in members:
            union |= lattice.extents[c]
            intent &= lattice.intents[c]
        result = FormalConcept(derive(context, Side.TYPES, derive(context, Side.INSTANCES, union)), intent)

    expected = lattice.concept(extremum(lattice.order, members, kind))
    ensure(result == expected, f"{kind} formula", f"Formula {kind} differs from the order {kind}", subset=members)
    return result


def _generator_index(lattice: ConceptLattice, side: Side, subset: int) -> int:
    if side is Side.INSTANCES:
        return extremum(lattice.order, [int(lattice.iota[x]) for x in iter_bits(subset)], Extremum.JOIN)
    return extremum(lattice.order, [int(lattice.tau[y]) for y in iter_bits(subset)], Extremum.MEET)


def subset_generators(lattice: ConceptLattice, side: Side, subset: int) -> FormalConcept:
    """``iota_L(X) = join iota[X] = (X**, X*)`` or ``tau_L(Y) = meet tau[Y] = (Y*, Y**)``."""
    context = _derivations(lattice)
    generated = lattice.concept(_generator_index(lattice, side, subset))
    derived = derive(context, side, subset)
    other = Side.TYPES if side is Side.INSTANCES else Side.INSTANCES
    closed = derive(context, other, derived)
    expected = FormalConcept(closed, derived) if side is Side.INSTANCES else FormalConcept(derived, closed)
    ensure(generated == expected, "subset generators", f"Generated concept differs from derivation for {side}", subset=subset)
    return generated


@dataclass(frozen=True, eq=False)
class Adjunctions:
    extent: GaloisConnection
    intent: GaloisConnection


def _check_powerset_base(n: int, role: str) -> None:
    if n > MAX_POWERSET_BASE:
        raise CapacityExceeded(
            f"Powerset of {n} {role} exceeds {MAX_POWERSET_BASE}",
            size=n,
            limit=MAX_POWERSET_BASE,
        )


def extent_intent_adjunctions(lattice: ConceptLattice) -> Adjunctions:
    """The extent reflection ``P(inst) <-> lat(L)`` and intent coreflection ``lat(L) <-> P(typ)^op``."""
    _check_powerset_base(len(lattice.instances), "instances")
    _check_powerset_base(len(lattice.types), "types")
    n_inst, n_type = len(lattice.instances), len(lattice.types)

    iota_l = [_generator_index(lattice, Side.INSTANCES, mask) for mask in range(1 << n_inst)]
    tau_l = [_generator_index(lattice, Side.TYPES, mask) for mask in range(1 << n_type)]
    extent = GaloisConnection(powerset_order(lattice.instances), lattice.order, iota_l, lattice.extents)
    intent = GaloisConnection(lattice.order, powerset_order(lattice.types).opposite(), lattice.intents, tau_l)

    ensure(classify_connection(extent).reflection, "extent reflection", "extent_L is not a reflection")
    ensure(classify_connection(intent).coreflection, "intent coreflection", "intent_L is not a coreflection")
    mismatch = connection_mismatch(compose_galois(extent, intent), derivation_connection(clsn(lattice)))
    ensure(mismatch is None, "derivation factors", "extent o intent differs from the derivation connection", mismatch=mismatch)
    return Adjunctions(extent=extent, intent=intent)


def clsn(lattice: ConceptLattice) -> Classification:
    """Instances and types of ``L`` with ``x |= y`` iff ``iota(x) <= tau(y)``."""
    incidence = lattice.order.leq[np.ix_(lattice.iota, lattice.tau)]
    return Classification(lattice.instances, lattice.types, incidence)


def transpose_lattice(lattice: ConceptLattice) -> ConceptLattice:
    return ConceptLattice(lattice.order.opposite(), lattice.types, lattice.instances, lattice.tau, lattice.iota)


@dataclass(frozen=True)
class LatticeKind:
    extensional: bool
    separated: bool


def classify_lattice(lattice: ConceptLattice) -> LatticeKind:
    return LatticeKind(
        extensional=len(np.unique(lattice.tau)) == len(lattice.tau),
        separated=len(np.unique(lattice.iota)) == len(lattice.iota),
    )


class ConceptMorphism:
    """``h : L1 <-> L2`` with ``<left, right> : lat(L2) <-> lat(L1)`` and instance/type maps."""

    __slots__ = ("source", "target", "adjunction", "inst_map", "typ_map")

    def __init__(self, source: ConceptLattice, target: ConceptLattice, adjunction: GaloisConnection, inst_map, typ_map):
        self.source = source
        self.target = target
        self.adjunction = adjunction
        self.inst_map = frozen_array(inst_map, np.int64)
        self.typ_map = frozen_array(typ_map, np.int64)

    @property
    def left(self) -> np.ndarray:
        return self.adjunction.left

    @property
    def right(self) -> np.ndarray:
        return self.adjunction.right

    def __repr__(self) -> str:
        return f"ConceptMorphism({self.source!r} <-> {self.target!r})"

    def inst_function(self) -> SetFunction:
        return SetFunction(self.target.instances, self.source.instances, self.inst_map)

    def typ_function(self) -> SetFunction:
        return SetFunction(self.source.types, self.target.types, self.typ_map)


def _checked_map(values, size: int, bound: int, name: str) -> np.ndarray:
    array = np.asarray(values, dtype=np.int64)
    if array.shape != (size,):
        raise ValueError(f"{name} must have {size} entries, got {array.shape}")
    if size and (array.min() < 0 or array.max() >= bound):
        raise UnknownLabel(f"{name} value outside its codomain", map=name)
    return array


def _check_continuity(h: ConceptMorphism) -> None:
    for lattice, mapping, image, kind, name in (
        (h.target, h.left, h.source, Extremum.JOIN, "left is join-continuous"),
        (h.source, h.right, h.target, Extremum.MEET, "right is meet-continuous"),
    ):
        if len(lattice) > CONTINUITY_LIMIT:
            logger.debug(f"Skipping continuity sweep over {len(lattice)} concepts")
            continue
        for mask in range(1 << len(lattice)):
            subset = indices_of(mask)
            bound = extremum(lattice.order, subset, kind)
            image_bound = extremum(image.order, [int(mapping[c]) for c in subset], kind)
            ensure(mapping[bound] == image_bound, name, f"Continuity fails ({name})", subset=subset)


def _check_naturality(h: ConceptMorphism) -> None:
    inst, typ = h.inst_function(), h.typ_function()
    ensure(
        all(
            inverse_image(inst, h.source.extents[c1]) == h.target.extents[int(h.right[c1])]
            for c1 in range(len(h.source))
        ),
        "extent naturality",
        "ext(L1).inst^-1 differs from right.ext(L2)",
    )
    ensure(
        all(
            inverse_image(typ, h.target.intents[c2]) == h.source.intents[int(h.left[c2])]
            for c2 in range(len(h.target))
        ),
        "intent naturality",
        "int(L2).typ^-1 differs from left.int(L1)",
    )
    if len(h.target.instances) <= MAX_POWERSET_BASE:
        for mask in range(1 << len(h.target.instances)):
            image = 0
            for x2 in iter_bits(mask):
                image |= 1 << int(h.inst_map[x2])
            ensure(
                _generator_index(h.source, Side.INSTANCES, image)
                == h.left[_generator_index(h.target, Side.INSTANCES, mask)],
                "iota naturality",
                "iota_L1 of the direct image differs from left of iota_L2",
                subset=mask,
            )


def check_concept_morphism(
    source: ConceptLattice,
    target: ConceptLattice,
    left: Sequence[int],
    right: Sequence[int],
    inst_map: Sequence[int],
    typ_map: Sequence[int],
) -> ConceptMorphism:
    left = _checked_map(left, len(target), len(source), "left")
    right = _checked_map(right, len(source), len(target), "right")
    inst_map = _checked_map(inst_map, len(target.instances), len(source.instances), "inst_map")
    typ_map = _checked_map(typ_map, len(source.types), len(target.types), "typ_map")
    try:
        adjunction = GaloisConnection(target.order, source.order, left, right)
    except (AdjointnessViolated, NotMonotone) as e:
        raise NotAdjoint(f"left/right are not a Galois connection: {e.message}", **e.witness) from e

    # iota2.left == inst.iota1
    broken = np.flatnonzero(left[target.iota] != source.iota[inst_map])
    if len(broken):
        x2 = int(broken[0])
        raise InstanceNotPreserved(
            f"left(iota({target.instances[x2]})) differs from iota(inst({target.instances[x2]}))",
            x2=target.instances[x2],
            expected=int(source.iota[inst_map[x2]]),
            actual=int(left[target.iota[x2]]),
        )
    # tau1.right == typ.tau2
    broken = np.flatnonzero(right[source.tau] != target.tau[typ_map])
    if len(broken):
        y1 = int(broken[0])
        raise TypeNotPreserved(
            f"right(tau({source.types[y1]})) differs from tau(typ({source.types[y1]}))",
            y1=source.types[y1],
            expected=int(target.tau[typ_map[y1]]),
            actual=int(right[source.tau[y1]]),
        )

    h = ConceptMorphism(source, target, adjunction, inst_map, typ_map)
    _check_continuity(h)
    _check_naturality(h)
    return h


def clg_morphism(f: Infomorphism, source: ConceptLattice | None = None, target: ConceptLattice | None = None) -> ConceptMorphism:
    """The concept morphism ``clg(f) : clg(A1) <-> clg(A2)`` of an infomorphism."""
    source = source if source is not None else clg(f.source)
    target = target if target is not None else clg(f.target)
    inst, typ = f.inst_function(), f.typ_function()
    a1, a2 = f.source, f.target

    right = []
    for c1 in source.concepts:
        extent2 = inverse_image(inst, c1.extent)
        image = 0
        for y1 in iter_bits(c1.intent):
            image |= 1 << int(f.typ_map[y1])
        ensure(
            extent2 == derive(a2, Side.TYPES, image),
            "inverse image of extent is derived",
            "inst^-1[X1] differs from (typ[Y1])*",
            extent=c1.extent,
        )
        right.append(target.by_extent(extent2))

    left = []
    for c2 in target.concepts:
        intent1 = inverse_image(typ, c2.intent)
        image = 0
        for x2 in iter_bits(c2.extent):
            image |= 1 << int(f.inst_map[x2])
        ensure(
            intent1 == derive(a1, Side.INSTANCES, image),
            "inverse image of intent is derived",
            "typ^-1[Y2] differs from (inst[X2])*",
            intent=c2.intent,
        )
        left.append(source.by_intent(intent1))

    return check_concept_morphism(source, target, left, right, f.inst_map, f.typ_map)


def identity_concept_morphism(lattice: ConceptLattice) -> ConceptMorphism:
    ids = np.arange(len(lattice))
    return check_concept_morphism(
        lattice, lattice, ids, ids, np.arange(len(lattice.instances)), np.arange(len(lattice.types))
    )


def compose_concept_morphisms(h1: ConceptMorphism, h2: ConceptMorphism) -> ConceptMorphism:
    if h1.target != h2.source:
        raise BoundaryMismatch("Target of the first concept morphism differs from the source of the second")
    return check_concept_morphism(
        h1.source,
        h2.target,
        h1.left[h2.left],
        h2.right[h1.right],
        h1.inst_map[h2.inst_map],
        h2.typ_map[h1.typ_map],
    )


def clsn_morphism(h: ConceptMorphism) -> Infomorphism:
    return Infomorphism(clsn(h.source), clsn(h.target), h.inst_map, h.typ_map)


@dataclass(frozen=True, eq=False)
class RoundTrip:
    rebuilt: ConceptLattice
    forward: np.ndarray
    backward: np.ndarray


def roundtrip_iso(lattice: ConceptLattice) -> RoundTrip:
    """Mutually inverse order isomorphisms between ``clg(clsn(L))`` and ``L``."""
    rebuilt = clg(clsn(lattice))
    forward = []
    for concept in rebuilt.concepts:
        join = _generator_index(lattice, Side.INSTANCES, concept.extent)
        meet = _generator_index(lattice, Side.TYPES, concept.intent)
        ensure(join == meet, "generators agree", "join of iota[X] differs from meet of tau[Y]", extent=concept.extent)
        forward.append(join)

    backward = []
    for c in range(len(lattice)):
        target = rebuilt.by_extent(lattice.extents[c])
        ensure(target is not None, "extents are concepts", "Element extent is not a concept extent", element=c)
        backward.append(target)

    forward, backward = np.array(forward, dtype=np.int64), np.array(backward, dtype=np.int64)
    ensure(
        np.array_equal(forward[backward], np.arange(len(lattice)))
        and np.array_equal(backward[forward], np.arange(len(rebuilt))),
        "round trip inverse",
        "forward and backward are not mutually inverse",
    )
    ensure(is_order_isomorphism(rebuilt.order, lattice.order, forward), "round trip iso", "forward is not an order isomorphism")
    ensure(is_order_isomorphism(lattice.order, rebuilt.order, backward), "round trip iso", "backward is not an order isomorphism")
    return RoundTrip(rebuilt=rebuilt, forward=forward, backward=backward)


@dataclass
class DensityReport:
    join_dense_failures: list[int] = field(default_factory=list)
    meet_dense_failures: list[int] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not (self.join_dense_failures or self.meet_dense_failures)


def density_check(lattice: ConceptLattice) -> DensityReport:
    report = DensityReport()
    for c in range(len(lattice)):
        if _generator_index(lattice, Side.INSTANCES, lattice.extents[c]) != c:
            report.join_dense_failures.append(c)
        if _generator_index(lattice, Side.TYPES, lattice.intents[c]) != c:
            report.meet_dense_failures.append(c)
    if not report.holds:
        logger.warning(
            f"Density fails: {len(report.join_dense_failures)} join, {len(report.meet_dense_failures)} meet"
        )
    return report


@dataclass(frozen=True, eq=False)
class TheoryLattice:
    carrier: Preorder
    entailment: Preorder
    closure: np.ndarray
    lift: GaloisConnection
    clsr: GaloisConnection

    def entails(self, premises: int, conclusions: int) -> bool:
        return bool(self.entailment.leq[premises, conclusions])


def theories(lattice: ConceptLattice, adjunctions: Adjunctions | None = None) -> TheoryLattice:
    """Theories (type subsets) of ``L`` under entailment, with the factorization of ``intent_L``."""
    _check_powerset_base(len(lattice.types), "types")
    adjunctions = adjunctions if adjunctions is not None else extent_intent_adjunctions(lattice)
    intent = adjunctions.intent
    pieces = kernel_factorize(intent)
    closure = intent.interior
    carrier = powerset_order(lattice.types)

    ensure(
        all(is_subset(y, int(closure[y])) for y in range(len(carrier))),
        "closure is extensive",
        "Y is not contained in clo(Y)",
    )
    ensure(np.array_equal(closure[closure], closure), "closure is idempotent", "clo(clo(Y)) differs from clo(Y)")
    entailment = _inclusion_matrix([int(c) for c in closure]).T
    ensure(
        np.array_equal(entailment, pieces.ker_right.leq),
        "entailment is the kernel of tau",
        "Entailment differs from the kernel preorder of tau_L",
    )
    mismatch = connection_mismatch(compose_galois(pieces.lift1_g, pieces.int_g), intent)
    ensure(mismatch is None, "lift o clsr = intent", "Theory factorization differs from intent_L", mismatch=mismatch)
    return TheoryLattice(
        carrier=carrier,
        entailment=pieces.ker_right,
        closure=frozen_array(closure, np.int64),
        lift=pieces.lift1_g,
        clsr=pieces.int_g,
    )


def theory_morphism(
    h: ConceptMorphism,
    source_theories: TheoryLattice | None = None,
    target_theories: TheoryLattice | None = None,
) -> GaloisConnection:
    """``th(h) : th(L2) <-> th(L1)`` with left ``clo2`` then ``typ^-1`` and right the direct image along ``typ``."""
    th1 = source_theories if source_theories is not None else theories(h.source)
    th2 = target_theories if target_theories is not None else theories(h.target)
    typ = h.typ_function()
    left = [inverse_image(typ, int(th2.closure[y2])) for y2 in range(len(th2.carrier))]
    right = []
    for y1 in range(len(th1.carrier)):
        image = 0
        for t in iter_bits(y1):
            image |= 1 << int(h.typ_map[t])
        right.append(image)
    return GaloisConnection(th2.entailment, th1.entailment, left, right)


def extent_quartet(h: ConceptMorphism, source: Adjunctions | None = None, target: Adjunctions | None = None) -> Quartet:
    """``<dir(inst h), adj h> : extent_L2 => extent_L1``."""
    source = source if source is not None else extent_intent_adjunctions(h.source)
    target = target if target is not None else extent_intent_adjunctions(h.target)
    return check_quartet(target.extent, source.extent, from_function(h.inst_function()), h.adjunction)


def intent_quartet(h: ConceptMorphism, source: Adjunctions | None = None, target: Adjunctions | None = None) -> Quartet:
    """``<adj h, inv(typ h)> : intent_L2 => intent_L1``."""
    source = source if source is not None else extent_intent_adjunctions(h.source)
    target = target if target is not None else extent_intent_adjunctions(h.target)
    return check_quartet(target.intent, source.intent, h.adjunction, inverse_connection(h.typ_function()))
