"""Classifications (formal contexts) and infomorphisms between them.

Subsets are int bitmasks over the instance or type index. Incidence is a boolean
matrix with one row per instance.
"""

import logging
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from fca_engine.config import MAX_POWERSET_BASE
from fca_engine.errors import BoundaryMismatch, CapacityExceeded, FundamentalConditionViolated, UnknownLabel, ensure
from fca_engine.galois import GaloisConnection, from_relation
from fca_engine.order_core import Preorder, SetFunction, frozen_array, index_labels, inverse_image
from fca_engine.utils.bitsets import full_mask, iter_bits, mask_of, subset_labels

logger = logging.getLogger(__name__)


class Side(StrEnum):
    INSTANCES = "instances"
    TYPES = "types"


class Classification:
    """``<inst, typ, |=>`` with ``incidence[x, y]`` meaning instance ``x`` has type ``y``."""

    __slots__ = ("instances", "types", "incidence", "row_masks", "col_masks", "_inst_index", "_type_index")

    def __init__(self, instances: Iterable[Hashable], types: Iterable[Hashable], incidence):
        self.instances, self._inst_index = index_labels(instances)
        self.types, self._type_index = index_labels(types)
        shape = (len(self.instances), len(self.types))
        self.incidence = frozen_array(np.asarray(incidence, dtype=bool).reshape(shape), bool)
        # intent of each instance, extent of each type
        self.row_masks = tuple(mask_of(np.flatnonzero(row)) for row in self.incidence)
        self.col_masks = tuple(mask_of(np.flatnonzero(col)) for col in self.incidence.T)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Classification)
            and self.instances == other.instances
            and self.types == other.types
            and np.array_equal(self.incidence, other.incidence)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Classification({len(self.instances)} instances x {len(self.types)} types)"

    def instance_index(self, label: Hashable) -> int:
        try:
            return self._inst_index[str(label)]
        except KeyError:
            raise UnknownLabel(f"Unknown instance '{label}'", label=str(label)) from None

    def type_index(self, label: Hashable) -> int:
        try:
            return self._type_index[str(label)]
        except KeyError:
            raise UnknownLabel(f"Unknown type '{label}'", label=str(label)) from None

    def labels(self, side: Side) -> tuple[str, ...]:
        return self.instances if side is Side.INSTANCES else self.types

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(x), int(y)) for x, y in np.argwhere(self.incidence)]


def make_classification(
    instances: Iterable[Hashable],
    types: Iterable[Hashable],
    incidence: Iterable[tuple[Hashable, Hashable]],
) -> Classification:
    instances, types = list(instances), list(types)
    shell = Classification(instances, types, np.zeros((len(instances), len(types)), dtype=bool))
    matrix = np.zeros(shell.incidence.shape, dtype=bool)
    for x, y in incidence:
        matrix[shell.instance_index(x), shell.type_index(y)] = True
    return Classification(shell.instances, shell.types, matrix)


def derive(context: Classification, side: Side, subset: int) -> int:
    """Derivation: the elements of the other side incident to every member of ``subset``."""
    if side is Side.INSTANCES:
        masks, other = context.row_masks, len(context.types)
    else:
        masks, other = context.col_masks, len(context.instances)
    result = full_mask(other)
    for i in iter_bits(subset):
        result &= masks[i]
    return result


def closure(context: Classification, side: Side, subset: int) -> int:
    other = Side.TYPES if side is Side.INSTANCES else Side.INSTANCES
    return derive(context, other, derive(context, side, subset))


@dataclass(frozen=True)
class ContextKind:
    extensional: bool
    separated: bool


def classify_context(context: Classification) -> ContextKind:
    return ContextKind(
        extensional=len(set(context.col_masks)) == len(context.col_masks),
        separated=len(set(context.row_masks)) == len(context.row_masks),
    )


def _check_base(n: int) -> None:
    if n > MAX_POWERSET_BASE:
        raise CapacityExceeded(
            f"Power classification over {n} elements exceeds {MAX_POWERSET_BASE}",
            size=n,
            limit=MAX_POWERSET_BASE,
        )


def power(base: Sequence[Hashable], side: Side) -> Classification:
    """Instance power ``<X, P(X), in>`` or type power ``<P(X), X, ni>``."""
    _check_base(len(base))
    labels = [str(label) for label in base]
    masks = np.arange(1 << len(labels))
    membership = (masks[None, :] >> np.arange(len(labels))[:, None]) & 1 == 1
    if side is Side.INSTANCES:
        return Classification(labels, subset_labels(labels), membership)
    return Classification(subset_labels(labels), labels, membership.T)


def transpose(context: Classification) -> Classification:
    flipped = Classification(context.types, context.instances, context.incidence.T)
    ensure(
        np.array_equal(flipped.incidence.T, context.incidence),
        "transpose involution",
        "Transposing twice does not give back the context",
    )
    return flipped


def preorder_as_classification(preorder: Preorder) -> Classification:
    return Classification(preorder.labels, preorder.labels, preorder.leq)


def derivation_connection(context: Classification) -> GaloisConnection:
    return from_relation(context.instances, context.types, context.incidence)


class Infomorphism:
    """``f : A1 <-> A2`` with ``inst_map : inst(A2) -> inst(A1)`` and ``typ_map : typ(A1) -> typ(A2)``."""

    __slots__ = ("source", "target", "inst_map", "typ_map")

    def __init__(self, source: Classification, target: Classification, inst_map: Sequence[int], typ_map: Sequence[int]):
        self.source = source
        self.target = target
        self.inst_map = _total(inst_map, len(target.instances), len(source.instances), "inst_map")
        self.typ_map = _total(typ_map, len(source.types), len(target.types), "typ_map")

        # inst(x2) |=1 y1   versus   x2 |=2 typ(y1)
        lhs = source.incidence[self.inst_map]
        rhs = target.incidence[:, self.typ_map]
        broken = np.argwhere(lhs != rhs)
        if len(broken):
            x2, y1 = (int(i) for i in broken[0])
            raise FundamentalConditionViolated(
                f"inst({target.instances[x2]}) |= {source.types[y1]} disagrees with "
                f"{target.instances[x2]} |= typ({source.types[y1]})",
                x2=target.instances[x2],
                y1=source.types[y1],
            )
        ensure(
            ext_naturality(source, target, self.inst_map, self.typ_map),
            "extent naturality",
            "ext(A1).inst^-1 differs from typ.ext(A2)",
        )
        ensure(
            int_naturality(source, target, self.inst_map, self.typ_map),
            "intent naturality",
            "int(A2).typ^-1 differs from inst.int(A1)",
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Infomorphism)
            and self.source == other.source
            and self.target == other.target
            and np.array_equal(self.inst_map, other.inst_map)
            and np.array_equal(self.typ_map, other.typ_map)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Infomorphism({self.source!r} <-> {self.target!r})"

    def inst_function(self) -> SetFunction:
        return SetFunction(self.target.instances, self.source.instances, self.inst_map)

    def typ_function(self) -> SetFunction:
        return SetFunction(self.source.types, self.target.types, self.typ_map)


def _total(mapping: Sequence[int], size: int, bound: int, name: str) -> np.ndarray:
    array = frozen_array(mapping, np.int64)
    if array.shape != (size,):
        raise ValueError(f"{name} must have {size} entries, got {array.shape}")
    if size and (array.min() < 0 or array.max() >= bound):
        raise UnknownLabel(f"{name} value outside its codomain", map=name)
    return array


def fundamental_condition(source: Classification, target: Classification, inst_map, typ_map) -> bool:
    inst_map, typ_map = np.asarray(inst_map, dtype=np.int64), np.asarray(typ_map, dtype=np.int64)
    return bool(np.array_equal(source.incidence[inst_map], target.incidence[:, typ_map]))


def ext_naturality(source: Classification, target: Classification, inst_map, typ_map) -> bool:
    """``inst^-1[ext1(y1)] == ext2(typ(y1))`` for every type ``y1`` of the source."""
    inst = SetFunction(target.instances, source.instances, inst_map)
    return all(
        inverse_image(inst, source.col_masks[y1]) == target.col_masks[int(typ_map[y1])]
        for y1 in range(len(source.types))
    )


def int_naturality(source: Classification, target: Classification, inst_map, typ_map) -> bool:
    """``typ^-1[int2(x2)] == int1(inst(x2))`` for every instance ``x2`` of the target."""
    typ = SetFunction(source.types, target.types, typ_map)
    return all(
        inverse_image(typ, target.row_masks[x2]) == source.row_masks[int(inst_map[x2])]
        for x2 in range(len(target.instances))
    )


def make_infomorphism(source: Classification, target: Classification, inst_map, typ_map) -> Infomorphism:
    return Infomorphism(source, target, inst_map, typ_map)


def identity_infomorphism(context: Classification) -> Infomorphism:
    return Infomorphism(context, context, np.arange(len(context.instances)), np.arange(len(context.types)))


def compose_infomorphisms(f: Infomorphism, g: Infomorphism) -> Infomorphism:
    """``f o g : A1 <-> A3`` with ``inst = inst(g).inst(f)`` and ``typ = typ(f).typ(g)``."""
    if f.target != g.source:
        raise BoundaryMismatch("Target of the first infomorphism differs from the source of the second")
    return Infomorphism(f.source, g.target, f.inst_map[g.inst_map], g.typ_map[f.typ_map])


def power_infomorphism(h: SetFunction, side: Side) -> Infomorphism:
    """Instance power ``<h, h^-1>`` into ``P(h.source)`` or type power ``<h^-1, h>`` out of ``P(h.source)``."""
    if side is Side.INSTANCES:
        # O(h.target) <-> O(h.source)
        source, target = power(h.target, Side.INSTANCES), power(h.source, Side.INSTANCES)
        preimages = [inverse_image(h, mask) for mask in range(1 << len(h.target))]
        return Infomorphism(source, target, h.map, preimages)
    source, target = power(h.source, Side.TYPES), power(h.target, Side.TYPES)
    preimages = [inverse_image(h, mask) for mask in range(1 << len(h.target))]
    return Infomorphism(source, target, preimages, h.map)


def transpose_infomorphism(f: Infomorphism) -> Infomorphism:
    return Infomorphism(transpose(f.target), transpose(f.source), f.typ_map, f.inst_map)


def galois_infomorphism(g: GaloisConnection) -> Infomorphism:
    """``incl(g) : incl(B) <-> incl(A)``; its fundamental condition is adjointness."""
    return Infomorphism(
        preorder_as_classification(g.target),
        preorder_as_classification(g.source),
        g.left,
        g.right,
    )


def unit_counit(context: Classification) -> tuple[Infomorphism, Infomorphism]:
    """``eta = <id, ext> : A <-> O(inst A)`` and ``epsilon = <int, id> : O^(typ A) <-> A``."""
    _check_base(len(context.instances))
    _check_base(len(context.types))
    eta = Infomorphism(
        context,
        power(context.instances, Side.INSTANCES),
        np.arange(len(context.instances)),
        context.col_masks,
    )
    epsilon = Infomorphism(
        power(context.types, Side.TYPES),
        context,
        context.row_masks,
        np.arange(len(context.types)),
    )
    return eta, epsilon


def eta_naturality(f: Infomorphism) -> bool:
    eta1, _ = unit_counit(f.source)
    eta2, _ = unit_counit(f.target)
    lhs = compose_infomorphisms(eta1, power_infomorphism(f.inst_function(), Side.INSTANCES))
    return lhs == compose_infomorphisms(f, eta2)


def epsilon_naturality(f: Infomorphism) -> bool:
    _, epsilon1 = unit_counit(f.source)
    _, epsilon2 = unit_counit(f.target)
    lhs = compose_infomorphisms(epsilon1, f)
    return lhs == compose_infomorphisms(power_infomorphism(f.typ_function(), Side.TYPES), epsilon2)