"""Finite preorders, monotone maps, kernel preorders, bounds and subset images.

Every order is a dense boolean matrix over contiguous indices; labels live beside it.
Equivalence classes (mutual ``<=``) are never quotiented: operations hand back the
least index of a class as its canonical representative.
"""

import logging
from collections.abc import Hashable, Iterable, Sequence
from enum import StrEnum

import numpy as np

from fca_engine.config import MAX_POWERSET_BASE
from fca_engine.errors import (
    CapacityExceeded,
    DuplicateLabel,
    NoBound,
    NotMonotone,
    NotReflexive,
    NotTransitive,
    UnknownLabel,
    ensure,
)
from fca_engine.utils.bitsets import iter_bits, subset_labels

logger = logging.getLogger(__name__)


class MapKind(StrEnum):
    MONOTONE = "monotone"
    ISOTONE = "isotone"


class Extremum(StrEnum):
    MEET = "meet"
    JOIN = "join"


def frozen_array(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.flags.writeable = False
    return array


def index_labels(labels: Iterable[Hashable]) -> tuple[tuple[str, ...], dict[str, int]]:
    names = tuple(str(label) for label in labels)
    index: dict[str, int] = {}
    for i, name in enumerate(names):
        if name in index:
            raise DuplicateLabel(f"Duplicate label '{name}'", label=name)
        index[name] = i
    return names, index


class Preorder:
    """A finite preorder ``<elements, leq>``; ``leq[a, b]`` reads ``a <= b``.

    The constructor trusts its matrix. Use :func:`make_preorder` for unchecked input.
    """

    __slots__ = ("labels", "leq", "_index")

    def __init__(self, labels: Iterable[Hashable], leq):
        self.labels, self._index = index_labels(labels)
        self.leq = frozen_array(leq, bool)
        n = len(self.labels)
        if self.leq.shape != (n, n):
            raise ValueError(f"leq must be {n}x{n}, got {self.leq.shape}")

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"Preorder({len(self)} elements, {int(self.leq.sum())} pairs)"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Preorder)
            and self.labels == other.labels
            and np.array_equal(self.leq, other.leq)
        )

    __hash__ = None

    def index(self, label: Hashable) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownLabel(f"Unknown element '{label}'", label=str(label)) from None

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def equivalent(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b] and self.leq[b, a])

    @property
    def equivalence(self) -> np.ndarray:
        return self.leq & self.leq.T

    def canonical(self, a: int) -> int:
        return int(np.argmax(self.equivalence[a]))

    def canonical_map(self) -> np.ndarray:
        # argmax picks the first True; the diagonal guarantees one exists
        return np.argmax(self.equivalence, axis=1)

    def is_poset(self) -> bool:
        return bool(np.array_equal(self.equivalence, np.eye(len(self), dtype=bool)))

    def opposite(self) -> "Preorder":
        return Preorder(self.labels, self.leq.T)

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in np.argwhere(self.leq)]


def _transitive_closure(leq: np.ndarray) -> np.ndarray:
    closure = leq.copy()
    for k in range(len(closure)):
        closure |= np.outer(closure[:, k], closure[k, :])
    return closure


def _check_reflexive(labels: Sequence[str], leq: np.ndarray) -> None:
    missing = np.flatnonzero(~np.diag(leq))
    if len(missing):
        a = labels[missing[0]]
        raise NotReflexive(f"Element '{a}' is not below itself", element=a)


def _check_transitive(labels: Sequence[str], leq: np.ndarray) -> None:
    as_int = leq.astype(np.int32)
    violations = np.argwhere(((as_int @ as_int) > 0) & ~leq)
    if len(violations):
        a, c = violations[0]
        b = int(np.flatnonzero(leq[a] & leq[:, c])[0])
        raise NotTransitive(
            f"'{labels[a]}' <= '{labels[b]}' <= '{labels[c]}' but not '{labels[a]}' <= '{labels[c]}'",
            chain=[labels[a], labels[b], labels[c]],
        )


def make_preorder(
    labels: Iterable[Hashable],
    pairs: Iterable[tuple[Hashable, Hashable]],
    close: bool = False,
) -> Preorder:
    """Build a preorder from ordered pairs, closing them or validating them as given."""
    names, index = index_labels(labels)
    n = len(names)
    leq = np.zeros((n, n), dtype=bool)
    for a, b in pairs:
        for label in (a, b):
            if str(label) not in index:
                raise UnknownLabel(f"Pair references unknown element '{label}'", label=str(label))
        leq[index[str(a)], index[str(b)]] = True

    if close:
        leq |= np.eye(n, dtype=bool)
        leq = _transitive_closure(leq)
    else:
        _check_reflexive(names, leq)
        _check_transitive(names, leq)
    return Preorder(names, leq)


def validate_preorder(preorder: Preorder) -> Preorder:
    _check_reflexive(preorder.labels, preorder.leq)
    _check_transitive(preorder.labels, preorder.leq)
    return preorder


def chain(n: int) -> Preorder:
    return Preorder(range(n), np.triu(np.ones((n, n), dtype=bool)))


def antichain(labels: Iterable[Hashable]) -> Preorder:
    names = tuple(labels)
    return Preorder(names, np.eye(len(names), dtype=bool))


def powerset_order(base_labels: Sequence[Hashable]) -> Preorder:
    """Subsets of ``base_labels`` under inclusion; element index == subset bitmask."""
    n = len(base_labels)
    if n > MAX_POWERSET_BASE:
        raise CapacityExceeded(
            f"Powerset of {n} elements exceeds the cap of {MAX_POWERSET_BASE}",
            size=n,
            limit=MAX_POWERSET_BASE,
        )
    masks = np.arange(1 << n)
    leq = (masks[:, None] & ~masks[None, :]) == 0
    return Preorder(subset_labels([str(label) for label in base_labels]), leq)


class MonotoneMap:
    """An order-preserving total function between two preorders."""

    __slots__ = ("source", "target", "map")

    def __init__(self, source: Preorder, target: Preorder, mapping: Sequence[int]):
        self.source = source
        self.target = target
        self.map = frozen_array(mapping, np.int64)
        if self.map.shape != (len(source),):
            raise ValueError(f"Map must have {len(source)} entries, got {self.map.shape}")
        if len(self.map) and (self.map.min() < 0 or self.map.max() >= len(target)):
            raise UnknownLabel("Map value outside the target carrier")

        broken = np.argwhere(source.leq & ~target.leq[np.ix_(self.map, self.map)])
        if len(broken):
            a1, a2 = (int(i) for i in broken[0])
            raise NotMonotone(
                f"'{source.labels[a1]}' <= '{source.labels[a2]}' is not preserved",
                pair=[source.labels[a1], source.labels[a2]],
            )

    def __call__(self, a: int) -> int:
        return int(self.map[a])

    def __repr__(self) -> str:
        return f"MonotoneMap({len(self.source)} -> {len(self.target)})"


def classify_map(f: MonotoneMap) -> MapKind:
    reflected = np.array_equal(f.source.leq, f.target.leq[np.ix_(f.map, f.map)])
    return MapKind.ISOTONE if reflected else MapKind.MONOTONE


def kernel_preorder(f: MonotoneMap) -> Preorder:
    """Pull the target order back along ``f``: ``a1 <= a2`` iff ``f(a1) <= f(a2)``."""
    kernel = Preorder(f.source.labels, f.target.leq[np.ix_(f.map, f.map)])
    ensure(
        bool(np.all(kernel.leq[f.source.leq])),
        "kernel contains source order",
        "Source order is not contained in the kernel preorder",
    )
    ensure(
        classify_map(MonotoneMap(kernel, f.target, f.map)) is MapKind.ISOTONE,
        "kernel isotone",
        "Map is not isotone from its kernel",
    )
    MonotoneMap(f.source, kernel, np.arange(len(f.source)))
    return kernel


def extremum(preorder: Preorder, subset: Iterable[int], kind: Extremum) -> int:
    """Canonical greatest lower bound (meet) or least upper bound (join) of ``subset``."""
    leq = preorder.leq
    members = np.fromiter(subset, dtype=np.int64)
    if kind is Extremum.MEET:
        bounds = np.all(leq[:, members], axis=1)
        best = bounds & np.all(leq[bounds], axis=0)
    else:
        bounds = np.all(leq[members, :], axis=0)
        best = bounds & np.all(leq[:, bounds], axis=1)

    candidates = np.flatnonzero(best)
    if not len(candidates):
        names = [preorder.labels[i] for i in members]
        raise NoBound(f"No {kind} exists for {names}", subset=names, kind=str(kind))
    return int(candidates[0])


def missing_meet(preorder: Preorder) -> list[int] | None:
    """Return a subset without a meet, or ``None`` when ``preorder`` is a complete lattice.

    A finite order with a top and all binary meets has every meet and join, so only
    the empty subset and pairs are inspected.
    """
    leq = preorder.leq
    n = len(preorder)
    if n == 0:
        return []
    if not np.any(np.all(leq, axis=0)):
        return []
    for a in range(n):
        # lower[x, b]: x <= a and x <= b
        lower = leq[:, a][:, None] & leq
        # greatest[m, b]: m is a lower bound above every other lower bound of {a, b}
        greatest = lower & np.all(~lower[:, None, :] | leq[:, :, None], axis=0)
        lacking = np.flatnonzero(~np.any(greatest, axis=0))
        if len(lacking):
            return [a, int(lacking[0])]
    return None


def is_order_isomorphism(source: Preorder, target: Preorder, mapping: Sequence[int]) -> bool:
    mapping = np.asarray(mapping, dtype=np.int64)
    if len(source) != len(target) or len(mapping) != len(source):
        return False
    if len(np.unique(mapping)) != len(mapping):
        return False
    return bool(np.array_equal(source.leq, target.leq[np.ix_(mapping, mapping)]))


def covers(preorder: Preorder) -> list[tuple[int, int]]:
    """Hasse cover pairs ``(lower, upper)`` of the strict order."""
    strict = preorder.leq & ~preorder.leq.T
    as_int = strict.astype(np.int32)
    between = (as_int @ as_int) > 0
    return [(int(a), int(b)) for a, b in np.argwhere(strict & ~between)]


class SetFunction:
    """A total function between finite labelled sets."""

    __slots__ = ("source", "target", "map")

    def __init__(self, source: Iterable[Hashable], target: Iterable[Hashable], mapping: Sequence[int]):
        self.source, _ = index_labels(source)
        self.target, _ = index_labels(target)
        self.map = frozen_array(mapping, np.int64)
        if self.map.shape != (len(self.source),):
            raise ValueError(f"Function must have {len(self.source)} entries, got {self.map.shape}")
        if len(self.map) and (self.map.min() < 0 or self.map.max() >= len(self.target)):
            raise UnknownLabel("Function value outside the target set")

    def __call__(self, a: int) -> int:
        return int(self.map[a])

    def __repr__(self) -> str:
        return f"SetFunction({len(self.source)} -> {len(self.target)})"


def direct_image(h: SetFunction, subset: int) -> int:
    image = 0
    for a in iter_bits(subset):
        image |= 1 << int(h.map[a])
    return image


def inverse_image(h: SetFunction, subset: int) -> int:
    preimage = 0
    for a, b in enumerate(h.map):
        if subset >> int(b) & 1:
            preimage |= 1 << a
    return preimage
