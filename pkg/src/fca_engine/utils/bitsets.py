"""Subsets of small indexed carriers encoded as int bitmasks (bit i <-> element i)."""

from collections.abc import Iterable, Iterator, Sequence


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    mask = int(mask)
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def indices_of(mask: int) -> list[int]:
    return list(iter_bits(mask))


def full_mask(n: int) -> int:
    return (1 << n) - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def subset_label(mask: int, labels: Sequence[str]) -> str:
    # "{}", "{1}", "{1,2}"
    return "{" + ",".join(labels[i] for i in iter_bits(mask)) + "}"


def subset_labels(labels: Sequence[str]) -> list[str]:
    return [subset_label(mask, labels) for mask in range(1 << len(labels))]


def intersection_table(masks: Sequence[int], full: int) -> list[int]:
    """``table[X]`` is the AND of ``masks[i]`` over ``i in X``; the empty AND is ``full``."""
    table = [full] * (1 << len(masks))
    for subset in range(1, len(table)):
        low = subset & -subset
        table[subset] = table[subset ^ low] & masks[low.bit_length() - 1]
    return table


def union_table(masks: Sequence[int]) -> list[int]:
    """``table[X]`` is the OR of ``masks[i]`` over ``i in X``."""
    table = [0] * (1 << len(masks))
    for subset in range(1, len(table)):
        low = subset & -subset
        table[subset] = table[subset ^ low] | masks[low.bit_length() - 1]
    return table
