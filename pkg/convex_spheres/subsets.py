"""Subsets of the ground set [n] as integer bitmasks.

Element i of [n] lives at bit i - 1, so {1, 3} is 0b101. Every deterministic
ordering in the package uses `canonical_key`: cardinality first, then the
numeric mask.
"""

from typing import Iterable, Sequence, Tuple

MAX_GROUND_SET = 20


def bit(i: int) -> int:
    return 1 << (i - 1)


def full(n: int) -> int:
    """Mask of [n]."""
    return (1 << n) - 1


def from_elements(elements: Iterable[int]) -> int:
    mask = 0
    for i in elements:
        mask |= bit(i)
    return mask


def elements(mask: int) -> Tuple[int, ...]:
    """Members of `mask` in increasing order."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def size(mask: int) -> int:
    return bin(mask).count("1")


def canonical_key(mask: int) -> Tuple[int, int]:
    return (size(mask), mask)


def canonical(masks: Iterable[int]) -> list:
    return sorted(masks, key=canonical_key)


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def within(mask: int, n: int) -> bool:
    return mask >= 0 and mask & ~full(n) == 0


def all_subsets(n: int) -> range:
    return range(1 << n)


def format_subset(mask: int, names: Sequence[str] = ()) -> str:
    """Readable form, e.g. "{a,b}" when names are given, else "{1,2}"."""
    if names:
        return "{" + ",".join(names[i - 1] for i in elements(mask)) + "}"
    return "{" + ",".join(str(i) for i in elements(mask)) + "}"
