"""Vertex sets packed into Python ints (bit v set <=> vertex v present)."""

from typing import Iterable, Iterator, Tuple


def mask_of(vertices: Iterable[int]) -> int:
    """Pack vertices into a bitmask."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(mask: int) -> Tuple[int, ...]:
    return tuple(iter_bits(mask))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def map_mask(mask: int, image: Tuple[int, ...]) -> int:
    """Image of a vertex set under a permutation given as an image tuple."""
    out = 0
    for v in iter_bits(mask):
        out |= 1 << image[v]
    return out


def colex_subsets(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Yield the k-subsets of {0..n-1} in colexicographic order.

    Colex compares subsets by their largest element first, so every subset of
    {0..m-1} comes before any subset containing m.
    """
    if k == 0:
        yield ()
        return
    for top in range(k - 1, n):
        for rest in colex_subsets(top, k - 1):
            yield rest + (top,)
