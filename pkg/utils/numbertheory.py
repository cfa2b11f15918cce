"""Small number-theory helpers for Paley tournaments."""

from typing import FrozenSet


def is_prime(n: int) -> bool:
    """Trial division; n stays below a few hundred here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def quadratic_residues(n: int) -> FrozenSet[int]:
    """Non-zero squares modulo n."""
    return frozenset(pow(x, 2, n) for x in range(1, n)) - {0}


def is_paley_order(n: int) -> bool:
    """True when n is a prime congruent to 3 mod 4."""
    return is_prime(n) and n % 4 == 3
