"""Seeded randomness and constant-time distinct draws.

`SeededRng` is a 64-bit-seedable xoshiro256** stream (seeded through
splitmix64, both with published reference outputs), identical across
platforms and backends.  `FySequence` is a prepared Fisher-Yates
permutation: after an O(n) preparation it serves distinct values from
[0, n) in O(1) per draw with a dynamic bound, which is what the estimator
needs to sample roots without replacement.  Preparation cost is by
convention not part of any measured estimator time.

A quadratic-residue / format-preserving scheme could serve distinct values
without the linear preparation, but only for moduli of a special form; the
dynamic per-call bounds here rule it out, hence Fisher-Yates.
"""

from __future__ import annotations

from .backend import Rng as SeededRng, derive_seed, mix64  # re-exported
from .errors import SequenceExhaustedError

__all__ = [
    "SeededRng",
    "FySequence",
    "fy_prepare",
    "fy_next",
    "derive_seed",
    "mix64",
]


class FySequence:
    """Partially shuffled identity permutation serving distinct draws.

    Each draw swaps the cursor position with a uniform position in
    [cursor, n) and returns the value now at the cursor: after k draws the
    k returned values are distinct and uniformly distributed.  Single-owner,
    like the rng driving it.
    """

    __slots__ = ("n", "perm", "cursor", "_rng")

    def __init__(self, n: int, rng, perm=None):
        if n < 1:
            raise ValueError("domain size must be >= 1")
        self.n = n
        self.perm = list(range(n)) if perm is None else perm
        self.cursor = 0
        self._rng = rng

    def next(self) -> int:
        """Next distinct value; raises once all n values were served."""
        cur = self.cursor
        if cur >= self.n:
            raise SequenceExhaustedError(
                f"all {self.n} distinct values already drawn"
            )
        perm = self.perm
        j = self._rng.uniform_int(cur, self.n - 1)
        perm[cur], perm[j] = perm[j], perm[cur]
        self.cursor = cur + 1
        return int(perm[cur])

    def draws_served(self) -> int:
        return self.cursor

    def take(self, k: int) -> list[int]:
        """The next k distinct values."""
        return [self.next() for _ in range(k)]


def fy_prepare(n: int, rng) -> FySequence:
    """Prepare a Fisher-Yates sequence over [0, n)."""
    return FySequence(n, rng)


def fy_next(seq: FySequence) -> int:
    """Draw the next distinct value from a prepared sequence."""
    return seq.next()
