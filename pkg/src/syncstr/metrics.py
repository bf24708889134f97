"""Exact string-distance kernels: edit distance, LCS, Hamming distance.

Everything here works on sequences of plain integers.  Alphabets, however
exotic (product alphabets, shifted alphabets), are flattened to integer
ranges by the callers; these kernels never see anything but ints.

Edit distance is insertion/deletion only.  A substitution is not a unit
operation: replacing one symbol costs 2 (delete + insert).  Under that
cost model the identity ``ED(a, b) == len(a) + len(b) - 2 * LCS(a, b)``
holds, which the verifier exploits heavily.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence


@dataclass(frozen=True)
class SymbolSeq:
    """A finite string over the integer alphabet ``{0, ..., alphabet_size-1}``.

    Behaves like an immutable sequence of ints; ``alphabet_size`` rides
    along so downstream constructions can relabel/flatten symbols.
    """

    symbols: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be positive")
        for s in self.symbols:
            if not 0 <= s < self.alphabet_size:
                raise ValueError(
                    f"symbol {s} out of range for alphabet of size {self.alphabet_size}"
                )

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, idx):
        return self.symbols[idx]

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)


def lcs(a: Sequence[int], b: Sequence[int]) -> int:
    """Length of the longest common subsequence of ``a`` and ``b``."""
    return lcs_all_prefixes(a, b)[len(b)]


def lcs_all_prefixes(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """``[lcs(a, b[:p]) for p in 0..len(b)]`` from a single DP sweep.

    One rolling row, O(len(b)) space; entry 0 is 0, the row is
    non-decreasing with steps of at most 1, and the last entry is
    ``lcs(a, b)``.
    """
    row = [0] * (len(b) + 1)
    bs = list(b)
    for x in a:
        prev_diag = 0  # row value one up-left of position p
        for p in range(1, len(bs) + 1):
            cur = row[p]
            if bs[p - 1] == x:
                val = prev_diag + 1
                if val > cur:
                    row[p] = val
            else:
                left = row[p - 1]
                if left > cur:
                    row[p] = left
            prev_diag = cur
    return row


def edit_distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Minimum number of single-symbol insertions and deletions turning ``a`` into ``b``.

    Deliberately computed by its own insert/delete DP rather than through
    ``lcs``: the two routes stay independent so the ED/LCS identity can be
    checked between them.
    """
    if len(a) < len(b):
        a, b = b, a
    # row[j] = ED(a[:i], b[:j]) while sweeping i
    row = list(range(len(b) + 1))
    for i in range(1, len(a) + 1):
        prev_diag = row[0]
        row[0] = i
        ai = a[i - 1]
        for j in range(1, len(b) + 1):
            cur = row[j]
            if b[j - 1] == ai:
                row[j] = prev_diag
            else:
                # delete a[i-1] or insert b[j-1]
                row[j] = min(cur, row[j - 1]) + 1
            prev_diag = cur
    return row[len(b)]


def hamming_distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Number of positions where equal-length ``a`` and ``b`` differ."""
    if len(a) != len(b):
        raise ValueError(
            f"hamming distance undefined for lengths {len(a)} and {len(b)}"
        )
    return sum(1 for x, y in zip(a, b) if x != y)
