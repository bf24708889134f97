"""Synchronization circles from two strings over disjoint alphabets.

Concatenating a ceil(n/2)-length and a floor(n/2)-length synchronization
string whose alphabets do not overlap yields a synchronization circle of
length n: any rotation cuts the wrap into pieces that either fall inside
one half (covered by that half's own property) or cross an alphabet
boundary, where the disjointness kills common subsequences.  The alphabet
only doubles.
"""

from __future__ import annotations

from .metrics import SymbolSeq
from .verifier import SyncString, verify_sync_string


def build_circle(s1: SyncString, s2: SyncString, *, check_inputs: bool = False) -> SyncString:
    """Concatenate ``s1`` and ``s2`` into a circle over the disjoint union alphabet.

    ``s1`` keeps its symbol values; ``s2``'s are shifted up by s1's
    alphabet size, realizing the disjointness.  Lengths must split an
    n-length target as ceil/floor halves, i.e. len(s1) - len(s2) in {0, 1}.
    With ``check_inputs`` both inputs are re-verified instead of trusted.
    """
    if s1.epsilon != s2.epsilon:
        raise ValueError(
            f"halves disagree on epsilon: {s1.epsilon} vs {s2.epsilon}"
        )
    if len(s1) - len(s2) not in (0, 1):
        raise ValueError(
            f"lengths {len(s1)}/{len(s2)} are not a ceil/floor split of their sum"
        )
    if check_inputs:
        for label, s in (("first", s1), ("second", s2)):
            report = verify_sync_string(s, max_length=None)
            if not report.ok:
                raise ValueError(
                    f"{label} input fails verification at witness {report.witness}"
                )
    a1 = s1.seq.alphabet_size
    merged = tuple(s1.seq.symbols) + tuple(sym + a1 for sym in s2.seq.symbols)
    return SyncString(
        SymbolSeq(merged, a1 + s2.seq.alphabet_size), s1.epsilon
    )
