"""Definitional verification of synchronization strings and circles.

A string ``S`` of length ``n`` is an epsilon-synchronization string when
every way of cutting a window ``S[i..k]`` into two non-empty halves
``S[i..j]`` / ``S[j+1..k]`` (``1 <= i <= j < k <= n``, 1-based, ends
included) leaves the halves far apart in insert/delete edit distance:

    ED(S[i..j], S[j+1..k]) > (1 - epsilon) * (k - i)

The inequality is strict, and the comparison is done in exact rational
arithmetic (epsilon is a ``Fraction``), so a tie at the threshold is a
failure and no boundary case can be misclassified by floating point.

A synchronization circle is a string all of whose rotations are
synchronization strings.

The main check runs the canonical sweep: for every pair (i, j) one
LCS-against-all-prefixes pass over the suffix yields the edit distance
for every k at once via ED = (k-i+1) - 2*LCS, i.e. O(n^4) total work.
An independently written per-triple verifier lives in the test suite and
is held in agreement with this one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .metrics import SymbolSeq, hamming_distance, lcs, lcs_all_prefixes

#: refuse longer inputs unless the caller overrides; the sweep is O(n^4)
DEFAULT_MAX_VERIFY_LENGTH = 4096

#: below this left*right area the pure-Python row beats numpy call overhead
_NUMPY_AREA_CUTOFF = 512


@dataclass(frozen=True)
class SyncString:
    """A symbol sequence together with the epsilon it claims to satisfy."""

    seq: SymbolSeq
    epsilon: Fraction

    def __post_init__(self) -> None:
        eps = Fraction(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if not 0 < eps < 1:
            raise ValueError(f"epsilon must lie strictly in (0,1), got {eps}")
        if len(self.seq) == 0:
            raise ValueError("sequence must be non-empty")

    def __len__(self) -> int:
        return len(self.seq)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a string/circle check.

    On failure ``witness`` is the lexicographically smallest violating
    triple (i, j, k), 1-based.  For circle checks the triple is folded to
    absolute positions of the unrotated string (so it may wrap past n)
    and ``rotation`` holds the 1-based start offset of the failing
    rotation; for plain string checks ``rotation`` is None.
    """

    ok: bool
    witness: tuple[int, int, int] | None = None
    measured_ed: int | None = None
    threshold: Fraction | None = None
    rotation: int | None = None

    def __post_init__(self) -> None:
        if self.ok and self.witness is not None:
            raise ValueError("passing report must not carry a witness")
        if not self.ok:
            if self.witness is None or self.measured_ed is None or self.threshold is None:
                raise ValueError("failing report must carry witness, ed and threshold")
            if self.measured_ed > self.threshold:
                raise ValueError("witness does not actually violate the threshold")


def _check_symbols(
    symbols: tuple[int, ...], num: int, den: int
) -> tuple[int, int, int, int, Fraction] | None:
    """Scan all (i, j, k) in lexicographic order; return the first violation.

    Returns (i, j, k, ed, threshold) or None.  Violation means
    ed * den <= (den - num) * (k - i), the exact-rational negation of the
    strict definitional inequality.
    """
    n = len(symbols)
    dmn = den - num
    # int64 stays safe while (2n+2)*max(den,|dmn|) fits; fall back otherwise
    use_numpy = (2 * n + 2) * max(den, abs(dmn)) < 2**62
    arr = np.asarray(symbols, dtype=np.int64) if use_numpy else None

    for i in range(1, n + 1):
        for j in range(i, n):
            left_len = j - i + 1
            right_len = n - j
            if use_numpy and left_len * right_len >= _NUMPY_AREA_CUTOFF:
                right = arr[j:]
                row = np.zeros(right_len + 1, dtype=np.int64)
                for x in symbols[i - 1 : j]:
                    cand = np.maximum(row[1:], row[:-1] + (right == x))
                    row[1:] = np.maximum.accumulate(cand)
                ks = np.arange(j + 1, n + 1, dtype=np.int64)
                ed = (ks - i + 1) - 2 * row[1:]
                viol = ed * den <= dmn * (ks - i)
                if viol.any():
                    off = int(np.argmax(viol))
                    k = j + 1 + off
                    return (
                        i,
                        j,
                        k,
                        int(ed[off]),
                        Fraction(dmn * (k - i), den),
                    )
            else:
                row = lcs_all_prefixes(symbols[i - 1 : j], symbols[j:])
                for k in range(j + 1, n + 1):
                    ed = (k - i + 1) - 2 * row[k - j]
                    if ed * den <= dmn * (k - i):
                        return i, j, k, ed, Fraction(dmn * (k - i), den)
    return None


def _guard_length(n: int, max_length: int | None) -> None:
    if max_length is not None and n > max_length:
        raise ValueError(
            f"refusing to verify length {n} > {max_length}: the check is O(n^4); "
            "pass max_length=None to override"
        )


def verify_sync_string(
    s: SyncString, *, max_length: int | None = DEFAULT_MAX_VERIFY_LENGTH
) -> VerificationReport:
    """Decide whether ``s`` satisfies the synchronization-string inequality.

    On failure the report carries the lexicographically smallest violating
    (i, j, k), the measured edit distance between the two halves and the
    exact threshold (1-epsilon)(k-i) it failed to exceed.
    """
    _guard_length(len(s), max_length)
    num, den = s.epsilon.numerator, s.epsilon.denominator
    hit = _check_symbols(s.seq.symbols, num, den)
    if hit is None:
        return VerificationReport(ok=True)
    i, j, k, ed, thr = hit
    return VerificationReport(
        ok=False, witness=(i, j, k), measured_ed=ed, threshold=thr
    )


def verify_sync_circle(
    s: SyncString, *, max_length: int | None = DEFAULT_MAX_VERIFY_LENGTH
) -> VerificationReport:
    """Check every rotation of ``s``; all must be synchronization strings.

    Rotations are tried in order of their 1-based start offset, so the
    reported failure is the first failing rotation with its smallest
    witness, folded back to absolute positions of the original string.
    """
    _guard_length(len(s), max_length)
    num, den = s.epsilon.numerator, s.epsilon.denominator
    symbols = s.seq.symbols
    n = len(symbols)
    for r in range(n):
        rotated = symbols[r:] + symbols[:r]
        hit = _check_symbols(rotated, num, den)
        if hit is not None:
            i, j, k, ed, thr = hit
            folded = tuple((r + p - 1) % n + 1 for p in (i, j, k))
            return VerificationReport(
                ok=False,
                witness=folded,
                measured_ed=ed,
                threshold=thr,
                rotation=r + 1,
            )
    return VerificationReport(ok=True)


@dataclass(frozen=True)
class CodeAudit:
    """Measured (not designed) distance profile of a block code."""

    max_pairwise_lcs: int | None
    min_hamming_distance: int | None
    circles_ok: bool | None = None
    first_failing_codeword: int | None = None


def audit_code(code, as_circle_epsilon: Fraction | None = None) -> CodeAudit:
    """Exhaustively measure a code's pairwise LCS and Hamming profile.

    ``code`` is any object with ``codewords`` (sequence of equal-length
    int sequences).  With ``as_circle_epsilon`` set, additionally check
    that every codeword individually verifies as a synchronization circle
    at that epsilon.
    """
    words = [tuple(w) for w in code.codewords]
    if not words:
        raise ValueError("cannot audit an empty code")
    if len({len(w) for w in words}) != 1:
        raise ValueError("codewords must share one block length")

    max_lcs: int | None = None
    min_ham: int | None = None
    for a in range(len(words)):
        for b in range(a + 1, len(words)):
            l = lcs(words[a], words[b])
            h = hamming_distance(words[a], words[b])
            max_lcs = l if max_lcs is None else max(max_lcs, l)
            min_ham = h if min_ham is None else min(min_ham, h)

    circles_ok: bool | None = None
    failing: int | None = None
    if as_circle_epsilon is not None:
        eps = Fraction(as_circle_epsilon)
        circles_ok = True
        q = max(max(w) for w in words) + 1
        for idx, w in enumerate(words):
            rep = verify_sync_circle(
                SyncString(SymbolSeq(w, q), eps), max_length=None
            )
            if not rep.ok:
                circles_ok = False
                failing = idx
                break
    return CodeAudit(
        max_pairwise_lcs=max_lcs,
        min_hamming_distance=min_ham,
        circles_ok=circles_ok,
        first_failing_codeword=failing,
    )
