"""Block-code machinery: greedy codebook search, GF(2^l), Reed-Solomon,
code concatenation, and the codebook file format.

The greedy search realizes the Gilbert-Varshamov-style guarantee: scan
words in lexicographic order and keep every word at Hamming distance at
least d from everything kept so far.  With alphabet size q = ceil(2e/eps)
and distance d = ceil((1-eps)*n) the scan provably reaches 2^(eps*n)
codewords before the space runs out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TextIO

from .metrics import SymbolSeq

# Euler's number pinched between rationals; enough precision that the
# ceilings below never straddle the gap.
_E_LO = Fraction(2718281828459045, 10**15)
_E_HI = Fraction(2718281828459046, 10**15)

#: smallest irreducible polynomial over GF(2) with nonzero constant term,
#: by degree; degree 8 is the familiar 0x11B.  Part of the external
#: contract: field semantics are fixed by this table.
IRREDUCIBLE_POLY = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
}

#: default cap on the greedy search space, q^block_length
DEFAULT_GREEDY_SPACE = 2**28


class CodeSearchExhaustedError(RuntimeError):
    """The greedy scan ran out of words before reaching the target count."""

    def __init__(self, found: int, target: int):
        self.found = found
        self.target = target
        super().__init__(
            f"greedy search exhausted the space with {found} of {target} codewords; "
            "parameters sit outside the counting bound |C| * ball(d-1) <= q^n"
        )


# ---------------------------------------------------------------------------
# binary extension field
# ---------------------------------------------------------------------------


def _gf_mul_int(a: int, b: int, degree: int) -> int:
    """Carry-less multiply then reduce by the fixed modulus for ``degree``."""
    mod = IRREDUCIBLE_POLY[degree]
    top = 1 << degree
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= mod
    return r


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(2^degree) under the module's fixed modulus."""

    value: int
    degree: int

    def __post_init__(self) -> None:
        if self.degree not in IRREDUCIBLE_POLY:
            raise ValueError(f"unsupported field degree {self.degree}")
        if not 0 <= self.value < (1 << self.degree):
            raise ValueError(
                f"value {self.value} outside GF(2^{self.degree})"
            )

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return field_add(self, other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return field_mul(self, other)


def _require_same_degree(a: FieldElement, b: FieldElement) -> None:
    if a.degree != b.degree:
        raise ValueError(f"field degree mismatch: {a.degree} vs {b.degree}")


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    """Addition in GF(2^l): bitwise xor (characteristic 2, x + x = 0)."""
    _require_same_degree(a, b)
    return FieldElement(a.value ^ b.value, a.degree)


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    """Multiplication in GF(2^l), reduced by the fixed irreducible modulus."""
    _require_same_degree(a, b)
    return FieldElement(_gf_mul_int(a.value, b.value, a.degree), a.degree)


# ---------------------------------------------------------------------------
# block codes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockCode:
    """An ordered set of equal-length codewords over an integer alphabet."""

    block_length: int
    alphabet_size: int
    codewords: tuple[SymbolSeq, ...]
    design_distance: int

    def __post_init__(self) -> None:
        if self.block_length < 1:
            raise ValueError("block_length must be positive")
        if self.design_distance < 0:
            raise ValueError("design_distance must be non-negative")
        seen = set()
        for w in self.codewords:
            if len(w) != self.block_length:
                raise ValueError(
                    f"codeword of length {len(w)} in a {self.block_length}-code"
                )
            if w.alphabet_size > self.alphabet_size:
                raise ValueError("codeword alphabet exceeds the code's")
            key = w.symbols
            if key in seen:
                raise ValueError(f"duplicate codeword {key}")
            seen.add(key)


def gv_alphabet_size(eps: Fraction) -> int:
    """q = ceil(2e / eps), computed exactly from rational bounds on e."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    lo = math.ceil(2 * _E_LO / eps)
    hi = math.ceil(2 * _E_HI / eps)
    if lo != hi:
        raise ValueError(f"2e/{eps} too close to an integer to round safely")
    return lo


def gv_parameters(eps: Fraction, block_length: int) -> tuple[int, int, int]:
    """(alphabet q, distance d, guaranteed count) for the greedy code.

    q = ceil(2e/eps), d = ceil((1-eps)*n), count = ceil(2^(eps*n)); the
    ceilings settle the fractional corner cases.
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0,1)")
    q = gv_alphabet_size(eps)
    d = math.ceil((1 - eps) * block_length)
    exponent = eps * block_length
    # exact ceil(2^(p/r)): smallest c with c^r >= 2^p, by binary search
    p, r = exponent.numerator, exponent.denominator
    lo, hi = 1, 1 << -(-p // r)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**r >= 1 << p:
            hi = mid
        else:
            lo = mid + 1
    return q, d, lo


def hamming_ball_size(length: int, radius: int, alphabet_size: int) -> int:
    """Exact number of words within Hamming distance ``radius`` of a word."""
    return sum(
        math.comb(length, i) * (alphabet_size - 1) ** i for i in range(radius + 1)
    )


def greedy_code(
    block_length: int,
    distance: int,
    alphabet_size: int,
    target_count: int,
    *,
    max_space: int | None = DEFAULT_GREEDY_SPACE,
) -> BlockCode:
    """Lexicographic greedy codebook: keep every word at distance >= d from
    all kept words, starting from the all-zero word.

    Implemented as a lexicographic scan with prefix pruning: a prefix that
    can no longer reach distance d against some kept word skips its whole
    subtree.  The accepted set is identical to the plain one-by-one scan.
    ``max_space`` guards q^n (None disables the guard; safe whenever
    d = n, where the scan provably touches O(q * count) prefixes).
    """
    if alphabet_size < 2:
        raise ValueError("alphabet_size must be at least 2")
    if not 1 <= distance <= block_length:
        raise ValueError("need 1 <= distance <= block_length")
    if target_count < 1:
        raise ValueError("target_count must be positive")
    if max_space is not None and alphabet_size**block_length > max_space:
        raise ValueError(
            f"{alphabet_size}^{block_length} candidates exceed the guard {max_space}; "
            "pass max_space=None to override"
        )

    n, d, q = block_length, distance, alphabet_size
    kept: list[tuple[int, ...]] = []
    word = [0] * n
    while True:
        # shallowest prefix end already doomed vs some kept codeword; the
        # doom margin mismatches + remaining only drops at match positions,
        # so a full pass without a break implies final distance >= d
        doom: int | None = None
        for c in kept:
            mismatches = 0
            for p in range(n):
                if word[p] != c[p]:
                    mismatches += 1
                elif mismatches + (n - p - 1) < d:
                    if doom is None or p < doom:
                        doom = p
                    break
            else:
                assert mismatches >= d
            if doom == 0:
                break
        if doom is None:
            kept.append(tuple(word))
            if len(kept) == target_count:
                break
            doom = n - 1  # move on lexicographically
        # advance: increment at doom position, reset the suffix, carry left
        pos = doom
        while pos >= 0 and word[pos] == q - 1:
            pos -= 1
        if pos < 0:
            raise CodeSearchExhaustedError(len(kept), target_count)
        word[pos] += 1
        for p in range(pos + 1, n):
            word[p] = 0

    return BlockCode(
        block_length=n,
        alphabet_size=q,
        codewords=tuple(SymbolSeq(w, q) for w in kept),
        design_distance=d,
    )


def rs_encode(
    message: Sequence[FieldElement], eval_points: Sequence[FieldElement]
) -> SymbolSeq:
    """Evaluate the message polynomial (coefficients low-order first) at
    each point; the resulting code has minimum distance n - k + 1.

    Evaluation is plain Horner per point, O(n*k) field multiplications;
    fine at these block lengths.
    """
    if not message:
        raise ValueError("message must be non-empty")
    degree = message[0].degree
    for el in list(message) + list(eval_points):
        if el.degree != degree:
            raise ValueError("message and evaluation points must share one field")
    if len(message) > len(eval_points):
        raise ValueError("message longer than the number of evaluation points")
    if len(eval_points) > 1 << degree:
        raise ValueError("more evaluation points than field elements")
    if len({p.value for p in eval_points}) != len(eval_points):
        raise ValueError("evaluation points must be pairwise distinct")

    coeffs = [m.value for m in message]
    out = []
    for pt in eval_points:
        acc = 0
        for c in reversed(coeffs):
            acc = _gf_mul_int(acc, pt.value, degree) ^ c
        out.append(acc)
    return SymbolSeq(tuple(out), 1 << degree)


def default_eval_points(degree: int, count: int) -> list[FieldElement]:
    """The first ``count`` field elements in value order 0, 1, 2, ..."""
    if count > 1 << degree:
        raise ValueError(f"GF(2^{degree}) has fewer than {count} elements")
    return [FieldElement(v, degree) for v in range(count)]


def rs_code(
    degree: int, message_length: int, block_length: int, count: int
) -> BlockCode:
    """Block code of the first ``count`` messages (as base-2^l integers,
    low-order digit = low-order coefficient) under Reed-Solomon encoding."""
    field_size = 1 << degree
    if count > field_size**message_length:
        raise ValueError(
            f"only {field_size}^{message_length} distinct messages exist"
        )
    points = default_eval_points(degree, block_length)
    words = []
    for index in range(count):
        digits = []
        rest = index
        for _ in range(message_length):
            digits.append(FieldElement(rest % field_size, degree))
            rest //= field_size
        words.append(rs_encode(digits, points))
    return BlockCode(
        block_length=block_length,
        alphabet_size=field_size,
        codewords=tuple(words),
        design_distance=block_length - message_length + 1,
    )


def concat_code(outer: BlockCode, inner: BlockCode) -> BlockCode:
    """Concatenation: every outer symbol is replaced by the inner codeword
    of that index.  Distance multiplies, the alphabet becomes the inner's."""
    if len(inner.codewords) < outer.alphabet_size:
        raise ValueError(
            f"inner code has {len(inner.codewords)} codewords, "
            f"outer alphabet needs {outer.alphabet_size}"
        )
    words = []
    for ow in outer.codewords:
        expanded: list[int] = []
        for sym in ow:
            expanded.extend(inner.codewords[sym].symbols)
        words.append(SymbolSeq(tuple(expanded), inner.alphabet_size))
    return BlockCode(
        block_length=outer.block_length * inner.block_length,
        alphabet_size=inner.alphabet_size,
        codewords=tuple(words),
        design_distance=outer.design_distance * inner.design_distance,
    )


# ---------------------------------------------------------------------------
# codebook file format (shared with the CLI)
# ---------------------------------------------------------------------------


def write_codebook(fp: TextIO, code: BlockCode) -> None:
    """Header ``blocklen q count distance``, then one codeword per line."""
    fp.write(
        f"{code.block_length} {code.alphabet_size} "
        f"{len(code.codewords)} {code.design_distance}\n"
    )
    for w in code.codewords:
        fp.write(" ".join(str(s) for s in w) + "\n")


def read_codebook(fp: TextIO) -> BlockCode:
    header = fp.readline().split()
    if len(header) != 4:
        raise ValueError("codebook header must be 'blocklen q count distance'")
    block_length, q, count, distance = (int(x) for x in header)
    words = []
    for _ in range(count):
        line = fp.readline()
        if not line:
            raise ValueError(f"expected {count} codewords, file ended early")
        words.append(SymbolSeq(tuple(int(x) for x in line.split()), q))
    return BlockCode(
        block_length=block_length,
        alphabet_size=q,
        codewords=tuple(words),
        design_distance=distance,
    )
