"""Randomized construction of synchronization strings by resampling.

Symbols are drawn non-uniformly: position i avoids the previous
``min(i-1, t-1)`` symbols, which makes every window of ``t`` consecutive
symbols pairwise distinct.  The draw is driven by independent uniform
tape entries ``P_1..P_n`` so that redrawing a contiguous range of entries
is a valid resample of exactly the events that depend on them: keep a
running order of the alphabet, move the recent symbols to the front
(most recent first), and emit the symbol of rank ``h + P_i``.

The construction loop is Las Vegas: derive, scan windows for a violation
of the definitional inequality, redraw the tape entries of the smallest
bad window, re-derive from its left end, repeat.  Whatever comes out is
passed through the verifier before being returned, so the output is
always correct; only the number of resampling rounds is random.
"""

from __future__ import annotations

import math
from bisect import bisect_right, insort
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.random import Generator, Philox

from .metrics import SymbolSeq, lcs_all_prefixes
from .verifier import SyncString, verify_sync_string


class TapeError(ValueError):
    """A tape entry is outside the range its position allows."""


class ResampleLimitError(RuntimeError):
    """The loop hit max_resamples with a bad window still present.

    Usually means c1/c2 are under-provisioned for the requested epsilon.
    """

    def __init__(self, resamples: int, interval: tuple[int, int]):
        self.resamples = resamples
        self.interval = interval
        super().__init__(
            f"no valid string after {resamples} resamples; "
            f"window {interval} still violates the inequality "
            "(consider larger c1/c2 or a bigger resample budget)"
        )


@dataclass(frozen=True)
class SamplerConfig:
    """Parameters of the non-uniform sampler.

    alphabet size q = ceil(c1 / epsilon^2), window t = ceil(c2 / epsilon^2).
    The defaults c1=24, c2=4 are far below what the existence analysis
    needs but work well in practice; the verifier guard makes the output
    trustworthy regardless.
    """

    n: int
    epsilon: Fraction
    c1: Fraction = Fraction(24)
    c2: Fraction = Fraction(4)
    seed: int = 0
    max_resamples: int = 10_000

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "c1", Fraction(self.c1))
        object.__setattr__(self, "c2", Fraction(self.c2))
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0,1), got {self.epsilon}")
        if not 0 < self.c2 < self.c1:
            raise ValueError("need 0 < c2 < c1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.max_resamples < 0:
            raise ValueError("max_resamples must be non-negative")
        if self.window < 2:
            raise ValueError(f"window t={self.window} too small; raise c2")
        if self.alphabet_size <= self.window:
            raise ValueError(
                f"alphabet {self.alphabet_size} not larger than window {self.window}"
            )

    @property
    def alphabet_size(self) -> int:
        return math.ceil(self.c1 / self.epsilon**2)

    @property
    def window(self) -> int:
        return math.ceil(self.c2 / self.epsilon**2)

    def entry_bound(self, position: int) -> int:
        """Inclusive upper bound of the tape entry at a 1-based position."""
        h = min(position - 1, self.window - 1)
        return self.alphabet_size - h


@dataclass(frozen=True)
class RandomTape:
    """The independent uniform variables driving one derivation."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    def __len__(self) -> int:
        return len(self.entries)


def sample_tape(cfg: SamplerConfig, rng: Generator | None = None) -> RandomTape:
    """Draw a full tape for ``cfg`` (fresh Philox stream from cfg.seed by default)."""
    if rng is None:
        rng = Generator(Philox(key=cfg.seed))
    entries = tuple(
        int(rng.integers(1, cfg.entry_bound(i) + 1)) for i in range(1, cfg.n + 1)
    )
    return RandomTape(entries)


def _validate_tape(cfg: SamplerConfig, tape: RandomTape) -> None:
    if len(tape) != cfg.n:
        raise TapeError(f"tape has {len(tape)} entries, config wants {cfg.n}")
    for i, e in enumerate(tape.entries, start=1):
        if not 1 <= e <= cfg.entry_bound(i):
            raise TapeError(
                f"tape entry {e} at position {i} outside [1, {cfg.entry_bound(i)}]"
            )


def _kth_unchosen(chosen_sorted: list[int], k: int) -> int:
    """The k-th (1-based) natural number absent from ``chosen_sorted``."""
    lo, hi = k - 1, k - 1 + len(chosen_sorted)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid + 1 - bisect_right(chosen_sorted, mid) >= k:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _derive_symbols(cfg: SamplerConfig, entries: tuple[int, ...]) -> list[int]:
    """Map a full tape to its symbol string.

    The alphabet order is represented lazily: symbols never chosen so far
    sit behind all chosen ones in their natural 0,1,2,... order, so huge
    alphabets cost nothing until touched.
    """
    t = cfg.window
    seen_order: list[int] = []  # chosen symbols, current front-of-order first
    chosen_sorted: list[int] = []
    out: list[int] = []
    for i in range(1, cfg.n + 1):
        h = min(i - 1, t - 1)
        if h:
            recent = out[-h:][::-1]
            recent_set = set(recent)
            seen_order = recent + [x for x in seen_order if x not in recent_set]
        rank = h + entries[i - 1]  # 1-based rank in the reordered alphabet
        if rank <= len(seen_order):
            sym = seen_order[rank - 1]
        else:
            sym = _kth_unchosen(chosen_sorted, rank - len(seen_order))
            insort(chosen_sorted, sym)
            seen_order.append(sym)
        out.append(sym)
    return out


def derive_string(
    cfg: SamplerConfig, tape: RandomTape, from_index: int = 1
) -> SymbolSeq:
    """Deterministically turn a tape into symbols.

    Returns the symbols at positions ``from_index..n``; ``from_index=1``
    gives the whole string.  Positions before ``from_index`` depend only
    on earlier tape entries, so re-deriving a suffix after redrawing
    entries ``i..k`` reproduces the untouched prefix implicitly.
    """
    if not 1 <= from_index <= cfg.n + 1:
        raise ValueError(f"from_index {from_index} outside [1, {cfg.n + 1}]")
    _validate_tape(cfg, tape)
    symbols = _derive_symbols(cfg, tape.entries)
    return SymbolSeq(tuple(symbols[from_index - 1 :]), cfg.alphabet_size)


def _smallest_bad_interval(
    symbols: list[int], num: int, den: int, t: int
) -> tuple[int, int] | None:
    """First window violating the inequality, ordered by (i, then k).

    Windows spanning k-i <= t-1 hold at most t symbols, all distinct by
    construction, and are skipped; everything from span t up is checked.
    """
    n = len(symbols)
    dmn = den - num
    # same int64-safety condition as the verifier's sweep
    use_numpy = (2 * n + 2) * max(den, dmn) < 2**62
    arr = np.asarray(symbols, dtype=np.int64) if use_numpy else None
    for i in range(1, n + 1):
        if i + t > n:
            break
        best_k: int | None = None
        for j in range(i, n):
            hi = n if best_k is None else best_k - 1
            lo = max(j + 1, i + t)
            if lo > hi:
                if j + 1 > hi:
                    break
                continue
            left_len = j - i + 1
            if use_numpy and left_len * (n - j) >= 512:
                right = arr[j:]
                row = np.zeros(n - j + 1, dtype=np.int64)
                for x in symbols[i - 1 : j]:
                    cand = np.maximum(row[1:], row[:-1] + (right == x))
                    row[1:] = np.maximum.accumulate(cand)
                ks = np.arange(lo, hi + 1, dtype=np.int64)
                ed = (ks - i + 1) - 2 * row[lo - j : hi - j + 1]
                viol = ed * den <= dmn * (ks - i)
                if viol.any():
                    best_k = int(ks[int(np.argmax(viol))])
            else:
                row = lcs_all_prefixes(symbols[i - 1 : j], symbols[j:])
                for k in range(lo, hi + 1):
                    ed = (k - i + 1) - 2 * row[k - j]
                    if ed * den <= dmn * (k - i):
                        best_k = k
                        break
        if best_k is not None:
            return i, best_k
    return None


@dataclass(frozen=True)
class LllRun:
    """Outcome of one Las Vegas construction."""

    string: SyncString
    resamples: int
    trace: tuple[tuple[int, ...], ...] | None = None


def run_lll(cfg: SamplerConfig, collect_trace: bool = False) -> LllRun:
    """Run the resampling loop until no bad window remains.

    Raises ResampleLimitError past cfg.max_resamples.  The returned string
    has been re-checked by the verifier, not just assumed good.
    """
    rng = Generator(Philox(key=cfg.seed))
    entries = list(sample_tape(cfg, rng).entries)
    symbols = _derive_symbols(cfg, tuple(entries))
    trace: list[tuple[int, ...]] = [tuple(symbols)] if collect_trace else []

    num, den = cfg.epsilon.numerator, cfg.epsilon.denominator
    resamples = 0
    while True:
        bad = _smallest_bad_interval(symbols, num, den, cfg.window)
        if bad is None:
            break
        if resamples >= cfg.max_resamples:
            raise ResampleLimitError(resamples, bad)
        i, k = bad
        for pos in range(i, k + 1):
            entries[pos - 1] = int(rng.integers(1, cfg.entry_bound(pos) + 1))
        resamples += 1
        # downstream symbols are functions of upstream choices: re-derive i..n
        symbols = _derive_symbols(cfg, tuple(entries))
        if collect_trace:
            trace.append(tuple(symbols))

    result = SyncString(SymbolSeq(tuple(symbols), cfg.alphabet_size), cfg.epsilon)
    report = verify_sync_string(result, max_length=None)
    if not report.ok:
        raise AssertionError(
            f"scan missed a violation at {report.witness}; this is a bug"
        )
    return LllRun(result, resamples, tuple(trace) if collect_trace else None)


def construct_lll(cfg: SamplerConfig) -> SyncString:
    """Construct a verified synchronization string from a seeded config."""
    return run_lll(cfg).string
