import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syncstr.metrics import (
    SymbolSeq,
    edit_distance,
    hamming_distance,
    lcs,
    lcs_all_prefixes,
)

from oracles import ed_by_script_search, ed_full_table, lcs_by_enumeration

seqs = st.lists(st.integers(0, 3), max_size=12)


class TestSymbolSeq:
    def test_validates_range(self):
        with pytest.raises(ValueError):
            SymbolSeq((0, 5), 5)
        with pytest.raises(ValueError):
            SymbolSeq((-1,), 4)
        with pytest.raises(ValueError):
            SymbolSeq((), 0)

    def test_sequence_protocol(self):
        s = SymbolSeq((3, 1, 2), 4)
        assert len(s) == 3
        assert s[0] == 3 and s[-1] == 2
        assert list(s) == [3, 1, 2]


class TestEditDistance:
    def test_empty_identity(self):
        assert edit_distance([], []) == 0

    def test_swap_pair(self):
        # frozen from the script-search oracle
        assert ed_by_script_search([1, 2], [2, 1], max_ops=4) == 2
        assert edit_distance([1, 2], [2, 1]) == 2

    def test_disjoint_symbols(self):
        assert edit_distance([1, 2, 3], [4, 5, 6]) == 6

    def test_symmetry_small(self):
        rng = random.Random(0)
        for _ in range(200):
            a = [rng.randrange(4) for _ in range(rng.randrange(9))]
            b = [rng.randrange(4) for _ in range(rng.randrange(9))]
            assert edit_distance(a, b) == edit_distance(b, a) == ed_full_table(a, b)

    @given(seqs, seqs, seqs)
    @settings(max_examples=60, deadline=None)
    def test_triangle_inequality(self, a, b, c):
        assert edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c)


class TestLcs:
    def test_examples(self):
        assert lcs_by_enumeration([1, 2, 3, 4, 5], [1, 3, 5]) == 3
        assert lcs([1, 2, 3, 4, 5], [1, 3, 5]) == 3
        assert lcs([], [1, 2, 3]) == 0
        assert lcs([1, 2], [3, 4]) == 0

    @given(seqs, seqs)
    @settings(max_examples=100, deadline=None)
    def test_symmetry_and_self(self, a, b):
        assert lcs(a, b) == lcs(b, a)
        assert lcs(a, a) == len(a)

    def test_against_enumeration(self):
        rng = random.Random(1)
        for _ in range(150):
            a = [rng.randrange(3) for _ in range(rng.randrange(8))]
            b = [rng.randrange(3) for _ in range(rng.randrange(8))]
            assert lcs(a, b) == lcs_by_enumeration(a, b)


class TestLcsAllPrefixes:
    def test_examples(self):
        assert lcs_all_prefixes([1, 2], [2, 1, 2]) == [0, 1, 1, 2]
        assert lcs_all_prefixes([], [1, 2]) == [0, 0, 0]
        assert lcs_all_prefixes([7], [7]) == [0, 1]

    @given(seqs, seqs)
    @settings(max_examples=100, deadline=None)
    def test_matches_per_prefix_lcs(self, a, b):
        row = lcs_all_prefixes(a, b)
        assert row[0] == 0
        assert row[-1] == lcs(a, b)
        for p in range(len(b) + 1):
            assert row[p] == lcs(a, b[:p])
        for p in range(1, len(b) + 1):
            assert row[p] - row[p - 1] in (0, 1)


class TestIdentity:
    def test_exhaustive_binary_len5(self):
        words = [
            tuple((w >> i) & 1 for i in range(l))
            for l in range(6)
            for w in range(1 << l)
        ]
        for a in words:
            for b in words:
                assert edit_distance(a, b) == len(a) + len(b) - 2 * lcs(a, b)

    @given(seqs, seqs)
    @settings(max_examples=200, deadline=None)
    def test_random(self, a, b):
        assert edit_distance(a, b) == len(a) + len(b) - 2 * lcs(a, b)


class TestHamming:
    def test_examples(self):
        assert hamming_distance([1, 2, 3], [1, 2, 3]) == 0
        assert hamming_distance([1, 2, 3], [3, 2, 1]) == 2
        assert hamming_distance([0], [1]) == 1

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            hamming_distance([1], [1, 2])


class TestConcatenationLcsBound:
    def _blocks_with_bounded_cross_lcs(self, rng, t):
        """Blocks where every cross pair shares at most t symbols: a common
        pool of t symbols plus pools private to each side."""
        ell1, ell2 = rng.randint(1, 4), rng.randint(1, 4)
        shared = list(range(t))
        left_private = list(range(100, 140))
        right_private = list(range(200, 240))

        # distinct symbols per block keep per-pair LCS <= |shared| = t
        def distinct_block(private):
            length = rng.randint(1, min(6, t + len(private)))
            pool = shared + private
            return rng.sample(pool, length)

        t1 = [distinct_block(left_private) for _ in range(ell1)]
        t2 = [distinct_block(right_private) for _ in range(ell2)]
        return t1, t2

    def test_bound_on_random_instances(self):
        rng = random.Random(7)
        for _ in range(300):
            t = rng.randint(0, 3)
            blocks1, blocks2 = self._blocks_with_bounded_cross_lcs(rng, t)
            for b1 in blocks1:
                for b2 in blocks2:
                    assert lcs(b1, b2) <= t
            cat1 = [s for b in blocks1 for s in b]
            cat2 = [s for b in blocks2 for s in b]
            assert lcs(cat1, cat2) <= (len(blocks1) + len(blocks2)) * t
