import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syncstr.metrics import SymbolSeq
from syncstr.verifier import (
    SyncString,
    VerificationReport,
    audit_code,
    verify_sync_circle,
    verify_sync_string,
)
from syncstr.codes import BlockCode, greedy_code, gv_parameters

from oracles import naive_verify


def sync(symbols, eps, q=None):
    q = q if q is not None else max(symbols) + 1
    return SyncString(SymbolSeq(tuple(symbols), q), Fraction(eps))


class TestTypes:
    def test_epsilon_bounds(self):
        with pytest.raises(ValueError):
            sync([0], Fraction(0))
        with pytest.raises(ValueError):
            sync([0], Fraction(1))
        with pytest.raises(ValueError):
            SyncString(SymbolSeq((), 1), Fraction(1, 2))

    def test_report_invariants(self):
        with pytest.raises(ValueError):
            VerificationReport(ok=True, witness=(1, 2, 3))
        with pytest.raises(ValueError):
            VerificationReport(ok=False)
        with pytest.raises(ValueError):
            # ed strictly above the threshold is not a violation
            VerificationReport(
                ok=False, witness=(1, 1, 2), measured_ed=2, threshold=Fraction(1, 2)
            )


class TestVerifyString:
    def test_all_distinct_passes(self):
        for n in (1, 2, 5, 12):
            for eps in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
                assert verify_sync_string(sync(range(1, n + 1), eps, q=n + 1)).ok

    def test_repeated_pair_fails(self):
        rep = verify_sync_string(sync([1, 1], Fraction(1, 2)))
        assert not rep.ok
        assert rep.witness == (1, 1, 2)
        assert rep.measured_ed == 0
        assert rep.threshold == Fraction(1, 2)

    def test_alternating_fails_with_smallest_witness(self):
        # frozen from the per-triple oracle
        ok, witness, ed, thr = naive_verify((1, 2, 1, 2), Fraction(1, 2))
        assert (ok, witness, ed, thr) == (False, (1, 1, 3), 1, Fraction(1))
        rep = verify_sync_string(sync([1, 2, 1, 2], Fraction(1, 2)))
        assert not rep.ok
        assert rep.witness == (1, 1, 3)
        assert rep.measured_ed == 1
        assert rep.threshold == 1

    def test_tie_at_threshold_fails(self):
        # ED([1],[2]) = 2 == (1 - 1/3) * 3 exactly: strict > means failure
        rep = verify_sync_string(sync([1, 2, 3, 1], Fraction(1, 3), q=4))
        assert not rep.ok

    def test_size_guard(self):
        big = sync(range(5000), Fraction(1, 2), q=5000)
        with pytest.raises(ValueError):
            verify_sync_string(big)
        with pytest.raises(ValueError):
            verify_sync_string(big, max_length=4999)

    def test_vectorized_and_rolling_paths_agree(self, monkeypatch):
        # the area cutoff picks between the numpy row and the pure DP;
        # force each in turn and compare full reports
        import syncstr.verifier as v

        rng = random.Random(31)
        cases = []
        for _ in range(25):
            n = rng.randint(2, 28)
            q = rng.randint(2, 10)
            eps = Fraction(rng.randint(1, 9), 10)
            cases.append((tuple(rng.randrange(q) for _ in range(n)), q, eps))
        reports = []
        for cutoff in (1, 10**9):
            monkeypatch.setattr(v, "_NUMPY_AREA_CUTOFF", cutoff)
            reports.append(
                [
                    verify_sync_string(SyncString(SymbolSeq(sym, q), eps))
                    for sym, q, eps in cases
                ]
            )
        assert reports[0] == reports[1]

    def test_agreement_with_naive_oracle(self):
        rng = random.Random(2024)
        for _ in range(60):
            n = rng.randint(1, 16)
            q = rng.randint(2, 8)
            eps = rng.choice([Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
            symbols = tuple(rng.randrange(q) for _ in range(n))
            ok, witness, ed, thr = naive_verify(symbols, eps)
            rep = verify_sync_string(SyncString(SymbolSeq(symbols, q), eps))
            assert rep.ok == ok
            assert rep.witness == witness
            assert rep.measured_ed == ed
            assert rep.threshold == thr

    @given(st.data())
    @settings(max_examples=40, deadline=None)
    def test_monotone_in_epsilon(self, data):
        n = data.draw(st.integers(2, 10))
        q = data.draw(st.integers(2, 6))
        symbols = tuple(data.draw(st.integers(0, q - 1)) for _ in range(n))
        a = Fraction(data.draw(st.integers(1, 8)), 9)
        b = Fraction(data.draw(st.integers(1, 8)), 9)
        e0, e1 = min(a, b), max(a, b)
        s0 = SyncString(SymbolSeq(symbols, q), e0)
        if verify_sync_string(s0).ok:
            assert verify_sync_string(SyncString(SymbolSeq(symbols, q), e1)).ok

    def test_substring_closure(self):
        rng = random.Random(5)
        eps = Fraction(1, 2)
        passing = []
        while len(passing) < 5:
            n = rng.randint(4, 14)
            symbols = tuple(rng.sample(range(40), n))  # distinct symbols pass
            if verify_sync_string(sync(symbols, eps, q=40)).ok:
                passing.append(symbols)
        for symbols in passing:
            n = len(symbols)
            for a in range(n):
                for b in range(a + 1, n + 1):
                    sub = symbols[a:b]
                    assert verify_sync_string(sync(sub, eps, q=40)).ok


class TestVerifyCircle:
    def test_all_distinct(self):
        for n in (1, 2, 7):
            assert verify_sync_circle(sync(range(n), Fraction(1, 2), q=max(n, 1))).ok

    def test_single_symbol(self):
        assert verify_sync_circle(sync([0], Fraction(1, 2), q=1)).ok

    def test_rotation_reveals_violation(self):
        # 1,2,1 rotates to 1,1,2: the adjacent equal pair violates
        rep = verify_sync_circle(sync([1, 2, 1], Fraction(1, 2)))
        assert not rep.ok
        assert rep.rotation is not None

    def test_rotation_folding(self):
        # 0,1,2,0 fails in some rotation; witness positions are absolute
        rep = verify_sync_circle(sync([0, 1, 2, 0], Fraction(1, 2)))
        assert not rep.ok
        n = 4
        r = rep.rotation - 1
        rotated = tuple([0, 1, 2, 0][r:] + [0, 1, 2, 0][:r])
        ok, local_witness, ed, thr = naive_verify(rotated, Fraction(1, 2))
        assert not ok
        folded = tuple((r + p - 1) % n + 1 for p in local_witness)
        assert rep.witness == folded
        assert rep.measured_ed == ed
        assert rep.threshold == thr

    def test_circle_implies_string(self):
        rng = random.Random(11)
        for _ in range(40):
            n = rng.randint(1, 10)
            q = rng.randint(2, 6)
            s = sync([rng.randrange(q) for _ in range(n)], Fraction(1, 2), q=q)
            if verify_sync_circle(s).ok:
                assert verify_sync_string(s).ok


class TestAuditCode:
    def test_disjoint_alphabets(self):
        code = BlockCode(
            2, 4, (SymbolSeq((0, 1), 4), SymbolSeq((2, 3), 4)), 2
        )
        audit = audit_code(code)
        assert audit.max_pairwise_lcs == 0
        assert audit.min_hamming_distance == 2

    def test_small_example(self):
        code = BlockCode(
            2, 4, (SymbolSeq((1, 2), 4), SymbolSeq((1, 3), 4)), 1
        )
        audit = audit_code(code)
        assert audit.min_hamming_distance == 1
        assert audit.max_pairwise_lcs == 1

    def test_greedy_code_distance(self):
        q, d, count = gv_parameters(Fraction(1, 2), 4)
        code = greedy_code(4, d, q, count)
        audit = audit_code(code)
        assert audit.min_hamming_distance >= 2

    def test_circle_flag(self):
        good = BlockCode(
            3, 6, (SymbolSeq((0, 1, 2), 6), SymbolSeq((3, 4, 5), 6)), 3
        )
        audit = audit_code(good, as_circle_epsilon=Fraction(1, 2))
        assert audit.circles_ok is True
        bad = BlockCode(3, 6, (SymbolSeq((0, 1, 0), 6),), 0)
        audit = audit_code(bad, as_circle_epsilon=Fraction(1, 2))
        assert audit.circles_ok is False
        assert audit.first_failing_codeword == 0

    def test_empty_code_rejected(self):
        with pytest.raises(ValueError):
            audit_code(BlockCode(1, 2, (), 0))
