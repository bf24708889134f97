"""Deterministic synchronization-circle synthesis from block codes.

The assembly step pairs each codeword of a distance-d block code with a
small synchronization circle of the same length, position by position,
over the product alphabet; concatenating enough product codewords and
truncating gives a synchronization circle of the target length.  With the
circle at eps/30 and the code at relative distance
rho = (1 + eps/30)/(1 - eps/30) * (1 - eps/10), the assembled string
meets epsilon' = eps exactly: the guarantee constant is
10 * (1 - ((1-eps/30)/(1+eps/30)) * rho) = eps.

Two construction levels:

* one   - greedy codebook directly at block length m,
* two   - Reed-Solomon outer code concatenated with a small greedy inner
          code; the length-m*m0 circle for the assembly is built by the
          single-level pipeline, which keeps the per-call cost of the
          code machinery polylogarithmic in n.

All epsilon arithmetic is exact rational; floats never decide anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .circle import build_circle
from .codes import (
    DEFAULT_GREEDY_SPACE,
    BlockCode,
    concat_code,
    greedy_code,
    gv_alphabet_size,
    hamming_ball_size,
    rs_code,
)
from .metrics import SymbolSeq
from .sampler import SamplerConfig, construct_lll
from .verifier import SyncString, _check_symbols, verify_sync_circle

#: fixed public seeds for the two halves of an internally built circle
CIRCLE_SEEDS = (0, 1)

#: full-output certification is O(n^5); past this length the output's
#: validity rests on the assembly guarantee instead of a verifier pass
DEFAULT_CERTIFY_LIMIT = 64

#: largest circle length the exhaustive lexicographic search accepts
EXHAUSTIVE_CIRCLE_LIMIT = 6


class InfeasiblePlanError(ValueError):
    """No parameter choice satisfies every constraint; message names the binding one."""


def distance_rate(target_epsilon: Fraction) -> Fraction:
    """Required relative code distance rho for a target epsilon."""
    eps = Fraction(target_epsilon)
    a = eps / 30
    return (1 + a) / (1 - a) * (1 - eps / 10)


@dataclass(frozen=True)
class SynthesisPlan:
    """Resolved parameters of one synthesis run.

    ``m`` is the assembled block length (equals the circle length), and
    ``ell`` the number of product codewords concatenated before
    truncation to ``n``.  ``code_relative_distance`` stores the design
    value rho, not the (possibly better) realized d/m, so the guarantee
    identity 10*alpha == target_epsilon stays exact.
    """

    n: int
    target_epsilon: Fraction
    circle_epsilon: Fraction
    code_relative_distance: Fraction
    m: int
    ell: int
    level: str
    code_distance: int
    code_alphabet: int
    rs_degree: int | None = None
    rs_block: int | None = None
    rs_message_length: int | None = None
    inner_block: int | None = None
    inner_distance: int | None = None

    def __post_init__(self) -> None:
        for name in ("target_epsilon", "circle_epsilon", "code_relative_distance"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not 0 < self.target_epsilon < 1:
            raise ValueError("target epsilon must lie in (0,1)")
        if self.level not in ("one", "two"):
            raise ValueError(f"unknown level {self.level!r}")
        if self.ell * self.m < self.n:
            raise ValueError("ell * m must cover n")
        ec = self.circle_epsilon
        bound = 10 * (1 - (1 - ec) / (1 + ec) * self.code_relative_distance)
        if bound > self.target_epsilon:
            raise ValueError(
                f"plan guarantee {bound} exceeds target {self.target_epsilon}"
            )

    @property
    def alpha(self) -> Fraction:
        """Cross-codeword LCS rate the assembly relies on (= target/10)."""
        ec = self.circle_epsilon
        return 1 - (1 - ec) / (1 + ec) * self.code_relative_distance

    def to_text(self) -> str:
        pairs = [
            ("n", self.n),
            ("level", self.level),
            ("target_epsilon", self.target_epsilon),
            ("circle_epsilon", self.circle_epsilon),
            ("code_relative_distance", self.code_relative_distance),
            ("m", self.m),
            ("ell", self.ell),
            ("code_distance", self.code_distance),
            ("code_alphabet", self.code_alphabet),
        ]
        if self.level == "two":
            pairs += [
                ("rs_degree", self.rs_degree),
                ("rs_block", self.rs_block),
                ("rs_message_length", self.rs_message_length),
                ("inner_block", self.inner_block),
                ("inner_distance", self.inner_distance),
            ]
        return "\n".join(f"{k}={v}" for k, v in pairs)


def _greedy_supply_ok(
    ell: int, m: int, d: int, q: int, max_space: int | None
) -> bool:
    """Can the greedy scan certainly deliver ``ell`` words of distance d?

    d == m: the scan yields exactly the q constant words, no space guard
    needed (pruning touches O(q*m*count) prefixes).  Otherwise fall back
    to the exact counting bound ell * ball(d-1) <= q^m under the guard.
    """
    if d == m:
        return ell <= q
    if max_space is not None and q**m > max_space:
        return False
    return ell * hamming_ball_size(m, d - 1, q) <= q**m


def solve_parameters(
    n: int,
    target_epsilon: Fraction,
    *,
    max_space: int | None = DEFAULT_GREEDY_SPACE,
) -> SynthesisPlan:
    """Single-level plan: smallest block length m whose greedy codebook
    certainly supplies ceil(n/m) codewords of relative distance rho.

    m starts at 2 because the internal circle is concatenated from two
    non-empty halves.  Infeasibility names the binding constraint.
    """
    eps = Fraction(target_epsilon)
    if not 0 < eps < 1:
        raise ValueError(f"target epsilon must lie in (0,1), got {eps}")
    if n < 1:
        raise ValueError("n must be positive")
    rho = distance_rate(eps)
    q = gv_alphabet_size(1 - rho)
    for m in range(2, max(n, 2) + 1):
        ell = -(-n // m)
        d = math.ceil(rho * m)
        if d < m and max_space is not None and q**m > max_space:
            break  # d stays below m from here on and q^m only grows
        if _greedy_supply_ok(ell, m, d, q, max_space):
            return SynthesisPlan(
                n=n,
                target_epsilon=eps,
                circle_epsilon=eps / 30,
                code_relative_distance=rho,
                m=m,
                ell=ell,
                level="one",
                code_distance=d,
                code_alphabet=q,
            )
    raise InfeasiblePlanError(
        f"no block length m in [2, {n}] supplies ceil(n/m) codewords at relative "
        f"distance {rho} over alphabet {q}: the distance=m regime caps at q={q} "
        f"codewords per block and larger blocks exceed the {max_space} search "
        "guard; use the two-level construction"
    )


def build_small_circle(
    length: int,
    epsilon: Fraction,
    *,
    exhaustive: bool = False,
    certify: bool = True,
) -> SyncString:
    """A verified synchronization circle of the given length.

    Default route: two seeded Las Vegas strings over disjoint alphabets
    (fixed public seeds, so the result is a deterministic function of the
    inputs), then a certification pass.  ``exhaustive`` switches to the
    lexicographic brute-force search, accepted up to length 6.
    """
    eps = Fraction(epsilon)
    if length < 1:
        raise ValueError("circle length must be positive")
    if exhaustive:
        return exhaustive_circle(length, eps)
    if length == 1:
        return SyncString(SymbolSeq((0,), 1), eps)
    n1 = (length + 1) // 2
    n2 = length // 2
    s1 = construct_lll(SamplerConfig(n=n1, epsilon=eps, seed=CIRCLE_SEEDS[0]))
    s2 = construct_lll(SamplerConfig(n=n2, epsilon=eps, seed=CIRCLE_SEEDS[1]))
    circle = build_circle(s1, s2)
    if certify:
        report = verify_sync_circle(circle, max_length=None)
        if not report.ok:
            raise AssertionError(
                f"concatenated circle fails at rotation {report.rotation}, "
                f"witness {report.witness}; this is a bug"
            )
    return circle


def exhaustive_circle(length: int, epsilon: Fraction) -> SyncString:
    """Lexicographically first circle of the given length, by DFS with
    pruning: a prefix that already fails the string inequality cannot be
    completed, so its subtree is skipped.  Only sensible at toy lengths.
    """
    eps = Fraction(epsilon)
    if length > EXHAUSTIVE_CIRCLE_LIMIT:
        raise ValueError(
            f"exhaustive search accepted up to length {EXHAUSTIVE_CIRCLE_LIMIT}"
        )
    q = math.ceil(Fraction(24) / eps**2)
    num, den = eps.numerator, eps.denominator
    prefix: list[int] = []

    def dfs() -> bool:
        if len(prefix) == length:
            s = SyncString(SymbolSeq(tuple(prefix), q), eps)
            return verify_sync_circle(s, max_length=None).ok
        for sym in range(q):
            prefix.append(sym)
            if _check_symbols(tuple(prefix), num, den) is None and dfs():
                return True
            prefix.pop()
        return False

    if not dfs():
        raise InfeasiblePlanError(
            f"no circle of length {length} exists over alphabet {q} at {eps}"
        )
    return SyncString(SymbolSeq(tuple(prefix), q), eps)


def product_code(code: BlockCode, circle: SyncString) -> BlockCode:
    """Pair every codeword with the circle position-wise over the product
    alphabet, flattened as code_sym * circle_alphabet + circle_sym."""
    if code.block_length != len(circle):
        raise ValueError(
            f"code block length {code.block_length} != circle length {len(circle)}"
        )
    a_sc = circle.seq.alphabet_size
    words = tuple(
        SymbolSeq(
            tuple(
                sym * a_sc + csym
                for sym, csym in zip(w.symbols, circle.seq.symbols)
            ),
            code.alphabet_size * a_sc,
        )
        for w in code.codewords
    )
    return BlockCode(
        block_length=code.block_length,
        alphabet_size=code.alphabet_size * a_sc,
        codewords=words,
        design_distance=code.design_distance,
    )


def assemble(
    plan: SynthesisPlan,
    code: BlockCode,
    circle: SyncString,
    *,
    check_circle: bool = False,
) -> SyncString:
    """Concatenate the first ``plan.ell`` product codewords and truncate to n.

    Truncation is safe for the string property (it quantifies over all
    sub-windows); the circle property of a truncated output is re-checked
    by callers at desk scale rather than claimed.
    """
    if code.block_length != plan.m or len(circle) != plan.m:
        raise ValueError(
            f"plan wants blocks of {plan.m}, got code {code.block_length} "
            f"and circle {len(circle)}"
        )
    if len(code.codewords) < plan.ell:
        raise ValueError(
            f"need {plan.ell} codewords, code has {len(code.codewords)}"
        )
    if circle.epsilon != plan.circle_epsilon:
        raise ValueError(
            f"circle epsilon {circle.epsilon} != plan's {plan.circle_epsilon}"
        )
    if check_circle:
        report = verify_sync_circle(circle, max_length=None)
        if not report.ok:
            raise ValueError(f"circle fails verification at {report.witness}")
    prod = product_code(code, circle)
    symbols: list[int] = []
    for w in prod.codewords[: plan.ell]:
        symbols.extend(w.symbols)
        if len(symbols) >= plan.n:
            break
    return SyncString(
        SymbolSeq(tuple(symbols[: plan.n]), prod.alphabet_size),
        plan.target_epsilon,
    )


def _certify_output(s: SyncString, limit: int | None) -> None:
    if limit is not None and len(s) > limit:
        return
    report = verify_sync_circle(s, max_length=None)
    if not report.ok:
        raise AssertionError(
            f"assembled output fails at rotation {report.rotation}, witness "
            f"{report.witness} (ed={report.measured_ed} <= {report.threshold}); "
            "this is a bug"
        )


@dataclass(frozen=True)
class SynthesisBuild:
    """Everything one pipeline run produced, for auditing and reporting."""

    plan: SynthesisPlan
    code: BlockCode
    circle: SyncString
    string: SyncString
    inner_code: BlockCode | None = None
    outer_code: BlockCode | None = None


def construct_deterministic_build(
    n: int,
    target_epsilon: Fraction,
    *,
    exhaustive_circle_search: bool = False,
    certify: bool = True,
    certify_limit: int | None = DEFAULT_CERTIFY_LIMIT,
) -> SynthesisBuild:
    """Single-level pipeline with all intermediate artifacts exposed."""
    plan = solve_parameters(n, target_epsilon)
    circle = build_small_circle(
        plan.m,
        plan.circle_epsilon,
        exhaustive=exhaustive_circle_search,
        certify=certify,
    )
    code = greedy_code(
        plan.m,
        plan.code_distance,
        plan.code_alphabet,
        plan.ell,
        max_space=None if plan.code_distance == plan.m else DEFAULT_GREEDY_SPACE,
    )
    string = assemble(plan, code, circle)
    if certify:
        _certify_output(string, certify_limit)
    return SynthesisBuild(plan=plan, code=code, circle=circle, string=string)


def construct_deterministic(
    n: int,
    target_epsilon: Fraction,
    *,
    exhaustive_circle_search: bool = False,
    certify: bool = True,
) -> SyncString:
    """Deterministic synchronization circle of length n at the target epsilon."""
    return construct_deterministic_build(
        n,
        target_epsilon,
        exhaustive_circle_search=exhaustive_circle_search,
        certify=certify,
    ).string


def solve_two_level_parameters(
    n: int,
    target_epsilon: Fraction,
    *,
    max_space: int | None = DEFAULT_GREEDY_SPACE,
    max_inner_block: int = 12,
    max_degree: int = 16,
) -> SynthesisPlan:
    """Two-level plan: Reed-Solomon outer code over GF(2^l) at full block
    length 2^l, concatenated with a greedy inner code of block length m0.

    Searched smallest inner block first, then smallest field degree, with
    the largest workable inner distance; the Reed-Solomon message length
    is the smallest that covers ceil(n / (m * m0)) codewords while the
    product distance still clears ceil(rho * m * m0).
    """
    eps = Fraction(target_epsilon)
    if not 0 < eps < 1:
        raise ValueError(f"target epsilon must lie in (0,1), got {eps}")
    if n < 1:
        raise ValueError("n must be positive")
    rho = distance_rate(eps)

    for m0 in range(2, max_inner_block + 1):
        for degree in range(1, max_degree + 1):
            m = 1 << degree
            m_prime = m * m0
            if m_prime >= n:
                break  # recursion must shrink the problem
            ell = -(-n // m_prime)
            need = math.ceil(rho * m_prime)
            for d0 in range(m0, 0, -1):
                if d0 == m0:
                    q_in = m  # diagonal inner code, one codeword per outer symbol
                else:
                    q_in = gv_alphabet_size(1 - Fraction(d0, m0))
                if not _greedy_supply_ok(m, m0, d0, q_in, max_space):
                    continue
                k_max = m + 1 - -(-need // d0)
                if k_max < 1:
                    continue
                field = 1 << degree
                k = 1
                while k <= k_max and field**k < ell:
                    k += 1
                if k > k_max:
                    continue
                return SynthesisPlan(
                    n=n,
                    target_epsilon=eps,
                    circle_epsilon=eps / 30,
                    code_relative_distance=rho,
                    m=m_prime,
                    ell=ell,
                    level="two",
                    code_distance=(m - k + 1) * d0,
                    code_alphabet=q_in,
                    rs_degree=degree,
                    rs_block=m,
                    rs_message_length=k,
                    inner_block=m0,
                    inner_distance=d0,
                )
    raise InfeasiblePlanError(
        f"no two-level parameters for n={n} at epsilon {eps}: every inner block "
        f"up to {max_inner_block} and field degree up to {max_degree} either "
        f"cannot reach relative distance {rho} or cannot cover ceil(n/(m*m0)) "
        "codewords with m*m0 < n"
    )


def construct_two_level_build(
    n: int,
    target_epsilon: Fraction,
    *,
    certify: bool = True,
    certify_limit: int | None = DEFAULT_CERTIFY_LIMIT,
) -> SynthesisBuild:
    """Two-level pipeline with all intermediate artifacts exposed.

    The assembly circle of length m*m0 comes from the single-level
    pipeline at epsilon/30; the inner code is computed once per call.
    """
    plan = solve_two_level_parameters(n, target_epsilon)
    assert plan.inner_block is not None  # level == "two"
    inner = greedy_code(
        plan.inner_block,
        plan.inner_distance,
        plan.code_alphabet,
        plan.rs_block,
        max_space=None if plan.inner_distance == plan.inner_block else DEFAULT_GREEDY_SPACE,
    )
    outer = rs_code(plan.rs_degree, plan.rs_message_length, plan.rs_block, plan.ell)
    code = concat_code(outer, inner)
    # the assembly needs this circle valid at circle_epsilon no matter its
    # length, so certification (when on) ignores the length limit
    circle = construct_deterministic_build(
        plan.m,
        plan.circle_epsilon,
        certify=certify,
        certify_limit=None,
    ).string
    string = assemble(plan, code, circle)
    if certify:
        _certify_output(string, certify_limit)
    return SynthesisBuild(
        plan=plan,
        code=code,
        circle=circle,
        string=string,
        inner_code=inner,
        outer_code=outer,
    )


def construct_two_level(
    n: int, target_epsilon: Fraction, *, certify: bool = True
) -> SyncString:
    """Near-linear deterministic synchronization circle via the two-level
    recursion (Reed-Solomon outer, greedy inner, single-level circle)."""
    return construct_two_level_build(n, target_epsilon, certify=certify).string
