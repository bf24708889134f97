"""Construction and exact verification of synchronization strings and circles.

A string S over an integer alphabet is an epsilon-synchronization string
when every two-sided window split S[i..j] / S[j+1..k] has insert/delete
edit distance strictly above (1 - epsilon) * (k - i); a circle is a
string all of whose rotations qualify.  This package constructs such
objects three ways (Las Vegas resampling, deterministic code-based
assembly, two-level near-linear recursion) and verifies them against the
definition with exact rational thresholds.
"""

from .circle import build_circle
from .codes import (
    BlockCode,
    CodeSearchExhaustedError,
    FieldElement,
    concat_code,
    field_add,
    field_mul,
    greedy_code,
    gv_alphabet_size,
    gv_parameters,
    read_codebook,
    rs_code,
    rs_encode,
    write_codebook,
)
from .metrics import SymbolSeq, edit_distance, hamming_distance, lcs, lcs_all_prefixes
from .sampler import (
    LllRun,
    RandomTape,
    ResampleLimitError,
    SamplerConfig,
    TapeError,
    construct_lll,
    derive_string,
    run_lll,
    sample_tape,
)
from .synthesis import (
    InfeasiblePlanError,
    SynthesisPlan,
    assemble,
    build_small_circle,
    construct_deterministic,
    construct_deterministic_build,
    construct_two_level,
    construct_two_level_build,
    distance_rate,
    product_code,
    solve_parameters,
    solve_two_level_parameters,
)
from .verifier import (
    CodeAudit,
    SyncString,
    VerificationReport,
    audit_code,
    verify_sync_circle,
    verify_sync_string,
)

__version__ = "0.1.0"

__all__ = [
    "BlockCode",
    "CodeAudit",
    "CodeSearchExhaustedError",
    "FieldElement",
    "InfeasiblePlanError",
    "LllRun",
    "RandomTape",
    "ResampleLimitError",
    "SamplerConfig",
    "SymbolSeq",
    "SyncString",
    "SynthesisPlan",
    "TapeError",
    "VerificationReport",
    "assemble",
    "audit_code",
    "build_circle",
    "build_small_circle",
    "concat_code",
    "construct_deterministic",
    "construct_deterministic_build",
    "construct_lll",
    "construct_two_level",
    "construct_two_level_build",
    "derive_string",
    "distance_rate",
    "edit_distance",
    "field_add",
    "field_mul",
    "greedy_code",
    "gv_alphabet_size",
    "gv_parameters",
    "hamming_distance",
    "lcs",
    "lcs_all_prefixes",
    "product_code",
    "read_codebook",
    "rs_code",
    "rs_encode",
    "run_lll",
    "sample_tape",
    "solve_parameters",
    "solve_two_level_parameters",
    "verify_sync_circle",
    "verify_sync_string",
    "write_codebook",
]
