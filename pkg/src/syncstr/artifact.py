"""The SYNCSTR v1 string artifact file format.

Bit-exact, diffable, ASCII:

    SYNCSTR v1
    n=<int> q=<int> epsilon=<num>/<den> kind=<string|circle>
    <space-separated decimal symbols>

newline-terminated.  Epsilon is always serialized as a reduced fraction
so that re-reading reproduces the exact rational used for thresholds.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .metrics import SymbolSeq
from .verifier import SyncString

MAGIC = "SYNCSTR v1"
KINDS = ("string", "circle")


class ArtifactFormatError(ValueError):
    """The file does not parse as a SYNCSTR v1 artifact."""


def render_artifact(s: SyncString, kind: str) -> str:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    eps = s.epsilon
    header = (
        f"n={len(s)} q={s.seq.alphabet_size} "
        f"epsilon={eps.numerator}/{eps.denominator} kind={kind}"
    )
    body = " ".join(str(sym) for sym in s.seq.symbols)
    return f"{MAGIC}\n{header}\n{body}\n"


def write_artifact(path: str | Path, s: SyncString, kind: str) -> None:
    # newline pinned so the bytes are identical on every platform
    Path(path).write_text(render_artifact(s, kind), encoding="ascii", newline="\n")


def parse_artifact(text: str) -> tuple[SyncString, str]:
    lines = text.split("\n")
    if len(lines) < 3 or lines[0] != MAGIC:
        raise ArtifactFormatError(f"missing {MAGIC!r} magic line")
    fields = {}
    for part in lines[1].split():
        if "=" not in part:
            raise ArtifactFormatError(f"malformed header field {part!r}")
        key, value = part.split("=", 1)
        fields[key] = value
    try:
        n = int(fields["n"])
        q = int(fields["q"])
        num, den = fields["epsilon"].split("/")
        eps = Fraction(int(num), int(den))
        kind = fields["kind"]
    except (KeyError, ValueError, ZeroDivisionError) as exc:
        raise ArtifactFormatError(f"bad header {lines[1]!r}: {exc}") from exc
    if kind not in KINDS:
        raise ArtifactFormatError(f"unknown kind {kind!r}")
    try:
        symbols = tuple(int(x) for x in lines[2].split())
    except ValueError as exc:
        raise ArtifactFormatError(f"non-integer symbol: {exc}") from exc
    if len(symbols) != n:
        raise ArtifactFormatError(
            f"header says n={n} but {len(symbols)} symbols follow"
        )
    try:
        s = SyncString(SymbolSeq(symbols, q), eps)
    except ValueError as exc:
        raise ArtifactFormatError(str(exc)) from exc
    return s, kind


def read_artifact(path: str | Path) -> tuple[SyncString, str]:
    return parse_artifact(Path(path).read_text(encoding="ascii"))
