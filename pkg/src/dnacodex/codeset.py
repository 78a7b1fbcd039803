"""DNA codes: parameters, verification, conflict sets, and the code-file format."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

from .errors import DnaCodexError, InvalidParams, LengthMismatch, ParseError
from .seqcore import (
    MAX_N,
    Sequence,
    gc_code,
    hamming_code,
    parse,
    rc_code,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CodeParams:
    n: int
    d: int
    w: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_N:
            raise InvalidParams(f"n={self.n} outside 1..{MAX_N}")
        if not 1 <= self.d <= self.n:
            raise InvalidParams(f"d={self.d} outside 1..{self.n}")
        if not 0 <= self.w <= self.n:
            raise InvalidParams(f"w={self.w} outside 0..{self.n}")

    def __str__(self) -> str:
        return f"({self.n},{self.d},{self.w})"


class CodeSet:
    """An immutable set of equal-length words tagged with ``(n, d, w)``.

    Members are kept in canonical (lexicographic) order so that iteration and
    serialisation are deterministic.  Nothing here checks the distance or GC
    constraints; use :func:`verify_weak` / :func:`verify_strong` for that.
    """

    __slots__ = ("params", "_members", "_set")

    def __init__(self, params: CodeParams, members: Iterable[Sequence] = ()) -> None:
        uniq = set()
        for s in members:
            if s.n != params.n:
                raise LengthMismatch(params.n, s.n)
            uniq.add(s)
        self.params = params
        self._set = frozenset(uniq)
        self._members = tuple(sorted(uniq))

    @property
    def members(self) -> tuple[Sequence, ...]:
        return self._members

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[Sequence]:
        return iter(self._members)

    def __contains__(self, s: object) -> bool:
        return s in self._set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CodeSet):
            return NotImplemented
        return self.params == other.params and self._set == other._set

    def __hash__(self) -> int:
        return hash((self.params, self._set))

    def __repr__(self) -> str:
        return f"CodeSet{self.params}[{len(self)}]"

    def with_member(self, s: Sequence) -> CodeSet:
        return CodeSet(self.params, (*self._members, s))

    def without(self, drop: Iterable[Sequence]) -> CodeSet:
        gone = set(drop)
        return CodeSet(self.params, (s for s in self._members if s not in gone))

    def strings(self) -> list[str]:
        return [str(s) for s in self._members]


class ViolationKind(str, Enum):
    HAMMING_PAIR = "HammingPair"
    COMPLEMENT_PAIR = "ComplementPair"
    SELF_COMPLEMENT = "SelfComplement"
    GC_CONTENT = "GcContent"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    sequences: tuple[Sequence, ...]
    value: int

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "sequences": [str(s) for s in self.sequences],
            "value": self.value,
        }

    def __str__(self) -> str:
        seqs = ", ".join(str(s) for s in self.sequences)
        return f"{self.kind.value}: {seqs} (value {self.value})"


@dataclass(frozen=True)
class VerifyReport:
    params: CodeParams
    mode: str
    size: int
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        p = self.params
        return {
            "n": p.n,
            "d": p.d,
            "w": p.w,
            "mode": self.mode,
            "size": self.size,
            "valid": self.valid,
            "violations": [v.to_dict() for v in self.violations],
        }

    def __str__(self) -> str:
        head = f"{self.mode} {self.params} code of size {self.size}: "
        if self.valid:
            return head + "valid"
        lines = [head + f"INVALID ({len(self.violations)} violations)"]
        lines += ["  " + str(v) for v in self.violations]
        return "\n".join(lines)


def _weak_violations(code: CodeSet) -> list[Violation]:
    n, d, w = code.params.n, code.params.d, code.params.w
    out = []
    members = code.members
    for s in members:
        g = gc_code(s.code, n)
        if g != w:
            out.append(Violation(ViolationKind.GC_CONTENT, (s,), g))
    for i, s in enumerate(members):
        for t in members[i + 1 :]:
            h = hamming_code(s.code, t.code, n)
            if h < d:
                out.append(Violation(ViolationKind.HAMMING_PAIR, (s, t), h))
    return out


def verify_weak(code: CodeSet) -> VerifyReport:
    """Check GC-content and pairwise distance; every violation is reported."""
    return VerifyReport(code.params, "weak", len(code), tuple(_weak_violations(code)))


def verify_strong(code: CodeSet) -> VerifyReport:
    """Weak constraints plus distance >= d from every member's reverse complement,
    the member itself included.

    d(s, rc(t)) == d(t, rc(s)), so unordered pairs plus the diagonal cover all
    ordered pairs.
    """
    n, d = code.params.n, code.params.d
    out = _weak_violations(code)
    members = code.members
    rcs = [rc_code(s.code, n) for s in members]
    for i, s in enumerate(members):
        h = hamming_code(s.code, rcs[i], n)
        if h < d:
            out.append(Violation(ViolationKind.SELF_COMPLEMENT, (s,), h))
    for i, s in enumerate(members):
        for j in range(i + 1, len(members)):
            h = hamming_code(s.code, rcs[j], n)
            if h < d:
                out.append(Violation(ViolationKind.COMPLEMENT_PAIR, (s, members[j]), h))
    return VerifyReport(code.params, "strong", len(code), tuple(out))


def conflicts(code: CodeSet, s: Sequence) -> frozenset[Sequence]:
    """Members too close to ``s`` or to its reverse complement."""
    n, d = code.params.n, code.params.d
    if s.n != n:
        raise LengthMismatch(n, s.n)
    rc = rc_code(s.code, n)
    return frozenset(
        t
        for t in code.members
        if hamming_code(s.code, t.code, n) < d or hamming_code(rc, t.code, n) < d
    )


def halving_upper_bound(a_gc: int) -> int:
    """Upper bound on the strong-code optimum given the weak-code optimum ``a_gc``."""
    if a_gc < 1:
        raise InvalidParams(f"weak optimum must be >= 1, got {a_gc}")
    bound = a_gc // 2
    if bound == 0:
        log.warning("halving bound is 0 for weak optimum %d (degenerate)", a_gc)
    return bound


# ---------------------------------------------------------------- code files

_HEADER_RE = re.compile(r"#\s*n=(\d+)\s+d=(\d+)\s+w=(\d+)(?:\s+size=(\d+))?")


def format_code(code: CodeSet) -> str:
    p = code.params
    lines = [f"# n={p.n} d={p.d} w={p.w} size={len(code)}"]
    lines += code.strings()
    return "\n".join(lines) + "\n"


def write_code(code: CodeSet, path: str | Path) -> None:
    Path(path).write_text(format_code(code), encoding="utf-8")


def parse_code_text(text: str) -> tuple[list[Sequence], CodeParams | None]:
    """Parse code-file text into its sequences and the header parameters, if any."""
    seqs: list[Sequence] = []
    header = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _HEADER_RE.match(line)
            if m and header is None:
                try:
                    header = CodeParams(int(m[1]), int(m[2]), int(m[3]))
                except InvalidParams as exc:
                    raise ParseError(lineno, str(exc)) from exc
            continue
        try:
            seqs.append(parse(line))
        except DnaCodexError as exc:
            raise ParseError(lineno, str(exc)) from exc
    return seqs, header


def read_code(path: str | Path, params: CodeParams | None = None) -> CodeSet:
    """Load a code file.  ``params`` overrides the header; one of them is required."""
    text = Path(path).read_text(encoding="utf-8")
    seqs, header = parse_code_text(text)
    p = params or header
    if p is None:
        raise ParseError(1, "no '# n= d= w=' header and no parameters given")
    return CodeSet(p, seqs)
