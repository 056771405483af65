"""Brute-force ground truth: window sets, cycle verification, rule iteration.

Everything here is exact.  Window sets are unions of rotation classes;
verification walks the candidate sequence cyclically by index arithmetic
(never materialising sequence + sequence) and reports the first offenders
on failure.  Binary sets with n at most 24 use a flat bitset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .words import format_word, rotation_class


class OracleError(RuntimeError):
    pass


def enumerate_set(family) -> frozenset:
    """All windows covered by a family: union of its necklace classes."""
    out: set = set()
    for nu in family.member_necklaces():
        out |= rotation_class(nu)
    return frozenset(out)


@dataclass
class Verdict:
    """Outcome of a universal-cycle check."""

    ok: bool
    n: int
    expected: int
    actual: int
    missing: list = field(default_factory=list)
    duplicated: list = field(default_factory=list)

    def report(self) -> str:
        lines = [f"status: {'OK' if self.ok else 'FAIL'}"]
        lines.append(f"windows expected: {self.expected}  sequence length: {self.actual}")
        for title, items in (("missing", self.missing), ("duplicated", self.duplicated)):
            if items:
                shown = ", ".join(format_word(w) for w in items[:10])
                more = "" if len(items) <= 10 else f" (+{len(items) - 10} more)"
                lines.append(f"{title}: {shown}{more}")
        return "\n".join(lines)


def verify_universal_cycle(seq: Sequence[int], windows: Iterable[Sequence[int]]) -> Verdict:
    """Check that every window occurs exactly once in the cyclic sequence."""
    windows = {tuple(w) for w in windows}
    if not windows:
        raise ValueError("empty window set")
    n = len(next(iter(windows)))
    if any(len(w) != n for w in windows):
        raise ValueError("windows must share one length")
    seq = tuple(seq)
    length = len(seq)
    if length == 0:
        raise ValueError("empty sequence")
    verdict = Verdict(ok=False, n=n, expected=len(windows), actual=length)
    binary = all(x in (0, 1) for x in seq) and all(
        x in (0, 1) for x in next(iter(windows))
    )
    if binary and n <= 24:
        return _verify_binary(seq, windows, n, verdict)
    seen: set = set()
    duplicated = []
    for i in range(length):
        if i + n <= length:
            w = seq[i : i + n]
        else:
            w = tuple(seq[(i + j) % length] for j in range(n))
        if w in seen:
            duplicated.append(w)
        seen.add(w)
    verdict.duplicated = duplicated
    verdict.missing = sorted(windows - seen)
    extra = seen - windows
    if extra:
        verdict.duplicated = sorted(set(duplicated) | extra)
    verdict.ok = (
        length == len(windows) and not verdict.missing and not verdict.duplicated
    )
    return verdict


def _verify_binary(seq: tuple, windows: set, n: int, verdict: Verdict) -> Verdict:
    length = len(seq)
    mask = (1 << n) - 1
    want = bytearray(1 << n)
    for w in windows:
        code = 0
        for x in w:
            code = (code << 1) | x
        want[code] = 1
    seen = bytearray(1 << n)
    duplicated = []
    stray = []
    code = 0
    for j in range(n - 1):
        code = (code << 1) | seq[j % length]
    for i in range(length):
        code = ((code << 1) | seq[(i + n - 1) % length]) & mask
        if seen[code]:
            duplicated.append(_decode(code, n))
        elif not want[code]:
            stray.append(_decode(code, n))
        seen[code] = 1
    verdict.duplicated = sorted(set(duplicated) | set(stray))
    verdict.missing = sorted(
        _decode(c, n) for c in range(1 << n) if want[c] and not seen[c]
    )
    verdict.ok = (
        length == verdict.expected and not verdict.missing and not verdict.duplicated
    )
    return verdict


def _decode(code: int, n: int) -> tuple:
    return tuple((code >> (n - 1 - i)) & 1 for i in range(n))


def iterate_successor(
    rule: Callable[[tuple], int], start: Sequence[int], limit: int
) -> tuple:
    """Follow a successor rule until the start window recurs.

    Returns the full cycle beginning with the start window itself.  Raises
    OracleError when the window does not recur within `limit` emissions,
    which signals a rule that is not a successor rule on this domain.
    """
    start = tuple(start)
    n = len(start)
    window = list(start)
    emitted: list[int] = []
    for _ in range(limit):
        s = rule(tuple(window))
        emitted.append(s)
        window.pop(0)
        window.append(s)
        if tuple(window) == start:
            length = len(emitted)
            if length >= n:
                return start + tuple(emitted[: length - n])
            # Cycle shorter than the window: the start is periodic and the
            # cycle is its aperiodic prefix.
            return start[:length]
    raise OracleError(f"start window did not recur within {limit} steps")


def cyclic_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff b is a rotation of a."""
    a = tuple(a)
    b = tuple(b)
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    hay = "," + ",".join(map(str, a + a)) + ","
    needle = "," + ",".join(map(str, b)) + ","
    return needle in hay
