"""Core string primitives over small integer alphabets.

A word is a plain tuple (or list) of small non-negative integers.  Binary
families use symbols {0, 1}; rank-valued families (weak orders, shorthand
permutations) use 1..n directly so that printed words match the usual
rank notation digit for digit.

The necklace test and the least-rotation computation are both linear
time; the quadratic compare-all-rotations versions live in the test tree
as oracles.
"""

from __future__ import annotations

from typing import Sequence

Word = tuple  # alias: words are tuples of ints


def period(w: Sequence[int]) -> int:
    """Smallest p such that w is (w[:p]) repeated; p always divides len(w)."""
    n = len(w)
    if n == 0:
        raise ValueError("empty word has no period")
    # KMP failure function; the candidate period is n minus the longest border.
    fail = [0] * n
    k = 0
    for i in range(1, n):
        wi = w[i]
        while k > 0 and w[k] != wi:
            k = fail[k - 1]
        if w[k] == wi:
            k += 1
        fail[i] = k
    p = n - fail[n - 1]
    return p if n % p == 0 else n


def aperiodic_prefix(w: Sequence[int]) -> tuple:
    """Shortest prefix whose repetition reproduces w."""
    return tuple(w[: period(w)])


def ap_concat(ws: Sequence[Sequence[int]]) -> tuple:
    """Concatenate the aperiodic prefixes of each word, in order."""
    if not ws:
        raise ValueError("ap_concat needs at least one word")
    out: list[int] = []
    for w in ws:
        out.extend(w[: period(w)])
    return tuple(out)


def rotate_left(w: Sequence[int], r: int) -> tuple:
    """Rotation moving the first r symbols to the end."""
    if not 0 <= r <= len(w):
        raise ValueError(f"rotation amount {r} out of range for length {len(w)}")
    return tuple(w[r:]) + tuple(w[:r])


def least_rotation(w: Sequence[int]) -> int:
    """Index of the lexicographically least rotation (Booth's algorithm).

    Returns the smallest left-rotation amount r such that rotate_left(w, r)
    is minimal among all rotations.
    """
    s = list(w) + list(w)
    n2 = len(s)
    f = [-1] * n2
    k = 0
    for j in range(1, n2):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % len(w)


def necklace_of(w: Sequence[int]) -> tuple[tuple, int]:
    """The lexicographically least rotation and the amount producing it."""
    r = least_rotation(w)
    return rotate_left(w, r), r


def is_necklace(w: Sequence[int]) -> bool:
    """True iff w equals its lexicographically least rotation.  O(n)."""
    n = len(w)
    if n == 0:
        raise ValueError("empty word")
    p = 1
    for i in range(1, n):
        a, b = w[i], w[i - p]
        if a < b:
            return False
        if a > b:
            p = i + 1
    return n % p == 0


def rotation_class(w: Sequence[int]) -> set:
    """All distinct rotations of w; cardinality equals period(w)."""
    t = tuple(w)
    return {t[r:] + t[:r] for r in range(len(t))}


def bracelet_of(w: Sequence[int]) -> tuple:
    """Least word among all rotations of w and of its reversal."""
    fwd, _ = necklace_of(w)
    rev, _ = necklace_of(tuple(reversed(w)))
    return min(fwd, rev)


def is_asymmetric_bracelet(w: Sequence[int]) -> bool:
    """True iff w is a bracelet whose rotation class differs from its reversal's."""
    t = tuple(w)
    fwd, _ = necklace_of(t)
    rev, _ = necklace_of(tuple(reversed(t)))
    return t == min(fwd, rev) and fwd != rev


def is_weak_order(w: Sequence[int]) -> bool:
    """Validity of a rank-with-ties vector over {1..n} with n = len(w).

    Sorted ranks r1 <= ... <= rn are valid when r1 = 1 and each later rank
    either repeats its predecessor or jumps exactly to its own position.
    """
    n = len(w)
    if n == 0 or any(not 1 <= x <= n for x in w):
        return False
    r = sorted(w)
    if r[0] != 1:
        return False
    for i in range(1, n):
        if r[i] != r[i - 1] and r[i] != i + 1:
            return False
    return True


def is_shorthand_perm(w: Sequence[int], n: int) -> bool:
    """True iff w is a length n-1 prefix of some permutation of {1..n}."""
    return (
        len(w) == n - 1
        and all(1 <= x <= n for x in w)
        and len(set(w)) == n - 1
    )


def format_word(w: Sequence[int]) -> str:
    """Contiguous digits when every symbol is at most 9, else comma separated."""
    if all(0 <= x <= 9 for x in w):
        return "".join(str(x) for x in w)
    return ",".join(str(x) for x in w)


def parse_word(text: str) -> tuple:
    """Inverse of format_word."""
    text = text.strip()
    if not text:
        raise ValueError("empty word")
    if "," in text:
        return tuple(int(part) for part in text.split(","))
    if not text.isdigit():
        raise ValueError(f"not a word: {text!r}")
    return tuple(int(ch) for ch in text)
