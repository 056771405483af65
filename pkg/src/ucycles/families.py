"""Concrete object families and their parent rules and child oracles.

Each family packages, for one order n: the alphabet, the tree root, a
membership test on necklaces, a parent rule mapping every non-root member
necklace to (parent necklace, joining conjugate pair), a default root
change index and conversion mode, and optionally a specialised child
oracle for streaming.

Families provided:

* four binary de Bruijn trees, by their customary names
    granddaddy  root all-ones,  parent flips the last 0,  (c=1, right)
    grandmama   root all-zeros, parent flips the first 1, (c=n, left)
    granny      root all-zeros, parent flips the last 1,  (c=1, right)
    grandpa     root all-ones,  parent flips the first 0, (c=n, left)
  with optional subtree restrictions: minimum weight or a forbidden
  all-zero run for granddaddy/grandpa, maximum weight or a forbidden
  all-one run for grandmama/granny;

* shorthand permutations (length n-1 prefixes of permutations of 1..n);

* weak orders (rank vectors with ties over 1..n);

* orientable windows (rotation classes of asymmetric bracelets), whose
  universal cycle never contains both a window and its reversal.

The fast child oracles for the non-binary families work in the necklace
frame and translate indices through the label's rotation offset, so they
are valid for any label rotation.  The binary fast oracles assume the
label shapes produced by the default conversions (necklaces for
granddaddy/grandmama, representatives with the zero prefix rotated to the
suffix for granny); use the generic oracle when overriding the root
change index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from .concat import GenericChildOracle, TabulatedOracle
from .cyclejoin import ConjugatePair
from .words import (
    is_asymmetric_bracelet,
    is_necklace,
    is_shorthand_perm,
    is_weak_order,
    necklace_of,
    rotate_left,
)

ParentResult = tuple[tuple, ConjugatePair]


@dataclass(frozen=True)
class FamilySpec:
    """Pluggable definition of one object family at a fixed order."""

    name: str
    order: int
    k: int
    symbols: tuple
    root: tuple
    change_index: int
    mode: str
    is_member: Callable[[tuple], bool]
    parent: Callable[[tuple], ParentResult]
    fast_child_factory: Optional[Callable[[], TabulatedOracle]]
    height_bound: int

    @property
    def word_length(self) -> int:
        return len(self.root)

    def member_necklaces(self) -> Iterator[tuple]:
        """All member necklaces, by exhaustive filtering (desk scale)."""
        for w in itertools.product(self.symbols, repeat=self.word_length):
            if is_necklace(w) and self.is_member(w):
                yield w

    def child_oracle(self, fast: bool = True):
        if fast and self.fast_child_factory is not None:
            return self.fast_child_factory()
        return GenericChildOracle(self)


def _pair_at(nu: tuple, j: int, new_symbol: int) -> ConjugatePair:
    """Conjugate pair for changing position j (1-based) of nu.

    The child-side word is nu rotated to start at j; the parent side is
    the same word with its first symbol replaced.
    """
    down = rotate_left(nu, j - 1)
    up = (new_symbol,) + down[1:]
    return ConjugatePair(up=up, down=down)


# ---------------------------------------------------------------------------
# Binary de Bruijn trees


def _weight(w: Sequence[int]) -> int:
    return sum(w)


def _max_cyclic_run(w: Sequence[int], symbol: int) -> int:
    n = len(w)
    if all(x == symbol for x in w):
        return n
    best = run = 0
    # Doubling handles the wrap-around run.
    for x in list(w) + list(w):
        if x == symbol:
            run += 1
            if run > best:
                best = run
        else:
            run = 0
    return min(best, n)


DB_NAMES = {1: "granddaddy", 2: "grandmama", 3: "granny", 4: "grandpa"}


def db_family(
    n: int,
    variant: int,
    min_weight: int | None = None,
    max_weight: int | None = None,
    no_zero_run: int | None = None,
    no_one_run: int | None = None,
) -> FamilySpec:
    """Binary tree family for one of the four simple parent rules.

    Subtree restrictions must keep the node set closed under the parent
    rule: a minimum weight or a forbidden zero run only combine with
    variants 1 and 4 (whose parent rules only ever raise weight), a
    maximum weight or a forbidden one run only with variants 2 and 3.
    """
    if variant not in (1, 2, 3, 4):
        raise ValueError(f"variant must be 1..4, got {variant}")
    if n < 1:
        raise ValueError("n must be positive")
    if (min_weight is not None or no_zero_run is not None) and variant not in (1, 4):
        raise ValueError("minimum weight / forbidden zero run need variant 1 or 4")
    if (max_weight is not None or no_one_run is not None) and variant not in (2, 3):
        raise ValueError("maximum weight / forbidden one run need variant 2 or 3")
    if no_zero_run is not None and no_zero_run < 1:
        raise ValueError("forbidden run length must be at least 1")
    if no_one_run is not None and no_one_run < 1:
        raise ValueError("forbidden run length must be at least 1")

    constraints: list[Callable[[tuple], bool]] = []
    suffix = []
    if min_weight is not None:
        constraints.append(lambda w: _weight(w) >= min_weight)
        suffix.append(f"min-weight={min_weight}")
    if max_weight is not None:
        constraints.append(lambda w: _weight(w) <= max_weight)
        suffix.append(f"max-weight={max_weight}")
    if no_zero_run is not None:
        constraints.append(lambda w: _max_cyclic_run(w, 0) < no_zero_run)
        suffix.append(f"no-zero-run={no_zero_run}")
    if no_one_run is not None:
        constraints.append(lambda w: _max_cyclic_run(w, 1) < no_one_run)
        suffix.append(f"no-one-run={no_one_run}")

    def member(nu: tuple) -> bool:
        return all(c(nu) for c in constraints)

    root = (1,) * n if variant in (1, 4) else (0,) * n
    if not member(root):
        raise ValueError("restrictions exclude the root")

    parent = {1: _db1_parent, 2: _db2_parent, 3: _db3_parent, 4: _db4_parent}[variant]
    member_arg = member if constraints else None
    factory = {
        1: lambda: Db1ChildOracle(member_arg),
        2: lambda: Db2ChildOracle(member_arg),
        3: lambda: Db3ChildOracle(member_arg),
        4: None,
    }[variant]
    name = DB_NAMES[variant]
    if suffix:
        name += "[" + ",".join(suffix) + "]"
    return FamilySpec(
        name=name,
        order=n,
        k=2,
        symbols=(0, 1),
        root=root,
        change_index=1 if variant in (1, 3) else n,
        mode="right" if variant in (1, 3) else "left",
        is_member=member,
        parent=parent,
        fast_child_factory=factory,
        height_bound=n + 2,
    )


def _db1_parent(nu: tuple) -> ParentResult:
    """Flip the last 0; the result is itself a necklace."""
    j = max(i for i in range(len(nu)) if nu[i] == 0) + 1
    parent = nu[: j - 1] + (1,) + nu[j:]
    return parent, _pair_at(nu, j, 1)


def _db2_parent(nu: tuple) -> ParentResult:
    """Flip the first 1; the result is itself a necklace."""
    j = nu.index(1) + 1
    parent = nu[: j - 1] + (0,) + nu[j:]
    return parent, _pair_at(nu, j, 0)


def _db3_parent(nu: tuple) -> ParentResult:
    """Flip the last 1, then rotate to the least rotation."""
    j = max(i for i in range(len(nu)) if nu[i] == 1) + 1
    flipped = nu[: j - 1] + (0,) + nu[j:]
    return necklace_of(flipped)[0], _pair_at(nu, j, 0)


def _db4_parent(nu: tuple) -> ParentResult:
    """Flip the first 0, then rotate to the least rotation."""
    j = nu.index(0) + 1
    flipped = nu[: j - 1] + (1,) + nu[j:]
    return necklace_of(flipped)[0], _pair_at(nu, j, 1)


class _InstrumentedOracle(TabulatedOracle):
    """Counts necklace tests so streaming cost stays observable."""

    def __init__(self, member: Callable[[tuple], bool] | None):
        self.member = member
        self.calls = 0
        self.necklace_tests = 0
        self.failed_tests = 0


class Db1ChildOracle(_InstrumentedOracle):
    """Children of a granddaddy label: turn a 1 after the last 0 into a 0.

    Labels are necklaces under the default conversion.  The candidate with
    position i lowered is a child exactly when it is still a necklace (and
    a member, for subtrees).
    """

    def children_of(self, label) -> list[tuple[int, int]]:
        self.calls += 1
        n = len(label)
        z = 0
        for i in range(n - 1, -1, -1):
            if label[i] == 0:
                z = i + 1
                break
        member = self.member
        scratch = list(label)
        out = []
        tests = 0
        for i in range(z + 1, n + 1):
            scratch[i - 1] = 0
            tests += 1
            if is_necklace(scratch):
                if member is None or member(tuple(scratch)):
                    out.append((i, 0))
            else:
                self.failed_tests += 1
            scratch[i - 1] = 1
        self.necklace_tests += tests
        return out


class Db2ChildOracle(_InstrumentedOracle):
    """Children of a grandmama label: raise a 0 before the first 1 to a 1.

    Necessary bounds before the necklace test: the new leading zero run
    (i-1) must reach both half of the old one and the longest zero run of
    the tail.
    """

    def children_of(self, label) -> list[tuple[int, int]]:
        self.calls += 1
        n = len(label)
        member = self.member
        z = 0
        for i in range(n):
            if label[i] == 1:
                z = i + 1
                break
        if z == 0:
            # All-zero root: its only child rewrites the last position.
            cand = (0,) * (n - 1) + (1,)
            if member is None or member(cand):
                return [(n, 1)]
            return []
        zrun = run = 0
        for i in range(z, n):
            if label[i] == 0:
                run += 1
                if run > zrun:
                    zrun = run
            else:
                run = 0
        lo = max((z + 1) // 2, zrun + 1, 1)
        scratch = list(label)
        out = []
        tests = 0
        for i in range(lo, z):
            scratch[i - 1] = 1
            tests += 1
            if is_necklace(scratch):
                if member is None or member(tuple(scratch)):
                    out.append((i, 1))
            else:
                self.failed_tests += 1
            scratch[i - 1] = 0
        self.necklace_tests += tests
        return out


class Db3ChildOracle(_InstrumentedOracle):
    """Children of a granny label: raise a 0 after the last 1.

    Labels carry the zero prefix of their necklace rotated to the suffix,
    so a non-root label starts with 1 and ends with the zero run holding
    all child positions.  The candidate rotated back to leading zeros must
    be a necklace.
    """

    def children_of(self, label) -> list[tuple[int, int]]:
        self.calls += 1
        a = list(label)
        n = len(a)
        member = self.member
        c = 0
        for i in range(n - 1, -1, -1):
            if a[i] == 1:
                c = i + 1
                break
        if c == 0:
            # All-zero root: the child pair fits at any position; the
            # caller's acceptable range narrows it to the change index.
            cand = (0,) * (n - 1) + (1,)
            if member is None or member(cand):
                return [(i, 1) for i in range(1, n + 1)]
            return []
        zrun = run = 0
        for i in range(c - 1):
            if a[i] == 0:
                run += 1
                if run > zrun:
                    zrun = run
            else:
                run = 0
        hi = min(n - (n - c) // 2, n - zrun)
        out = []
        tests = 0
        for i in range(c + 1, hi + 1):
            cand = a[i:] + a[: i - 1]
            cand.append(1)
            tests += 1
            if is_necklace(cand):
                if member is None or member(tuple(cand)):
                    out.append((i, 1))
            else:
                self.failed_tests += 1
        self.necklace_tests += tests
        return out


# ---------------------------------------------------------------------------
# Shorthand permutations


def perm_family(n: int) -> FamilySpec:
    """Shorthand permutations of order n: length n-1 prefixes of permutations."""
    if n < 3:
        raise ValueError("shorthand permutations need n >= 3")
    total = n * (n + 1) // 2

    def member(nu: tuple) -> bool:
        return is_shorthand_perm(nu, n)

    def parent(nu: tuple) -> ParentResult:
        z = total - sum(nu)
        if z == n:
            j = next(i for i in range(2, n) if nu[i - 1] < nu[i - 2])
        else:
            j = nu.index(z + 1) + 1
        word = nu[: j - 1] + (z,) + nu[j:]
        return necklace_of(word)[0], _pair_at(nu, j, z)

    return FamilySpec(
        name="perms",
        order=n,
        k=n,
        symbols=tuple(range(1, n + 1)),
        root=tuple(range(1, n)),
        change_index=n - 1,
        mode="left",
        is_member=member,
        parent=parent,
        fast_child_factory=lambda: PermChildOracle(n),
        height_bound=n * n + 2 * n + 4,
    )


def perm_child_table(nu: tuple, n: int) -> list[tuple[int, int]]:
    """Child positions of a shorthand-permutation necklace.

    A node has at most two children, both placing the missing symbol z:
    over the symbol z-1, or over the symbol n when the prefix before it is
    increasing and ends above z.  Either candidate counts only if the
    replacement is itself a necklace.
    """
    total = n * (n + 1) // 2
    z = total - sum(nu)
    out = []
    if z >= 2:
        j = nu.index(z - 1) + 1
        cand = nu[: j - 1] + (z,) + nu[j:]
        if is_necklace(cand):
            out.append((j, z))
    if z != n:
        j = nu.index(n) + 1
        if j > 1 and z < nu[j - 2]:
            prefix = nu[: j - 1]
            if all(prefix[i] < prefix[i + 1] for i in range(len(prefix) - 1)):
                cand = nu[: j - 1] + (z,) + nu[j:]
                if is_necklace(cand):
                    out.append((j, z))
    out.sort()
    return out


class _NecklaceFrameOracle(TabulatedOracle):
    """Computes the table on the label's necklace, then shifts indices."""

    def __init__(self):
        self.calls = 0

    def necklace_children(self, nu: tuple) -> list[tuple[int, int]]:
        raise NotImplementedError

    def children_of(self, label) -> list[tuple[int, int]]:
        self.calls += 1
        label = tuple(label)
        n = len(label)
        nu, r = necklace_of(label)
        entries = self.necklace_children(nu)
        if r == 0:
            return entries
        out = [((j - 1 + r) % n + 1, y) for j, y in entries]
        out.sort()
        return out


class PermChildOracle(_NecklaceFrameOracle):
    def __init__(self, n: int):
        super().__init__()
        self.n = n

    def necklace_children(self, nu: tuple) -> list[tuple[int, int]]:
        return perm_child_table(nu, self.n)


# ---------------------------------------------------------------------------
# Weak orders


def weak_family(n: int) -> FamilySpec:
    """Weak orders of order n in rank representation."""
    if n < 2:
        raise ValueError("weak orders need n >= 2")

    def parent(nu: tuple) -> ParentResult:
        counts: dict[int, int] = {}
        for s in nu:
            counts[s] = counts.get(s, 0) + 1
        if all(c == 1 for s, c in counts.items() if s != 1):
            m = counts.get(1, 0)
            j = nu.index(m + 1) + 1
            x = 1
        else:
            j = max(i for i in range(n) if nu[i] != 1 and counts[nu[i]] > 1) + 1
            x = nu[j - 1] + counts[nu[j - 1]] - 1
        word = nu[: j - 1] + (x,) + nu[j:]
        return necklace_of(word)[0], _pair_at(nu, j, x)

    return FamilySpec(
        name="weak",
        order=n,
        k=n,
        symbols=tuple(range(1, n + 1)),
        root=(1,) * n,
        change_index=n,
        mode="left",
        is_member=is_weak_order,
        parent=parent,
        fast_child_factory=lambda: WeakChildOracle(),
        height_bound=2 * n + 4,
    )


def weak_child_table(nu: tuple) -> tuple[list[tuple[int, int]], int, int]:
    """Child positions of a weak-order necklace: (entries, failed, tested).

    Two kinds of children exist.  When every non-1 symbol of the node is
    unique, each 1 may rise to m = (count of 1s), undoing the rule that
    turns the symbol m+1 of such a node back into a 1.  Independently,
    scanning from the right up to (not including) the last repeated non-1
    position, a unique symbol s > 1 may drop to the largest smaller symbol
    y present, provided y > 1, the replacement is a necklace, and y does
    not occur again further right.  Failing necklace tests are counted;
    they are the only part of the scan not paid for by a discovered child.
    """
    n = len(nu)
    counts: dict[int, int] = {}
    for s in nu:
        counts[s] = counts.get(s, 0) + 1
    m = counts.get(1, 0)
    entries: list[tuple[int, int]] = []
    if m >= 2 and all(c == 1 for s, c in counts.items() if s != 1):
        for j in range(n):
            if nu[j] == 1:
                entries.append((j + 1, m))
    distinct = sorted(counts)
    tested = failed = 0
    seen: set[int] = set()
    for j in range(n - 1, -1, -1):
        s = nu[j]
        if s > 1 and counts[s] > 1:
            break
        if s > 1:
            y = _largest_below(distinct, s)
            if y > 1:
                cand = nu[:j] + (y,) + nu[j + 1 :]
                tested += 1
                if is_necklace(cand):
                    if y not in seen:
                        entries.append((j + 1, y))
                else:
                    failed += 1
        seen.add(s)
    entries.sort()
    return entries, failed, tested


def _largest_below(sorted_symbols: list[int], s: int) -> int:
    # Binary search is overkill at these lengths; symbols are few.
    best = 0
    for x in sorted_symbols:
        if x >= s:
            break
        best = x
    return best


class WeakChildOracle(_NecklaceFrameOracle):
    """Weak-order child oracle with necklace-test accounting."""

    def __init__(self, record_failures: bool = False):
        super().__init__()
        self.necklace_tests = 0
        self.failed_tests = 0
        self.failure_log: dict[tuple, int] | None = {} if record_failures else None

    def necklace_children(self, nu: tuple) -> list[tuple[int, int]]:
        entries, failed, tested = weak_child_table(nu)
        self.necklace_tests += tested
        self.failed_tests += failed
        if self.failure_log is not None:
            self.failure_log[nu] = failed
        return entries


# ---------------------------------------------------------------------------
# Orientable windows (asymmetric bracelets)


def orientable_family(n: int) -> FamilySpec:
    """Rotation classes of asymmetric bracelets of length n.

    Asymmetric bracelets first exist at n = 6; below that every binary
    bracelet class coincides with its reversal's class, so no window set
    for an orientable cycle is closed under rotation.
    """
    if n < 6:
        raise ValueError(
            "orientable families need n >= 6: every shorter binary bracelet is symmetric"
        )
    root = (0,) * (n - 4) + (1, 0, 1, 1)

    def parent(nu: tuple) -> ParentResult:
        for word, j, sym in _orientable_parent_candidates(nu):
            target = necklace_of(word)[0]
            if is_asymmetric_bracelet(target):
                return target, _pair_at(nu, j, sym)
        raise ValueError(f"no parent rule applies to {nu}")

    return FamilySpec(
        name="orientable",
        order=n,
        k=2,
        symbols=(0, 1),
        root=root,
        change_index=n,
        mode="right",
        is_member=is_asymmetric_bracelet,
        parent=parent,
        fast_child_factory=None,
        height_bound=n * n + 2 * n + 8,
    )


def _orientable_parent_candidates(nu: tuple):
    """Candidate parents in rule order: lower the first 1, zero the final
    position, raise the last 0."""
    n = len(nu)
    i = nu.index(1) + 1
    yield nu[: i - 1] + (0,) + nu[i:], i, 0
    yield nu[: n - 1] + (0,), n, 0
    j = max(t for t in range(n) if nu[t] == 0) + 1
    yield nu[: j - 1] + (1,) + nu[j:], j, 1


# ---------------------------------------------------------------------------
# Registry


def make_family(
    name: str,
    n: int,
    min_weight: int | None = None,
    max_weight: int | None = None,
    no_zero_run: int | None = None,
    no_one_run: int | None = None,
) -> FamilySpec:
    """Family registry used by the command line."""
    restricted = any(
        v is not None for v in (min_weight, max_weight, no_zero_run, no_one_run)
    )
    variants = {"granddaddy": 1, "grandmama": 2, "granny": 3, "grandpa": 4}
    if name in variants:
        return db_family(
            n,
            variants[name],
            min_weight=min_weight,
            max_weight=max_weight,
            no_zero_run=no_zero_run,
            no_one_run=no_one_run,
        )
    if restricted:
        raise ValueError(f"weight/run restrictions only apply to the binary families, not {name}")
    if name == "perms":
        return perm_family(n)
    if name == "weak":
        return weak_family(n)
    if name == "orientable":
        return orientable_family(n)
    raise ValueError(f"unknown family {name!r}")


FAMILY_NAMES = ("granddaddy", "grandmama", "granny", "grandpa", "perms", "weak", "orientable")
