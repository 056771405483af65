"""Concatenation trees: conversion, explicit traversal, and the streaming generator.

A concatenation tree relabels a cycle-joining tree.  The root keeps its
necklace with an arbitrary change index c; every other node's label is
its parent's label with exactly one position replaced, namely the
position (inside the parent's acceptable range) where the joining
conjugate pair sits, and that position becomes the child's change index.

The acceptable range of a label with period p and change index c is the
length-p block of positions {jp+1..jp+p} containing c; replacements are
confined to it so that concatenating aperiodic prefixes never repeats a
window.

Children with a smaller change index than their parent hang left, larger
hang right, equal goes left or right according to the tree's mode; each
side is ordered by increasing change index.  Reading the tree in
right-current-left order and concatenating the aperiodic prefix of every
label yields a universal cycle for the union of the node classes.

stream_rcl() produces the same sequence without materialising the tree:
it keeps one label buffer, asks a child oracle which positions carry
children, descends by overwriting a single symbol and restores it on the
way back, emitting one aperiodic prefix per node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Protocol, Sequence

from .bot import Bot, BotNode
from .cyclejoin import CycleJoiningTree
from .words import ap_concat, format_word, necklace_of, period, rotate_left

LEFT = "left"
RIGHT = "right"


def acceptable_range(label: Sequence[int], change_index: int) -> tuple[int, int]:
    """Inclusive 1-based block of positions usable for child changes."""
    n = len(label)
    if not 1 <= change_index <= n:
        raise ValueError(f"change index {change_index} out of range 1..{n}")
    p = period(label)
    j = (change_index - 1) // p
    return j * p + 1, j * p + p


@dataclass(frozen=True)
class ConcatNode:
    """Payload of a concatenation-tree node: a label and its change index."""

    label: tuple
    change_index: int


class ConcatTree:
    """A Bot over ConcatNode payloads plus the tie-breaking mode."""

    def __init__(self, bot: Bot, mode: str):
        if mode not in (LEFT, RIGHT):
            raise ValueError(f"mode must be {LEFT!r} or {RIGHT!r}")
        self.bot = bot
        self.mode = mode
        self._validate()

    @property
    def root(self) -> BotNode:
        return self.bot.root

    def _validate(self) -> None:
        mode = self.mode
        for node in self.bot.nodes():
            payload: ConcatNode = node.payload
            n = len(payload.label)
            if not 1 <= payload.change_index <= n:
                raise ValueError("change index out of range")
            lo, hi = acceptable_range(payload.label, payload.change_index)
            kids = [(c, "left") for c in node.left] + [(c, "right") for c in node.right]
            for child, side in kids:
                cp: ConcatNode = child.payload
                diffs = [i for i in range(n) if cp.label[i] != payload.label[i]]
                if diffs != [cp.change_index - 1]:
                    raise ValueError(
                        f"label {format_word(cp.label)} does not differ from its "
                        f"parent exactly at index {cp.change_index}"
                    )
                if not lo <= cp.change_index <= hi:
                    raise ValueError(
                        f"change index {cp.change_index} of {format_word(cp.label)} "
                        f"lies outside the acceptable range {lo}..{hi} of "
                        f"{format_word(payload.label)}"
                    )
                c = payload.change_index
                ci = cp.change_index
                ok = (ci < c or (ci == c and mode == LEFT)) if side == "left" else (
                    ci > c or (ci == c and mode == RIGHT)
                )
                if not ok:
                    raise ValueError(
                        f"child {format_word(cp.label)} (index {ci}) sits on the "
                        f"wrong side of {format_word(payload.label)} (index {c})"
                    )
            for lst in (node.left, node.right):
                indices = [c.payload.change_index for c in lst]
                if indices != sorted(indices) or len(set(indices)) != len(indices):
                    raise ValueError("children must be ordered by distinct change index")

    def rcl_nodes(self) -> list[ConcatNode]:
        return [node.payload for node in self.bot.rcl_order()]

    def to_dot(self, name: str = "concattree") -> str:
        return self.bot.to_dot(
            label=lambda p: f"{format_word(p.label)} [{p.change_index}]", name=name
        )


def convert(tree: CycleJoiningTree, root_change_index: int, mode: str) -> ConcatTree:
    """Concatenation tree for a cycle-joining tree, in the given mode."""
    n = tree.n
    if not 1 <= root_change_index <= n:
        raise ValueError(f"root change index {root_change_index} out of range 1..{n}")
    labels: dict[tuple, tuple] = {tree.root: tree.root}
    indices: dict[tuple, int] = {tree.root: root_change_index}
    bot_nodes: dict[tuple, BotNode] = {
        tree.root: BotNode(ConcatNode(tree.root, root_change_index))
    }
    # Parents before children: walk outward from the root.
    queue = [tree.root]
    while queue:
        v = queue.pop()
        label = labels[v]
        lo, hi = acceptable_range(label, indices[v])
        placed: list[tuple[int, BotNode]] = []
        for child in tree.children[v]:
            pair = tree.parent_edges[child][1]
            i = next(
                (i for i in range(lo, hi + 1) if rotate_left(label, i - 1) == pair.up),
                None,
            )
            if i is None:
                raise ValueError(
                    f"conjugate word {format_word(pair.up)} cannot be placed inside "
                    f"the acceptable range {lo}..{hi} of {format_word(label)}"
                )
            child_label = label[: i - 1] + (pair.y,) + label[i:]
            labels[child] = child_label
            indices[child] = i
            bot_nodes[child] = BotNode(ConcatNode(child_label, i))
            placed.append((i, bot_nodes[child]))
            queue.append(child)
        placed.sort(key=lambda t: t[0])
        c = indices[v]
        node = bot_nodes[v]
        for i, bn in placed:
            goes_left = i < c or (i == c and mode == LEFT)
            (node.left if goes_left else node.right).append(bn)
    return ConcatTree(Bot(bot_nodes[tree.root]), mode)


def rcl_sequence(tree: ConcatTree) -> tuple:
    """Concatenated aperiodic prefixes of the labels in RCL order."""
    return ap_concat([p.label for p in tree.rcl_nodes()])


class SymbolSink(Protocol):
    """Streaming consumer: one call per node with that node's symbol batch."""

    def emit(self, batch: Sequence[int], label: Sequence[int], change_index: int) -> None: ...


class CollectSink:
    """Accumulates every emitted symbol."""

    def __init__(self):
        self.symbols: list[int] = []

    def emit(self, batch, label, change_index):
        self.symbols.extend(batch)

    def word(self) -> tuple:
        return tuple(self.symbols)


class CountingSink:
    """Counts symbols and batches without storing them."""

    def __init__(self):
        self.symbols = 0
        self.batches = 0

    def emit(self, batch, label, change_index):
        self.symbols += len(batch)
        self.batches += 1


class ChildOracle(Protocol):
    """Child lookup for the implicit concatenation tree of a family.

    children_of(label) lists the (1-based index, symbol) pairs, in
    increasing index order, at which some position of the label can be
    replaced to reach a child node; calling the oracle with a single
    index answers just that position.  The caller is responsible for
    restricting indices to the current node's acceptable range.
    """

    def children_of(self, label: Sequence[int]) -> list[tuple[int, int]]: ...

    def __call__(self, label: Sequence[int], i: int) -> Optional[int]: ...


class TabulatedOracle:
    """Base class turning a children_of implementation into a ChildOracle."""

    def __call__(self, label: Sequence[int], i: int) -> Optional[int]:
        for idx, sym in self.children_of(label):
            if idx == i:
                return sym
        return None


class GenericChildOracle(TabulatedOracle):
    """Inverts a family's parent rule position by position.

    For index i, rotate the label to start there (word u); for each other
    symbol y the candidate child-side word is y + u[1:].  The candidate is
    a child exactly when its necklace is a family member whose parent rule
    points back at this node through that very pair.
    """

    def __init__(self, family):
        self.family = family
        self.calls = 0

    def children_of(self, label: Sequence[int]) -> list[tuple[int, int]]:
        self.calls += 1
        fam = self.family
        label = tuple(label)
        n = len(label)
        nu = necklace_of(label)[0]
        out: list[tuple[int, int]] = []
        for i in range(1, n + 1):
            u = label[i - 1 :] + label[: i - 1]
            for y in fam.symbols:
                if y == u[0]:
                    continue
                v = (y,) + u[1:]
                child_neck = necklace_of(v)[0]
                if child_neck == fam.root or not fam.is_member(child_neck):
                    continue
                parent, pair = fam.parent(child_neck)
                if parent == nu and pair.up == u and pair.down == v:
                    out.append((i, y))
                    break
        return out


def oracle_children(
    label: Sequence[int], change_index: int, oracle: ChildOracle, mode: str
) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """(left, right) child lists for one node, both by increasing index.

    Applies the acceptable range of (label, change_index) and the mode's
    tie side; indices outside the range are treated as absent.
    """
    ell = 1 if mode == LEFT else 0
    lo, hi = acceptable_range(label, change_index)
    entries = oracle.children_of(label)
    lhi = min(change_index - 1 + ell, hi)
    rlo = max(change_index + ell, lo)
    lefts = [(i, y) for (i, y) in entries if lo <= i <= lhi]
    rights = [(i, y) for (i, y) in entries if rlo <= i <= hi]
    return lefts, rights


@dataclass
class StreamStats:
    """Work accounting for one stream_rcl run."""

    nodes: int = 0
    symbols: int = 0
    periodic_nodes: int = 0
    max_depth: int = 0

    @property
    def aperiodic_nodes(self) -> int:
        return self.nodes - self.periodic_nodes


class InconsistentOracleError(RuntimeError):
    """The oracle descended deeper than any consistent tree allows."""


def stream_rcl(
    root: Sequence[int],
    change_index: int,
    mode: str,
    child: ChildOracle,
    sink: SymbolSink,
    max_depth: int | None = None,
) -> StreamStats:
    """Emit the RCL sequence of the implied concatenation tree, batch by batch.

    One shared label buffer is mutated in place: descending to a child
    overwrites one symbol, returning restores it.  Right children are
    visited for indices change_index + l .. n and left children for
    1 .. change_index - 1 + l, with l = 1 for left mode and 0 for right
    mode, always intersected with the node's acceptable range.
    """
    if mode not in (LEFT, RIGHT):
        raise ValueError(f"mode must be {LEFT!r} or {RIGHT!r}")
    n = len(root)
    if not 1 <= change_index <= n:
        raise ValueError(f"change index {change_index} out of range 1..{n}")
    if max_depth is None:
        max_depth = 4 * n * n + 64
    ell = 1 if mode == LEFT else 0
    label = list(root)
    stats = StreamStats()
    children_of = child.children_of
    emit = sink.emit
    # Proper divisors of n, for the per-node period computation: the
    # period is the least divisor d whose d-shift overlaps the label.
    divisors = [d for d in range(1, n) if n % d == 0]

    # Frame: [c, entries, idx, stage, lefts, pos, saved, p]
    #   stage 0: scanning right children, 1: scanning left children
    #   pos/saved: 1-based position overwritten on the way in (0 for root)
    def new_frame(c: int, pos: int, saved: int) -> list:
        p = n
        first = label[0]
        for d in divisors:
            if label[d] == first and label[d:] == label[:-d]:
                p = d
                break
        j = (c - 1) // p
        lo = j * p + 1
        hi = j * p + p
        entries = children_of(label)
        lhi = c - 1 + ell
        if hi < lhi:
            lhi = hi
        rlo = c + ell
        if lo > rlo:
            rlo = lo
        # Pre-trim to the block so the scan loops only see legal indices.
        lefts = [e for e in entries if lo <= e[0] <= lhi]
        rights = [e for e in entries if rlo <= e[0] <= hi]
        stats.nodes += 1
        if p != n:
            stats.periodic_nodes += 1
        return [c, rights, 0, 0, lefts, pos, saved, p]

    stack = [new_frame(change_index, 0, 0)]
    depth = 1
    stats.max_depth = 1
    while stack:
        f = stack[-1]
        stage = f[3]
        entries = f[1] if stage == 0 else f[4]
        idx = f[2]
        if idx < len(entries):
            i, y = entries[idx]
            f[2] = idx + 1
            saved = label[i - 1]
            label[i - 1] = y
            stack.append(new_frame(i, i, saved))
            depth += 1
            if depth > max_depth:
                raise InconsistentOracleError(
                    f"descended past depth {max_depth}; the child oracle does "
                    f"not describe a finite tree"
                )
            if depth > stats.max_depth:
                stats.max_depth = depth
            continue
        if stage == 0:
            p = f[7]
            emit(label[:p], label, f[0])
            stats.symbols += p
            f[3] = 1
            f[2] = 0
            continue
        stack.pop()
        depth -= 1
        if f[5]:
            label[f[5] - 1] = f[6]
    return stats
