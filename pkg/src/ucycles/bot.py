"""Bifurcated ordered trees (BOTs) and their right-current-left traversal.

A BOT is a rooted tree whose children are split into an ordered list of
left-children and an ordered list of right-children.  The RCL traversal
of a node visits the right-children first to last, then the node, then
the left-children first to last.

Counting uses the generating identity: a tree is a root plus a sequence
of left subtrees plus a sequence of right subtrees, so with L(m) the
number of forests (ordered sequences of BOTs) on m nodes,

    T(i) = sum_{j=0}^{i-1} L(j) * L(i-1-j),     L(m) = sum_{s>=1} T(s) * L(m-s).

The first terms of T are 1, 2, 7, 30, 143, 728, ...
"""

from __future__ import annotations

import random
from typing import Any, Callable, Iterator


class BotNode:
    """One tree node: a payload plus ordered left/right child lists."""

    __slots__ = ("payload", "left", "right")

    def __init__(self, payload: Any = None, left: list | None = None, right: list | None = None):
        self.payload = payload
        self.left: list[BotNode] = left if left is not None else []
        self.right: list[BotNode] = right if right is not None else []

    def __repr__(self) -> str:
        return f"BotNode({self.payload!r}, left={len(self.left)}, right={len(self.right)})"


class Bot:
    """A rooted bifurcated ordered tree, immutable after construction."""

    def __init__(self, root: BotNode):
        self.root = root
        self._parent: dict[int, BotNode | None] = {}
        self._order: list[BotNode] = []
        self._index: dict[int, int] = {}
        self._build()

    def _build(self) -> None:
        parent = self._parent
        parent[id(self.root)] = None
        stack = [self.root]
        seen = {id(self.root)}
        while stack:
            node = stack.pop()
            for child in node.left + node.right:
                if id(child) in seen:
                    raise ValueError("node appears twice; not a tree")
                seen.add(id(child))
                parent[id(child)] = node
                stack.append(child)
        self._order = self._rcl(self.root)
        self._index = {id(node): i for i, node in enumerate(self._order)}

    @staticmethod
    def _rcl(root: BotNode) -> list[BotNode]:
        # Explicit stack; entries are (node, emitted) pairs.
        out: list[BotNode] = []
        stack: list[tuple[BotNode, bool]] = [(root, False)]
        while stack:
            node, emitted = stack.pop()
            if emitted:
                out.append(node)
                continue
            # Reverse push order so rights come out first, then the node,
            # then lefts, each list first to last.
            for child in reversed(node.left):
                stack.append((child, False))
            stack.append((node, True))
            for child in reversed(node.right):
                stack.append((child, False))
        return out

    def rcl_order(self) -> list[BotNode]:
        """Nodes in right-current-left order; each node exactly once."""
        return list(self._order)

    def nodes(self) -> list[BotNode]:
        return list(self._order)

    def size(self) -> int:
        return len(self._order)

    def parent(self, node: BotNode) -> BotNode | None:
        return self._parent[id(node)]

    def is_ancestor(self, a: BotNode, b: BotNode) -> bool:
        """True iff a is an ancestor of b (a == b counts)."""
        cur: BotNode | None = b
        while cur is not None:
            if cur is a:
                return True
            cur = self._parent[id(cur)]
        return False

    def leftmost_right_descendant(self, node: BotNode) -> BotNode:
        while node.right:
            node = node.right[0]
        return node

    def rightmost_left_descendant(self, node: BotNode) -> BotNode:
        while node.left:
            node = node.left[-1]
        return node

    def classify_adjacent(self, x: BotNode, y: BotNode) -> str:
        """Case label a..f for y immediately following x in cyclic RCL order.

        a: x is an ancestor of y (y is the leftmost right-descendant of x's
           first left-child)
        b: x is a descendant of y (x is the rightmost left-descendant of y's
           last right-child)
        c: x and y hang off consecutive children of a common ancestor
        d: cyclic wrap, x is the root
        e: cyclic wrap, y is the root
        f: cyclic wrap, neither endpoint is the root
        """
        order = self._order
        ix = self._index.get(id(x))
        iy = self._index.get(id(y))
        if ix is None or iy is None or (ix + 1) % len(order) != iy:
            raise ValueError("nodes are not cyclically adjacent in RCL order")
        if iy == 0:
            if x is self.root:
                return "d"
            if y is self.root:
                return "e"
            return "f"
        if self.is_ancestor(x, y):
            return "a"
        if self.is_ancestor(y, x):
            return "b"
        return "c"

    def to_dot(self, label: Callable[[Any], str] = str, name: str = "bot") -> str:
        """DOT text; left edges blue, right edges red."""
        lines = [f"digraph {name} {{"]
        ids = {id(node): i for i, node in enumerate(self._order)}
        for node in self._order:
            lines.append(f'  n{ids[id(node)]} [label="{label(node.payload)}"];')
        for node in self._order:
            for child in node.left:
                lines.append(f"  n{ids[id(node)]} -> n{ids[id(child)]} [color=blue];")
            for child in node.right:
                lines.append(f"  n{ids[id(node)]} -> n{ids[id(child)]} [color=red];")
        lines.append("}")
        return "\n".join(lines)


def count_bots(n: int) -> int:
    """Exact number of distinct BOTs with n nodes."""
    if n < 1:
        raise ValueError("need at least one node")
    return _count_table(n)[0][n]


def _count_table(n: int) -> tuple[list[int], list[int]]:
    t = [0] * (n + 1)  # t[i]: trees with i nodes
    l = [0] * (n + 1)  # l[m]: ordered forests with m nodes total
    l[0] = 1
    for i in range(1, n + 1):
        t[i] = sum(l[j] * l[i - 1 - j] for j in range(i))
        l[i] = sum(t[s] * l[i - s] for s in range(1, i + 1))
    return t, l


# A shape is a pair (lefts, rights) of tuples of shapes.
Shape = tuple


def all_shapes(n: int) -> Iterator[Shape]:
    """All distinct BOT shapes with n nodes (nested (lefts, rights) pairs)."""
    if n < 1:
        raise ValueError("need at least one node")
    for j in range(n):
        for lefts in _forests(j):
            for rights in _forests(n - 1 - j):
                yield (lefts, rights)


def _forests(m: int) -> Iterator[tuple]:
    if m == 0:
        yield ()
        return
    for first_size in range(1, m + 1):
        for first in all_shapes(first_size):
            for rest in _forests(m - first_size):
                yield (first,) + rest


def bot_from_shape(shape: Shape, payloads: Iterator[Any] | None = None) -> Bot:
    """Materialise a shape as a Bot; payloads are assigned in build order."""
    counter = iter(range(10**9)) if payloads is None else payloads

    def build(s: Shape) -> BotNode:
        node = BotNode(next(counter))
        node.left = [build(c) for c in s[0]]
        node.right = [build(c) for c in s[1]]
        return node

    return Bot(build(shape))


def random_shape(n: int, rng: random.Random) -> Shape:
    """A random BOT shape with n nodes (not uniform; fine for property tests)."""
    if n == 1:
        return ((), ())
    j = rng.randint(0, n - 1)
    return (_random_forest(j, rng), _random_forest(n - 1 - j, rng))


def _random_forest(m: int, rng: random.Random) -> tuple:
    parts: list[Shape] = []
    while m > 0:
        s = rng.randint(1, m)
        parts.append(random_shape(s, rng))
        m -= s
    return tuple(parts)
