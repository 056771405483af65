"""Cycle-joining trees over rotation classes, chains, and successor rules.

A cycle-joining tree joins the rotation (necklace) classes of a word set
into one universal cycle.  Nodes are necklaces; each non-root node is
attached to its parent by a conjugate pair (x*stem, y*stem): two words of
length n agreeing everywhere except the first symbol, one in the parent's
class and one in the child's.

A chain is a maximal parent-to-child path whose consecutive edges share a
conjugate word: pairs (x1*b, x2*b), (x2*b, x3*b), ...  Assigning each
chain a fixed-point-free permutation d (a derangement) yields a successor
rule: on a window x_i*b that occurs in a chain's pairs the next symbol is
x_{d(i)}, otherwise the window simply rotates.  The "up" assignment uses
d = (2, 3, ..., m, 1) on every chain and "down" uses d = (m, 1, ..., m-1);
for binary alphabets all chains have two nodes and the two agree.

The four closed-form binary rules in pcr_rule() need no stored tree: they
decide the flip from a necklace test on a rewritten window plus a
membership test when restricted to a subtree's window set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .words import is_necklace, necklace_of, period, rotation_class, format_word


@dataclass(frozen=True)
class ConjugatePair:
    """Two words differing only in the first symbol.

    `up` lies in the parent node's rotation class, `down` in the child's.
    """

    up: tuple
    down: tuple

    def __post_init__(self):
        if len(self.up) != len(self.down) or self.up[1:] != self.down[1:]:
            raise ValueError("conjugates must share everything but the first symbol")
        if self.up[0] == self.down[0]:
            raise ValueError("conjugate first symbols must differ")

    @property
    def stem(self) -> tuple:
        return self.up[1:]

    @property
    def x(self) -> int:
        return self.up[0]

    @property
    def y(self) -> int:
        return self.down[0]


@dataclass(frozen=True)
class Chain:
    """Maximal run of edges sharing conjugate words, parent end first.

    nodes[i] is the parent of nodes[i+1]; the pair joining them is
    (symbols[i] + stem, symbols[i+1] + stem).
    """

    nodes: tuple
    stem: tuple
    symbols: tuple

    def __len__(self) -> int:
        return len(self.nodes)


class CycleJoiningTree:
    """Explicit rooted tree of necklaces joined by conjugate pairs."""

    def __init__(self, root: Sequence[int], parent_edges: Mapping[tuple, tuple], k: int):
        """parent_edges maps child necklace -> (parent necklace, ConjugatePair)."""
        self.root = tuple(root)
        self.k = k
        self.n = len(self.root)
        self.parent_edges: dict[tuple, tuple[tuple, ConjugatePair]] = {
            tuple(c): (tuple(p), pair) for c, (p, pair) in parent_edges.items()
        }
        self.nodes: frozenset = frozenset(self.parent_edges) | {self.root}
        self.children: dict[tuple, list[tuple]] = {v: [] for v in self.nodes}
        for child, (parent, _) in self.parent_edges.items():
            if parent not in self.nodes:
                raise ValueError(f"parent {format_word(parent)} is not a node")
            self.children[parent].append(child)
        self._validate()
        self._chains: list[Chain] | None = None
        self._windows: frozenset | None = None

    def _validate(self) -> None:
        if self.root in self.parent_edges:
            raise ValueError("root must not have a parent edge")
        for v in self.nodes:
            if len(v) != self.n:
                raise ValueError("all nodes must have equal length")
            if not is_necklace(v):
                raise ValueError(f"node {format_word(v)} is not a necklace")
        # Acyclicity / connectivity: walk each node to the root.
        for v in self.nodes:
            seen = set()
            cur = v
            while cur != self.root:
                if cur in seen:
                    raise ValueError(f"cycle through {format_word(v)}")
                seen.add(cur)
                cur = self.parent_edges[cur][0]
        # Pair words must sit in the right rotation classes.
        for child, (parent, pair) in self.parent_edges.items():
            if necklace_of(pair.up)[0] != parent:
                raise ValueError(
                    f"pair word {format_word(pair.up)} is not in the class of "
                    f"{format_word(parent)}"
                )
            if necklace_of(pair.down)[0] != child:
                raise ValueError(
                    f"pair word {format_word(pair.down)} is not in the class of "
                    f"{format_word(child)}"
                )
        # Rotation classes of distinct nodes never overlap.
        seen_words: set = set()
        for v in self.nodes:
            cls = rotation_class(v)
            if seen_words & cls:
                raise ValueError(f"rotation class of {format_word(v)} overlaps another node")
            seen_words |= cls
        # No node may have two children attached through the same stem.
        for parent, kids in self.children.items():
            stems = [self.parent_edges[c][1].stem for c in kids]
            if len(stems) != len(set(stems)):
                dup = next(s for s in stems if stems.count(s) > 1)
                raise ValueError(
                    f"node {format_word(parent)} has two children sharing stem "
                    f"{format_word(dup)}"
                )

    def window_set(self) -> frozenset:
        """Union of the rotation classes of all nodes."""
        if self._windows is None:
            out: set = set()
            for v in self.nodes:
                out |= rotation_class(v)
            self._windows = frozenset(out)
        return self._windows

    def find_chains(self) -> list[Chain]:
        """All maximal chains; every edge belongs to exactly one.

        Edges are glued when the child-side word of one equals the
        parent-side word of the next; isolated edges come out as chains of
        two nodes.
        """
        if self._chains is not None:
            return list(self._chains)
        # For each node, index its child edges by parent-side word.
        down_by_word: dict[tuple, dict[tuple, tuple]] = {}
        for child, (parent, pair) in self.parent_edges.items():
            down_by_word.setdefault(parent, {})[pair.up] = child
        chains: list[Chain] = []
        for child, (parent, pair) in self.parent_edges.items():
            # Start a chain only at an edge with no glued predecessor.
            if parent != self.root:
                up_pair = self.parent_edges[parent][1]
                if up_pair.down == pair.up:
                    continue
            nodes = [parent, child]
            symbols = [pair.x, pair.y]
            stem = pair.stem
            cur, cur_word = child, pair.down
            while True:
                nxt = down_by_word.get(cur, {}).get(cur_word)
                if nxt is None:
                    break
                nxt_pair = self.parent_edges[nxt][1]
                nodes.append(nxt)
                symbols.append(nxt_pair.y)
                cur, cur_word = nxt, nxt_pair.down
            chains.append(Chain(tuple(nodes), stem, tuple(symbols)))
        self._chains = chains
        return list(chains)

    def to_dot(self, name: str = "cycletree") -> str:
        """DOT text: nodes labelled by representative, edges by stem and symbols."""
        lines = [f"digraph {name} {{"]
        ids = {v: i for i, v in enumerate(sorted(self.nodes))}
        for v, i in ids.items():
            lines.append(f'  n{i} [label="{format_word(v)}"];')
        for child, (parent, pair) in sorted(self.parent_edges.items()):
            lab = f"{format_word(pair.stem)}:{pair.x}/{pair.y}"
            lines.append(f'  n{ids[parent]} -> n{ids[child]} [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines)


def build_tree(family, n: int | None = None) -> CycleJoiningTree:
    """Explicit cycle-joining tree for a family at desk scale.

    Enumerates the family's member necklaces and attaches each non-root
    one through the family's parent rule; the constructor then validates
    tree-ness and the stem condition.
    """
    if n is not None and n != family.order:
        raise ValueError(f"family was built for order {family.order}, not {n}")
    edges: dict[tuple, tuple[tuple, ConjugatePair]] = {}
    members = set(family.member_necklaces())
    if family.root not in members:
        raise ValueError(f"root {format_word(family.root)} is not a member")
    for v in members:
        if v == family.root:
            continue
        parent, pair = family.parent(v)
        if parent not in members:
            raise ValueError(
                f"parent rule leaves the family: {format_word(v)} -> {format_word(parent)}"
            )
        edges[v] = (parent, pair)
    return CycleJoiningTree(family.root, edges, family.k)


def _chain_successor_table(
    tree: CycleJoiningTree,
    derangement_for: Callable[[Chain], Sequence[int]],
) -> dict[tuple, int]:
    table: dict[tuple, int] = {}
    for chain in tree.find_chains():
        m = len(chain)
        d = tuple(derangement_for(chain))
        if sorted(d) != list(range(1, m + 1)) or any(d[i] == i + 1 for i in range(m)):
            raise ValueError(f"{d} is not a derangement of 1..{m}")
        for i, x in enumerate(chain.symbols):
            table[(x,) + chain.stem] = chain.symbols[d[i] - 1]
    return table


def _up_derangement(chain: Chain) -> tuple:
    m = len(chain)
    return tuple(range(2, m + 1)) + (1,)


def _down_derangement(chain: Chain) -> tuple:
    m = len(chain)
    return (m,) + tuple(range(1, m))


class ChainSuccessor:
    """Successor rule for the universal cycle induced by a tree.

    Callable on any window in the tree's window set; returns the next
    symbol.  Windows outside the set raise ValueError.
    """

    def __init__(self, tree: CycleJoiningTree, derangement_for: Callable[[Chain], Sequence[int]]):
        self._table = _chain_successor_table(tree, derangement_for)
        self._windows = tree.window_set()

    @classmethod
    def up(cls, tree: CycleJoiningTree) -> "ChainSuccessor":
        """All chains use the cyclic-up derangement (2, 3, ..., m, 1)."""
        return cls(tree, _up_derangement)

    @classmethod
    def down(cls, tree: CycleJoiningTree) -> "ChainSuccessor":
        """All chains use the cyclic-down derangement (m, 1, ..., m-1)."""
        return cls(tree, _down_derangement)

    def __call__(self, w: Sequence[int]) -> int:
        w = tuple(w)
        if w not in self._windows:
            raise ValueError(f"window {format_word(w)} is not covered by this tree")
        nxt = self._table.get(w)
        return w[0] if nxt is None else nxt


def successor_f1(
    tree: CycleJoiningTree,
    derangements: Callable[[Chain], Sequence[int]] | Mapping[tuple, Sequence[int]],
    w: Sequence[int],
) -> int:
    """One evaluation of the chain successor rule.

    `derangements` is either a callable on chains or a mapping keyed by
    (stem, symbols).  Prefer ChainSuccessor for repeated evaluation.
    """
    if callable(derangements):
        fn = derangements
    else:
        mapping = derangements

        def fn(chain: Chain) -> Sequence[int]:
            return mapping[(chain.stem, chain.symbols)]

    return ChainSuccessor(tree, fn)(w)


def successor_up(tree: CycleJoiningTree, w: Sequence[int]) -> int:
    return ChainSuccessor.up(tree)(w)


def successor_down(tree: CycleJoiningTree, w: Sequence[int]) -> int:
    return ChainSuccessor.down(tree)(w)


def pcr_rule(
    variant: int,
    w: Sequence[int],
    membership: Callable[[tuple], bool] | None = None,
) -> int:
    """Closed-form binary successor rules for the four simple parent rules.

    variant 1: trees rooted at all-ones, parent flips the last 0
    variant 2: trees rooted at all-zeros, parent flips the first 1
    variant 3: trees rooted at all-zeros, parent flips the last 1
    variant 4: trees rooted at all-ones, parent flips the first 0

    `membership` restricts to a subtree's window set: the first symbol is
    flipped only when the rewritten window gamma is a necklace and the
    flipped rotation stays inside the set.  With membership None the full
    tree is assumed.
    """
    a = tuple(w)
    n = len(a)
    if any(x not in (0, 1) for x in a):
        raise ValueError("pcr_rule is defined on binary words")
    if variant == 1:
        j = next((i for i in range(1, n) if a[i] == 0), n)  # 0-based; n means absent
        gamma = a[j:] + (0,) + a[1:j]
    elif variant == 2:
        j = max((i for i in range(n) if a[i] == 1), default=-1)
        gamma = a[j + 1 :] + (1,) + a[1 : j + 1]
    elif variant == 3:
        gamma = a[1:] + (1,)
    elif variant == 4:
        gamma = (0,) + a[1:]
    else:
        raise ValueError(f"variant must be 1..4, got {variant}")
    if is_necklace(gamma):
        flipped = a[1:] + (1 - a[0],)
        if membership is None or membership(flipped):
            return 1 - a[0]
    return a[0]
