"""Constituency parse trees: bracketed I/O, pruning and leaf distances.

Trees are immutable. Node ids are dense integers assigned in preorder, so
two trees built from the same bracketing compare equal with ``==``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, TextIO

__all__ = [
    "TreebankError",
    "UnbalancedBrackets",
    "EmptyInput",
    "LeafWithChildren",
    "NotALeaf",
    "NotInTree",
    "Token",
    "Node",
    "ParseTree",
    "EMPTY_TREE",
    "PruneConfig",
    "DEFAULT_STOPWORDS",
    "parse_bracketed",
    "serialize_bracketed",
    "prune",
    "leaf_path_length",
    "is_punctuation",
    "read_wordlist",
]


class TreebankError(ValueError):
    """Base class for malformed trees and bad tree queries."""


class UnbalancedBrackets(TreebankError):
    pass


class EmptyInput(TreebankError):
    pass


class LeafWithChildren(TreebankError):
    pass


class NotALeaf(TreebankError):
    pass


class NotInTree(TreebankError):
    pass


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    leaf_index: int


@dataclass(frozen=True)
class Node:
    id: int
    label: str
    children: tuple[int, ...] = ()
    token: Optional[Token] = None

    @property
    def is_leaf(self) -> bool:
        return self.token is not None


@dataclass(frozen=True)
class ParseTree:
    """Rooted ordered labeled tree. ``root is None`` marks the empty tree."""

    nodes: tuple[Node, ...] = ()
    root: Optional[int] = None
    _parent: tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        parent = [-1] * len(self.nodes)
        for node in self.nodes:
            for c in node.children:
                parent[c] = node.id
        object.__setattr__(self, "_parent", tuple(parent))

    @property
    def is_empty(self) -> bool:
        return self.root is None

    def __len__(self) -> int:
        return len(self.nodes)

    def __getitem__(self, node_id: int) -> Node:
        return self.nodes[node_id]

    def parent(self, node_id: int) -> Optional[int]:
        p = self._parent[node_id]
        return None if p < 0 else p

    def leaves(self) -> list[Node]:
        """Leaf nodes in left-to-right order."""
        return [n for n in self.preorder() if n.is_leaf]

    def preorder(self) -> Iterator[Node]:
        if self.root is None:
            return
        stack = [self.root]
        while stack:
            node = self.nodes[stack.pop()]
            yield node
            stack.extend(reversed(node.children))

    def edges(self) -> list[tuple[int, int]]:
        """(parent, child) pairs ordered by child id."""
        return [(p, c) for c, p in enumerate(self._parent) if p >= 0]

    def words(self) -> list[str]:
        return [n.token.normalized for n in self.leaves()]

    def shape(self):
        """Nested ``(label, children...)`` tuples; leaves are surface strings.

        Two trees with equal shapes are structurally identical regardless
        of node numbering or token positions.
        """

        def rec(i):
            node = self.nodes[i]
            if node.is_leaf:
                return node.token.surface
            return (node.label,) + tuple(rec(c) for c in node.children)

        return None if self.root is None else rec(self.root)

    def __str__(self) -> str:
        return serialize_bracketed(self)


EMPTY_TREE = ParseTree()


class _Builder:
    def __init__(self):
        self.labels: list[str] = []
        self.children: list[list[int]] = []
        self.tokens: list[Optional[Token]] = []
        self.n_leaves = 0

    def internal(self, label: str) -> int:
        self.labels.append(label)
        self.children.append([])
        self.tokens.append(None)
        return len(self.labels) - 1

    def leaf(self, surface: str, leaf_index: Optional[int] = None) -> int:
        if leaf_index is None:
            leaf_index = self.n_leaves
        self.n_leaves += 1
        self.labels.append(surface)
        self.children.append([])
        self.tokens.append(Token(surface, surface.lower(), leaf_index))
        return len(self.labels) - 1

    def build(self, root: Optional[int]) -> ParseTree:
        if root is None:
            return EMPTY_TREE
        nodes = tuple(
            Node(i, lab, tuple(ch), tok)
            for i, (lab, ch, tok) in enumerate(zip(self.labels, self.children, self.tokens))
        )
        return ParseTree(nodes, root)


_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


def parse_bracketed(text: str) -> ParseTree:
    """Parse one Penn-style bracketed tree.

    >>> t = parse_bracketed("(S (NP (DT the) (NN cat)) (VP (VBD sat)))")
    >>> t.words()
    ['the', 'cat', 'sat']

    A PTB-style unlabeled wrapper ``( (S ...) )`` is unwrapped. Leaves and
    constituents may be siblings (pruned trees serialize that way), but a
    token glued to an opening bracket, as in ``cat(NP dog)``, is rejected.
    A lone bare token is read as a one-leaf tree, which is what pruning
    leaves behind when a single word survives.
    """
    matches = list(_TOKEN_RE.finditer(text))
    toks = [m.group() for m in matches]
    if not toks:
        raise EmptyInput("no tree in input")
    if len(toks) == 1 and toks[0] not in "()":
        b = _Builder()
        return b.build(b.leaf(toks[0], 0))
    if toks[0] != "(":
        raise TreebankError(f"tree must start with '(', got {toks[0]!r}")

    b = _Builder()
    stack: list[int] = []
    root = None
    pos = 0
    while pos < len(toks):
        tok = toks[pos]
        if root is not None and not stack:
            if tok == ")":
                raise UnbalancedBrackets("unexpected ')'")
            raise TreebankError(f"trailing input after tree: {tok!r}")
        if tok == "(":
            nxt = toks[pos + 1] if pos + 1 < len(toks) else None
            if nxt is None:
                raise UnbalancedBrackets("input ends after '('")
            if nxt in "()":
                label = ""
                pos += 1
            else:
                label = nxt
                pos += 2
            node = b.internal(label)
            if stack:
                b.children[stack[-1]].append(node)
            else:
                root = node
            stack.append(node)
            continue
        if tok == ")":
            if not stack:
                raise UnbalancedBrackets("unexpected ')'")
            node = stack.pop()
            if not b.children[node]:
                raise TreebankError(f"constituent {b.labels[node]!r} has no children")
            pos += 1
            continue
        if not stack:
            raise TreebankError(f"bare token outside brackets: {tok!r}")
        end = matches[pos].end()
        if text[end : end + 1] == "(":
            raise LeafWithChildren(f"token {tok!r} is directly followed by '('")
        b.children[stack[-1]].append(b.leaf(tok))
        pos += 1
    if stack:
        raise UnbalancedBrackets(f"{len(stack)} unclosed '('")

    tree = b.build(root)
    top = tree[tree.root]
    if top.label == "" and len(top.children) == 1 and not tree[top.children[0]].is_leaf:
        return _subtree(tree, top.children[0])
    return tree


def serialize_bracketed(tree: ParseTree) -> str:
    if tree.is_empty:
        return ""

    def rec(i):
        node = tree[i]
        if node.is_leaf:
            return node.token.surface
        return "(" + " ".join([node.label] + [rec(c) for c in node.children]) + ")"

    return rec(tree.root)


def _subtree(tree: ParseTree, root: int) -> ParseTree:
    """Copy of the subtree at ``root``, renumbered in preorder."""
    b = _Builder()

    def rec(i):
        node = tree[i]
        if node.is_leaf:
            return b.leaf(node.token.surface, node.token.leaf_index)
        new = b.internal(node.label)
        for c in node.children:
            b.children[new].append(rec(c))
        return new

    return b.build(rec(root))


# --- pruning ---------------------------------------------------------------

DEFAULT_STOPWORDS = frozenset(
    """
    a about above after again against all am an and any are as at be because
    been before being below between both but by can could did do does doing
    down during each few for from further had has have having he her here hers
    herself him himself his how i if in into is it its itself just me more most
    my myself no nor not now of off on once only or other our ours ourselves
    out over own same she should so some such than that the their theirs them
    themselves then there these they this those through to too under until up
    very was we were what when where which while who whom why will with would
    you your yours yourself yourselves 's n't 're 've 'll 'd 'm
    """.split()
)


def _norm_set(items: Iterable[str]) -> frozenset[str]:
    return frozenset(s.strip().lower() for s in items if s.strip())


@dataclass(frozen=True)
class PruneConfig:
    """Filters for pruning.

    ``entities`` is a keep-list: a leaf in it survives even if it is a
    stopword. An empty ``pos_whitelist`` accepts every constituent label.
    """

    stopwords: frozenset[str] = frozenset()
    entities: frozenset[str] = frozenset()
    pos_whitelist: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "stopwords", _norm_set(self.stopwords))
        object.__setattr__(self, "entities", _norm_set(self.entities))
        # labels are compared as written (NP, VBD, ...)
        object.__setattr__(
            self, "pos_whitelist", frozenset(s.strip() for s in self.pos_whitelist if s.strip())
        )

    @classmethod
    def english(cls, **kwargs) -> "PruneConfig":
        return cls(stopwords=DEFAULT_STOPWORDS, **kwargs)


def is_punctuation(word: str) -> bool:
    return not any(ch.isalnum() for ch in word)


def _drop_leaf(token: Token, cfg: PruneConfig) -> bool:
    w = token.normalized
    if is_punctuation(w):
        return True
    if w in cfg.entities:
        return False
    return w in cfg.stopwords


def prune(tree: ParseTree, cfg: PruneConfig = PruneConfig()) -> ParseTree:
    """Prune stopword/punctuation leaves and collapse unary chains.

    Leaves keep their original surface form and sentence position. The
    result is either ``EMPTY_TREE`` or a tree whose internal nodes all have
    at least two children.
    """
    if tree.is_empty:
        return EMPTY_TREE
    b = _Builder()

    def rec(i) -> Optional[int]:
        node = tree[i]
        if node.is_leaf:
            if _drop_leaf(node.token, cfg):
                return None
            return b.leaf(node.token.surface, node.token.leaf_index)
        if cfg.pos_whitelist and node.label not in cfg.pos_whitelist:
            return None
        if len(node.children) == 1:
            return rec(node.children[0])
        kept = [k for k in (rec(c) for c in node.children) if k is not None]
        if not kept:
            return None
        if len(kept) == 1:
            return kept[0]
        new = b.internal(node.label)
        b.children[new] = kept
        return new

    root = rec(tree.root)
    if root is None:
        return EMPTY_TREE
    # children were built before their parents; renumber to preorder
    return _subtree(b.build(root), root)


def leaf_path_length(tree: ParseTree, leaf_a: int, leaf_b: int) -> int:
    """Number of tree edges between two leaves; 1 when they coincide."""
    for leaf in (leaf_a, leaf_b):
        if not 0 <= leaf < len(tree):
            raise NotInTree(f"node {leaf} not in tree")
        if not tree[leaf].is_leaf:
            raise NotALeaf(f"node {leaf} is not a leaf")
    if leaf_a == leaf_b:
        return 1
    return len(tree_path(tree, leaf_a, leaf_b)) - 1


def tree_path(tree: ParseTree, u: int, v: int) -> list[int]:
    """Node ids on the unique path from ``u`` to ``v`` (inclusive)."""
    up = [u]
    while (p := tree.parent(up[-1])) is not None:
        up.append(p)
    depth = {n: d for d, n in enumerate(up)}
    down = [v]
    while down[-1] not in depth:
        down.append(tree.parent(down[-1]))
    meet = down[-1]
    return up[: depth[meet] + 1] + down[-2::-1]


def bfs_distance(tree: ParseTree, u: int, v: int) -> int:
    """Plain BFS distance, kept for cross-checking ``tree_path``."""
    adj: dict[int, list[int]] = {n.id: [] for n in tree.nodes}
    for p, c in tree.edges():
        adj[p].append(c)
        adj[c].append(p)
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist[v]


def read_wordlist(fh: TextIO) -> frozenset[str]:
    """One entry per line; blank lines and ``#`` comments are skipped."""
    out = set()
    for line in fh:
        line = line.strip()
        if line and not line.startswith("#"):
            out.add(line)
    return frozenset(out)
