"""Labeled rooted trees and the subspace-configuration varieties they index.

A labeled tree is a finite rooted tree whose edges all point toward the
root, together with a positive integer label on each vertex that strictly
increases along every edge.  Such a tree indexes the variety of tuples of
subspaces of an ambient space (one subspace per vertex, of dimension equal
to the label, the root carrying the full space) nested according to the
edges.  This module provides the tree type, validation, and the purely
combinatorial operations: dimension, branches and widths, subtrees,
vertex deletion, and truncation by distance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import (
    BadRange,
    EmptyInput,
    LabelViolation,
    NotATree,
    RootForbidden,
    UnknownVertex,
)

MAX_LABEL = 10**6


class LabeledTree:
    """Immutable rooted tree with labels strictly increasing toward the root.

    Construct through :func:`validate_tree` (or directly; the constructor
    validates).  ``labels`` maps vertex names to positive integers and
    ``edges`` is a set of ``(source, target)`` pairs pointing toward the
    root.  The root is inferred as the unique vertex with no outgoing edge
    and its label is the ambient dimension.
    """

    __slots__ = ("labels", "edges", "root", "ambient", "parent", "children", "_dist")

    def __init__(self, labels: dict[str, int], edges) -> None:
        if not labels:
            raise EmptyInput("a tree needs at least one vertex")
        labels = {str(v): k for v, k in labels.items()}
        for v, k in labels.items():
            if not isinstance(k, int) or isinstance(k, bool) or k <= 0:
                raise LabelViolation(f"label of {v!r} must be a positive integer, got {k!r}")
            if k > MAX_LABEL:
                raise LabelViolation(f"label of {v!r} exceeds the cap {MAX_LABEL}")
        edge_set = set()
        for s, t in edges:
            s, t = str(s), str(t)
            if s not in labels:
                raise NotATree(f"edge ({s!r}, {t!r}) references unknown vertex {s!r}")
            if t not in labels:
                raise NotATree(f"edge ({s!r}, {t!r}) references unknown vertex {t!r}")
            if labels[s] >= labels[t]:
                raise LabelViolation(
                    f"edge ({s!r}, {t!r}) needs label {labels[s]} < {labels[t]}"
                )
            edge_set.add((s, t))
        parent: dict[str, str] = {}
        for s, t in edge_set:
            if s in parent:
                raise NotATree(f"vertex {s!r} has two outgoing edges")
            parent[s] = t
        roots = [v for v in labels if v not in parent]
        if len(roots) > 1:
            raise NotATree(f"disconnected: {len(roots)} vertices have no outgoing edge")
        # labels strictly increase along edges, so cycles are impossible and a
        # unique sink means every vertex reaches it
        self.labels = dict(labels)
        self.edges = frozenset(edge_set)
        self.parent = parent
        self.root = roots[0]
        self.ambient = labels[self.root]
        children: dict[str, list[str]] = {v: [] for v in labels}
        for s, t in edge_set:
            children[t].append(s)
        for v in children:
            children[v].sort()
        self.children = children
        dist = {self.root: 0}
        queue = [self.root]
        while queue:
            t = queue.pop()
            for s in children[t]:
                dist[s] = dist[t] + 1
                queue.append(s)
        self._dist = dist

    @property
    def vertices(self) -> list[str]:
        return sorted(self.labels)

    @property
    def leaves(self) -> list[str]:
        return sorted(v for v in self.labels if not self.children[v])

    def label(self, v: str) -> int:
        if v not in self.labels:
            raise UnknownVertex(f"no vertex named {v!r}")
        return self.labels[v]

    def distance(self, v: str) -> int:
        """Number of edges on the chain from v to the root."""
        if v not in self.labels:
            raise UnknownVertex(f"no vertex named {v!r}")
        return self._dist[v]

    @property
    def depth(self) -> int:
        return max(self._dist.values())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LabeledTree)
            and self.labels == other.labels
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.labels.items())), self.edges))

    def __repr__(self) -> str:
        return f"LabeledTree({to_dsl(self)!r})"


def validate_tree(labels: dict[str, int], edges) -> LabeledTree:
    """Check the tree axioms and return the validated tree.

    Raises EmptyInput, LabelViolation (labels not positive, above the cap,
    or not strictly increasing along an edge), or NotATree (unknown
    endpoint, a vertex with two outgoing edges, or no unique root).
    """
    return LabeledTree(labels, edges)


def dimension(tree: LabeledTree) -> int:
    """Dimension of the configuration variety: sum of phi(s)(phi(t)-phi(s)) over edges."""
    lab = tree.labels
    return sum(lab[s] * (lab[t] - lab[s]) for s, t in tree.edges)


@dataclass(frozen=True)
class Branch:
    """Maximal chain from a leaf toward the root avoiding merge points and the root.

    ``vertices`` is ordered from the leaf upward.
    """

    vertices: tuple[str, ...]

    @property
    def leaf(self) -> str:
        return self.vertices[0]

    @property
    def length(self) -> int:
        return len(self.vertices)


def branches(tree: LabeledTree) -> list[Branch]:
    """All branches, ordered by leaf name.

    Each branch starts at a leaf and extends toward the root while the next
    vertex is the target of exactly one edge, stopping before the root and
    before any vertex where a second chain merges in.  A single-vertex tree
    has no branch.
    """
    out = []
    for leaf in tree.leaves:
        if leaf == tree.root:
            continue
        path = [leaf]
        cur = leaf
        while True:
            up = tree.parent[cur]
            if up == tree.root or len(tree.children[up]) >= 2:
                break
            path.append(up)
            cur = up
        out.append(Branch(tuple(path)))
    return out


def min_width(tree: LabeledTree, branch: Branch) -> int:
    """min of the leaf label and every label gap along edges leaving the branch."""
    lab = tree.labels
    gaps = [lab[tree.parent[v]] - lab[v] for v in branch.vertices]
    return min([lab[branch.leaf]] + gaps)


def subtree_at(tree: LabeledTree, v: str) -> LabeledTree:
    """Induced tree on v and every vertex whose chain to the root passes through v."""
    if v not in tree.labels:
        raise UnknownVertex(f"no vertex named {v!r}")
    keep = {v}
    queue = [v]
    while queue:
        t = queue.pop()
        for s in tree.children[t]:
            keep.add(s)
            queue.append(s)
    labels = {u: tree.labels[u] for u in keep}
    edges = [(s, t) for s, t in tree.edges if s in keep and t in keep]
    return LabeledTree(labels, edges)


def forget_vertex(tree: LabeledTree, v: str) -> tuple[LabeledTree, bool]:
    """Delete v, reattaching its sources to its target.

    Returns the contracted tree and a surjectivity flag for the induced
    map of configuration varieties: the map is onto exactly when the labels
    of the sources feeding into v sum to at most the label of v.
    """
    if v not in tree.labels:
        raise UnknownVertex(f"no vertex named {v!r}")
    if v == tree.root:
        raise RootForbidden("cannot forget the root vertex")
    up = tree.parent[v]
    labels = {u: k for u, k in tree.labels.items() if u != v}
    edges = []
    for s, t in tree.edges:
        if s == v:
            continue
        edges.append((s, up if t == v else t))
    surjective = sum(tree.labels[s] for s in tree.children[v]) <= tree.labels[v]
    return LabeledTree(labels, edges), surjective


@dataclass(frozen=True)
class TruncationResult:
    """Tree cut at distance m from the root, plus the subtrees hanging below the cut."""

    base: LabeledTree
    hanging: tuple[LabeledTree, ...]


def truncate(tree: LabeledTree, m: int) -> TruncationResult:
    """Split into the radius-m tree around the root and the subtrees below it.

    ``base`` is induced on vertices at distance <= m.  For each vertex at
    distance exactly m with something strictly deeper, the full subtree at
    that vertex is returned as a hanging tree (rooted there, so the variety
    dimensions of base and hanging trees add up to the whole).  Beyond the
    depth the base is the whole tree and nothing hangs.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise BadRange(f"truncation distance must be an integer >= 1, got {m!r}")
    keep = {v for v in tree.labels if tree.distance(v) <= m}
    labels = {v: tree.labels[v] for v in keep}
    edges = [(s, t) for s, t in tree.edges if s in keep and t in keep]
    base = LabeledTree(labels, edges)
    hanging = tuple(
        subtree_at(tree, v)
        for v in sorted(keep)
        if tree.distance(v) == m and tree.children[v]
    )
    return TruncationResult(base, hanging)


def to_json_dict(tree: LabeledTree) -> dict:
    """Plain-data form with vertices and edges sorted."""
    return {
        "labels": {v: tree.labels[v] for v in sorted(tree.labels)},
        "edges": [list(e) for e in sorted(tree.edges)],
    }


def to_canonical_json(tree: LabeledTree) -> str:
    """Byte-stable JSON text: sorted keys, no whitespace."""
    return json.dumps(to_json_dict(tree), sort_keys=True, separators=(",", ":"))


def _token(tree: LabeledTree, v: str) -> str:
    return v if v == str(tree.labels[v]) else f"{v}:{tree.labels[v]}"


def to_dsl(tree: LabeledTree) -> str:
    """Chain notation: one leaf-to-root chain per leaf, joined with '|'."""
    if len(tree.labels) == 1:
        return _token(tree, tree.root)
    parts = []
    for leaf in tree.leaves:
        path = [leaf]
        while path[-1] != tree.root:
            path.append(tree.parent[path[-1]])
        parts.append(">".join(_token(tree, v) for v in path))
    return " | ".join(parts)
