"""Partition trees and the H-, pre-Q- and Q-tree families.

A partition tree is a rooted binary plane tree whose root has a single child
edge ``e0``.  Nodes are numbered in preorder; node ``i`` owns the edge that
joins it to its parent, so edge ``0`` is ``e0``.  Every non-leaf node has
exactly two ordered children and carries an excess label

    f_V(v) = f_E(left) + f_E(right) - f_E(parent) + 1 >= 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence


class TreeClass(enum.Enum):
    PARTITION = "partition"
    H = "h"
    PRE_Q = "preq"
    Q = "q"
    WELL_BASED_Q = "wellbasedq"


class PreconditionError(ValueError):
    """Raised when an operation receives a tree outside its domain."""


@lru_cache(maxsize=65536)
def _structure(shape: str) -> tuple:
    """Child, parent and subtree-end arrays of a preorder shape string."""
    if not shape or set(shape) - {"0", "1"}:
        raise ValueError(f"invalid shape string {shape!r}")
    n = len(shape)
    left = [-1] * n
    right = [-1] * n
    parent = [-1] * n
    end = [0] * n
    stack = []
    for i in range(n):
        if i:
            if not stack:
                raise ValueError(f"shape {shape!r} is not a full binary tree")
            p = stack[-1]
            parent[i] = p
            if left[p] < 0:
                left[p] = i
            else:
                right[p] = i
                stack.pop()
        if shape[i] == "1":
            stack.append(i)
    if stack:
        raise ValueError(f"shape {shape!r} is not a full binary tree")
    for i in reversed(range(n)):
        end[i] = i + 1 if shape[i] == "0" else end[right[i]]
    return tuple(left), tuple(right), tuple(parent), tuple(end)


class PartitionTree:
    """Immutable labelled binary plane tree.

    ``shape`` is the preorder bit-string of the tree hanging below ``e0``
    ('1' = internal vertex, '0' = leaf) and ``edge_labels`` gives ``f_E`` in
    the same order.  Vertex labels follow from
    ``f_V = f_E(left) + f_E(right) - f_E(parent) + 1`` and must be non-negative.
    """

    __slots__ = ("shape", "edge_labels", "left", "right", "parent", "end",
                 "_vertex_labels", "_hash")

    def __init__(self, shape: str, edge_labels: Sequence[int]):
        shape = str(shape)
        edge_labels = tuple(int(x) for x in edge_labels)
        if len(shape) != len(edge_labels):
            raise ValueError("shape and edge_labels differ in length")
        left, right, self.parent, self.end = _structure(shape)
        n = len(shape)
        self.shape = shape
        self.edge_labels = edge_labels
        self.left = left
        self.right = right
        vl = {}
        for v in range(n):
            if shape[v] == "1":
                f = edge_labels[left[v]] + edge_labels[right[v]] - edge_labels[v] + 1
                if f < 0:
                    raise ValueError(f"negative excess {f} at vertex {v}")
                vl[v] = f
        self._vertex_labels = vl
        self._hash = hash((shape, edge_labels))

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_leaves(cls, shape: str, leaf_labels: Sequence[int],
                    vertex_labels: Sequence[int] | None = None) -> "PartitionTree":
        """Reconstruct edge labels bottom-up from leaf labels and excesses.

        ``vertex_labels`` lists ``f_V`` over internal vertices in preorder;
        all zero when omitted (the pre-Q-tree case).
        """
        n = len(shape)
        internal = [i for i, c in enumerate(shape) if c == "1"]
        leaves = [i for i, c in enumerate(shape) if c == "0"]
        if len(leaf_labels) != len(leaves):
            raise ValueError("wrong number of leaf labels")
        if vertex_labels is None:
            vertex_labels = [0] * len(internal)
        if len(vertex_labels) != len(internal):
            raise ValueError("wrong number of vertex labels")
        left, right, _, _ = _structure(shape)
        labels = [0] * n
        for i, x in zip(leaves, leaf_labels):
            labels[i] = x
        excess = dict(zip(internal, vertex_labels))
        for v in reversed(internal):
            labels[v] = labels[left[v]] + labels[right[v]] + 1 - excess[v]
        return cls(shape, labels)

    @classmethod
    def single(cls, label: int) -> "PartitionTree":
        return cls("0", [label])

    @classmethod
    def join(cls, left: "PartitionTree", right: "PartitionTree", root_label: int) -> "PartitionTree":
        """Tree whose root edge (label ``root_label``) ends at a vertex carrying ``left`` and ``right``."""
        return cls("1" + left.shape + right.shape,
                   (root_label,) + left.edge_labels + right.edge_labels)

    # -- basic queries ------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, PartitionTree) and self.shape == other.shape
                and self.edge_labels == other.edge_labels)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PartitionTree({self.shape!r}, {list(self.edge_labels)})"

    def __len__(self):
        return len(self.shape)

    @property
    def base_length(self) -> int:
        return self.edge_labels[0]

    @property
    def degree(self) -> int:
        return self.shape.count("0")

    def is_leaf(self, v: int) -> bool:
        return self.shape[v] == "0"

    def internal_vertices(self) -> list[int]:
        return [i for i, c in enumerate(self.shape) if c == "1"]

    def leaves(self) -> list[int]:
        return [i for i, c in enumerate(self.shape) if c == "0"]

    def label(self, e: int) -> int:
        return self.edge_labels[e]

    def excess(self, v: int) -> int:
        """f_V(v) for an internal vertex."""
        try:
            return self._vertex_labels[v]
        except KeyError:
            raise ValueError(f"{v} is not an internal vertex") from None

    @property
    def vertex_labels(self) -> tuple[int, ...]:
        return tuple(self._vertex_labels[v] for v in self.internal_vertices())

    def subtree(self, v: int) -> "PartitionTree":
        """The tree hanging from edge ``v`` (which becomes the new root edge)."""
        e = self.end[v]
        return PartitionTree(self.shape[v:e], self.edge_labels[v:e])

    def with_labels(self, labels: Sequence[int]) -> "PartitionTree":
        return PartitionTree(self.shape, labels)

    def leaf_labels(self) -> tuple[int, ...]:
        return tuple(self.edge_labels[i] for i in self.leaves())

    # -- serialization ------------------------------------------------------

    def to_dict(self, cls: TreeClass | None = None) -> dict:
        return {
            "class": (cls or TreeClass.PARTITION).value,
            "degree": self.degree,
            "base_length": self.base_length,
            "shape": self.shape,
            "edge_labels": list(self.edge_labels),
            "vertex_labels": list(self.vertex_labels),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "PartitionTree":
        tree = cls(doc["shape"], doc["edge_labels"])
        if "vertex_labels" in doc and list(doc["vertex_labels"]) != list(tree.vertex_labels):
            raise ValueError("vertex labels violate f_V = f_E(L) + f_E(R) - f_E(parent) + 1")
        if "degree" in doc and doc["degree"] != tree.degree:
            raise ValueError("degree field does not match the shape")
        if "base_length" in doc and doc["base_length"] != tree.base_length:
            raise ValueError("base_length field does not match e0")
        return tree


# ---------------------------------------------------------------------------
# vertex types and paths


def is_bottom(tree: PartitionTree, v: int) -> bool:
    fe = tree.edge_labels
    return (fe[v] <= 0) < (fe[tree.left[v]] <= 0) + (fe[tree.right[v]] <= 0)


def classify_vertex(tree: PartitionTree, v: int) -> str:
    """Return ``"bottom"`` or ``"top"`` for an internal vertex ``v``."""
    if not isinstance(v, int) or not 0 <= v < len(tree) or tree.is_leaf(v):
        raise ValueError(f"{v!r} is not an internal vertex of the tree")
    return "bottom" if is_bottom(tree, v) else "top"


@dataclass(frozen=True)
class Path:
    kind: str  # "regular", "root" or "special"
    vertex: int | None  # starting internal vertex; None for the root path
    edges: tuple[int, ...]

    @property
    def last_edge(self) -> int:
        return self.edges[-1]


@dataclass
class PathSystem:
    paths: list[Path]
    regular: dict[int, Path] = field(default_factory=dict)
    root: Path | None = None

    def strongest_edge(self, tree: PartitionTree, path: Path) -> int:
        """Edge closest to the root attaining the maximal label of ``path``."""
        best = path.edges[0]
        for e in path.edges[1:]:
            if tree.label(e) > tree.label(best):
                best = e
        return best

    def is_strong(self, tree: PartitionTree, path: Path) -> bool:
        last = tree.label(path.last_edge)
        return all(tree.label(e) < last for e in path.edges[:-1])

    def edge_sets(self) -> dict[tuple, frozenset]:
        return {(p.kind, p.vertex): frozenset(p.edges) for p in self.paths}


def _descend(tree: PartitionTree, first: int) -> tuple[int, ...]:
    fe = tree.edge_labels
    edges = [first]
    u = first
    while not tree.is_leaf(u):
        l, r = tree.left[u], tree.right[u]
        if fe[l] <= 0:
            u = l
        elif fe[r] <= 0:
            u = r
        else:
            raise PreconditionError(f"no non-positive child below edge {u}")
        edges.append(u)
    return tuple(edges)


def _h_or_preq_problems(tree: PartitionTree) -> list[str]:
    h = _h_violations(tree)
    q = _preq_violations(tree)
    return [] if not h or not q else h + q


def build_paths(tree: PartitionTree, check: bool = True) -> PathSystem:
    """Regular, root and special paths of an H-tree or pre-Q-tree."""
    if check and _h_or_preq_problems(tree):
        raise PreconditionError("paths are only defined for H-trees and pre-Q-trees")
    fe = tree.edge_labels
    paths = []
    system = PathSystem(paths)
    if fe[0] <= 0:
        p = Path("root", None, _descend(tree, 0))
        paths.append(p)
        system.root = p
    for v in tree.internal_vertices():
        if not is_bottom(tree, v):
            continue
        l, r = tree.left[v], tree.right[v]
        start = r if fe[r] <= 0 else l
        p = Path("regular", v, _descend(tree, start))
        paths.append(p)
        system.regular[v] = p
        if fe[v] > 0 and fe[l] <= 0 and fe[r] <= 0:
            paths.append(Path("special", v, _descend(tree, l)))
    return system


# ---------------------------------------------------------------------------
# class membership


def _h_violations(tree: PartitionTree) -> list[str]:
    out = []
    fe = tree.edge_labels
    for e in range(len(tree)):
        if (fe[e] == 0) != tree.is_leaf(e):
            kind = "leaf" if tree.is_leaf(e) else "internal"
            out.append(f"zero labels: {kind} edge {e} has label {fe[e]}")
    for v in tree.internal_vertices():
        if not is_bottom(tree, v) and tree.excess(v) != 0:
            out.append(f"top excess: top vertex {v} has excess {tree.excess(v)}")
    return out


def _preq_violations(tree: PartitionTree) -> list[str]:
    out = []
    fe = tree.edge_labels
    for e in tree.leaves():
        if fe[e] > 0:
            out.append(f"leaf labels: leaf edge {e} has positive label {fe[e]}")
    for v in tree.internal_vertices():
        if tree.excess(v) != 0:
            out.append(f"excess: vertex {v} has excess {tree.excess(v)}")
    return out


@dataclass
class ValidationReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate(tree: PartitionTree, cls: TreeClass) -> ValidationReport:
    """List every violated clause of ``cls`` (empty list means membership)."""
    if cls is TreeClass.PARTITION:
        return ValidationReport([])
    if cls is TreeClass.H:
        return ValidationReport(_h_violations(tree))
    out = _preq_violations(tree)
    if cls is TreeClass.PRE_Q or out:
        return ValidationReport(out)
    system = build_paths(tree, check=False)
    for p in system.paths:
        if not system.is_strong(tree, p):
            out.append(f"strong paths: {p.kind} path {list(p.edges)} is not strong")
    if cls is TreeClass.WELL_BASED_Q and tree.base_length <= 0:
        if tree.label(system.root.last_edge) != 0:
            out.append("root path does not end on a label-0 edge")
    return ValidationReport(out)


def is_member(tree: PartitionTree, cls: TreeClass) -> bool:
    return validate(tree, cls).ok


def _require(tree: PartitionTree, cls: TreeClass) -> None:
    report = validate(tree, cls)
    if not report.ok:
        raise PreconditionError(f"not a {cls.value}-tree: {report.violations[0]}")


# ---------------------------------------------------------------------------
# label shifts


def _shift_paths(tree: PartitionTree, shifts: Iterable[tuple[Path, int]]) -> list[int]:
    labels = list(tree.edge_labels)
    for path, delta in shifts:
        for e in path.edges:
            labels[e] += delta
    return labels


def psi(h: PartitionTree) -> PartitionTree:
    """H-tree -> well-based Q-tree: lower each regular path by its vertex excess."""
    _require(h, TreeClass.H)
    system = build_paths(h, check=False)
    labels = _shift_paths(h, ((p, -h.excess(v)) for v, p in system.regular.items()))
    return h.with_labels(labels)


def psi_inv(q: PartitionTree) -> PartitionTree:
    """Well-based Q-tree -> H-tree."""
    _require(q, TreeClass.WELL_BASED_Q)
    system = build_paths(q, check=False)
    labels = _shift_paths(q, ((p, -q.label(p.last_edge)) for p in system.regular.values()))
    return q.with_labels(labels)


def psi_hat(h: PartitionTree, p: int) -> PartitionTree:
    """H-tree of base p' in [p, 0] -> Q-tree of base p (p < 0)."""
    if p >= 0:
        raise ValueError("psi_hat needs a negative target base-length")
    pp = h.base_length
    if not p <= pp <= 0:
        raise ValueError(f"base-length {pp} outside [{p}, 0]")
    _require(h, TreeClass.H)
    system = build_paths(h, check=False)
    shifts = [(path, -h.excess(v)) for v, path in system.regular.items()]
    shifts.append((system.root, p - pp))
    return h.with_labels(_shift_paths(h, shifts))


def psi_hat_inv(q: PartitionTree) -> PartitionTree:
    """Q-tree of negative base -> H-tree of base in [p, 0]."""
    if q.base_length >= 0:
        raise PreconditionError("psi_hat_inv needs a negative base-length")
    _require(q, TreeClass.Q)
    system = build_paths(q, check=False)
    shifts = [(path, -q.label(path.last_edge)) for path in system.regular.values()]
    shifts.append((system.root, -q.label(system.root.last_edge)))
    return q.with_labels(_shift_paths(q, shifts))


# ---------------------------------------------------------------------------
# decomposition of pre-Q-trees into a Q-tree core and base-0 fragments


def rebase(tree: PartitionTree, delta: int) -> PartitionTree:
    """Shift every label on the root path by ``delta``."""
    system = build_paths(tree, check=False)
    return tree.with_labels(_shift_paths(tree, [(system.root, delta)]))


def frontier(q: PartitionTree) -> list[int]:
    """D(q): strongest edges reachable from the root without crossing another one."""
    system = build_paths(q, check=False)
    strongest = {system.strongest_edge(q, p) for p in system.paths}
    out = []
    stack = [0]
    while stack:
        u = stack.pop()
        if u in strongest:
            out.append(u)
        elif not q.is_leaf(u):
            stack.append(q.right[u])
            stack.append(q.left[u])
        else:  # pragma: no cover - every leaf edge lies below a strongest edge
            raise AssertionError("leaf not covered by a strongest edge")
    return out


def decompose_phi(q: PartitionTree) -> tuple[PartitionTree, list[PartitionTree]]:
    """Split a pre-Q-tree into its Q-tree core and rebased removed subtrees."""
    _require(q, TreeClass.PRE_Q)
    cuts = frontier(q)
    removed = []
    shape = []
    labels = []
    pos = 0
    for e in cuts:
        shape.append(q.shape[pos:e])
        labels.extend(q.edge_labels[pos:e])
        shape.append("0")
        labels.append(q.label(e))
        pos = q.end[e]
        sub = q.subtree(e)
        removed.append(rebase(sub, -sub.base_length))
    shape.append(q.shape[pos:])
    labels.extend(q.edge_labels[pos:])
    core = PartitionTree("".join(shape), labels)
    return core, removed


def compose_phi_inv(core: PartitionTree, removed: Sequence[PartitionTree]) -> PartitionTree:
    """Inverse of :func:`decompose_phi`."""
    leaves = core.leaves()
    if len(leaves) != len(removed):
        raise ValueError(f"core has {len(leaves)} leaves but {len(removed)} subtrees were given")
    shape = []
    labels = []
    pos = 0
    for leaf, sub in zip(leaves, removed):
        if sub.base_length != 0:
            raise ValueError("removed subtrees must have base-length 0")
        shape.append(core.shape[pos:leaf])
        labels.extend(core.edge_labels[pos:leaf])
        restored = rebase(sub, core.label(leaf))
        shape.append(restored.shape)
        labels.extend(restored.edge_labels)
        pos = leaf + 1
    shape.append(core.shape[pos:])
    labels.extend(core.edge_labels[pos:])
    return PartitionTree("".join(shape), labels)
