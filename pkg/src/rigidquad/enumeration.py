"""Exhaustive enumerators used as counting oracles.

Shapes are preorder bit-strings ('1' internal, '0' leaf) listed in
lexicographic order; leaf-label compositions are listed in colexicographic
order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .bijections import h_tree_to_quad, signature_allowed
from .trees import PartitionTree, TreeClass, is_member, psi_hat_inv, psi_inv


@lru_cache(maxsize=None)
def shapes(n: int) -> tuple[str, ...]:
    """Binary plane tree shapes with ``n`` leaves."""
    if n < 1:
        return ()
    if n == 1:
        return ("0",)
    out = []
    for k in range(1, n):
        for left in shapes(k):
            for right in shapes(n - k):
                out.append("1" + left + right)
    return tuple(sorted(out))


def compositions(total: int, parts: int):
    """Tuples of ``parts`` non-negative integers summing to ``total``, colex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    out = []
    # stars and bars: choose bar positions among total + parts - 1 slots
    for bars in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        comp = []
        for b in bars:
            comp.append(b - prev - 1)
            prev = b
        comp.append(total + parts - 2 - prev)
        out.append(tuple(comp))
    out.sort(key=lambda c: c[::-1])
    yield from out


def enumerate_pre_q_trees(n: int, p: int) -> list[PartitionTree]:
    """All pre-Q-trees of degree ``n`` and base-length ``p``."""
    deficit = n - 1 - p
    if n < 1 or deficit < 0:
        return []
    comps = list(compositions(deficit, n))
    out = []
    for shape in shapes(n):
        for c in comps:
            out.append(PartitionTree.from_leaves(shape, [-x for x in c]))
    return out


def enumerate_q_trees(n: int, p: int) -> list[PartitionTree]:
    return [t for t in enumerate_pre_q_trees(n, p) if is_member(t, TreeClass.Q)]


def enumerate_well_based(n: int, p: int) -> list[PartitionTree]:
    return [t for t in enumerate_pre_q_trees(n, p) if is_member(t, TreeClass.WELL_BASED_Q)]


def enumerate_h_trees(n: int, p: int) -> list[PartitionTree]:
    """H-trees as images of well-based Q-trees under the inverse shift."""
    return [psi_inv(q) for q in enumerate_well_based(n, p)]


def enumerate_h_trees_hat(n: int, p: int) -> dict[int, list[PartitionTree]]:
    """For ``p < 0``: all Q-trees of base ``p`` sent back to H-trees, grouped by base."""
    out: dict[int, list] = {}
    for q in enumerate_q_trees(n, p):
        h = psi_hat_inv(q)
        out.setdefault(h.base_length, []).append(h)
    return out


def _label_range(p: int, na: int, nb: int):
    """Candidate (a, b) child labels at a vertex with parent label ``p``."""
    for a in range(p - nb, na):
        for b in range(p - 1 - a, nb):
            yield a, b


@lru_cache(maxsize=None)
def count_quads_recursive(p: int, n: int) -> int:
    """Rigid quadrangulations of base ``p`` with ``2n`` corners, by minimal submaps."""
    if n < 1:
        return 0
    if p == 0:
        return 1 if n == 1 else 0
    if n == 1:
        return 0
    total = 0
    for na in range(1, n):
        nb = n - na
        for a, b in _label_range(p, na, nb):
            k = a + b - p + 1
            if signature_allowed((p, a, b, k)):
                ca = count_quads_recursive(a, na)
                if ca:
                    total += ca * count_quads_recursive(b, nb)
    return total


@lru_cache(maxsize=None)
def _h_trees_recursive(p: int, n: int) -> tuple:
    if n < 1:
        return ()
    if p == 0:
        return (PartitionTree.single(0),) if n == 1 else ()
    if n == 1:
        return ()
    out = []
    for na in range(1, n):
        nb = n - na
        for a, b in _label_range(p, na, nb):
            if not signature_allowed((p, a, b, a + b - p + 1)):
                continue
            lefts = _h_trees_recursive(a, na)
            if not lefts:
                continue
            for right in _h_trees_recursive(b, nb):
                for left in lefts:
                    out.append(PartitionTree.join(left, right, p))
    return tuple(out)


def h_trees_recursive(n: int, p: int) -> list[PartitionTree]:
    """Second H-tree enumerator, driven by allowed signatures."""
    return list(_h_trees_recursive(p, n))


def enumerate_quads(n: int, p: int) -> list:
    """Rigid quadrangulations of base ``p`` with ``2n`` corners."""
    return [h_tree_to_quad(h) for h in h_trees_recursive(n, p)]


# ---------------------------------------------------------------------------
# B-, C- and Delta-type


def spine(tree: PartitionTree) -> list[int]:
    """Nodes of the consecutive left-child edges below the root edge."""
    out = []
    v = 0
    while not tree.is_leaf(v):
        v = tree.left[v]
        out.append(v)
    return out


def _delta_bounds(p: int, q: int) -> list[Fraction]:
    return [Fraction(p) - Fraction(i * p, q) for i in range(1, q + 1)]


def spine_kind_ok(kind: str, tree: PartitionTree, p: int, q: int) -> bool:
    nodes = spine(tree)
    if tree.base_length != p or len(nodes) != q:
        return False
    labels = [tree.label(v) for v in nodes]
    if labels[-1] != 0:
        return False
    if kind == "B":
        return all(x > 0 for x in labels[:-1])
    if kind == "C":
        return all(x >= p for x in labels[:-1])
    if kind == "delta":
        return all(x >= bnd for x, bnd in zip(labels, _delta_bounds(p, q)))
    raise ValueError(f"unknown kind {kind!r}")


def degeneracy(tree: PartitionTree, p: int, q: int) -> int:
    labels = [tree.label(v) for v in spine(tree)]
    return sum(1 for x, bnd in zip(labels, _delta_bounds(p, q)) if x == bnd)


def enumerate_bcd(kind: str, p: int, q: int, n: int) -> list:
    """``(map, degeneracy)`` pairs for B/C/Delta-type maps with ``t**n``.

    ``n`` counts convex corners off the base and co-base, which is the
    tree degree minus one.
    """
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    out = []
    for t in enumerate_q_trees(n + 1, p):
        if spine_kind_ok(kind, t, p, q):
            m = h_tree_to_quad(psi_inv(t))
            out.append((m, degeneracy(t, p, q) if kind == "delta" else 1))
    return out


def _spine_parts(tree: PartitionTree, p: int, q: int):
    nodes = spine(tree)
    if tree.base_length != p or len(nodes) != q:
        raise ValueError("tree does not have the requested spine")
    parents = [0] + nodes[:-1]
    return [tree.subtree(tree.right[v]) for v in parents]


def build_spine_tree(p: int, blocks: list) -> PartitionTree:
    """Pre-Q-tree with root label ``p``, left spine ending in a 0-leaf and the given right subtrees."""
    t = PartitionTree.single(0)
    label = 0
    for block in reversed(blocks):
        label = label + block.base_length + 1
        t = PartitionTree.join(t, block, label)
    if label != p:
        raise ValueError("blocks do not add up to the base-length")
    return t


def cycle_subtrees(tree: PartitionTree, p: int, q: int) -> list[PartitionTree]:
    """Cyclic rotations of the right subtrees that satisfy the Delta condition.

    Rotations are indexed by shift, so periodic block sequences can give the
    same tree more than once; the list length is the degeneracy.
    """
    blocks = _spine_parts(tree, p, q)
    return [build_spine_tree(p, blocks[s:] + blocks[:s]) for s in valid_shifts(blocks, p, q)]


def valid_shifts(blocks: list, p: int, q: int) -> list[int]:
    """Rotations of the spine blocks whose walk stays on or above the diagonal.

    Block i lowers the spine label by its base-length plus one, and the
    condition a_i >= p - i*p/q reads q * (p - a_i) <= i * p.
    """
    steps = [b.base_length + 1 for b in blocks]
    out = []
    for s in range(q):
        drop = 0
        for i, x in enumerate(steps[s:] + steps[:s], 1):
            drop += x
            if q * drop > i * p:
                break
        else:
            out.append(s)
    return out

