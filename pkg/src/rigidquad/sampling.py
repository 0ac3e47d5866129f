"""Uniform random samplers for pre-Q-trees, rigid quadrangulations and Delta-type maps.

Every sampler takes an explicit ``random.Random``; nothing touches the global
random state.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .bijections import h_tree_to_quad
from .enumeration import build_spine_tree, valid_shifts
from .maps import QuadMap
from .trees import PartitionTree, decompose_phi, frontier, psi_hat_inv, psi_inv

DEFAULT_BUDGET = 10**7


class SamplingBudgetExceeded(RuntimeError):
    """Rejection sampling gave up; calling again with another seed or budget may succeed."""

    retryable = True

    def __init__(self, attempts: int, target_n: int):
        super().__init__(f"no sample with n={target_n} after {attempts} attempts")
        self.attempts = attempts
        self.target_n = target_n


def _rng(rng) -> random.Random:
    if rng is None:
        return random.Random(0)
    if isinstance(rng, int):
        return random.Random(rng)
    return rng


def random_shape(leaves: int, rng: random.Random) -> str:
    """Uniform binary plane tree with ``leaves`` leaves (Remy's algorithm)."""
    if leaves < 1:
        raise ValueError("a tree needs at least one leaf")
    # node i: children[i] is None for a leaf, else (left, right)
    children: list = [None]
    parent = [-1]
    root = 0
    for _ in range(leaves - 1):
        x = rng.randrange(len(children))
        leaf = len(children)
        inner = leaf + 1
        children.append(None)
        parent.append(inner)
        pair = (x, leaf) if rng.random() < 0.5 else (leaf, x)
        children.append(pair)
        parent.append(parent[x])
        if parent[x] == -1:
            root = inner
        else:
            a, b = children[parent[x]]
            children[parent[x]] = (inner, b) if a == x else (a, inner)
        parent[x] = inner
    out = []
    stack = [root]
    while stack:
        v = stack.pop()
        if children[v] is None:
            out.append("0")
        else:
            out.append("1")
            stack.append(children[v][1])
            stack.append(children[v][0])
    return "".join(out)


def random_composition(total: int, parts: int, rng: random.Random) -> list[int]:
    """Uniform weak composition of ``total`` into ``parts`` non-negative parts."""
    if parts < 1 or total < 0:
        raise ValueError("no composition")
    bars = sorted(rng.sample(range(total + parts - 1), parts - 1))
    out = []
    prev = -1
    for b in bars + [total + parts - 1]:
        out.append(b - prev - 1)
        prev = b
    return out


def sample_pre_q_tree(n_max: int, p: int, rng=None) -> PartitionTree:
    """Uniform pre-Q-tree of degree ``n_max`` and base-length ``p``."""
    rng = _rng(rng)
    deficit = n_max - 1 - p
    if n_max < 1 or deficit < 0:
        raise ValueError(f"no pre-Q-tree of degree {n_max} and base {p}")
    shape = random_shape(n_max, rng)
    return PartitionTree.from_leaves(shape, [-d for d in random_composition(deficit, n_max, rng)])


@lru_cache(maxsize=4096)
def _to_quad(h: PartitionTree) -> QuadMap:
    return h_tree_to_quad(h)


@lru_cache(maxsize=65536)
def _core_degree(tree: PartitionTree) -> int:
    # the core has one leaf per frontier edge
    return len(frontier(tree))


@lru_cache(maxsize=65536)
def _core(tree: PartitionTree) -> PartitionTree:
    return decompose_phi(tree)[0]


def core_to_quad(core: PartitionTree) -> QuadMap:
    """Map of a Q-tree core: inverse shift for p > 0, hatted inverse shift for p < 0."""
    p = core.base_length
    if p == 0:
        return QuadMap.base0()
    return _to_quad(psi_inv(core) if p > 0 else psi_hat_inv(core))


def sample_rigid_quad(p: int, n_max: int, target_n: int | None = None, rng=None,
                      budget: int = DEFAULT_BUDGET):
    """Random rigid quadrangulation through a uniform pre-Q-tree and its core.

    Returns ``(map, n)`` where ``n`` is the core degree.  With ``target_n``
    the draw is repeated until the core has that degree.  For ``p < 0`` the
    map's base-length can be anywhere in ``[p, 0]``; read it off the map.
    """
    rng = _rng(rng)
    if target_n is not None and not 1 <= target_n <= n_max:
        raise ValueError("target_n must lie in [1, n_max]")
    for _ in range(budget):
        tree = sample_pre_q_tree(n_max, p, rng)
        if target_n is not None and _core_degree(tree) != target_n:
            continue
        core = _core(tree)
        return core_to_quad(core), core.degree
    raise SamplingBudgetExceeded(budget, target_n)


# ---------------------------------------------------------------------------
# Delta-type


@lru_cache(maxsize=None)
def _catalan(n: int) -> int:
    """Binary tree shapes with ``n`` leaves."""
    if n == 1:
        return 1
    return sum(_catalan(k) * _catalan(n - k) for k in range(1, n))


@lru_cache(maxsize=None)
def _forests(trees: int, leaves: int) -> int:
    if trees == 0:
        return 1 if leaves == 0 else 0
    return sum(_catalan(k) * _forests(trees - 1, leaves - k) for k in range(1, leaves - trees + 2))


def random_forest(trees: int, leaves: int, rng: random.Random) -> list[str]:
    """Uniform sequence of ``trees`` binary shapes with ``leaves`` leaves in total."""
    if _forests(trees, leaves) == 0:
        raise ValueError("no such forest")
    out = []
    while trees:
        x = rng.randrange(_forests(trees, leaves))
        for k in range(1, leaves - trees + 2):
            w = _catalan(k) * _forests(trees - 1, leaves - k)
            if x < w:
                break
            x -= w
        out.append(random_shape(k, rng))
        trees -= 1
        leaves -= k
    return out


def sample_spine_tree(p: int, q: int, n_max: int, rng=None) -> PartitionTree:
    """Uniform pre-Q-tree of degree ``n_max`` whose left spine has ``q`` edges ending in a 0-leaf."""
    rng = _rng(rng)
    leaves = n_max - 1
    if p < 1 or q < 1 or leaves < q or leaves < p:
        raise ValueError(f"no spine tree for p={p}, q={q}, n_max={n_max}")
    return build_spine_tree(p, _spine_blocks(p, q, leaves, rng))


def _spine_blocks(p: int, q: int, leaves: int, rng: random.Random) -> list[PartitionTree]:
    shapes = random_forest(q, leaves, rng)
    deficits = random_composition(leaves - p, leaves, rng)
    blocks = []
    i = 0
    for shape in shapes:
        m = shape.count("0")
        blocks.append(PartitionTree.from_leaves(shape, [-d for d in deficits[i:i + m]]))
        i += m
    return blocks


def sample_delta_type(p: int, q: int, n_max: int, target_n: int | None = None, rng=None,
                      budget: int = DEFAULT_BUDGET):
    """Random Delta-type map, weighted by one over its degeneracy at fixed ``n``.

    Returns ``(map, n)`` with ``n`` the core degree minus one.
    """
    rng = _rng(rng)
    if p < 1 or q < 1 or n_max - 1 < max(p, q):
        raise ValueError(f"no spine tree for p={p}, q={q}, n_max={n_max}")
    for _ in range(budget):
        blocks = _spine_blocks(p, q, n_max - 1, rng)
        s = rng.choice(valid_shifts(blocks, p, q))
        tree = build_spine_tree(p, blocks[s:] + blocks[:s])
        if target_n is not None and _core_degree(tree) - 1 != target_n:
            continue
        core = _core(tree)
        return core_to_quad(core), core.degree - 1
    raise SamplingBudgetExceeded(budget, target_n)
