"""Gluing, minimal submaps and the H-tree bijection.

A minimal submap with signature ``(p, a, b, k)`` has two gluing positions.
``a`` is the one met first when walking clockwise from the end of the base,
``b`` the last one.  With a closed base drawn at the bottom, ``a`` lies to the
left; with an open base drawn at the top, ``a`` lies to the right.  A
position with base-length 0 is a convex corner and takes the base-0 object.
"""

from __future__ import annotations

from dataclasses import dataclass

from .maps import E, N, S, W, Face, MapError, QuadMap, faces_from_cells, row_of
from .trees import PartitionTree, PreconditionError, TreeClass, validate

TYPES = ("G", "R", "L", "Gbar", "Rbar", "Lbar")


class GlueError(ValueError):
    """Gluing contract violated (size or base-length mismatch)."""


@dataclass(frozen=True)
class Signature:
    p: int
    a: int
    b: int
    k: int

    def allowed(self) -> bool:
        return signature_allowed(self)

    def as_tuple(self) -> tuple:
        return (self.p, self.a, self.b, self.k)


def _sig(s) -> Signature:
    return s if isinstance(s, Signature) else Signature(*s)


def signature_allowed(s) -> bool:
    p, a, b, k = _sig(s).as_tuple()
    if p == 0 or k < 0 or p != a + b - k + 1:
        return False
    if int(p < 0) >= int(a <= 0) + int(b <= 0) and k != 0:
        return False
    return True


def submap_type(s) -> str:
    """Which of G, R, L, Gbar, Rbar, Lbar carries the signature."""
    s = _sig(s)
    if not signature_allowed(s):
        raise ValueError(f"signature {s.as_tuple()} is not allowed")
    p, a, b, k = s.as_tuple()
    if p > 0:
        if a >= 0 and b >= 0 and k == 0:
            return "G"
        if a > 0 and b <= 0:
            return "R"
        return "L"
    if a <= 0 and b <= 0 and not (k == 0 and (a == 0 or b == 0)):
        return "Gbar"
    if a < 0 and b >= 0:
        return "Rbar"
    return "Lbar"


# ---------------------------------------------------------------------------
# minimal submaps as polyominoes


def _layout(s: Signature):
    """Cells, base cells and the two seams ``(kind, cells)`` of Z(s)."""
    p, a, b, k = s.as_tuple()
    kind = submap_type(s)
    if kind == "G":
        base = [(x, 0) for x in range(p)]
        left = [(x, 1) for x in range(a)]
        right = [(x, 1) for x in range(a + 1, p)]
        return base + left + right, base, ("top", left), ("top", right)
    if kind in ("R", "L"):
        if kind == "L":
            a, b = b, a
        kr = k - (b == 0)
        width = p + kr + 1 - b
        base = [(x, 0) for x in range(p)]
        arch = [(x, 1) for x in range(width)]
        leg = [(x, 0) for x in range(p + kr + 1, width)]
        seam_top, seam_bottom = ("top", arch), ("bottom", leg)
        cells = base + arch + leg
        if kind == "R":
            return cells, base, seam_top, seam_bottom
        return _mirror(cells, base, seam_bottom, seam_top)
    if kind == "Gbar":
        lb, la = -b, -a
        kr = k - (a == 0) - (b == 0)
        mid = kr + 1
        width = lb + mid + la
        base = [(x, -1) for x in range(width)]
        left = [(x, -2) for x in range(lb)]
        right = [(x, -2) for x in range(lb + mid, width)]
        return base + left + right, base, ("bottom", right), ("bottom", left)
    # Rbar and its mirror Lbar
    if kind == "Lbar":
        a, b = b, a
    ell = b
    width = -p
    base = [(x, -1) for x in range(width)]
    bottom = [(x, -2) for x in range(-1 - ell, width)]
    arm = [(x, -1) for x in range(-1 - ell, -1)]
    cells = base + bottom + arm
    if kind == "Rbar":
        return cells, base, ("bottom", bottom), ("top", arm)
    return _mirror(cells, base, ("top", arm), ("bottom", bottom))


def _mirror(cells, base, seam_a, seam_b):
    def m(lst):
        return [(-x, y) for x, y in lst]
    return m(cells), m(base), (seam_a[0], m(seam_a[1])), (seam_b[0], m(seam_b[1]))


def _build(s: Signature):
    """Fresh mutable Z(s): root face, root side and the two seams as face lists."""
    cells, base, seam_a, seam_b = _layout(s)
    faces = faces_from_cells(cells)
    seams = []
    for kind, seam_cells in (seam_a, seam_b):
        if not seam_cells:
            seams.append(None)
            continue
        ordered = [faces[c] for c in sorted(seam_cells)]
        side = N if kind == "top" else S
        for f in ordered:
            f.op[side] = True
        seams.append((kind, ordered))
    if s.p > 0:
        root, side = faces[max(base)], S
    else:
        root, side = faces[min(base)], N
        for c in base:
            faces[c].op[N] = True
    return root, side, seams[0], seams[1]


def build_minimal_submap(s) -> QuadMap:
    """The partial rigid quadrangulation Z(s) with its open sides marked."""
    root, side, _, _ = _build(_sig(s))
    return QuadMap.from_faces(root, side)


def minimal_submap_seams(s) -> tuple:
    """Kinds ('top'/'bottom'/None) of the a- and b-positions of Z(s)."""
    _, _, sa, sb = _build(_sig(s))
    return (sa[0] if sa else None, sb[0] if sb else None)


# ---------------------------------------------------------------------------
# gluing on mutable faces


def _bottom_concave(f: Face) -> bool:
    """Does the vertical line east of ``f`` end below in a concave corner?"""
    x, y = f, f.nb[E]
    while True:
        xs, ys = x.nb[S], y.nb[S]
        if xs is None and ys is None:
            return False
        if xs is None or ys is None:
            return True
        if xs.nb[E] is not ys:
            raise MapError("interior slit")
        x, y = xs, ys


def _split_up(f: Face) -> Face:
    """Cut the column above and including ``f`` vertically; return the new right half of ``f``."""
    left, below, first = f, None, None
    while left is not None:
        right = Face()
        east = left.nb[E]
        right.nb[E] = east
        if east is not None:
            east.nb[W] = right
        right.op[E], left.op[E] = left.op[E], False
        left.nb[E] = right
        right.nb[W] = left
        right.nb[S] = below
        if below is None:
            right.op[S] = left.op[S]
        else:
            below.nb[N] = right
        right.op[N] = left.op[N]
        if first is None:
            first = right
        below = right
        left = left.nb[N]
    return first


def glue(lower: list, upper: list) -> None:
    """Identify the top of the ``lower`` row with the bottom of the ``upper`` row.

    Downward rays of the lower piece meeting the seam are matched with the
    seam points of the upper piece; upward rays of the lower piece are
    extended vertically through the upper piece.  The quadrangles on both
    sides of the seam are then merged.  Both rows are listed west to east.
    """
    ups = [_bottom_concave(f) for f in lower[:-1]]
    if sum(not u for u in ups) != len(upper) - 1:
        raise GlueError(
            f"seam mismatch: {sum(not u for u in ups) + 1} segments below, {len(upper)} above")
    targets = [upper[0]]
    cur, j = upper[0], 0
    for u in ups:
        if u:
            cur = _split_up(cur)
        else:
            j += 1
            cur = upper[j]
        targets.append(cur)
    for lf, uf in zip(lower, targets):
        top = uf.nb[N]
        lf.nb[N] = top
        lf.op[N] = uf.op[N]
        if top is not None:
            top.nb[S] = lf


def _retract(x: Face, y: Face) -> None:
    """Remove the vertical line between ``x`` and ``y = x.E`` up to the boundary."""
    while True:
        xn, yn = x.nb[N], y.nb[N]
        east = y.nb[E]
        x.nb[E] = east
        if east is not None:
            east.nb[W] = x
        x.op[E] = y.op[E]
        if xn is None and yn is None:
            x.op[N] = x.op[N] or y.op[N]
            return
        if xn is None or yn is None or xn.nb[E] is not yn:
            raise MapError("cannot retract a ray that does not reach a top side")
        x, y = xn, yn


def unglue(row: list, up_flags: list) -> list:
    """Cut every face of ``row`` horizontally; inverse of :func:`glue`.

    ``row`` keeps the lower halves.  The new upper halves are returned after
    the lines flagged upward (extended from below) have been retracted.
    """
    uppers = []
    for f in row:
        u = Face()
        top = f.nb[N]
        u.nb[N] = top
        u.op[N] = f.op[N]
        if top is not None:
            top.nb[S] = u
        f.nb[N] = None
        f.op[N] = False
        uppers.append(u)
    for x, y in zip(uppers, uppers[1:]):
        x.link(E, y)
    for j in reversed(range(len(row) - 1)):
        if up_flags[j]:
            _retract(uppers[j], uppers[j + 1])
    return [u for j, u in enumerate(uppers) if j == 0 or not up_flags[j - 1]]


def _glue_piece(kind: str, seam: list, child_root: Face) -> None:
    # an earlier gluing may have split faces of this seam, so re-read the strip
    seam = row_of(seam[0])
    base = row_of(child_root)
    if kind == "top":
        glue(seam, base)
    else:
        glue(base, seam)


def glue_top(e: QuadMap, side: int, u: QuadMap) -> QuadMap:
    """Glue the closed-base map ``u`` onto the open top side ``side`` of ``e``."""
    sinfo = e.sides[side]
    if not (sinfo.is_open and sinfo.top):
        raise GlueError("side is not an open top side")
    if u.point:
        raise GlueError("the base-0 object only fills degenerate positions")
    if u.base_length() != sinfo.size:
        raise GlueError(f"base-length {u.base_length()} does not match side size {sinfo.size}")
    faces = e.to_faces()
    seam = sorted((f for f, _ in sinfo.edges))
    ufaces = u.to_faces()
    glue([faces[f] for f in _west_to_east(e, seam)], row_of(ufaces[0]))
    return QuadMap.from_faces(faces[0], e.root_side)


def glue_bottom(e: QuadMap, side: int, u: QuadMap) -> QuadMap:
    """Glue the open-base map ``u`` under the open bottom side ``side`` of ``e``."""
    sinfo = e.sides[side]
    if not (sinfo.is_open and sinfo.top is False):
        raise GlueError("side is not an open bottom side")
    if sinfo.size != 1:
        raise GlueError("only open bottom sides of size 1 can be glued")
    if u.point or u.base_length() != -sinfo.length:
        raise GlueError(f"need base-length {-sinfo.length}, got {u.base_length()}")
    faces = e.to_faces()
    seam = [f for f, _ in sinfo.edges]
    ufaces = u.to_faces()
    glue(row_of(ufaces[0]), [faces[f] for f in _west_to_east(e, seam)])
    return QuadMap.from_faces(faces[0], e.root_side)


def _west_to_east(m: QuadMap, faces: list) -> list:
    members = set(faces)
    start = next(f for f in faces if m.nbr[f][W] not in members)
    out = [start]
    while m.nbr[out[-1]][E] in members:
        out.append(m.nbr[out[-1]][E])
    if len(out) != len(members):
        raise GlueError("side faces do not form a horizontal strip")
    return out


# ---------------------------------------------------------------------------
# decomposition


def _locate(m: QuadMap, faces: list):
    """Seam rows ``(kind, row)`` for the a- and b-positions of the minimal submap."""
    root = faces[0]
    base = row_of(root)
    base_ids = {id(f) for f in base}
    if m.base_length() > 0:
        gaps = [j for j, f in enumerate(base) if f.nb[N] is None]
        if gaps:
            if len(gaps) != 1:
                raise MapError("several gaps above the base")
            j = gaps[0]
            left = [f.nb[N] for f in base[:j]]
            right = [f.nb[N] for f in base[j + 1:]]
            return ("top", left) if left else None, ("top", right) if right else None
        if base[-1].nb[N].nb[E] is not None:
            arch = row_of(base[0].nb[N])
            legs = [f.nb[S] for f in arch if f.nb[S] is not None and id(f.nb[S]) not in base_ids]
            return ("top", arch), (("bottom", legs) if legs else None)
        if base[0].nb[N].nb[W] is not None:
            arch = row_of(base[-1].nb[N])
            legs = [f.nb[S] for f in arch if f.nb[S] is not None and id(f.nb[S]) not in base_ids]
            return (("bottom", legs) if legs else None), ("top", arch)
        raise MapError("no minimal submap above a closed base")
    gaps = [j for j, f in enumerate(base) if f.nb[S] is None]
    if gaps:
        g0, g1 = gaps[0], gaps[-1]
        if gaps != list(range(g0, g1 + 1)):
            raise MapError("middle side under the base is not contiguous")
        left = [f.nb[S] for f in base[:g0]]
        right = [f.nb[S] for f in base[g1 + 1:]]
        return ("bottom", right) if right else None, ("bottom", left) if left else None
    if base[0].nb[S].nb[W] is not None:
        bottom = row_of(base[-1].nb[S])
        arm = [f.nb[N] for f in bottom if f.nb[N] is not None and id(f.nb[N]) not in base_ids]
        return ("bottom", bottom), (("top", arm) if arm else None)
    if base[-1].nb[S].nb[E] is not None:
        bottom = row_of(base[0].nb[S])
        arm = [f.nb[N] for f in bottom if f.nb[N] is not None and id(f.nb[N]) not in base_ids]
        return (("top", arm) if arm else None), ("bottom", bottom)
    raise MapError("no minimal submap below an open base")


def find_minimal_submap(m: QuadMap) -> tuple:
    """Signature of the minimal submap of ``m`` and the two glued pieces.

    Returns ``(signature, piece_a, piece_b)`` where degenerate positions hold
    the base-0 object.  Gluing the pieces back onto the minimal submap gives
    ``m`` again.
    """
    if m.point:
        raise PreconditionError("the base-0 object has no minimal submap")
    if not m.is_complete():
        raise PreconditionError("map is not complete")
    p = m.base_length()
    faces = m.to_faces()
    seams = _locate(m, faces)
    flags = [None if sm is None else [_bottom_concave(f) for f in sm[1][:-1]] for sm in seams]
    pieces = [QuadMap.base0(), QuadMap.base0()]
    # cut top seams first: retracting above a bottom seam must stop at the top cut
    order = sorted((i for i in (0, 1) if seams[i] is not None), key=lambda i: seams[i][0] != "top")
    for i in order:
        sm, fl = seams[i], flags[i]
        kind, row = sm
        uppers = unglue(row, fl)
        if kind == "top":
            for f in row:
                f.op[N] = True
            pieces[i] = QuadMap.from_faces(uppers[-1], S)
        else:
            for f in row:
                f.op[N] = True
            for u in uppers:
                u.op[S] = True
            pieces[i] = QuadMap.from_faces(row[0], N)
    a, b = pieces[0].base_length(), pieces[1].base_length()
    s = Signature(p, a, b, a + b - p + 1)
    core = QuadMap.from_faces(faces[0], m.root_side)
    if not signature_allowed(s) or core != build_minimal_submap(s):
        raise MapError(f"decomposition produced an invalid minimal submap {s.as_tuple()}")
    return s, pieces[0], pieces[1]


def _assemble(sig: Signature, piece_a: QuadMap, piece_b: QuadMap):
    root, side, sa, sb = _build(sig)
    for seam, piece in ((sa, piece_a), (sb, piece_b)):
        if seam is None:
            if not piece.point:
                raise GlueError("degenerate position needs the base-0 object")
            continue
        if piece.point:
            raise GlueError("base-0 object cannot fill an open side")
        pf = piece.to_faces()
        _glue_piece(seam[0], seam[1], pf[0])
    return root, side


def glue_minimal(sig, piece_a: QuadMap, piece_b: QuadMap) -> QuadMap:
    """Inverse of :func:`find_minimal_submap`."""
    sig = _sig(sig)
    want = [sig.a, sig.b]
    got = [piece_a.base_length(), piece_b.base_length()]
    if want != got:
        raise GlueError(f"pieces have base-lengths {got}, signature needs {want}")
    root, side = _assemble(sig, piece_a, piece_b)
    return QuadMap.from_faces(root, side)


# ---------------------------------------------------------------------------
# the bijection


def quad_to_h_tree(m: QuadMap) -> PartitionTree:
    """H-tree of a complete based rigid quadrangulation."""
    if m.point:
        return PartitionTree.single(0)
    s, pa, pb = find_minimal_submap(m)
    return PartitionTree.join(quad_to_h_tree(pa), quad_to_h_tree(pb), s.p)


def h_tree_to_quad(h: PartitionTree) -> QuadMap:
    """Rigid quadrangulation encoded by an H-tree."""
    report = validate(h, TreeClass.H)
    if not report.ok:
        raise PreconditionError("not an H-tree: " + "; ".join(report.violations))

    def rec(v: int):
        if h.is_leaf(v):
            return None
        sig = Signature(h.label(v), h.label(h.left[v]), h.label(h.right[v]), h.excess(v))
        if not signature_allowed(sig):
            raise AssertionError(f"H-tree produced disallowed signature {sig.as_tuple()}")
        root, side, sa, sb = _build(sig)
        for seam, child in ((sa, h.left[v]), (sb, h.right[v])):
            sub = rec(child)
            if (seam is None) != (sub is None):
                raise AssertionError("seam and subtree disagree on degeneracy")
            if seam is not None:
                _glue_piece(seam[0], seam[1], sub[0])
        return root, side

    out = rec(0)
    if out is None:
        return QuadMap.base0()
    return QuadMap.from_faces(*out)
