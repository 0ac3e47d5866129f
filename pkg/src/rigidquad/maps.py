"""Rigid quadrangulations of the disk.

Internally a map is a *face complex*: every quadrangle knows its neighbour
across each of its four sides, and the sides are labelled by the global
grid directions E, N, W, S of a local immersion.  A flat disk has a
consistent labelling, so directions are intrinsic data, not coordinates.
Boundary sides have no neighbour and may carry an "open" mark.

The canonical exchange format is the half-edge form (:class:`HalfEdgeMap`);
conversions both ways are provided and deserialisation re-validates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

E, N, W, S = 0, 1, 2, 3
DIRECTION_NAMES = "ENWS"
# corner c sits between side c and side c + 1: 0 = NE, 1 = NW, 2 = SW, 3 = SE


class MapError(ValueError):
    """Malformed map data (not a disk, inconsistent adjacency, ...)."""


class Face:
    """Mutable quadrangle used while building or cutting maps."""

    __slots__ = ("nb", "op")

    def __init__(self):
        self.nb: list = [None, None, None, None]
        self.op: list = [False, False, False, False]

    def link(self, d: int, other: "Face | None") -> None:
        self.nb[d] = other
        if other is not None:
            other.nb[(d + 2) % 4] = self

    def __repr__(self):
        return f"Face@{id(self):x}"


def faces_from_cells(cells: Iterable[tuple[int, int]]) -> dict:
    """Unit cells of the grid glued along shared edges."""
    out = {c: Face() for c in cells}
    for (x, y), f in out.items():
        right = out.get((x + 1, y))
        if right is not None:
            f.link(E, right)
        up = out.get((x, y + 1))
        if up is not None:
            f.link(N, up)
    return out


def walk(f: Face, d: int) -> Face:
    while f.nb[d] is not None:
        f = f.nb[d]
    return f


def row_of(f: Face) -> list[Face]:
    """The maximal horizontal strip through ``f``, listed west to east."""
    f = walk(f, W)
    row = [f]
    while f.nb[E] is not None:
        f = f.nb[E]
        row.append(f)
    return row


@dataclass(frozen=True)
class SideInfo:
    index: int
    edges: tuple  # boundary edges (face, side) in clockwise order
    horizontal: bool
    top: bool | None  # None for vertical sides
    is_base: bool
    is_open: bool
    size: int | None  # open sides only
    start_corner: str  # corner type at the start vertex
    end_corner: str

    @property
    def orientation(self) -> str:
        return "horizontal" if self.horizontal else "vertical"

    @property
    def length(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class RayInfo:
    edges: tuple  # inner edges (face, d) with d in {E, N}, in geometric order
    vertical: bool
    ends: tuple  # two end descriptors, lower/west end first
    kind: str | None  # "closed", "open" or None when untypeable
    direction: str | None  # "upward", "downward", "horizontal"
    start_side: int | None = None  # side an open ray starts on
    end_side: int | None = None
    problem: str | None = None


@dataclass
class MapReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


CORNER_NAMES = {1: "convex", 2: "straight", 3: "concave"}


class QuadMap:
    """Immutable rooted flat quadrangulation of the disk.

    ``nbr[f][d]`` is the neighbour of face ``f`` across side ``d`` or ``-1``.
    Faces are numbered canonically (breadth first from the root face), so two
    maps are equal exactly when their arrays are equal.  The root edge is
    side ``root_side`` of face ``0``: the south side of the right-most base
    face for a closed base, the north side of the left-most base face for an
    open base.  The empty map with ``point=True`` is the base-0 object, a
    single convex corner.
    """

    def __init__(self, nbr, open_edges=(), root_side: int = S, point: bool = False):
        self.nbr = tuple(tuple(row) for row in nbr)
        self.open_edges = frozenset(open_edges)
        self.root_side = root_side
        self.point = point
        if point:
            if self.nbr:
                raise MapError("the base-0 object has no faces")
            return
        if not self.nbr:
            raise MapError("a map needs at least one face")
        self._check_adjacency()

    # -- construction -------------------------------------------------
    @classmethod
    def base0(cls) -> "QuadMap":
        return cls((), point=True)

    @classmethod
    def from_faces(cls, root: Face, root_side: int) -> "QuadMap":
        """Freeze the component of ``root``, numbering faces canonically."""
        index = {id(root): 0}
        order = [root]
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for g in f.nb:
                if g is not None and id(g) not in index:
                    index[id(g)] = len(order)
                    order.append(g)
                    queue.append(g)
        nbr = []
        opened = []
        for i, f in enumerate(order):
            nbr.append(tuple(-1 if g is None else index[id(g)] for g in f.nb))
            for d in range(4):
                if f.nb[d] is None and f.op[d]:
                    opened.append((i, d))
        return cls(nbr, opened, root_side)

    def to_faces(self) -> list[Face]:
        """Fresh mutable copy; element 0 is the root face."""
        faces = [Face() for _ in self.nbr]
        for f, row in enumerate(self.nbr):
            for d, g in enumerate(row):
                faces[f].nb[d] = None if g < 0 else faces[g]
        for f, d in self.open_edges:
            faces[f].op[d] = True
        return faces

    def _check_adjacency(self):
        for f, row in enumerate(self.nbr):
            if len(row) != 4:
                raise MapError("faces must have four sides")
            for d, g in enumerate(row):
                if g >= 0 and self.nbr[g][(d + 2) % 4] != f:
                    raise MapError(f"asymmetric adjacency at face {f} side {d}")
        for f, d in self.open_edges:
            if self.nbr[f][d] >= 0:
                raise MapError("only boundary sides can be open")
        if self.nbr[0][self.root_side] >= 0:
            raise MapError("root side must lie on the boundary")

    # -- identity ----------------------------------------------------
    def key(self):
        return (self.point, self.root_side, self.nbr, tuple(sorted(self.open_edges)))

    def __eq__(self, other):
        return isinstance(other, QuadMap) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.point:
            return "QuadMap(base-0)"
        return f"QuadMap(faces={len(self.nbr)}, p={self.base_length()})"

    @property
    def num_faces(self) -> int:
        return len(self.nbr)

    @property
    def closed_base(self) -> bool:
        return self.root_side == S

    # -- local structure ----------------------------------------------
    def fan(self, f: int, c: int) -> tuple[list, bool]:
        """Corners ``(face, corner)`` around the vertex at corner ``c`` of ``f``.

        Listed clockwise to counter-clockwise; the flag says whether the
        fan closes up (inner vertex).
        """
        out = [(f, c)]
        g, cc = f, c
        while True:
            h = self.nbr[g][cc]
            if h < 0:
                break
            g, cc = h, (cc + 1) % 4
            if (g, cc) == (f, c):
                return out, True
            out.append((g, cc))
            if len(out) > 4:
                raise MapError("vertex with more than four faces")
        g, cc = f, c
        while True:
            h = self.nbr[g][(cc + 1) % 4]
            if h < 0:
                break
            g, cc = h, (cc - 1) % 4
            out.insert(0, (g, cc))
            if len(out) > 4:
                raise MapError("vertex with more than four faces")
        return out, False

    @cached_property
    def _vertices(self):
        """Union-find of corners; returns corner -> vertex id and vertex count."""
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for f in range(len(self.nbr)):
            for c in range(4):
                parent[(f, c)] = (f, c)
        for f, row in enumerate(self.nbr):
            for c in range(4):
                g = row[c]
                if g >= 0:
                    a, b = find((f, c)), find((g, (c + 1) % 4))
                    if a != b:
                        parent[a] = b
        ids = {}
        vid = {}
        for corner in parent:
            r = find(corner)
            vid[corner] = ids.setdefault(r, len(ids))
        return vid, len(ids)

    def vertex_of(self, f: int, c: int) -> int:
        return self._vertices[0][(f, c)]

    @property
    def num_vertices(self) -> int:
        return 0 if self.point else self._vertices[1]

    @cached_property
    def boundary(self) -> tuple:
        """Boundary walk from the root with the interior on the right.

        Entries are ``(face, side, faces_at_end)``; ``faces_at_end`` is the
        number of faces around the vertex reached at the end of the edge
        (1 convex, 2 straight, 3 concave).
        """
        if self.point:
            return ()
        start = (0, self.root_side)
        out = []
        f, d = start
        limit = 4 * len(self.nbr) + 4
        while True:
            g, c = f, (d - 1) % 4
            count = 1
            while self.nbr[g][c] >= 0:
                g, c = self.nbr[g][c], (c + 1) % 4
                count += 1
                if count > 4:
                    raise MapError("boundary vertex with more than three faces")
            out.append((f, d, count))
            f, d = g, c
            if (f, d) == start:
                break
            if len(out) > limit:
                raise MapError("boundary walk does not close")
        return tuple(out)

    def root_corner_faces(self) -> int:
        """Faces at the start vertex of the root edge."""
        return self.boundary[-1][2]

    @cached_property
    def sides(self) -> tuple:
        if self.point:
            return ()
        bd = self.boundary
        groups = []
        current = []
        starts = []
        prev_end = bd[-1][2]
        for f, d, cnt in bd:
            if not current:
                starts.append(prev_end)
            current.append((f, d))
            if cnt != 2:
                groups.append((tuple(current), cnt))
                current = []
            prev_end = cnt
        if current:
            # the root does not start at a corner; glue the tail to the head
            head, cnt = groups[0]
            groups[0] = (tuple(current) + head, cnt)
            starts[0] = starts[-1]
            starts.pop()
        side_of = {}
        for i, (edges, _) in enumerate(groups):
            for e in edges:
                side_of[e] = i
        self._side_of = side_of
        sizes = self._open_sizes(side_of)
        out = []
        for i, (edges, cnt) in enumerate(groups):
            d = edges[0][1]
            horizontal = d in (N, S)
            opened = any(e in self.open_edges for e in edges)
            out.append(SideInfo(
                index=i,
                edges=edges,
                horizontal=horizontal,
                top=(d == N) if horizontal else None,
                is_base=(i == 0),
                is_open=opened,
                size=sizes.get(i, 0) + 1 if opened else None,
                start_corner=CORNER_NAMES.get(starts[i], "invalid"),
                end_corner=CORNER_NAMES.get(cnt, "invalid"),
            ))
        return tuple(out)

    def side_of(self, f: int, d: int) -> int:
        self.sides
        return self._side_of[(f, d)]

    def _open_sizes(self, side_of) -> dict:
        sizes = {}
        for ray in self._trace(side_of):
            if ray.kind == "open" and ray.start_side is not None:
                sizes[ray.start_side] = sizes.get(ray.start_side, 0) + 1
        return sizes

    # -- rays ---------------------------------------------------------
    def _extend(self, x: int, y: int, d: int, e: int):
        """Follow the line between ``x`` and ``y = nbr[x][d]`` in direction ``e``."""
        segs = []
        opposite = (d + 2) % 4
        while True:
            xn, yn = self.nbr[x][e], self.nbr[y][e]
            if xn < 0 and yn < 0:
                return segs, ("straight", (x, e))
            if xn < 0 or yn < 0:
                if (xn >= 0 and self.nbr[xn][d] >= 0) or (yn >= 0 and self.nbr[yn][opposite] >= 0):
                    raise MapError("boundary vertex with four faces")
                return segs, ("concave", None)
            if self.nbr[xn][d] != yn:
                raise MapError("interior slit")
            x, y = xn, yn
            segs.append((x, d))

    def _trace(self, side_of) -> list:
        seen = set()
        rays = []
        for f, row in enumerate(self.nbr):
            for d in (E, N):
                if row[d] < 0 or (f, d) in seen:
                    continue
                lo, hi = (S, N) if d == E else (W, E)
                back, end_a = self._extend(f, row[d], d, lo)
                fwd, end_b = self._extend(f, row[d], d, hi)
                edges = tuple(reversed(back)) + ((f, d),) + tuple(fwd)
                seen.update(edges)
                rays.append(self._classify(edges, d == E, end_a, end_b, side_of))
        return rays

    def _classify(self, edges, vertical, end_a, end_b, side_of) -> RayInfo:
        def describe(end):
            if end[0] == "concave":
                return ("concave", None, False)
            return ("straight", side_of[end[1]], end[1] in self.open_edges)

        a, b = describe(end_a), describe(end_b)
        ends = (a, b)
        ca, cb = a[0] == "concave", b[0] == "concave"
        if ca and cb:
            return RayInfo(edges, vertical, ends, None, None, problem="ray joins two concave corners")
        if not vertical:
            if ca:
                return RayInfo(edges, vertical, ends, "closed", "horizontal", end_side=b[1])
            if cb:
                return RayInfo(edges, vertical, ends, "closed", "horizontal", end_side=a[1])
            return RayInfo(edges, vertical, ends, None, None, problem="horizontal ray without concave corner")
        if ca:
            return RayInfo(edges, vertical, ends, "closed", "upward", end_side=b[1])
        if cb:
            return RayInfo(edges, vertical, ends, "closed", "downward", end_side=a[1])
        if b[2]:
            return RayInfo(edges, vertical, ends, "open", "downward", start_side=b[1], end_side=a[1])
        if a[2]:
            return RayInfo(edges, vertical, ends, "open", "upward", start_side=a[1], end_side=b[1])
        return RayInfo(edges, vertical, ends, None, None, problem="ray between two closed straight vertices")

    @cached_property
    def rays(self) -> tuple:
        if self.point:
            return ()
        self.sides
        return tuple(self._trace(self._side_of))

    def line_bottom_is_concave(self, f: int) -> bool:
        """Whether the vertical line on the east side of ``f`` ends below in a concave corner."""
        g = self.nbr[f][E]
        if g < 0:
            raise MapError("no inner edge east of this face")
        _, end = self._extend(f, g, E, S)
        return end[0] == "concave"

    # -- global quantities ---------------------------------------------
    def base_length(self) -> int:
        if self.point:
            return 0
        base = self.sides[0]
        if base.is_open:
            return -base.size
        return base.length

    def corner_census(self) -> "CornerCensus":
        if self.point:
            return CornerCensus(1, 0, 0, 1)
        counts = {1: 0, 2: 0, 3: 0}
        for _, _, c in self.boundary:
            counts[c] = counts.get(c, 0) + 1
        base = self.sides[0]
        on_base = (base.start_corner == "convex") + (base.end_corner == "convex")
        return CornerCensus(counts[1], counts[3], counts[2], counts[1] - on_base)

    def turning_number(self) -> int:
        """Quarter turns of the boundary contour: convex +1, concave -1."""
        census = self.corner_census()
        return census.convex - census.concave

    def num_corners(self) -> int:
        c = self.corner_census()
        return c.convex + c.concave

    def is_complete(self) -> bool:
        """No open side other than the base."""
        return self.point or not any(s.is_open for s in self.sides[1:])

    # -- validation ------------------------------------------------------
    def validate(self) -> MapReport:
        report = MapReport()
        v = report.violations
        if self.point:
            return report
        try:
            bd = self.boundary
            sides = self.sides
            rays = self.rays
        except MapError as exc:
            v.append(f"structure: {exc}")
            return report
        vid = self._vertices[0]
        ends = [vid[(f, (d - 1) % 4)] for f, d, _ in bd]
        if len(set(ends)) != len(ends):
            v.append("root face is not simple")
        corners_per_vertex = {}
        for key, x in vid.items():
            corners_per_vertex[x] = corners_per_vertex.get(x, 0) + 1
        boundary_vertices = set(ends)
        for x, cnt in corners_per_vertex.items():
            if x not in boundary_vertices and cnt != 4:
                v.append(f"flatness: inner vertex with {cnt} faces")
        faces = len(self.nbr)
        edges = (4 * faces + len(bd)) // 2
        if self.num_vertices - edges + faces != 1:
            v.append("not a disk (Euler characteristic)")
        if bd[-1][2] != 1:
            v.append("root edge does not start at a convex corner")
        if sides[0].end_corner != "convex":
            v.append("base does not end at a convex corner")
        if sides[0].is_open != (self.root_side == N):
            v.append("open base must be drawn as a top side, closed base as a bottom side")
        for r in rays:
            if r.problem:
                v.append(f"ray: {r.problem}")
        for s in sides:
            marked = [e in self.open_edges for e in s.edges]
            if any(marked) and not all(marked):
                v.append(f"side {s.index} is only partly open")
            if s.is_open:
                if not s.horizontal:
                    v.append(f"open side {s.index} is vertical")
                if s.start_corner != "convex" or s.end_corner != "convex":
                    v.append(f"open side {s.index} is not between convex corners")
        if self.turning_number() != 4:
            v.append(f"turning number {self.turning_number()} quarter turns")
        if self.base_length() == 0:
            v.append("base-length 0 for a map with faces")
        return report

    # -- half-edge form ---------------------------------------------------
    def to_half_edges(self) -> "HalfEdgeMap":
        if self.point:
            return HalfEdgeMap((), (), -1, ())
        F = len(self.nbr)
        bd = self.boundary
        B = len(bd)
        total = 4 * F + B
        opp = [0] * total
        phi = [0] * total
        bindex = {(f, d): 4 * F + i for i, (f, d, _) in enumerate(bd)}
        for f, row in enumerate(self.nbr):
            for d, g in enumerate(row):
                h = 4 * f + d
                phi[h] = 4 * f + (d + 1) % 4
                opp[h] = 4 * g + (d + 2) % 4 if g >= 0 else bindex[(f, d)]
        for i, (f, d, _) in enumerate(bd):
            h = 4 * F + i
            opp[h] = 4 * f + d
            phi[h] = 4 * F + (i + 1) % B
        phi_inv = [0] * total
        for h, g in enumerate(phi):
            phi_inv[g] = h
        nxt = [opp[phi_inv[g]] for g in range(total)]
        opened = tuple(s.index for s in self.sides if s.is_open)
        return HalfEdgeMap(tuple(opp), tuple(nxt), 4 * F, opened)

    @classmethod
    def from_half_edges(cls, hm: "HalfEdgeMap") -> "QuadMap":
        problems, m = _from_half_edges(hm)
        if problems:
            raise MapError("; ".join(problems))
        return m

    def to_dict(self) -> dict:
        return self.to_half_edges().to_dict()

    @classmethod
    def from_dict(cls, doc: dict) -> "QuadMap":
        m = cls.from_half_edges(HalfEdgeMap.from_dict(doc))
        report = m.validate()
        if not report.ok:
            raise MapError("; ".join(report.violations))
        return m


@dataclass(frozen=True)
class CornerCensus:
    convex: int
    concave: int
    straight: int
    n: int


@dataclass(frozen=True)
class HalfEdgeMap:
    """Opposite pairing plus counter-clockwise rotation at each origin vertex.

    The root half-edge has the root (outer) face on its left.  Open sides are
    given by their index when sides are enumerated clockwise from the root.
    """

    opposite: tuple
    next: tuple
    root: int
    open_sides: tuple = ()

    @property
    def num_half_edges(self) -> int:
        return len(self.opposite)

    def to_dict(self) -> dict:
        return {
            "num_half_edges": self.num_half_edges,
            "opposite": list(self.opposite),
            "next": list(self.next),
            "root": self.root,
            "open_sides": list(self.open_sides),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "HalfEdgeMap":
        try:
            hm = cls(tuple(doc["opposite"]), tuple(doc["next"]), int(doc["root"]),
                     tuple(doc.get("open_sides", ())))
        except (KeyError, TypeError) as exc:
            raise MapError(f"bad map document: {exc}") from None
        if doc.get("num_half_edges", hm.num_half_edges) != hm.num_half_edges:
            raise MapError("num_half_edges does not match the arrays")
        return hm

    @classmethod
    def from_polygons(cls, polygons: Sequence[Sequence], root: tuple, open_sides=()) -> "HalfEdgeMap":
        """Build from inner faces given as counter-clockwise vertex cycles.

        ``root`` is a directed boundary edge ``(u, v)`` with the outer face
        on its left, i.e. the reverse of an edge of some polygon.
        """
        index = {}
        phi = []
        for poly in polygons:
            first = len(phi)
            k = len(poly)
            for i in range(k):
                index[(poly[i], poly[(i + 1) % k])] = len(phi)
                phi.append(first + (i + 1) % k)
        inner = list(index)
        outer_start = {}
        for (u, v) in inner:
            if (v, u) not in index:
                if v in outer_start:
                    raise MapError("boundary is not simple")
                outer_start[v] = u
        for v, u in outer_start.items():
            index[(v, u)] = len(phi)
            phi.append(None)
        for (v, u), h in list(index.items()):
            if h < len(inner):
                continue
            phi[h] = index[(u, outer_start[u])]
        total = len(phi)
        opp = [index[(v, u)] for (u, v) in sorted(index, key=index.get)]
        phi_inv = [0] * total
        for h, g in enumerate(phi):
            phi_inv[g] = h
        nxt = [opp[phi_inv[g]] for g in range(total)]
        return cls(tuple(opp), tuple(nxt), index[tuple(root)], tuple(open_sides))


def _cycles(perm) -> tuple[list, list]:
    owner = [-1] * len(perm)
    cycles = []
    for h in range(len(perm)):
        if owner[h] >= 0:
            continue
        cyc = []
        g = h
        while owner[g] < 0:
            owner[g] = len(cycles)
            cyc.append(g)
            g = perm[g]
        cycles.append(cyc)
    return owner, cycles


def _half_edge_structure(hm: HalfEdgeMap) -> tuple[list, dict]:
    """Structural clauses checkable on the raw permutations."""
    problems = []
    opp, nxt = hm.opposite, hm.next
    n = len(opp)
    if n == 0:
        return ([] if hm.root == -1 else ["empty map with a root"]), {}
    if len(nxt) != n or sorted(opp) != list(range(n)) or sorted(nxt) != list(range(n)):
        return ["opposite/next are not permutations of the same size"], {}
    if any(opp[opp[h]] != h or opp[h] == h for h in range(n)):
        return ["opposite is not a fixed-point-free involution"], {}
    if not 0 <= hm.root < n:
        return ["root out of range"], {}
    nxt_inv = [0] * n
    for h, g in enumerate(nxt):
        nxt_inv[g] = h
    phi = [nxt_inv[opp[h]] for h in range(n)]
    face_of, faces = _cycles(phi)
    vert_of, verts = _cycles(nxt)
    seen = {0}
    stack = [0]
    while stack:
        h = stack.pop()
        for g in (opp[h], nxt[h], nxt_inv[h]):
            if g not in seen:
                seen.add(g)
                stack.append(g)
    if len(seen) != n:
        return ["map is disconnected"], {}
    if len(verts) - n // 2 + len(faces) != 2:
        problems.append("not planar (Euler characteristic)")
    rf = face_of[hm.root]
    cyc = [hm.root]
    while phi[cyc[-1]] != hm.root:
        cyc.append(phi[cyc[-1]])
    for i, fc in enumerate(faces):
        if i != rf and len(fc) != 4:
            problems.append(f"inner face of degree {len(fc)}")
    origins = [vert_of[h] for h in cyc]
    if len(set(origins)) != len(origins):
        problems.append("root face is not simple")
    on_boundary = set(origins)
    for i, vc in enumerate(verts):
        if i in on_boundary:
            if len(vc) > 4:
                problems.append(f"boundary vertex of degree {len(vc)}")
        elif len(vc) != 4:
            problems.append(f"flatness: inner vertex of degree {len(vc)}")
    if len(verts[vert_of[hm.root]]) != 2:
        problems.append("root edge does not start at a convex corner")
    data = dict(phi=phi, face_of=face_of, faces=faces, vert_of=vert_of, verts=verts,
                root_cycle=cyc, root_face=rf)
    return problems, data


def _from_half_edges(hm: HalfEdgeMap) -> tuple[list, "QuadMap | None"]:
    problems, data = _half_edge_structure(hm)
    if problems:
        return problems, None
    if hm.num_half_edges == 0:
        return [], QuadMap.base0()
    opp = hm.opposite
    phi, face_of, faces = data["phi"], data["face_of"], data["faces"]
    vert_of, verts, cyc, rf = data["vert_of"], data["verts"], data["root_cycle"], data["root_face"]
    # side index of each boundary half-edge
    side_index = {}
    s = 0
    for h in cyc:
        side_index[h] = s
        end_vertex = vert_of[phi[h]]
        if len(verts[end_vertex]) != 3:
            s += 1
    n_sides = s
    bad = [x for x in hm.open_sides if not 0 <= x < n_sides]
    if bad:
        return [f"open side index {bad[0]} out of range"], None
    open_base = 0 in hm.open_sides
    start = opp[hm.root]
    direction = {start: W if open_base else E}
    order = {face_of[start]: 0}
    queue = deque([start])
    while queue:
        h = queue.popleft()
        d = direction[h]
        for i, g in enumerate(_face_cycle(phi, h)):
            want = (d + i) % 4
            if direction.setdefault(g, want) != want:
                return ["direction conflict: the map is not flat"], None
            o = opp[g]
            if face_of[o] == rf:
                continue
            want_o = (want + 2) % 4
            if o not in direction:
                direction[o] = want_o
                order.setdefault(face_of[o], len(order))
                queue.append(o)
            elif direction[o] != want_o:
                return ["direction conflict: the map is not flat"], None
    nbr = [[None] * 4 for _ in order]
    opened = []
    for h, d in direction.items():
        f = order[face_of[h]]
        side = (d - 1) % 4
        if nbr[f][side] is not None:
            return ["face with two sides in one direction"], None
        o = opp[h]
        if face_of[o] == rf:
            nbr[f][side] = -1
            if side_index[o] in hm.open_sides:
                opened.append((f, side))
        else:
            nbr[f][side] = order[face_of[o]]
    if len(order) != len(faces) - 1:
        return ["inner faces are not connected"], None
    root_side = (direction[start] - 1) % 4
    try:
        raw = QuadMap(nbr, opened, root_side)
        faces_mut = raw.to_faces()
        m = QuadMap.from_faces(faces_mut[0], root_side)
        if m.num_vertices != len(verts) or len(m.boundary) != len(cyc):
            return ["half-edge data not realisable as a flat face complex"], None
    except MapError as exc:
        return [str(exc)], None
    return [], m


def _face_cycle(phi, h) -> list:
    out = [h]
    while phi[out[-1]] != h:
        out.append(phi[out[-1]])
    return out


def validate_rigid(m) -> MapReport:
    """Every violated clause of the rigidity definition.

    Accepts a :class:`QuadMap` or raw :class:`HalfEdgeMap` data.
    """
    if isinstance(m, HalfEdgeMap):
        problems, qm = _from_half_edges(m)
        if problems:
            return MapReport(list(problems))
        m = qm
    return m.validate()


def trace_rays(m: QuadMap) -> list:
    return list(m.rays)


def base_length(m: QuadMap) -> int:
    return m.base_length()


def corner_census(m: QuadMap) -> CornerCensus:
    return m.corner_census()


def unit_square(open_base: bool = False) -> QuadMap:
    f = Face()
    if open_base:
        f.op[N] = True
        return QuadMap.from_faces(f, N)
    return QuadMap.from_faces(f, S)


def from_cells(cells: Iterable[tuple[int, int]], open_edges=(), open_base: bool = False) -> QuadMap:
    """Polyomino with grid adjacency; base is the bottom row (top row if open).

    ``open_edges`` lists ``((x, y), side)`` pairs to mark open.
    """
    faces = faces_from_cells(cells)
    for (cell, d) in open_edges:
        faces[cell].op[d] = True
    if open_base:
        top = max(y for _, y in faces)
        x0 = min(x for x, y in faces if y == top)
        root = faces[(x0, top)]
        for x, y in faces:
            if y == top:
                faces[(x, y)].op[N] = True
        return QuadMap.from_faces(root, N)
    bottom = min(y for _, y in faces)
    x1 = max(x for x, y in faces if y == bottom)
    return QuadMap.from_faces(faces[(x1, bottom)], S)
