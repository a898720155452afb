"""Maps on surfaces as flag sets with three involutions.

A flag is an incident (vertex, edge, face) triple.  ``s0`` changes the vertex,
``s1`` the edge and ``s2`` the face while keeping the other two.  Boundary
flags of a bordered map (a patch) are the fixed points of ``s2``.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import BoundaryNotSupported, BoundaryVertex, DegenerateFace, EdgeUsedThrice


def _orbits(n, *perms):
    """Connected components of the flag graph spanned by ``perms``."""
    if n == 0:
        return 0, np.zeros(0, dtype=np.int64)
    rows = np.concatenate([np.arange(n)] * len(perms))
    cols = np.concatenate(perms)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    count, labels = connected_components(graph, directed=False)
    return count, _first_seen_relabel(labels)


def _first_seen_relabel(labels):
    # number classes in order of their smallest member so ids are deterministic
    _, first = np.unique(labels, return_index=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first)] = np.arange(len(first))
    return rank[labels]


@dataclass(frozen=True, eq=False)
class FlagMap:
    """Immutable flag representation of a (possibly bordered) map.

    ``vert[x]`` is the vertex of flag ``x``; when omitted it defaults to the
    ``<s1, s2>`` orbit.  ``labels`` optionally names vertices (tiling
    coordinates, input ids).  ``parity`` is an orientation class per flag when
    the builder knows one.  ``meta`` records provenance (tiling, lattice,
    patch radius) for builders that have it.
    """

    s0: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    vert: np.ndarray | None = None
    labels: tuple | None = None
    parity: np.ndarray | None = field(default=None, repr=False)
    meta: dict | None = field(default=None, repr=False)

    def __post_init__(self):
        for name in ("s0", "s1", "s2"):
            object.__setattr__(self, name, np.ascontiguousarray(getattr(self, name), dtype=np.int64))
        if self.vert is None:
            _, vert = _orbits(len(self.s0), self.s1, self.s2)
            object.__setattr__(self, "vert", vert)
        else:
            object.__setattr__(self, "vert", np.ascontiguousarray(self.vert, dtype=np.int64))
        if self.parity is not None:
            object.__setattr__(self, "parity", np.ascontiguousarray(self.parity, dtype=np.int8))

    # -- basic counts -------------------------------------------------------

    @property
    def n_flags(self) -> int:
        return len(self.s0)

    @cached_property
    def sigma(self) -> np.ndarray:
        """The three involutions stacked as a ``(3, F)`` array."""
        return np.stack([self.s0, self.s1, self.s2])

    @cached_property
    def n_vertices(self) -> int:
        return int(self.vert.max()) + 1 if self.n_flags else 0

    @cached_property
    def _edges(self):
        return _orbits(self.n_flags, self.s0, self.s2)

    @cached_property
    def _faces(self):
        return _orbits(self.n_flags, self.s0, self.s1)

    @property
    def edge_of(self) -> np.ndarray:
        return self._edges[1]

    @property
    def face_of(self) -> np.ndarray:
        return self._faces[1]

    @property
    def n_edges(self) -> int:
        return self._edges[0]

    @property
    def n_faces(self) -> int:
        return self._faces[0]

    @cached_property
    def boundary(self) -> np.ndarray:
        """Flags fixed by ``s2``."""
        return np.flatnonzero(self.s2 == np.arange(self.n_flags))

    @property
    def is_closed(self) -> bool:
        return len(self.boundary) == 0

    @cached_property
    def is_connected(self) -> bool:
        count, _ = _orbits(self.n_flags, self.s0, self.s1, self.s2)
        return count == 1

    @cached_property
    def face_sizes(self) -> np.ndarray:
        return np.bincount(self.face_of, minlength=self.n_faces) // 2

    @cached_property
    def vertex_flag(self) -> np.ndarray:
        """One representative flag per vertex (the smallest)."""
        rep = np.full(self.n_vertices, self.n_flags, dtype=np.int64)
        np.minimum.at(rep, self.vert, np.arange(self.n_flags))
        return rep

    @cached_property
    def boundary_vertices(self) -> frozenset:
        return frozenset(int(v) for v in self.vert[self.boundary])

    @cached_property
    def interior_vertices(self) -> frozenset:
        return frozenset(range(self.n_vertices)) - self.boundary_vertices

    # -- combinatorial readouts --------------------------------------------

    def face_cycles(self) -> list[list[int]]:
        """Vertex cycle of every face, indexed by face id."""
        out = [None] * self.n_faces
        seen = np.zeros(self.n_faces, dtype=bool)
        for x in range(self.n_flags):
            f = self.face_of[x]
            if seen[f] or self.parity is not None and self.parity[x]:
                continue
            seen[f] = True
            cyc = []
            y = x
            while True:
                cyc.append(int(self.vert[y]))
                y = int(self.s1[self.s0[y]])
                if y == x:
                    break
            out[f] = cyc
        for f in np.flatnonzero(~seen):
            # no parity information: start from any flag of the face
            x = int(np.flatnonzero(self.face_of == f)[0])
            cyc, y = [], x
            while True:
                cyc.append(int(self.vert[y]))
                y = int(self.s1[self.s0[y]])
                if y == x:
                    break
            out[f] = cyc
        return out

    def edge_endpoints(self) -> np.ndarray:
        """``(E, 2)`` array of vertex pairs, one row per edge id."""
        rep = np.full(self.n_edges, self.n_flags, dtype=np.int64)
        np.minimum.at(rep, self.edge_of, np.arange(self.n_flags))
        return np.stack([self.vert[rep], self.vert[self.s0[rep]]], axis=1)

    def neighbors(self, v: int) -> list[int]:
        """Neighbours of ``v`` in rotation order (repeats kept for non-simple maps)."""
        return [int(self.vert[self.s0[x]]) for x in self._fan(v)]

    def _fan(self, v):
        x0 = int(self.vertex_flag[v])
        fan = []
        y = x0
        while True:
            fan.append(y)
            z = int(self.s1[y])
            if self.s2[z] == z:
                raise BoundaryVertex(f"vertex {v} lies on the boundary")
            y = int(self.s2[z])
            if y == x0:
                return fan

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n_vertices)]
        for u, w in self.edge_endpoints():
            if u != w:
                adj[u].add(int(w))
                adj[w].add(int(u))
        return adj

    def __repr__(self):
        kind = "closed" if self.is_closed else "bordered"
        return (f"FlagMap({kind}, V={self.n_vertices}, E={self.n_edges}, "
                f"F={self.n_faces}, flags={self.n_flags})")


def check_axioms(m: FlagMap) -> list[str]:
    """Violated flag-map axioms (empty list when ``m`` is well formed)."""
    ident = np.arange(m.n_flags)
    problems = []
    for name, s in (("s0", m.s0), ("s1", m.s1), ("s2", m.s2)):
        if s.min(initial=0) < 0 or s.max(initial=0) >= m.n_flags:
            problems.append(f"{name} out of range")
            return problems
        if not np.array_equal(s[s], ident):
            problems.append(f"{name} is not an involution")
    if np.any(m.s0 == ident):
        problems.append("s0 has fixed flags")
    if np.any(m.s1 == ident):
        problems.append("s1 has fixed flags")
    s02 = m.s0[m.s2]
    if not np.array_equal(s02[s02], ident):
        problems.append("(s0 s2)^2 is not the identity")
    interior = m.s2 != ident
    if np.any((s02 == ident) & interior):
        problems.append("s0 s2 fixes an interior flag")
    # s2 boundary must be closed under s0: a boundary edge has both flags fixed
    if np.any((m.s2[m.s0] == m.s0) != ~interior):
        problems.append("boundary not closed under s0")
    return problems


def build_from_faces(faces: Sequence[Sequence[Hashable]]) -> FlagMap:
    """Flag map whose faces are the given vertex cycles.

    Edges used by a single face become boundary.  Vertex ids may be any
    hashables; they are kept as ``labels`` in first-appearance order.
    """
    index: dict = {}
    cycles = []
    for face in faces:
        face = list(face)
        if len(face) < 3:
            raise DegenerateFace(f"face {face!r} has fewer than 3 vertices")
        ids = []
        for v in face:
            if v not in index:
                index[v] = len(index)
            ids.append(index[v])
        for i in range(len(ids)):
            if ids[i] == ids[(i + 1) % len(ids)]:
                raise DegenerateFace(f"face {face!r} repeats a vertex consecutively")
        cycles.append(ids)

    offsets = np.cumsum([0] + [2 * len(c) for c in cycles])
    n = int(offsets[-1])
    s0 = np.empty(n, dtype=np.int64)
    s1 = np.empty(n, dtype=np.int64)
    s2 = np.arange(n, dtype=np.int64)
    vert = np.empty(n, dtype=np.int64)
    parity = np.tile(np.array([0, 1], dtype=np.int8), n // 2)
    occurrences = defaultdict(list)
    for f, cyc in enumerate(cycles):
        base = int(offsets[f])
        k = len(cyc)
        for i in range(k):
            a = base + 2 * i
            b = a + 1
            s0[a], s0[b] = b, a
            prev = base + 2 * ((i - 1) % k) + 1
            s1[a], s1[prev] = prev, a
            vert[a] = cyc[i]
            vert[b] = cyc[(i + 1) % k]
            occurrences[frozenset((cyc[i], cyc[(i + 1) % k]))].append(a)
    for key, occ in occurrences.items():
        if len(occ) > 2:
            u, w = sorted(key)
            labels = list(index)
            raise EdgeUsedThrice(f"edge {labels[u]!r}-{labels[w]!r} lies in {len(occ)} faces")
        if len(occ) == 2:
            a, c = occ
            for x in (a, a + 1):
                y = c if vert[c] == vert[x] else c + 1
                s2[x], s2[y] = y, x
    return FlagMap(s0, s1, s2, vert=vert, labels=tuple(index), parity=parity)


def euler_characteristic(m: FlagMap) -> int:
    return m.n_vertices - m.n_edges + m.n_faces


@dataclass(frozen=True)
class PolyhedralReport:
    ok: bool
    code: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def is_polyhedral(m: FlagMap) -> PolyhedralReport:
    """Check simple faces, simple 1-skeleton and pairwise face intersections.

    Violation codes: ``pinched_vertex``, ``face_not_simple``, ``loop``,
    ``parallel_edges``, ``bad_face_intersection``.  The first one found is
    reported.
    """
    n_fans, _ = _orbits(m.n_flags, m.s1, m.s2)
    if n_fans != m.n_vertices:
        return PolyhedralReport(False, "pinched_vertex", "a vertex has a disconnected link")
    cycles = m.face_cycles()
    for f, cyc in enumerate(cycles):
        if len(set(cyc)) != len(cyc):
            return PolyhedralReport(False, "face_not_simple", f"face {f} repeats a vertex: {cyc}")
    ends = m.edge_endpoints()
    loops = np.flatnonzero(ends[:, 0] == ends[:, 1])
    if len(loops):
        return PolyhedralReport(False, "loop", f"edge {int(loops[0])} is a loop")
    pairs = np.sort(ends, axis=1)
    uniq, counts = np.unique(pairs, axis=0, return_counts=True)
    if np.any(counts > 1):
        u, w = uniq[np.argmax(counts > 1)]
        return PolyhedralReport(False, "parallel_edges", f"vertices {u} and {w} are joined twice")
    vsets = [set(c) for c in cycles]
    esets = [{frozenset((c[i], c[(i + 1) % len(c)])) for i in range(len(c))} for c in cycles]
    by_vertex = defaultdict(list)
    for f, c in enumerate(cycles):
        for v in c:
            by_vertex[v].append(f)
    checked = set()
    for fs in by_vertex.values():
        for i, f in enumerate(fs):
            for g in fs[i + 1:]:
                if (f, g) in checked:
                    continue
                checked.add((f, g))
                if not _faces_meet_properly(vsets[f], vsets[g], esets[f], esets[g]):
                    common = sorted(vsets[f] & vsets[g])
                    return PolyhedralReport(False, "bad_face_intersection",
                                            f"faces {f} and {g} share vertices {common}")
    return PolyhedralReport(True)


def _faces_meet_properly(vf, vg, ef, eg):
    common = vf & vg
    if len(common) <= 1:
        return True
    if len(common) == 2:
        e = frozenset(common)
        return e in ef and e in eg
    return False


def dual(m: FlagMap) -> FlagMap:
    """Dual map: faces become vertices (``s0`` and ``s2`` swap roles)."""
    if not m.is_closed:
        raise BoundaryNotSupported("the dual is only defined here for closed maps")
    return FlagMap(m.s2, m.s1, m.s0, vert=m.face_of, parity=m.parity)


def face_cycle(m: FlagMap, v: int) -> tuple[int, ...]:
    """Sizes of the faces around ``v`` in rotation order.

    The cycle starts at the incident face with the smallest id; of the two
    directions the one whose next face id is smaller is used.
    """
    ids = [int(m.face_of[x]) for x in m._fan(v)]
    sizes = {f: int(m.face_sizes[f]) for f in ids}
    k = len(ids)
    start = min(range(k), key=lambda i: ids[i])
    fwd = [ids[(start + i) % k] for i in range(k)]
    bwd = [ids[(start - i) % k] for i in range(k)]
    seq = min(fwd, bwd, key=lambda s: s[1:2])
    return tuple(sizes[f] for f in seq)


# -- JSON interchange ------------------------------------------------------

def _min_rotation(cyc):
    k = len(cyc)
    variants = [cyc[i:] + cyc[:i] for i in range(k)]
    rev = cyc[::-1]
    variants += [rev[i:] + rev[:i] for i in range(k)]
    return min(variants)


def to_json_dict(m: FlagMap, **extra) -> dict:
    faces = sorted(_min_rotation(c) for c in m.face_cycles())
    out = {"vertices": m.n_vertices, "faces": faces}
    out.update(extra)
    return out


def dumps(m: FlagMap, **extra) -> str:
    return json.dumps(to_json_dict(m, **extra))


def from_json_dict(data: dict) -> FlagMap:
    faces = data["faces"]
    n = int(data["vertices"])
    used = {v for f in faces for v in f}
    if used != set(range(n)):
        raise ValueError("faces must use exactly the vertex ids 0..vertices-1")
    m = build_from_faces(faces)
    # relabel so vertex ids coincide with the file's ids
    relabel = np.array(m.labels, dtype=np.int64)
    return FlagMap(m.s0, m.s1, m.s2, vert=relabel[m.vert], labels=tuple(range(n)), parity=m.parity)


def loads(text: str) -> FlagMap:
    return from_json_dict(json.loads(text))


def load(path) -> FlagMap:
    with open(path) as fh:
        return from_json_dict(json.load(fh))


def save(m: FlagMap, path, **extra) -> None:
    with open(path, "w") as fh:
        json.dump(to_json_dict(m, **extra), fh)
        fh.write("\n")


def submap(m: FlagMap, faces: Iterable[int]) -> FlagMap:
    """Bordered map formed by a subset of faces of ``m`` (labels kept)."""
    cycles = m.face_cycles()
    labels = m.labels if m.labels is not None else tuple(range(m.n_vertices))
    return build_from_faces([[labels[v] for v in cycles[f]] for f in sorted(set(faces))])
