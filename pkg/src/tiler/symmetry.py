"""Automorphisms, isomorphisms and embeddings of flag maps.

All three searches share one kernel (:mod:`tiler._kernels`): a morphism of a
connected map is fixed by where it sends one flag, so each candidate image of
a base flag is extended along a spanning tree and then checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import _kernels
from .mapcore import FlagMap

FULL_LIST_LIMIT = 10_000


@dataclass(frozen=True, eq=False)
class Automorphism:
    flag_perm: np.ndarray

    def vertex_map(self, m: FlagMap) -> np.ndarray:
        """Image of each vertex of ``m``."""
        return m.vert[self.flag_perm[m.vertex_flag]]

    def __call__(self, x):
        return self.flag_perm[x]


def _degrees(m):
    return np.bincount(m.vert, minlength=m.n_vertices) // 2


def _flag_signature(m):
    # cheap automorphism invariants of a flag, packed into one integer
    fs = m.face_sizes[m.face_of]
    deg = _degrees(m)[m.vert]
    deg_other = _degrees(m)[m.vert[m.s0]]
    across = m.face_sizes[m.face_of[m.s2]]
    bnd = (m.s2 == np.arange(m.n_flags)).astype(np.int64)
    return (((fs * 4096 + across) * 4096 + deg) * 4096 + deg_other) * 2 + bnd


def orientation(m: FlagMap) -> np.ndarray | None:
    """A 0/1 class per flag flipped by every involution, or ``None`` if non-orientable.

    The map's own ``parity`` is used when it is consistent.
    """
    ident = np.arange(m.n_flags)
    interior = m.s2 != ident

    def consistent(p):
        return (np.all(p[m.s0] != p) and np.all(p[m.s1] != p)
                and np.all(p[m.s2[interior]] != p[interior]))

    if m.parity is not None and consistent(m.parity):
        return m.parity.astype(np.int8)
    color = np.full(m.n_flags, -1, dtype=np.int8)
    for start in range(m.n_flags):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            for y in (m.s0[x], m.s1[x], m.s2[x]):
                if y == x:
                    continue
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    stack.append(int(y))
                elif color[y] == color[x]:
                    return None
    return color


def mirror(m: FlagMap) -> FlagMap:
    """The same map with the opposite orientation."""
    o = orientation(m)
    if o is None:
        raise ValueError("map is not orientable")
    return FlagMap(m.s0, m.s1, m.s2, vert=m.vert, labels=m.labels, parity=(1 - o).astype(np.int8))


class AutomorphismGroup:
    """The full automorphism group of a closed connected map.

    Elements are stored as the images of flag 0 (``roots``); full flag
    permutations are materialized on demand.  ``elements`` gives all of them
    when the map has at most ``FULL_LIST_LIMIT`` flags.
    """

    def __init__(self, m: FlagMap, roots: np.ndarray, tree):
        self.map = m
        self.roots = np.asarray(roots, dtype=np.int64)
        self._tree = tree

    @property
    def order(self) -> int:
        return len(self.roots)

    def __len__(self):
        return self.order

    def element(self, i) -> Automorphism:
        return Automorphism(_kernels.extend_one(self._tree, self.map.sigma, int(self.roots[i]), self.map.n_flags))

    def perms(self, chunk: int = 256):
        """Yield blocks of flag permutations, shape ``(<=chunk, F)``."""
        order, parent, gen, depth = self._tree
        dst = self.map.sigma
        for lo in range(0, self.order, chunk):
            roots = self.roots[lo:lo + chunk]
            phi = np.empty((len(roots), self.map.n_flags), dtype=np.int64)
            phi[:, order[0]] = roots
            for d in range(1, int(depth.max()) + 1):
                for k in range(3):
                    sel = (depth == d) & (gen == k)
                    if sel.any():
                        phi[:, order[sel]] = dst[k][phi[:, parent[sel]]]
            yield phi

    @cached_property
    def elements(self) -> list[Automorphism]:
        if self.map.n_flags > FULL_LIST_LIMIT:
            raise ValueError("too many flags to list every element; use perms() or generators()")
        return [Automorphism(p) for block in self.perms() for p in block]

    def generators(self) -> list[Automorphism]:
        """A generating set, grown greedily until it reaches the full order."""
        gens: list[Automorphism] = []
        reached = {0}
        for i in range(self.order):
            if int(self.roots[i]) in reached:
                continue
            g = self.element(i)
            gens.append(g)
            reached = self._closure_roots(gens)
            if len(reached) == self.order:
                break
        return gens

    def _closure_roots(self, gens):
        # group generated by gens, tracked through the image of flag 0;
        # the action on flags is regular so the root image determines the element
        reached = {0}
        frontier = [0]
        perms = [g.flag_perm for g in gens]
        while frontier:
            x = frontier.pop()
            for p in perms:
                # (h g)(0) where h(0) = x: h commutes with the involutions, so
                # h(g(0)) is read off by walking g(0)'s tree word from x
                y = self._apply_at(x, int(p[0]))
                if y not in reached:
                    reached.add(y)
                    frontier.append(y)
        return reached

    def _apply_at(self, root_img, target):
        phi = _kernels.extend_one(self._tree, self.map.sigma, root_img, self.map.n_flags)
        return int(phi[target])

    def __repr__(self):
        return f"AutomorphismGroup(order={self.order})"


def automorphism_group(m: FlagMap) -> AutomorphismGroup:
    """Every automorphism of the connected map ``m`` (reflections included)."""
    if not m.is_connected:
        raise ValueError("automorphism search needs a connected map")
    sig = _flag_signature(m)
    candidates = np.flatnonzero(sig == sig[0])
    mask = np.ones(m.n_flags, dtype=bool)
    tree = _kernels.spanning_tree(m.sigma, mask, 0)
    ok = _kernels.extend_candidates(tree, m.sigma, m.sigma, mask, candidates)
    return AutomorphismGroup(m, candidates[ok], tree)


@dataclass(frozen=True)
class OrbitPartition:
    classes: tuple[frozenset, ...]
    group_order: int

    @property
    def count(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> list[int]:
        return sorted((len(c) for c in self.classes), reverse=True)

    def class_of(self, v) -> int:
        for i, c in enumerate(self.classes):
            if v in c:
                return i
        raise KeyError(v)


def vertex_orbits(m: FlagMap, group: AutomorphismGroup | None = None) -> OrbitPartition:
    """Orbits of ``Aut(m)`` on vertices."""
    if group is None:
        group = automorphism_group(m)
    rows, cols = [], []
    reps = m.vertex_flag
    for block in group.perms():
        imgs = m.vert[block[:, reps]]
        rows.append(np.broadcast_to(np.arange(m.n_vertices), imgs.shape).ravel())
        cols.append(imgs.ravel())
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    g = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(m.n_vertices,) * 2)
    _, labels = connected_components(g, directed=False)
    classes = {}
    for v, c in enumerate(labels):
        classes.setdefault(int(c), set()).add(v)
    ordered = sorted((frozenset(c) for c in classes.values()), key=min)
    return OrbitPartition(tuple(ordered), group.order)


def is_vertex_transitive(m: FlagMap) -> bool:
    return vertex_orbits(m).count == 1


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: np.ndarray | None = None

    def __bool__(self):
        return self.isomorphic


def _quick_invariants(m):
    return (m.n_flags, m.n_vertices, m.n_edges, m.n_faces, len(m.boundary),
            tuple(np.sort(m.face_sizes)), tuple(np.sort(_degrees(m))))


def isomorphic(m1: FlagMap, m2: FlagMap, oriented: bool = False) -> IsoResult:
    """Decide ``m1 ≅ m2`` and return a flag bijection as witness.

    With ``oriented=True`` only isomorphisms carrying the orientation of
    ``m1`` onto that of ``m2`` count.
    """
    if m1.is_closed != m2.is_closed:
        raise ValueError("compare closed maps with closed maps and bordered with bordered")
    if not m1.is_connected or not m2.is_connected:
        raise ValueError("isomorphism test needs connected maps")
    if _quick_invariants(m1) != _quick_invariants(m2):
        return IsoResult(False)
    s1 = _flag_signature(m1)
    s2 = _flag_signature(m2)
    base = 0
    candidates = np.flatnonzero(s2 == s1[base])
    if oriented:
        o1, o2 = orientation(m1), orientation(m2)
        if o1 is None or o2 is None:
            raise ValueError("oriented comparison needs orientable maps")
        candidates = candidates[o2[candidates] == o1[base]]
    mask = np.ones(m1.n_flags, dtype=bool)
    tree = _kernels.spanning_tree(m1.sigma, mask, base)
    ok = _kernels.extend_candidates(tree, m1.sigma, m2.sigma, mask, candidates)
    hits = candidates[ok]
    if len(hits) == 0:
        return IsoResult(False)
    return IsoResult(True, _kernels.extend_one(tree, m2.sigma, int(hits[0]), m1.n_flags))


def embeddings(src: FlagMap, dst: FlagMap, first_only: bool = True) -> list[np.ndarray]:
    """Injective flag maps ``src -> dst`` respecting all interior adjacencies.

    Boundary flags of ``src`` may land anywhere; vertices must map injectively.
    """
    if not src.is_connected:
        raise ValueError("source must be connected")
    interior = src.s2 != np.arange(src.n_flags)
    # root at an interior flag when there is one
    base = int(np.flatnonzero(interior)[0]) if interior.any() else 0
    fs_src = src.face_sizes[src.face_of[base]]
    candidates = np.flatnonzero(dst.face_sizes[dst.face_of] == fs_src)
    tree = _kernels.spanning_tree(src.sigma, interior, base)
    ok = _kernels.extend_candidates(tree, src.sigma, dst.sigma, interior, candidates)
    out = []
    for c in candidates[ok]:
        phi = _kernels.extend_one(tree, dst.sigma, int(c), src.n_flags)
        vmap = np.full(src.n_vertices, -1, dtype=np.int64)
        good = True
        for x in range(src.n_flags):
            v, w = src.vert[x], dst.vert[phi[x]]
            if vmap[v] < 0:
                vmap[v] = w
            elif vmap[v] != w:
                good = False
                break
        if good and len(np.unique(vmap)) == src.n_vertices:
            out.append(phi)
            if first_only:
                break
    return out
