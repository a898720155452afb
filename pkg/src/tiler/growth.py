"""Growing a disk from a seed edge using only a vertex symbol.

The disk is kept as counter-clockwise face cycles.  At a boundary vertex the
faces already present form an arc of the symbol; the remaining faces are
placed outside the disk in rotation order.  A new face takes over boundary
vertices that are missing exactly one face (that face has to be the new one)
and is topped up with fresh vertices.  A placement is accepted only if every
vertex it touches still fits the symbol and no two faces meet improperly.

A sweep walks the boundary once and completes each vertex with exactly one
valid placement.  When a whole sweep forces nothing, the first undecided
vertex is a branch point: it is logged and every option is followed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GrowthStuck
from .mapcore import FlagMap, build_from_faces
from .symbols import VertexSymbol, canonicalize, parse

# opening edge per type: sizes of the two faces sharing it
_SEEDS = {
    "3^6": (3, 3), "4^4": (4, 4), "6^3": (6, 6),
    "3^3.4^2": (4, 4), "3^2.4.3.4": (3, 3), "3.6.3.6": (3, 6),
    "3^4.6": (6, 3), "3.4.6.4": (6, 4), "3.12^2": (12, 12),
    "4.8^2": (8, 8), "4.6.12": (6, 12),
}


def seed_faces(s: VertexSymbol) -> tuple[int, int]:
    """The two face sizes of the opening edge for symbol ``s``."""
    for text, pair in _SEEDS.items():
        if parse(text) == s:
            return pair
    # any two consecutive faces of the symbol
    seq = s.expand()
    return seq[0], seq[1]


@dataclass(frozen=True)
class BranchPoint:
    sweep: int
    vertex: int
    arc: tuple[int, ...]
    options: tuple[tuple[int, ...], ...]

    def __str__(self):
        opts = " | ".join(".".join(map(str, q)) for q in self.options)
        return f"sweep {self.sweep}: vertex {self.vertex} arc {'.'.join(map(str, self.arc))} -> {opts}"


@dataclass
class GrowthOutcome:
    map: FlagMap
    faces: list
    choices: tuple[int, ...]
    sweeps: int


@dataclass
class GrowthResult:
    symbol: VertexSymbol
    rings: int
    outcomes: list[GrowthOutcome]
    log: list[BranchPoint] = field(default_factory=list)

    @property
    def map(self) -> FlagMap:
        return self.outcomes[0].map


class _Disk:
    """Mutable disk: CCW faces plus a directed-edge index."""

    def __init__(self, symbol):
        self.symbol = symbol
        self.deg = symbol.degree
        seq = symbol.expand()
        rots = set()
        for s in (seq, seq[::-1]):
            for i in range(len(s)):
                rots.add(tuple(s[i:] + s[:i]))
        self.rotations = sorted(rots)
        self.faces: list[list[int]] = []
        self.dedge: dict[tuple[int, int], int] = {}
        self.vfaces: dict[int, list[int]] = {}
        self.n_vertices = 0

    def copy(self):
        d = _Disk.__new__(_Disk)
        d.symbol, d.deg, d.rotations = self.symbol, self.deg, self.rotations
        d.faces = [list(f) for f in self.faces]
        d.dedge = dict(self.dedge)
        d.vfaces = {v: list(fs) for v, fs in self.vfaces.items()}
        d.n_vertices = self.n_vertices
        return d

    def new_vertex(self):
        self.n_vertices += 1
        return self.n_vertices - 1

    def add_face(self, cyc):
        fid = len(self.faces)
        self.faces.append(list(cyc))
        k = len(cyc)
        for i in range(k):
            e = (cyc[i], cyc[(i + 1) % k])
            if e in self.dedge:
                raise GrowthStuck(f"directed edge {e} used twice")
            self.dedge[e] = fid
            self.vfaces.setdefault(cyc[i], []).append(fid)

    # boundary: directed edges whose reverse is absent, disk on the left
    def succ(self, v):
        for f in self.vfaces[v]:
            cyc = self.faces[f]
            i = cyc.index(v)
            w = cyc[(i + 1) % len(cyc)]
            if (w, v) not in self.dedge:
                return w
        return None

    def pred(self, v):
        for f in self.vfaces[v]:
            cyc = self.faces[f]
            i = cyc.index(v)
            u = cyc[i - 1]
            if (v, u) not in self.dedge:
                return u
        return None

    def boundary_cycle(self):
        start = min(v for v in self.vfaces if self.succ(v) is not None)
        out = [start]
        v = self.succ(start)
        while v != start:
            out.append(v)
            v = self.succ(v)
            if len(out) > len(self.vfaces):
                raise GrowthStuck("boundary is not a simple cycle")
        return out

    def arc(self, v):
        """Face sizes around ``v`` from the face on ``v -> succ`` to the one on ``pred -> v``.

        For an interior vertex the full cycle is returned and ``closed`` is true.
        """
        b = self.succ(v)
        if b is None:
            start = self.vfaces[v][0]
            f, sizes = start, []
            while True:
                cyc = self.faces[f]
                sizes.append(len(cyc))
                y = cyc[cyc.index(v) - 1]
                f = self.dedge.get((v, y))
                if f is None:
                    raise GrowthStuck(f"vertex {v} has an open fan but no boundary edge")
                if f == start:
                    return tuple(sizes), True
        f = self.dedge[(v, b)]
        sizes = []
        while True:
            cyc = self.faces[f]
            sizes.append(len(cyc))
            y = cyc[cyc.index(v) - 1]
            nxt = self.dedge.get((v, y))
            if nxt is None:
                return tuple(sizes), False
            f = nxt
            if len(sizes) > self.deg:
                raise GrowthStuck(f"vertex {v} has too many faces")

    def completions(self, v):
        arc, closed = self.arc(v)
        if closed:
            return None
        t = len(arc)
        return sorted({r[t:] for r in self.rotations if r[:t] == arc and t < len(r)})

    def vertex_ok(self, v):
        arc, closed = self.arc(v)
        if closed:
            return canonicalize(arc) == self.symbol
        if len(arc) >= self.deg:
            return False
        return any(r[:len(arc)] == arc for r in self.rotations)

    def missing_one_size(self, v):
        opts = self.completions(v)
        if opts and len(opts[0]) == 1:
            sizes = {q[0] for q in opts}
            return sizes.pop() if len(sizes) == 1 else None
        return None


def _chain(d: _Disk, start: int, step, size: int, v: int) -> list[int]:
    """Boundary run from ``start`` whose vertices each miss only the new ``size``-gon."""
    out = [start]
    c = start
    while True:
        opts = d.completions(c)
        if opts is None or len(opts[0]) != 1:
            return out
        need = d.missing_one_size(c)
        if need != size:
            raise GrowthStuck(f"vertex {c} needs a {need}-gon, not a {size}-gon")
        c = step(c)
        if c in out or c == v:
            raise GrowthStuck("placement would close the boundary")
        out.append(c)


def _place_last(d: _Disk, v: int, p: int) -> list[int]:
    """Add the final ``p``-gon at ``v``, spanning both boundary edges at ``v``."""
    fwd = _chain(d, d.succ(v), d.succ, p, v)
    back = _chain(d, d.pred(v), d.pred, p, v)
    if set(back) & set(fwd):
        raise GrowthStuck("placement would close the boundary")
    fresh = p - 1 - len(back) - len(fwd)
    if fresh < 0:
        raise GrowthStuck(f"a {p}-gon cannot reach all its forced vertices")
    cyc = [v] + back + [d.new_vertex() for _ in range(fresh)] + list(reversed(fwd))
    d.add_face(cyc)
    return cyc


def _place_side(d: _Disk, v: int, p: int, run: list[int], forward: bool) -> list[int]:
    """Add a ``p``-gon at ``v`` along the forced ``run`` on one side.

    When the run fills the polygon its far end becomes the spoke, otherwise
    the spoke is a fresh vertex.
    """
    fresh = [d.new_vertex() for _ in range(p - 1 - len(run))]
    if forward:
        cyc = [v] + fresh + list(reversed(run))
    else:
        cyc = [v] + run + fresh
    d.add_face(cyc)
    return cyc


def _fill(d: _Disk, v: int, q: tuple[int, ...]) -> set[int]:
    touched = {v}
    q = list(q)
    while len(q) > 1:
        fwd = _chain(d, d.succ(v), d.succ, q[-1], v)
        back = _chain(d, d.pred(v), d.pred, q[0], v)
        if len(fwd) + 1 > q[-1] or len(back) + 1 > q[0]:
            raise GrowthStuck("a polygon cannot reach all its forced vertices")
        if len(fwd) + 1 == q[-1] or len(back) + 1 != q[0]:
            touched.update(_place_side(d, v, q.pop(), fwd, True))
        else:
            touched.update(_place_side(d, v, q.pop(0), back, False))
    touched.update(_place_last(d, v, q[0]))
    return touched


def _apply(disk: _Disk, v: int, q: tuple[int, ...], lookahead: bool = True) -> _Disk:
    """A copy of ``disk`` with the faces ``q`` placed outside ``v``; raises GrowthStuck if invalid.

    ``q`` lists the missing faces in rotation order after the arc, so its
    last entry sits on the edge ``v -> succ(v)`` and is placed first.  With
    ``lookahead`` every touched boundary vertex must still have a completion
    that applies cleanly.
    """
    d = disk.copy()
    first_new = len(d.faces)
    touched = _fill(d, v, q)
    for u in touched:
        if not d.vertex_ok(u):
            raise GrowthStuck(f"vertex {u} no longer fits {d.symbol}")
    _check_intersections(d, first_new)
    if lookahead:
        for u in sorted(touched):
            opts = d.completions(u)
            if opts is None:
                continue
            if not any(_applies(d, u, q2) for q2 in opts):
                raise GrowthStuck(f"vertex {u} would be left without a completion")
    return d


def _applies(d, u, q):
    try:
        _apply(d, u, q, lookahead=False)
    except GrowthStuck:
        return False
    return True


def _check_intersections(d: _Disk, first_new: int):
    for f in range(first_new, len(d.faces)):
        cyc = d.faces[f]
        vs = set(cyc)
        if len(vs) != len(cyc):
            raise GrowthStuck("a face repeats a vertex")
        others = {g for u in cyc for g in d.vfaces[u] if g != f}
        for g in others:
            common = vs & set(d.faces[g])
            if len(common) > 2:
                raise GrowthStuck("two faces share more than an edge")
            if len(common) == 2:
                u, w = common
                if (u, w) not in d.dedge or (w, u) not in d.dedge:
                    raise GrowthStuck("two faces share two vertices but no edge")
                if {d.dedge[(u, w)], d.dedge[(w, u)]} != {f, g}:
                    raise GrowthStuck("two faces share two vertices but no edge")


def _valid_options(disk, v):
    opts = disk.completions(v)
    if opts is None:
        return []
    out = []
    for q in opts:
        try:
            out.append((q, _apply(disk, v, q)))
        except GrowthStuck:
            pass
    return out


def _seed(symbol):
    d = _Disk(symbol)
    p, r = seed_faces(symbol)
    first = [d.new_vertex() for _ in range(p)]
    d.add_face(first)
    second = [first[1], first[0]] + [d.new_vertex() for _ in range(r - 2)]
    d.add_face(second)
    return d


def _sweep(disk):
    """One boundary pass; returns ``(disk, progressed)``."""
    progressed = False
    for v in disk.boundary_cycle():
        if disk.succ(v) is None:
            continue  # closed by an earlier completion in this pass
        opts = _valid_options(disk, v)
        # no valid option yet usually means the faces still have to meet
        # vertices that later completions will bring into reach
        if len(opts) == 1:
            disk = opts[0][1]
            progressed = True
    return disk, progressed


def _first_branch(disk):
    for v in disk.boundary_cycle():
        opts = _valid_options(disk, v)
        if len(opts) > 1:
            return v, disk.arc(v)[0], opts
    raise GrowthStuck("no vertex is forced and none can branch")


def grow_patch(s: VertexSymbol | str, rings: int) -> GrowthResult:
    """Grow ``rings`` completion sweeps from the type's seed edge.

    Every branch is followed; branches that later get stuck are dropped.
    Raises GrowthStuck when no branch survives.
    """
    if isinstance(s, str):
        s = parse(s)
    if rings < 1:
        raise ValueError("rings must be at least 1")
    log: list[BranchPoint] = []
    outcomes: list[GrowthOutcome] = []
    failures: list[str] = []

    def run(disk, done, choices):
        while done < rings:
            try:
                disk, progressed = _sweep(disk)
            except GrowthStuck as exc:
                failures.append(str(exc))
                return
            if progressed:
                done += 1
                continue
            try:
                v, arc, opts = _first_branch(disk)
            except GrowthStuck as exc:
                failures.append(str(exc))
                return
            log.append(BranchPoint(done, v, arc, tuple(q for q, _ in opts)))
            for i, (_, child) in enumerate(opts):
                run(child, done, choices + (i,))
            return
        outcomes.append(GrowthOutcome(build_from_faces(disk.faces), disk.faces, choices, done))

    try:
        start = _seed(s)
    except GrowthStuck as exc:
        raise GrowthStuck(f"cannot seed {s}: {exc}") from exc
    run(start, 0, ())
    if not outcomes:
        raise GrowthStuck(f"growth of {s} got stuck on every branch: {failures[:1]}")
    return GrowthResult(s, rings, outcomes, log)


def reflect(m: FlagMap) -> FlagMap:
    """Mirror image: every face cycle reversed."""
    return build_from_faces([list(reversed(c)) for c in m.face_cycles()])


def growth_matches_template(s: VertexSymbol | str, rings: int) -> bool:
    """Whether every grown outcome embeds in a patch of the matching tiling."""
    from .symmetry import embeddings
    from .tilings import patch, template_for_type

    if isinstance(s, str):
        s = parse(s)
    result = grow_patch(s, rings)
    try:
        t = template_for_type(s)
    except Exception:
        return False
    host = patch(t, rings + 2)
    return all(embeddings(o.map, host) for o in result.outcomes)


def interior_symbols(m: FlagMap) -> set:
    from .mapcore import face_cycle

    return {canonicalize(face_cycle(m, v)) for v in m.interior_vertices}
