"""Perfect codes in the triangular tiling and the snub hexagonal maps they yield.

``U0`` is the set of vertices ``u(i, j)`` of the [3^6] tiling with
``i = 4j (mod 7)``.  Every vertex outside ``U0`` has exactly one neighbour in
it, so deleting the members and merging each member's six triangles into a
hexagon turns a [3^6] map into a [3^4,6] map.  ``insert_centers`` undoes it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PropertyFails, WrongHost
from .mapcore import FlagMap, build_from_faces
from .quotients import SublatticeBasis
from .symbols import parse, semi_equivelar_type

T3_6 = parse("3^6")
LAMBDA7 = SublatticeBasis(7, 4, 1)  # {(i, j) : i = 4j mod 7}


@dataclass(frozen=True)
class MarkedSubset:
    host: FlagMap
    members: frozenset

    def __len__(self):
        return len(self.members)

    def __contains__(self, v):
        return v in self.members


def _coords(host: FlagMap):
    """Lattice coordinates ``(i, j)`` of every vertex of an E1 patch or quotient."""
    meta = host.meta or {}
    if meta.get("tiling") != "E1":
        raise WrongHost("the code lives on patches and quotients of the E1 tiling")
    if "lattice" in meta:
        L = meta["lattice"]
        # residue labels (r, 0); the residue's cell is its representative
        return [tuple(int(x) for x in L.cell(r)) for r, _ in host.labels], L
    return [(i, j) for i, j, _ in host.labels], None


def _marked(host, rule) -> MarkedSubset:
    coords, L = _coords(host)
    return MarkedSubset(host, frozenset(v for v, (i, j) in enumerate(coords) if rule(i, j)))


def _check_well_defined(host, L, shifts):
    # on a quotient the residue rule must not depend on the representative
    if L is None:
        return
    for a, b in ((L.a, 0), (L.b, L.d)):
        for s in shifts:
            if not s(a, b):
                raise WrongHost(f"lattice {L} is not contained in the code's period lattice")


def u0_members(host: FlagMap) -> MarkedSubset:
    """``U0`` on an E1 patch, or on ``E1 / L`` for ``L`` inside ``Lambda7``."""
    coords, L = _coords(host)
    _check_well_defined(host, L, [lambda a, b: (a - 4 * b) % 7 == 0])
    return _marked(host, lambda i, j: (i - 4 * j) % 7 == 0)


def fourteen_sets(host: FlagMap) -> list[MarkedSubset]:
    """The translates ``U_c`` of ``U0`` and their images under ``u(i,j) -> u(i+j,-j)``.

    ``U_c = {i = 4j + c}`` and its image is ``{i = 2j + c}`` (mod 7), c = 0..6.
    """
    coords, L = _coords(host)
    _check_well_defined(host, L, [lambda a, b: (a - 4 * b) % 7 == 0,
                                   lambda a, b: (a - 2 * b) % 7 == 0])
    out = []
    for mult in (4, 2):
        for c in range(7):
            out.append(_marked(host, lambda i, j, mult=mult, c=c: (i - mult * j - c) % 7 == 0))
    return out


def unique_neighbor_property(s: MarkedSubset) -> bool:
    """No two members adjacent, and every other vertex sees exactly one member.

    On a bordered host only interior vertices are checked, since their whole
    neighbourhood is present.
    """
    m = s.host
    nbrs = m.adjacency()
    for v in m.interior_vertices if not m.is_closed else range(m.n_vertices):
        hits = sum(1 for u in nbrs[v] if u in s.members)
        if v in s.members:
            if hits:
                return False
        elif hits != 1:
            return False
    for v in s.members:
        if any(u in s.members for u in nbrs[v]):
            return False
    return True


def delete_centers(m: FlagMap, s: MarkedSubset) -> FlagMap:
    """Remove the members of ``s``; each member's star becomes one hexagon.

    The result is always a [3^4,6] map on the same surface.  It need not be
    polyhedral when the host's lattice has short vectors (two hexagons, or a
    hexagon and a triangle, can then meet in two separate vertices).
    """
    if s.host is not m:
        raise PropertyFails("the marked subset belongs to a different map")
    if not m.is_closed:
        raise PropertyFails("delete_centers needs a closed host")
    if semi_equivelar_type(m, check=False) != T3_6:
        raise PropertyFails("host is not a [3^6] map")
    if not unique_neighbor_property(s):
        raise PropertyFails("subset does not have the unique neighbour property")
    cycles = m.face_cycles()
    faces = [list(c) for c in cycles if not any(v in s.members for v in c)]
    for u in sorted(s.members):
        fan = m._fan(u)
        # link of u in rotation order: the far end of each spoke
        link = [int(m.vert[m.s0[x]]) for x in fan]
        # keep the orientation of the triangles being merged: (u, a, b) means a then b
        tri = list(cycles[int(m.face_of[fan[0]])])
        i = tri.index(u)
        a, b = tri[(i + 1) % 3], tri[(i + 2) % 3]
        if link[(link.index(a) + 1) % len(link)] != b:
            link.reverse()
        faces.append(link)
    return build_from_faces(faces)


def insert_centers(m: FlagMap) -> FlagMap:
    """Cone every hexagon of a [3^4,6] map from a new central vertex."""
    if semi_equivelar_type(m, check=False) != parse("3^4.6"):
        raise PropertyFails("insert_centers needs a [3^4,6] map")
    faces = []
    nxt = m.n_vertices
    for cyc in m.face_cycles():
        if len(cyc) == 3:
            faces.append(list(cyc))
            continue
        c = nxt
        nxt += 1
        for i in range(len(cyc)):
            faces.append([c, cyc[i], cyc[(i + 1) % len(cyc)]])
    return build_from_faces(faces)
