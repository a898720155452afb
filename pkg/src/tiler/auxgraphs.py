"""Auxiliary 2-regular graphs that separate vertex orbits without a group search.

For the five types with more than one possible orbit the vertex set carries
a canonical 2-regular graph built from face diagonals (and, for the snub
hexagonal type, from nice edges).  Every automorphism of the map preserves
it, so vertices on cycles of different lengths lie in different orbits.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import NoSuchFaceSize, WrongType
from .mapcore import FlagMap, face_cycle
from .symbols import parse, semi_equivelar_type

T3636 = parse("3.6.3.6")
T3_46 = parse("3^4.6")
T3464 = parse("3.4.6.4")
T3_12 = parse("3.12^2")
T4612 = parse("4.6.12")

SEPARATED_TYPES = (T3636, T3_46, T3464, T3_12, T4612)


def _edge(u, v):
    return (u, v) if u < v else (v, u)


def long_diagonal_graph(m: FlagMap, face_size: int) -> set[tuple[int, int]]:
    """Chords joining opposite corners of every ``face_size``-gon.

    Squares contribute both of their diagonals.
    """
    if face_size % 2 or face_size not in set(int(s) for s in m.face_sizes):
        raise NoSuchFaceSize(f"the map has no {face_size}-gons with opposite corners")
    half = face_size // 2
    edges = set()
    for cyc in m.face_cycles():
        if len(cyc) != face_size:
            continue
        for i in range(half):
            edges.add(_edge(cyc[i], cyc[i + half]))
    return edges


def nice_edges(m: FlagMap) -> set[tuple[int, int]]:
    """Edges splitting the four triangles 3 to 1 at both of their ends ([3^4,6] only).

    On a bordered map only interior vertices are examined, so an edge counts
    when both ends are interior.
    """
    verts = sorted(m.interior_vertices)
    if not verts or semi_equivelar_type(m, verts, check=False) != T3_46:
        raise WrongType("nice edges are defined for maps of type [3^4,6]")
    locally = Counter()
    for v in verts:
        fan = m._fan(v)
        k = len(fan)
        sizes = [int(m.face_sizes[m.face_of[x]]) for x in fan]
        h = sizes.index(6)
        # the edge of fan[t] separates faces t-1 and t; from the hexagon the
        # triangles are T1..T4 and the locally nice edges are T1|T2 and T3|T4
        for t in (2, 4):
            x = fan[(h + t) % k]
            locally[_edge(v, int(m.vert[m.s0[x]]))] += 1
    return {e for e, c in locally.items() if c == 2}


def auxiliary_graph(m: FlagMap) -> set[tuple[int, int]]:
    """The type's auxiliary graph: G1 .. G5 for the five separated types."""
    t = semi_equivelar_type(m, check=False)
    if t == T3636:
        return long_diagonal_graph(m, 6)
    if t == T3_46:
        return nice_edges(m) | long_diagonal_graph(m, 6)
    if t == T3464:
        return long_diagonal_graph(m, 4)
    if t == T3_12:
        return long_diagonal_graph(m, 12)
    if t == T4612:
        return long_diagonal_graph(m, 4) | long_diagonal_graph(m, 12)
    raise WrongType(f"no auxiliary graph for type {t}")


def cycle_decomposition(n: int, edges) -> list[list[int]]:
    """Components of a 2-regular graph on ``0..n-1``, each listed in cycle order."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    bad = [v for v in range(n) if len(adj[v]) != 2]
    if bad:
        raise ValueError(f"auxiliary graph is not 2-regular at vertex {bad[0]}")
    seen = [False] * n
    cycles = []
    for s in range(n):
        if seen[s]:
            continue
        cyc = [s]
        seen[s] = True
        prev, cur = s, adj[s][0]
        while cur != s:
            cyc.append(cur)
            seen[cur] = True
            prev, cur = cur, adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        cycles.append(cyc)
    return cycles


@dataclass(frozen=True)
class SeparatorCertificate:
    lower_bound: int
    cycles: tuple[tuple[int, ...], ...]
    colours: tuple[int, ...]
    rounds: int

    @property
    def cycle_lengths(self) -> list[int]:
        return sorted((len(c) for c in self.cycles), reverse=True)


def _refine(m, aux, colours):
    # everything used here is preserved by automorphisms, so vertices with
    # different signatures cannot share an orbit
    nbrs = m.adjacency()
    aux_adj = [set() for _ in range(m.n_vertices)]
    for u, v in aux:
        aux_adj[u].add(v)
        aux_adj[v].add(u)
    sigs = []
    for v in range(m.n_vertices):
        ns = sorted(nbrs[v])
        pairs = []
        for i, a in enumerate(ns):
            for b in ns[i + 1:]:
                pairs.append((tuple(sorted((colours[a], colours[b]))), b in aux_adj[a], b in nbrs[a]))
        sigs.append((colours[v], tuple(sorted(colours[a] for a in ns)), tuple(sorted(pairs))))
    palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [palette[s] for s in sigs]


DEFAULT_ROUNDS = {T3636: 0, T3_46: 1, T3464: 0, T3_12: 0, T4612: 1}


def orbit_separator(m: FlagMap, rounds: int | None = None) -> SeparatorCertificate:
    """Lower bound on the number of vertex orbits of ``Aut(m)``.

    Vertices are first coloured by the length of their auxiliary cycle.  For
    [3^4,6] and [4,6,12] (or whenever ``rounds`` asks for it) the colouring
    is then refined by the colours of map neighbours and of the pairs they
    form, which is how equal-length cycles get told apart.
    """
    t = semi_equivelar_type(m, check=False)
    if t not in SEPARATED_TYPES:
        raise WrongType(f"orbit separation is not available for type {t}")
    aux = auxiliary_graph(m)
    cycles = cycle_decomposition(m.n_vertices, aux)
    colours = [0] * m.n_vertices
    for c in cycles:
        for v in c:
            colours[v] = len(c)
    if rounds is None:
        rounds = DEFAULT_ROUNDS[t]
    for _ in range(rounds):
        colours = _refine(m, aux, colours)
    return SeparatorCertificate(len(set(colours)), tuple(tuple(c) for c in cycles),
                                tuple(colours), rounds)


def to_dot(n: int, edges, name: str = "aux") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(n)]
    lines += [f"  {u} -- {v};" for u, v in sorted(edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"
