"""Torus quotients of the Archimedean tilings by translation sublattices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import SearchBudgetExceeded
from .mapcore import FlagMap, is_polyhedral
from .symbols import VertexSymbol
from .tilings import TilingTemplate


def _egcd(x, y):
    if y == 0:
        return (abs(x), 1 if x >= 0 else -1, 0)
    g, s, t = _egcd(y, x % y)
    return g, t, s - (x // y) * t


@dataclass(frozen=True, order=True)
class SublatticeBasis:
    """Hermite normal form ``[[a, b], [0, d]]``; the columns ``(a, 0)`` and ``(b, d)`` span the lattice."""

    a: int
    b: int
    d: int

    def __post_init__(self):
        if self.a < 1 or self.d < 1 or not 0 <= self.b < self.a:
            raise ValueError(f"[[{self.a},{self.b}],[0,{self.d}]] is not in Hermite normal form")

    @property
    def index(self) -> int:
        return self.a * self.d

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (0, self.d))

    @classmethod
    def from_columns(cls, u: Sequence[int], v: Sequence[int]) -> "SublatticeBasis":
        """HNF of the lattice spanned by integer vectors ``u`` and ``v``."""
        (u0, u1), (v0, v1) = u, v
        det = u0 * v1 - u1 * v0
        if det == 0:
            raise ValueError("basis vectors are linearly dependent")
        # column operations: clear the second coordinate of one column
        d, s, t = _egcd(u1, v1)
        if d == 0:
            col2 = (u0, u1) if u0 != 0 else (v0, v1)
            raise ValueError(f"degenerate basis {col2}")
        w = (s * u0 + t * v0, d)
        a = abs(det) // d
        b = w[0] % a
        return cls(a, b, d)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> "SublatticeBasis":
        """Any row-major 2x2 integer matrix whose columns span the lattice."""
        (p, q), (r, s) = rows
        return cls.from_columns((p, r), (q, s))

    def contains(self, x: int, y: int) -> bool:
        if y % self.d:
            return False
        return (x - (y // self.d) * self.b) % self.a == 0

    def is_sublattice_of(self, other: "SublatticeBasis") -> bool:
        return other.contains(self.a, 0) and other.contains(self.b, self.d)

    def reduce(self, i, j):
        """Residue index in ``0 .. index-1`` of cell ``(i, j)`` (vectorized)."""
        q = np.floor_divide(j, self.d)
        jr = j - q * self.d
        ir = np.mod(i - q * self.b, self.a)
        return jr * self.a + ir

    def cell(self, r):
        """Representative cell of residue ``r``."""
        return (r % self.a, r // self.a)

    def __str__(self):
        return f"[[{self.a},{self.b}],[0,{self.d}]]"


def enumerate_sublattices(max_index: int) -> list[SublatticeBasis]:
    """Every HNF of index at most ``max_index``, sorted by ``(index, a, b)``."""
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    out = []
    for n in range(1, max_index + 1):
        for a in range(1, n + 1):
            if n % a:
                continue
            for b in range(a):
                out.append(SublatticeBasis(a, b, n // a))
    return out


def torus_quotient(t: TilingTemplate, L: SublatticeBasis) -> FlagMap:
    """The closed map ``t / L``.

    Vertex ``r * k_count + k`` is class ``k`` in residue cell ``r``.  Flags
    are laid out per residue, per face template, per corner, per side.
    """
    nk = t.n_classes
    n_res = L.index
    sizes = [len(f) for f in t.cell_faces]
    f_off = np.concatenate([[0], np.cumsum([2 * s for s in sizes])])
    per_res = int(f_off[-1])
    n = per_res * n_res

    # directed edge (k1, k2, offset of k2 relative to k1) -> (face, corner)
    directed = {}
    for g, face in enumerate(t.cell_faces):
        m = len(face)
        for i in range(m):
            (k1, o1), (k2, o2) = face[i], face[(i + 1) % m]
            directed[(k1, k2, (o2[0] - o1[0], o2[1] - o1[1]))] = (g, i, o1)

    res = np.arange(n_res)
    ci, cj = L.cell(res)
    s0 = np.empty(n, dtype=np.int64)
    s1 = np.empty(n, dtype=np.int64)
    s2 = np.empty(n, dtype=np.int64)
    vert = np.empty(n, dtype=np.int64)
    parity = np.empty(n, dtype=np.int8)
    base = res * per_res
    for f, face in enumerate(t.cell_faces):
        m = len(face)
        for i in range(m):
            (k1, o1), (k2, o2) = face[i], face[(i + 1) % m]
            x0 = base + f_off[f] + 2 * i
            x1 = x0 + 1
            s0[x0], s0[x1] = x1, x0
            prev = base + f_off[f] + 2 * ((i - 1) % m) + 1
            s1[x0] = prev
            s1[prev] = x0
            vert[x0] = L.reduce(ci + o1[0], cj + o1[1]) * nk + k1
            vert[x1] = L.reduce(ci + o2[0], cj + o2[1]) * nk + k2
            parity[x0], parity[x1] = 0, 1
            g, j, og = directed[(k2, k1, (o1[0] - o2[0], o1[1] - o2[1]))]
            # the twin corner starts at k2, which sits at offset o2 here and og there
            rr = L.reduce(ci + o2[0] - og[0], cj + o2[1] - og[1])
            y0 = rr * per_res + f_off[g] + 2 * j
            s2[x0] = y0 + 1
            s2[x1] = y0
    return FlagMap(s0, s1, s2, vert=vert, parity=parity,
                   labels=tuple((int(r), k) for r in range(n_res) for k in range(nk)),
                   meta={"tiling": t.name, "lattice": L})


@dataclass(frozen=True)
class QuotientRecord:
    tiling: str
    basis: SublatticeBasis
    vertices: int
    polyhedral: bool
    type: VertexSymbol | None = None
    orbit_count: int | None = None
    vertex_transitive: bool | None = None

    def csv_row(self) -> list[str]:
        b = self.basis
        return [self.tiling, str(b.a), str(b.b), str(b.d), str(b.index), str(self.vertices),
                str(int(self.polyhedral)), str(self.type) if self.type is not None else "",
                str(self.orbit_count) if self.orbit_count is not None else "",
                "" if self.vertex_transitive is None else str(int(self.vertex_transitive))]


CSV_HEADER = ("tiling", "a", "b", "d", "index", "vertices", "polyhedral", "type", "orbits", "vt")


def minimum_polyhedral_index(t: TilingTemplate, cap: int = 64) -> int:
    """Least index of a sublattice giving a polyhedral quotient of ``t``."""
    for L in enumerate_sublattices(cap):
        if is_polyhedral(torus_quotient(t, L)):
            return L.index
    raise SearchBudgetExceeded(f"no polyhedral quotient of {t.name} up to index {cap}")
