"""The eleven Archimedean tilings as periodic templates, and finite patches.

Each template is derived once, at import time, from a unit-edge planar
realization: a lattice basis plus the positions of the vertex classes inside
one cell.  Edges are the pairs of points at distance one and faces are traced
from the rotation system, so the combinatorial data never has to be typed in
by hand.  Face templates are stored as cycles of ``(class, (di, dj))`` pairs,
translated so that the least ``(di, dj, class)`` corner sits at offset
``(0, 0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .errors import UnknownTiling
from .mapcore import FlagMap, build_from_faces, is_polyhedral
from .symbols import VertexSymbol, canonicalize, parse

NAMES = tuple(f"E{i}" for i in range(1, 12))

_TOL = 1e-7
_SEARCH = 3  # cell offsets scanned for unit-distance neighbours


@dataclass(frozen=True)
class TilingTemplate:
    name: str
    type: VertexSymbol
    cell_vertices: tuple[str, ...]
    cell_faces: tuple[tuple[tuple[int, tuple[int, int]], ...], ...]
    basis: tuple[tuple[float, float], tuple[float, float]] = field(repr=False)
    positions: tuple[tuple[float, float], ...] = field(repr=False)

    @property
    def n_classes(self) -> int:
        return len(self.cell_vertices)

    def point(self, i, j, k):
        """Planar position of vertex class ``k`` in cell ``(i, j)``."""
        (ax, ay), (bx, by) = self.basis
        x, y = self.positions[k]
        return (x + i * ax + j * bx, y + i * ay + j * by)


# -- geometric realizations ------------------------------------------------

_S3 = math.sqrt(3.0)
_S2 = math.sqrt(2.0)


def _polygon(center, radius, start_deg, count):
    cx, cy = center
    return [(cx + radius * math.cos(math.radians(start_deg + 360.0 * t / count)),
             cy + radius * math.sin(math.radians(start_deg + 360.0 * t / count))) for t in range(count)]


def _dedupe_mod_lattice(points, basis):
    a, b = np.array(basis[0]), np.array(basis[1])
    inv = np.linalg.inv(np.stack([a, b], axis=1))
    out = []
    for p in points:
        c = inv @ np.array(p)
        c -= np.floor(c + 1e-9)
        q = c[0] * a + c[1] * b
        if not any(np.hypot(*(q - r)) < 1e-6 for r in out):
            out.append(q)
    return [tuple(float(t) for t in q) for q in out]


def _geometry(name):
    if name == "E1":
        return ((1.0, 0.0), (0.5, _S3 / 2)), [(0.0, 0.0)]
    if name == "E2":
        return ((1.0, 0.0), (0.0, 1.0)), [(0.0, 0.0)]
    if name == "E3":
        return ((_S3, 0.0), (_S3 / 2, 1.5)), [(0.0, 0.0), (_S3 / 2, 0.5)]
    if name == "E4":
        return ((1.0, 0.0), (0.5, 1 + _S3 / 2)), [(0.0, 0.0), (0.0, 1.0)]
    if name == "E5":
        period = math.sqrt(2 + _S3)
        basis = ((period, 0.0), (0.0, period))
        pts = _polygon((0.0, 0.0), 1 / _S2, 60.0, 4) + _polygon((period / 2, period / 2), 1 / _S2, 30.0, 4)
        return basis, _dedupe_mod_lattice(pts, basis)
    if name == "E6":
        return ((2.0, 0.0), (1.0, _S3)), [(0.0, 0.0), (1.0, 0.0), (0.5, _S3 / 2)]
    if name == "E7":
        # triangular lattice minus the index-7 class {u_{i,j} : i = 4j mod 7}
        return ((7.0, 0.0), (4.5, _S3 / 2)), [(float(i), 0.0) for i in range(1, 7)]
    if name == "E8":
        s = 1 + _S3
        return ((s, 0.0), (s / 2, s * _S3 / 2)), _polygon((0.0, 0.0), 1.0, 30.0, 6)
    if name == "E9":
        s = 2 + _S3
        basis = ((s, 0.0), (s / 2, s * _S3 / 2))
        r = 1 / (2 * math.sin(math.radians(15)))
        return basis, _dedupe_mod_lattice(_polygon((0.0, 0.0), r, 15.0, 12), basis)
    if name == "E10":
        s = 3 + _S3
        r = 1 / (2 * math.sin(math.radians(15)))
        return ((s, 0.0), (s / 2, s * _S3 / 2)), _polygon((0.0, 0.0), r, 15.0, 12)
    if name == "E11":
        s = 1 + _S2
        basis = ((s, 0.0), (0.0, s))
        r = 1 / (2 * math.sin(math.radians(22.5)))
        return basis, _dedupe_mod_lattice(_polygon((0.0, 0.0), r, 22.5, 8), basis)
    raise UnknownTiling(name)


_TYPES = {
    "E1": "3^6", "E2": "4^4", "E3": "6^3", "E4": "3^3.4^2", "E5": "3^2.4.3.4",
    "E6": "3.6.3.6", "E7": "3^4.6", "E8": "3.4.6.4", "E9": "3.12^2",
    "E10": "4.6.12", "E11": "4.8^2",
}

_LABELS = "uvwxyzabcdefgh"


def _derive_faces(basis, positions):
    """Trace the faces of the periodic plane graph given by unit edges."""
    a = np.array(basis[0])
    b = np.array(basis[1])
    pos = [np.array(p) for p in positions]
    nk = len(pos)
    # neighbours of class k as (class, offset), sorted counter-clockwise
    nbrs = []
    for k in range(nk):
        found = []
        for di in range(-_SEARCH, _SEARCH + 1):
            for dj in range(-_SEARCH, _SEARCH + 1):
                for k2 in range(nk):
                    d = pos[k2] + di * a + dj * b - pos[k]
                    if abs(np.hypot(*d) - 1.0) < _TOL:
                        found.append((math.atan2(d[1], d[0]), k2, (di, dj)))
        found.sort()
        nbrs.append([(k2, off) for _, k2, off in found])

    def nxt(k1, o1, k2, o2):
        # arriving at (k2, o2) from (k1, o1): turn to the neighbour just
        # clockwise of the way back, which keeps the face on the left
        back = (k1, (o1[0] - o2[0], o1[1] - o2[1]))
        ring = nbrs[k2]
        t = ring.index(back)
        k3, d = ring[(t - 1) % len(ring)]
        return k3, (o2[0] + d[0], o2[1] + d[1])

    faces = set()
    for k in range(nk):
        for k2, off in nbrs[k]:
            cyc = [(k, (0, 0)), (k2, off)]
            while True:
                (k1, o1), (kk, o2) = cyc[-2], cyc[-1]
                k3, o3 = nxt(k1, o1, kk, o2)
                if (k3, o3) == cyc[0]:
                    break
                cyc.append((k3, o3))
                if len(cyc) > 24:
                    raise RuntimeError("face tracing did not close")
            faces.add(_normalize_face(cyc))
    return sorted(faces), nbrs


def _normalize_face(cyc):
    lo = min(cyc, key=lambda c: (c[1][0], c[1][1], c[0]))
    si, sj = lo[1]
    shifted = [(k, (o[0] - si, o[1] - sj)) for k, o in cyc]
    start = shifted.index((lo[0], (0, 0)))
    return tuple(shifted[start:] + shifted[:start])


@lru_cache(maxsize=None)
def template(name: str) -> TilingTemplate:
    """The template for tiling ``E1`` .. ``E11``."""
    if name not in NAMES:
        raise UnknownTiling(f"unknown tiling {name!r}; expected one of E1..E11")
    basis, positions = _geometry(name)
    faces, _ = _derive_faces(basis, positions)
    labels = tuple(_LABELS[k] for k in range(len(positions)))
    return TilingTemplate(name, parse(_TYPES[name]), labels, tuple(faces),
                          basis, tuple(tuple(p) for p in positions))


def template_for_type(s: VertexSymbol | str) -> TilingTemplate:
    if isinstance(s, str):
        s = parse(s)
    for name in NAMES:
        if _TYPES[name] and parse(_TYPES[name]) == s:
            return template(name)
    raise UnknownTiling(f"no Archimedean tiling has type {s}")


def patch(t: TilingTemplate, radius: int) -> FlagMap:
    """Bordered map of every face anchored in a cell ``(i, j)`` with ``|i|, |j| <= radius``.

    Vertex labels are ``(i, j, class)`` triples.  Interior vertices are the
    ones off the boundary (``FlagMap.interior_vertices``).
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    faces = []
    for i in range(-radius, radius + 1):
        for j in range(-radius, radius + 1):
            for face in t.cell_faces:
                faces.append([(i + o[0], j + o[1], k) for k, o in face])
    return replace(build_from_faces(faces), meta={"tiling": t.name, "radius": radius})


@dataclass
class TemplateReport:
    name: str
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def validate_template(t: TilingTemplate, radius: int = 3) -> TemplateReport:
    """Polyhedrality, interior symbols, orientation and translation invariance of ``patch(t, radius)``."""
    report = TemplateReport(t.name)
    # the face data is meant to be counter-clockwise throughout, so each
    # directed edge may be used by at most one face
    directed = {}
    for g, face in enumerate(t.cell_faces):
        for i in range(len(face)):
            (k1, o1), (k2, o2) = face[i], face[(i + 1) % len(face)]
            key = (k1, k2, (o2[0] - o1[0], o2[1] - o1[1]))
            if key in directed:
                report.failures.append(f"faces {directed[key]} and {g} run the same way along an edge")
            directed[key] = g
    try:
        m = patch(t, radius)
    except Exception as exc:  # a broken template may not even build
        report.failures.append(f"patch does not build: {exc}")
        return report
    poly = is_polyhedral(m)
    if not poly:
        report.failures.append(f"not polyhedral: {poly.code} ({poly.detail})")
    from .mapcore import face_cycle

    interior = sorted(m.interior_vertices)
    if not interior:
        report.failures.append("no interior vertices")
    for v in interior:
        got = canonicalize(face_cycle(m, v))
        if got != t.type:
            report.failures.append(f"vertex {m.labels[v]} has symbol {got}, expected {t.type}")
            break
    # every class must be interior somewhere and the face set must be
    # closed under the unit shifts inside the window
    classes = {m.labels[v][2] for v in interior}
    if classes != set(range(t.n_classes)):
        report.failures.append("some vertex class never occurs as an interior vertex")
    face_keys = {frozenset(m.labels[v] for v in cyc) for cyc in m.face_cycles()}
    for di, dj in ((1, 0), (0, 1)):
        for key in face_keys:
            moved = frozenset((i + di, j + dj, k) for i, j, k in key)
            if all(abs(i) <= radius - 1 and abs(j) <= radius - 1 for i, j, _ in key) and moved not in face_keys:
                report.failures.append(f"face {sorted(key)} not preserved by shift ({di}, {dj})")
                break
    return report
