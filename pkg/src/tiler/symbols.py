"""Vertex symbols ``[p1^n1, ..., pk^nk]`` and their canonical form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotPolyhedral, TooShort


def _dihedral_min(seq):
    k = len(seq)
    best = None
    for s in (list(seq), list(reversed(seq))):
        for i in range(k):
            cand = s[i:] + s[:i]
            if best is None or cand < best:
                best = cand
    return tuple(best)


def _runs(seq):
    runs = []
    for p in seq:
        if runs and runs[-1][0] == p:
            runs[-1][1] += 1
        else:
            runs.append([p, 1])
    # the lexicographic minimum never splits a run across the wrap point,
    # except in the single-value case handled by the merge below
    if len(runs) > 1 and runs[0][0] == runs[-1][0]:
        runs[0][1] += runs.pop()[1]
    return tuple((p, n) for p, n in runs)


@dataclass(frozen=True, order=True)
class VertexSymbol:
    """Canonical cyclic run-length type of a face-cycle."""

    runs: tuple[tuple[int, int], ...]

    def expand(self) -> tuple[int, ...]:
        return tuple(p for p, n in self.runs for _ in range(n))

    @property
    def degree(self) -> int:
        return sum(n for _, n in self.runs)

    @property
    def face_sizes(self) -> frozenset:
        return frozenset(p for p, _ in self.runs)

    def __str__(self):
        return ".".join(f"{p}^{n}" if n > 1 else str(p) for p, n in self.runs)

    def bracket(self) -> str:
        """Notation with explicit exponents, e.g. ``[3^1, 12^2]``."""
        return "[" + ", ".join(f"{p}^{n}" for p, n in self.runs) + "]"


def canonicalize(seq: Sequence[int]) -> VertexSymbol:
    """Canonical symbol of a cyclic face-size sequence.

    Equal for every rotation and reversal of ``seq``.
    """
    seq = [int(p) for p in seq]
    if len(seq) < 3:
        raise TooShort(f"a face-cycle needs at least 3 faces, got {len(seq)}")
    if min(seq) < 3:
        raise ValueError("face sizes must be at least 3")
    return VertexSymbol(_runs(_dihedral_min(seq)))


def parse(text: str) -> VertexSymbol:
    """Parse ``3^2.4.3.4`` (or the bracketed ``[3^2,4^1,3^1,4^1]``)."""
    body = text.strip().strip("[]").replace(",", ".").replace(" ", "")
    seq: list[int] = []
    for part in body.split("."):
        if not part:
            continue
        if "^" in part:
            p, n = part.split("^")
            seq.extend([int(p)] * int(n))
        else:
            seq.append(int(part))
    return canonicalize(seq)


TORUS_TYPES: tuple[VertexSymbol, ...] = tuple(parse(s) for s in (
    "3^6", "6^3", "4^4", "3^4.6", "3^3.4^2", "3^2.4.3.4",
    "3.6.3.6", "3.4.6.4", "3.12^2", "4.8^2", "4.6.12",
))


def is_torus_type(s: VertexSymbol | str) -> bool:
    if isinstance(s, str):
        s = parse(s)
    return s in TORUS_TYPES


def vertex_symbol(m, v) -> VertexSymbol:
    from .mapcore import face_cycle

    return canonicalize(face_cycle(m, v))


def semi_equivelar_type(m, vertices: Iterable[int] | None = None, check: bool = True) -> VertexSymbol | None:
    """Common symbol of all vertices (or of ``vertices``), ``None`` if they differ.

    A boundary vertex has no complete face-cycle, so including one gives ``None``.
    """
    if check:
        from .mapcore import is_polyhedral

        report = is_polyhedral(m)
        if not report:
            raise NotPolyhedral(f"{report.code}: {report.detail}")
    if vertices is None:
        vertices = range(m.n_vertices)
    common = None
    border = m.boundary_vertices
    for v in vertices:
        if v in border:
            return None
        s = vertex_symbol(m, v)
        if common is None:
            common = s
        elif s != common:
            return None
    return common
