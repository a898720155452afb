"""Census of torus quotients and the search for sharp orbit witnesses."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

from .mapcore import is_polyhedral
from .quotients import CSV_HEADER, QuotientRecord, SublatticeBasis, enumerate_sublattices, torus_quotient
from .symbols import parse, semi_equivelar_type
from .symmetry import vertex_orbits
from .tilings import NAMES, template

# largest Aut-orbit count allowed for each type
ORBIT_BOUNDS = {parse(s): b for s, b in (
    ("3^6", 1), ("4^4", 1), ("6^3", 1), ("3^3.4^2", 1),
    ("3^2.4.3.4", 2), ("4.8^2", 2),
    ("3.6.3.6", 3), ("3^4.6", 3), ("3.4.6.4", 3), ("3.12^2", 3),
    ("4.6.12", 6),
)}


def default_budget(tiling: str) -> int:
    k = template(tiling).n_classes
    if k <= 4:
        return 16
    if k <= 6:
        return 12
    return 8


def quotient_record(tiling: str, L: SublatticeBasis) -> QuotientRecord:
    t = template(tiling)
    m = torus_quotient(t, L)
    if not is_polyhedral(m):
        return QuotientRecord(tiling, L, m.n_vertices, False)
    orbits = vertex_orbits(m)
    return QuotientRecord(tiling, L, m.n_vertices, True, semi_equivelar_type(m, check=False),
                          orbits.count, orbits.count == 1)


def _row(args):
    return quotient_record(*args)


def census(tiling: str, max_index: int | None = None, workers: int = 1) -> list[QuotientRecord]:
    """One record per sublattice of index ``<= max_index``, in enumeration order."""
    if tiling not in NAMES:
        template(tiling)  # raises UnknownTiling
    if max_index is None:
        max_index = default_budget(tiling)
    jobs = [(tiling, L) for L in enumerate_sublattices(max_index)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_row, jobs, chunksize=4))
    return [_row(j) for j in jobs]


def census_csv(records: Iterable[QuotientRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


def find_sharp_witness(tiling: str, target_orbits: int, max_index: int | None = None,
                       certified: bool = False) -> QuotientRecord | None:
    """First census record with exactly ``target_orbits`` vertex orbits.

    With ``certified=True`` the record must also have its orbit count reached
    by the auxiliary-graph lower bound, so that the count is witnessed from
    both sides independently.
    """
    if max_index is None:
        max_index = default_budget(tiling)
    for L in enumerate_sublattices(max_index):
        rec = quotient_record(tiling, L)
        if rec.orbit_count != target_orbits:
            continue
        if certified:
            from .auxgraphs import orbit_separator

            m = torus_quotient(template(tiling), L)
            if orbit_separator(m).lower_bound != target_orbits:
                continue
        return rec
    return None
