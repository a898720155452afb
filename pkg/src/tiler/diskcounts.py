"""Face and edge counts of hypothetical disks with prescribed vertex incidences.

Each lemma fixes the incidence pattern of interior vertices and of two kinds
of boundary vertices (``2k`` or ``k`` of one kind, ``l`` or ``2l`` of the
other).  Every count is then a linear form in ``(n, k, l)`` divided by a
constant, where ``n`` is the number of interior vertices.  A disk needs all
counts to be non-negative integers and Euler characteristic 1; the check
below confirms that whenever the counts are integral the characteristic is 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import RangeViolation

# a count is (cn, ck, cl, den): (cn*n + ck*k + cl*l) / den


@dataclass(frozen=True)
class DiskLemma:
    id: str
    f0: tuple
    f1: tuple
    faces: dict
    window: tuple  # (lo_k, lo_c, hi_k, hi_c): lo_k*k + lo_c <= l <= hi_k*k + hi_c
    forced: int  # the deduced l is forced * k
    interior_divisor: int  # precondition on n for forced_boundary
    predicates: dict  # name -> f(n, k, l) used in the deduction

    def bounds(self, k):
        lo_k, lo_c, hi_k, hi_c = self.window
        return lo_k * k + lo_c, hi_k * k + hi_c


def _even(x):
    return x % 2 == 0


LEMMAS: dict[str, DiskLemma] = {
    "L3464A": DiskLemma(
        "L3464A", (1, 2, 1, 1), (4, 6, 2, 2),
        {3: (1, 0, 0, 3), 4: (2, 2, 0, 4), 6: (1, 2, 1, 6)},
        (1, -1, 1, 2), 1, 3,
        {"n_plus_k_even": lambda n, k, l: _even(n + k),
         "n6_integral": lambda n, k, l: (n + 2 * k + l) % 6 == 0}),
    "L3464B": DiskLemma(
        "L3464B", (1, 2, 1, 1), (4, 6, 4, 2),
        {3: (1, 2, 1, 3), 4: (2, 2, 2, 4), 6: (1, 0, 0, 6)},
        (1, -1, 1, 1), 1, 6,
        {"k_plus_l_even": lambda n, k, l: _even(k + l)}),
    "L3122": DiskLemma(
        "L3122", (1, 2, 2, 1), (3, 6, 4, 2),
        {3: (1, 2, 0, 3), 12: (2, 2, 2, 12)},
        (1, -1, 1, 3), 1, 2,
        {"n_even": lambda n, k, l: _even(n),
         "f2_integral": lambda n, k, l: (6 * n + 10 * k + 2 * l) % 12 == 0}),
    "L4612A": DiskLemma(
        "L4612A", (1, 2, 2, 1), (3, 6, 4, 2),
        {4: (1, 2, 0, 4), 6: (1, 0, 0, 6), 12: (1, 2, 2, 12)},
        (2, -2, 2, 2), 2, 6,
        {"l_even": lambda n, k, l: _even(l),
         "f2_integral": lambda n, k, l: (4 * k + l) % 6 == 0}),
    "L4612B": DiskLemma(
        "L4612B", (1, 4, 2, 1), (3, 12, 4, 2),
        {4: (1, 4, 0, 4), 6: (1, 4, 2, 6), 12: (1, 0, 0, 12)},
        (1, -1, 1, 0), 1, 12,
        {"n6_integral": lambda n, k, l: (2 * k + l) % 3 == 0}),
    "L482A": DiskLemma(
        "L482A", (1, 1, 2, 1), (3, 3, 4, 2),
        {4: (1, 0, 0, 4), 8: (2, 2, 2, 8)},
        (1, 0, 1, 3), 1, 4,
        {"n_plus_k_even": lambda n, k, l: _even(n + k),
         "l_even": lambda n, k, l: _even(l),
         "n8_integral": lambda n, k, l: (n + k + l) % 4 == 0}),
    "L482B": DiskLemma(
        "L482B", (1, 1, 2, 1), (3, 2, 6, 2),
        {4: (1, 1, 2, 4), 8: (2, 0, 2, 8)},
        (1, 0, 1, 2), 1, 2,
        {"k_even": lambda n, k, l: _even(k),
         "l_even": lambda n, k, l: _even(l),
         "n4_integral": lambda n, k, l: (n + k + 2 * l) % 4 == 0,
         "n8_integral": lambda n, k, l: (n + l) % 4 == 0}),
}

LEMMA_IDS = tuple(LEMMAS)


def _lemma(lemma) -> DiskLemma:
    if isinstance(lemma, DiskLemma):
        return lemma
    try:
        return LEMMAS[lemma]
    except KeyError:
        raise KeyError(f"unknown disk lemma {lemma!r}; expected one of {', '.join(LEMMAS)}") from None


def _value(form, n, k, l):
    cn, ck, cl, den = form
    return Fraction(cn * n + ck * k + cl * l, den)


@dataclass(frozen=True)
class DiskCounts:
    feasible: bool
    f0: Fraction
    f1: Fraction
    f2: Fraction
    chi: Fraction
    faces: dict


def disk_counts(lemma, n: int, k: int, l: int) -> DiskCounts:
    """Counts forced by the lemma's incidence pattern at ``(n, k, l)``.

    ``feasible`` means every count is a non-negative integer.
    """
    L = _lemma(lemma)
    if n < 0 or k < 1:
        raise RangeViolation(f"need n >= 0 and k >= 1, got n={n}, k={k}")
    lo, hi = L.bounds(k)
    if not lo <= l <= hi:
        raise RangeViolation(f"{L.id}: l={l} outside {lo}..{hi} for k={k}")
    faces = {p: _value(form, n, k, l) for p, form in L.faces.items()}
    f0 = _value(L.f0, n, k, l)
    f1 = _value(L.f1, n, k, l)
    f2 = sum(faces.values(), Fraction(0))
    values = [f0, f1, *faces.values()]
    feasible = all(v.denominator == 1 and v >= 0 for v in values)
    return DiskCounts(feasible, f0, f1, f2, f0 - f1 + f2, faces)


def predicates(lemma, n: int, k: int, l: int) -> dict[str, bool]:
    """The named divisibility steps of the lemma's deduction, evaluated."""
    L = _lemma(lemma)
    return {name: bool(p(n, k, l)) for name, p in L.predicates.items()}


def forced_boundary(lemma, n: int, k: int) -> int | None:
    """The unique ``l`` in the window passing the deduction's predicates.

    ``None`` when ``n`` fails the interior divisibility precondition or when
    zero or several values of ``l`` pass.
    """
    L = _lemma(lemma)
    if n < 0 or k < 1 or n % L.interior_divisor:
        return None
    lo, hi = L.bounds(k)
    hits = [l for l in range(lo, hi + 1) if all(p(n, k, l) for p in L.predicates.values())]
    return hits[0] if len(hits) == 1 else None


@dataclass
class LemmaReport:
    lemma: str
    cases: int = 0
    feasible: int = 0
    chi_failures: int = 0
    forced_failures: int = 0
    forced_checked: int = 0
    examples: list = None

    @property
    def ok(self) -> bool:
        return self.chi_failures == 0 and self.forced_failures == 0


def _grid_form(form, n, k, l):
    cn, ck, cl, den = form
    num = cn * n + ck * k + cl * l
    return num, den


def verify_lemma(lemma, max_n: int = 600, max_k: int = 60) -> LemmaReport:
    """Sweep ``0 <= n <= max_n``, ``1 <= k <= max_k`` and the whole window."""
    L = _lemma(lemma)
    rep = LemmaReport(L.id, examples=[])
    n = np.arange(max_n + 1)[:, None]
    for k in range(1, max_k + 1):
        lo, hi = L.bounds(k)
        for l in range(lo, hi + 1):
            # integer arithmetic on the whole n column; chi * lcm stays exact
            forms = [L.f0, L.f1, *L.faces.values()]
            ok = np.ones(n.shape, dtype=bool)
            for form in forms:
                num, den = _grid_form(form, n, k, l)
                ok &= (num % den == 0) & (num >= 0)
            lcm = int(np.lcm.reduce([f[3] for f in forms]))
            chi = _grid_form(L.f0, n, k, l)[0] * (lcm // L.f0[3]) - _grid_form(L.f1, n, k, l)[0] * (lcm // L.f1[3])
            for form in L.faces.values():
                chi = chi + _grid_form(form, n, k, l)[0] * (lcm // form[3])
            rep.cases += n.size
            rep.feasible += int(ok.sum())
            bad = ok & (chi != 0)
            if bad.any():
                rep.chi_failures += int(bad.sum())
                rep.examples.append(("chi", int(n[bad][0]), k, l))
            if l != L.forced * k:
                # a feasible l other than the deduced one breaks the deduction
                if ok.any():
                    rep.forced_failures += int(ok.sum())
                    rep.examples.append(("feasible_off_forced", int(n[ok][0]), k, l))
        for nn in range(max_n + 1):
            fb = forced_boundary(L, nn, k)
            if fb is None:
                continue
            rep.forced_checked += 1
            if fb != L.forced * k:
                rep.forced_failures += 1
                rep.examples.append(("forced", nn, k, fb))
        # whenever the deduced l is fully feasible the predicates must find it
        lf = L.forced * k
        for nn in range(0, max_n + 1, L.interior_divisor):
            if disk_counts(L, nn, k, lf).feasible and forced_boundary(L, nn, k) != lf:
                rep.forced_failures += 1
                rep.examples.append(("missed", nn, k, lf))
    return rep


def verify_lemmas(max_n: int = 600, max_k: int = 60,
                  progress: Callable[[LemmaReport], None] | None = None) -> list[LemmaReport]:
    out = []
    for lid in LEMMA_IDS:
        rep = verify_lemma(lid, max_n, max_k)
        if progress:
            progress(rep)
        out.append(rep)
    return out
