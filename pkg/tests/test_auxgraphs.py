from collections import Counter

import numpy as np
import pytest

from tiler.auxgraphs import (SEPARATED_TYPES, T3_46, auxiliary_graph, cycle_decomposition,
                             long_diagonal_graph, nice_edges, orbit_separator, to_dot)
from tiler.errors import NoSuchFaceSize, WrongType
from tiler.quotients import SublatticeBasis, torus_quotient
from tiler.symmetry import automorphism_group, vertex_orbits
from tiler.tilings import patch, template


def q(name, a, b, d):
    return torus_quotient(template(name), SublatticeBasis(a, b, d))


def degrees(n, edges):
    c = Counter()
    for u, v in edges:
        c[u] += 1
        c[v] += 1
    return [c[v] for v in range(n)]


def test_diagonal_graphs_are_2_regular():
    m = q("E6", 3, 0, 3)
    assert set(degrees(m.n_vertices, long_diagonal_graph(m, 6))) == {2}
    m9 = q("E9", 3, 0, 3)
    assert set(degrees(m9.n_vertices, long_diagonal_graph(m9, 12))) == {2}
    m8 = q("E8", 2, 0, 3)
    assert set(degrees(m8.n_vertices, long_diagonal_graph(m8, 4))) == {2}


def test_no_such_face_size():
    m = q("E6", 3, 0, 3)
    with pytest.raises(NoSuchFaceSize):
        long_diagonal_graph(m, 4)
    with pytest.raises(NoSuchFaceSize):
        long_diagonal_graph(m, 3)


def test_wrong_types():
    with pytest.raises(WrongType):
        nice_edges(q("E1", 7, 4, 1))
    with pytest.raises(WrongType):
        orbit_separator(q("E2", 3, 0, 3))
    with pytest.raises(WrongType):
        auxiliary_graph(q("E11", 3, 0, 3))


def test_cycle_decomposition():
    assert sorted(map(len, cycle_decomposition(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)]))) == [3, 4]
    with pytest.raises(ValueError):
        cycle_decomposition(3, [(0, 1), (1, 2)])


def test_m1_signature():
    cert = orbit_separator(q("E6", 3, 0, 4))
    assert cert.lower_bound == 3
    assert {12, 4, 3} <= set(cert.cycle_lengths)
    assert sum(cert.cycle_lengths) == 36


def test_m2_signature_and_refinement():
    m = q("E7", 1, 0, 4)
    cert = orbit_separator(m)
    lengths = cert.cycle_lengths
    assert not Counter({4: 1, 8: 2}) - Counter(lengths)
    assert cert.lower_bound == 3 == vertex_orbits(m).count
    eights = [c for c in cert.cycles if len(c) == 8]
    colours = [{cert.colours[v] for v in c} for c in eights]
    assert colours[0].isdisjoint(colours[1])
    # with no refinement the two 8-cycles cannot be told apart
    assert orbit_separator(m, rounds=0).lower_bound == 2


def test_m5_signature():
    m = q("E10", 2, 0, 3)
    cert = orbit_separator(m)
    assert cert.cycle_lengths == [12, 12, 6, 6, 6, 6, 4, 4, 4, 4, 4, 4]
    assert cert.lower_bound == 6 == vertex_orbits(m).count


def test_transitive_trihexagonal():
    m = q("E6", 3, 0, 3)
    assert vertex_orbits(m).count == 1
    cert = orbit_separator(m)
    assert len(set(cert.cycle_lengths)) == 1 and cert.lower_bound == 1


def test_nice_edges_on_patch():
    p = patch(template("E7"), 3)
    ne = nice_edges(p)
    assert ne
    c = Counter(v for e in ne for v in e)
    assert all(c[v] <= 1 for v in p.interior_vertices)


def test_dot():
    text = to_dot(3, {(0, 1), (1, 2), (0, 2)}, name="g")
    assert text.startswith("graph g {") and "0 -- 1;" in text and text.endswith("}\n")


def test_nice_edges_form_perfect_matchings(census_maps):
    seen = 0
    for rec, m in census_maps:
        if rec.type != T3_46:
            continue
        ne = nice_edges(m)
        assert len(ne) == m.n_vertices // 2
        assert set(degrees(m.n_vertices, ne)) == {1}
        seen += 1
    assert seen


def test_separator_sound_and_equivariant(census_maps):
    checked = 0
    for rec, m in census_maps:
        if rec.type not in SEPARATED_TYPES:
            continue
        aux = auxiliary_graph(m)
        assert set(degrees(m.n_vertices, aux)) == {2}
        cert = orbit_separator(m)
        assert cert.lower_bound <= rec.orbit_count, (rec.tiling, str(rec.basis))
        n = m.n_vertices
        keys = np.array(sorted(u * n + v for u, v in aux))
        g = automorphism_group(m)
        for block in g.perms():
            vm = m.vert[block[:, m.vertex_flag]]
            u = vm[:, keys // n]
            v = vm[:, keys % n]
            moved = np.minimum(u, v) * n + np.maximum(u, v)
            assert np.isin(moved, keys).all()
        checked += 1
    assert checked
