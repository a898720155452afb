import json
import random

import numpy as np
import pytest

from oracles import brute_polyhedral

from tiler import mapcore
from tiler.errors import BoundaryNotSupported, BoundaryVertex, DegenerateFace, EdgeUsedThrice
from tiler.mapcore import (build_from_faces, check_axioms, dual, euler_characteristic, face_cycle,
                           is_polyhedral, submap)
from tiler.quotients import SublatticeBasis, enumerate_sublattices, torus_quotient
from tiler.symbols import parse, semi_equivelar_type
from tiler.symmetry import isomorphic
from tiler.tilings import NAMES, patch, template


def q(name, a, b, d):
    return torus_quotient(template(name), SublatticeBasis(a, b, d))


def test_single_triangle():
    m = build_from_faces([["a", "b", "c"]])
    assert (m.n_faces, m.n_vertices, m.n_edges) == (1, 3, 3)
    assert len(m.boundary) == 6  # two flags per boundary edge
    assert euler_characteristic(m) == 1
    assert is_polyhedral(m)
    assert not m.is_closed
    assert check_axioms(m) == []


def test_two_triangles():
    m = build_from_faces([["a", "b", "c"], ["a", "c", "d"]])
    assert (m.n_faces, m.n_vertices, m.n_edges) == (2, 4, 5)
    assert euler_characteristic(m) == 1


def test_seven_vertex_torus_counts():
    m = q("E1", 7, 4, 1)
    assert m.is_closed
    assert (m.n_vertices, m.n_edges, m.n_faces) == (7, 21, 14)
    assert euler_characteristic(m) == 0
    # rebuilding from its own face cycles gives the same map
    again = build_from_faces(m.face_cycles())
    assert again.is_closed and euler_characteristic(again) == 0


def test_build_errors():
    with pytest.raises(EdgeUsedThrice):
        build_from_faces([[0, 1, 2], [0, 1, 3], [0, 1, 4]])
    with pytest.raises(DegenerateFace):
        build_from_faces([[0, 1]])
    with pytest.raises(DegenerateFace):
        build_from_faces([[0, 0, 1]])


def test_face_cycles_round_trip():
    faces = [[0, 1, 2, 3], [1, 0, 4], [2, 1, 4, 5]]
    m = build_from_faces(faces)
    got = sorted(mapcore._min_rotation([m.labels[v] for v in c]) for c in m.face_cycles())
    assert got == sorted(mapcore._min_rotation(f) for f in faces)


@pytest.mark.parametrize("name", NAMES)
def test_polyhedral_matches_oracle(name):
    checked = 0
    for L in enumerate_sublattices(12):
        m = torus_quotient(template(name), L)
        if m.n_flags > 200:
            continue
        assert check_axioms(m) == []
        assert bool(is_polyhedral(m)) == brute_polyhedral(m), f"{name}/{L}"
        checked += 1
    assert checked


def test_square_quotient_examples():
    assert is_polyhedral(q("E2", 3, 0, 3))
    rep = is_polyhedral(q("E2", 2, 0, 2))
    assert not rep and rep.code


def test_euler_of_every_small_quotient_is_zero():
    for name in NAMES:
        for L in enumerate_sublattices(6):
            assert euler_characteristic(torus_quotient(template(name), L)) == 0


def test_dual():
    m = q("E1", 7, 4, 1)
    assert isomorphic(dual(dual(m)), m)
    assert semi_equivelar_type(dual(q("E3", 3, 0, 3))) == parse("3^6")
    assert semi_equivelar_type(dual(q("E2", 3, 0, 3))) == parse("4^4")
    with pytest.raises(BoundaryNotSupported):
        dual(patch(template("E2"), 1))


def test_face_cycle_examples():
    m = q("E2", 3, 0, 3)
    assert all(face_cycle(m, v) == (4, 4, 4, 4) for v in range(m.n_vertices))
    p6 = patch(template("E6"), 2)
    v = min(p6.interior_vertices)
    assert face_cycle(p6, v) in {(3, 6, 3, 6), (6, 3, 6, 3)}
    p10 = patch(template("E10"), 2)
    cyc = face_cycle(p10, min(p10.interior_vertices))
    assert sorted(cyc) == [4, 6, 12]
    with pytest.raises(BoundaryVertex):
        face_cycle(p6, min(p6.boundary_vertices))


def test_json_round_trip(tmp_path):
    # vertex-cycle JSON only describes maps with a simple 1-skeleton
    m = next(torus_quotient(template("E4"), L) for L in enumerate_sublattices(5)
             if is_polyhedral(torus_quotient(template("E4"), L)))
    text = mapcore.dumps(m)
    data = json.loads(text)
    assert data["vertices"] == m.n_vertices
    assert data["faces"] == sorted(data["faces"])
    back = mapcore.loads(text)
    assert isomorphic(back, m)
    path = tmp_path / "m.json"
    mapcore.save(m, path, note="x")
    assert isomorphic(mapcore.load(path), m)
    with pytest.raises(ValueError):
        mapcore.from_json_dict({"vertices": 5, "faces": [[0, 1, 2]]})


def test_submap_keeps_labels():
    p = patch(template("E2"), 1)
    s = submap(p, [0, 1])
    assert s.n_faces == 2 and set(s.labels) <= set(p.labels)


def test_axioms_detect_broken_involution():
    m = q("E2", 3, 0, 3)
    s1 = m.s1.copy()
    s1[[0, 1]] = s1[[1, 0]]
    bad = mapcore.FlagMap(m.s0, s1, m.s2, vert=m.vert)
    assert check_axioms(bad)


def test_random_relabelling_is_isomorphic():
    rng = random.Random(7)
    m = q("E6", 3, 0, 3)
    perm = list(range(m.n_vertices))
    rng.shuffle(perm)
    cycles = [[perm[v] for v in c] for c in m.face_cycles()]
    rng.shuffle(cycles)
    assert isomorphic(build_from_faces(cycles), m)
    assert np.all(m.face_sizes >= 3)
