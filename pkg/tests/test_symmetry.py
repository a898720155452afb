import random

import numpy as np
import pytest

from oracles import brute_morphisms
from tiler import _kernels
from tiler.mapcore import build_from_faces, is_polyhedral
from tiler.quotients import SublatticeBasis, enumerate_sublattices, torus_quotient
from tiler.symmetry import (FULL_LIST_LIMIT, automorphism_group, embeddings, is_vertex_transitive,
                            isomorphic, mirror, orientation, vertex_orbits)
from tiler.tilings import NAMES, patch, template


def q(name, a, b, d):
    return torus_quotient(template(name), SublatticeBasis(a, b, d))


def commutes(m, perm):
    return all(np.array_equal(perm[s[np.arange(m.n_flags)]], s[perm]) for s in (m.s0, m.s1, m.s2))


def test_square_torus_is_flag_transitive():
    m = q("E2", 3, 0, 3)
    g = automorphism_group(m)
    assert g.order == 72 == m.n_flags
    assert vertex_orbits(m).count == 1
    assert is_vertex_transitive(m)


def test_seven_vertex_torus():
    m = q("E1", 7, 4, 1)
    g = automorphism_group(m)
    assert g.order == 42
    assert is_vertex_transitive(m)
    # the map is chiral: no automorphism reverses orientation
    o = orientation(m)
    assert all(o[p[0]] == o[0] for p in (e.flag_perm for e in g.elements))
    assert isomorphic(m, mirror(m))
    assert not isomorphic(m, mirror(m), oriented=True)



@pytest.mark.parametrize("name", ["E1", "E2", "E3", "E4", "E6", "E11"])
def test_group_matches_brute_force(name):
    for L in enumerate_sublattices(9):
        m = torus_quotient(template(name), L)
        if not is_polyhedral(m):
            continue
        g = automorphism_group(m)
        assert sorted(g.roots.tolist()) == brute_morphisms(m, m), f"{name}/{L}"


def test_elements_are_automorphisms_and_form_a_group():
    m = q("E6", 3, 0, 3)
    g = automorphism_group(m)
    assert m.n_flags % g.order == 0
    elems = [e.flag_perm for e in g.elements]
    assert any(np.array_equal(p, np.arange(m.n_flags)) for p in elems)
    keys = {p.tobytes() for p in elems}
    rng = random.Random(3)
    for p in elems:
        assert commutes(m, p)
        inv = np.argsort(p)
        assert inv.tobytes() in keys
    for _ in range(50):
        a, b = rng.choice(elems), rng.choice(elems)
        assert a[b].tobytes() in keys
    vm = g.element(1).vertex_map(m)
    assert sorted(vm.tolist()) == list(range(m.n_vertices))


def test_generators_generate():
    m = q("E10", 2, 0, 3)
    g = automorphism_group(m)
    gens = g.generators()
    assert len(g._closure_roots(gens)) == g.order


def test_elements_limit():
    m = q("E10", 12, 0, 12)  # 72 flags per cell, 10368 in all
    assert m.n_flags > FULL_LIST_LIMIT
    g = automorphism_group(m)
    with pytest.raises(ValueError):
        g.elements
    assert sum(len(b) for b in g.perms()) == g.order


@pytest.mark.parametrize("name", NAMES)
def test_backends_agree(name):
    prev = _kernels.backend()
    try:
        for L in enumerate_sublattices(6):
            m = torus_quotient(template(name), L)
            _kernels.set_backend("numpy")
            a = automorphism_group(m).roots.tolist()
            _kernels.set_backend(prev)
            b = automorphism_group(m).roots.tolist()
            assert a == b
    finally:
        _kernels.set_backend(prev)


def test_isomorphism_examples():
    a, b = q("E2", 2, 0, 3), q("E2", 3, 0, 2)
    res = isomorphic(a, b)
    assert res.isomorphic and commutes_between(a, b, res.witness)
    c = q("E2", 6, 0, 1)
    verdict = bool(isomorphic(c, b))
    assert verdict == bool(isomorphic(b, c))
    assert verdict == bool(brute_morphisms(c, b, first_only=True))
    assert isomorphic(a, a).isomorphic


def commutes_between(m1, m2, phi):
    return all(np.array_equal(phi[s1], s2[phi]) for s1, s2 in zip(m1.sigma, m2.sigma))


def test_orbits_are_isomorphism_invariant():
    m = q("E8", 2, 0, 3)
    rng = random.Random(11)
    perm = list(range(m.n_vertices))
    rng.shuffle(perm)
    other = build_from_faces([[perm[v] for v in c] for c in m.face_cycles()])
    assert isomorphic(m, other)
    o1, o2 = vertex_orbits(m), vertex_orbits(other)
    assert (o1.count, o1.sizes, o1.group_order) == (o2.count, o2.sizes, o2.group_order)


def test_orbit_partition_is_invariant_under_group():
    m = q("E9", 3, 0, 4)
    g = automorphism_group(m)
    orb = vertex_orbits(m, g)
    for e in g.elements:
        vm = e.vertex_map(m)
        for cls in orb.classes:
            assert {int(vm[v]) for v in cls} == set(cls)
    assert orb.class_of(0) == 0


def test_embeddings():
    small, big = patch(template("E2"), 1), patch(template("E2"), 3)
    found = embeddings(small, big)
    assert len(found) == 1
    phi = found[0]
    assert len(set(phi.tolist())) == small.n_flags
    assert not embeddings(patch(template("E1"), 1), big)
    many = embeddings(small, big, first_only=False)
    assert len(many) > 1


def test_iso_rejects_mixed_inputs():
    with pytest.raises(ValueError):
        isomorphic(q("E2", 3, 0, 3), patch(template("E2"), 1))
