from dataclasses import replace

import pytest

from tiler.errors import UnknownTiling
from tiler.mapcore import face_cycle, is_polyhedral
from tiler.symbols import TORUS_TYPES, canonicalize, parse
from tiler.symmetry import isomorphic
from tiler.tilings import NAMES, patch, template, template_for_type, validate_template
from tiler.mapcore import build_from_faces

CLASS_COUNTS = {"E1": 1, "E2": 1, "E3": 2, "E4": 2, "E5": 4, "E6": 3, "E7": 6,
                "E8": 6, "E9": 6, "E10": 12, "E11": 4}


@pytest.mark.parametrize("name", NAMES)
def test_validates(name):
    rep = validate_template(template(name))
    assert rep.ok, rep.failures


@pytest.mark.parametrize("name", NAMES)
def test_class_counts(name):
    assert template(name).n_classes == CLASS_COUNTS[name]


def test_types_cover_the_torus_list():
    assert {template(n).type for n in NAMES} == set(TORUS_TYPES)
    for n in NAMES:
        assert template_for_type(template(n).type).name == n


def test_examples():
    e2 = template("E2")
    assert e2.n_classes == 1 and len(e2.cell_faces) == 1 and len(e2.cell_faces[0]) == 4
    assert template("E6").cell_vertices == ("u", "v", "w")
    assert template("E5").type == parse("3^2.4.3.4")


def test_unknown():
    with pytest.raises(UnknownTiling):
        template("E12")
    with pytest.raises(KeyError):
        template("nope")


def test_patch_e2_radius_1():
    m = patch(template("E2"), 1)
    assert (m.n_vertices, m.n_faces, len(m.interior_vertices)) == (16, 9, 4)


@pytest.mark.parametrize("name,want", [("E1", (3,) * 6), ("E7", None)])
def test_patch_interior_symbols(name, want):
    m = patch(template(name), 2)
    for v in m.interior_vertices:
        cyc = face_cycle(m, v)
        if want is not None:
            assert cyc == want
        assert canonicalize(cyc) == template(name).type


@pytest.mark.parametrize("name", NAMES)
def test_interior_grows_quadratically(name):
    sizes = [len(patch(template(name), r).interior_vertices) for r in (2, 3, 4)]
    # second difference of a quadratic is constant and positive
    assert sizes[0] < sizes[1] < sizes[2]
    assert sizes[2] - 2 * sizes[1] + sizes[0] > 0


def test_flipped_face_is_rejected():
    t = template("E5")
    faces = list(t.cell_faces)
    faces[0] = tuple(reversed(faces[0]))
    rep = validate_template(replace(t, cell_faces=tuple(faces)))
    assert not rep.ok


def test_shifted_corner_is_rejected():
    t = template("E5")
    faces = list(t.cell_faces)
    (k, (i, j)), *rest = faces[0]
    faces[0] = ((k, (i + 1, j)), *rest)
    assert not validate_template(replace(t, cell_faces=tuple(faces))).ok


def test_missing_face_is_rejected():
    t = template("E8")
    assert not validate_template(replace(t, cell_faces=t.cell_faces[1:])).ok


@pytest.mark.parametrize("name", ["E2", "E6", "E10"])
def test_shift_is_an_isomorphism_on_the_overlap(name):
    t = template(name)
    m = patch(t, 4)
    cycles = [[m.labels[v] for v in c] for c in m.face_cycles()]

    def window(di, dj):
        # faces lying in the cell window |i - di|, |j - dj| <= 2, keeping the
        # largest edge-connected piece (corner faces may hang on by a vertex)
        faces = [c for c in cycles if all(abs(i - di) <= 2 and abs(j - dj) <= 2 for i, j, _ in c)]
        sides = [{frozenset((c[i], c[i - 1])) for i in range(len(c))} for c in faces]
        best, seen = [], set()
        for s in range(len(faces)):
            if s in seen:
                continue
            comp, todo = [], [s]
            seen.add(s)
            while todo:
                f = todo.pop()
                comp.append(f)
                for g in range(len(faces)):
                    if g not in seen and sides[f] & sides[g]:
                        seen.add(g)
                        todo.append(g)
            best = max(best, comp, key=len)
        return build_from_faces([faces[f] for f in sorted(best)])

    assert isomorphic(window(0, 0), window(1, 0))
    assert isomorphic(window(0, 0), window(0, 1))


def test_patches_are_polyhedral():
    for n in NAMES:
        assert is_polyhedral(patch(template(n), 2))
