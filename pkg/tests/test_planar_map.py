import pytest

from oracles import count_sphere_classes, euler, is_even
from selfcross.errors import LimitExceeded
from selfcross.forms import AngleForm
from selfcross.gauss_code import GaussCode, enumerate_words, symmetry_images, normalize
from selfcross.planar_map import (AngleType, CurveDiagram, delete_edge, diagram_canonical_key,
                                  distinct_realizations, euler_characteristic, face_vector,
                                  face_walks, realize_on_sphere, sphere_realizations,
                                  is_transversal, trace_faces)


def census(n, mirror_distinct=False):
    return [d for c in enumerate_words(n)
            for d in distinct_realizations(c.code, mirror_distinct)]


@pytest.fixture(scope="module")
def up_to_five():
    return {n: census(n) for n in range(6)}


def test_class_counts(up_to_five):
    # spherical curves up to homeomorphism of the sphere, mirrors identified
    assert [len(up_to_five[n]) for n in range(6)] == [1, 1, 2, 6, 19, 76]


def test_class_counts_match_brute_force(up_to_five):
    for n in range(5):
        assert len(up_to_five[n]) == count_sphere_classes(n)
    assert len(census(4, mirror_distinct=True)) == count_sphere_classes(4, mirror=False)


def test_euler_agrees_with_oracle():
    for n in range(1, 4):
        for c in enumerate_words(n):
            for chi in range(2 ** max(n - 1, 0)):
                bits = (0,) + tuple((chi >> k) & 1 for k in range(n - 1))
                d = CurveDiagram(c.code, bits)
                assert euler_characteristic(d) == euler(c.word, dict(enumerate(bits, 1)))


def test_face_invariants(up_to_five):
    for n, diagrams in up_to_five.items():
        for d in diagrams:
            faces = d.faces
            assert len(faces) == n + 2
            assert sum(f.size for f in faces) == 4 * n
            per_vertex = {}
            for f in faces:
                for c in f.corners:
                    per_vertex.setdefault(c.vertex, []).append(c.angle_type)
            for v in d.vertices:
                kinds = per_vertex[v]
                assert sorted(kinds) == sorted([AngleType.A, AngleType.A,
                                                AngleType.ABAR, AngleType.ABAR])
            assert is_transversal(d)


def test_evenness_is_necessary():
    for n in range(6):
        for c in enumerate_words(n):
            if sphere_realizations(c.code):
                assert is_even(c.word)


def test_evenness_suffices_for_small_n():
    for n in range(4):
        for c in enumerate_words(n):
            assert bool(sphere_realizations(c.code)) == is_even(c.word)


def test_figure_eight():
    d = realize_on_sphere(GaussCode((1, 1)))
    assert face_vector(d) == (1, 1, 2)
    sizes = sorted(f.size for f in trace_faces(d))
    assert sizes == [1, 1, 2]


def test_empty_curve_has_two_discs():
    d = realize_on_sphere(GaussCode(()))
    assert face_vector(d) == (0, 0)
    assert euler_characteristic(d) == 2


def test_unrealizable_code():
    assert realize_on_sphere(GaussCode((1, 2, 1, 2))) is None
    assert distinct_realizations(GaussCode((1, 2, 1, 2))) == []


def test_budget():
    word = tuple(c for c in range(1, 10) for _ in range(2))
    with pytest.raises(LimitExceeded):
        realize_on_sphere(GaussCode(word))


def test_one_word_two_patterns():
    ds = distinct_realizations(GaussCode((1, 1, 2, 2, 3, 3)))
    assert [face_vector(d) for d in ds] == [(1, 1, 1, 3, 6), (1, 1, 1, 4, 5)]


def test_canonical_key_invariant_under_code_symmetries():
    for n in range(1, 4):
        for c in enumerate_words(n):
            keys = {diagram_canonical_key(d) for d in distinct_realizations(c.code)}
            for _, _, image in symmetry_images(c.word):
                other = GaussCode(normalize(image)[0])
                assert {diagram_canonical_key(d) for d in sphere_realizations(other)} == keys


def test_canonical_key_mirror(up_to_five):
    for n in range(1, 5):
        for d in up_to_five[n]:
            mirror = CurveDiagram(d.code, tuple(1 - b for b in d.chirality))
            assert euler_characteristic(mirror) == 2
            assert diagram_canonical_key(mirror) == diagram_canonical_key(d)


def test_delete_edge_config6(config6):
    w = delete_edge(config6, 5)
    assert w.sides == ((0, 1), (1, 1), (2, -1), (3, 1), (4, 1), (3, -1), (1, -1))
    assert [str(f) for f in w.corner_forms] == ["1", "x2", "x2", "1", "1 - x3", "1 - x2",
                                                "1 - x1"]
    assert w.source == ("edge", 5)


def test_deletion_corners_add_up(up_to_five):
    """Erasing an arc merges two faces; the two corners at its ends become straight."""
    for n in range(1, 4):
        for d in up_to_five[n]:
            faces = {f.id: f for f in d.faces}
            total = sum((c.form for f in faces.values() for c in f.corners), AngleForm())
            for e in range(d.num_edges):
                w = delete_edge(d, e)
                assert len(w) == sum(f.size for f in d.faces
                                     if 2 * e in f.darts or 2 * e + 1 in f.darts) - 2
                assert all(len(s) >= 1 for s in w.corner_sectors)
            assert total == AngleForm.constant(2 * n)


def test_face_walks_follow_faces(config5):
    for f, w in zip(config5.faces, face_walks(config5)):
        assert len(w) == f.size
        assert w.corner_forms == tuple(c.form for c in f.corners)
