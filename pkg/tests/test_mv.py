"""Tests for gated gluings and homology additivity."""

from fractions import Fraction

import pytest

from magtop.docs import gluing_from_doc, load_fixture
from magtop.metric import MetricSpace, glue
from magtop.mv import (
    GatedGluing,
    NotGated,
    check_gated,
    interior_part_betti,
    verify_mv,
    verify_union,
)


def space(labels, rows):
    rows = tuple(tuple(Fraction(v) for v in row) for row in rows)
    return MetricSpace(tuple(labels), rows)


def triangles():
    return gluing_from_doc(load_fixture("mv_triangles"))


def tree_gluing():
    path = space(("r", "g1", "g2"), [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    star = space(("r", "h1", "h2"), [[0, 1, 1], [1, 0, 2], [1, 2, 0]])
    return glue(path, star, (0,), (0,))


def test_check_gated_accepts_triangles():
    gl = triangles()
    gated = check_gated(gl)
    assert isinstance(gated, GatedGluing)
    assert gated and gated.base is gl


def test_check_gated_refuses_neutral_points():
    gl = gluing_from_doc(load_fixture("sycamore_gluing"))
    refusal = check_gated(gl)
    assert isinstance(refusal, NotGated)
    assert not refusal
    assert refusal.witness == "h3"
    assert refusal.detail == "3 neutral interior points, e.g. h3"


def test_refusal_passes_through_every_verifier():
    gl = gluing_from_doc(load_fixture("sycamore_gluing"))
    for result in (
        interior_part_betti(gl, 1),
        verify_union(gl, 2),
        verify_mv(gl, 2),
    ):
        assert isinstance(result, NotGated)
        assert result.witness == "h3"


def test_non_gluing_argument_rejected():
    with pytest.raises(TypeError):
        verify_union("not a gluing", 2)
    with pytest.raises(TypeError):
        interior_part_betti(42, 1)


def test_interior_part_betti_values():
    gl = triangles()
    assert interior_part_betti(gl, 0).betti == ((0, 1),)
    assert interior_part_betti(gl, 1).betti == ((1, 2),)
    assert interior_part_betti(gl, 2).betti == ((2, 2),)
    # accepts the wrapped form too
    assert interior_part_betti(check_gated(gl), 2).betti == ((2, 2),)


def test_union_additivity_on_triangles():
    rep = verify_union(triangles(), 3)
    assert rep
    assert rep.rows and all(row[4] for row in rep.rows)
    assert "matches" in rep.detail


def test_mv_additivity_on_triangles():
    rep = verify_mv(triangles(), 3)
    assert rep
    assert rep.rows and all(row[2] == row[3] for row in rep.rows)
    assert "additivity holds" in rep.detail


def test_one_point_tree_gluing():
    gl = tree_gluing()
    assert gl.neutral == frozenset()
    assert sorted(gl.space.labels) == ["g1", "g2", "h1", "h2", "r"]
    idx = gl.space.index
    assert gl.space.d(idx("g2"), idx("h1")) == 3
    assert verify_union(gl, 3)
    assert verify_mv(gl, 3)
