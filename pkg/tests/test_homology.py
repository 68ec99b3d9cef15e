"""Integer Smith reduction and the sequence homology of metric spaces."""

import random
from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from magtop import (
    ChainComplex,
    HomologySummary,
    SimplicialComplex,
    SimplicialPair,
    from_distance_matrix,
    from_weighted_graph,
    homology,
    inner_pair,
    load_fixture,
    magnitude_chain_complex,
    magnitude_homology_total,
    pair_achievable_lengths,
    relative_chain_complex,
    smith_normal_form,
    space_from_doc,
    verify_chain_iso,
    verify_kunneth,
    verify_suspension_shift,
)
from magtop.homology import BoundarySquareNonzero, betti_table

F = Fraction


def fixture_space(name):
    return space_from_doc(load_fixture(name))


def test_snf_known_small_matrix():
    res = smith_normal_form([[1, 2], [3, 4]])
    assert res.diag == (1, 2)
    assert res.rank == 2
    assert smith_normal_form([[0, 0], [0, 0]]).diag == ()
    assert smith_normal_form([[6]]).diag == (6,)
    assert smith_normal_form([]).diag == ()


def test_snf_matches_sympy_on_random_matrices():
    rng = random.Random(5)
    for _ in range(25):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 6)
        mat = [
            [rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)
        ]
        ours = smith_normal_form(mat)
        ref = sympy_snf(sympy.Matrix(mat), domain=sympy.ZZ)
        ref_diag = [
            abs(ref[i, i])
            for i in range(min(rows, cols))
            if ref[i, i] != 0
        ]
        assert list(ours.diag) == ref_diag, mat


def test_snf_transforms_reproduce_diagonal():
    rng = random.Random(9)
    for _ in range(10):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 5)
        mat = [
            [rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)
        ]
        res = smith_normal_form(mat, transforms=True)
        u = sympy.Matrix(res.u)
        v = sympy.Matrix(res.v)
        assert abs(u.det()) == 1
        assert abs(v.det()) == 1
        prod = u * sympy.Matrix(mat) * v
        for i in range(rows):
            for j in range(cols):
                expect = res.diag[i] if i == j and i < len(res.diag) else 0
                assert prod[i, j] == expect


def test_chain_complex_rejects_nonsquare_zero():
    with pytest.raises(BoundarySquareNonzero):
        ChainComplex(
            {0: ["a"], 1: ["b"], 2: ["c"]},
            {1: [[1]], 2: [[1]]},
        )


def test_homology_reads_torsion_from_snf():
    cc = ChainComplex({0: ["a"], 1: ["b"]}, {1: [[2]]})
    summary = homology(cc)
    assert summary.betti == ()
    assert summary.torsion == ((0, (2,)),)


def test_homology_summary_algebra():
    a = HomologySummary.build({0: 1, 2: 1}, {1: [4, 2]})
    assert a.torsion == ((1, (2, 4)),)
    assert a.euler() == 2
    assert a.shifted(2).betti == ((2, 1), (4, 1))
    b = HomologySummary.build({2: 3}, {1: [2]})
    both = a.plus(b)
    assert both.betti_at(2) == 4
    assert both.torsion_at(1) == [2, 2, 4]
    assert HomologySummary().is_zero()


def test_circle_complex_has_expected_homology():
    # triangle boundary: one loop
    cpx = SimplicialComplex.of(
        [("a", "b"), ("b", "c"), ("a", "c")], close=True
    )
    pair = SimplicialPair(cpx, SimplicialComplex.void())
    summary = homology(relative_chain_complex(pair))
    assert summary.betti_map() == {0: 1, 1: 1}
    assert summary.torsion == ()


def test_relative_complex_augmentation_cases():
    void = SimplicialComplex.void()
    empty = SimplicialComplex.empty()
    point = SimplicialComplex.of([("x",)])
    # nothing at all
    assert homology(relative_chain_complex(SimplicialPair(void, void))).is_zero()
    # the empty simplex alone carries one class in degree -1
    s = homology(
        relative_chain_complex(SimplicialPair(empty, void), augmented=True)
    )
    assert s.betti == ((-1, 1),)
    # a point with augmentation is acyclic
    s = homology(
        relative_chain_complex(SimplicialPair(point, void), augmented=True)
    )
    assert s.is_zero()
    # an empty subcomplex swallows the empty simplex
    s = homology(
        relative_chain_complex(SimplicialPair(point, empty), augmented=True)
    )
    assert s.betti == ((0, 1),)


def test_magnitude_chain_complex_boundary_drops_interior():
    sp = fixture_space("k3")
    cc = magnitude_chain_complex(sp, 0, 1, F(2))
    # the only degree-2 generator is (a, c, b); both drops shorten it
    assert cc.basis[2] == [(0, 2, 1)]
    assert cc.rank(1) == 0  # no two-point sequence reaches length 2
    assert cc.matrix(2) == [[]] or cc.matrix(2) == []
    assert cc.validate()
    # diagonal pair: two bounces, boundary still zero
    cc = magnitude_chain_complex(sp, 0, 0, F(2))
    assert cc.rank(2) == 2


def test_c4_antipodal_sphere_class():
    c4 = fixture_space("c4")
    a, b = c4.index("a"), c4.index("b")
    assert c4.d(a, b) == 2
    summary = homology(magnitude_chain_complex(c4, a, b, F(2)))
    assert summary.betti == ((2, 1),)
    assert summary.torsion == ()


@pytest.mark.parametrize("l", [0, 1, 2, 3])
def test_k3_total_rank_wedge_count(l):
    k3 = fixture_space("k3")
    total = magnitude_homology_total(k3, F(l))
    assert total.betti == ((l, 3 * 2 ** l),)
    assert total.torsion == ()


def test_k4_total_rank_wedge_count():
    k4 = fixture_space("k4")
    total = magnitude_homology_total(k4, F(2))
    assert total.betti == ((2, 4 * 3 ** 2),)


@pytest.mark.parametrize("name,edges", [("p2", 2), ("p3", 3), ("s3", 3)])
def test_tree_totals_are_diagonal(name, edges):
    tree = fixture_space(name)
    assert magnitude_homology_total(tree, F(0)).betti == ((0, tree.n),)
    for l in (1, 2, 3):
        total = magnitude_homology_total(tree, F(l))
        assert total.betti == ((l, 2 * edges),)
        assert total.torsion == ()


def test_betti_table_keys_and_values():
    c4 = fixture_space("c4")
    table = betti_table(c4, F(2))
    a, b = c4.index("a"), c4.index("b")
    assert table[(F(2), a, b, 2)] == (1, ())
    assert all(l <= 2 for (l, _, _, _) in table)


def test_chain_iso_over_small_corpus():
    for name in ("two_point", "k3", "c4", "p2"):
        sp = fixture_space(name)
        for a in range(sp.n):
            for b in range(sp.n):
                for l in pair_achievable_lengths(sp, a, b, F(3)):
                    rep = verify_chain_iso(sp, a, b, l)
                    assert rep.ok, (name, a, b, l, rep.detail)


def test_suspension_shift_over_small_corpus():
    for name in ("two_point", "k3", "c4", "s3"):
        sp = fixture_space(name)
        for a in range(sp.n):
            for b in range(sp.n):
                for l in pair_achievable_lengths(sp, a, b, F(3)):
                    if l == 0:
                        continue
                    rep = verify_suspension_shift(sp, a, b, l)
                    assert rep.ok, (name, a, b, l, rep.detail)


def test_suspension_worked_contrast_at_length_two():
    # K3 pair: stripped total is a point, sub only the empty simplex
    k3 = fixture_space("k3")
    pair = inner_pair(k3, 0, 1, F(2))
    assert (pair.total.state, pair.sub.state) == ("nonempty", "empty")
    assert homology(magnitude_chain_complex(k3, 0, 1, F(2))).betti == ((2, 1),)
    # path a-c-b: same total, but the sub side is void, so the class dies
    p2 = fixture_space("p2")
    a, b = p2.index("a"), p2.index("b")
    pair = inner_pair(p2, a, b, F(2))
    assert (pair.total.state, pair.sub.state) == ("nonempty", "void")
    assert homology(magnitude_chain_complex(p2, a, b, F(2))).is_zero()


def test_two_point_shift_from_empty_interval():
    # adjacent pair at l = d: group Z in degree 1 from the degree -1 class
    two = fixture_space("two_point")
    rel = relative_chain_complex(inner_pair(two, 0, 1, F(1)), augmented=True)
    s = homology(rel)
    assert s.betti == ((-1, 1),)
    assert homology(magnitude_chain_complex(two, 0, 1, F(1))).betti == ((1, 1),)


def test_kunneth_on_products():
    k2 = fixture_space("two_point")
    p2 = fixture_space("p2")
    assert verify_kunneth(k2, k2, F(3)).ok
    assert verify_kunneth(k2, p2, F(3)).ok


def test_diagonality_of_complete_graphs_and_trees():
    for name in ("k3", "k4", "p3", "s3"):
        sp = fixture_space(name)
        for l in (0, 1, 2):
            total = magnitude_homology_total(sp, F(l))
            assert all(k == l for k, _ in total.betti), (name, l)


def test_fractional_lengths_carry_homology():
    # weighted path: bounce lengths mix degrees at a single l
    sp = from_weighted_graph(
        ("a", "b", "c"), [("a", "b", F(1, 2)), ("b", "c", F(3, 4))]
    )
    assert magnitude_homology_total(sp, F(1)).betti == ((2, 2),)
    assert magnitude_homology_total(sp, F(3, 2)).betti == ((2, 2), (3, 2))
    # a length no bounce can realize carries nothing
    assert magnitude_homology_total(sp, F(5, 4)).is_zero()
