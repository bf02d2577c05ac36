import random

from lgvx.drawing import MarkedConfig
from lgvx.involution import (CommonSubpath, common_subpaths, default_order, intersection_number, is_transversal,
                             pair_intersection_number, phi)
from lgvx.lattices import build_grid, build_tri_rhombus, tri_id
from lgvx.pathcount import PathFamily, iter_families
from lgvx.selftest import (InvolutionStats, LemmaCounts, check_intersection_lemmas, check_involution,
                           random_small_grid_instance)

G2 = build_grid(2, 2)
G4 = build_grid(4, 4)


def row(y, x0, x1):
    return tuple(f"{x},{y}" for x in range(x0, x1 + 1))


def col(x, y0, y1):
    return tuple(f"{x},{y}" for y in range(y0, y1 + 1))


# -- the involution ------------------------------------------------------------------


def test_disjoint_family_is_fixed():
    fam = PathFamily((row(0, 0, 2), row(2, 0, 2)), (0, 1))
    assert phi(fam, default_order(G2)) == fam


def test_single_crossing_swaps_tails():
    p = row(1, 0, 2)            # 0,1 -> 2,1
    q = col(1, 0, 2)            # 1,0 -> 1,2
    fam = PathFamily((p, q), (0, 1))
    img = phi(fam, default_order(G2))
    assert img.paths == (("0,1", "1,1", "1,2"), ("1,0", "1,1", "2,1"))
    assert img.connection == (1, 0)
    assert phi(img, default_order(G2)) == fam


def test_least_shared_vertex_is_used():
    p = ("0,1", "1,1", "2,1", "2,2", "3,2")
    q = ("1,0", "1,1", "1,2", "2,2", "2,3")
    img = phi(PathFamily((p, q), (0, 1)), default_order(G4))
    # (1,1) precedes (2,2) in the (y, x) order, so tails are swapped there
    assert img.paths == (("0,1", "1,1", "1,2", "2,2", "2,3"), ("1,0", "1,1", "2,1", "2,2", "3,2"))
    assert img.connection == (1, 0)


def test_involution_properties_on_three_by_three_grids():
    rng = random.Random(0)
    stats = InvolutionStats()
    for _ in range(40):
        d, m = random_small_grid_instance(rng)
        assert check_involution(d, m, stats) == []
    assert stats.families > 300
    assert stats.intersecting > 100


# -- common subpaths and transversality -----------------------------------------------


def test_common_subpaths_shapes():
    assert common_subpaths(row(0, 0, 2), row(2, 0, 2)) == []
    assert common_subpaths(row(1, 0, 2), col(1, 0, 2)) == [CommonSubpath(("1,1",))]
    p = ("0,1", "1,1", "2,1", "3,1", "3,2")
    q = ("1,0", "1,1", "2,1", "3,1", "4,1")
    assert common_subpaths(p, q) == [CommonSubpath(("1,1", "2,1", "3,1"))]


def test_common_subpaths_are_maximal_and_ordered():
    p = ("0,0", "1,0", "1,1", "2,1", "2,2", "3,2")
    q = ("1,0", "1,1", "1,2", "2,2", "3,2")
    runs = common_subpaths(p, q)
    assert [r.vertices for r in runs] == [("1,0", "1,1"), ("2,2", "3,2")]


def test_x_crossing_is_transversal():
    p, q = row(1, 0, 2), col(1, 0, 2)
    c = common_subpaths(p, q)[0]
    assert is_transversal(p, q, c, G2)
    assert is_transversal(q, p, c, G2)


def test_touch_and_return_is_not_transversal():
    q = ("1,0", "1,1", "2,1")
    p = ("0,1", "1,1", "1,2")
    c = common_subpaths(p, q)[0]
    assert not is_transversal(p, q, c, G2)


def test_run_touching_an_endpoint_is_not_transversal():
    p = ("0,1", "1,1", "2,1")
    q = ("1,1", "1,2")
    c = common_subpaths(p, q)[0]
    assert not is_transversal(p, q, c, G2)


def test_positive_length_overlap_crossed_on_triangular_lattice():
    d = build_tri_rhombus(3)
    q = (tri_id(0, 1), tri_id(1, 1), tri_id(2, 1), tri_id(3, 1))
    p = (tri_id(1, 0), tri_id(1, 1), tri_id(2, 1), tri_id(2, 2))
    c = common_subpaths(p, q)[0]
    assert len(c.vertices) == 2
    assert is_transversal(p, q, c, d)


def test_intersection_numbers():
    disjoint = PathFamily((row(0, 0, 4), row(4, 0, 4)), (0, 1))
    assert intersection_number(disjoint, G4) == 0
    assert pair_intersection_number(row(2, 0, 4), col(2, 0, 4), G4) == 1
    p1 = row(2, 0, 4)
    p2 = col(2, 0, 4)
    p3 = ("1,0", "1,1", "1,2", "1,3", "2,3", "3,3", "3,4")
    assert [pair_intersection_number(a, b, G4) for a, b in ((p1, p2), (p1, p3), (p2, p3))] == [1, 1, 1]
    assert intersection_number((p1, p2, p3), G4) == 3


# -- lemma checks on small grids -------------------------------------------------------


def test_intersection_lemmas_on_three_by_three_grids():
    rng = random.Random(1)
    counts = LemmaCounts()
    for _ in range(60):
        d, m = random_small_grid_instance(rng)
        assert check_intersection_lemmas(d, m, counts) == []
    assert counts.parity > 500
    assert counts.sign > 100


def test_transposition_sign_flip_on_larger_grids():
    rng = random.Random(2)
    counts = LemmaCounts()
    for _ in range(30):
        d, m = random_small_grid_instance(rng, size=4)
        assert check_intersection_lemmas(d, m, counts, per_type=5) == []
    assert counts.transposition >= 20


def test_phi_preserves_weights_on_triangular_instance():
    d = build_tri_rhombus(2)
    m = MarkedConfig((tri_id(0, 0), tri_id(0, 1)), (tri_id(2, 1), tri_id(2, 2)))
    stats = InvolutionStats()
    assert check_involution(d, m, stats) == []
    assert stats.families == len(list(iter_families(d, m)))
