import random

import pytest

from lgvx.aztec import (AztecRegion, NoTilings, RegionError, aztec_diamond, aztec_diamond_count, aztec_formula,
                        build_aztec_rectangle, build_mixed_aztec, collinear_holes, collinear_placements, count_cells,
                        count_tilings_brute, count_tilings_via_paths, from_xy, is_black, iter_tilings, punch_holes,
                        region_to_paths, tiling_to_paths, to_xy, translate)
from lgvx.drawing import validate_drawing
from lgvx.pathcount import ResourceLimitError, iter_nonintersecting
from lgvx.selftest import random_holey_region, random_translation


# -- regions ---------------------------------------------------------------------------


def test_coordinate_maps_are_inverse():
    for cell in build_aztec_rectangle(3, 4).cells:
        assert from_xy(*to_xy(cell)) == cell


def test_region_sizes_and_colours():
    assert count_cells(build_mixed_aztec(1, 1)) == 2
    assert count_cells(build_mixed_aztec(3, 5)) == 30
    for m in range(1, 5):
        for n in range(1, 5):
            black, white = build_mixed_aztec(m, n).color_balance()
            assert black == white == m * n
    assert count_cells(aztec_diamond(2)) == 12


def test_neighbouring_cells_alternate_colour():
    r = build_aztec_rectangle(3, 3)
    for c in r.cells:
        x, y = to_xy(c)
        for other in (from_xy(x + 1, y), from_xy(x, y + 1)):
            if other in r.cells:
                assert is_black(c) != is_black(other)


def test_punch_holes_errors():
    r = build_mixed_aztec(2, 2)
    with pytest.raises(RegionError):
        punch_holes(r, [(1, 2), (1, 2)])
    with pytest.raises(RegionError):
        punch_holes(r, [(0, 1)])
    with pytest.raises(RegionError):
        AztecRegion(0, 2)


# -- counting --------------------------------------------------------------------------


def test_mixed_rectangles_without_holes_tile_uniquely():
    for m in range(1, 5):
        for n in range(1, 5):
            r = build_mixed_aztec(m, n)
            assert count_tilings_brute(r) == 1
            assert count_tilings_via_paths(r) == 1


def test_aztec_diamonds():
    assert [count_tilings_brute(aztec_diamond(k)) for k in (1, 2, 3)] == [2, 8, 64]
    assert [aztec_diamond_count(k) for k in (1, 2, 3)] == [2, 8, 64]


def test_unbalanced_holes_give_zero():
    r = build_mixed_aztec(3, 3)
    white = next(c for c in sorted(r.cells) if not is_black(c))
    whites = [c for c in sorted(r.cells) if not is_black(c)][:2]
    for holes in ([white], whites):
        region = punch_holes(r, holes)
        assert count_tilings_brute(region) == 0
        assert count_tilings_via_paths(region) == 0
        with pytest.raises(NoTilings):
            region_to_paths(region)


def test_region_without_holes_has_no_paths():
    d, m = region_to_paths(build_mixed_aztec(2, 3))
    assert m.n == 0
    assert validate_drawing(d) == []


def test_full_rectangle_is_rejected_by_the_path_route():
    with pytest.raises(RegionError):
        region_to_paths(build_aztec_rectangle(2, 2))


def test_cell_ceiling():
    with pytest.raises(ResourceLimitError):
        count_tilings_brute(build_mixed_aztec(6, 6), max_cells=20)


def test_random_holey_regions_agree():
    rng = random.Random(4)
    nonzero = 0
    for _ in range(100):
        r = random_holey_region(rng)
        a = count_tilings_brute(r)
        assert count_tilings_via_paths(r) == a, r
        nonzero += a > 1
    assert nonzero >= 5


def test_host_margin_does_not_matter():
    rng = random.Random(8)
    for _ in range(15):
        r = random_holey_region(rng, max_side=4)
        if r.m == r.n == 1:
            continue
        assert count_tilings_via_paths(r, margin=0) == count_tilings_via_paths(r, margin=2)


# -- explicit bijection -------------------------------------------------------------------


def test_tilings_map_onto_non_intersecting_families():
    rng = random.Random(9)
    checked = 0
    while checked < 12:
        r = random_holey_region(rng, max_side=3)
        if len(r.open_cells) > 30:
            continue
        try:
            d, config = region_to_paths(r)
        except NoTilings:
            continue
        from_tilings = [tiling_to_paths(r, t, config) for t in iter_tilings(r)]
        families = {f.paths for f in iter_nonintersecting(d, config)}
        assert len(set(from_tilings)) == len(from_tilings)
        assert set(from_tilings) == families
        checked += 1


# -- four collinear holes ------------------------------------------------------------------


@pytest.mark.parametrize("a,b,c", [(a, b, c) for a in (1, 2) for b in (0, 1) for c in (1, 2)])
def test_collinear_holes_match_the_formula(a, b, c):
    expected = aztec_formula(a, b, c)
    placements = collinear_placements(a, b, c, count=3)
    assert len(placements) == 3
    for m, n, holes in placements:
        r = punch_holes(build_mixed_aztec(m, n), holes)
        assert count_tilings_via_paths(r) == expected
        if len(r.open_cells) <= 120:
            assert count_tilings_brute(r) == expected


def test_formula_values():
    assert [aztec_formula(1, 0, 1), aztec_formula(1, 1, 1), aztec_formula(2, 1, 2)] == [4, 36, 1656]
    with pytest.raises(ValueError):
        aztec_formula(0, 1, 1)
    with pytest.raises(ValueError):
        aztec_formula(1, -1, 1)


def test_collinear_holes_colours():
    holes = collinear_holes(1, 1, 1, 0, 0)
    assert [is_black(h) for h in holes] == [False, False, True, True]
    with pytest.raises(RegionError):
        collinear_holes(1, 1, 1, 1, 0)


# -- translation invariance ------------------------------------------------------------------


def test_translation_preserves_counts():
    rng = random.Random(10)
    for _ in range(20):
        r, moved = random_translation(rng)
        assert count_tilings_brute(r) == count_tilings_brute(moved)


def test_translate_shifts_plane_coordinates():
    assert translate([from_xy(1, 2)], 2, -1) == [from_xy(3, 1)]
