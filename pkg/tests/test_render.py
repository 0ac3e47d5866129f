import random
from pathlib import Path

from rigidquad.enumeration import enumerate_quads
from rigidquad.maps import QuadMap, from_cells, unit_square
from rigidquad.render import immerse, shade, to_svg
from rigidquad.sampling import sample_rigid_quad

GOLDEN = Path(__file__).parent / "golden"


def test_unit_square_immersion():
    g = immerse(unit_square())
    assert sorted(g.vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert g.overlaps == (((0, 0), 1),)
    assert g.root_edge == ((1, 0), (0, 0))


def test_open_base_is_drawn_below_the_axis():
    g = immerse(unit_square(open_base=True))
    assert g.faces == ((0, -1),)
    assert g.root_edge == ((0, 0), (1, 0))


def test_block_immersion():
    g = immerse(from_cells([(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert len(g.overlaps) == 4 and all(k == 1 for _, k in g.overlaps)


def test_overlap_conservation_and_closure():
    seen_overlap = False
    for p in (-2, 1, 2):
        for n in range(2, 7):
            for m in enumerate_quads(n, p):
                g = immerse(m)
                assert sum(k for _, k in g.overlaps) == m.num_faces
                assert g.boundary[0] == g.boundary[-1]
                seen_overlap |= any(k > 1 for _, k in g.overlaps)
    assert seen_overlap


def test_base0_is_a_point():
    g = immerse(QuadMap.base0())
    assert g.point and g.vertices == ((0, 0),)
    assert "<circle" in to_svg(g)


def test_shading_darkens_with_overlap():
    levels = [int(shade(k)[1:3], 16) for k in range(1, 8)]
    assert levels == sorted(levels, reverse=True)
    assert len(set(levels)) == len(levels)


def test_immersion_json():
    doc = immerse(unit_square()).to_dict()
    assert doc == {"vertices": [[1, 1], [0, 1], [0, 0], [1, 0]], "faces": [[0, 0]], "overlaps": [[[0, 0], 1]]}


def test_golden_svgs():
    assert to_svg(immerse(unit_square())) == (GOLDEN / "unit_square.svg").read_text()
    m, n = sample_rigid_quad(2, 7, 6, random.Random(4))
    assert to_svg(immerse(m)) == (GOLDEN / "sample_p2_n6_seed4.svg").read_text()
