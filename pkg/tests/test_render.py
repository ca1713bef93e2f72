import re

import numpy as np
import pytest

import dtlab
from dtlab.render import pixel_coords

import support


def _line_endpoints(svg, cls):
    pat = re.compile(
        rf'<line class="{cls}" x1="([-\d.]+)" y1="([-\d.]+)" '
        rf'x2="([-\d.]+)" y2="([-\d.]+)"')
    out = []
    for m in pat.finditer(svg):
        x1, y1, x2, y2 = map(float, m.groups())
        out.append(tuple(sorted([(x1, y1), (x2, y2)])))
    return sorted(out)


def test_render_matches_edge_geometry():
    b = dtlab.gen_comb(3, 0.2)
    tree = dtlab.prim_mst(b.metric, 0)
    svg = dtlab.render_svg(b.metric.coords, mst_edges=tree.edges(),
                           tours=[b.reference_tour])
    assert svg.startswith('<?xml version="1.0"')
    assert 'version="1.1"' in svg
    assert svg.count("<circle ") == b.n
    assert svg.count("<path ") == 1
    p = pixel_coords(b.metric.coords)
    expect = sorted(
        tuple(sorted([(round(p[u, 0], 2), round(p[u, 1], 2)),
                      (round(p[v, 0], 2), round(p[v, 1], 2))]))
        for u, v in tree.edges())
    assert _line_endpoints(svg, "tree") == expect


def test_render_is_deterministic_and_draws_aux_edges():
    b = dtlab.gen_twin_trees(2)
    svg1 = dtlab.render_svg(b.layout_coords(), mst_edges=b.expected_mst,
                            extra_edges=b.extra_edges)
    svg2 = dtlab.render_svg(b.layout_coords(), mst_edges=b.expected_mst,
                            extra_edges=b.extra_edges)
    assert svg1 == svg2
    assert svg1.count('class="aux"') == len(b.extra_edges)
    assert "stroke-dasharray" in svg1


def test_render_multiple_tours_cycle_colors():
    pts = [(0, 0), (1, 0), (1, 1), (0, 1)]
    tours = [dtlab.Tour((0, 1, 2, 3)), dtlab.Tour((0, 2, 1, 3))]
    svg = dtlab.render_svg(pts, tours=tours)
    assert svg.count("<path ") == 2
    colors = re.findall(r'<path[^>]*stroke="(#\w+)"', svg)
    assert colors[0] != colors[1]


def test_render_rejects_bad_input():
    with pytest.raises(dtlab.InputError):
        dtlab.render_svg(None)
    with pytest.raises(dtlab.InputError):
        dtlab.render_svg(np.zeros((0, 2)))
    with pytest.raises(dtlab.InputError):
        dtlab.render_svg([(0, 0), (1, 1)], mst_edges=[(0, 5)])


def test_write_svg(tmp_path):
    out = tmp_path / "fig.svg"
    dtlab.write_svg(out, [(0, 0), (2, 1)], mst_edges=[(0, 1)])
    text = out.read_text()
    assert text.rstrip().endswith("</svg>")
