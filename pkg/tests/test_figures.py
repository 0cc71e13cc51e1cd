import re

from smpverify.families import (
    DISTINGUISHED_PHI,
    eigenvectors_from_products,
    example_main,
    normalize,
)
from smpverify.figures import FigureSpec, render, render_string
from smpverify.polytope import build_polygon, images


def make_spec(mu=1.25):
    mset = example_main(1.331, DISTINGUISHED_PHI)
    norm = normalize(mset)
    v, w = eigenvectors_from_products(norm)
    poly = build_polygon(norm, v, w, mu)
    return FigureSpec(polygon=poly, images=images(poly, norm)), poly


def test_renders_well_formed_svg(tmp_path):
    spec, _ = make_spec()
    out = tmp_path / "figure.svg"
    render(spec, out)
    text = out.read_text()
    assert text.startswith("<?xml")
    assert text.count("<polygon") == 3
    assert text.count("<circle") == 12 + 24
    for i in range(1, 13):
        assert f">v{i}<" in text


def test_line_styles_follow_the_legend():
    svg = render_string(make_spec()[0])
    assert 'fill-opacity="0.2"' in svg and 'stroke-width="2"' in svg
    assert 'stroke-dasharray="6 3"' in svg
    assert 'stroke-dasharray="6 3 1 3"' in svg


def test_byte_deterministic(tmp_path):
    spec, _ = make_spec()
    first, second = tmp_path / "a.svg", tmp_path / "b.svg"
    render(spec, first)
    render(spec, second)
    assert first.read_bytes() == second.read_bytes()


def test_failing_parameter_sets_still_render():
    for mu in (1.04, 1.36):
        svg = render_string(make_spec(mu)[0])
        assert svg.count("<polygon") == 3


def test_vertex_coordinates_survive_the_canvas_transform():
    spec, poly = make_spec()
    svg = render_string(spec)
    # Recompute the affine map exactly as documented: uniform scale onto an
    # 800x800 canvas with a 10% margin around the joint bounding box, y down.
    pts = [(float(v.x1), float(v.x2)) for v in poly.vertices]
    pts += [(float(p.x1), float(p.x2)) for p in spec.images.a]
    pts += [(float(p.x1), float(p.x2)) for p in spec.images.b]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys))
    scale = 800 / (span * 1.2)
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    circles = re.findall(r'<circle cx="([-\d.]+)" cy="([-\d.]+)" r="4"', svg)
    assert len(circles) == 12
    for (sx, sy), v in zip(circles, poly.vertices):
        ex = 400 + (float(v.x1) - cx) * scale
        ey = 400 - (float(v.x2) - cy) * scale
        assert abs(float(sx) - ex) < 1e-5
        assert abs(float(sy) - ey) < 1e-5
