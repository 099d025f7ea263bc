import re

import pytest

from arrkit import boolean, find_simple_triangle, triangle_member, weyl_arrangement
from arrkit.chambers import PreconditionError
from arrkit.svg import ChartError, auto_chart, emit_projective_svg, projective_svg


def test_triangle_picture_is_deterministic(tmp_path):
    a = triangle_member(-2)
    w = find_simple_triangle(a)
    chart = auto_chart(a, w)
    first = projective_svg(a, chart, w)
    out = tmp_path / "t.svg"
    emit_projective_svg(a, chart, w, out)
    assert out.read_text() == first == projective_svg(a, chart, w)
    assert first.count("<line") == 6
    assert first.count("<polygon") == 1
    assert len(re.findall(r"<title>", first)) == 6


def test_vertex_dots_scale_with_multiplicity():
    a = triangle_member(-2)
    text = projective_svg(a, (1, 2, 5))
    radii = {float(r) for r in re.findall(r'<circle [^>]*r="([0-9.]+)"', text)}
    assert radii <= {3.0, 4.5}


def test_boolean_picture():
    text = projective_svg(boolean(3), (1, 1, 1))
    assert text.count("<line") == 3 and "<polygon" not in text
    assert text.count("<circle") == 3


def test_chart_errors():
    a = boolean(3)
    with pytest.raises(ChartError):
        projective_svg(a, (1, 0, 0))
    with pytest.raises(ChartError):
        projective_svg(a, (0, 0, 0))
    w = find_simple_triangle(a)
    # the all-positive orthant is bounded only when the chart is positive on it
    neg = tuple(-s for s in w.chamber.sign_vector)
    with pytest.raises(ChartError):
        projective_svg(a, (neg[0] * 1, neg[1] * 2, -neg[2] * 3), w)


def test_rank_precondition():
    with pytest.raises(PreconditionError):
        projective_svg(weyl_arrangement("A", 3), (1, 2, 3, 4))


def test_auto_chart_bounds_the_triangle():
    a = triangle_member(-2)
    w = find_simple_triangle(a)
    chart = auto_chart(a, w)
    assert tuple(chart) not in a.normal_set()
    assert "<polygon" in projective_svg(a, chart, w)
