# tests/test_formation.py
import pytest

from formation_lab.utils.coloring import Color, curve_counts, iter_colorings
from formation_lab.utils.errors import GraphParseError, InvalidFormationError, UnsupportedEmbeddingError
from formation_lab.utils.formation import (CurveKind, Formation, InteractionCounts, Segment, alternating_curves,
                                           classify_purple_edges, coloring_to_formation,
                                           formation_curve_counts, formation_to_coloring, idempose,
                                           parse_curves, serialize_formation)
from formation_lab.utils.penrose import sign_product


def test_two_crossings_formation_gives_expected_coloring(loader):
    formation = loader.load_formation('two-crossings')
    _, expected = loader.load_coloring('two-crossings')
    graph, coloring = formation_to_coloring(formation)
    assert coloring == expected
    assert [coloring[e].symbol for e in graph.edge_ids] == list("pbrprbprb")


def test_two_crossings_segments(loader):
    graph, coloring = loader.load_coloring('two-crossings')
    segments = classify_purple_edges(graph, coloring)
    assert segments.crosses == (3, 6)
    assert segments.bounces == (0,)
    assert segments[3] == Segment.CROSS
    assert sign_product(graph, coloring) == 1


def test_theta_has_a_single_bounce(loader):
    graph, coloring = loader.load_coloring('theta')
    segments = classify_purple_edges(graph, coloring)
    assert segments.crosses == ()
    assert segments.bounces == (2,)


def test_coloring_to_formation_families(loader):
    graph, coloring = loader.load_coloring('two-crossings')
    formation = coloring_to_formation(graph, coloring)
    assert len(formation.red_curves) == 1
    assert len(formation.blue_curves) == 1
    assert set(formation.red_curves[0].edges) == {0, 2, 3, 4, 6, 7}
    assert set(formation.blue_curves[0].edges) == {0, 1, 3, 5, 6, 8}
    assert formation_to_coloring(formation)[1] == coloring
    assert formation_curve_counts(formation) == curve_counts(graph, coloring)


def test_serialized_formation_lists_red_first(loader):
    formation = loader.load_formation('two-crossings')
    lines = serialize_formation(formation).splitlines()
    assert [line.split()[1] for line in lines] == ['red', 'blue']
    again = coloring_to_formation(*formation_to_coloring(formation))
    assert serialize_formation(again) == serialize_formation(formation)


@pytest.mark.parametrize("name", ['k4', 'prism'])
def test_bijection_on_every_coloring(loader, name):
    graph = loader.load_graph(name)
    for coloring in iter_colorings(graph):
        assert formation_to_coloring(coloring_to_formation(graph, coloring))[1] == coloring


def test_alternating_curves(loader):
    graph, coloring = loader.load_coloring('theta')
    curves = alternating_curves(graph, coloring)
    assert len(curves) == 1
    assert curves[0].kind == CurveKind.ALTERNATING
    assert set(curves[0].edges) == {0, 1}


def test_overlapping_curves_rejected(loader):
    graph, coloring = loader.load_coloring('theta')
    red = coloring_to_formation(graph, coloring).red_curves[0]
    with pytest.raises(InvalidFormationError):
        formation_to_coloring(Formation(graph, (red, red)))


def test_uncovered_edge_rejected(loader):
    graph, coloring = loader.load_coloring('theta')
    red = coloring_to_formation(graph, coloring).red_curves[0]
    with pytest.raises(InvalidFormationError):
        formation_to_coloring(Formation(graph, (red,)))


def test_open_curve_rejected(theta):
    with pytest.raises(GraphParseError):
        parse_curves("curve red 0\n", theta)
    with pytest.raises(GraphParseError):
        parse_curves("curve green 0 3\n", theta)


def test_segments_need_planar_embedding(loader):
    graph = loader.load_graph('k4-twisted')
    coloring = next(iter_colorings(graph))
    with pytest.raises(UnsupportedEmbeddingError):
        classify_purple_edges(graph, coloring)


@pytest.mark.parametrize("name", ['k4', 'prism'])
def test_sign_product_matches_crossings(loader, name):
    graph = loader.load_graph(name)
    for coloring in iter_colorings(graph):
        crosses = len(classify_purple_edges(graph, coloring).crosses)
        assert sign_product(graph, coloring) == (-1) ** crosses
        purple = sum(1 for e in graph.edge_ids if coloring[e] == Color.P)
        assert len(classify_purple_edges(graph, coloring).classes) == purple


def test_idemposition_counts(loader):
    graph, curves = loader.load_curves('idemposition')
    result, counts = idempose(curves[0], curves[1], graph)
    assert (counts.left, counts.right, counts.bounce) == (1, 1, 1)
    assert counts.p_value == 1
    assert len(result) == 1
    assert len(result[0].edges) == 6
    assert set(result[0].edges) == set(curves[0].edges) ^ set(curves[1].edges)


def test_idemposition_of_a_curve_with_itself(loader):
    graph, curves = loader.load_curves('idemposition')
    result, counts = idempose(curves[0], curves[0], graph)
    assert result == []
    assert (counts.left, counts.right, counts.bounce) == (0, 0, 0)


@pytest.mark.parametrize("left, right, bounce, expected", [
    (0, 0, 0, 0),
    (1, 1, 1, 1),
    (3, 1, 1, 0),
    (0, 2, 0, 1),
    (2, 0, 3, 0),
])
def test_p_value_is_a_parity(left, right, bounce, expected):
    assert InteractionCounts(left, right, bounce).p_value == expected


def test_p_value_rejects_odd_crossing_difference():
    with pytest.raises(InvalidFormationError):
        InteractionCounts(2, 1, 0).p_value


def _red_curves(graph):
    curves = {}
    for coloring in iter_colorings(graph):
        for curve in coloring_to_formation(graph, coloring).red_curves:
            curves.setdefault(frozenset(curve.edges), curve)
    return curves


def test_bounce_changes_result_parity(loader):
    theta = loader.load_graph('theta')
    curves = _red_curves(theta)
    first, second = curves[frozenset({0, 2})], curves[frozenset({1, 2})]
    touching, counts = idempose(first, second, theta)
    assert (counts.left, counts.right, counts.bounce) == (0, 0, 1)
    assert len(touching) == 1

    graph, coloring = loader.load_coloring('curve-count-change')
    apart = coloring_to_formation(graph, coloring).red_curves
    assert len(apart) == 2
    separated, counts = idempose(apart[0], apart[1], graph)
    assert (counts.left, counts.right, counts.bounce) == (0, 0, 0)
    assert len(separated) == 2
    assert len(touching) % 2 != len(separated) % 2
