# tests/test_graph_core.py
import pytest

from formation_lab.utils.errors import ArgumentError, GraphParseError
from formation_lab.utils.graph_core import (CubicGraph, EdgePairing, VertexRotation, disjoint_union,
                                            find_bridges, generate_planar_cubic, parse_graph,
                                            serialize_graph, theta_graph, to_networkx, trace_faces,
                                            validate, walk_cycles)

THETA_TEXT = (
    "vertex 0 0 2 4\n"
    "vertex 1 1 5 3\n"
    "edge 0 0 1\n"
    "edge 1 2 3\n"
    "edge 2 4 5\n"
)


def test_parse_and_serialize_theta():
    graph = parse_graph(THETA_TEXT)
    assert len(graph.vertices) == 2
    assert len(graph.edges) == 3
    assert serialize_graph(graph) == THETA_TEXT
    assert serialize_graph(theta_graph()) == THETA_TEXT


def test_parse_ignores_comments_and_blank_lines():
    graph = parse_graph("# thêta\n\n" + THETA_TEXT.replace("edge 2 4 5", "edge 2 4 5  # dernière"))
    assert graph.edge_ids == (0, 1, 2)


def test_theta_accessors(theta):
    assert theta.endpoints(0) == (0, 1)
    assert theta.opposite(2) == 3
    assert theta.successor(0) == 2
    assert theta.predecessor(0) == 4
    assert theta.dart_at(1, 2) == 5
    assert theta.incident_edges(0) == (0, 1, 2)
    assert not theta.is_loop(0)


def test_non_cubic_vertex_reports_line():
    with pytest.raises(GraphParseError) as excinfo:
        parse_graph("vertex 0 0 1\n")
    assert excinfo.value.line == 1
    assert excinfo.value.reason == "non_cubic_vertex"


def test_duplicate_dart_rejected():
    with pytest.raises(GraphParseError) as excinfo:
        parse_graph("vertex 0 0 1 2\nvertex 1 2 3 4\n")
    assert excinfo.value.line == 2
    assert excinfo.value.reason == "duplicate_dart"


def test_edge_on_unknown_dart_rejected():
    with pytest.raises(GraphParseError) as excinfo:
        parse_graph(THETA_TEXT + "edge 3 6 7\n")
    assert excinfo.value.line == 6
    assert excinfo.value.reason == "dart_usage"


def test_unpaired_dart_rejected():
    with pytest.raises(GraphParseError) as excinfo:
        parse_graph(THETA_TEXT.replace("edge 2 4 5\n", ""))
    assert excinfo.value.reason == "dart_usage"


@pytest.mark.parametrize("text", [
    "node 0 0 1 2\n",
    "vertex a 0 1 2\n",
    "cross 0 0 1 2 3\nedge 0 0 2\nedge 1 1 3\n",
])
def test_malformed_lines_rejected(text):
    with pytest.raises(GraphParseError):
        parse_graph(text)


def test_crossings_allowed_for_diagrams():
    diagram = parse_graph("cross 0 0 1 2 3\nedge 0 0 2\nedge 1 1 3\n", allow_crossings=True)
    assert len(diagram.crossings) == 1
    assert diagram.trivalent == ()


def test_constructor_rejects_shared_dart():
    with pytest.raises(ArgumentError):
        CubicGraph((VertexRotation(0, (0, 1, 2)), VertexRotation(1, (2, 3, 4))),
                   (EdgePairing(0, (0, 3)),))


def test_faces_and_genus(loader):
    assert trace_faces(loader.load_graph('theta')).count == 3
    assert trace_faces(loader.load_graph('k4')).count == 4
    assert trace_faces(loader.load_graph('k4')).genus == 0
    assert trace_faces(loader.load_graph('k4-twisted')).genus == 1
    assert trace_faces(loader.load_graph('prism')).count == 5
    assert trace_faces(loader.load_graph('petersen')).genus >= 1


def test_dumbbell_diagnostics(loader):
    diag = validate(loader.load_graph('dumbbell'))
    assert diag.is_cubic
    assert diag.is_connected
    assert diag.loops == (0, 2)
    assert diag.bridges == (1,)
    assert diag.genus == 0
    assert not diag.is_bridgeless_planar


def test_parallel_edges_are_not_bridges(theta):
    assert find_bridges(theta) == ()
    assert validate(theta).is_bridgeless_planar


def test_networkx_view_keeps_parallel_edges(theta):
    multi = to_networkx(theta)
    assert multi.number_of_nodes() == 2
    assert multi.number_of_edges() == 3


def test_disjoint_union_counts_components(theta):
    union = disjoint_union(theta, theta)
    assert len(union.vertices) == 4
    assert len(union.edges) == 6
    faces = trace_faces(union)
    assert faces.count == 6
    assert faces.genus == 0
    assert not validate(union).is_connected


def test_walk_cycles_requires_degree_two(theta):
    with pytest.raises(ArgumentError):
        walk_cycles(theta, [0, 1, 2])
    cycles = walk_cycles(theta, [1, 2])
    assert len(cycles) == 1
    assert sorted(theta.edge_of(d) for d in cycles[0]) == [1, 2]


@pytest.mark.parametrize("size", [2, 4, 8, 12])
def test_generator_produces_bridgeless_planar_cubic(size):
    graph = generate_planar_cubic(7, size)
    assert len(graph.vertices) == size
    assert len(graph.edges) == 3 * size // 2
    assert validate(graph).is_bridgeless_planar


def test_generator_is_deterministic():
    assert serialize_graph(generate_planar_cubic(42, 10)) == serialize_graph(generate_planar_cubic(42, 10))


@pytest.mark.parametrize("size", [0, 3, 7])
def test_generator_rejects_bad_sizes(size):
    with pytest.raises(ArgumentError):
        generate_planar_cubic(1, size)
