# tests/test_trails.py
import pytest

from formation_lab.utils.coloring import BP, RB, RP, Color, EdgeColoring, is_proper
from formation_lab.utils.errors import ArgumentError, InvalidFormationError, ResourceBoundError
from formation_lab.utils.graph_core import generate_planar_cubic, validate
from formation_lab.utils.trails import (DeficientFormation, FactoredWitness, Prime, Trail, as_trail,
                                        complex_operation, curve_count, curve_counts,
                                        enumerate_deficient, is_factored, kempe_swap,
                                        parse_deficient, primality_search, reduced_coloring,
                                        serialize_deficient, trail_graphs)

R, B, P = Color.R, Color.B, Color.P


def test_theta_trail_reduces_to_a_free_loop(loader):
    state = loader.load_deficient('theta-trail')
    reduced, full = trail_graphs(state)
    assert full is state.graph
    assert reduced.vertices == ()
    assert reduced.free_loops == 1
    assert len(reduced_coloring(state)) == 0
    assert state.contextual_colors() == (R, R)


def test_petersen_trail_is_prime(loader):
    state = loader.load_deficient('petersen-trail')
    assert curve_counts(state) == (1, 2, 2)
    assert curve_count(state) == 5
    reduced, _ = trail_graphs(state)
    assert len(reduced.vertices) == 8
    assert len(reduced.edges) == 12
    assert validate(reduced).is_cubic
    assert is_proper(reduced, reduced_coloring(state))
    verdict = primality_search(state)
    assert isinstance(verdict, Prime)
    assert verdict.colorings_checked == 18


def test_digon_trail_is_factored(loader):
    state = loader.load_deficient('digon-trail')
    report = is_factored(state)
    assert report.factored
    assert [set(c.edges) for c in report.witness] == [{6, 7}]
    verdict = primality_search(state)
    assert isinstance(verdict, FactoredWitness)
    assert verdict.report.factored


def test_k4_trail_is_not_factored(loader):
    state = loader.load_deficient('k4-trail')
    assert state.contextual_colors() == (R, B)
    assert not is_factored(state).factored


def test_contextual_curves(loader):
    trail = as_trail(loader.load_deficient('theta-trail'))
    assert isinstance(trail, Trail)
    curves = trail.contextual_curves()
    assert len(curves) == 1
    assert set(curves[0].edges) == {1, 2}


def test_mismatched_halves_rejected(theta):
    with pytest.raises(InvalidFormationError):
        parse_deficient("empty 0\ncolor 1 r\ncolor 2 b\n", theta)


def test_trail_needs_one_empty_edge(loader):
    graph, coloring = loader.load_coloring('theta')
    with pytest.raises(InvalidFormationError):
        Trail(graph, coloring, ())
    with pytest.raises(ArgumentError):
        DeficientFormation(graph, coloring).empty_edge


def test_uncolored_edge_rejected(theta):
    with pytest.raises(InvalidFormationError):
        DeficientFormation(theta, EdgeColoring.from_mapping({1: R, 2: R}))


def test_enumerate_deficient(theta):
    states = list(enumerate_deficient(theta, (0,)))
    assert len(states) == 3
    assert {s.coloring[1] for s in states} == {R, B, P}
    assert all(s.coloring[1] == s.coloring[2] for s in states)


def test_serialize_deficient(loader):
    state = loader.load_deficient('theta-trail')
    assert serialize_deficient(state) == "color 1 r\ncolor 2 r\nempty 0\n"


def test_complex_operation_needs_a_cycle(loader):
    state = loader.load_deficient('theta-trail')
    with pytest.raises(ArgumentError):
        complex_operation(state, (1,), P)
    filled = complex_operation(state, (0, 1), P)
    assert filled.is_complete
    assert filled.coloring.as_dict() == {0: P, 1: B, 2: R}


def test_complex_operation_can_empty_an_edge(loader):
    graph, coloring = loader.load_coloring('theta')
    state = DeficientFormation(graph, coloring)
    emptied = complex_operation(state, (0, 1), R)
    assert emptied.empty_edges == (0,)
    assert emptied.coloring.as_dict() == {1: P, 2: P}


def test_kempe_swap_rejects_stale_circuit(loader):
    state = loader.load_deficient('k4-trail')
    circuit = state.components(RB)[0]
    swapped = kempe_swap(state, circuit)
    assert swapped.empty_edges == state.empty_edges
    other = kempe_swap(swapped, next(c for c in swapped.components(RB) if c.edges == circuit.edges))
    assert other == state
    stale = next(c for c in state.components(RP) if 1 in c.edges)
    with pytest.raises(ArgumentError):
        kempe_swap(swapped, stale)


def test_primality_search_is_bounded():
    graph = generate_planar_cubic(3, 22)
    state = next(enumerate_deficient(graph, (0,)))
    with pytest.raises(ResourceBoundError):
        primality_search(state)


@pytest.mark.parametrize("index", range(4))
def test_swapping_a_petersen_contextual_curve(loader, index):
    trail = as_trail(loader.load_deficient('petersen-trail'))
    curves = trail.contextual_curves()
    assert len(curves) == 4
    swapped = kempe_swap(trail, curves[index])
    assert curve_count(swapped) == 4
    assert not is_factored(swapped).factored


def test_blue_trail_factors_after_swapping_the_upper_curve(loader):
    state = loader.load_deficient('blue-trail')
    assert state.contextual_colors() == (B, B)
    report = is_factored(state)
    assert not report.factored
    assert report.components == 1
    bottom, top = state.graph.endpoints(state.empty_edge)
    upper = state.component_through(BP, top)
    assert not upper.contains_vertex(state.graph, bottom)
    swapped = kempe_swap(state, upper)
    assert swapped.contextual_colors() == (B, P)
    report = is_factored(swapped)
    assert report.factored
    assert set(report.witness[0].edges) == {3, 7, 9, 10}


def test_factorizable_trail_has_a_witness(loader):
    verdict = primality_search(loader.load_deficient('fig16'))
    assert isinstance(verdict, FactoredWitness)
    assert verdict.report.factored


def test_purple_trail_is_not_factored(loader):
    state = loader.load_deficient('purple-trail')
    assert state.contextual_colors() == (P, P)
    report = is_factored(state)
    assert not report.factored
    assert report.components == 0


def test_colorable_trail_reduced_coloring(loader):
    state = loader.load_deficient('colorable-trail')
    assert state.contextual_colors() == (B, B)
    assert curve_counts(state) == (1, 2, 1)
    reduced, _ = trail_graphs(state)
    assert is_proper(reduced, reduced_coloring(state))
