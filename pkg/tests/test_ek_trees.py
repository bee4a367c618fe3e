# tests/test_ek_trees.py
import itertools

import pytest

from formation_lab.utils.coloring import Color, EdgeColoring, count_colorings, iter_colorings
from formation_lab.utils.errors import ArgumentError
from formation_lab.utils.ek_trees import (ZERO, ColoredTree, Inapplicable, ReassocMove, SignedTree,
                                          SignedValue, TreeShape, all_shapes, assignment_from_signs,
                                          ek_search, eval_cross, reassociate, replay,
                                          signs_from_coloring, solve_products, tied_graph, tied_signed_trees,
                                          witness_to_cross_path)
from formation_lab.utils.graph_core import trace_faces, validate

LEFT_COMB = TreeShape.parse('((..).)')
RIGHT_COMB = TreeShape.parse('(.(..))')


def test_parse_shape():
    shape = TreeShape.parse('((ab)c)')
    assert shape.code == '((..).)'
    assert shape.leaves == 3
    assert shape.internal_count == 2
    assert str(shape) == '((..).)'


@pytest.mark.parametrize("text", ['((..)', '(..).'])
def test_parse_shape_errors(text):
    with pytest.raises(ArgumentError):
        TreeShape.parse(text)


def test_signed_tree_checks_its_signs():
    with pytest.raises(ArgumentError):
        SignedTree(LEFT_COMB, (1,))
    with pytest.raises(ArgumentError):
        SignedTree(LEFT_COMB, (1, 0))
    assert str(SignedTree(LEFT_COMB, (1, -1))) == '((..).) +-'


def test_reassociation_flips_both_signs():
    moved = reassociate(SignedTree(LEFT_COMB, (1, 1)), ReassocMove(0, 'right'))
    assert moved == SignedTree(RIGHT_COMB, (-1, -1))
    back = reassociate(moved, ReassocMove(0, 'left'))
    assert back == SignedTree(LEFT_COMB, (1, 1))


def test_reassociation_needs_equal_signs():
    result = reassociate(SignedTree(LEFT_COMB, (1, -1)), ReassocMove(0, 'right'))
    assert isinstance(result, Inapplicable)
    assert str(ReassocMove(0, 'right')) == '0R'


def test_search_between_combs():
    same = ek_search(LEFT_COMB, LEFT_COMB)
    assert same.moves == ()
    witness = ek_search(LEFT_COMB, RIGHT_COMB)
    assert len(witness.moves) == 1
    trees = replay(witness)
    assert trees[-1].shape == RIGHT_COMB


def test_search_rejects_different_sizes():
    with pytest.raises(ArgumentError):
        ek_search(LEFT_COMB, TreeShape.parse('(..)'))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_every_pair_of_shapes_is_connected(n):
    for first, second in itertools.product(all_shapes(n), repeat=2):
        assert ek_search(first, second) is not None


@pytest.mark.parametrize("n, expected", [(3, 2), (4, 5), (5, 14)])
def test_shape_counts(n, expected):
    assert len(all_shapes(n)) == expected


@pytest.mark.parametrize("shape, x, expected", [
    ('(..)', 'ij', SignedValue(1, 'k')),
    ('((..).)', 'ijk', ZERO),
    ('((..).)', 'iji', SignedValue(1, 'j')),
    ('(.(..))', 'iji', SignedValue(1, 'j')),
])
def test_eval_cross(shape, x, expected):
    assert eval_cross(TreeShape.parse(shape), tuple(x)) == expected


def test_eval_cross_rejects_bad_input():
    with pytest.raises(ArgumentError):
        eval_cross(LEFT_COMB, ('i', 'j'))
    with pytest.raises(ArgumentError):
        eval_cross(LEFT_COMB, ('i', 'j', 'x'))


def test_solve_products():
    pair = TreeShape.parse('(..)')
    assert len(solve_products(pair, pair)) == 6
    assert ('i', 'j', 'i') in solve_products(LEFT_COMB, RIGHT_COMB)


@pytest.mark.parametrize("n", [3, 4])
def test_nonzero_products_agree(n):
    for first, second in itertools.product(all_shapes(n), repeat=2):
        for x in solve_products(first, second):
            assert eval_cross(first, x) == eval_cross(second, x)


def test_nonzero_products_agree_for_six_leaves():
    shapes = all_shapes(6)
    assert len(shapes) == 42
    for x in itertools.product('ijk', repeat=6):
        values = {eval_cross(shape, x) for shape in shapes} - {ZERO}
        assert len(values) <= 1, x


def test_witness_gives_a_cross_path():
    witness = ek_search(LEFT_COMB, RIGHT_COMB)
    x = assignment_from_signs(witness.start)
    assert witness_to_cross_path(LEFT_COMB, RIGHT_COMB, witness, x)


def test_reassociation_keeps_leaf_colors():
    for start in (SignedTree(LEFT_COMB, (1, 1)), SignedTree(LEFT_COMB, (-1, -1))):
        moved = reassociate(start, ReassocMove(0, 'right'))
        assert ColoredTree.from_signs(start).leaf_colors == ColoredTree.from_signs(moved).leaf_colors


def test_tied_graph_of_two_leaves_is_theta():
    pair = TreeShape.parse('(..)')
    graph = tied_graph(pair, pair)
    assert len(graph.vertices) == 2
    assert len(graph.edges) == 3
    assert count_colorings(graph) == 6


def test_tied_graph_of_combs_is_k4():
    graph = tied_graph(LEFT_COMB, RIGHT_COMB)
    assert len(graph.vertices) == 4
    assert trace_faces(graph).genus == 0


@pytest.mark.parametrize("n", [3, 4])
def test_tied_graphs_are_planar_and_cubic(n):
    for first, second in itertools.product(all_shapes(n), repeat=2):
        diag = validate(tied_graph(first, second))
        assert diag.is_cubic
        assert diag.is_connected
        assert diag.genus == 0


@pytest.mark.parametrize("n", [3, 4])
def test_tied_colorings_read_back_as_signed_trees(n):
    for first, second in itertools.product(all_shapes(n), repeat=2):
        graph = tied_graph(first, second)
        for coloring in iter_colorings(graph):
            left, right = tied_signed_trees(first, second, coloring)
            root = coloring[2 * n - 4]
            ties = tuple(coloring[2 * n - 3 + m] for m in range(n))
            assert ColoredTree.from_signs(left, root).leaf_colors == ties
            assert ColoredTree.from_signs(right, root).leaf_colors == ties


def test_signs_from_theta_coloring(loader):
    graph, coloring = loader.load_coloring('theta')
    assert signs_from_coloring(graph, coloring) == {0: -1, 1: 1}


def test_transposing_two_colors_flips_every_sign(loader):
    graph, coloring = loader.load_coloring('petersen-minus-edge')
    signs = signs_from_coloring(graph, coloring)
    swap = {Color.R: Color.B, Color.B: Color.R, Color.P: Color.P}
    transposed = EdgeColoring.from_mapping({e: swap[c] for e, c in coloring.as_dict().items()})
    assert signs_from_coloring(graph, transposed) == {v: -s for v, s in signs.items()}


def test_signs_need_a_proper_coloring(theta):
    with pytest.raises(ArgumentError):
        signs_from_coloring(theta, EdgeColoring.from_mapping({0: Color.R, 1: Color.R, 2: Color.P}))
