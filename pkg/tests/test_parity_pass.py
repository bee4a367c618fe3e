# tests/test_parity_pass.py
import pytest

from formation_lab.utils.coloring import RB, Color, is_proper
from formation_lab.utils.errors import ArgumentError
from formation_lab.utils.parity_pass import (CompletedBySimpleOps, Inapplicable, PassOperation, Stage,
                                             begin_round, complete_over_empty_edge, direct_completion,
                                             fill_empty_edge, find_two_color_path, locate_pentagon,
                                             parity_pass_step, run_parity_pass,
                                             simple_op_completion_search)

R, B, P = Color.R, Color.B, Color.P


@pytest.fixture
def culprit(loader):
    return loader.load_deficient('culprit-one')


def test_theta_trail_two_color_path(loader):
    state = loader.load_deficient('theta-trail')
    path = find_two_color_path(state)
    assert path.pair == RB
    assert path.edges == (1,)
    assert path.fill_color == P
    assert complete_over_empty_edge(state, path).as_dict() == {0: P, 1: B, 2: R}


def test_stale_path_rejected(loader):
    state = loader.load_deficient('theta-trail')
    path = find_two_color_path(state)
    filled = fill_empty_edge(state, path)
    with pytest.raises(ArgumentError):
        fill_empty_edge(filled, path)


def test_k4_trail_completes_directly(loader):
    state = loader.load_deficient('k4-trail')
    found = direct_completion(state)
    assert found is not None
    operations, coloring = found
    assert len(operations) == 1
    assert is_proper(state.graph, coloring)


def test_locate_pentagon(culprit):
    p = locate_pentagon(culprit)
    assert (p.a, p.c, p.d, p.g, p.b) == (0, 1, 2, 8, 7)
    assert p.e == 0


def test_locate_pentagon_needs_a_pentagonal_face(loader):
    with pytest.raises(ArgumentError):
        locate_pentagon(loader.load_deficient('theta-trail'))


def test_culprit_steps(culprit):
    state = begin_round(culprit, locate_pentagon(culprit))
    assert state.stage == Stage.START
    assert direct_completion(state.current) is None

    after_a = parity_pass_step(state, 'A')
    assert after_a.stage == Stage.AFTER_A
    op = after_a.log[-1]
    assert set(op.edges) == {0, 3, 4, 5, 6, 7, 8, 15}
    assert op.color == 'b'
    assert after_a.current.empty_edges == (15,)
    assert direct_completion(after_a.current) is None

    after_b = parity_pass_step(after_a, 'B')
    assert after_b.stage == Stage.AFTER_B
    assert set(after_b.log[-1].edges) == {0, 7, 8, 9, 13, 16, 17}
    assert direct_completion(after_b.current) is None

    after_c = parity_pass_step(after_b, 'C')
    assert after_c.stage == Stage.AFTER_C
    assert set(after_c.log[-1].edges) == {0, 1, 4, 8, 9, 10, 19, 20}
    assert after_c.current.empty_edges == (0, 15)
    assert direct_completion(after_c.current) is None

    blocked = parity_pass_step(after_c, 'D')
    assert isinstance(blocked, Inapplicable)
    assert blocked.step == 'D'
    assert 'r-p' in blocked.reason


def test_step_order_is_enforced(culprit):
    state = begin_round(culprit, locate_pentagon(culprit))
    with pytest.raises(ArgumentError):
        parity_pass_step(state, 'C')
    with pytest.raises(ArgumentError):
        parity_pass_step(state, 'F')


def test_run_parity_pass_on_culprit(culprit):
    outcome = run_parity_pass(culprit)
    assert isinstance(outcome, CompletedBySimpleOps)
    assert outcome.stage == 'D-inapplicable'
    assert is_proper(culprit.graph, outcome.coloring)
    labels = [op.label for op in outcome.operations]
    start = labels.index('A')
    assert labels[start:start + 3] == ['A', 'B', 'C']


def test_completion_search_after_step_c(culprit):
    state = begin_round(culprit, locate_pentagon(culprit))
    for step in 'ABC':
        state = parity_pass_step(state, step)
    search = simple_op_completion_search(state.current)
    assert search.found
    assert is_proper(culprit.graph, search.coloring)
    assert search.operations[0].kind == 'simple'


def test_completion_search_budget(culprit):
    search = simple_op_completion_search(culprit, budget=1)
    assert not search.found
    assert search.status == 'budget'


def test_operation_line():
    op = PassOperation('complex', 'A', (0, 3), 'b', (1, 2, 3), 'note')
    assert op.to_line() == "complex A color=b edges=0,3 R=1 B=2 Alt=3 note=note"


def test_colorable_trail_completes_over_a_two_color_path(loader):
    state = loader.load_deficient('colorable-trail')
    path = find_two_color_path(state)
    assert path is not None
    assert path.pair == RB
    assert path.edges == (4, 7, 1)
    completed = complete_over_empty_edge(state, path)
    assert is_proper(state.graph, completed)
    assert completed[0] == P
    search = simple_op_completion_search(state)
    assert search.found
    assert search.explored == 1


@pytest.fixture
def culprit_two(loader):
    return loader.load_deficient('culprit-two')


def test_culprit_two_pentagon(culprit_two):
    pentagon = locate_pentagon(culprit_two)
    assert (pentagon.a, pentagon.c, pentagon.d, pentagon.g, pentagon.b) == (0, 1, 2, 20, 19)
    assert (pentagon.s_ac, pentagon.s_cd, pentagon.s_dg, pentagon.s_gb) == (1, 2, 35, 20)
    assert (pentagon.a_out, pentagon.c_up, pentagon.d_right, pentagon.g_right, pentagon.b_out) == (19, 46, 3, 21, 34)


def test_culprit_two_stops_at_step_c(culprit_two):
    state = begin_round(culprit_two, locate_pentagon(culprit_two))
    assert direct_completion(state.current) is None
    state = parity_pass_step(state, 'A')
    assert state.stage == Stage.AFTER_A
    assert state.current.empty_edges == (35,)
    assert direct_completion(state.current) is None
    state = parity_pass_step(state, 'B')
    assert state.stage == Stage.AFTER_B
    assert direct_completion(state.current) is None
    result = parity_pass_step(state, 'C')
    assert isinstance(result, Inapplicable)
    assert result.step == 'C'


def test_run_parity_pass_on_culprit_two(culprit_two):
    outcome = run_parity_pass(culprit_two)
    assert isinstance(outcome, CompletedBySimpleOps)
    assert outcome.stage == 'C-inapplicable'
    assert [op.label for op in outcome.operations[:2]] == ['A', 'B']
    assert is_proper(culprit_two.graph, outcome.coloring)
