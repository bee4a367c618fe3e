# tests/test_data_loader.py
import pandas as pd
import pytest

from formation_lab.utils import FigureGenerator, FixtureLoader, Report
from formation_lab.utils.data_loader import save_state
from formation_lab.utils.errors import ArgumentError


def test_list_fixtures(loader):
    frame = loader.list_fixtures()
    assert len(frame) == 21
    assert frame['available'].all()
    assert set(frame.columns) == {'fixture', 'figure', 'description', 'files', 'available'}


@pytest.mark.parametrize("alias, name", [
    ('fig1', 'dumbbell'),
    ('fig10', 'petersen-minus-edge'),
    ('fig11', 'blue-trail'),
    ('fig16', 'factorizable-trail'),
    ('fig19', 'culprit-two'),
])
def test_figure_aliases(loader, alias, name):
    assert loader.resolve(alias) == name
    assert loader.entry(alias) is loader.entry(name)


def test_unknown_figure_alias(loader):
    with pytest.raises(ArgumentError):
        loader.resolve('fig4')
    with pytest.raises(ArgumentError):
        loader.resolve('figure')


def test_figure_aliases_share_files(loader):
    blue = loader.load_deficient('fig11')
    factorizable = loader.load_deficient('fig16')
    assert blue.coloring == factorizable.coloring
    assert len(blue.graph.vertices) == 8


def test_unknown_fixture(loader):
    with pytest.raises(ArgumentError):
        loader.load_graph('cube')


def test_fixture_without_coloring(loader):
    with pytest.raises(ArgumentError):
        loader.load_coloring('petersen')
    with pytest.raises(ArgumentError):
        loader.load_deficient('theta')


def test_missing_fixture_directory(tmp_path):
    empty = FixtureLoader(str(tmp_path))
    assert not empty.list_fixtures()['available'].any()
    with pytest.raises(ArgumentError):
        empty.load_graph('theta')


def test_save_state_can_be_reloaded(loader, tmp_path):
    state = loader.load_deficient('culprit-one')
    graph_path, state_path = save_state(state, str(tmp_path), 'copie')
    replayed = FixtureLoader(str(tmp_path))
    replayed.registry = {'copie': {'graph': 'copie.graph', 'deficient': 'copie.deficient', 'description': ''}}
    again = replayed.load_deficient('copie')
    assert again.empty_edges == state.empty_edges
    assert again.coloring == state.coloring
    assert graph_path.endswith('copie.graph')
    assert state_path.endswith('copie.deficient')


def test_report_lines_and_exit_code(tmp_path):
    report = Report('demo')
    report.add('vertices', 4)
    report.check('ok', True)
    report.check('ok', False, graph=2)
    with report.timed('step'):
        pass
    lines = report.lines()
    assert lines[0] == 'command=demo'
    assert 'vertices=4' in lines
    assert 'check.ok=fail total=2 failed=1' in lines
    assert lines[-1] == 'status=fail'
    assert report.exit_code == 1
    assert report.summary() == {'checks': 2, 'failed': 1}
    path = report.save(str(tmp_path))
    frame = pd.read_csv(path)
    assert list(frame['check']) == ['ok', 'ok']
    assert (tmp_path / 'demo_report.txt').read_text(encoding='utf-8') == report.render()


def test_empty_report_passes():
    report = Report('vide')
    assert report.passed
    assert report.exit_code == 0
    assert report.summary() == {'checks': 0, 'failed': 0}


def test_dot_marks_empty_edges(loader):
    state = loader.load_deficient('theta-trail')
    dot = FigureGenerator().to_dot(state.graph, state.coloring)
    assert dot.count(' -- ') == 3
    assert dot.count('style=dashed') == 1


def test_svg_figure(loader, tmp_path):
    graph, coloring = loader.load_coloring('petersen-minus-edge')
    path = FigureGenerator().draw(graph, coloring, str(tmp_path / 'petersen_minus_edge.svg'),
                                  title='petersen-minus-edge')
    assert (tmp_path / 'petersen_minus_edge.svg').read_text(encoding='utf-8').lstrip().startswith('<?xml')
    assert path.endswith('petersen_minus_edge.svg')
