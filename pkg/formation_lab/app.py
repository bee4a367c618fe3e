# formation_lab/app.py
"""Ligne de commande du moteur de formations"""
import argparse
import logging
import os
import sys

from .config import Config, RunConfig
from .utils import coloring as col
from .utils import ek_trees as ek
from .utils import formation as fm
from .utils import harness
from .utils import parity_pass as pp
from .utils import penrose as pr
from .utils import trails as tr
from .utils.data_loader import FixtureLoader, save_state
from .utils.errors import (ArgumentError, GraphParseError, InvalidFormationError,
                           ResourceBoundError, UnsupportedEmbeddingError)
from .utils.figure_generator import FigureGenerator
from .utils.graph_core import serialize_graph, trace_faces, validate
from .utils.report import Report

logger = logging.getLogger(__name__)


def _graph_from(args, loader: FixtureLoader, allow_crossings: bool = False):
    if args.graph:
        return loader.read_graph(args.graph, allow_crossings=allow_crossings)
    if args.fixture:
        return loader.load_graph(args.fixture)
    return None


def _emit(run: RunConfig, graph, coloring, stem: str, report: Report) -> None:
    if run.emit == 'none':
        return
    os.makedirs(run.out, exist_ok=True)
    figures = FigureGenerator()
    if run.emit == 'dot':
        path = os.path.join(run.out, f"{stem}.dot")
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(figures.to_dot(graph, coloring))
    else:
        path = figures.draw(graph, coloring, os.path.join(run.out, f"{stem}.svg"), title=stem)
    report.add('figure', path)


def _corpus(run: RunConfig):
    return harness.build_corpus(run.seed, run.corpus, run.max_vertices)


def cmd_validate(args, run: RunConfig, loader: FixtureLoader) -> Report:
    report = Report('validate')
    graph = _graph_from(args, loader)
    if graph is not None:
        diag = validate(graph)
        report.add('vertices', len(graph.vertices))
        report.add('edges', len(graph.edges))
        report.add('faces', trace_faces(graph).count)
        report.add('genus', diag.genus)
        report.add('cubic', diag.is_cubic)
        report.add('connected', diag.is_connected)
        report.add('loops', ','.join(map(str, diag.loops)) or '-')
        report.add('bridges', ','.join(map(str, diag.bridges)) or '-')
        _emit(run, graph, None, args.fixture or 'graph', report)
        return report
    with report.timed('corpus'):
        for index, graph in enumerate(_corpus(run)):
            report.check('bridgeless_planar', validate(graph).is_bridgeless_planar, graph=index)
    report.add('corpus', run.corpus)
    return report


def cmd_color(args, run: RunConfig, loader: FixtureLoader) -> Report:
    report = Report('color')
    graph = _graph_from(args, loader)
    graphs = [graph] if graph is not None else _corpus(run)
    with report.timed('count'):
        for index, g in enumerate(graphs):
            count = col.count_colorings(g)
            if graph is not None:
                report.add('colorings', count)
            if len(g.edges) <= Config.BRUTE_FORCE_EDGES:
                report.check('count_matches_brute_force', count == col.brute_force_colorings(g), graph=index)
    return report


def cmd_formation(args, run: RunConfig, loader: FixtureLoader) -> Report:
    report = Report('formation')
    if args.fixture and 'formation' in loader.entry(args.fixture):
        formation = loader.load_formation(args.fixture)
        graph, coloring = fm.formation_to_coloring(formation)
        again = fm.coloring_to_formation(graph, coloring)
        report.check('round_trip', fm.serialize_formation(again) == fm.serialize_formation(formation))
        segments = fm.classify_purple_edges(graph, coloring)
        report.add('red_curves', len(formation.red_curves))
        report.add('blue_curves', len(formation.blue_curves))
        report.add('crosses', len(segments.crosses))
        report.add('bounces', len(segments.bounces))
        report.check('sign_product', pr.sign_product(graph, coloring) == (-1) ** len(segments.crosses))
        _emit(run, graph, coloring, args.fixture, report)
        return report
    if args.fixture and 'curves' in loader.entry(args.fixture):
        graph, curves = loader.load_curves(args.fixture)
        result, counts = fm.idempose(curves[0], curves[1], graph)
        report.add('left', counts.left)
        report.add('right', counts.right)
        report.add('bounce', counts.bounce)
        report.add('result_curves', len(result))
        report.check('idemposition_parity', len(result) % 2 == counts.p_value)
        return report
    corpus = _corpus(run)
    with report.timed('bijection'):
        sweep = harness.bijection_sweep(corpus)
    report.add('colorings_checked', sweep.checked)
    report.check('bijection', sweep.passed, failures=len(sweep.failures))
    with report.timed('idemposition'):
        idem = harness.idemposition_sweep(corpus)
    report.add('idemposition_pairs', idem.checked)
    if idem.checked < Config.IDEMPOSITION_PAIRS:
        report.add('idemposition_target', f"{Config.IDEMPOSITION_PAIRS} (non atteint)")
    report.check('idemposition_parity', idem.passed, failures=len(idem.failures))
    return report


def cmd_parity(args, run: RunConfig, loader: FixtureLoader) -> Report:
    report = Report('parity')
    if args.fixture:
        graph, coloring = loader.load_coloring(args.fixture)
        before = col.delta_and_parity(graph, coloring)
        report.add('delta', before.delta)
        report.add('counts', '/'.join(map(str, before.counts)))
        flips = 0
        for circuit in col.all_circuits(graph, coloring):
            after = col.delta_and_parity(graph, col.simple_operation(graph, coloring, circuit))
            flips += int(after.parity != before.parity)
            report.add(f"op.{circuit.pair.name}.{min(circuit.edges)}", f"{before.delta}->{after.delta}")
        report.add('parity_flips', flips)
        report.add('genus', trace_faces(graph).genus)
        if trace_faces(graph).genus == 0:
            report.check('parity_preserved', flips == 0)
        _emit(run, graph, coloring, args.fixture, report)
        return report
    corpus = _corpus(run)
    with report.timed('parity'):
        sweep = harness.parity_sweep(corpus)
    report.add('operations_checked', sweep.checked)
    report.check('parity_preserved', sweep.passed, failures=len(sweep.failures))
    with report.timed('segments'):
        segments = harness.segment_sweep(corpus)
    report.check('sign_product', segments.passed, failures=len(segments.failures))
    return report


def cmd_penrose(args, run: RunConfig, loader: FixtureLoader) -> Report:
    report = Report('penrose')
    graph = _graph_from(args, loader, allow_crossings=True)
    if graph is not None:
        crossed = {rot.vid for rot in graph.crossings}
        if not crossed and trace_faces(graph).genus != 0:
            raise UnsupportedEmbeddingError("Formule de Penrose réservée aux plongements planaires")
        bracket = pr.bracket_state_sum(graph).value
        report.add('bracket', bracket)
        report.add('crossings', len(crossed))
        if not crossed:
            count = col.count_colorings(graph)
            report.add('colorings', count)
            report.check('bracket_equals_count', bracket == count)
        for eid in graph.edge_ids:
            if graph.is_loop(eid) or crossed & set(graph.endpoints(eid)):
                continue
            report.check('recursion', pr.recursion_check(graph, eid), edge=eid)
        return report
    with report.timed('penrose'):
        sweep = harness.penrose_sweep(_corpus(run), seed=run.seed)
    report.add('graphs_checked', sweep.checked)
    report.check('penrose', sweep.passed, failures=len(sweep.failures))
    return report


def cmd_trail(args, run: RunConfig, loader: FixtureLoader) -> Report:
    report = Report('trail')
    if args.fixture:
        state = loader.load_deficient(args.fixture)
        reduced, _ = tr.trail_graphs(state)
        report.add('reduced_vertices', len(reduced.vertices))
        report.add('curve_counts', '/'.join(map(str, tr.curve_counts(state))))
        report.check('reduced_coloring_proper', col.is_proper(reduced, tr.reduced_coloring(state)))
        factored = tr.is_factored(state)
        report.add('factored', factored.factored)
        verdict = tr.primality_search(state)
        report.add('verdict', 'prime' if isinstance(verdict, tr.Prime) else 'factored')
        path = pp.find_two_color_path(state)
        report.add('completable', path is not None)
        _emit(run, state.graph, state.coloring, args.fixture, report)
        return report
    with report.timed('trails'):
        sweep, verdicts = harness.trail_sweep(_corpus(run))
    report.add('trails_checked', sweep.checked)
    report.add('prime', verdicts['prime'])
    report.add('factored', verdicts['factored'])
    report.check('reduced_coloring_proper', sweep.passed, failures=len(sweep.failures))
    return report


def cmd_paritypass(args, run: RunConfig, loader: FixtureLoader) -> Report:
    report = Report('paritypass')
    if args.fixture:
        state = loader.load_deficient(args.fixture)
        outcome = pp.run_parity_pass(state, max_rounds=run.rounds, budget=run.budget)
        report.add('outcome', type(outcome).__name__)
        if isinstance(outcome, pp.CompletedBySimpleOps):
            report.add('stage', outcome.stage)
            for k, op in enumerate(outcome.operations):
                report.add(f"op{k}", op.to_line())
            report.check('completion_proper', col.is_proper(state.graph, outcome.coloring))
        elif isinstance(outcome, pp.Falsified):
            report.add('stage', outcome.stage)
            report.add('falsifier', save_state(outcome.state.current, run.out, f"falsifier_{args.fixture}")[1])
            report.check('no_falsifier', False)
        else:
            report.add('rounds', outcome.rounds)
        return report
    instances = harness.pentagon_instances(run.seed, run.corpus, run.max_vertices)
    with report.timed('pass'):
        outcomes = harness.pentagon_sweep(instances, rounds=run.rounds, budget=run.budget)
    report.add('instances', len(instances))
    report.add('completed', outcomes['completed'])
    report.add('exhausted', outcomes['exhausted'])
    report.add('skipped', outcomes['skipped'])
    report.add('stages', ','.join(f"{stage}:{n}" for stage, n in sorted(outcomes['stages'].items())) or '-')
    for k, outcome in enumerate(outcomes['falsified']):
        _, path = save_state(outcome.state.current, run.out, f"falsifier_{run.seed}_{k}")
        report.add(f"falsifier{k}", path)
    report.check('no_falsifier', not outcomes['falsified'], count=len(outcomes['falsified']))
    return report


def cmd_ek(args, run: RunConfig, loader: FixtureLoader) -> Report:
    report = Report('ek')
    if args.left and args.right:
        pairs = [(ek.TreeShape.parse(args.left), ek.TreeShape.parse(args.right))]
    else:
        pairs = [(l, r) for n in range(2, args.leaves + 1)
                 for l in ek.all_shapes(n) for r in ek.all_shapes(n)]
    with report.timed('ek'):
        for left, right in pairs:
            witness = ek.ek_search(left, right)
            name = f"{left.code}~{right.code}"
            if not report.check('witness_found', witness is not None, pair=name):
                continue
            if len(pairs) == 1:
                report.add('moves', ' '.join(str(m) for m in witness.moves) or '-')
                report.add('start_signs', str(witness.start))
            x = ek.assignment_from_signs(witness.start)
            report.check('cross_path', ek.witness_to_cross_path(left, right, witness, x), pair=name)
            solutions = ek.solve_products(left, right)
            report.check('cross_product_equality',
                         all(ek.eval_cross(left, s) == ek.eval_cross(right, s) for s in solutions), pair=name)
            colorable = next(col.iter_colorings(ek.tied_graph(left, right), limit=1), None) is not None
            report.check('tied_graph_equivalence', bool(solutions) == colorable, pair=name)
    report.add('pairs', len(pairs))
    return report


def apply_fixture_operation(graph, coloring, entry: dict):
    """Applique l'opération simple déclarée par une fixture; renvoie Delta avant et après"""
    pair_name, eid = entry['operation']
    circuit = col.circuit_through_edge(graph, coloring, col.ColorPair.parse(pair_name), eid)
    before = col.delta_and_parity(graph, coloring)
    after = col.delta_and_parity(graph, col.simple_operation(graph, coloring, circuit))
    return before, after


def _verify_fixture(name: str, loader: FixtureLoader, report: Report) -> None:
    name = loader.resolve(name)
    entry = loader.entry(name)
    graph = loader.load_graph(name)
    diag = validate(graph)
    if name == 'dumbbell':
        report.check('fixture', col.count_colorings(graph) == 0 and bool(diag.bridges), fixture=name)
    elif name == 'theta':
        _, coloring = loader.load_coloring(name)
        report.check('fixture', len(fm.classify_purple_edges(graph, coloring).bounces) == 1, fixture=name)
    elif name == 'two-crossings':
        formation = loader.load_formation(name)
        _, coloring = fm.formation_to_coloring(formation)
        segments = fm.classify_purple_edges(graph, coloring)
        report.check('fixture', len(segments.crosses) == 2 and len(segments.bounces) == 1, fixture=name)
    elif name == 'idemposition':
        _, curves = loader.load_curves(name)
        result, counts = fm.idempose(curves[0], curves[1], graph)
        report.check('fixture', (counts.left, counts.right, counts.bounce, len(result)) == (1, 1, 1, 1), fixture=name)
    elif name == 'k4-twisted':
        report.check('fixture', diag.genus == 1, fixture=name)
    elif name == 'petersen':
        report.check('fixture', col.count_colorings(graph) == 0 and diag.genus >= 1, fixture=name)
    elif 'operation' in entry:
        _, coloring = loader.load_coloring(name)
        before, after = apply_fixture_operation(graph, coloring, entry)
        report.add(f"fixture.{name}.delta", f"{before.delta}->{after.delta}")
        report.check('fixture', (before.delta, after.delta) == tuple(entry['deltas']), fixture=name)
    elif name == 'petersen-trail':
        state = loader.load_deficient(name)
        report.check('fixture', isinstance(tr.primality_search(state), tr.Prime)
                     and tr.curve_count(state) == 5, fixture=name)
    elif name in ('theta-trail', 'k4-trail'):
        state = loader.load_deficient(name)
        report.check('fixture', pp.find_two_color_path(state) is not None, fixture=name)
    elif name == 'colorable-trail':
        state = loader.load_deficient(name)
        path = pp.find_two_color_path(state)
        report.check('fixture', path is not None
                     and col.is_proper(graph, pp.complete_over_empty_edge(state, path)), fixture=name)
    elif name == 'blue-trail':
        state = loader.load_deficient(name)
        _, top = graph.endpoints(state.empty_edge)
        swapped = tr.kempe_swap(state, state.component_through(col.BP, top))
        report.check('fixture', state.contextual_colors() == (col.Color.B, col.Color.B)
                     and not tr.is_factored(state).factored and tr.is_factored(swapped).factored, fixture=name)
    elif name == 'purple-trail':
        state = loader.load_deficient(name)
        report.check('fixture', state.contextual_colors() == (col.Color.P, col.Color.P)
                     and not tr.is_factored(state).factored, fixture=name)
    elif name in ('digon-trail', 'factorizable-trail'):
        state = loader.load_deficient(name)
        report.check('fixture', isinstance(tr.primality_search(state), tr.FactoredWitness), fixture=name)
    elif name in ('culprit-one', 'culprit-two'):
        state = loader.load_deficient(name)
        outcome = pp.run_parity_pass(state)
        expected = {'culprit-one': ('D-inapplicable', ['A', 'B', 'C']),
                    'culprit-two': ('C-inapplicable', ['A', 'B'])}[name]
        completed = isinstance(outcome, pp.CompletedBySimpleOps)
        steps = [op.label for op in outcome.operations if op.label in pp.STEPS] if completed else []
        report.check('fixture', completed and (outcome.stage, steps) == expected, fixture=name)
    else:
        report.check('fixture', diag.is_bridgeless_planar
                     and pr.bracket_state_sum(graph).value == col.count_colorings(graph), fixture=name)
    report.add(f"fixture.{name}", entry['description'])


def cmd_fixtures(args, run: RunConfig, loader: FixtureLoader) -> Report:
    report = Report('fixtures')
    names = [args.fixture] if args.fixture else list(loader.registry)
    if args.action == 'list':
        for row in loader.list_fixtures().itertuples():
            report.add(row.fixture, f"{row.files} available={row.available}")
        return report
    with report.timed('fixtures'):
        for name in names:
            _verify_fixture(name, loader, report)
    return report


COMMANDS = {
    'validate': cmd_validate,
    'color': cmd_color,
    'formation': cmd_formation,
    'parity': cmd_parity,
    'penrose': cmd_penrose,
    'trail': cmd_trail,
    'paritypass': cmd_paritypass,
    'ek': cmd_ek,
    'fixtures': cmd_fixtures,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='formation-lab', description=Config.APP_NAME)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int)
    common.add_argument('--corpus', type=int)
    common.add_argument('--max-vertices', dest='max_vertices', type=int)
    common.add_argument('--budget', type=int)
    common.add_argument('--rounds', type=int)
    common.add_argument('--out')
    common.add_argument('--fixture')
    common.add_argument('--graph', help='fichier de graphe')
    common.add_argument('--emit', choices=['dot', 'svg', 'none'])
    sub = parser.add_subparsers(dest='command', required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name, parents=[common])
        if name == 'ek':
            cmd.add_argument('--left')
            cmd.add_argument('--right')
            cmd.add_argument('--leaves', type=int, default=5)
        if name == 'fixtures':
            cmd.add_argument('action', nargs='?', choices=['list', 'verify'], default='verify')
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO), format=Config.LOG_FORMAT)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return Config.EXIT_CODES['usage'] if e.code else Config.EXIT_CODES['pass']
    run = RunConfig.from_args(args)
    loader = FixtureLoader()
    try:
        report = COMMANDS[args.command](args, run, loader)
    except (GraphParseError, ArgumentError, InvalidFormationError, UnsupportedEmbeddingError) as e:
        print(f"error={e}", file=sys.stderr)
        return Config.EXIT_CODES['usage']
    except ResourceBoundError as e:
        print(f"error={e}", file=sys.stderr)
        return Config.EXIT_CODES['resource']
    sys.stdout.write(report.render())
    if args.out:
        report.save(run.out)
    return report.exit_code
