# formation_lab/utils/harness.py
"""Balayages de propriétés sur des corpus de graphes générés"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ..config import Config
from .coloring import (all_circuits, count_colorings, delta_and_parity, is_proper, iter_colorings,
                       simple_operation)
from .errors import ArgumentError, InvalidFormationError
from .formation import classify_purple_edges, coloring_to_formation, formation_to_coloring, idempose
from .graph_core import CubicGraph, generate_planar_cubic, trace_faces
from .parity_pass import (STEPS, CompletedBySimpleOps, Exhausted, Falsified, Inapplicable, begin_round,
                          direct_completion, locate_pentagon, parity_pass_step, run_parity_pass)
from .penrose import bracket_state_sum, recursion_check, sign_product
from .trails import (DeficientFormation, Prime, enumerate_deficient, primality_search,
                     reduced_coloring, trail_graphs)

logger = logging.getLogger(__name__)


@dataclass
class SweepResult:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def build_corpus(seed: int, size: int, max_vertices: int) -> list[CubicGraph]:
    """Tailles 4, 6, ..., max_vertices en cycle; graine distincte par graphe"""
    if max_vertices < 4:
        raise ArgumentError("Le corpus demande au moins 4 sommets")
    sizes = list(range(4, max_vertices + 1, 2))
    return [generate_planar_cubic(seed * 100003 + k, sizes[k % len(sizes)]) for k in range(size)]


def bijection_sweep(corpus, cap: int = Config.COLORING_CAP) -> SweepResult:
    result = SweepResult()
    for index, graph in enumerate(corpus):
        for coloring in iter_colorings(graph, limit=cap):
            result.checked += 1
            _, back = formation_to_coloring(coloring_to_formation(graph, coloring))
            if back != coloring:
                result.failures.append((index, str(coloring)))
    return result


def parity_sweep(corpus, cap: int = Config.COLORING_CAP) -> SweepResult:
    """Toute opération simple préserve la parité de Delta sur un graphe planaire"""
    result = SweepResult()
    for index, graph in enumerate(corpus):
        for coloring in iter_colorings(graph, limit=cap):
            before = delta_and_parity(graph, coloring)
            for circuit in all_circuits(graph, coloring):
                after = delta_and_parity(graph, simple_operation(graph, coloring, circuit))
                result.checked += 1
                if after.parity != before.parity:
                    result.failures.append((index, str(coloring), circuit.edges))
    return result


def idemposition_sweep(corpus, cap: int = Config.COLORING_CAP, pairs_per_graph: int = 100,
                       target: int = Config.IDEMPOSITION_PAIRS) -> SweepResult:
    """
    Idempose deux à deux les courbes rouges distinctes rencontrées dans les
    colorations de chaque graphe: |L| - |R| est pair et le nombre de courbes
    résultantes a la parité de p.
    """
    result = SweepResult()
    for index, graph in enumerate(corpus):
        curves = {}
        for coloring in iter_colorings(graph, limit=cap):
            for curve in coloring_to_formation(graph, coloring).red_curves:
                curves.setdefault(frozenset(curve.edges), curve)
        for first, second in itertools.islice(itertools.combinations(curves.values(), 2), pairs_per_graph):
            result.checked += 1
            merged, counts = idempose(first, second, graph)
            try:
                if len(merged) % 2 != counts.p_value:
                    result.failures.append((index, first.edges, second.edges, 'parity'))
            except InvalidFormationError:
                result.failures.append((index, first.edges, second.edges, 'odd'))
    if result.checked < target:
        logger.warning(f"⚠️ Seulement {result.checked} paires idemposées (objectif {target})")
    return result


def segment_sweep(corpus, cap: int = Config.COLORING_CAP) -> SweepResult:
    """Produit des signes de sommets = (-1)^(nombre de croisements)"""
    result = SweepResult()
    for index, graph in enumerate(corpus):
        for coloring in iter_colorings(graph, limit=cap):
            result.checked += 1
            crosses = len(classify_purple_edges(graph, coloring).crosses)
            if sign_product(graph, coloring) != (-1) ** crosses:
                result.failures.append((index, str(coloring)))
    return result


def penrose_sweep(corpus, max_vertices: int = Config.PENROSE_MAX_VERTICES,
                  seed: int = Config.DEFAULT_SEED) -> SweepResult:
    rng = np.random.default_rng(seed)
    result = SweepResult()
    for index, graph in enumerate(corpus):
        if len(graph.vertices) > max_vertices:
            continue
        result.checked += 1
        bracket = bracket_state_sum(graph).value
        count = count_colorings(graph)
        if bracket != count:
            result.failures.append((index, 'count', bracket, count))
        eid = int(rng.choice(graph.edge_ids))
        if not graph.is_loop(eid) and not recursion_check(graph, eid):
            result.failures.append((index, 'recursion', eid))
    return result


def pass_depth(state: DeficientFormation) -> int:
    """
    Nombre d'étapes de la passe exécutées avant une complétion directe ou une
    étape inapplicable; -1 si la passe ne peut pas démarrer sur cet état.
    """
    if direct_completion(state) is not None:
        return 0
    try:
        current = begin_round(state, locate_pentagon(state))
    except ArgumentError:
        return -1
    if direct_completion(current.current) is not None:
        return 0
    for depth, step in enumerate(STEPS, start=1):
        result = parity_pass_step(current, step)
        if isinstance(result, Inapplicable):
            return depth
        current = result
        if direct_completion(current.current) is not None:
            return depth
    return len(STEPS) + 1


def pentagon_instances(seed: int, count: int, max_vertices: int, per_graph: int = 4) -> list[DeficientFormation]:
    """
    États à une arête vide bordant une face pentagonale. Les états que la
    normalisation seule rend complétables ne servent qu'en dernier recours:
    on retient d'abord ceux qui font avancer la passe au-delà de l'étape A.
    """
    instances = []
    reserve = []
    for k in itertools.count():
        if len(instances) >= count or k > 50 * max(count, 1):
            break
        size = 6 + 2 * (k % max(1, (max_vertices - 4) // 2))
        graph = generate_planar_cubic(seed * 7919 + k, size)
        pentagons = [face for face in trace_faces(graph).faces if len(face) == 5]
        if not pentagons:
            continue
        eid = graph.edge_of(pentagons[0][0])
        scored = [(pass_depth(s), s) for s in enumerate_deficient(graph, (eid,), limit=per_graph * 8)]
        scored = sorted((item for item in scored if item[0] >= 0), key=lambda item: -item[0])
        instances.extend(s for depth, s in scored[:per_graph] if depth >= 1)
        reserve.extend(s for depth, s in scored[:per_graph] if depth == 0)
    if len(instances) < count:
        logger.info(f"{count - len(instances)} instance(s) complétées dès le départ ajoutées au lot")
    return (instances + reserve)[:count]


def pentagon_sweep(instances, rounds: int = Config.PASS_ROUNDS, budget: int = Config.SEARCH_BUDGET):
    outcomes = {'completed': 0, 'exhausted': 0, 'skipped': 0, 'falsified': [], 'stages': Counter()}
    for state in instances:
        try:
            outcome = run_parity_pass(state, max_rounds=rounds, budget=budget)
        except ArgumentError as e:
            logger.info(f"Instance ignorée: {e}")
            outcomes['skipped'] += 1
            continue
        if isinstance(outcome, CompletedBySimpleOps):
            outcomes['completed'] += 1
            outcomes['stages'][outcome.stage] += 1
        elif isinstance(outcome, Exhausted):
            outcomes['exhausted'] += 1
        elif isinstance(outcome, Falsified):
            outcomes['falsified'].append(outcome)
    return outcomes


def trail_sweep(corpus, cap: int = Config.COLORING_CAP) -> tuple[SweepResult, dict]:
    """Coloration réduite propre pour chaque piste; verdicts de primalité par graphe"""
    result = SweepResult()
    verdicts = {'prime': 0, 'factored': 0}
    for index, graph in enumerate(corpus):
        if len(graph.edges) > Config.TRAIL_MAX_EDGES:
            continue
        states = list(enumerate_deficient(graph, (graph.edge_ids[0],), limit=cap))
        for state in states:
            result.checked += 1
            reduced, _ = trail_graphs(state)
            if not is_proper(reduced, reduced_coloring(state)):
                result.failures.append((index, str(state.coloring)))
        if states:
            verdict = primality_search(states[0])
            verdicts['prime' if isinstance(verdict, Prime) else 'factored'] += 1
    return result, verdicts
