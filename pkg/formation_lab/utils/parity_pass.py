# formation_lab/utils/parity_pass.py
"""
Complétion d'une arête vide par chemin bicolore et passe de parité autour
d'une face pentagonale.

Une passe enchaîne cinq étapes (A à E) alternant opérations complexes
(ajout d'une couleur le long d'un cycle) et opérations simples (échanges de
Kempe). Après E, l'état local redevient celui du départ. Avant chaque étape
et après chacune, on tente une complétion directe; une étape inapplicable
déclenche une recherche bornée par opérations simples.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum

from ..config import Config
from .coloring import ALL_PAIRS, Color, ColorPair, EdgeColoring
from .errors import ArgumentError, InvalidFormationError
from .graph_core import trace_faces
from .trails import DeficientFormation, complex_operation, curve_counts, kempe_swap

logger = logging.getLogger(__name__)


class Stage(str, Enum):
    START = 'Start'
    AFTER_A = 'AfterA'
    AFTER_B = 'AfterB'
    AFTER_C = 'AfterC'
    AFTER_D = 'AfterD'
    AFTER_E = 'AfterE'


STEPS = ('A', 'B', 'C', 'D', 'E')
PREDECESSORS = {
    'A': (Stage.START, Stage.AFTER_E),
    'B': (Stage.AFTER_A,),
    'C': (Stage.AFTER_B,),
    'D': (Stage.AFTER_C,),
    'E': (Stage.AFTER_D,),
}
RESULTS = {
    'A': Stage.AFTER_A,
    'B': Stage.AFTER_B,
    'C': Stage.AFTER_C,
    'D': Stage.AFTER_D,
    'E': Stage.AFTER_E,
}


@dataclass(frozen=True)
class PassOperation:
    kind: str
    label: str
    edges: tuple[int, ...]
    color: str
    counts: tuple[int, int, int]
    note: str = ''

    def to_line(self) -> str:
        r, b, alt = self.counts
        line = (f"{self.kind} {self.label} color={self.color} "
                f"edges={','.join(str(e) for e in self.edges)} R={r} B={b} Alt={alt}")
        return f"{line} note={self.note}" if self.note else line


@dataclass(frozen=True)
class Pentagon:
    """Face pentagonale a-c-d-g-b bordant l'arête vide e = (b, a)"""
    a: int
    c: int
    d: int
    g: int
    b: int
    e: int
    s_ac: int
    s_cd: int
    s_dg: int
    s_gb: int
    a_out: int
    c_up: int
    d_right: int
    g_right: int
    b_out: int


@dataclass(frozen=True)
class PassState:
    current: DeficientFormation
    stage: Stage
    pentagon: Pentagon
    palette: tuple[tuple[str, Color], ...]
    log: tuple[PassOperation, ...] = ()

    def color(self, name: str) -> Color:
        return dict(self.palette)[name]

    def pair(self, x: str, y: str) -> ColorPair:
        return ColorPair.of(self.color(x), self.color(y))


@dataclass(frozen=True)
class Inapplicable:
    step: str
    reason: str
    state: PassState


@dataclass(frozen=True)
class TwoColorPath:
    pair: ColorPair
    edges: tuple[int, ...]
    empty_edge: int

    @property
    def fill_color(self) -> Color:
        return self.pair.third


@dataclass(frozen=True)
class CompletionSearch:
    status: str
    operations: tuple[PassOperation, ...]
    coloring: EdgeColoring | None
    explored: int

    @property
    def found(self) -> bool:
        return self.status == 'found'


@dataclass(frozen=True)
class CompletedBySimpleOps:
    stage: str
    operations: tuple[PassOperation, ...]
    coloring: EdgeColoring


@dataclass(frozen=True)
class Exhausted:
    rounds: int
    state: PassState


@dataclass(frozen=True)
class Falsified:
    stage: str
    state: PassState
    search: CompletionSearch


# Chemins bicolores

def _arcs(state: DeficientFormation, circuit, x: int, y: int) -> list[tuple[int, ...]]:
    """Les deux arcs du circuit allant de x à y, listés depuis x"""
    verts = circuit.vertices(state.graph)
    k = len(verts)
    ix, iy = verts.index(x), verts.index(y)
    forward = tuple(circuit.edges[(ix + t) % k] for t in range((iy - ix) % k))
    backward = tuple(circuit.edges[(ix - 1 - t) % k] for t in range((ix - iy) % k))
    return [forward, backward]


def two_color_paths(state: DeficientFormation, eid: int) -> list[TwoColorPath]:
    """Tous les chemins candidats pour combler `eid`, du plus court au plus long"""
    if eid not in state.empty_edges:
        raise ArgumentError(f"L'arête {eid} n'est pas vide")
    a, b = state.graph.endpoints(eid)
    if a == b:
        return []
    alpha, beta = state.endpoint_color(a), state.endpoint_color(b)
    if alpha == beta:
        pairs = [ColorPair.of(alpha, w) for w in Color if w != alpha]
    else:
        pairs = [ColorPair.of(alpha, beta)]
    paths = []
    for pair in pairs:
        circuit = state.component_through(pair, a)
        if circuit is None or not circuit.contains_vertex(state.graph, b):
            continue
        for arc in _arcs(state, circuit, a, b):
            paths.append(TwoColorPath(pair, arc, eid))
    return sorted(paths, key=lambda p: (len(p.edges), p.edges, p.pair))


def find_two_color_path(state: DeficientFormation, eid: int | None = None) -> TwoColorPath | None:
    paths = two_color_paths(state, state.empty_edge if eid is None else eid)
    return paths[0] if paths else None


def fill_empty_edge(state: DeficientFormation, path: TwoColorPath) -> DeficientFormation:
    if path.empty_edge not in state.empty_edges:
        raise ArgumentError(f"L'arête {path.empty_edge} n'est plus vide")
    stale = [eid for eid in path.edges if state.coloring.get(eid) not in path.pair]
    if stale:
        raise ArgumentError(f"Chemin périmé: arêtes {stale} hors de la paire {path.pair.name}")
    return complex_operation(state, path.edges + (path.empty_edge,), path.fill_color)


def complete_over_empty_edge(state: DeficientFormation, path: TwoColorPath) -> EdgeColoring:
    filled = fill_empty_edge(state, path)
    if not filled.is_complete:
        raise ArgumentError(f"Arêtes encore vides: {filled.empty_edges}")
    return filled.coloring


def _joint_fills(state: DeficientFormation):
    """Un seul cycle de couleur x passant par deux arêtes vides"""
    e1, e2 = state.empty_edges
    a1, b1 = state.graph.endpoints(e1)
    a2, b2 = state.graph.endpoints(e2)
    used = {state.endpoint_color(v) for v in (a1, b1, a2, b2)}
    for x in Color:
        if x in used:
            continue
        pair = ColorPair.without(x)
        for (p, q), (r, s) in (((b1, a2), (b2, a1)), ((b1, b2), (a2, a1))):
            first = state.component_through(pair, p)
            second = state.component_through(pair, r)
            if first is None or second is None:
                continue
            if not first.contains_vertex(state.graph, q) or not second.contains_vertex(state.graph, s):
                continue
            for arc1 in _arcs(state, first, p, q):
                for arc2 in _arcs(state, second, r, s):
                    if set(arc1) & set(arc2):
                        continue
                    yield (e1, e2) + arc1 + arc2, x


def _operation(kind: str, label: str, edges, color: str, state: DeficientFormation, note: str = '') -> PassOperation:
    return PassOperation(kind, label, tuple(edges), color, curve_counts(state), note)


def direct_completion(state: DeficientFormation) -> tuple[list[PassOperation], EdgeColoring] | None:
    """Comble les arêtes vides une à une (avec retour arrière), puis par paires"""
    if state.is_complete:
        return [], state.coloring
    for eid in state.empty_edges:
        for path in two_color_paths(state, eid):
            try:
                filled = fill_empty_edge(state, path)
            except InvalidFormationError:
                continue
            rest = direct_completion(filled)
            if rest is not None:
                op = _operation('fill', f"e{eid}", path.edges + (eid,), path.fill_color.symbol, filled)
                return [op] + rest[0], rest[1]
    if len(state.empty_edges) == 2:
        for edges, x in _joint_fills(state):
            try:
                filled = complex_operation(state, edges, x)
            except (InvalidFormationError, ArgumentError):
                continue
            if filled.is_complete:
                return [_operation('fill', 'joint', edges, x.symbol, filled)], filled.coloring
    return None


def simple_op_completion_search(state: DeficientFormation, budget: int = Config.SEARCH_BUDGET) -> CompletionSearch:
    """Parcours en largeur des échanges de Kempe jusqu'à un état directement complétable"""
    queue = deque([(state, ())])
    seen = {state.coloring.items}
    explored = 0
    while queue:
        current, moves = queue.popleft()
        explored += 1
        found = direct_completion(current)
        if found is not None:
            operations = []
            replay = state
            for pair, edges in moves:
                circuit = next(c for c in replay.components(pair) if c.edges == edges)
                replay = kempe_swap(replay, circuit)
                operations.append(_operation('simple', 'search', edges, pair.name, replay))
            logger.info(f"✅ Complétion trouvée après {len(moves)} opération(s) simple(s)")
            return CompletionSearch('found', tuple(operations + found[0]), found[1], explored)
        if explored >= budget:
            logger.warning(f"⚠️ Budget de recherche épuisé ({budget} états)")
            return CompletionSearch('budget', (), None, explored)
        for pair in ALL_PAIRS:
            for circuit in current.components(pair):
                nxt = kempe_swap(current, circuit)
                if nxt.coloring.items in seen:
                    continue
                seen.add(nxt.coloring.items)
                queue.append((nxt, moves + ((pair, circuit.edges),)))
    return CompletionSearch('absent', (), None, explored)


# Pentagone

def _spoke(state: DeficientFormation, vid: int, used: set[int]) -> int:
    rest = [eid for eid in state.graph.incident_edges(vid) if eid not in used]
    if len(rest) != 1:
        raise ArgumentError(f"Pentagone dégénéré au sommet {vid}")
    return rest[0]


def _edge_between(state: DeficientFormation, x: int, y: int, exclude: int) -> int:
    found = [eid for eid in state.graph.incident_edges(x)
             if eid != exclude and set(state.graph.endpoints(eid)) == {x, y}]
    if len(set(found)) != 1:
        raise ArgumentError(f"Aucune arête unique entre {x} et {y}")
    return found[0]


def locate_pentagon(state: DeficientFormation, vertices: tuple[int, ...] | None = None) -> Pentagon:
    graph = state.graph
    e = state.empty_edge
    if vertices is None:
        e_darts = set(graph.edge(e).darts)
        for face in trace_faces(graph).faces:
            hits = [i for i, d in enumerate(face) if d in e_darts]
            if len(face) == 5 and hits:
                darts = face[hits[0]:] + face[:hits[0]]
                break
        else:
            raise ArgumentError(f"Aucune face pentagonale ne borde l'arête {e}")
        b, a, c, d, g = (graph.vertex_of(x) for x in darts)
        s_ac, s_cd, s_dg, s_gb = (graph.edge_of(x) for x in darts[1:])
    else:
        a, c, d, g, b = vertices
        if set(graph.endpoints(e)) != {a, b}:
            raise ArgumentError(f"L'arête vide {e} ne relie pas {a} et {b}")
        s_ac = _edge_between(state, a, c, e)
        s_cd = _edge_between(state, c, d, e)
        s_dg = _edge_between(state, d, g, e)
        s_gb = _edge_between(state, g, b, e)
    if len({a, c, d, g, b}) != 5:
        raise ArgumentError("Les sommets du pentagone ne sont pas distincts")
    return Pentagon(
        a, c, d, g, b, e, s_ac, s_cd, s_dg, s_gb,
        a_out=_spoke(state, a, {e, s_ac}),
        c_up=_spoke(state, c, {s_ac, s_cd}),
        d_right=_spoke(state, d, {s_cd, s_dg}),
        g_right=_spoke(state, g, {s_dg, s_gb}),
        b_out=_spoke(state, b, {s_gb, e}),
    )


def _template(p: Pentagon) -> dict[int, str]:
    return {
        p.s_ac: 'r', p.a_out: 'r', p.s_gb: 'r', p.b_out: 'r',
        p.s_cd: 'p', p.s_dg: 'b', p.c_up: 'b', p.d_right: 'r', p.g_right: 'p',
    }


def matches_template(state: PassState) -> bool:
    """État local identique à celui du départ (palette normalisée)"""
    current = state.current
    if state.pentagon.e not in current.empty_edges:
        return False
    return all(current.coloring.get(eid) == state.color(name)
               for eid, name in _template(state.pentagon).items())


def begin_round(current: DeficientFormation, pentagon: Pentagon, log=()) -> PassState:
    """Égalise les couleurs contextuelles puis fixe la palette r, p, b"""
    log = tuple(log)
    alpha = current.endpoint_color(pentagon.a)
    beta = current.endpoint_color(pentagon.b)
    if alpha != beta:
        circuit = current.component_through(ColorPair.of(alpha, beta), pentagon.b)
        current = kempe_swap(current, circuit)
        log += (_operation('simple', 'equalize', circuit.edges, circuit.pair.name, current),)
        logger.info(f"Couleurs contextuelles égalisées ({alpha.symbol}/{beta.symbol})")
    palette = (('r', alpha), ('p', current.coloring[pentagon.s_cd]), ('b', current.coloring[pentagon.s_dg]))
    state = PassState(current, Stage.START, pentagon, palette, log)
    if not matches_template(state):
        raise ArgumentError("Coloration locale incompatible avec la passe de parité")
    return state


# Étapes

def _arc(state: PassState, pair: ColorPair, x: int, y: int, first: int) -> tuple[int, ...] | None:
    circuit = state.current.component_through(pair, x)
    if circuit is None or not circuit.contains_vertex(state.current.graph, y):
        return None
    for arc in _arcs(state.current, circuit, x, y):
        if arc and arc[0] == first:
            return arc
    return None


def _advance(state: PassState, step: str, current: DeficientFormation, op: PassOperation) -> PassState:
    return PassState(current, RESULTS[step], state.pentagon, state.palette, state.log + (op,))


def _step_a(state: PassState):
    p = state.pentagon
    pair = state.pair('r', 'p')
    circuit = state.current.component_through(pair, p.a)
    if circuit is None or circuit.contains_vertex(state.current.graph, p.b):
        return "a et b sur la même courbe r-p"
    arc = _arc(state, pair, p.a, p.d, p.a_out)
    if arc is None:
        return "aucun arc r-p de a vers d"
    x = state.color('b')
    edges = (p.e, p.s_gb, p.s_dg) + arc
    current = complex_operation(state.current, edges, x)
    return _advance(state, 'A', current, _operation('complex', 'A', edges, x.symbol, current))


def _swap_unless_shared(state: PassState, step: str, pair: ColorPair, x: int, y: int):
    first = state.current.component_through(pair, x)
    second = state.current.component_through(pair, y)
    if first is None:
        return f"aucun circuit {pair.name} au sommet {x}"
    if first == second:
        return f"les sommets {x} et {y} partagent le circuit {pair.name}"
    current = kempe_swap(state.current, first)
    return _advance(state, step, current, _operation('simple', step, first.edges, pair.name, current))


def _step_b(state: PassState):
    p = state.pentagon
    return _swap_unless_shared(state, 'B', state.pair('b', 'p'), p.g, p.d)


def _step_c(state: PassState):
    p = state.pentagon
    pair = state.pair('r', 'b')
    arc = _arc(state, pair, p.a, p.b, p.s_ac)
    if arc is None:
        return "a et b sur des circuits r-b distincts"
    if arc[-1] != p.s_gb:
        return "l'arc r-b arrive en b par son arête extérieure"
    x = state.color('p')
    edges = (p.e,) + arc
    current = complex_operation(state.current, edges, x)
    return _advance(state, 'C', current, _operation('complex', 'C', edges, x.symbol, current))


def _step_d(state: PassState):
    p = state.pentagon
    pair = state.pair('r', 'p')
    arc = _arc(state, pair, p.d, p.g, p.d_right)
    if arc is None:
        return "d et g sur des courbes r-p distinctes"
    note = ''
    if arc[-1] != p.g_right:
        note = 'arrivée en g par le côté du pentagone'
        logger.info(f"Étape D: {note}")
    x = state.color('b')
    edges = (p.s_dg,) + arc
    current = complex_operation(state.current, edges, x)
    return _advance(state, 'D', current, _operation('complex', 'D', edges, x.symbol, current, note))


def _step_e(state: PassState):
    p = state.pentagon
    return _swap_unless_shared(state, 'E', state.pair('r', 'b'), p.a, p.b)


_STEP_FUNCTIONS = {'A': _step_a, 'B': _step_b, 'C': _step_c, 'D': _step_d, 'E': _step_e}


def parity_pass_step(state: PassState, step: str) -> PassState | Inapplicable:
    if step not in _STEP_FUNCTIONS:
        raise ArgumentError(f"Étape inconnue: {step}")
    if state.stage not in PREDECESSORS[step]:
        raise ArgumentError(f"L'étape {step} ne peut pas suivre {state.stage.value}")
    try:
        result = _STEP_FUNCTIONS[step](state)
    except InvalidFormationError as e:
        logger.warning(f"⚠️ Étape {step}: transformation invalide ({e})")
        result = f"transformation invalide: {e}"
    if isinstance(result, str):
        return Inapplicable(step, result, state)
    if step == 'E' and not matches_template(result):
        logger.info("État après E différent du départ; nouvelle normalisation au prochain tour")
    return result


def _completed(stage: str, log, found) -> CompletedBySimpleOps:
    operations, coloring = found
    logger.info(f"✅ Complétion à l'étape {stage}")
    return CompletedBySimpleOps(stage, tuple(log) + tuple(operations), coloring)


def run_parity_pass(trail: DeficientFormation, max_rounds: int = Config.PASS_ROUNDS,
                    budget: int = Config.SEARCH_BUDGET, pentagon: tuple[int, ...] | None = None,
                    shallow_budget: int = Config.SHALLOW_BUDGET):
    """
    Enchaîne les étapes A..E jusqu'à une complétion, un épuisement des tours
    ou un état où ni la passe ni la recherche bornée n'aboutissent.
    """
    pent = locate_pentagon(trail, pentagon)

    def attempt(current: DeficientFormation):
        found = direct_completion(current)
        if found is None and shallow_budget > 0:
            search = simple_op_completion_search(current, shallow_budget)
            if search.found:
                found = (list(search.operations), search.coloring)
        return found

    found = attempt(trail)
    if found is not None:
        return _completed(Stage.START.value, (), found)
    state = begin_round(trail, pent)
    found = attempt(state.current)
    if found is not None:
        return _completed(Stage.START.value, state.log, found)

    def fallback(step: str, reason: str):
        stage = f"{step}-inapplicable"
        logger.info(f"Étape {step} inapplicable ({reason}), recherche bornée")
        search = simple_op_completion_search(state.current, budget)
        if search.found:
            return CompletedBySimpleOps(stage, state.log + search.operations, search.coloring)
        logger.error(f"❌ Aucune complétion depuis {stage} (statut {search.status})")
        return Falsified(stage, state, search)

    for round_no in range(1, max_rounds + 1):
        for step in STEPS:
            result = parity_pass_step(state, step)
            if isinstance(result, Inapplicable):
                return fallback(step, result.reason)
            state = result
            found = attempt(state.current)
            if found is not None:
                return _completed(state.stage.value, state.log, found)
        logger.debug(f"Tour {round_no} terminé")
        try:
            restarted = begin_round(state.current, pent, state.log)
        except ArgumentError as e:
            return fallback('A', str(e))
        state = PassState(restarted.current, Stage.AFTER_E, pent, restarted.palette, restarted.log)
    logger.warning(f"⚠️ Passe de parité épuisée après {max_rounds} tour(s)")
    return Exhausted(max_rounds, state)
