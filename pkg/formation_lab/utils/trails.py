# formation_lab/utils/trails.py
"""
Formations déficientes (arêtes vides), pistes et test de primalité.

Aux extrémités d'une arête vide, les deux autres arêtes portent la même
couleur (couleur contextuelle). Pour toute paire de couleurs, le
sous-graphe correspondant reste 2-régulier: ses composantes sont des cycles.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator

import networkx as nx

from ..config import Config
from .coloring import (ALL_PAIRS, BP, RB, RP, Color, ColorPair, EdgeColoring,
                       TwoColorCircuit, iter_colorings, pair_components, parse_coloring,
                       serialize_coloring)
from .errors import ArgumentError, InvalidFormationError, ResourceBoundError
from .graph_core import CubicGraph, splice

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeficientFormation:
    graph: CubicGraph
    coloring: EdgeColoring
    empty_edges: tuple[int, ...] = ()

    def __post_init__(self):
        empties = set(self.empty_edges)
        if len(empties) != len(self.empty_edges):
            raise InvalidFormationError("Arête vide répétée")
        for eid in self.graph.edge_ids:
            if (eid in empties) == (eid in self.coloring):
                state = "vide et colorée" if eid in empties else "ni vide ni colorée"
                raise InvalidFormationError(f"Arête {eid} {state}")
        for rot in self.graph.trivalent:
            eids = [self.graph.edge_of(d) for d in rot.darts]
            holes = sum(1 for eid in eids if eid in empties)
            colors = [self.coloring[eid] for eid in eids if eid not in empties]
            if holes == 0 and (len(set(colors)) != 3 or len(set(eids)) != 3):
                raise InvalidFormationError(f"Sommet {rot.vid} mal coloré")
            if holes == 1 and colors[0] != colors[1]:
                raise InvalidFormationError(
                    f"Sommet {rot.vid}: les deux moitiés autour de l'arête vide diffèrent")
            if holes >= 2:
                raise InvalidFormationError(f"Sommet {rot.vid} touche plusieurs arêtes vides")

    @property
    def empty_edge(self) -> int:
        if len(self.empty_edges) != 1:
            raise ArgumentError(f"{len(self.empty_edges)} arêtes vides au lieu d'une")
        return self.empty_edges[0]

    @property
    def is_complete(self) -> bool:
        return not self.empty_edges

    def endpoint_color(self, vid: int) -> Color:
        for d in self.graph.rotation(vid).darts:
            eid = self.graph.edge_of(d)
            if eid in self.coloring:
                return self.coloring[eid]
        raise ArgumentError(f"Sommet {vid} sans arête colorée")

    def contextual_colors(self, eid: int | None = None) -> tuple[Color, Color]:
        a, b = self.graph.endpoints(self.empty_edge if eid is None else eid)
        return self.endpoint_color(a), self.endpoint_color(b)

    def components(self, pair: ColorPair) -> list[TwoColorCircuit]:
        return pair_components(self.graph, self.coloring, pair)

    def component_through(self, pair: ColorPair, vid: int) -> TwoColorCircuit | None:
        for circuit in self.components(pair):
            if circuit.contains_vertex(self.graph, vid):
                return circuit
        return None

    def recolored(self, changes: dict[int, int]) -> "DeficientFormation":
        coloring = self.coloring.recolor(changes)
        empties = tuple(sorted(eid for eid in self.graph.edge_ids if eid not in coloring))
        return DeficientFormation(self.graph, coloring, empties)


@dataclass(frozen=True)
class Trail(DeficientFormation):
    """Formation à une arête vide, vue comme piste de deux courbes contextuelles"""

    def __post_init__(self):
        super().__post_init__()
        if len(self.empty_edges) != 1:
            raise InvalidFormationError("Une piste a exactement une arête vide")

    def contextual_curves(self) -> list[TwoColorCircuit]:
        a, b = self.graph.endpoints(self.empty_edge)
        found = []
        for pair in (RP, BP):
            for circuit in self.components(pair):
                if circuit.contains_vertex(self.graph, a) or circuit.contains_vertex(self.graph, b):
                    found.append(circuit)
        return found


@dataclass(frozen=True)
class FactorizationReport:
    factored: bool
    witness: tuple[TwoColorCircuit, ...] = ()
    components: int = 0


@dataclass(frozen=True)
class Prime:
    colorings_checked: int


@dataclass(frozen=True)
class FactoredWitness:
    coloring: EdgeColoring
    report: FactorizationReport = field(compare=False)


def parse_deficient(text: str, graph: CubicGraph) -> DeficientFormation:
    coloring, empties = parse_coloring(text, graph, allow_empty=True)
    return DeficientFormation(graph, coloring, empties)


def serialize_deficient(state: DeficientFormation) -> str:
    return serialize_coloring(state.coloring, state.empty_edges)


def as_trail(state: DeficientFormation) -> Trail:
    return Trail(state.graph, state.coloring, state.empty_edges)


def _halves(graph: CubicGraph, vid: int, eid: int) -> tuple[int, int]:
    rot = graph.rotation(vid)
    e_dart = graph.dart_at(vid, eid)
    _, h1, h2 = rot.starting_at(e_dart)
    return h1, h2


def trail_graphs(trail: DeficientFormation) -> tuple[CubicGraph, CubicGraph]:
    """
    Graphe réduit (arêtes vides retirées, extrémités supprimées, les deux
    moitiés fusionnant en une arête) et graphe complet.
    """
    graph = trail.graph
    through = {}
    removed = set()
    for eid in trail.empty_edges:
        for vid in graph.endpoints(eid):
            h1, h2 = _halves(graph, vid, eid)
            through[h1], through[h2] = h2, h1
            removed.add(vid)
    reduced = splice(graph, removed, through, dropped=set(trail.empty_edges))
    return reduced, graph


def reduced_coloring(trail: DeficientFormation) -> EdgeColoring:
    """Coloration induite sur le graphe réduit: une arête fusionnée garde la couleur de ses morceaux"""
    reduced, _ = trail_graphs(trail)
    return EdgeColoring.from_mapping({eid: trail.coloring[eid] for eid in reduced.edge_ids})


def enumerate_deficient(graph: CubicGraph, empty_edges, limit: int | None = None) -> Iterator[DeficientFormation]:
    for coloring in iter_colorings(graph, empty_edges=empty_edges, limit=limit):
        yield DeficientFormation(graph, coloring, tuple(sorted(empty_edges)))


def curve_counts(state: DeficientFormation) -> tuple[int, int, int]:
    return tuple(len(state.components(pair)) for pair in (RP, BP, RB))


def curve_count(state: DeficientFormation) -> int:
    return sum(curve_counts(state))


def is_factored(trail: DeficientFormation) -> FactorizationReport:
    """
    Couleurs contextuelles distinctes: factorisée si une courbe d'une des
    trois familles évite les deux extrémités. Couleurs égales: on retire
    les courbes rouges et bleues passant par les extrémités; factorisée si
    le reste forme au moins deux composantes connexes.
    """
    graph = trail.graph
    a, b = graph.endpoints(trail.empty_edge)
    alpha, beta = trail.contextual_colors()
    if alpha != beta:
        for pair in ALL_PAIRS:
            for circuit in trail.components(pair):
                verts = set(circuit.vertices(graph))
                if a not in verts and b not in verts:
                    return FactorizationReport(True, (circuit,), 1)
        return FactorizationReport(False)

    residue = []
    for pair in (RP, BP):
        for circuit in trail.components(pair):
            verts = set(circuit.vertices(graph))
            if a in verts or b in verts:
                continue
            residue.append(circuit)
    touching = nx.Graph()
    touching.add_nodes_from(range(len(residue)))
    for i, first in enumerate(residue):
        for j in range(i + 1, len(residue)):
            if set(first.edges) & set(residue[j].edges):
                touching.add_edge(i, j)
    parts = [sorted(c) for c in nx.connected_components(touching)]
    if len(parts) >= 2:
        witness = tuple(residue[i] for i in sorted(parts, key=min)[0])
        return FactorizationReport(True, witness, len(parts))
    return FactorizationReport(False, (), len(parts))


def primality_search(trail: DeficientFormation, limit: int | None = None) -> Prime | FactoredWitness:
    """Parcourt toutes les colorations déficientes du même graphe et de la même arête vide"""
    if len(trail.graph.edges) > Config.TRAIL_MAX_EDGES:
        raise ResourceBoundError(f"Piste trop grande: {len(trail.graph.edges)} arêtes")
    checked = 0
    for state in enumerate_deficient(trail.graph, trail.empty_edges, limit=limit):
        checked += 1
        report = is_factored(state)
        if report.factored:
            logger.info(f"✅ Piste factorisée après {checked} coloration(s)")
            return FactoredWitness(state.coloring, report)
    logger.info(f"Piste première sur {checked} coloration(s)")
    return Prime(checked)


def complex_operation(state: DeficientFormation, edges, x: Color) -> DeficientFormation:
    """Ajoute la couleur x à chaque arête d'un cycle; les arêtes ramenées à 0 deviennent vides"""
    edges = tuple(edges)
    degree: dict[int, int] = {}
    for eid in edges:
        for vid in state.graph.endpoints(eid):
            degree[vid] = degree.get(vid, 0) + 1
    odd = [vid for vid, k in degree.items() if k % 2]
    if odd or len(set(edges)) != len(edges):
        raise ArgumentError(f"Les arêtes {edges} ne forment pas un cycle")
    return state.recolored({eid: state.coloring.value(eid) ^ int(x) for eid in edges})


def kempe_swap(state: DeficientFormation, circuit: TwoColorCircuit) -> DeficientFormation:
    current = {c.edges for c in state.components(circuit.pair)}
    if circuit.edges not in current:
        raise ArgumentError(f"Circuit {circuit.edges} non alterné dans l'état courant")
    return state.recolored({eid: int(circuit.pair.swap(state.coloring[eid])) for eid in circuit.edges})
