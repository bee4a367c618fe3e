# formation_lab/utils/penrose.py
"""
Évaluation de Penrose: somme d'états par contraction tensorielle (epsilon
aux sommets, identité aux croisements), récursion d'arête et signes de
sommets.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from ..config import Config
from .coloring import Color, EdgeColoring, is_proper
from .errors import ArgumentError, ResourceBoundError, UnsupportedEmbeddingError
from .graph_core import CubicGraph, VertexRotation, splice, trace_faces

logger = logging.getLogger(__name__)

PenroseDiagram = CubicGraph

EPSILON = np.zeros((3, 3, 3), dtype=np.int64)
for _perm in itertools.permutations(range(3)):
    _inversions = sum(1 for x, y in itertools.combinations(_perm, 2) if x > y)
    EPSILON[_perm] = -1 if _inversions % 2 else 1
DELTA = np.eye(3, dtype=np.int64)


@dataclass(frozen=True)
class BracketValue:
    """Valeur entière du crochet; i_power est la puissance résiduelle de i (toujours 0 ici)"""
    value: int
    i_power: int = 0


class VertexSign(IntEnum):
    PLUS_I = 1
    MINUS_I = -1

    @property
    def as_complex(self) -> complex:
        return complex(0, int(self))


def _check_diagram(diagram: PenroseDiagram) -> int:
    for rot in diagram.vertices:
        expected = 4 if rot.crossing else 3
        if len(rot.darts) != expected:
            raise ArgumentError(f"Noeud {rot.vid} de valence {len(rot.darts)} inattendue")
    trivalent = len(diagram.trivalent)
    if trivalent % 2:
        raise ArgumentError(f"Nombre impair de sommets trivalents: {trivalent}")
    return trivalent


def bracket_state_sum(diagram: PenroseDiagram) -> BracketValue:
    """[G] = (-1)^(V/2) . somme des produits d'epsilon . 3^boucles libres"""
    trivalent = _check_diagram(diagram)
    if len(diagram.edges) > Config.EINSUM_MAX_EDGES:
        raise ResourceBoundError(f"Trop d'arêtes pour la contraction: {len(diagram.edges)}")
    index = {eid: k for k, eid in enumerate(diagram.edge_ids)}
    operands = []
    for rot in diagram.vertices:
        ids = [index[diagram.edge_of(d)] for d in rot.darts]
        if rot.crossing:
            operands += [DELTA, [ids[0], ids[2]], DELTA, [ids[1], ids[3]]]
        else:
            operands += [EPSILON, ids]
    total = int(np.einsum(*operands, [], optimize='greedy')) if operands else 1
    value = total * (-1) ** (trivalent // 2) * 3 ** diagram.free_loops
    return BracketValue(value)


def bracket_brute_force(diagram: PenroseDiagram) -> BracketValue:
    """Même somme d'états, énumérée explicitement; réservée aux petits diagrammes"""
    trivalent = _check_diagram(diagram)
    if len(diagram.edges) > Config.BRUTE_FORCE_EDGES:
        raise ResourceBoundError(f"Trop d'arêtes pour l'énumération: {len(diagram.edges)}")
    eids = diagram.edge_ids
    total = 0
    for values in itertools.product(range(3), repeat=len(eids)):
        state = dict(zip(eids, values))
        term = 1
        for rot in diagram.vertices:
            v = [state[diagram.edge_of(d)] for d in rot.darts]
            if rot.crossing:
                term *= int(v[0] == v[2] and v[1] == v[3])
            else:
                term *= int(EPSILON[v[0], v[1], v[2]])
            if term == 0:
                break
        total += term
    return BracketValue(total * (-1) ** (trivalent // 2) * 3 ** diagram.free_loops)


def check_penrose(graph: CubicGraph, count: int | None = None) -> bool:
    """Le crochet d'un graphe planaire égale son nombre de 3-colorations"""
    if trace_faces(graph).genus != 0:
        raise UnsupportedEmbeddingError("Formule de Penrose réservée aux plongements planaires")
    if count is None:
        from .coloring import count_colorings
        count = count_colorings(graph)
    bracket = bracket_state_sum(graph)
    if bracket.value != count:
        logger.warning(f"❌ Crochet {bracket.value} différent du nombre de colorations {count}")
    return bracket.value == count


def _recursion_darts(diagram: PenroseDiagram, eid: int):
    u, v = diagram.endpoints(eid)
    if u == v:
        raise ArgumentError(f"L'arête {eid} est une boucle")
    ru, rv = diagram.rotation(u), diagram.rotation(v)
    if ru.crossing or rv.crossing:
        raise ArgumentError(f"L'arête {eid} touche un noeud de croisement")
    e_u = diagram.dart_at(u, eid)
    e_v = diagram.dart_at(v, eid)
    _, a1, a2 = ru.starting_at(e_u)
    _, b1, b2 = rv.starting_at(e_v)
    return u, v, (a1, a2), (b1, b2)


def parallel_diagram(diagram: PenroseDiagram, eid: int) -> PenroseDiagram:
    """Retire l'arête et raccorde a1-b2, a2-b1"""
    u, v, (a1, a2), (b1, b2) = _recursion_darts(diagram, eid)
    return splice(diagram, {u, v}, {a1: b2, a2: b1}, dropped={eid})


def crossing_diagram(diagram: PenroseDiagram, eid: int) -> PenroseDiagram:
    """Remplace l'arête et ses extrémités par un noeud de croisement (a1, a2, b1, b2)"""
    u, v, (a1, a2), (b1, b2) = _recursion_darts(diagram, eid)
    cross = VertexRotation(max(diagram.vertex_ids) + 1, (a1, a2, b1, b2), crossing=True)
    return splice(diagram, {u, v}, {}, dropped={eid}, added=(cross,))


def recursion_terms(diagram: PenroseDiagram, eid: int) -> tuple[int, int, int]:
    whole = bracket_state_sum(diagram).value
    parallel = bracket_state_sum(parallel_diagram(diagram, eid)).value
    crossed = bracket_state_sum(crossing_diagram(diagram, eid)).value
    return whole, parallel, crossed


def recursion_check(diagram: PenroseDiagram, eid: int) -> bool:
    """[G] = [parallèle] - [croisement]"""
    whole, parallel, crossed = recursion_terms(diagram, eid)
    return whole == parallel - crossed


def vertex_sign(graph: CubicGraph, coloring: EdgeColoring, vid: int) -> VertexSign:
    """+i si les couleurs lues dans l'ordre antihoraire sont une permutation paire de (r, b, p)"""
    if not is_proper(graph, coloring):
        raise ArgumentError("La coloration n'est pas propre")
    colors = [int(coloring[graph.edge_of(d)]) - 1 for d in graph.rotation(vid).darts]
    return VertexSign.PLUS_I if EPSILON[tuple(colors)] == 1 else VertexSign.MINUS_I


def sign_product(graph: CubicGraph, coloring: EdgeColoring) -> int:
    """Produit réel des signes de sommets"""
    minus = sum(1 for rot in graph.trivalent if vertex_sign(graph, coloring, rot.vid) == VertexSign.MINUS_I)
    vertices = len(graph.trivalent)
    return (-1) ** (vertices // 2) * (-1) ** minus
