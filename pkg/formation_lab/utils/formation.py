# formation_lab/utils/formation.py
"""
Formations: familles de courbes rouges et bleues superposées sur le graphe,
en bijection avec les 3-colorations. Classement des arêtes pourpres et
idemposition de deux courbes d'une même famille.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .coloring import (BP, RB, RP, Color, EdgeColoring, curve_counts, is_proper,
                       pair_components)
from .errors import (ArgumentError, GraphParseError, InvalidFormationError,
                     UnsupportedEmbeddingError)
from .graph_core import CubicGraph, Dart, canonical_cycle, trace_faces, walk_cycles

logger = logging.getLogger(__name__)


class CurveKind(str, Enum):
    RED = 'red'
    BLUE = 'blue'
    ALTERNATING = 'alternating'


CURVE_PAIRS = {CurveKind.RED: RP, CurveKind.BLUE: BP, CurveKind.ALTERNATING: RB}


@dataclass(frozen=True)
class Curve:
    kind: CurveKind
    darts: tuple[Dart, ...]
    edges: tuple[int, ...]

    @classmethod
    def from_darts(cls, graph: CubicGraph, kind: CurveKind, darts: Sequence[Dart]) -> "Curve":
        darts = tuple(darts)
        for i, d in enumerate(darts):
            nxt = darts[(i + 1) % len(darts)]
            if graph.vertex_of(graph.opposite(d)) != graph.vertex_of(nxt):
                raise InvalidFormationError(f"Courbe {kind.value} non fermée après la demi-arête {d}")
        edges = tuple(graph.edge_of(d) for d in darts)
        if len(set(edges)) != len(edges):
            raise InvalidFormationError(f"Courbe {kind.value} repassant par une même arête")
        canon = canonical_cycle(graph, darts)
        return cls(kind, canon, tuple(graph.edge_of(d) for d in canon))

    def vertices(self, graph: CubicGraph) -> tuple[int, ...]:
        return tuple(graph.vertex_of(d) for d in self.darts)


@dataclass(frozen=True)
class Formation:
    graph: CubicGraph
    curves: tuple[Curve, ...]

    @property
    def red_curves(self) -> tuple[Curve, ...]:
        return tuple(c for c in self.curves if c.kind == CurveKind.RED)

    @property
    def blue_curves(self) -> tuple[Curve, ...]:
        return tuple(c for c in self.curves if c.kind == CurveKind.BLUE)


class Segment(str, Enum):
    CROSS = 'cross'
    BOUNCE = 'bounce'


@dataclass(frozen=True)
class SegmentClass:
    classes: tuple[tuple[int, Segment], ...]

    @property
    def crosses(self) -> tuple[int, ...]:
        return tuple(eid for eid, s in self.classes if s == Segment.CROSS)

    @property
    def bounces(self) -> tuple[int, ...]:
        return tuple(eid for eid, s in self.classes if s == Segment.BOUNCE)

    def __getitem__(self, eid: int) -> Segment:
        return dict(self.classes)[eid]


@dataclass(frozen=True)
class InteractionCounts:
    left: int
    right: int
    bounce: int

    @property
    def p_value(self) -> int:
        """((|L| - |R|)/2 + |B|) mod 2, parité du nombre de courbes résultantes"""
        if (self.left - self.right) % 2:
            raise InvalidFormationError(f"|L| - |R| impair: L={self.left} R={self.right}")
        return ((self.left - self.right) // 2 + self.bounce) % 2


def _curves_of(graph: CubicGraph, coloring: EdgeColoring, kind: CurveKind) -> list[Curve]:
    return [Curve(kind, c.darts, c.edges) for c in pair_components(graph, coloring, CURVE_PAIRS[kind])]


def coloring_to_formation(graph: CubicGraph, coloring: EdgeColoring) -> Formation:
    if not is_proper(graph, coloring):
        raise ArgumentError("La coloration n'est pas propre")
    curves = _curves_of(graph, coloring, CurveKind.RED) + _curves_of(graph, coloring, CurveKind.BLUE)
    return Formation(graph, tuple(curves))


def alternating_curves(graph: CubicGraph, coloring: EdgeColoring) -> list[Curve]:
    return _curves_of(graph, coloring, CurveKind.ALTERNATING)


def formation_to_coloring(formation: Formation) -> tuple[CubicGraph, EdgeColoring]:
    """Arête rouge seule -> r, bleue seule -> b, superposée -> p"""
    graph = formation.graph
    red: set[int] = set()
    blue: set[int] = set()
    for curve in formation.curves:
        family = red if curve.kind == CurveKind.RED else blue
        if curve.kind == CurveKind.ALTERNATING:
            raise InvalidFormationError("Une formation ne contient que des courbes rouges et bleues")
        overlap = family.intersection(curve.edges)
        if overlap:
            raise InvalidFormationError(
                f"Deux courbes {curve.kind.value}s partagent les arêtes {sorted(overlap)}")
        family.update(curve.edges)
    colors = {}
    for eid in graph.edge_ids:
        if eid in red and eid in blue:
            colors[eid] = Color.P
        elif eid in red:
            colors[eid] = Color.R
        elif eid in blue:
            colors[eid] = Color.B
        else:
            raise InvalidFormationError(f"Arête {eid} couverte par aucune courbe")
    coloring = EdgeColoring.from_mapping(colors)
    if not is_proper(graph, coloring):
        raise InvalidFormationError("La formation ne donne pas une coloration propre")
    return graph, coloring


def parse_curves(text: str, graph: CubicGraph) -> list[Curve]:
    """Lignes `curve red|blue <d1> ... <dk>` (demi-arêtes de départ)"""
    curves = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        kind, *rest = line.split()
        if kind != 'curve' or len(rest) < 2:
            raise GraphParseError("ligne de courbe mal formée", lineno)
        try:
            family = CurveKind(rest[0])
            darts = [int(tok) for tok in rest[1:]]
        except ValueError:
            raise GraphParseError(f"courbe invalide: {' '.join(rest)!r}", lineno) from None
        unknown = [d for d in darts if d not in graph.darts]
        if unknown:
            raise GraphParseError(f"demi-arêtes inconnues {unknown}", lineno)
        try:
            curves.append(Curve.from_darts(graph, family, darts))
        except InvalidFormationError as e:
            raise GraphParseError(str(e), lineno) from None
    return curves


def parse_formation(text: str, graph: CubicGraph) -> Formation:
    formation = Formation(graph, tuple(parse_curves(text, graph)))
    formation_to_coloring(formation)
    return formation


def serialize_formation(formation: Formation) -> str:
    ordered = sorted(formation.curves, key=lambda c: (c.kind != CurveKind.RED, c.edges))
    lines = [f"curve {c.kind.value} " + " ".join(str(d) for d in c.darts) for c in ordered]
    return "\n".join(lines) + "\n"


def classify_purple_edges(graph: CubicGraph, coloring: EdgeColoring) -> SegmentClass:
    """
    Une arête pourpre est un croisement lorsque la demi-arête rouge suit la
    demi-arête pourpre dans la rotation à ses deux extrémités, ou à aucune.
    """
    if trace_faces(graph).genus != 0:
        raise UnsupportedEmbeddingError("Classement des segments réservé aux plongements planaires")
    if not is_proper(graph, coloring):
        raise ArgumentError("La coloration n'est pas propre")
    classes = []
    for eid, color in coloring.items:
        if color != Color.P:
            continue
        sides = [coloring[graph.edge_of(graph.successor(d))] == Color.R for d in graph.edge(eid).darts]
        classes.append((eid, Segment.CROSS if sides[0] == sides[1] else Segment.BOUNCE))
    return SegmentClass(tuple(classes))


def formation_curve_counts(formation: Formation) -> tuple[int, int, int]:
    graph, coloring = formation_to_coloring(formation)
    return curve_counts(graph, coloring)


def _side(graph: CubicGraph, arrive: Dart, leave: Dart) -> str:
    """Côté de la troisième demi-arête pour un passage arrive -> leave"""
    rot = graph.rotation(graph.vertex_of(leave))
    third = next(d for d in rot.darts if d not in (arrive, leave))
    return 'left' if graph.successor(leave) == third else 'right'


def idempose(first: Curve, second: Curve, graph: CubicGraph) -> tuple[list[Curve], InteractionCounts]:
    """
    Superpose deux courbes de même famille: les segments partagés
    disparaissent (différence symétrique). Chaque segment partagé est un
    croisement L ou R, ou un rebond, vu depuis la première courbe.
    """
    if first.kind != second.kind:
        raise ArgumentError("Les deux courbes doivent être de la même famille")
    shared = set(first.edges) & set(second.edges)
    left = right = bounce = 0
    darts = list(first.darts)
    if shared and len(shared) < len(darts):
        start = next(i for i, d in enumerate(darts) if graph.edge_of(d) not in shared)
        darts = darts[start:] + darts[:start]
        n = len(darts)
        i = 0
        while i < n:
            if graph.edge_of(darts[i]) not in shared:
                i += 1
                continue
            j = i
            while j + 1 < n and graph.edge_of(darts[j + 1]) in shared:
                j += 1
            enter = _side(graph, graph.opposite(darts[i - 1]), darts[i])
            leave = _side(graph, graph.opposite(darts[j]), darts[(j + 1) % n])
            if enter == leave:
                bounce += 1
            elif enter == 'left':
                left += 1
            else:
                right += 1
            i = j + 1
    remaining = set(first.edges) ^ set(second.edges)
    curves = [Curve(first.kind, walk, tuple(graph.edge_of(d) for d in walk))
              for walk in walk_cycles(graph, remaining)]
    counts = InteractionCounts(left, right, bounce)
    logger.debug(f"Idemposition: L={left} R={right} B={bounce} -> {len(curves)} courbe(s)")
    return curves, counts
