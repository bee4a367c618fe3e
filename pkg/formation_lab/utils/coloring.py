# formation_lab/utils/coloring.py
"""
3-colorations d'arêtes (Tait), circuits bicolores de Kempe et invariant Delta.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Iterator, Mapping

from ..config import Config
from .errors import ArgumentError, GraphParseError, ResourceBoundError
from .graph_core import CubicGraph, Dart, walk_cycles

logger = logging.getLogger(__name__)


class Color(IntEnum):
    """Couleurs d'arête; le produit de deux couleurs distinctes est leur ou exclusif"""
    R = 1
    B = 2
    P = 3

    @property
    def symbol(self) -> str:
        return self.name.lower()

    @classmethod
    def from_symbol(cls, text: str) -> "Color":
        try:
            return cls[text.upper()]
        except KeyError:
            raise ArgumentError(f"Couleur inconnue: {text!r}") from None

    def product(self, other: "Color") -> "Color":
        if self == other:
            raise ArgumentError("Le produit n'est défini que pour deux couleurs distinctes")
        return Color(self ^ other)

    @property
    def next(self) -> "Color":
        return Color(self % 3 + 1)


EMPTY = 0


def combine(value: int, x: Color) -> int:
    """Ajout de x à une valeur d'arête (0 = vide)"""
    return value ^ int(x)


@dataclass(frozen=True, order=True)
class ColorPair:
    first: Color
    second: Color

    def __post_init__(self):
        if self.first >= self.second:
            raise ArgumentError(f"Paire de couleurs non ordonnée: {self.first}, {self.second}")

    @classmethod
    def of(cls, x: Color, y: Color) -> "ColorPair":
        return cls(min(x, y), max(x, y))

    @classmethod
    def without(cls, x: Color) -> "ColorPair":
        a, b = (c for c in Color if c != x)
        return cls(a, b)

    @property
    def third(self) -> Color:
        return self.first.product(self.second)

    def __contains__(self, color) -> bool:
        return color in (self.first, self.second)

    def swap(self, color: Color) -> Color:
        return self.second if color == self.first else self.first

    @property
    def name(self) -> str:
        return f"{self.first.symbol}{self.second.symbol}"

    @classmethod
    def parse(cls, text: str) -> "ColorPair":
        if len(text) != 2:
            raise ArgumentError(f"Paire de couleurs inconnue: {text!r}")
        return cls.of(Color.from_symbol(text[0]), Color.from_symbol(text[1]))


RB = ColorPair(Color.R, Color.B)
RP = ColorPair(Color.R, Color.P)
BP = ColorPair(Color.B, Color.P)
ALL_PAIRS = (RB, RP, BP)


@dataclass(frozen=True)
class EdgeColoring:
    """Association arête -> couleur, éventuellement partielle (arêtes vides absentes)"""
    items: tuple[tuple[int, Color], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Color]) -> "EdgeColoring":
        return cls(tuple(sorted((eid, Color(c)) for eid, c in mapping.items())))

    @cached_property
    def _map(self) -> dict[int, Color]:
        return dict(self.items)

    def __getitem__(self, eid: int) -> Color:
        return self._map[eid]

    def get(self, eid: int, default=None):
        return self._map.get(eid, default)

    def __contains__(self, eid: int) -> bool:
        return eid in self._map

    def __iter__(self) -> Iterator[int]:
        return iter(self._map)

    def __len__(self) -> int:
        return len(self.items)

    def as_dict(self) -> dict[int, Color]:
        return dict(self._map)

    def value(self, eid: int) -> int:
        return int(self._map.get(eid, EMPTY))

    def recolor(self, changes: Mapping[int, int]) -> "EdgeColoring":
        """Nouvelle coloration; une valeur 0 rend l'arête vide"""
        merged = dict(self._map)
        for eid, value in changes.items():
            if value == EMPTY:
                merged.pop(eid, None)
            else:
                merged[eid] = Color(value)
        return EdgeColoring.from_mapping(merged)

    def __str__(self) -> str:
        return " ".join(f"{eid}:{c.symbol}" for eid, c in self.items)


@dataclass(frozen=True)
class TwoColorCircuit:
    pair: ColorPair
    darts: tuple[Dart, ...]
    edges: tuple[int, ...]

    def vertices(self, graph: CubicGraph) -> tuple[int, ...]:
        return tuple(graph.vertex_of(d) for d in self.darts)

    def contains_vertex(self, graph: CubicGraph, vid: int) -> bool:
        return vid in self.vertices(graph)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class ParityReport:
    delta: int
    parity: int
    counts: tuple[int, int, int]


def parse_coloring(text: str, graph: CubicGraph, allow_empty: bool = False) -> tuple[EdgeColoring, tuple[int, ...]]:
    """
    Lit des lignes `color <eid> r|b|p` (et `empty <eid>` si autorisé).
    Retourne la coloration et les arêtes vides.
    """
    colors: dict[int, Color] = {}
    empties: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        kind, *rest = line.split()
        if kind not in ('color', 'empty') or (kind == 'empty' and not allow_empty):
            raise GraphParseError(f"mot-clé inattendu {kind!r}", lineno)
        expected = 2 if kind == 'color' else 1
        if len(rest) != expected:
            raise GraphParseError(f"ligne {kind} mal formée", lineno)
        try:
            eid = int(rest[0])
        except ValueError:
            raise GraphParseError(f"identifiant d'arête invalide {rest[0]!r}", lineno) from None
        if not graph.has_edge(eid):
            raise GraphParseError(f"arête {eid} inconnue", lineno)
        if eid in colors or eid in empties:
            raise GraphParseError(f"arête {eid} décrite deux fois", lineno)
        if kind == 'empty':
            empties.append(eid)
            continue
        try:
            colors[eid] = Color.from_symbol(rest[1])
        except ArgumentError as e:
            raise GraphParseError(str(e), lineno) from None
    return EdgeColoring.from_mapping(colors), tuple(empties)


def serialize_coloring(coloring: EdgeColoring, empties=()) -> str:
    lines = [f"color {eid} {c.symbol}" for eid, c in coloring.items]
    lines += [f"empty {eid}" for eid in sorted(empties)]
    return "\n".join(lines) + "\n"


def is_proper(graph: CubicGraph, coloring: EdgeColoring) -> bool:
    missing = [eid for eid in graph.edge_ids if eid not in coloring]
    if missing:
        raise ArgumentError(f"Arêtes non colorées: {missing}")
    for rot in graph.trivalent:
        seen = {coloring[graph.edge_of(d)] for d in rot.darts}
        if len(seen) != 3 or len({graph.edge_of(d) for d in rot.darts}) != 3:
            return False
    return True


def iter_colorings(graph: CubicGraph, empty_edges=(), limit: int | None = None) -> Iterator[EdgeColoring]:
    """
    Parcours par retour arrière, dans l'ordre canonique (arêtes croissantes,
    couleurs r < b < p). Un sommet touchant une arête vide exige que ses deux
    autres arêtes portent la même couleur.
    """
    empties = set(empty_edges)
    eids = [eid for eid in graph.edge_ids if eid not in empties]
    touching = {}
    for rot in graph.trivalent:
        touching[rot.vid] = sum(1 for d in rot.darts if graph.edge_of(d) in empties)
    incident = {rot.vid: [graph.edge_of(d) for d in rot.darts if graph.edge_of(d) not in empties]
                for rot in graph.trivalent}
    assigned: dict[int, Color] = {}

    def fits(eid: int, color: Color) -> bool:
        u, v = graph.endpoints(eid)
        if u == v and touching[u] == 0:
            return False
        for vid in {u, v}:
            others = [assigned[o] for o in incident[vid] if o != eid and o in assigned]
            if touching[vid] == 0 and color in others:
                return False
            if touching[vid] == 1 and any(c != color for c in others):
                return False
        return True

    produced = 0

    def extend(k: int):
        nonlocal produced
        if limit is not None and produced >= limit:
            return
        if k == len(eids):
            produced += 1
            yield EdgeColoring.from_mapping(assigned)
            return
        eid = eids[k]
        for color in Color:
            if fits(eid, color):
                assigned[eid] = color
                yield from extend(k + 1)
                del assigned[eid]
                if limit is not None and produced >= limit:
                    return

    yield from extend(0)


def enumerate_colorings(graph: CubicGraph, limit: int | None = None) -> list[EdgeColoring]:
    return list(iter_colorings(graph, limit=limit))


def count_colorings(graph: CubicGraph) -> int:
    return sum(1 for _ in iter_colorings(graph))


def brute_force_colorings(graph: CubicGraph) -> int:
    """Comptage exhaustif sur 3^E, réservé aux petits graphes"""
    if len(graph.edges) > Config.BRUTE_FORCE_EDGES:
        raise ResourceBoundError(f"Trop d'arêtes pour le comptage exhaustif: {len(graph.edges)}")
    total = 0
    for values in itertools.product(Color, repeat=len(graph.edges)):
        coloring = EdgeColoring(tuple(zip(graph.edge_ids, values)))
        if is_proper(graph, coloring):
            total += 1
    return total


def pair_components(graph: CubicGraph, coloring: EdgeColoring, pair: ColorPair) -> list[TwoColorCircuit]:
    """Composantes du sous-graphe des arêtes colorées dans la paire (coloration partielle admise)"""
    selected = [eid for eid, c in coloring.items if c in pair]
    circuits = []
    for walk in walk_cycles(graph, selected):
        circuits.append(TwoColorCircuit(pair, walk, tuple(graph.edge_of(d) for d in walk)))
    return circuits


def two_color_circuits(graph: CubicGraph, coloring: EdgeColoring, pair: ColorPair) -> list[TwoColorCircuit]:
    if not is_proper(graph, coloring):
        raise ArgumentError("La coloration n'est pas propre")
    return pair_components(graph, coloring, pair)


def all_circuits(graph: CubicGraph, coloring: EdgeColoring) -> list[TwoColorCircuit]:
    return [c for pair in ALL_PAIRS for c in pair_components(graph, coloring, pair)]


def curve_counts(graph: CubicGraph, coloring: EdgeColoring) -> tuple[int, int, int]:
    """Nombres de courbes rouges (r-p), bleues (b-p) et alternées (r-b)"""
    return (len(pair_components(graph, coloring, RP)),
            len(pair_components(graph, coloring, BP)),
            len(pair_components(graph, coloring, RB)))


def delta_and_parity(graph: CubicGraph, coloring: EdgeColoring) -> ParityReport:
    if not is_proper(graph, coloring):
        raise ArgumentError("La coloration n'est pas propre")
    counts = curve_counts(graph, coloring)
    delta = sum(counts)
    return ParityReport(delta, delta % 2, counts)


def simple_operation(graph: CubicGraph, coloring: EdgeColoring, circuit: TwoColorCircuit) -> EdgeColoring:
    """Échange de Kempe des deux couleurs le long d'un circuit bicolore"""
    current = {c.edges: c for c in pair_components(graph, coloring, circuit.pair)}
    if tuple(circuit.edges) not in current:
        raise ArgumentError(f"Circuit {circuit.edges} non alterné dans la coloration courante")
    return coloring.recolor({eid: circuit.pair.swap(coloring[eid]) for eid in circuit.edges})


def circuit_through_edge(graph: CubicGraph, coloring: EdgeColoring, pair: ColorPair, eid: int) -> TwoColorCircuit:
    for circuit in pair_components(graph, coloring, pair):
        if eid in circuit.edges:
            return circuit
    raise ArgumentError(f"Aucun circuit {pair.name} ne passe par l'arête {eid}")
