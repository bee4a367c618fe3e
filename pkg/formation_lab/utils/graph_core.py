# formation_lab/utils/graph_core.py
"""
Graphes cubiques plongés: rotations de sommets, appariement des demi-arêtes,
faces, genre et diagnostics structurels.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx
import numpy as np

from .errors import ArgumentError, GraphParseError

logger = logging.getLogger(__name__)

Dart = int


@dataclass(frozen=True)
class VertexRotation:
    """Ordre cyclique antihoraire des demi-arêtes d'un sommet"""
    vid: int
    darts: tuple[Dart, ...]
    crossing: bool = False

    def successor(self, dart: Dart) -> Dart:
        i = self.darts.index(dart)
        return self.darts[(i + 1) % len(self.darts)]

    def predecessor(self, dart: Dart) -> Dart:
        i = self.darts.index(dart)
        return self.darts[(i - 1) % len(self.darts)]

    def starting_at(self, dart: Dart) -> tuple[Dart, ...]:
        i = self.darts.index(dart)
        return self.darts[i:] + self.darts[:i]


@dataclass(frozen=True)
class EdgePairing:
    eid: int
    darts: tuple[Dart, Dart]

    def other(self, dart: Dart) -> Dart:
        a, b = self.darts
        if dart == a:
            return b
        if dart == b:
            return a
        raise ArgumentError(f"La demi-arête {dart} n'appartient pas à l'arête {self.eid}")


@dataclass(frozen=True)
class FaceSet:
    faces: tuple[tuple[Dart, ...], ...]
    genus: int

    @property
    def count(self) -> int:
        return len(self.faces)


@dataclass(frozen=True)
class Diagnostics:
    is_cubic: bool
    is_connected: bool
    loops: tuple[int, ...]
    bridges: tuple[int, ...]
    genus: int

    @property
    def is_bridgeless_planar(self) -> bool:
        return self.is_cubic and self.is_connected and self.genus == 0 and not self.bridges


@dataclass(frozen=True)
class CubicGraph:
    """
    Multigraphe cubique plongé, décrit par ses rotations et ses arêtes.
    Les noeuds de croisement (4 demi-arêtes) n'apparaissent que dans les
    diagrammes de Penrose intermédiaires.
    """
    vertices: tuple[VertexRotation, ...]
    edges: tuple[EdgePairing, ...]
    labels: Mapping[int, str] = field(default_factory=dict, compare=False, hash=False)
    free_loops: int = 0

    def __post_init__(self):
        seen: dict[Dart, int] = {}
        for rot in self.vertices:
            for d in rot.darts:
                if d in seen:
                    raise ArgumentError(f"Demi-arête {d} présente aux sommets {seen[d]} et {rot.vid}")
                seen[d] = rot.vid
        paired: set[Dart] = set()
        for edge in self.edges:
            for d in edge.darts:
                if d not in seen or d in paired:
                    raise ArgumentError(f"Demi-arête {d} mal appariée dans l'arête {edge.eid}")
                paired.add(d)
        if paired != set(seen):
            missing = sorted(set(seen) - paired)
            raise ArgumentError(f"Demi-arêtes sans arête: {missing}")

    # Tables de correspondance

    @cached_property
    def _vertex_of(self) -> dict[Dart, int]:
        return {d: rot.vid for rot in self.vertices for d in rot.darts}

    @cached_property
    def _edge_of(self) -> dict[Dart, int]:
        return {d: edge.eid for edge in self.edges for d in edge.darts}

    @cached_property
    def _partner(self) -> dict[Dart, Dart]:
        table = {}
        for edge in self.edges:
            a, b = edge.darts
            table[a] = b
            table[b] = a
        return table

    @cached_property
    def _rotations(self) -> dict[int, VertexRotation]:
        return {rot.vid: rot for rot in self.vertices}

    @cached_property
    def _edges(self) -> dict[int, EdgePairing]:
        return {edge.eid: edge for edge in self.edges}

    @cached_property
    def darts(self) -> tuple[Dart, ...]:
        return tuple(sorted(self._vertex_of))

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._edges))

    @cached_property
    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._rotations))

    @property
    def crossings(self) -> tuple[VertexRotation, ...]:
        return tuple(rot for rot in self.vertices if rot.crossing)

    @property
    def trivalent(self) -> tuple[VertexRotation, ...]:
        return tuple(rot for rot in self.vertices if not rot.crossing)

    def vertex_of(self, dart: Dart) -> int:
        return self._vertex_of[dart]

    def edge_of(self, dart: Dart) -> int:
        return self._edge_of[dart]

    def opposite(self, dart: Dart) -> Dart:
        return self._partner[dart]

    def rotation(self, vid: int) -> VertexRotation:
        try:
            return self._rotations[vid]
        except KeyError:
            raise ArgumentError(f"Sommet inconnu: {vid}") from None

    def edge(self, eid: int) -> EdgePairing:
        try:
            return self._edges[eid]
        except KeyError:
            raise ArgumentError(f"Arête inconnue: {eid}") from None

    def has_edge(self, eid: int) -> bool:
        return eid in self._edges

    def successor(self, dart: Dart) -> Dart:
        return self._rotations[self._vertex_of[dart]].successor(dart)

    def predecessor(self, dart: Dart) -> Dart:
        return self._rotations[self._vertex_of[dart]].predecessor(dart)

    def endpoints(self, eid: int) -> tuple[int, int]:
        a, b = self.edge(eid).darts
        return self._vertex_of[a], self._vertex_of[b]

    def incident_edges(self, vid: int) -> tuple[int, ...]:
        return tuple(self._edge_of[d] for d in self.rotation(vid).darts)

    def dart_at(self, vid: int, eid: int) -> Dart:
        """Demi-arête de l'arête `eid` posée au sommet `vid` (la plus petite pour une boucle)"""
        for d in sorted(self.edge(eid).darts):
            if self._vertex_of[d] == vid:
                return d
        raise ArgumentError(f"L'arête {eid} ne touche pas le sommet {vid}")

    def is_loop(self, eid: int) -> bool:
        a, b = self.endpoints(eid)
        return a == b

    def label(self, vid: int) -> str:
        return self.labels.get(vid, str(vid))


# Lecture et écriture

def _parse_ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        raise GraphParseError(f"entier attendu dans {' '.join(tokens)!r}", lineno) from None


def parse_graph(text: str, allow_crossings: bool = False) -> CubicGraph:
    """
    Lit un graphe au format texte:
        vertex <vid> <d1> <d2> <d3>     (ordre antihoraire)
        edge <eid> <dA> <dB>
        cross <vid> <d1> <d2> <d3> <d4> (diagrammes de Penrose uniquement)
    Les lignes vides et les commentaires (#) sont ignorés.
    """
    rotations: list[VertexRotation] = []
    edges: list[EdgePairing] = []
    vertex_line: dict[Dart, int] = {}
    edge_line: dict[Dart, int] = {}
    vids: set[int] = set()
    eids: set[int] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        kind, *rest = line.split()
        if kind in ('vertex', 'cross'):
            if kind == 'cross' and not allow_crossings:
                raise GraphParseError("noeud de croisement hors d'un diagramme de Penrose", lineno)
            if not rest:
                raise GraphParseError("identifiant de sommet manquant", lineno)
            vid, *darts = _parse_ints(rest, lineno)
            expected = 4 if kind == 'cross' else 3
            if len(darts) != expected:
                raise GraphParseError(
                    f"le sommet {vid} a {len(darts)} demi-arêtes au lieu de {expected}",
                    lineno, reason="non_cubic_vertex")
            if vid in vids:
                raise GraphParseError(f"sommet {vid} déclaré deux fois", lineno)
            for d in darts:
                if d in vertex_line:
                    raise GraphParseError(f"demi-arête {d} déjà utilisée", lineno, reason="duplicate_dart")
                vertex_line[d] = lineno
            vids.add(vid)
            rotations.append(VertexRotation(vid, tuple(darts), crossing=(kind == 'cross')))
        elif kind == 'edge':
            values = _parse_ints(rest, lineno)
            if len(values) != 3:
                raise GraphParseError("une arête relie exactement deux demi-arêtes", lineno)
            eid, a, b = values
            if a == b:
                raise GraphParseError(f"l'arête {eid} relie la demi-arête {a} à elle-même", lineno)
            if eid in eids:
                raise GraphParseError(f"arête {eid} déclarée deux fois", lineno)
            for d in (a, b):
                if d in edge_line:
                    raise GraphParseError(f"demi-arête {d} déjà appariée", lineno, reason="duplicate_dart")
                edge_line[d] = lineno
            eids.add(eid)
            edges.append(EdgePairing(eid, (a, b)))
        else:
            raise GraphParseError(f"mot-clé inconnu {kind!r}", lineno)

    for d, lineno in sorted(edge_line.items(), key=lambda item: item[1]):
        if d not in vertex_line:
            raise GraphParseError(f"demi-arête {d} absente des sommets", lineno, reason="dart_usage")
    for d, lineno in sorted(vertex_line.items(), key=lambda item: item[1]):
        if d not in edge_line:
            raise GraphParseError(f"demi-arête {d} sans arête", lineno, reason="dart_usage")

    return CubicGraph(tuple(rotations), tuple(edges))


def serialize_graph(graph: CubicGraph) -> str:
    lines = []
    for rot in sorted(graph.vertices, key=lambda r: r.vid):
        kind = 'cross' if rot.crossing else 'vertex'
        lines.append(f"{kind} {rot.vid} " + " ".join(str(d) for d in rot.darts))
    for edge in sorted(graph.edges, key=lambda e: e.eid):
        lines.append(f"edge {edge.eid} {edge.darts[0]} {edge.darts[1]}")
    return "\n".join(lines) + "\n"


# Faces et genre

def _trace(darts: Iterable[Dart], partner: Mapping[Dart, Dart], succ) -> list[tuple[Dart, ...]]:
    faces = []
    visited: set[Dart] = set()
    for start in sorted(darts):
        if start in visited:
            continue
        face = []
        d = start
        while d not in visited:
            visited.add(d)
            face.append(d)
            d = succ(partner[d])
        faces.append(tuple(face))
    return faces


def trace_faces(graph: CubicGraph) -> FaceSet:
    """Faces par la permutation d -> succ(opp(d)); la face est à droite de chaque demi-arête"""
    faces = _trace(graph.darts, graph._partner, graph.successor)
    components = nx.number_connected_components(to_networkx(graph)) if graph.vertices else 0
    euler = len(graph.vertices) - len(graph.edges) + len(faces)
    genus = (2 * components - euler) // 2
    return FaceSet(tuple(faces), genus)


def to_networkx(graph: CubicGraph) -> nx.MultiGraph:
    multi = nx.MultiGraph()
    multi.add_nodes_from(graph.vertex_ids)
    for edge in graph.edges:
        u, v = graph.endpoints(edge.eid)
        multi.add_edge(u, v, key=edge.eid)
    return multi


def find_bridges(graph: CubicGraph) -> tuple[int, ...]:
    multiplicity: dict[frozenset, list[int]] = {}
    for edge in graph.edges:
        u, v = graph.endpoints(edge.eid)
        if u != v:
            multiplicity.setdefault(frozenset((u, v)), []).append(edge.eid)
    simple = nx.Graph()
    simple.add_nodes_from(graph.vertex_ids)
    simple.add_edges_from(tuple(pair) for pair in multiplicity)
    found = []
    for u, v in nx.bridges(simple):
        eids = multiplicity[frozenset((u, v))]
        if len(eids) == 1:
            found.append(eids[0])
    return tuple(sorted(found))


def validate(graph: CubicGraph) -> Diagnostics:
    is_cubic = all(len(rot.darts) == 3 and not rot.crossing for rot in graph.vertices)
    is_connected = bool(graph.vertices) and nx.is_connected(to_networkx(graph))
    loops = tuple(eid for eid in graph.edge_ids if graph.is_loop(eid))
    bridges = find_bridges(graph)
    genus = trace_faces(graph).genus
    diagnostics = Diagnostics(is_cubic, is_connected, loops, bridges, genus)
    if diagnostics.is_bridgeless_planar and loops:
        logger.warning(f"⚠️ Boucle dans un graphe planaire sans isthme: {loops}")
    return diagnostics


# Constructions

def splice(graph: CubicGraph, removed: Iterable[int], through: Mapping[Dart, Dart],
           dropped: Iterable[int] = (), added: Sequence[VertexRotation] = ()) -> CubicGraph:
    """
    Retire des sommets en reliant leurs demi-arêtes deux à deux (`through`).
    Chaque chaîne d'arêtes fusionnées garde le plus petit identifiant; les
    cycles entièrement retirés deviennent des boucles libres.
    """
    removed = set(removed)
    dropped = set(dropped)
    survivors = [rot for rot in graph.vertices if rot.vid not in removed] + list(added)
    survivor_darts = {d for rot in survivors for d in rot.darts}
    link = dict(through)
    for d, e in through.items():
        if link.setdefault(e, d) != d:
            raise ArgumentError(f"Raccord incohérent pour la demi-arête {e}")

    def partner(d: Dart) -> Dart:
        if graph.edge_of(d) in dropped:
            raise ArgumentError(f"La demi-arête {d} appartient à une arête supprimée")
        return graph.opposite(d)

    new_edges = []
    visited: set[Dart] = set()
    for start in sorted(survivor_darts):
        if start in visited:
            continue
        chain = [graph.edge_of(start)]
        visited.add(start)
        t = partner(start)
        while t not in survivor_darts:
            if t not in link:
                raise ArgumentError(f"Demi-arête {t} retirée sans raccord")
            u = link[t]
            visited.update((t, u))
            chain.append(graph.edge_of(u))
            t = partner(u)
        visited.add(t)
        new_edges.append(EdgePairing(min(chain), (start, t)))

    loops = 0
    for start in sorted(link):
        if start in visited:
            continue
        d = start
        while d not in visited:
            visited.add(d)
            t = partner(d)
            visited.add(t)
            d = link[t]
        loops += 1

    labels = {vid: name for vid, name in graph.labels.items() if vid not in removed}
    return CubicGraph(tuple(survivors), tuple(new_edges), labels, graph.free_loops + loops)


def disjoint_union(first: CubicGraph, second: CubicGraph) -> CubicGraph:
    dart_shift = max(first.darts, default=-1) + 1
    vid_shift = max(first.vertex_ids, default=-1) + 1
    eid_shift = max(first.edge_ids, default=-1) + 1
    vertices = list(first.vertices) + [
        VertexRotation(rot.vid + vid_shift, tuple(d + dart_shift for d in rot.darts), rot.crossing)
        for rot in second.vertices
    ]
    edges = list(first.edges) + [
        EdgePairing(edge.eid + eid_shift, (edge.darts[0] + dart_shift, edge.darts[1] + dart_shift))
        for edge in second.edges
    ]
    labels = dict(first.labels)
    labels.update({vid + vid_shift: name for vid, name in second.labels.items()})
    return CubicGraph(tuple(vertices), tuple(edges), labels, first.free_loops + second.free_loops)


def theta_graph() -> CubicGraph:
    return CubicGraph(
        (VertexRotation(0, (0, 2, 4)), VertexRotation(1, (1, 5, 3))),
        (EdgePairing(0, (0, 1)), EdgePairing(1, (2, 3)), EdgePairing(2, (4, 5))),
    )


def generate_planar_cubic(seed: int, target_vertices: int) -> CubicGraph:
    """
    Graphe cubique planaire sans isthme obtenu à partir du thêta en reliant
    deux arêtes d'une même face tirée au hasard. Déterministe pour une graine.
    """
    if target_vertices < 2 or target_vertices % 2:
        raise ArgumentError(f"Nombre de sommets invalide: {target_vertices} (pair et >= 2 requis)")
    rng = np.random.default_rng(seed)
    theta = theta_graph()
    rotations = {rot.vid: list(rot.darts) for rot in theta.vertices}
    partner = {}
    dart_edge = {}
    for edge in theta.edges:
        a, b = edge.darts
        partner[a], partner[b] = b, a
        dart_edge[a] = dart_edge[b] = edge.eid
    vertex_of = {d: vid for vid, darts in rotations.items() for d in darts}
    next_dart, next_edge = 6, 3

    def succ(d: Dart) -> Dart:
        darts = rotations[vertex_of[d]]
        return darts[(darts.index(d) + 1) % 3]

    def subdivide(d: Dart) -> Dart:
        nonlocal next_dart, next_edge
        vid = len(rotations)
        x_u, x_w, x_new = next_dart, next_dart + 1, next_dart + 2
        next_dart += 3
        o = partner[d]
        partner[d], partner[x_u] = x_u, d
        partner[x_w], partner[o] = o, x_w
        dart_edge[x_u] = dart_edge[d]
        dart_edge[x_w] = dart_edge[o] = next_edge
        next_edge += 1
        rotations[vid] = [x_w, x_u, x_new]
        for dd in (x_u, x_w, x_new):
            vertex_of[dd] = vid
        return x_new

    while len(rotations) < target_vertices:
        faces = _trace(vertex_of, partner, succ)
        face = faces[int(rng.integers(len(faces)))]
        i, j = sorted(int(k) for k in rng.choice(len(face), size=2, replace=False))
        d_i, d_j = face[i], face[j]
        x_new = subdivide(d_i)
        y_new = subdivide(d_j)
        partner[x_new], partner[y_new] = y_new, x_new
        dart_edge[x_new] = dart_edge[y_new] = next_edge
        next_edge += 1

    vertices = tuple(VertexRotation(vid, tuple(darts)) for vid, darts in sorted(rotations.items()))
    pairs: dict[int, list[Dart]] = {}
    for d in sorted(dart_edge):
        pairs.setdefault(dart_edge[d], []).append(d)
    edges = tuple(EdgePairing(eid, (ds[0], ds[1])) for eid, ds in sorted(pairs.items()))
    logger.debug(f"Graphe planaire généré: graine={seed}, sommets={target_vertices}")
    return CubicGraph(vertices, edges)


def walk_cycles(graph: CubicGraph, edges: Iterable[int]) -> list[tuple[Dart, ...]]:
    """
    Décompose un ensemble d'arêtes où chaque sommet est de degré 0 ou 2 en
    cycles, donnés par leurs demi-arêtes de départ, sous forme canonique.
    """
    edge_set = set(edges)
    at_vertex: dict[int, list[Dart]] = {}
    for eid in edge_set:
        for d in graph.edge(eid).darts:
            at_vertex.setdefault(graph.vertex_of(d), []).append(d)
    for vid, darts in at_vertex.items():
        if len(darts) != 2:
            raise ArgumentError(f"Le sommet {vid} est de degré {len(darts)} dans le sous-graphe")

    cycles = []
    done: set[int] = set()
    for eid in sorted(edge_set):
        if eid in done:
            continue
        start = min(graph.edge(eid).darts)
        walk = []
        d = start
        while True:
            walk.append(d)
            done.add(graph.edge_of(d))
            arrival = graph.opposite(d)
            a, b = at_vertex[graph.vertex_of(arrival)]
            d = b if arrival == a else a
            if d == start:
                break
        cycles.append(canonical_cycle(graph, walk))
    return cycles


def canonical_cycle(graph: CubicGraph, walk: Sequence[Dart]) -> tuple[Dart, ...]:
    """Rotation commençant à la plus petite arête, orientée vers la plus petite voisine"""
    walk = list(walk)
    if len(walk) == 1:
        return (min(walk[0], graph.opposite(walk[0])),)
    eids = [graph.edge_of(d) for d in walk]
    i = eids.index(min(eids))
    forward = walk[i:] + walk[:i]
    reverse = [graph.opposite(d) for d in reversed(forward)]
    reverse = [reverse[-1]] + reverse[:-1]
    key_f = (graph.edge_of(forward[1]), forward[0])
    key_r = (graph.edge_of(reverse[1]), reverse[0])
    return tuple(forward if key_f <= key_r else reverse)
