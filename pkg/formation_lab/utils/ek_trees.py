# formation_lab/utils/ek_trees.py
"""
Arbres binaires signés, réassociation et produits vectoriels.

Une forme s'écrit avec des parenthèses et des feuilles: "((..).)" ou
"((ab)c)". Les signes des noeuds internes sont listés en préordre. Une
réassociation n'est permise que si les deux noeuds concernés portent le
même signe; les deux signes sont alors inversés.
"""
from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from ..config import Config
from .coloring import Color, EdgeColoring, is_proper
from .errors import ArgumentError, ResourceBoundError
from .graph_core import CubicGraph, EdgePairing, VertexRotation
from .penrose import EPSILON

logger = logging.getLogger(__name__)

BASIS = {
    'i': np.array([1, 0, 0], dtype=np.int64),
    'j': np.array([0, 1, 0], dtype=np.int64),
    'k': np.array([0, 0, 1], dtype=np.int64),
}
COLOR_BASIS = {Color.R: 'i', Color.B: 'j', Color.P: 'k'}

CrossAssignment = tuple[str, ...]


def _parse_structure(text: str):
    chars = [ch for ch in text if not ch.isspace() and ch != ',']
    pos = 0
    leaves = 0

    def node():
        nonlocal pos, leaves
        if pos >= len(chars):
            raise ArgumentError(f"Forme tronquée: {text!r}")
        ch = chars[pos]
        pos += 1
        if ch == '(':
            left = node()
            right = node()
            if pos >= len(chars) or chars[pos] != ')':
                raise ArgumentError(f"Parenthèse fermante attendue dans {text!r}")
            pos += 1
            return (left, right)
        if ch == ')':
            raise ArgumentError(f"Parenthèse inattendue dans {text!r}")
        leaves += 1
        return leaves - 1

    structure = node()
    if pos != len(chars):
        raise ArgumentError(f"Caractères en trop dans {text!r}")
    return structure


def _code(structure) -> str:
    if isinstance(structure, int):
        return '.'
    return '(' + _code(structure[0]) + _code(structure[1]) + ')'


def _renumber(structure, counter=None):
    counter = counter if counter is not None else itertools.count()
    if isinstance(structure, int):
        return next(counter)
    left = _renumber(structure[0], counter)
    return (left, _renumber(structure[1], counter))


@dataclass(frozen=True)
class TreeShape:
    code: str

    @classmethod
    def parse(cls, text: str) -> "TreeShape":
        return cls(_code(_parse_structure(text)))

    @cached_property
    def structure(self):
        return _parse_structure(self.code)

    @property
    def leaves(self) -> int:
        return self.code.count('.')

    @property
    def internal_count(self) -> int:
        return self.leaves - 1

    def __str__(self) -> str:
        return self.code


@dataclass(frozen=True)
class SignedTree:
    shape: TreeShape
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != self.shape.internal_count:
            raise ArgumentError(f"{len(self.signs)} signes pour {self.shape.internal_count} noeuds internes")
        if any(s not in (1, -1) for s in self.signs):
            raise ArgumentError(f"Signes invalides: {self.signs}")

    @property
    def key(self) -> tuple[str, tuple[int, ...]]:
        return self.shape.code, self.signs

    def __str__(self) -> str:
        return self.shape.code + ' ' + ''.join('+' if s > 0 else '-' for s in self.signs)


@dataclass(frozen=True)
class ReassocMove:
    """Rotation au noeud `vertex` (préordre): 'right' utilise le fils gauche, 'left' le fils droit"""
    vertex: int
    direction: str

    def __str__(self) -> str:
        return f"{self.vertex}{self.direction[0].upper()}"


@dataclass(frozen=True)
class Inapplicable:
    move: ReassocMove
    reason: str


@dataclass(frozen=True)
class Witness:
    start: SignedTree
    moves: tuple[ReassocMove, ...]
    end: SignedTree


@dataclass(frozen=True)
class SignedValue:
    sign: int
    basis: str | None

    @property
    def is_zero(self) -> bool:
        return self.sign == 0


ZERO = SignedValue(0, None)


# Arbres signés sous forme imbriquée: feuille = int, noeud = (gauche, droite, signe)

def _attach(structure, signs: Iterator[int]):
    if isinstance(structure, int):
        return structure
    sign = next(signs)
    left = _attach(structure[0], signs)
    return (left, _attach(structure[1], signs), sign)


def _detach(nested, signs: list[int]):
    if isinstance(nested, int):
        return nested
    signs.append(nested[2])
    left = _detach(nested[0], signs)
    return (left, _detach(nested[1], signs))


def _rotate(nested, direction: str):
    left, right, sign = nested
    if direction == 'right':
        if isinstance(left, int):
            raise ArgumentError("Rotation à droite impossible: fils gauche feuille")
        a, b, child_sign = left
        if child_sign != sign:
            return None
        return (a, (b, right, -sign), -sign)
    if direction == 'left':
        if isinstance(right, int):
            raise ArgumentError("Rotation à gauche impossible: fils droit feuille")
        b, c, child_sign = right
        if child_sign != sign:
            return None
        return ((left, b, -sign), c, -sign)
    raise ArgumentError(f"Direction inconnue: {direction}")


def _apply(nested, target: int, direction: str, counter):
    if isinstance(nested, int):
        return nested
    index = next(counter)
    if index == target:
        return _rotate(nested, direction)
    left = _apply(nested[0], target, direction, counter)
    if left is None:
        return None
    right = _apply(nested[1], target, direction, counter)
    if right is None:
        return None
    return (left, right, nested[2])


def reassociate(tree: SignedTree, move: ReassocMove) -> SignedTree | Inapplicable:
    if not 0 <= move.vertex < tree.shape.internal_count:
        raise ArgumentError(f"Noeud {move.vertex} hors de l'arbre")
    nested = _attach(tree.shape.structure, iter(tree.signs))
    rotated = _apply(nested, move.vertex, move.direction, itertools.count())
    if rotated is None:
        return Inapplicable(move, "signes différents")
    signs: list[int] = []
    structure = _renumber(_detach(rotated, signs))
    return SignedTree(TreeShape(_code(structure)), tuple(signs))


def _moves(tree: SignedTree) -> list[ReassocMove]:
    moves = []
    counter = itertools.count()

    def walk(node):
        if isinstance(node, int):
            return
        index = next(counter)
        left, right = node
        if not isinstance(left, int):
            moves.append(ReassocMove(index, 'right'))
        if not isinstance(right, int):
            moves.append(ReassocMove(index, 'left'))
        walk(left)
        walk(right)

    walk(tree.shape.structure)
    return sorted(moves, key=lambda m: (m.vertex, m.direction))


def all_sign_assignments(shape: TreeShape) -> list[SignedTree]:
    return [SignedTree(shape, signs) for signs in itertools.product((1, -1), repeat=shape.internal_count)]


def ek_search(first: TreeShape, second: TreeShape, bound: int = Config.EK_SEARCH_BOUND) -> Witness | None:
    """Plus court chemin de réassociations signées de `first` vers `second`, tous signes de départ confondus"""
    if first.leaves != second.leaves:
        raise ArgumentError(f"Nombres de feuilles différents: {first.leaves} et {second.leaves}")
    if first.leaves > Config.EK_MAX_LEAVES:
        raise ResourceBoundError(f"Trop de feuilles: {first.leaves}")
    starts = all_sign_assignments(first)
    parents: dict = {t.key: (None, None) for t in starts}
    trees = {t.key: t for t in starts}
    queue = deque(starts)
    while queue:
        tree = queue.popleft()
        if tree.shape.code == second.code:
            moves = []
            key = tree.key
            while parents[key][0] is not None:
                key, move = parents[key]
                moves.append(move)
            return Witness(trees[key], tuple(reversed(moves)), tree)
        if len(parents) >= bound:
            logger.warning(f"⚠️ Recherche de réassociation bornée à {bound} états")
            return None
        for move in _moves(tree):
            nxt = reassociate(tree, move)
            if isinstance(nxt, Inapplicable) or nxt.key in parents:
                continue
            parents[nxt.key] = (tree.key, move)
            trees[nxt.key] = nxt
            queue.append(nxt)
    return None


def replay(witness: Witness) -> list[SignedTree]:
    """Rejoue un témoin et retourne tous les arbres intermédiaires"""
    trees = [witness.start]
    for move in witness.moves:
        nxt = reassociate(trees[-1], move)
        if isinstance(nxt, Inapplicable):
            raise ArgumentError(f"Témoin invalide au coup {move}")
        trees.append(nxt)
    return trees


# Produits vectoriels

def _fold(structure, x: Sequence[str]):
    if isinstance(structure, int):
        return BASIS[x[structure]]
    return np.cross(_fold(structure[0], x), _fold(structure[1], x))


def eval_cross(shape: TreeShape, x: Sequence[str]) -> SignedValue:
    if len(x) != shape.leaves:
        raise ArgumentError(f"{len(x)} valeurs pour {shape.leaves} feuilles")
    unknown = [v for v in x if v not in BASIS]
    if unknown:
        raise ArgumentError(f"Vecteurs de base inconnus: {unknown}")
    vector = _fold(shape.structure, x)
    for k, name in enumerate('ijk'):
        if vector[k]:
            return SignedValue(int(vector[k]), name)
    return ZERO


def solve_products(first: TreeShape, second: TreeShape) -> list[CrossAssignment]:
    """Affectations rendant les deux parenthésages non nuls, dans l'ordre canonique"""
    if first.leaves != second.leaves:
        raise ArgumentError(f"Nombres de feuilles différents: {first.leaves} et {second.leaves}")
    if first.leaves > Config.EK_MAX_LEAVES:
        raise ResourceBoundError(f"Trop de feuilles: {first.leaves}")
    solutions = []
    for x in itertools.product('ijk', repeat=first.leaves):
        if not eval_cross(first, x).is_zero and not eval_cross(second, x).is_zero:
            solutions.append(x)
    return solutions


def witness_to_cross_path(first: TreeShape, second: TreeShape, witness: Witness, x: Sequence[str]) -> bool:
    """Chaque arbre intermédiaire du témoin garde une valeur non nulle sous x"""
    trees = replay(witness)
    if trees[0].shape != first or trees[-1].shape != second:
        return False
    return all(not eval_cross(t.shape, x).is_zero for t in trees)


# Arbres colorés

@dataclass(frozen=True)
class ColoredTree:
    """Coloration propre d'un arbre signé, déterminée par la couleur de la racine"""
    tree: SignedTree
    root_color: Color
    leaf_colors: tuple[Color, ...]

    @classmethod
    def from_signs(cls, tree: SignedTree, root_color: Color = Color.P) -> "ColoredTree":
        colors: list[Color] = []
        signs = iter(tree.signs)

        def walk(node, color: Color):
            if isinstance(node, int):
                colors.append(color)
                return
            sign = next(signs)
            first, second = color.next, color.next.next
            left, right = (first, second) if sign > 0 else (second, first)
            walk(node[0], left)
            walk(node[1], right)

        walk(tree.shape.structure, root_color)
        return cls(tree, root_color, tuple(colors))


def assignment_from_signs(tree: SignedTree, root_color: Color = Color.P) -> CrossAssignment:
    colored = ColoredTree.from_signs(tree, root_color)
    return tuple(COLOR_BASIS[c] for c in colored.leaf_colors)


# Graphe lié

def tied_graph(first: TreeShape, second: TreeShape) -> CubicGraph:
    """
    Les deux arbres dressés côte à côte, racines reliées par dessous, le
    second dessiné en miroir: la feuille m de chacun porte la même variable
    et les liens forment des arcs emboîtés. Rotation d'un noeud du premier
    arbre: (parent, droite, gauche); du second: (parent, gauche, droite).
    """
    if first.leaves != second.leaves:
        raise ArgumentError(f"Nombres de feuilles différents: {first.leaves} et {second.leaves}")
    if first.leaves < 2:
        raise ArgumentError("Il faut au moins deux feuilles")
    n = first.leaves
    vertices = []
    edges = []
    labels = {}
    leaf_slots: dict[str, list[int]] = {'L': [], 'R': []}

    def link(a: int, b: int):
        edges.append(EdgePairing(len(edges), (a, b)))

    def build(structure, side: str, offset: int):
        counter = itertools.count()

        def walk(node) -> int:
            vid = offset + next(counter)
            labels[vid] = f"{side}{vid - offset}"
            darts = (3 * vid, 3 * vid + 2, 3 * vid + 1) if side == 'L' else (3 * vid, 3 * vid + 1, 3 * vid + 2)
            vertices.append(VertexRotation(vid, darts))
            for slot, child in ((1, node[0]), (2, node[1])):
                if isinstance(child, int):
                    leaf_slots[side].append(3 * vid + slot)
                else:
                    child_vid = walk(child)
                    link(3 * vid + slot, 3 * child_vid)
            return vid

        return walk(structure)

    root_l = build(first.structure, 'L', 0)
    root_r = build(second.structure, 'R', n - 1)
    link(3 * root_l, 3 * root_r)
    for m in range(n):
        link(leaf_slots['L'][m], leaf_slots['R'][m])
    return CubicGraph(tuple(sorted(vertices, key=lambda r: r.vid)), tuple(edges), labels)


def signs_from_coloring(graph: CubicGraph, coloring: EdgeColoring) -> dict[int, int]:
    """
    Signe de chaque sommet, indexé par sommet: +1 si les couleurs lues dans le
    sens horaire forment une permutation paire de (r, b, p). Les arbres signés
    se lisent ensuite sur ce tableau (voir `tied_signed_trees`).
    """
    if not is_proper(graph, coloring):
        raise ArgumentError("La coloration n'est pas propre")
    signs = {}
    for rot in graph.trivalent:
        d0, d1, d2 = rot.darts
        colors = tuple(int(coloring[graph.edge_of(d)]) - 1 for d in (d0, d2, d1))
        signs[rot.vid] = 1 if EPSILON[colors] == 1 else -1
    return signs


def tied_signed_trees(first: TreeShape, second: TreeShape, coloring: EdgeColoring) -> tuple[SignedTree, SignedTree]:
    """Signes lus sur le dessin; ceux du second arbre, dessiné en miroir, sont inversés"""
    graph = tied_graph(first, second)
    signs = signs_from_coloring(graph, coloring)
    n = first.leaves
    left = tuple(signs[vid] for vid in range(n - 1))
    right = tuple(-signs[vid] for vid in range(n - 1, 2 * n - 2))
    return SignedTree(first, left), SignedTree(second, right)


def all_shapes(leaves: int) -> list[TreeShape]:
    def build(n: int) -> list[str]:
        if n == 1:
            return ['.']
        codes = []
        for k in range(1, n):
            for left in build(k):
                for right in build(n - k):
                    codes.append('(' + left + right + ')')
        return codes

    if leaves < 1:
        raise ArgumentError("Au moins une feuille")
    return [TreeShape(code) for code in sorted(build(leaves))]
