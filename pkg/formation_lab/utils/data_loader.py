# formation_lab/utils/data_loader.py
import logging
import os

import pandas as pd

from ..config import Config
from .coloring import EdgeColoring, parse_coloring
from .errors import ArgumentError
from .formation import Formation, parse_curves, parse_formation
from .graph_core import CubicGraph, parse_graph, serialize_graph
from .trails import DeficientFormation, parse_deficient, serialize_deficient

logger = logging.getLogger(__name__)


class FixtureLoader:
    def __init__(self, fixtures_path: str | None = None):
        self.fixtures_path = fixtures_path or os.getenv('FORMATION_LAB_FIXTURES', Config.FIXTURES_PATH)
        self.registry = Config.FIXTURES

    def _read(self, file_name: str) -> str:
        path = file_name
        if not (os.path.isabs(file_name) or os.path.exists(file_name)):
            path = os.path.join(self.fixtures_path, file_name)
        if not os.path.exists(path):
            raise ArgumentError(f"Fichier non trouvé: {path}")
        with open(path, encoding='utf-8') as handle:
            return handle.read()

    def resolve(self, name: str) -> str:
        """Nom canonique d'une fixture; `figN` désigne la fixture de la figure N"""
        if name in self.registry:
            return name
        if name.startswith('fig') and name[3:].isdigit():
            number = int(name[3:])
            for key, entry in self.registry.items():
                if entry.get('figure') == number:
                    return key
        raise ArgumentError(f"Fixture inconnue: {name}")

    def entry(self, name: str) -> dict:
        return self.registry[self.resolve(name)]

    def list_fixtures(self) -> pd.DataFrame:
        """Tableau des fixtures déclarées et de leurs fichiers"""
        rows = []
        for name, entry in self.registry.items():
            files = [entry[k] for k in ('graph', 'coloring', 'formation', 'curves', 'deficient') if k in entry]
            rows.append({
                'fixture': name,
                'figure': entry.get('figure'),
                'description': entry['description'],
                'files': ' '.join(files),
                'available': all(os.path.exists(os.path.join(self.fixtures_path, f)) for f in files),
            })
        return pd.DataFrame(rows)

    def read_graph(self, path: str, allow_crossings: bool = False) -> CubicGraph:
        return parse_graph(self._read(path), allow_crossings=allow_crossings)

    def load_graph(self, name: str) -> CubicGraph:
        return self.read_graph(self.entry(name)['graph'])

    def load_coloring(self, name: str) -> tuple[CubicGraph, EdgeColoring]:
        entry = self.entry(name)
        if 'coloring' not in entry:
            raise ArgumentError(f"La fixture {name} n'a pas de coloration")
        graph = self.load_graph(name)
        coloring, _ = parse_coloring(self._read(entry['coloring']), graph)
        return graph, coloring

    def load_formation(self, name: str) -> Formation:
        entry = self.entry(name)
        if 'formation' not in entry:
            raise ArgumentError(f"La fixture {name} n'a pas de formation")
        return parse_formation(self._read(entry['formation']), self.load_graph(name))

    def load_curves(self, name: str):
        entry = self.entry(name)
        graph = self.load_graph(name)
        return graph, parse_curves(self._read(entry['curves']), graph)

    def load_deficient(self, name: str) -> DeficientFormation:
        entry = self.entry(name)
        if 'deficient' not in entry:
            raise ArgumentError(f"La fixture {name} n'a pas d'état déficient")
        return parse_deficient(self._read(entry['deficient']), self.load_graph(name))


def save_state(state: DeficientFormation, out_dir: str, stem: str) -> tuple[str, str]:
    """Écrit le graphe et l'état déficient pour un rejeu ultérieur"""
    os.makedirs(out_dir, exist_ok=True)
    graph_path = os.path.join(out_dir, f"{stem}.graph")
    state_path = os.path.join(out_dir, f"{stem}.deficient")
    with open(graph_path, 'w', encoding='utf-8') as handle:
        handle.write(serialize_graph(state.graph))
    with open(state_path, 'w', encoding='utf-8') as handle:
        handle.write(serialize_deficient(state))
    logger.info(f"💾 État sauvegardé: {state_path}")
    return graph_path, state_path
