# formation_lab/utils/figure_generator.py
import logging

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt
import networkx as nx
from matplotlib.patches import FancyArrowPatch

from ..config import Config
from .coloring import EdgeColoring
from .graph_core import CubicGraph, to_networkx

logger = logging.getLogger(__name__)


class FigureGenerator:
    def __init__(self):
        self.colors = Config.COLOR_HEX

    def _edge_color(self, coloring: EdgeColoring | None, eid: int) -> str:
        if coloring is None:
            return '#444444'
        color = coloring.get(eid)
        return self.colors[color.symbol] if color is not None else self.colors['empty']

    def to_dot(self, graph: CubicGraph, coloring: EdgeColoring | None = None) -> str:
        """Graphe au format DOT, arêtes colorées (rouge, bleu, pourpre)"""
        lines = ['graph formation {', '  node [shape=point];']
        for vid in graph.vertex_ids:
            lines.append(f'  v{vid} [xlabel="{graph.label(vid)}"];')
        for eid in graph.edge_ids:
            u, v = graph.endpoints(eid)
            style = ' style=dashed' if coloring is not None and eid not in coloring else ''
            lines.append(f'  v{u} -- v{v} [label="{eid}" color="{self._edge_color(coloring, eid)}" penwidth=2{style}];')
        lines.append('}')
        return '\n'.join(lines) + '\n'

    def _layout(self, graph: CubicGraph) -> dict:
        simple = nx.Graph(to_networkx(graph))
        planar, _ = nx.check_planarity(simple)
        if planar:
            return nx.planar_layout(simple)
        return nx.spring_layout(simple, seed=Config.DEFAULT_SEED)

    def draw(self, graph: CubicGraph, coloring: EdgeColoring | None, path: str, title: str = '') -> str:
        """Rendu SVG: les arêtes pourpres marquent la superposition des courbes rouge et bleue"""
        positions = self._layout(graph)
        fig, ax = plt.subplots(figsize=(6, 6))
        seen: dict[frozenset, int] = {}
        for eid in graph.edge_ids:
            u, v = graph.endpoints(eid)
            color = self._edge_color(coloring, eid)
            linestyle = '--' if coloring is not None and eid not in coloring else '-'
            if u == v:
                x, y = positions[u]
                ax.add_patch(plt.Circle((x, y + 0.06), 0.06, fill=False, color=color, linewidth=2, linestyle=linestyle))
                continue
            key = frozenset((u, v))
            rank = seen.get(key, 0)
            seen[key] = rank + 1
            rad = 0.0 if rank == 0 else 0.25 * ((rank + 1) // 2) * (1 if rank % 2 else -1)
            ax.add_patch(FancyArrowPatch(positions[u], positions[v], arrowstyle='-',
                                         connectionstyle=f"arc3,rad={rad}", color=color,
                                         linewidth=2, linestyle=linestyle))
        xs = [p[0] for p in positions.values()]
        ys = [p[1] for p in positions.values()]
        ax.scatter(xs, ys, s=30, color='black', zorder=3)
        for vid, (x, y) in positions.items():
            ax.annotate(graph.label(vid), (x, y), textcoords='offset points', xytext=(4, 4), fontsize=8)
        ax.set_title(title)
        ax.set_aspect('equal')
        ax.autoscale()
        ax.axis('off')
        fig.savefig(path, format='svg', bbox_inches='tight')
        plt.close(fig)
        logger.info(f"🖼️ Figure écrite: {path}")
        return path
