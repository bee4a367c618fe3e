# formation_lab/config.py
import os
from dataclasses import dataclass
from dotenv import load_dotenv

load_dotenv()


# Configuration de base
class Config:
    # Paramètres de base
    APP_NAME = "Formation Lab"
    DEBUG = os.getenv('FORMATION_LAB_DEBUG', 'False').lower() == 'true'
    LOG_LEVEL = os.getenv('FORMATION_LAB_LOG_LEVEL', 'INFO')
    LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

    # Paramètres de données
    PACKAGE_PATH = os.path.dirname(__file__)
    FIXTURES_PATH = os.path.join(PACKAGE_PATH, 'fixtures')
    OUTPUT_PATH = os.getenv('FORMATION_LAB_OUTPUT', 'formation_lab_out')

    # Corpus et graines
    DEFAULT_SEED = int(os.getenv('FORMATION_LAB_SEED', '1'))
    CORPUS_SIZE = int(os.getenv('FORMATION_LAB_CORPUS', '100'))
    MAX_VERTICES = int(os.getenv('FORMATION_LAB_MAX_VERTICES', '16'))
    COLORING_CAP = int(os.getenv('FORMATION_LAB_COLORING_CAP', '500'))
    IDEMPOSITION_PAIRS = int(os.getenv('FORMATION_LAB_IDEMPOSITION_PAIRS', '500'))

    # Bornes de calcul
    SEARCH_BUDGET = int(os.getenv('FORMATION_LAB_BUDGET', '20000'))
    PASS_ROUNDS = int(os.getenv('FORMATION_LAB_ROUNDS', '32'))
    SHALLOW_BUDGET = int(os.getenv('FORMATION_LAB_SHALLOW_BUDGET', '0'))
    BRUTE_FORCE_EDGES = 12
    EINSUM_MAX_EDGES = 52
    PENROSE_MAX_VERTICES = 14
    TRAIL_MAX_EDGES = 30
    EK_MAX_LEAVES = 8
    EK_SEARCH_BOUND = int(os.getenv('FORMATION_LAB_EK_BOUND', '200000'))

    # Codes de sortie
    EXIT_CODES = {
        'pass': 0,
        'fail': 1,
        'usage': 2,
        'resource': 3,
    }

    # Couleurs de rendu
    COLOR_HEX = {
        'r': '#d62728',
        'b': '#1f77b4',
        'p': '#9467bd',
        'empty': '#bbbbbb',
    }

    # Fixtures livrées avec le paquet. `figure` permet l'alias figN;
    # `operation` désigne une opération simple (paire, arête) et `deltas` les valeurs de Delta avant et après.
    FIXTURES = {
        'dumbbell': {
            'graph': 'dumbbell.graph',
            'figure': 1,
            'description': 'Haltère: boucles et isthme, aucun coloriage',
        },
        'theta': {
            'graph': 'theta.graph',
            'coloring': 'theta.coloring',
            'figure': 2,
            'description': 'Graphe thêta: une arête pourpre en rebond',
        },
        'two-crossings': {
            'graph': 'two_crossings.graph',
            'coloring': 'two_crossings.coloring',
            'formation': 'two_crossings.formation',
            'figure': 3,
            'description': 'Deux croisements et un rebond',
        },
        'idemposition': {
            'graph': 'idemposition.graph',
            'curves': 'idemposition.curves',
            'figure': 5,
            'description': 'Idemposition à un rebond et deux croisements',
        },
        'k4': {
            'graph': 'k4.graph',
            'description': 'K4 planaire',
        },
        'k4-twisted': {
            'graph': 'k4_twisted.graph',
            'description': 'K4 plongé sur le tore',
        },
        'prism': {
            'graph': 'prism.graph',
            'description': 'Prisme triangulaire planaire',
        },
        'petersen': {
            'graph': 'petersen.graph',
            'description': 'Graphe de Petersen, aucun coloriage',
        },
        'curve-count-change': {
            'graph': 'curve_count_change.graph',
            'coloring': 'curve_count_change.coloring',
            'operation': ('rp', 0),
            'deltas': (6, 4),
            'figure': 8,
            'description': 'Une opération rp change le nombre de courbes (6 vers 4) sans changer sa parité',
        },
        'curve-count-steady': {
            'graph': 'curve_count_steady.graph',
            'coloring': 'curve_count_steady.coloring',
            'operation': ('rp', 0),
            'deltas': (5, 5),
            'figure': 9,
            'description': 'Une opération rp laisse le nombre de courbes inchangé',
        },
        'petersen-minus-edge': {
            'graph': 'petersen_minus_edge.graph',
            'coloring': 'petersen_minus_edge.coloring',
            'operation': ('bp', 1),
            'deltas': (5, 4),
            'figure': 10,
            'description': 'Petersen moins une arête: une opération bp change la parité de Delta',
        },
        'theta-trail': {
            'graph': 'theta.graph',
            'deficient': 'theta_trail.deficient',
            'description': 'Thêta moins une arête',
        },
        'k4-trail': {
            'graph': 'k4.graph',
            'deficient': 'k4_trail.deficient',
            'description': 'K4 moins une arête, complétable',
        },
        'digon-trail': {
            'graph': 'digon_trail.graph',
            'deficient': 'digon_trail.deficient',
            'description': 'Piste factorisée par un digone',
        },
        'blue-trail': {
            'graph': 'blue_trail.graph',
            'deficient': 'blue_trail.deficient',
            'figure': 11,
            'description': 'Piste à couleur contextuelle bleue, factorisée après un échange b-p',
        },
        'colorable-trail': {
            'graph': 'colorable_trail.graph',
            'deficient': 'colorable_trail.deficient',
            'figure': 13,
            'description': 'Prisme moins une arête: un chemin bicolore complète la piste',
        },
        'petersen-trail': {
            'graph': 'petersen.graph',
            'deficient': 'petersen_trail.deficient',
            'figure': 14,
            'description': 'Petersen moins une arête: piste première',
        },
        'purple-trail': {
            'graph': 'purple_trail.graph',
            'deficient': 'purple_trail.deficient',
            'figure': 15,
            'description': 'Piste à couleur contextuelle pourpre, non factorisée',
        },
        'factorizable-trail': {
            'graph': 'blue_trail.graph',
            'deficient': 'blue_trail.deficient',
            'figure': 16,
            'description': 'Même piste que blue-trail: la recherche exhaustive trouve une factorisation',
        },
        'culprit-one': {
            'graph': 'culprit_one.graph',
            'deficient': 'culprit_one.deficient',
            'figure': 18,
            'description': 'Premier coupable de la passe de parité (étape D inapplicable)',
        },
        'culprit-two': {
            'graph': 'culprit_two.graph',
            'deficient': 'culprit_two.deficient',
            'figure': 19,
            'description': 'Second coupable: complété après les étapes A et B (étape C inapplicable)',
        },
    }


@dataclass
class RunConfig:
    """Paramètres d'une exécution de la ligne de commande"""
    seed: int = Config.DEFAULT_SEED
    corpus: int = Config.CORPUS_SIZE
    max_vertices: int = Config.MAX_VERTICES
    budget: int = Config.SEARCH_BUDGET
    rounds: int = Config.PASS_ROUNDS
    out: str = Config.OUTPUT_PATH
    fixture: str | None = None
    emit: str = 'none'

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        values = {name: getattr(args, name) for name in cls.__dataclass_fields__
                  if getattr(args, name, None) is not None}
        return cls(**values)


# Instance de configuration
config = Config()
