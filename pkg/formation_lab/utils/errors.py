# formation_lab/utils/errors.py
"""Hiérarchie d'erreurs du moteur de formations"""


class FormationLabError(Exception):
    """Erreur de base du moteur"""


class GraphParseError(FormationLabError):
    """Erreur de lecture d'un fichier de graphe, de coloriage ou de formation"""

    def __init__(self, message: str, line: int | None = None, reason: str = "malformed_line"):
        self.line = line
        self.reason = reason
        prefix = f"ligne {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class ArgumentError(FormationLabError, ValueError):
    """Argument invalide pour une opération"""


class ResourceBoundError(FormationLabError):
    """Une borne de ressources configurée a été atteinte"""


class UnsupportedEmbeddingError(FormationLabError):
    """Opération réservée aux plongements planaires"""


class InvalidFormationError(FormationLabError, ValueError):
    """Formation, coloriage ou état déficient incohérent"""
