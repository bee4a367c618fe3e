# Package utils - Modules utilitaires

from .data_loader import FixtureLoader
from .figure_generator import FigureGenerator
from .report import Report

__all__ = [
    'FixtureLoader',
    'FigureGenerator',
    'Report'
]
