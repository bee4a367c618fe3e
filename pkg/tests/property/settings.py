# tests/property/settings.py
"""Profils Hypothesis partagés par les tests de propriétés.

Importer ces profils plutôt que d'écrire @settings(max_examples=...) en ligne:

    from tests.property.settings import STANDARD_SETTINGS

    @given(seed=seeds)
    @STANDARD_SETTINGS
    def test_something(seed):
        ...

Niveaux:
- DETERMINISM_SETTINGS: 200 exemples - déterminisme des générateurs
- THOROUGH_SETTINGS: 100 exemples - règles locales des arbres signés
- STANDARD_SETTINGS: 50 exemples - propriétés des colorations
- SLOW_SETTINGS: 20 exemples - contractions et recherches coûteuses
- QUICK_SETTINGS: 10 exemples - rejets d'entrées invalides
"""

from hypothesis import HealthCheck, settings

# Le générateur planaire doit rester reproductible graine par graine
DETERMINISM_SETTINGS = settings(max_examples=200, deadline=None)

THOROUGH_SETTINGS = settings(max_examples=100, deadline=None,
                             suppress_health_check=[HealthCheck.too_slow])

STANDARD_SETTINGS = settings(max_examples=50, deadline=None,
                             suppress_health_check=[HealthCheck.too_slow])

# Contractions einsum, énumérations de pistes, passes de parité
SLOW_SETTINGS = settings(max_examples=20, deadline=None,
                         suppress_health_check=[HealthCheck.too_slow])

QUICK_SETTINGS = settings(max_examples=10, deadline=None)
