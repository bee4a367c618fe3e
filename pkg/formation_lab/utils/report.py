# formation_lab/utils/report.py
import logging
import os
import time
from contextlib import contextmanager

import pandas as pd

from ..config import Config

logger = logging.getLogger(__name__)


class Report:
    """Résultats d'une commande: lignes clé=valeur, vérifications et durées"""

    def __init__(self, command: str):
        self.command = command
        self.values: list[tuple[str, object]] = []
        self.checks: list[dict] = []
        self.timings: dict[str, float] = {}

    def add(self, key: str, value) -> None:
        self.values.append((key, value))

    def check(self, name: str, passed: bool, **details) -> bool:
        self.checks.append({'check': name, 'passed': bool(passed), **details})
        if not passed:
            logger.warning(f"❌ Vérification échouée: {name} {details}")
        return passed

    @contextmanager
    def timed(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = time.perf_counter() - start

    @property
    def passed(self) -> bool:
        return all(c['passed'] for c in self.checks)

    @property
    def exit_code(self) -> int:
        return Config.EXIT_CODES['pass'] if self.passed else Config.EXIT_CODES['fail']

    def to_frame(self) -> pd.DataFrame:
        if not self.checks:
            return pd.DataFrame(columns=['check', 'passed'])
        return pd.DataFrame(self.checks)

    def summary(self) -> dict:
        frame = self.to_frame()
        return {
            'checks': len(frame),
            'failed': int((~frame['passed'].astype(bool)).sum()) if len(frame) else 0,
        }

    def lines(self) -> list[str]:
        out = [f"command={self.command}"]
        out += [f"{key}={value}" for key, value in self.values]
        frame = self.to_frame()
        if len(frame):
            for name, group in frame.groupby('check', sort=False):
                failed = int((~group['passed'].astype(bool)).sum())
                out.append(f"check.{name}={'pass' if failed == 0 else 'fail'} total={len(group)} failed={failed}")
        out += [f"time.{name}={seconds:.3f}s" for name, seconds in self.timings.items()]
        out.append(f"status={'pass' if self.passed else 'fail'}")
        return out

    def render(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def save(self, out_dir: str) -> str:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, f"{self.command}_checks.csv")
        self.to_frame().to_csv(path, index=False)
        with open(os.path.join(out_dir, f"{self.command}_report.txt"), 'w', encoding='utf-8') as handle:
            handle.write(self.render())
        return path
