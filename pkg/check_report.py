"""
Отчеты рандомизированных проверок (аксиомы Гамма-кольца, гомоморфизм F*)
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

from statistics_tracker import StatisticsTracker


@dataclass
class CheckIssue:
    """Класс для описания нарушенного тождества"""
    check: str  # "associativity", "unit-left", "equivariance", ...
    trial: int
    description: str
    expected: str  # что ожидалось
    actual: str  # что получено


@dataclass
class CheckReport:
    """Отчет о серии проверок"""
    name: str
    seed: int
    trials: int
    issues: List[CheckIssue] = field(default_factory=list)
    tracker: StatisticsTracker = field(default_factory=StatisticsTracker)

    def add_issue(self, issue: CheckIssue):
        """Добавляет нарушение в отчет"""
        self.issues.append(issue)
        self.tracker.increment(f"{issue.check}_failed")

    def record_pass(self, check: str):
        self.tracker.increment(f"{check}_passed")

    @property
    def passed(self) -> bool:
        return not self.issues

    def get_summary(self) -> Dict[str, Any]:
        """Возвращает краткую сводку"""
        return {
            "name": self.name,
            "seed": self.seed,
            "trials": self.trials,
            "failures": len(self.issues),
            "passed": self.passed,
            "statistics": self.tracker.get_statistics(),
        }

    def sort_issues(self):
        """Упорядочивает нарушения по номеру испытания"""
        self.issues.sort(key=lambda issue: (issue.trial, issue.check))
