from typing import Dict


class StatisticsTracker:
    """Отслеживает число пройденных и проваленных проверок"""

    def __init__(self):
        self.stats: Dict[str, int] = {
            'trials': 0,
            'nonlinear_outputs': 0,
        }

    def increment(self, stat_name: str, amount: int = 1):
        """Увеличивает счетчик"""
        # Для динамических счетчиков (например, associativity_passed)
        self.stats[stat_name] = self.stats.get(stat_name, 0) + amount

    def get(self, stat_name: str) -> int:
        return self.stats.get(stat_name, 0)

    def get_statistics(self) -> Dict[str, int]:
        """Возвращает статистику с отсортированными ключами"""
        return {key: self.stats[key] for key in sorted(self.stats)}
