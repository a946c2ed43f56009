"""
Checks Module
Named pass/fail records attached to every numeric claim in a report
"""

from dataclasses import asdict, dataclass
from typing import Any, Iterable, List

from errors import InvariantViolation


@dataclass(frozen=True)
class Check:
    """One verified claim: identifier, human label, observed and expected values"""

    check_id: str
    label: str
    passed: bool
    value: Any = None
    expected: Any = None

    def to_dict(self):
        return asdict(self)

    def status_line(self):
        mark = '✓' if self.passed else '✗'
        detail = f"{self.value}" if self.expected is None else f"{self.value} (expected {self.expected})"
        return f"{mark} [{self.check_id}] {self.label}: {detail}"


def equality_check(check_id, label, value, expected) -> Check:
    return Check(check_id, label, value == expected, _plain(value), _plain(expected))


def predicate_check(check_id, label, passed, value=None) -> Check:
    return Check(check_id, label, bool(passed), _plain(value))


def require(checks: Iterable[Check]) -> List[Check]:
    """Raise InvariantViolation on the first failed check"""
    checks = list(checks)
    for check in checks:
        if not check.passed:
            raise InvariantViolation(check.check_id, f"{check.label}: got {check.value}, expected {check.expected}")
    return checks


def _plain(value):
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    if isinstance(value, list):
        return [_plain(v) for v in value]
    return value
