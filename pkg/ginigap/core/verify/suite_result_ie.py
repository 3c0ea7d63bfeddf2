from dataclasses import dataclass, field

from ginigap.core.ie.ie import Ie


@dataclass
class SuiteResultIe(Ie):
    """Outcome of one verification suite.

    Attributes:
        name: Suite name.
        passed: Every check of the suite held.
        max_residual: Largest residual relative to its own tolerance scale.
        details: Measured residual per check.
    """
    name: str
    passed: bool
    max_residual: float
    details: dict[str, float] = field(default_factory=dict)
    FORMATTED_NAME = 'suite'

    @classmethod
    def from_checks(
            cls,
            name: str,
            checks: dict[str, tuple[float, float]]) -> 'SuiteResultIe':
        """Build from `{check: (residual, tolerance)}`."""
        passed = all(
            residual <= tolerance for residual, tolerance in checks.values())
        return cls(
            name=name,
            passed=passed,
            max_residual=max(
                (residual for residual, _ in checks.values()), default=0.0),
            details={k: float(v[0]) for k, v in checks.items()})

    def get_report_json(self) -> dict:
        return {
            'name': self.name,
            'pass': self.passed,
            'max_residual': self.max_residual,
            'details': self.details,
        }
