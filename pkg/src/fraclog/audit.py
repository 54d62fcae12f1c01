"""Structured pass/fail records for identity and inequality checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class AuditReport:
    """Outcome of one audited identity or inequality.

    For identity audits, passed <=> |residual| <= tolerance. Inequality
    audits pass when the signed margin (stored as residual, positive =
    satisfied) clears -tolerance.
    """

    name: str
    lhs: float
    rhs: float
    residual: float
    tolerance: float
    passed: bool
    inputs: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "inputs": self.inputs,
            "details": self.details,
        }


def identity_audit(name, lhs, rhs, tolerance, inputs=None, details=None,
                   relative=False) -> AuditReport:
    residual = lhs - rhs
    if relative:
        scale = max(abs(lhs), abs(rhs), 1e-300)
        residual = residual / scale
    return AuditReport(name, float(lhs), float(rhs), float(residual),
                       float(tolerance), abs(residual) <= tolerance,
                       inputs or {}, details or {})
