"""Identity reports shared by the certificate and meta-formula layers.

Every checked identity, from a single factorization certificate up to the
grafted exact formulas, reduces to one record: which equation, both sides,
the residual, the tolerance it was judged at, and a digest of the inputs
so reruns can be matched without trusting floating-point repr stability.
"""

import enum
import hashlib
import json
from dataclasses import dataclass


class EquationId(enum.Enum):
    FACT = "FACT"
    ECHF1 = "ECHF1"
    DIFF = "DIFF"
    ECHF2 = "ECHF2"
    ACHF1 = "ACHF1"
    ACHF2 = "ACHF2"
    THM1 = "THM1"
    THM2 = "THM2"
    THM2_LITERAL = "THM2_LITERAL"
    COR1 = "COR1"
    COR2 = "COR2"
    COR3 = "COR3"
    COR4 = "COR4"
    SEC = "SEC"
    SEC_LITERAL = "SEC_LITERAL"


def inputs_digest(obj):
    """Short stable digest of a JSON-serializable input description."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"), default=float)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class IdentityReport:
    equation_id: EquationId
    lhs: float
    rhs: float
    residual: float
    tolerance: float
    verdict: str
    inputs_digest: str

    def to_dict(self):
        return {
            "equation_id": self.equation_id.value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "inputs_digest": self.inputs_digest,
        }


def make_report(equation_id, lhs, rhs, tolerance, inputs, residual=None):
    """Build a report; residual defaults to |lhs - rhs|."""
    if residual is None:
        residual = abs(lhs - rhs)
    verdict = "PASS" if residual <= tolerance else "FAIL"
    return IdentityReport(
        equation_id=equation_id,
        lhs=float(lhs),
        rhs=float(rhs),
        residual=float(residual),
        tolerance=float(tolerance),
        verdict=verdict,
        inputs_digest=inputs_digest(inputs),
    )
