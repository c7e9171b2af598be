"""
JSON report models emitted by the command-line interface.

Rational values travel as ``"p/q"`` strings so that a dumped report parses
back to an equal model.
"""

from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .exceptions import ConfigurationError
from .solver import ChromaticResult, IndexResult


def fraction_text(value: Optional[Fraction]) -> Optional[str]:
    if value is None:
        return None
    return f"{value.numerator}/{value.denominator}"


class TightCutSchema(BaseModel):
    side: List[int]
    s1: int
    s2: int
    t1: int
    t2: int
    implied_r: Optional[str] = None


class IndexReport(BaseModel):
    status: Literal["exact", "upper-bound", "infeasible", "unknown"]
    value: Optional[str] = None
    upper_bound: Optional[str] = None
    numerator_bound: int = 0
    reason: str = ""
    undecided: List[str] = Field(default_factory=list)
    tight_cut: Optional[TightCutSchema] = None

    @classmethod
    def from_result(cls, result: IndexResult) -> "IndexReport":
        cut = None
        if result.certificate_cut is not None:
            report = result.certificate_cut
            cut = TightCutSchema(
                side=sorted(report.cut.side),
                s1=report.s1,
                s2=report.s2,
                t1=report.t1,
                t2=report.t2,
                implied_r=fraction_text(report.implied_r),
            )
        return cls(
            status=result.status.value,
            value=fraction_text(result.value),
            upper_bound=fraction_text(result.upper_bound),
            numerator_bound=result.numerator_bound,
            reason=result.reason,
            undecided=[fraction_text(v) for v in result.undecided],
            tight_cut=cut,
        )


class ChromaticReport(BaseModel):
    status: Literal["exact", "upper-bound", "infeasible", "unknown"]
    value: Optional[str] = None
    potentials: List[int] = Field(default_factory=list)
    numerator_bound: int = 0
    undecided: List[str] = Field(default_factory=list)

    @classmethod
    def from_result(cls, result: ChromaticResult) -> "ChromaticReport":
        return cls(
            status=result.status.value,
            value=fraction_text(result.value),
            potentials=list(result.potentials),
            numerator_bound=result.numerator_bound,
            undecided=[fraction_text(v) for v in result.undecided],
        )


class VerificationReport(BaseModel):
    """Outcome of checking one object (flow, certificate, mapping) against a graph."""

    subject: str
    ok: bool
    detail: str = ""
    data: Dict[str, str] = Field(default_factory=dict)


class CaseOutcome(BaseModel):
    name: str
    outcome: Literal["pass", "fail", "unknown", "skipped"]
    detail: str = ""
    instance: Optional[str] = None


class SuiteReport(BaseModel):
    suite: str
    cases: List[CaseOutcome] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(case.outcome != "fail" for case in self.cases)

    @property
    def has_unknown(self) -> bool:
        return any(case.outcome == "unknown" for case in self.cases)

    def counts(self) -> Dict[str, int]:
        totals: Dict[str, int] = {}
        for case in self.cases:
            totals[case.outcome] = totals.get(case.outcome, 0) + 1
        return totals


class SearchReport(BaseModel):
    problem: str
    max_vertices: int
    max_edges: int
    graphs_examined: int = 0
    signatures_examined: int = 0
    undecided: int = 0
    findings: List[str] = Field(default_factory=list)

    @property
    def summary(self) -> str:
        if self.findings:
            return f"{len(self.findings)} instance(s) found"
        if self.undecided:
            return f"none decided within bounds, {self.undecided} undecided"
        return "none within bounds"


class CommandConfig(BaseModel):
    """Validated parameters of one CLI invocation."""

    model_config = ConfigDict(frozen=True)

    command: str
    graph: Optional[Path] = None
    embedding: Optional[Path] = None
    flow: Optional[Path] = None
    certificate: Optional[Path] = None
    p: Optional[int] = Field(default=None, ge=1)
    q: Optional[int] = Field(default=None, ge=1)
    k: Optional[int] = Field(default=None, ge=1)
    ell: Optional[int] = Field(default=None, ge=2)
    modulus: Optional[int] = Field(default=None, ge=1)
    max_p: Optional[int] = Field(default=None, ge=2)
    node_limit: Optional[int] = Field(default=None, gt=0)
    time_limit: Optional[float] = Field(default=None, gt=0)
    output: Literal["human", "json"] = "human"

    @model_validator(mode="after")
    def _pairs(self) -> "CommandConfig":
        if (self.p is None) != (self.q is None):
            raise ValueError("p and q must be given together")
        if self.p is not None and self.q > self.p:
            raise ValueError(f"need q <= p, got p={self.p}, q={self.q}")
        return self

    @classmethod
    def build(cls, **values) -> "CommandConfig":
        try:
            return cls(**values)
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from exc
