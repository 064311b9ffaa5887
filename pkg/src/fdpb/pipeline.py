"""End-to-end audit of a triple: validity, identities, chains, metrics, hermitization."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import FdpbRep, check_identities, derived_ops, validate_rep
from .chain import BiorthogonalSystem, build_system, verify_reconstruction, verify_system
from .errors import FdpbError
from .matrix import DEFAULT_TOL, Tolerance, eig_general
from .metric import HermitianSystem, MetricPair, build_metrics, hermitize, verify_hermitian_system, verify_metrics
from .report import ReportBuilder, ValidationReport


@dataclass
class PipelineResult:
    stages: list[tuple[str, ValidationReport]] = field(default_factory=list)
    error: tuple[str, str] | None = None
    system: BiorthogonalSystem | None = None
    metrics: MetricPair | None = None
    hermitian: HermitianSystem | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(r.passed for _, r in self.stages)

    @property
    def first_failure(self) -> tuple[str, str] | None:
        for stage, report in self.stages:
            if not report.passed:
                return stage, report.first_failure.name
        return self.error

    def report(self, stage: str) -> ValidationReport:
        return dict(self.stages)[stage]

    def lines(self) -> list[str]:
        out = []
        for stage, report in self.stages:
            out.append(f"[{stage}]")
            out.extend("  " + line for line in report.lines())
        if self.error is not None:
            out.append(f"[{self.error[0]}]")
            out.append(f"  ERROR {self.error[1]}")
        return out

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "stages": [{"stage": s, **r.to_dict()} for s, r in self.stages],
            "error": None if self.error is None else {"stage": self.error[0], "message": self.error[1]},
        }


def spectrum_check(rep: FdpbRep, sys: BiorthogonalSystem, tol: Tolerance = DEFAULT_TOL) -> ValidationReport:
    """Compare the chain's eigenvalue labels with a dense eigensolve of ``h``."""
    h = derived_ops(rep).h
    values, _ = eig_general(h)
    chain = np.sort(sys.hprimes)
    rb = ReportBuilder(tol)
    rb.residual("max |Im eig(h)|", float(np.max(np.abs(values.imag))), rep.n)
    rb.residual("eig(h) - chain labels", float(np.max(np.abs(np.sort(values.real) - chain))), rep.n)
    rb.residual("tr(h) - n(n-1)/2", abs(np.trace(h) - rep.n * (rep.n - 1) / 2), rep.n)
    return rb.build()


def run_pipeline(rep: FdpbRep, tol: Tolerance = DEFAULT_TOL) -> PipelineResult:
    """Run every audit stage, stopping at the first stage that cannot proceed."""
    res = PipelineResult()
    res.stages.append(("validate", validate_rep(rep, tol)))
    if not res.stages[-1][1].passed:
        return res
    res.stages.append(("identities", check_identities(rep, tol)))

    stage = "chain"
    try:
        sys = build_system(rep, tol)
        res.system = sys
        res.stages.append(("chain", verify_system(rep, sys, tol)))
        res.stages.append(("spectrum", spectrum_check(rep, sys, tol)))
        res.stages.append(("reconstruction", verify_reconstruction(rep, sys, tol)))
        stage = "metrics"
        mp = build_metrics(sys, tol)
        res.metrics = mp
        res.stages.append(("metrics", verify_metrics(rep, sys, mp, tol)))
        stage = "hermitize"
        hs = hermitize(rep, sys, mp, tol)
        res.hermitian = hs
        round_trip = validate_rep(hs.as_hermitian_rep().as_fdpb(), tol)
        res.stages.append(("hermitize", verify_hermitian_system(hs, tol) + round_trip))
    except FdpbError as exc:
        res.error = (stage, str(exc))
    return res
