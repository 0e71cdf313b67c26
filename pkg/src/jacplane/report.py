"""Serializable per-curve reports and their JSON schema."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import jsonschema

from .atlas import data_path
from .classify import (
    ClassLabel,
    DpwReport,
    RccReport,
    SplittingType,
    TheoremCheck,
    classify,
    exponents,
    predicted_nu,
    prop_rcc_consistency,
    splitting_type,
    tau_bounds,
    theorem_checks,
)
from .invariants import CurveAnalysis, analyze
from .poly import HomogPoly


@dataclass(frozen=True)
class AnalysisReport:
    analysis: CurveAnalysis
    label: ClassLabel
    dpw: DpwReport | None
    splitting: SplittingType | None
    predicted: tuple[int, str] | None
    checks: tuple[TheoremCheck, ...]
    rcc: RccReport | None = None
    seed: int | None = None
    wall_time: float | None = None

    @property
    def violations(self) -> int:
        return sum(not c.holds for c in self.checks)

    def to_dict(self) -> dict:
        a = self.analysis
        out = {
            "poly": a.poly,
            "d": a.d,
            "mdr": a.r,
            "T": a.T,
            "tau": a.tau,
            "nu": a.nu,
            "class": self.label.kind,
            "smooth": self.label.smooth,
            "degenerate": a.degenerate,
            "ar_dims": list(a.ar_dims),
            "n_dims": list(a.n_dims),
            "milnor_hilbert": list(a.milnor_hilbert),
            "tau_stable": a.tau_stable,
            "n_dims_chi": None if a.n_dims_chi is None else list(a.n_dims_chi),
            "verified": a.verified,
            "validated": a.validated,
            "primes_used": list(a.primes_used),
            "escalations": a.escalations,
            "dpw": None if self.dpw is None else asdict(self.dpw),
            "splitting_type": None if self.splitting is None else [self.splitting.d1, self.splitting.d2],
            "exponents": None if exponents(a) is None else list(exponents(a)),
            "predicted_nu": None
            if self.predicted is None
            else {"value": self.predicted[0], "branch": self.predicted[1]},
            "theorem_checks": [asdict(c) for c in self.checks],
            "violations": self.violations,
            "rcc": None if self.rcc is None else asdict(self.rcc),
            "seed": self.seed,
        }
        if self.wall_time is not None:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> AnalysisReport:
        analysis = CurveAnalysis(
            poly=data["poly"],
            d=data["d"],
            r=data["mdr"],
            T=data["T"],
            tau=data["tau"],
            ar_dims=tuple(data["ar_dims"]),
            n_dims=tuple(data["n_dims"]),
            nu=data["nu"],
            milnor_hilbert=tuple(data["milnor_hilbert"]),
            primes_used=tuple(data["primes_used"]),
            degenerate=data["degenerate"],
            verified=data["verified"],
            validated=data["validated"],
            escalations=data["escalations"],
            tau_stable=data["tau_stable"],
            n_dims_chi=None if data["n_dims_chi"] is None else tuple(data["n_dims_chi"]),
        )
        pred = data["predicted_nu"]
        split = data["splitting_type"]
        return cls(
            analysis=analysis,
            label=ClassLabel(data["class"], data["nu"], data["smooth"]),
            dpw=None if data["dpw"] is None else DpwReport(**data["dpw"]),
            splitting=None if split is None else SplittingType(*split),
            predicted=None if pred is None else (pred["value"], pred["branch"]),
            checks=tuple(TheoremCheck(**c) for c in data["theorem_checks"]),
            rcc=None if data["rcc"] is None else RccReport(**data["rcc"]),
            seed=data["seed"],
            wall_time=data.get("wall_time"),
        )

    @classmethod
    def from_json(cls, text: str) -> AnalysisReport:
        return cls.from_dict(json.loads(text))


def build_report(
    f: HomogPoly,
    seed: int | None = None,
    *,
    verify: bool | None = None,
    mu: int | None = None,
    irreducible: bool = False,
    allow_nonreduced: bool = False,
    timing: bool = False,
) -> AnalysisReport:
    """Analyse ``f`` and evaluate every applicable bound and characterisation.

    ``verify`` defaults to on for ``d <= 16``.  Theorem failures are recorded
    in the report rather than raised.
    """
    start = time.perf_counter()
    if verify is None:
        verify = f.degree <= 16
    a = analyze(f, seed=seed, verify=verify, allow_nonreduced=allow_nonreduced)
    label = classify(a, strict=False)
    checks: tuple[TheoremCheck, ...] = ()
    dpw = split = pred = None
    if a.degenerate is None:
        dpw = tau_bounds(a.d, a.r, a.tau)
        split = splitting_type(a.d, a.r)
        pred = predicted_nu(a.d, a.r, a.tau)
        checks = tuple(theorem_checks(a))
    rcc = None
    if a.d >= 6 and (irreducible or mu is not None):
        rcc = prop_rcc_consistency(a, mu_hint=mu, irreducible_hint=irreducible)
        checks += (TheoremCheck("mdr_one_characterisation", rcc.consistent, "; ".join(rcc.notes)),)
    wall = round(time.perf_counter() - start, 6) if timing else None
    return AnalysisReport(a, label, dpw, split, pred, checks, rcc, seed, wall)


def load_schema() -> dict:
    return json.loads(data_path("report.schema.json").read_text(encoding="utf-8"))


def validate_report(data: dict) -> None:
    jsonschema.validate(data, load_schema())
