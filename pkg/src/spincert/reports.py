"""Check reports, run configuration, and the suite runner.

Every check is a named function drawing its randomness from a SplitMix64
substream keyed by (seed, check id), so check order and suite composition
never affect sampling. A failing check produces a failing report; it never
aborts the rest of the suite.

Serialized reports omit the measured runtime by default: the determinism
contract (same seed, twice, byte-identical output) cannot hold for wall
clock values. Pass include_timing=True (CLI --timings) to emit them.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .checks import CHECKS, SUITES
from .errors import UnknownSuite
from .rng import SplitMix64


@dataclass
class RunConfig:
    """Seed, tolerance overrides and output options for a suite run."""

    seed: int = 0
    tol_overrides: dict[str, float] = field(default_factory=dict)
    output_path: str | None = None
    json_pretty: bool = False
    json_lines: bool = False
    include_timing: bool = False
    params: dict = field(default_factory=dict)

    def tol(self, check_id: str, default: float) -> float:
        return float(self.tol_overrides.get(check_id, default))

    def stream(self, check_id: str) -> SplitMix64:
        return SplitMix64(self.seed).stream(check_id)

    def param(self, name: str, default):
        v = self.params.get(name)
        return default if v is None else v


@dataclass
class CheckReport:
    """Outcome of one named check."""

    check: str
    params: dict
    residual: float | None
    tol: float | None
    passed: bool
    runtime_ms: int = 0

    def to_output_dict(self, include_timing: bool = False) -> dict:
        out = {
            "check": self.check,
            "params": self.params,
            "residual": self.residual,
            "tol": self.tol,
            "pass": self.passed,
        }
        if include_timing:
            out["runtimeMs"] = self.runtime_ms
        return out


def run_check(check_id: str, cfg: RunConfig) -> list[CheckReport]:
    """Run one check with isolation; exceptions become failing reports."""
    fn = CHECKS[check_id]
    start = time.perf_counter()
    try:
        reports = fn(cfg)
    except Exception as exc:  # suite isolation: report, do not propagate
        reports = [CheckReport(check=check_id,
                               params={"error": f"{type(exc).__name__}: {exc}"},
                               residual=None, tol=None, passed=False)]
    elapsed = int(1000 * (time.perf_counter() - start))
    for r in reports:
        r.runtime_ms = elapsed
    return reports


def run_suite(name: str, cfg: RunConfig | None = None) -> list[CheckReport]:
    """Run a named suite; reports come back ordered by check id."""
    cfg = cfg or RunConfig()
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    reports: list[CheckReport] = []
    for check_id in sorted(SUITES[name]):
        reports.extend(run_check(check_id, cfg))
    return reports


def reports_to_text(reports: list[CheckReport], cfg: RunConfig) -> str:
    dicts = [r.to_output_dict(cfg.include_timing) for r in reports]
    if cfg.json_lines:
        return "\n".join(json.dumps(d, sort_keys=True) for d in dicts) + "\n"
    indent = 2 if cfg.json_pretty else None
    return json.dumps(dicts, sort_keys=True, indent=indent) + "\n"


def all_passed(reports: list[CheckReport]) -> bool:
    return all(r.passed for r in reports)
