"""End-to-end certification pipeline and JSON report assembly.

A report is a plain JSON object: every rational is rendered "p/q" in
lowest terms, structural integers stay JSON integers, and key order is
canonical, so identical configurations produce byte-identical reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import rcbounds, tracesim
from .errors import InconclusiveAtHorizon, InputError
from .params import (
    ConstraintReport,
    ParamFamily,
    SequenceTable,
    check_constraints,
    geometric_ratio_majorant,
    make_explicit_family,
    make_geometric_family,
    sequences,
)
from .rationals import as_fraction, format_rational
from .tracesim import flip_compatibility, gap_series

SCHEMA_VERSION = "1"

VERDICT_CERTIFIED = "Certified"
VERDICT_REFUTED = "Refuted"
VERDICT_INCONCLUSIVE = "InconclusiveAtHorizon"

EXIT_CERTIFIED = 0
EXIT_REFUTED = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT_ERROR = 3

_VERDICT_EXIT = {
    VERDICT_CERTIFIED: EXIT_CERTIFIED,
    VERDICT_REFUTED: EXIT_REFUTED,
    VERDICT_INCONCLUSIVE: EXIT_INCONCLUSIVE,
}

ASSUMPTIONS = (
    "unitary cancellation of projections with equal class over the "
    "contractible stage spaces (stable rank one) is imported, not verified",
    "the mean-dimension bound rc <= (limiting dimension ratio)/2 for "
    "simple diagonal systems is imported, not verified",
    "interval-side stage maps are opaque: only their counts and agreement "
    "pattern enter the verified claims",
)


def q(value) -> str:
    return format_rational(value)


def jsonable_checks(checks) -> list:
    return [
        {
            "name": c.name,
            "lhs": q(c.lhs),
            "rel": c.rel,
            "rhs": q(c.rhs),
            "holds": c.holds,
        }
        for c in checks
    ]


def jsonable_constraints(report: ConstraintReport) -> dict:
    return {
        "all_passed": report.all_passed,
        "exactly_refuted": report.exactly_refuted,
        "entries": [
            {
                "name": e.name,
                "status": e.status,
                "holds": e.holds,
                "evidence": e.evidence,
                "note": e.note,
                "checks": jsonable_checks(e.checks),
            }
            for e in report.entries
        ],
    }


def jsonable_table(table: SequenceTable, include_sequences: bool = False) -> dict:
    out = {
        "horizon": table.horizon,
        "omega": q(table.omega),
        "omega_prime_partial_sum": q(table.omega_prime_partial),
        "kappa_upper_envelope": q(table.kappa_ub),
        "horizon_limited": table.horizon_limited,
    }
    if table.horizon_limited:
        out["kappa_lower_bound_horizon_only"] = q(table.kappa_lb)
        out["omega_prime_upper_bound_horizon_only"] = q(table.omega_prime_ub)
    else:
        out["kappa_lower_bound"] = q(table.kappa_lb)
        out["omega_prime_upper_bound"] = q(table.omega_prime_ub)
        out["kappa_lower_bound_vacuous"] = table.kappa_lb_vacuous
    if include_sequences:
        for name in ("d", "k", "l", "r", "s", "t"):
            out[name] = [q(x) for x in getattr(table, name)]
    return out


def jsonable_rc_lower(cert: rcbounds.RcLowerCertificate) -> dict:
    return {
        "rho": q(cert.rho),
        "alpha": cert.alpha,
        "beta": cert.beta,
        "delta": q(cert.delta),
        "epsilon": q(cert.epsilon),
        "n0": cert.n0,
        "n": cert.n,
        "N1": q(cert.N1),
        "N2": q(cert.N2),
        "endpoint_lambda1": q(cert.endpoint_lambda1),
        "endpoint_lambda0": q(cert.endpoint_lambda0),
        "kappa_lower_bound": q(cert.kappa_lb),
        "omega": q(cert.omega),
        "reverified": cert.reverify(),
        "checks": jsonable_checks(cert.checks),
    }


def jsonable_global_lower(cert: rcbounds.GlobalLowerCertificate) -> dict:
    return {
        "rho": q(cert.rho),
        "n": cert.n,
        "M": q(cert.M),
        "kappa_lower_bound": q(cert.kappa_lb),
        "reverified": cert.reverify(),
        "checks": jsonable_checks(cert.checks),
    }


def jsonable_rc_upper(result: rcbounds.RcUpperResult) -> dict:
    return {
        "certified_limit_bound": q(result.certified_limit_bound),
        "per_stage": [{"stage": n, "ratio": q(u)} for n, u in result.per_stage],
        "reverified": result.reverify(),
        "checks": jsonable_checks(result.checks),
    }


def jsonable_separation(report: rcbounds.SeparationReport) -> dict:
    out = {
        "upper_bound": q(report.upper_bound),
        "lower_target": q(report.lower_target),
        "separated": report.separated,
        "status": report.status,
        "advice": report.advice,
        "checks": jsonable_checks(report.checks),
    }
    out["rho"] = q(report.rho) if report.rho is not None else None
    out["certificate"] = (
        jsonable_rc_lower(report.certificate) if report.certificate else None
    )
    return out


def jsonable_flip(report: tracesim.FlipReport) -> dict:
    return {
        "involution": report.involution,
        "order_unit_fixed": report.order_unit_fixed,
        "positivity_preserved": report.positivity_preserved,
        "intertwines_unit_embedding": report.intertwines_unit_embedding,
        "swap_commutes_with_stages": report.swap_commutes_with_stages,
        "stages_verified": report.stages_verified,
        "holds": report.holds,
    }


def jsonable_gap_series(series: tracesim.GapSeries) -> dict:
    return {
        "stage_gaps": [q(d) for d in series.deltas],
        "partial_sum": q(series.partial_sums[-1]) if series.partial_sums else "0/1",
        "tail_bound": q(series.tail_bound) if series.tail_bound is not None else None,
        "total_bound": q(series.total_bound) if series.total_bound is not None else None,
        "summable_certified": series.summable,
        "horizon_limited": series.horizon_limited,
    }


# ---------------------------------------------------------------------------
# Configuration


DEFAULT_CONFIG = {
    "family": "geometric",
    "N": 6,
    "horizon": 40,
    "rho": None,
    "grid": tracesim.DEFAULT_RESOLUTION,
    "carrier": "exact",
}


def resolve_config(config: Optional[dict]) -> dict:
    merged = dict(DEFAULT_CONFIG)
    for key, value in (config or {}).items():
        if value is not None:
            merged[key] = value
    if merged["family"] not in ("geometric", "explicit"):
        raise InputError(f"unknown family kind {merged['family']!r}")
    try:
        merged["horizon"] = int(merged["horizon"])
        merged["N"] = int(merged["N"])
        merged["grid"] = int(merged["grid"])
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed integer in configuration: {exc}") from exc
    if merged["carrier"] not in (tracesim.EXACT, tracesim.FLOAT):
        raise InputError(f"carrier must be 'exact' or 'float', got {merged['carrier']!r}")
    if merged["rho"] is not None:
        merged["rho"] = format_rational(as_fraction(merged["rho"]))
    return merged


def build_family(config: dict) -> ParamFamily:
    if config["family"] == "geometric":
        return make_geometric_family(config["N"])
    d = config.get("d")
    k = config.get("k")
    if d is None or k is None:
        raise InputError("explicit family needs 'd' and 'k' lists")
    d = [int(x) for x in d]
    k = [int(x) for x in k]
    tail_spec = config.get("tail") or {"type": "none"}
    tail_type = tail_spec.get("type", "none")
    if tail_type == "none":
        majorant = None
    elif tail_type == "geometric":
        majorant = geometric_ratio_majorant(d, k, int(tail_spec["N"]))
    elif tail_type == "table":
        values = [as_fraction(v) for v in tail_spec["values"]]
        if len(values) < len(d):
            raise InputError("tail table must cover every supplied stage")
        if any(b > a for a, b in zip(values, values[1:])):
            raise InputError("tail table must be nonincreasing")
        if any(v < 0 for v in values):
            raise InputError("tail table values must be nonnegative")

        def majorant(n: int, _vals=tuple(values)) -> Fraction:
            if not 0 <= n < len(_vals):
                raise InputError(f"tail table covers 0..{len(_vals) - 1}, got {n}")
            return _vals[n]

    else:
        raise InputError(f"unknown tail majorant type {tail_type!r}")
    return make_explicit_family(d, k, tail_majorant=majorant)


def config_echo(config: dict) -> dict:
    echo = {
        "family": config["family"],
        "horizon": config["horizon"],
        "rho": config["rho"],
        "grid": config["grid"],
        "carrier": config["carrier"],
    }
    if config["family"] == "geometric":
        echo["N"] = config["N"]
    else:
        echo["d"] = [int(x) for x in config["d"]]
        echo["k"] = [int(x) for x in config["k"]]
        echo["tail"] = config.get("tail") or {"type": "none"}
    return echo


# ---------------------------------------------------------------------------
# The full certification chain


@dataclass(frozen=True)
class TheoremReport:
    verdict: str
    config: dict
    family: ParamFamily
    table: SequenceTable
    constraints: ConstraintReport
    rc_upper: Optional[rcbounds.RcUpperResult]
    separation: Optional[rcbounds.SeparationReport]
    flip: tracesim.FlipReport
    gaps: tracesim.GapSeries
    notes: tuple

    @property
    def exit_code(self) -> int:
        return _VERDICT_EXIT[self.verdict]

    def to_jsonable(self) -> dict:
        chain = [
            "family constraints evaluated exactly, with certified one-sided "
            "bounds standing in for the limit constants",
            "distinguished corner bounded above by 1/(1 - 2 omega) through "
            "the stagewise dimension-to-rank ratios",
            "complementary corner bounded below by rho through the "
            "rank-threshold and trace-gap certificate",
            "swap commutes with every connecting matrix and exchanges the "
            "corner classes at every stage",
            "stage-gap series certified summable, so the merged and split "
            "systems share their limiting trace data",
            "an algebra automorphism inducing the flip would carry one "
            "corner onto the other and force equal radii of comparison, "
            "contradicting the separation above",
        ]
        return {
            "schema_version": SCHEMA_VERSION,
            "config": config_echo(self.config),
            "family": _family_description(self.family),
            "constants": jsonable_table(self.table),
            "constraints": jsonable_constraints(self.constraints),
            "rc_upper": jsonable_rc_upper(self.rc_upper) if self.rc_upper else None,
            "separation": (
                jsonable_separation(self.separation) if self.separation else None
            ),
            "flip": jsonable_flip(self.flip),
            "gap_series": jsonable_gap_series(self.gaps),
            "assumptions": list(ASSUMPTIONS),
            "chain": chain,
            "notes": list(self.notes),
            "verdict": self.verdict,
        }


def _family_description(family: ParamFamily) -> dict:
    desc = dict(family.description)
    if "telescoped_from" in desc:
        desc["telescoped_from"] = dict(desc["telescoped_from"])
    return desc


def certify_theorem(config: Optional[dict] = None) -> TheoremReport:
    """Run the full chain: constraints, corner separation, flip, gap series.

    The verdict is Certified only when every sub-record is verified with
    bounds that remain valid beyond the horizon; an exact counterexample
    anywhere gives Refuted; anything undecided within the horizon gives
    InconclusiveAtHorizon.
    """
    cfg = resolve_config(config)
    family = build_family(cfg)
    table = sequences(family, cfg["horizon"])
    constraints = check_constraints(family, cfg["horizon"])
    flip = flip_compatibility(table)
    gaps = gap_series(table)
    notes = []

    rc_up = None
    sep = None
    if constraints.exactly_refuted:
        verdict = VERDICT_REFUTED
        failing = [e.name for e in constraints.entries if e.status == "fail"]
        notes.append(f"constraints exactly refuted: {', '.join(failing)}")
    elif not constraints.all_passed:
        verdict = VERDICT_INCONCLUSIVE
        undecided = [
            e.name for e in constraints.entries if e.status == "inconclusive"
        ]
        notes.append(f"constraints undecided at this horizon: {', '.join(undecided)}")
    else:
        rho = as_fraction(cfg["rho"]) if cfg["rho"] is not None else None
        rc_up = rcbounds.rc_upper(table)
        try:
            sep = rcbounds.separation(table, rho=rho)
        except InconclusiveAtHorizon as exc:
            verdict = VERDICT_INCONCLUSIVE
            notes.append(f"lower certificate search inconclusive: {exc}")
            sep = None
        else:
            if not sep.separated:
                verdict = VERDICT_INCONCLUSIVE
                notes.append(sep.advice)
            elif not (flip.holds and gaps.summable):
                verdict = VERDICT_INCONCLUSIVE
                if not flip.holds:
                    notes.append("flip verification failed")
                if not gaps.summable:
                    notes.append("gap series not certified summable")
            else:
                verdict = VERDICT_CERTIFIED

    if table.horizon_limited and verdict != VERDICT_REFUTED:
        if verdict == VERDICT_CERTIFIED:
            verdict = VERDICT_INCONCLUSIVE
        notes.append(
            "family has no tail majorant: bounds are horizon-limited, so "
            "nothing is certified beyond the tabulated stages"
        )

    return TheoremReport(
        verdict=verdict,
        config=cfg,
        family=family,
        table=table,
        constraints=constraints,
        rc_upper=rc_up,
        separation=sep,
        flip=flip,
        gaps=gaps,
        notes=tuple(notes),
    )


def render_report(payload: dict) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
