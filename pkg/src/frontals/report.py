"""The analysis pipeline and its machine-readable report.

`run_analyze` chains frontality, double-point curves, finiteness, Fitting
colengths, the stable counts, fold detection/classification and the
codimension comparison.  Each stage failure is recorded in the report
instead of aborting, so batch runs always produce one report per germ.

Numeric report fields are exact: integers stay integers, rationals are
rendered "a/b", and cap-limited colengths appear as explicit
"undetermined" markers (they also flip the process exit code, see cli).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__
from .folds import classify_simple, detect_fold, fold_codim
from .germs import (
    DivisibilityTheoremError,
    FrontalData,
    GermError,
    MapGerm,
    NotGenericallyImmersiveError,
    NotGenericallyInjectiveError,
    analyse_frontal,
    check_frontal,
    finiteness_checks,
)
from .invariants import (
    InvariantError,
    conjecture_report,
    evaluate_reading,
    milnor_plane,
    quasihomogeneous_test,
    skw_counts,
)
from .parsing import parse_expression, render
from .poly import Poly

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class GermSpec:
    """One corpus entry: a named germ plus optional expected values."""

    name: str
    p: str
    q: str
    expect: dict = field(default_factory=dict)

    def parse(self) -> MapGerm:
        return MapGerm(parse_expression(self.p), parse_expression(self.q), self.name)


@dataclass(frozen=True)
class AnalyzeOptions:
    max_jet: int = 40
    reading: str = "both"  # "dplus" | "full" | "both"
    presentation_order: int = 12


def _frac(x) -> object:
    """Exact JSON rendering: ints as ints, other rationals as 'a/b'."""
    if x is None:
        return None
    f = Fraction(x)
    if f.denominator == 1:
        return int(f)
    return f"{f.numerator}/{f.denominator}"


@dataclass
class Report:
    name: str
    p: str
    q: str
    data: dict
    stages: dict
    timing_ms: float

    def has_undetermined(self) -> bool:
        return bool(self.data.get("undetermined_fields"))

    def to_json_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "name": self.name,
            "p": self.p,
            "q": self.q,
            "stages": self.stages,
        }
        out.update(self.data)
        out["timing_ms"] = round(self.timing_ms, 3)
        return out


def _reading_dict(r) -> dict:
    if not r.applicable:
        return {"applicable": False, "mu_F": 0, "note": r.note}
    if r.undetermined:
        return {"applicable": True, "undetermined": True, "note": r.note}
    d = {
        "applicable": True,
        "mu_D": r.mu_D,
        "mu_image_D": _frac(r.mu_image_D),
        "mu_F": _frac(r.mu_F),
        "integral": r.integral,
    }
    if r.note:
        d["note"] = r.note
    return d


def run_analyze(spec: GermSpec, options: AnalyzeOptions = AnalyzeOptions()) -> Report:
    """Run the full pipeline on one germ; never raises for analysis
    failures (they are recorded per stage)."""
    t0 = time.perf_counter()
    stages: dict = {}
    data: dict = {"undetermined_fields": []}
    cap = options.max_jet

    germ = MapGerm(parse_expression(spec.p), parse_expression(spec.q), spec.name)

    try:
        from .fitting import multiplicity

        data["multiplicity"] = multiplicity(germ)
    except Exception as exc:
        data["multiplicity"] = None
        stages["multiplicity"] = f"error: {exc}"

    # --- frontality -------------------------------------------------------
    frontal_data: Optional[FrontalData] = None
    try:
        verdict = check_frontal(germ, cap=cap)
        tier = verdict.tier if verdict.tier == "exact" else f"jet({verdict.jet_order or cap})"
        data["frontal"] = verdict.frontal
        data["frontal_tier"] = tier
        data["swapped_components"] = verdict.swapped
        if verdict.frontal:
            div = verdict.division
            if div.mu_num is not None:
                if div.mu_den.is_constant:
                    data["mu"] = render(div.mu_num * (1 / div.mu_den.constant_term()))
                else:
                    data["mu"] = {
                        "numerator": render(div.mu_num),
                        "denominator": render(div.mu_den),
                    }
            else:
                data["mu"] = {"series_to_order": div.jet_order, "truncation": render(div.mu_trunc)}
        else:
            data["obstruction"] = {
                "degree": verdict.division.obstruction_degree,
                "detail": verdict.division.obstruction,
            }
        stages["frontality"] = "ok"
    except (GermError, NotGenericallyImmersiveError) as exc:
        stages["frontality"] = f"error: {exc}"
        data["frontal"] = None

    # --- double point curves ---------------------------------------------
    if data.get("frontal"):
        try:
            frontal_data = analyse_frontal(germ, cap=cap)
            c = frontal_data.curves
            data["curves"] = {
                "C": render(c.cuspidal),
                "Dplus": render(c.transverse),
                "Dplus_empty": c.transverse_is_empty,
                "lambda": render(c.lam),
            }
            stages["curves"] = "ok"
        except (NotGenericallyInjectiveError, DivisibilityTheoremError, GermError) as exc:
            stages["curves"] = f"error: {exc}"
    elif data.get("frontal") is False:
        stages["curves"] = "skipped: germ is not frontal"

    # --- finiteness --------------------------------------------------------
    if frontal_data is not None:
        try:
            fin = finiteness_checks(frontal_data, cap=cap)
            data["finiteness"] = {
                "vpmu_isolated": fin.vpmu_isolated,
                "critical_isolated": fin.critical_isolated,
                "c_reduced": fin.c_reduced,
                "dplus_reduced": fin.dplus_reduced,
                "f_finite": fin.f_finite,
            }
            if fin.any_undetermined():
                data["undetermined_fields"].append("finiteness")
            stages["finiteness"] = "ok"
        except GermError as exc:
            stages["finiteness"] = f"error: {exc}"
    else:
        stages["finiteness"] = "skipped: no frontal data"

    # --- stable counts ------------------------------------------------------
    counts = None
    if frontal_data is not None:
        try:
            counts = skw_counts(frontal_data, cap=cap, f3_base_order=options.presentation_order)
            data["colengths"] = {
                "P3": counts.P3,
                "PT": counts.PT,
                "PAA": counts.PAA,
                "F3": counts.F3,
            }
            data["counts"] = {"S": counts.S, "K": counts.K, "T": counts.T, "W": counts.W}
            data["jet_orders"] = {
                "divisibility_cap": cap,
                "presentation": counts.f3_jet_order,
            }
            stages["invariants"] = "ok"
        except InvariantError as exc:
            stages["invariants"] = f"error: {exc}"
            data["undetermined_fields"].append("counts")
        except Exception as exc:  # fitting errors on degenerate input
            stages["invariants"] = f"error: {exc}"
    else:
        stages["invariants"] = "skipped: no frontal data"

    # --- Milnor numbers, both readings --------------------------------------
    reading_dplus = reading_full = None
    if frontal_data is not None and counts is not None:
        c = frontal_data.curves
        mu_c = milnor_plane(c.cuspidal, cap=cap) if not c.cuspidal.is_constant else None
        if mu_c is not None:
            if mu_c.finite:
                data["mu_C"] = mu_c.value
                data["mu_image_C"] = 2 * counts.S + mu_c.value
            else:
                data["mu_C"] = "undetermined"
                data["undetermined_fields"].append("mu_C")
        empty = c.transverse_is_empty
        full_curve = (frontal_data.p_y * c.tau_raw).normalized_unit()
        want = options.reading
        if want in ("dplus", "both"):
            reading_dplus = evaluate_reading("dplus", counts, c.transverse, empty, cap=cap)
            data["mu_F_dplus"] = _reading_dict(reading_dplus)
            if reading_dplus.undetermined:
                data["undetermined_fields"].append("mu_F_dplus")
        if want in ("full", "both"):
            full_empty = empty and frontal_data.p_y.is_constant
            reading_full = evaluate_reading("full", counts, full_curve, full_empty, cap=cap)
            data["mu_F_full"] = _reading_dict(reading_full)
            if reading_full.undetermined:
                data["undetermined_fields"].append("mu_F_full")
        stages["milnor"] = "ok"
    else:
        stages["milnor"] = "skipped: counts unavailable"

    # --- fold structure -----------------------------------------------------
    codim = None
    fold = detect_fold(germ)
    if fold is not None:
        try:
            codim = fold_codim(fold, cap=cap)
            data["fold"] = {
                "is_fold": True,
                "frontalised": fold.frontalised,
                "h": render(fold.h),
                "codim": codim,
            }
            stages["fold"] = "ok"
        except Exception as exc:
            data["fold"] = {"is_fold": True, "frontalised": fold.frontalised, "h": render(fold.h)}
            stages["fold"] = f"error: {exc}"
    else:
        data["fold"] = {"is_fold": False}
        stages["fold"] = "ok"

    label = classify_simple(germ)
    data["classification"] = (
        {"label": label.label, "family": label.family, "k": label.k, "convention": label.convention}
        if label is not None
        else "unclassified"
    )

    # --- quasihomogeneity and the codimension comparison ---------------------
    qh = quasihomogeneous_test(germ)
    data["quasihomogeneous"] = {
        "is_qh": qh.is_qh,
        "weights": list(qh.weights) if qh.weights else None,
        "degrees": list(qh.degrees) if qh.degrees else None,
    }
    if (
        data.get("frontal")
        and counts is not None
        and reading_dplus is not None
        and reading_full is not None
    ):
        record = conjecture_report(codim, qh, reading_dplus, reading_full)
        data["conjecture"] = {
            "codim": record.codim,
            "quasihomogeneous": record.quasihomogeneous,
            "mu_F_dplus": _frac(record.mu_F_dplus),
            "mu_F_full": _frac(record.mu_F_full),
            "comparison_dplus": record.comparison_dplus,
            "comparison_full": record.comparison_full,
            "note": record.note,
        }
        stages["conjecture"] = "ok"
    else:
        stages["conjecture"] = "skipped: requires frontal counts and both readings"

    if not data["undetermined_fields"]:
        del data["undetermined_fields"]
    return Report(
        name=spec.name,
        p=spec.p,
        q=spec.q,
        data=data,
        stages=stages,
        timing_ms=(time.perf_counter() - t0) * 1000.0,
    )


# ------------------------------------------------------------------ expectations

def _poly_matches(expected_text: str, actual_text: str) -> bool:
    """Compare two rendered curve equations up to a unit scalar."""
    from .poly import proportional

    if expected_text in ("unit", "empty", "-"):
        # expected empty curve: the normalized equation is the constant 1
        return actual_text == "1"
    pe = parse_expression(expected_text)
    pa = parse_expression(actual_text)
    return proportional(pe, pa)


def check_expectations(report: Report, expect: dict) -> list:
    """Compare a report against a corpus expectation block; returns a list
    of human-readable mismatch strings (empty = pass)."""
    mismatches = []
    d = report.data

    def miss(key, want, got):
        mismatches.append(f"{report.name}: {key} expected {want!r}, got {got!r}")

    for key, want in expect.items():
        if key == "frontal":
            got = d.get("frontal")
            if got != want:
                miss(key, want, got)
        elif key in ("S", "K", "T", "W"):
            got = (d.get("counts") or {}).get(key)
            if got != want:
                miss(key, want, got)
        elif key in ("P3", "PT", "PAA", "F3"):
            got = (d.get("colengths") or {}).get(key)
            if got != want:
                miss(key, want, got)
        elif key == "codim":
            got = (d.get("fold") or {}).get("codim")
            if got != want:
                miss(key, want, got)
        elif key == "classification":
            got = d.get("classification")
            got_label = got["label"] if isinstance(got, dict) else got
            if got_label != want:
                miss(key, want, got_label)
        elif key == "C":
            got = (d.get("curves") or {}).get("C")
            if got is None or not _poly_matches(want, got):
                miss(key, want, got)
        elif key == "Dplus":
            got = (d.get("curves") or {}).get("Dplus")
            if got is None or not _poly_matches(want, got):
                miss(key, want, got)
        elif key == "multiplicity":
            got = d.get("multiplicity")
            if got != want:
                miss(key, want, got)
        elif key == "qh":
            got = (d.get("quasihomogeneous") or {}).get("is_qh")
            if got != want:
                miss(key, want, got)
        elif key == "mu":
            got = d.get("mu")
            if not isinstance(got, str) or not _poly_matches(want, got):
                miss(key, want, got)
        else:
            mismatches.append(f"{report.name}: unknown expectation key {key!r}")
    return mismatches
