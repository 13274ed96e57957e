"""The 0-stable invariant pipeline for frontal surface germs.

Four colengths (P3, PT, PAA', F3) determine the counts of swallowtails S,
cuspidal double points K, triple points T and folded Whitney umbrellas W
in a stable frontal perturbation, through the triangular system

    P3 = S,  PAA' = 2S + K,  PT = 2S + K + W,  F3 = S + K + T.

On top of that sit plane-curve Milnor numbers, the image-Milnor-number
identities for the curves f(C) and f(D), the frontal Milnor number (two
equivalent expressions), a quasihomogeneity solver and the experimental
codimension-comparison report.

The symbol mu(D) is evaluated under BOTH readings of the double-point
curve: the transverse part V(tau) alone ("dplus") and the full curve
V(p_y * tau) ("full").  The two readings genuinely differ and the
evaluation never guesses; both are reported, half-integers are kept exact
and flagged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .fitting import F3Result, fitting_F3
from .germs import FrontalData, MapGerm
from .local_algebra import ColengthResult, colength
from .poly import Poly


class InvariantError(ValueError):
    pass


@dataclass(frozen=True)
class StableCounts:
    """The solved counts together with the colengths they came from."""

    P3: int
    PT: int
    PAA: int
    F3: int
    S: int
    K: int
    T: int
    W: int
    f3_jet_order: int

    def reconstruct(self) -> tuple:
        """Invert back to (P3, PT, PAA', F3); must match the inputs."""
        return (
            self.S,
            2 * self.S + self.K + self.W,
            2 * self.S + self.K,
            self.S + self.K + self.T,
        )


def skw_counts(data: FrontalData, cap: int = 40, f3_base_order: int = 12) -> StableCounts:
    """Compute (S, K, T, W) from the four defining colengths.

    Raises InvariantError when any colength fails to stabilize below the
    cap; partial reporting is handled by the pipeline, not here.
    """
    germ = data.germ
    p_y = data.p_y
    p_yy = p_y.derivative("y")
    res_p3 = colength([p_y, p_yy], cap=cap)
    res_pt = colength([p_y, data.curves.tau_raw], cap=cap)
    dd_vars = data.alpha.vars if not data.alpha.is_zero else ("x", "y", "yp")
    gens_paa = [data.p_y.lift(dd_vars), data.alpha, data.alpha_prime]
    gens_paa = [g for g in gens_paa if not g.is_zero]
    res_paa = colength(gens_paa, cap=cap)
    f3 = fitting_F3(germ, base_order=f3_base_order, cap=cap)
    missing = [
        name
        for name, r in (("P3", res_p3), ("PT", res_pt), ("PAA", res_paa), ("F3", f3.colength))
        if not r.finite
    ]
    if missing:
        raise InvariantError(f"colength undetermined at cap for: {', '.join(missing)}")
    P3, PT, PAA, F3 = res_p3.value, res_pt.value, res_paa.value, f3.value
    S = P3
    K = PAA - 2 * S
    W = PT - PAA
    T = F3 - PAA + P3
    counts = StableCounts(P3, PT, PAA, F3, S, K, T, W, f3.jet_order)
    if counts.reconstruct() != (P3, PT, PAA, F3):
        raise InvariantError("internal inconsistency inverting the colength system")
    return counts


def milnor_plane(g: Poly, cap: int = 40) -> ColengthResult:
    """Milnor number of a plane curve germ: colength of the Jacobian ideal.

    A cap-limited result signals a non-reduced (or very degenerate) curve.
    """
    if g.is_zero:
        raise InvariantError("zero equation has no Milnor number")
    if g.constant_term() != 0:
        # Empty germ: the curve misses the origin, mu = 0 by convention.
        return ColengthResult(value=0, stabilized_at=0, cap=cap, monomial_basis=(), vars=g.vars)
    gens = [g.derivative(v) for v in g.vars]
    gens = [h for h in gens if not h.is_zero]
    if not gens:
        return ColengthResult(value=None, stabilized_at=None, cap=cap, cap_reached=True, vars=g.vars)
    return colength(gens, cap=cap)


def marar_mond_eval(S: int, K: int, T: int, W: int, mu_C, mu_D) -> tuple:
    """Milnor numbers of the image curves from the counts and source curves.

        mu(f(C)) = 2S + mu(C)
        mu(f(D)) = (2K + 2T + mu(D) - W - S + 1) / 2

    The division by two is carried exactly; integrality is reported by the
    caller, never assumed here.
    """
    mu_image_C = Fraction(2 * S + mu_C)
    mu_image_D = Fraction(2 * K + 2 * T + mu_D - W - S + 1, 2)
    return mu_image_C, mu_image_D


def frontal_milnor(S: int, K: int, T: int, W: int, mu_D) -> tuple:
    """Both expressions for the frontal Milnor number.

        via image:  mu(f(D)) - S - W + T + 1
        via source: (mu(D) + 3(1 - S - W)) / 2 + K + 2T

    The two are algebraically identical through the image identity above;
    the equality is asserted on every call.
    """
    _, mu_image_D = marar_mond_eval(S, K, T, W, 0, mu_D)
    via_image = mu_image_D - S - W + T + 1
    via_source = Fraction(mu_D + 3 * (1 - S - W), 2) + K + 2 * T
    if via_image != via_source:
        raise InvariantError("the two frontal Milnor number expressions disagree")
    return via_image, via_source


@dataclass(frozen=True)
class MilnorReading:
    """One reading of the mu(D) symbol and everything derived from it."""

    reading: str  # "dplus" | "full"
    applicable: bool
    mu_D: Optional[int] = None
    mu_image_D: Optional[Fraction] = None
    mu_F: Optional[Fraction] = None
    integral: Optional[bool] = None
    undetermined: bool = False
    note: Optional[str] = None


def evaluate_reading(
    reading: str,
    counts: StableCounts,
    curve: Poly,
    empty: bool,
    cap: int = 40,
) -> MilnorReading:
    """Evaluate one mu(D) reading; empty transverse curves are flagged
    not-applicable instead of being forced through the formulas."""
    if empty:
        return MilnorReading(
            reading=reading,
            applicable=False,
            note="transverse double-point curve is empty; vanishing homology trivial, mu_F = 0",
        )
    res = milnor_plane(curve, cap=cap)
    if not res.finite:
        return MilnorReading(
            reading=reading,
            applicable=True,
            undetermined=True,
            note=f"Milnor number undetermined at cap {res.cap} (non-reduced curve?)",
        )
    mu_D = res.value
    _, mu_image_D = marar_mond_eval(counts.S, counts.K, counts.T, counts.W, 0, mu_D)
    mu_F, _ = frontal_milnor(counts.S, counts.K, counts.T, counts.W, mu_D)
    return MilnorReading(
        reading=reading,
        applicable=True,
        mu_D=mu_D,
        mu_image_D=mu_image_D,
        mu_F=mu_F,
        integral=mu_F.denominator == 1,
        note=None if mu_F.denominator == 1 else "non-integral value; reading unlikely to be the intended one",
    )


@dataclass(frozen=True)
class QuasihomogeneityResult:
    is_qh: bool
    weights: Optional[tuple] = None  # (w_x, w_y) positive integers, gcd 1
    degrees: Optional[tuple] = None  # weighted degrees of the three components


def quasihomogeneous_test(germ: MapGerm) -> QuasihomogeneityResult:
    """Exact feasibility: positive weights making each component
    weighted-homogeneous.  Returns the minimal positive integer witness."""
    constraints = []
    for comp in (germ.p, germ.q):
        exps = list(comp.terms)
        for e in exps[1:]:
            da = e[0] - exps[0][0]
            db = e[1] - exps[0][1]
            if (da, db) != (0, 0):
                constraints.append((da, db))
    # Solve da*wx + db*wy = 0 for all constraints, wx, wy > 0.
    if not constraints:
        return _qh_result(germ, (1, 1))
    a0, b0 = constraints[0]
    # Direction orthogonal to (a0, b0): (wx, wy) ~ (-b0, a0) or (b0, -a0).
    wx, wy = -b0, a0
    for a, b in constraints:
        if a * wx + b * wy != 0:
            return QuasihomogeneityResult(False)
    if wx == 0 and wy == 0:
        return QuasihomogeneityResult(False)
    if wx < 0 or wy < 0:
        wx, wy = -wx, -wy
    if wx <= 0 or wy <= 0:
        return QuasihomogeneityResult(False)
    g = gcd(wx, wy)
    return _qh_result(germ, (wx // g, wy // g))


def _qh_result(germ: MapGerm, w: tuple) -> QuasihomogeneityResult:
    wx, wy = w
    degs = [wx]
    for comp in (germ.p, germ.q):
        e = next(iter(comp.terms))
        degs.append(e[0] * wx + e[1] * wy)
    return QuasihomogeneityResult(True, weights=(wx, wy), degrees=tuple(degs))


@dataclass(frozen=True)
class ConjectureRecord:
    """Experimental comparison of the frontal Milnor number with the fold
    codimension.  The mu(D) reading ambiguity propagates here, so the
    record carries both readings and never asserts one."""

    codim: Optional[int]
    quasihomogeneous: bool
    weights: Optional[tuple]
    mu_F_dplus: Optional[Fraction]
    mu_F_full: Optional[Fraction]
    comparison_dplus: Optional[str]
    comparison_full: Optional[str]
    note: str


def _compare(mu_F: Optional[Fraction], codim: Optional[int]) -> Optional[str]:
    if mu_F is None or codim is None:
        return None
    if mu_F > codim:
        return "greater"
    if mu_F == codim:
        return "equal"
    return "less"


def conjecture_report(
    codim: Optional[int],
    qh: QuasihomogeneityResult,
    reading_dplus: MilnorReading,
    reading_full: MilnorReading,
) -> ConjectureRecord:
    def mu_of(r: MilnorReading) -> Optional[Fraction]:
        if not r.applicable:
            return Fraction(0)
        return r.mu_F

    mu_dplus = mu_of(reading_dplus)
    mu_full = mu_of(reading_full)
    note = (
        "experimental: the mu(D) reading is ambiguous and both values are shown"
        if codim is not None
        else "codimension not computed (germ is not of fold type)"
    )
    return ConjectureRecord(
        codim=codim,
        quasihomogeneous=qh.is_qh,
        weights=qh.weights,
        mu_F_dplus=mu_dplus,
        mu_F_full=mu_full,
        comparison_dplus=_compare(mu_dplus, codim),
        comparison_full=_compare(mu_full, codim),
        note=note,
    )
