"""Germ-level analysis of corank-1 surface parametrizations (x, p, q).

Covers frontality (does p_y divide q_y in the local ring, either way
round), the cuspidal curve V(p_y) and the transverse double-point curve
V(tau), the divided-difference witnesses alpha/alpha', and the finiteness
tests that decide whether the germ admits only isolated instability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .local_algebra import ColengthResult, colength
from .poly import (
    LocalDivision,
    NotDivisibleError,
    Poly,
    divided_difference,
    exact_divide,
    local_divisibility,
    resultant,
    second_divided_difference,
    squarefree_at_origin,
)

GERM_VARS = ("x", "y")
DD_VAR = "yp"  # the primed source variable of the double-point equations


class GermError(ValueError):
    pass


class NotGenericallyImmersiveError(GermError):
    pass


class NotGenericallyInjectiveError(GermError):
    pass


class DivisibilityTheoremError(GermError):
    """lambda was not an exact multiple of p_y^2; for a frontal germ this
    indicates a bug, for anything else an invalid input."""


@dataclass(frozen=True)
class MapGerm:
    """A corank-1 map-germ (x, y) -> (x, p(x, y), q(x, y)).

    Both components must vanish at the origin and carry no pure y-linear
    term, so the kernel of the differential at 0 is exactly the y-axis.
    """

    p: Poly
    q: Poly
    name: Optional[str] = None

    def __post_init__(self):
        for label, comp in (("p", self.p), ("q", self.q)):
            if comp.vars != GERM_VARS:
                raise GermError(f"component {label} must be a polynomial in {GERM_VARS}")
            if comp.constant_term() != 0:
                raise GermError(f"component {label} does not vanish at the origin")
            if comp.coeff((0, 1)) != 0:
                raise GermError(
                    f"component {label} has a pure y-linear term; the germ is not of corank 1"
                )

    def swapped(self) -> "MapGerm":
        return MapGerm(self.q, self.p, self.name)

    def components(self) -> tuple:
        return (Poly.variable(GERM_VARS, "x"), self.p, self.q)

    def __repr__(self):
        from .parsing import render

        tag = f" {self.name!r}" if self.name else ""
        return f"MapGerm{tag}(p={render(self.p)}, q={render(self.q)})"


@dataclass(frozen=True)
class FrontalVerdict:
    """Result of the frontality test.

    `tier` is "exact" when divisibility was certified, "jet" when it only
    held up to `jet_order`.  When the roles of p and q had to be swapped
    to achieve p_y | q_y, `swapped` is set and `germ` holds the swapped
    germ all further analysis should use.
    """

    frontal: bool
    tier: str
    germ: MapGerm
    swapped: bool = False
    division: Optional[LocalDivision] = None
    jet_order: Optional[int] = None

    @property
    def mu_division(self) -> LocalDivision:
        if not self.frontal:
            raise GermError("germ is not frontal; no frontal ratio")
        return self.division


def check_frontal(germ: MapGerm, cap: int = 40) -> FrontalVerdict:
    """Decide frontality: p_y | q_y or q_y | p_y in the local ring.

    On success the verdict records the frontal ratio mu with q_y = mu * p_y
    for the (possibly swapped) germ.
    """
    p_y = germ.p.derivative("y")
    q_y = germ.q.derivative("y")
    if p_y.is_zero and q_y.is_zero:
        raise NotGenericallyImmersiveError(
            "both p_y and q_y vanish identically; the germ is nowhere immersive"
        )
    forward = local_divisibility(p_y, q_y, cap=cap)
    if forward.verdict == "divides":
        return FrontalVerdict(True, forward.tier, germ, False, forward)
    backward = local_divisibility(q_y, p_y, cap=cap)
    if backward.verdict == "divides":
        return FrontalVerdict(True, backward.tier, germ.swapped(), True, backward)
    if forward.verdict == "divides_to_cap":
        return FrontalVerdict(True, "jet", germ, False, forward, jet_order=forward.jet_order)
    if backward.verdict == "divides_to_cap":
        return FrontalVerdict(True, "jet", germ.swapped(), True, backward, jet_order=backward.jet_order)
    return FrontalVerdict(False, "jet", germ, False, forward)


@dataclass(frozen=True)
class DoublePointCurves:
    """The double-point data of a frontal germ in prenormal form.

    lam is the resultant of the two divided differences; tau_raw the exact
    quotient lam / p_y^2.  `cuspidal` and `transverse` are the unit-scalar
    normal forms of p_y and tau used for reporting and table comparisons.
    """

    lam: Poly
    tau_raw: Poly
    cuspidal: Poly
    transverse: Poly

    @property
    def transverse_is_empty(self) -> bool:
        return self.transverse.constant_term() != 0


def double_point_curve(germ: MapGerm) -> DoublePointCurves:
    """Compute the double-point curve data (lambda, tau) of a frontal germ.

    lambda = Res_{y'}(p[x,y,y'], q[x,y,y']) and tau = lambda / p_y^2; the
    division has to be exact for a frontal germ, and a failure is raised
    loudly rather than patched over.
    """
    p_dd = divided_difference(germ.p, "y", DD_VAR)
    q_dd = divided_difference(germ.q, "y", DD_VAR)
    if p_dd.is_zero or q_dd.is_zero:
        raise NotGenericallyInjectiveError("a divided difference vanishes identically")
    lam = resultant(p_dd, q_dd, DD_VAR)
    if lam.is_zero:
        raise NotGenericallyInjectiveError(
            "the divided differences share a factor: the germ is not generically injective"
        )
    p_y = germ.p.derivative("y")
    try:
        tau_raw = exact_divide(lam, p_y * p_y)
    except NotDivisibleError as exc:
        raise DivisibilityTheoremError(
            f"lambda is not divisible by p_y^2: {exc}"
        ) from exc
    return DoublePointCurves(
        lam=lam,
        tau_raw=tau_raw,
        cuspidal=p_y.normalized_unit(),
        transverse=tau_raw.normalized_unit(),
    )


def alpha_pair(germ: MapGerm) -> tuple:
    """The witnesses (alpha, alpha') with f[x,y,y'] = f_y + (y'-y)*alpha_f
    for f = p and f = q; both identities hold exactly by construction."""
    a = second_divided_difference(germ.p, "y", DD_VAR)
    ap = second_divided_difference(germ.q, "y", DD_VAR)
    return a, ap


@dataclass(frozen=True)
class FrontalData:
    """Bundled frontal analysis of a (possibly swapped) germ."""

    germ: MapGerm
    verdict: FrontalVerdict
    curves: DoublePointCurves
    alpha: Poly
    alpha_prime: Poly

    @property
    def p_y(self) -> Poly:
        return self.germ.p.derivative("y")

    def mu_numerator_denominator(self) -> tuple:
        """mu as a fraction (num, den) with den a local unit, when exact."""
        div = self.verdict.division
        if div.mu_num is not None:
            return div.mu_num, div.mu_den
        raise GermError("frontal ratio known only as a jet")

    def mu_y_generator(self) -> tuple:
        """A polynomial generating the same ideal as mu_y modulo units.

        For mu = n/d with d a unit, mu_y = (n_y d - n d_y)/d^2 and the
        unit d^2 is dropped.  For a jet-tier mu the derivative of the
        truncation is returned together with its trust order.
        """
        div = self.verdict.division
        if div.mu_num is not None:
            n, d = div.mu_num, div.mu_den
            gen = n.derivative("y") * d - n * d.derivative("y")
            return gen, None
        trunc = div.mu_trunc
        return trunc.derivative("y"), div.jet_order

    def conormal(self) -> tuple:
        """A nowhere-vanishing conormal (scaled by the unit denominator).

        With mu = n/d the triple (n*p_x - d*q_x, -n, d) annihilates both
        columns of the differential; the third entry is a local unit so
        the form does not vanish at the origin.
        """
        n, d = self.mu_numerator_denominator()
        p_x = self.germ.p.derivative("x")
        q_x = self.germ.q.derivative("x")
        return (n * p_x - d * q_x, -n, d)


def analyse_frontal(germ: MapGerm, cap: int = 40) -> FrontalData:
    verdict = check_frontal(germ, cap=cap)
    if not verdict.frontal:
        raise GermError("germ is not frontal")
    g = verdict.germ
    curves = double_point_curve(g)
    a, ap = alpha_pair(g)
    return FrontalData(g, verdict, curves, a, ap)


@dataclass(frozen=True)
class FinitenessReport:
    """Tri-state finiteness flags; None means undetermined at the jet cap."""

    vpmu_isolated: Optional[bool]
    critical_isolated: Optional[bool]
    c_reduced: bool
    dplus_reduced: bool
    f_finite: Optional[bool]
    mu_y_trust_order: Optional[int] = None

    def any_undetermined(self) -> bool:
        return self.vpmu_isolated is None or self.critical_isolated is None


def _finite_flag(res: ColengthResult) -> Optional[bool]:
    return True if res.finite else None


def finiteness_checks(data: FrontalData, cap: int = 40) -> FinitenessReport:
    """Isolation and reducedness tests backing the finiteness criterion.

    The germ has finite frontal codimension iff V(p_y, mu_y) is isolated
    and the critical set of p_y * tau is isolated; cap-limited colengths
    are propagated as undetermined, never silently as False.
    """
    p_y = data.p_y
    mu_y_gen, trust = data.mu_y_generator()
    eff_cap = cap if trust is None else min(cap, trust - 1)
    if mu_y_gen.is_zero:
        # mu constant: V(p_y, mu_y) = V(p_y), isolated only if p_y is a unit,
        # which corank-1 validation excludes; treat as V(p_y) curve.
        vpmu = None if not p_y.is_constant else True
    else:
        vpmu = _finite_flag(colength([p_y, mu_y_gen], cap=eff_cap))
    g = p_y * data.curves.tau_raw
    jac = [g.derivative("x"), g.derivative("y")]
    jac = [h for h in jac if not h.is_zero]
    if not jac:
        crit = None
    else:
        crit = _finite_flag(colength(jac, cap=cap))
    c_red = squarefree_at_origin(p_y)
    d_red = squarefree_at_origin(data.curves.tau_raw)
    if vpmu is None or crit is None:
        f_fin: Optional[bool] = None
    else:
        f_fin = vpmu and crit
    return FinitenessReport(
        vpmu_isolated=vpmu,
        critical_isolated=crit,
        c_reduced=c_red,
        dplus_reduced=d_red,
        f_finite=f_fin,
        mu_y_trust_order=trust,
    )
