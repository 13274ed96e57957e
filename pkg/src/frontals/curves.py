"""Parametrized plane-curve germs: the independent curve-level oracle.

The double-point function of a branch gamma(t) = (p(t), q(t)) is the
resultant of the two divided differences; for an irreducible branch it is
s^mu up to a unit, mu the Milnor number.  The delta invariant, Milnor
number via branches (mu = 2*delta - r + 1), the cusp count kappa, and the
relation mu_I = mu_F + kappa for frontal curves all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .poly import Poly, divided_difference, resultant

CURVE_VAR = ("t",)
DP_VAR = "s"


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class ParamCurve:
    """One or several parametrized branches through the origin."""

    p: Optional[Poly] = None
    q: Optional[Poly] = None
    branches: Optional[tuple] = None
    name: Optional[str] = None

    def __post_init__(self):
        if self.branches is not None:
            if self.p is not None or self.q is not None:
                raise CurveError("give either one branch (p, q) or a list of branches")
            for b in self.branches:
                if not isinstance(b, ParamCurve) or b.is_multibranch:
                    raise CurveError("branches must be single-branch ParamCurves")
            return
        for label, comp in (("p", self.p), ("q", self.q)):
            if comp is None or comp.vars != CURVE_VAR:
                raise CurveError(f"component {label} must be a polynomial in t")
            if comp.constant_term() != 0:
                raise CurveError(f"component {label} does not vanish at t = 0")
        if self.p.is_zero and self.q.is_zero:
            raise CurveError("both components vanish identically")

    @property
    def is_multibranch(self) -> bool:
        return self.branches is not None

    def branch_list(self) -> tuple:
        return self.branches if self.is_multibranch else (self,)


def curve_double_point(curve: ParamCurve) -> Poly:
    """Double-point function d(s) of a single branch, normalized monic.

    d(s) = Res_t(P, Q) with P, Q the divided differences of the two
    components; a vanishing resultant means the branch is not generically
    injective.
    """
    if curve.is_multibranch:
        raise CurveError("double-point function is defined per branch")
    P = divided_difference(curve.p, "t", DP_VAR)
    Q = divided_difference(curve.q, "t", DP_VAR)
    if P.is_zero and Q.is_zero:
        raise CurveError("not generically injective (both divided differences vanish)")
    if P.is_zero or Q.is_zero:
        # One component is identically zero; double points are governed by
        # the other divided difference, which must not involve t (otherwise
        # the branch folds onto a coordinate axis).
        other = Q if P.is_zero else P
        if other.degree_in("t") > 0:
            raise CurveError("not generically injective (branch folds onto an axis)")
        d = Poly((DP_VAR,), {(e[1],): c for e, c in other.terms.items()})
    elif P.degree_in("t") <= 0 and Q.degree_in("t") <= 0:
        # both components linear: an immersed branch, no double points
        d = Poly.one((DP_VAR,))
    else:
        d = resultant(P, Q, "t")
    if d.is_zero:
        raise CurveError("not generically injective (vanishing resultant)")
    lead = d.coeffs_in(DP_VAR)[d.degree_in(DP_VAR)].constant_term()
    return d * (1 / lead)


def semigroup_gap_count(generators: Sequence[int]) -> Optional[int]:
    """Number of gaps of the numerical semigroup generated by `generators`.

    Returns None when the gcd of the generators exceeds 1 (infinitely many
    gaps).  Used as the independent cross-check for delta on monomial
    branches.
    """
    gens = sorted(set(g for g in generators if g > 0))
    if not gens:
        return None
    g = 0
    for a in gens:
        g = gcd(g, a)
    if g != 1:
        return None
    bound = gens[0] * gens[-1] + 1
    reachable = [False] * (bound + max(gens) + 1)
    reachable[0] = True
    for i in range(len(reachable)):
        if reachable[i]:
            for a in gens:
                if i + a < len(reachable):
                    reachable[i + a] = True
    return sum(1 for i in range(1, bound + 1) if not reachable[i])


def _branch_delta(curve: ParamCurve) -> int:
    d = curve_double_point(curve)
    if d.is_constant:
        return 0
    o = d.order()
    if o % 2 != 0:
        raise CurveError("odd double-point order on a single branch; input is degenerate")
    delta = o // 2
    # Independent semigroup check for monomial branches (t^a, c*t^b).
    if len(curve.p.terms) == 1 and len(curve.q.terms) == 1:
        a = curve.p.degree_in("t")
        b = curve.q.degree_in("t")
        gaps = semigroup_gap_count([a, b])
        if gaps is not None and gaps != delta:
            raise CurveError(
                f"delta cross-check failed: resultant gives {delta}, semigroup gives {gaps}"
            )
    return delta


def _pair_intersection(c1: ParamCurve, c2: ParamCurve) -> int:
    """Local intersection number of two distinct branches, by resultant order."""
    s_p = c1.p.rename({"t": DP_VAR})
    s_q = c1.q.rename({"t": DP_VAR})
    vars2 = ("t", DP_VAR)
    A = c2.p.lift(vars2) - s_p.lift(vars2)
    B = c2.q.lift(vars2) - s_q.lift(vars2)
    if A.is_zero or B.is_zero:
        # a vanishing difference equation means both branches lie on one
        # coordinate axis, i.e. they share a component
        raise CurveError("branches share a component")
    r = resultant(A, B, "t")
    if r.is_zero:
        raise CurveError("branches share a component")
    return r.order()


def delta_invariant(curve: ParamCurve) -> int:
    """delta = sum of branch deltas plus pairwise intersection numbers."""
    branches = curve.branch_list()
    total = sum(_branch_delta(b) for b in branches)
    for i in range(len(branches)):
        for j in range(i + 1, len(branches)):
            total += _pair_intersection(branches[i], branches[j])
    return total


def curve_milnor(curve: ParamCurve) -> int:
    """mu = 2*delta - r + 1 with r the number of branches."""
    r = len(curve.branch_list())
    return 2 * delta_invariant(curve) - r + 1


@dataclass(frozen=True)
class KappaRelation:
    """kappa (cusp count), mu_I (image Milnor number) and mu_F per branch.

    kappa = ord(p') is a model assumption: at each simple zero of a
    generic frontal perturbation of p' the germ is a cusp.  It reproduces
    the classical cusp and E6 pictures but is not derived from an actual
    stabilisation; reports flag it accordingly.
    """

    kappa: int
    mu_I: int
    mu_F: int
    swapped: bool
    model_assumption: str = "kappa = ord(p'), counted from a generic frontal perturbation"


def kappa_and_relation(curve: ParamCurve) -> KappaRelation:
    """Evaluate mu_I = mu_F + kappa for a frontal mono-germ plane curve."""
    if curve.is_multibranch:
        raise CurveError("kappa relation implemented for mono-germs only")
    p, q = curve.p, curve.q
    dp = p.derivative("t")
    dq = q.derivative("t")
    swapped = False
    if dp.is_zero and dq.is_zero:
        raise CurveError("constant curve")
    if dp.is_zero or (not dq.is_zero and dq.order() < dp.order()):
        # univariate local divisibility is an order comparison, so the
        # lower-order derivative always divides the other one
        dp, dq = dq, dp
        swapped = True
    kappa = dp.order()
    delta = delta_invariant(curve)
    return KappaRelation(kappa=kappa, mu_I=delta, mu_F=delta - kappa, swapped=swapped)
