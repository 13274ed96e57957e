"""Square presentation of the pushforward module of a finite germ, and its
Fitting ideals.

For a finite corank-1 germ (x, p, q) the source ring is a free rank-d
module over the target coordinates (X, Y) = (x, p) with basis
1, y, ..., y^(d-1), d being the y-order of p(0, y).  The matrix Q of
multiplication by q on that basis is extracted by Weierstrass division
against the graph relation Y = p(x, y), carried out order by order on
jets; the presentation of the full germ is then Q - Z*Id over (X, Y, Z).

The colength of the ideal of (d-2)-minors (the second Fitting ideal) is
the triple-point-counting number F3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .germs import GermError, MapGerm
from .local_algebra import ColengthResult, Jet, colength
from .poly import Poly

_WORK_VARS = ("x", "y", "Y")
TARGET_VARS = ("X", "Y", "Z")


class FittingError(ValueError):
    pass


def multiplicity(germ: MapGerm) -> int:
    """Local multiplicity: min of the y-orders of p(0, y) and q(0, y)."""
    oy_p = _order_on_axis(germ.p)
    oy_q = _order_on_axis(germ.q)
    if oy_p is None and oy_q is None:
        raise FittingError("both p(0, y) and q(0, y) vanish identically: non-finite germ")
    if oy_p is None:
        return oy_q
    if oy_q is None:
        return oy_p
    return min(oy_p, oy_q)


def _order_on_axis(p: Poly) -> Optional[int]:
    degs = [e[1] for e in p.terms if e[0] == 0]
    return min(degs) if degs else None


def _presentation_germ(germ: MapGerm) -> tuple:
    """Choose the projection component: swap p and q when p(0,y) is the
    worse (or impossible) Weierstrass divisor.  Fitting ideals only move
    by the corresponding target coordinate permutation."""
    oy_p = _order_on_axis(germ.p)
    oy_q = _order_on_axis(germ.q)
    if oy_p is None and oy_q is None:
        raise FittingError("both p(0, y) and q(0, y) vanish identically: non-finite germ")
    if oy_p is None or (oy_q is not None and oy_q < oy_p):
        return germ.swapped(), True
    return germ, False


@dataclass(frozen=True)
class PresentationMatrix:
    """d x d presentation of the pushforward module.

    `mult_matrix[j][i]` is the (X, Y)-jet coefficient of basis element y^j
    in the reduction of q * y^i; `lam_pres` is mult_matrix - Z * Id over
    (X, Y, Z).  `swapped` records whether p and q traded places for the
    Weierstrass division.
    """

    d: int
    jet_order: int
    mult_matrix: tuple  # tuple of rows, entries Jet over ("X", "Y")
    lam_pres: tuple  # tuple of rows, entries Jet over ("X", "Y", "Z")
    germ: MapGerm
    swapped: bool


def _graph_reduce(target: Poly, p: Poly, d: int, order: int) -> list:
    """Weierstrass-divide `target` by the graph relation Y - p(x, y).

    Returns jets c_0..c_{d-1} over ("x", "Y") with
    target = sum c_i(x, p(x,y)) y^i modulo degree > order.

    Writing p = sum a_j(x) y^j, the relation gives
    y^d * E = (Y - P_low) with E = sum_{j>=d} a_j y^(j-d) a unit and
    P_low = Y - sum_{j<d} a_j y^j of positive (x, Y)-order, so replacing
    the y^d-part of the target by P_low * E^(-1) * (high part) raises the
    (x, Y)-order each round and terminates within the truncation.
    """
    coeffs = p.coeffs_in("y")  # polynomials in (x,)
    e_terms: dict = {}
    low_terms: dict = {(0, 0, 1): Fraction(1)}  # Y
    for j, cj in coeffs.items():
        for (a,), c in cj.terms.items():
            if j >= d:
                e_terms[(a, j - d, 0)] = c
            else:
                low_terms[(a, j, 0)] = low_terms.get((a, j, 0), Fraction(0)) - c
    E = Jet(_WORK_VARS, order, e_terms)
    if E.constant_term() == 0:
        raise FittingError(f"p(0, y) does not have y-order {d}")
    E_inv = E.inverse()
    P_low = Jet(_WORK_VARS, order, low_terms)

    g = Jet.from_poly(target.lift(_WORK_VARS), order)
    rounds = 0
    while True:
        low: dict = {}
        high: dict = {}
        for e, c in g.terms.items():
            if e[1] < d:
                low[e] = c
            else:
                high[(e[0], e[1] - d, e[2])] = c
        if not high:
            break
        rounds += 1
        if rounds > order + 2:
            raise FittingError(
                "graph reduction failed to stabilize; raise the jet order"
            )
        g = Jet(_WORK_VARS, order, low) + P_low * (E_inv * Jet(_WORK_VARS, order, high))

    cols = [dict() for _ in range(d)]
    for (a, j, b), c in g.terms.items():
        cols[j][(a, b)] = c
    return [Jet(("X", "Y"), order, ci) for ci in cols]


def presentation(germ: MapGerm, jet_order: int = 12) -> PresentationMatrix:
    """Multiplication-by-q presentation of the pushforward, on jets.

    Entry (j, i) of the matrix is the coefficient of y^j in the reduction
    of q * y^i modulo Y = p(x, y), computed to `jet_order`.
    """
    g, swapped = _presentation_germ(germ)
    d = _order_on_axis(g.p)
    if d is None or d < 1:
        raise FittingError("projection component has no finite y-order")
    y = Poly.variable(g.p.vars, "y")
    columns = []
    for i in range(d):
        columns.append(_graph_reduce(g.q * y**i, g.p, d, jet_order))
    rows = []
    z = Jet.from_poly(Poly.variable(TARGET_VARS, "Z"), jet_order)
    lam_rows = []
    for j in range(d):
        row = tuple(columns[i][j] for i in range(d))
        rows.append(row)
        lam_row = []
        for i in range(d):
            entry = row[i].lift(TARGET_VARS)
            if i == j:
                entry = entry - z
            lam_row.append(entry)
        lam_rows.append(tuple(lam_row))
    return PresentationMatrix(
        d=d,
        jet_order=jet_order,
        mult_matrix=tuple(rows),
        lam_pres=tuple(lam_rows),
        germ=g,
        swapped=swapped,
    )


def _det_jets(rows: Sequence[Sequence[Jet]]) -> Jet:
    """Determinant of a small jet matrix by subset dynamic programming."""
    n = len(rows)
    if n == 0:
        raise FittingError("empty matrix")
    vars = rows[0][0].vars
    order = rows[0][0].order
    # dp maps a frozen bitmask of used rows to the minor over the first
    # popcount(mask) columns.
    dp = {0: Jet.const(vars, 1, order)}
    for col in range(n):
        ndp: dict = {}
        for mask, val in dp.items():
            if val.is_zero:
                continue
            sign = 1
            for r in range(n):
                bit = 1 << r
                if mask & bit:
                    continue
                entry = rows[r][col]
                if not entry.is_zero:
                    term = val * entry
                    if sign < 0:
                        term = -term
                    key = mask | bit
                    acc = ndp.get(key)
                    ndp[key] = acc + term if acc is not None else term
                else:
                    pass
                sign = -sign
        dp = ndp
        if not dp:
            return Jet.zero(vars, order)
    return dp.get((1 << n) - 1, Jet.zero(vars, order))


@dataclass(frozen=True)
class FittingIdeals:
    F0: Jet
    F2_gens: tuple
    d: int
    jet_order: int


def fitting_ideals(pm: PresentationMatrix) -> FittingIdeals:
    """F0 = det of the presentation; F2 = ideal of (d-2)-minors.

    0 x 0 minors are 1 by convention, so for d <= 2 the second Fitting
    ideal is the whole ring.
    """
    d = pm.d
    F0 = _det_jets(pm.lam_pres)
    k = d - 2
    if k <= 0:
        gens = (Jet.const(TARGET_VARS, 1, pm.jet_order),)
    else:
        gens = []
        seen = set()
        for rows_idx in combinations(range(d), k):
            for cols_idx in combinations(range(d), k):
                sub = [[pm.lam_pres[r][c] for c in cols_idx] for r in rows_idx]
                m = _det_jets(sub)
                if m.is_zero:
                    continue
                key = _unit_key(m)
                if key in seen:
                    continue
                seen.add(key)
                gens.append(m)
        gens = tuple(gens)
    return FittingIdeals(F0=F0, F2_gens=gens, d=d, jet_order=pm.jet_order)


def _unit_key(j: Jet):
    """Dedup key for jets equal up to a rational scalar."""
    if j.is_zero:
        return ("zero",)
    items = sorted(j.terms.items())
    lead = items[0][1]
    return (j.order, tuple((e, c / lead) for e, c in items))


@dataclass(frozen=True)
class F3Result:
    colength: ColengthResult
    jet_order: int
    d: int

    @property
    def value(self) -> Optional[int]:
        return self.colength.value


def fitting_F3(germ: MapGerm, base_order: int = 12, cap: int = 40) -> F3Result:
    """Colength of the second Fitting ideal in the target local ring.

    The jet order escalates until the colength stabilizes strictly below
    the trusted truncation; the order actually used is recorded.
    """
    order = base_order
    while True:
        pm = presentation(germ, jet_order=order)
        if pm.d <= 2:
            res = ColengthResult(
                value=0, stabilized_at=0, cap=cap, monomial_basis=(), vars=TARGET_VARS
            )
            return F3Result(colength=res, jet_order=order, d=pm.d)
        ideals = fitting_ideals(pm)
        res = colength(list(ideals.F2_gens), cap=min(cap, order - 1))
        if res.finite:
            return F3Result(colength=res, jet_order=order, d=pm.d)
        if order - 1 >= cap:
            return F3Result(colength=res, jet_order=order, d=pm.d)
        order = min(order + 6, cap + 1 + base_order)


def image_equation_composed(pm: PresentationMatrix) -> Poly:
    """F0 composed with the germ, truncated at the working jet order.

    Vanishes identically (to that order) because the determinant of the
    presentation annihilates the image.
    """
    ideals_F0 = _det_jets(pm.lam_pres)
    g = pm.germ
    mapping = {
        "X": Poly.variable(g.p.vars, "x"),
        "Y": g.p,
        "Z": g.q,
    }
    return ideals_F0.substitute_polys(mapping, g.p.vars)
