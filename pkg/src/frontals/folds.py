"""Fold-type germs, frontalisation and the simple frontal families.

A fold germ is (x, y^2, y*h(x, y^2)); its frontalisation (x, y^2,
y^3*h(x, y^2)) is frontal with the same codimension, computed as the
colength of the tangent module determined by the datum h.  Classification
matches the literal normal forms of the simple families up to unit scalar
rescaling of individual monomials; recognizing arbitrary coordinate
changes is out of scope.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

from .germs import GermError, MapGerm
from .local_algebra import ColengthResult, fold_module_colength
from .poly import Poly

FOLD_VARS = ("x", "u")


class FoldError(ValueError):
    pass


@dataclass(frozen=True)
class FoldGerm:
    """Fold datum h(x, u): the germ is (x, y^2, y*h(x, y^2)) before
    frontalisation and (x, y^2, y^3*h(x, y^2)) after."""

    h: Poly
    frontalised: bool
    name: Optional[str] = None

    def __post_init__(self):
        if self.h.vars != FOLD_VARS:
            raise FoldError(f"fold datum must be a polynomial in {FOLD_VARS}")

    def to_map_germ(self) -> MapGerm:
        y = Poly.variable(("x", "y"), "y")
        h_sub = self.h.substitute(
            {"x": Poly.variable(("x", "y"), "x"), "u": y * y}, ("x", "y")
        )
        shift = 3 if self.frontalised else 1
        return MapGerm(y * y, (y**shift) * h_sub, self.name)


def detect_fold(germ: MapGerm):
    """Recognize p = y^2 with q = y*h(x, y^2) or y^3*h(x, y^2), exactly.

    Returns a FoldGerm, or None when the shape does not match (no
    coordinate searches are attempted).  A q divisible by y^3 parses in
    both forms; the frontalised reading is returned since that is the one
    with the matching frontal structure.
    """
    y_sq = Poly.monomial(("x", "y"), (0, 2))
    if germ.p != y_sq:
        return None
    if germ.q.is_zero:
        return None
    min_ydeg = None
    for (a, b) in germ.q.terms:
        if b % 2 == 0:
            return None
        min_ydeg = b if min_ydeg is None else min(min_ydeg, b)
    shift = 3 if min_ydeg >= 3 else 1
    h_terms = {}
    for (a, b), c in germ.q.terms.items():
        h_terms[(a, (b - shift) // 2)] = c
    h = Poly(FOLD_VARS, h_terms)
    return FoldGerm(h=h, frontalised=(shift == 3), name=germ.name)


def frontalise(fold: FoldGerm) -> MapGerm:
    """(x, y^2, y*h) -> (x, y^2, y^3*h); a no-op (with a warning) when the
    input is already frontalised."""
    if fold.frontalised:
        warnings.warn("fold germ is already frontalised; returning it unchanged")
        return fold.to_map_germ()
    return FoldGerm(fold.h, True, fold.name).to_map_germ()


def fold_codim(fold: FoldGerm, cap: int = 40) -> int:
    """Codimension of the fold germ, equal for the fold and its
    frontalisation: the colength of the module generated by the datum."""
    if fold.h.is_zero:
        raise FoldError("fold datum is zero")
    res = fold_module_colength(fold.h, cap=cap)
    if not res.finite:
        raise FoldError(f"fold module colength not finite at cap {res.cap}")
    return res.value


@dataclass(frozen=True)
class Classification:
    label: str  # e.g. "S2_check"
    family: str  # "S" | "B" | "C" | "F4"
    k: Optional[int]
    convention: Optional[str] = None

    def render(self) -> str:
        return self.label


def _monomial_support(h: Poly) -> dict:
    return dict(h.terms)


def classify_simple(germ: MapGerm) -> Optional[Classification]:
    """Match a frontal germ against the simple frontal fold families.

    Patterns (coefficients are arbitrary nonzero rationals):
        S_k check:  h = u + x^(k+1)          (k >= 1)
        B_k check:  h = x^2 + u^k            (k >= 2)
        C_k check:  h = x*u + x^k            (k >= 3)
        F_4 check:  h = u^2 + x^3
    Anything else, including non-fold frontal germs, is unclassified
    (None).  The S-family index follows the x^(k+1) convention, which
    makes the label's k equal to the codimension.
    """
    fold = detect_fold(germ)
    if fold is None or not fold.frontalised:
        return None
    support = _monomial_support(fold.h)
    if len(support) != 2:
        return None
    exps = sorted(support)
    (e1, e2) = exps
    # S: {u, x^m}, m >= 2  (m = 1 is the stable folded Whitney umbrella)
    if (0, 1) in support:
        other = exps[0] if exps[1] == (0, 1) else exps[1]
        if other[1] == 0 and other[0] >= 2:
            m = other[0]
            return Classification(
                label=f"S{m - 1}_check",
                family="S",
                k=m - 1,
                convention="exponent of x is k+1",
            )
    # F4: {u^2, x^3}
    if set(support) == {(0, 2), (3, 0)}:
        return Classification(label="F4_check", family="F4", k=4)
    # B: {x^2, u^k}, k >= 2
    if (2, 0) in support:
        other = exps[0] if exps[1] == (2, 0) else exps[1]
        if other[0] == 0 and other[1] >= 2:
            return Classification(label=f"B{other[1]}_check", family="B", k=other[1])
    # C: {x*u, x^k}, k >= 3
    if (1, 1) in support:
        other = exps[0] if exps[1] == (1, 1) else exps[1]
        if other[1] == 0 and other[0] >= 3:
            return Classification(label=f"C{other[0]}_check", family="C", k=other[0])
    return None
