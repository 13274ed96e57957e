"""Frontality, double-point curves, alpha witnesses and finiteness."""

import pytest

from frontals.germs import (
    DivisibilityTheoremError,
    GermError,
    MapGerm,
    NotGenericallyImmersiveError,
    NotGenericallyInjectiveError,
    alpha_pair,
    analyse_frontal,
    check_frontal,
    double_point_curve,
    finiteness_checks,
)
from frontals.poly import Poly, divided_difference, proportional

from conftest import P, load_corpus

XYP = ("x", "y", "yp")


def germ(p, q, name=None):
    return MapGerm(P(p), P(q), name)


# ------------------------------------------------------------------ validation

def test_germ_must_vanish_at_origin():
    with pytest.raises(GermError):
        germ("y^2+1", "y^3")


def test_germ_rejects_pure_y_linear_term():
    with pytest.raises(GermError):
        germ("y", "y^3")


def test_x_linear_terms_are_fine():
    germ("y^2+x", "y^3")  # no exception


# ------------------------------------------------------------------ frontality

def test_cuspidal_edge_frontal():
    v = check_frontal(germ("y^2", "y^3"))
    assert v.frontal and v.tier == "exact" and not v.swapped
    assert v.division.mu_poly() == P("3/2*y")


def test_f4_is_not_frontal():
    v = check_frontal(germ("y^2", "y^5+x^3*y"))
    assert not v.frontal
    assert v.division.obstruction_degree is not None  # finite-order obstruction


def test_frontal_with_polynomial_ratio():
    v = check_frontal(germ("y^2", "y^5+x^3*y^3"))
    assert v.frontal
    # q_y / p_y = (5 y^4 + 3 x^3 y^2) / (2 y)
    assert v.division.mu_poly() == P("5/2*y^3+3/2*x^3*y")


def test_swap_convention():
    v = check_frontal(germ("y^3", "y^2"))
    assert v.frontal and v.swapped
    assert v.germ.p == P("y^2")


def test_not_generically_immersive():
    with pytest.raises(NotGenericallyImmersiveError):
        check_frontal(germ("x^2", "x^3"))


# ------------------------------------------------------------------ double point curves

def test_cuspidal_edge_curves():
    d = analyse_frontal(germ("y^2", "y^3"))
    assert proportional(d.curves.lam, P("y^2"))
    assert d.curves.transverse == P("1")  # empty transverse locus
    assert d.curves.cuspidal == P("y")


def test_folded_umbrella_curves():
    d = analyse_frontal(germ("y^2", "x*y^3"))
    assert proportional(d.curves.lam, P("x*y^2"))
    assert d.curves.transverse == P("x")
    assert d.curves.cuspidal == P("y")


def test_swallowtail_curves():
    d = analyse_frontal(germ("y^3+3*x*y", "y^4+2*x*y^2"))
    assert proportional(d.curves.cuspidal, P("x+y^2"))
    assert proportional(d.curves.transverse, P("3*x+y^2"))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_fold_family_transverse_curve(k):
    d = analyse_frontal(germ("y^2", f"y^5+x^{k}*y^3"))
    assert proportional(d.curves.transverse, P(f"y^2+x^{k}"))


def test_fold_germ_transverse_equals_datum():
    # for (x, y^2, y^3 h(x, y^2)) the transverse curve is V(h(x, y^2))
    for h_text in ["u+x^2", "x^2+u^2", "x*u+x^3", "u^2+x^3"]:
        h = P(h_text, ("x", "u"))
        q = P("y^3") * h.substitute({"x": P("x"), "u": P("y^2")}, ("x", "y"))
        d = analyse_frontal(MapGerm(P("y^2"), q))
        expected = h.substitute({"x": P("x"), "u": P("y^2")}, ("x", "y"))
        assert proportional(d.curves.transverse, expected.normalized_unit())


def test_degenerate_image_rejected():
    with pytest.raises(NotGenericallyInjectiveError):
        double_point_curve(germ("y^2", "y^4"))


def test_lambda_divisibility_is_checked_not_assumed():
    # a non-frontal germ makes the division fail loudly
    with pytest.raises((DivisibilityTheoremError, NotGenericallyInjectiveError)):
        double_point_curve(germ("y^2", "y^5+x^3*y"))


# ------------------------------------------------------------------ alpha pair

def test_alpha_examples():
    a, ap = alpha_pair(germ("y^2", "y^3"))
    assert a == P("1", XYP)
    a, _ = alpha_pair(germ("y^3+3*x*y", "y^4+2*x*y^2"))
    assert a == P("yp+2*y", XYP)


def test_alpha_defining_identity_on_corpus(frontal_corpus):
    for row in frontal_corpus:
        g = germ(row["p"], row["q"], row["name"])
        v = check_frontal(g)
        g = v.germ
        a, ap = alpha_pair(g)
        for f, alpha in ((g.p, a), (g.q, ap)):
            dd = divided_difference(f, "y", "yp")
            fy = f.derivative("y").lift(XYP)
            diff = Poly.variable(XYP, "yp") - Poly.variable(XYP, "y")
            assert dd - fy - diff * alpha == Poly.zero(XYP), row["name"]


def test_alpha_diagonal_is_half_second_derivative(frontal_corpus):
    for row in frontal_corpus:
        g = check_frontal(germ(row["p"], row["q"])).germ
        a, _ = alpha_pair(g)
        diag = a.substitute({"x": P("x"), "y": P("y"), "yp": P("y")}, ("x", "y"))
        assert diag * 2 == g.p.derivative("y").derivative("y"), row["name"]


# ------------------------------------------------------------------ conormal

def test_conormal_annihilates_differential(frontal_corpus):
    for row in frontal_corpus:
        data = analyse_frontal(germ(row["p"], row["q"], row["name"]))
        n1, n2, n3 = data.conormal()
        g = data.germ
        assert (n1 + n2 * g.p.derivative("x") + n3 * g.q.derivative("x")).is_zero, row["name"]
        assert (n2 * g.p.derivative("y") + n3 * g.q.derivative("y")).is_zero, row["name"]
        # the form does not vanish at the origin: third entry is a unit
        assert n3.constant_term() != 0


# ------------------------------------------------------------------ finiteness

def test_finiteness_cuspidal_edge():
    f = finiteness_checks(analyse_frontal(germ("y^2", "y^3")))
    assert f.f_finite is True
    assert f.c_reduced and f.dplus_reduced


def test_finiteness_s_family():
    f = finiteness_checks(analyse_frontal(germ("y^2", "y^5+x*y^3")))
    assert f.f_finite is True


def test_finiteness_undetermined_for_nonreduced_transverse():
    # q = y^7: tau = y^4 up to unit, a non-reduced transverse curve
    f = finiteness_checks(analyse_frontal(germ("y^2", "y^7")), cap=12)
    assert f.dplus_reduced is False
    assert f.critical_isolated is None  # undetermined at cap, not False
    assert f.f_finite is None
    assert f.any_undetermined()
