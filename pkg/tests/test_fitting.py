"""Presentation matrices and Fitting ideal colengths."""

import pytest

from frontals.fitting import (
    FittingError,
    fitting_F3,
    fitting_ideals,
    image_equation_composed,
    multiplicity,
    presentation,
)
from frontals.germs import MapGerm
from frontals.local_algebra import Jet
from frontals.poly import Poly

from conftest import P, load_corpus


def germ(p, q, name=None):
    return MapGerm(P(p), P(q), name)


# ------------------------------------------------------------------ multiplicity

def test_multiplicity_examples():
    assert multiplicity(germ("y^2", "y^3")) == 2
    assert multiplicity(germ("3*y^5+x*y", "5*y^6+x*y^2")) == 5
    assert multiplicity(germ("y^2", "y^5+x^2*y^3")) == 2
    assert multiplicity(germ("y^3+3*x*y", "y^4+2*x*y^2")) == 3


def test_multiplicity_non_finite():
    with pytest.raises(FittingError):
        multiplicity(germ("x*y", "x*y^2"))


def test_multiplicity_uses_other_component():
    # p(0, y) vanishes identically but q(0, y) does not
    assert multiplicity(germ("x*y^2", "y^3")) == 3


# ------------------------------------------------------------------ presentation

def test_cuspidal_edge_presentation():
    pm = presentation(germ("y^2", "y^3"), jet_order=10)
    assert pm.d == 2
    # lam_pres = [[-Z, Y^2], [Y, -Z]]
    V = ("X", "Y", "Z")
    assert pm.lam_pres[0][0].to_poly() == P("-Z", V)
    assert pm.lam_pres[0][1].to_poly() == P("Y^2", V)
    assert pm.lam_pres[1][0].to_poly() == P("Y", V)
    assert pm.lam_pres[1][1].to_poly() == P("-Z", V)
    fi = fitting_ideals(pm)
    assert fi.F0.to_poly() == P("Z^2-Y^3", V)


def test_folded_umbrella_image_equation():
    pm = presentation(germ("y^2", "x*y^3"), jet_order=10)
    fi = fitting_ideals(pm)
    assert fi.F0.to_poly() == P("Z^2-X^2*Y^3", ("X", "Y", "Z"))


def test_fold_presentation_is_2x2_with_unit_F2():
    pm = presentation(germ("y^2", "y^5+x^2*y^3"), jet_order=10)
    assert pm.d == 2
    fi = fitting_ideals(pm)
    assert len(fi.F2_gens) == 1
    assert fi.F2_gens[0].constant_term() == 1


def test_image_equation_composes_to_zero_on_corpus(corpus):
    for row in corpus:
        g = germ(row["p"], row["q"], row["name"])
        pm = presentation(g, jet_order=10)
        assert image_equation_composed(pm).is_zero, row["name"]


# ------------------------------------------------------------------ F3

@pytest.mark.parametrize(
    "p,q,expected",
    [
        ("y^2", "y^3", 0),  # fold: F2 is the whole ring
        ("y^2", "x*y^3", 0),
        ("y^2", "y^5+x^3*y^3", 0),
        ("y^3+3*x*y", "y^4+2*x*y^2", 1),
        ("2*y^3+x*y", "3*y^4+x*y^2", 1),
        ("5*y^4+3*x*y^2", "4*y^5+2*x*y^3", 6),
        ("3*y^5+x*y", "5*y^6+x*y^2", 10),
    ],
)
def test_fitting_F3_values(p, q, expected):
    assert fitting_F3(germ(p, q)).value == expected


def test_F3_stable_under_jet_order_increase():
    for (p, q) in [
        ("y^3+3*x*y", "y^4+2*x*y^2"),
        ("5*y^4+3*x*y^2", "4*y^5+2*x*y^3"),
        ("3*y^5+x*y", "5*y^6+x*y^2"),
    ]:
        g = germ(p, q)
        base = fitting_F3(g, base_order=12)
        again = fitting_F3(g, base_order=17)
        assert base.value == again.value


def test_presentation_columns_reduce_q_correctly():
    # verify Q columns: q * y^i - sum_j Q[j][i](x, p) * y^j == 0 mod jet order
    for (p_text, q_text) in [("y^2", "y^3"), ("y^2", "x*y^3"), ("y^3+3*x*y", "y^4+2*x*y^2"), ("3*y^5+x*y", "5*y^6+x*y^2")]:
        g = germ(p_text, q_text)
        order = 10
        pm = presentation(g, jet_order=order)
        y = P("y")
        for i in range(pm.d):
            target = g.q * y**i
            acc = Poly.zero(("x", "y"))
            for j in range(pm.d):
                cj = pm.mult_matrix[j][i]
                composed = cj.substitute_polys({"X": P("x"), "Y": g.p}, ("x", "y"))
                acc = acc + composed * y**j
            diff = target - acc
            assert diff.is_zero or diff.order() > order, (p_text, q_text, i)
