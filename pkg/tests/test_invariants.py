"""Stable counts, Milnor numbers, the image-curve identities, the frontal
Milnor number and the codimension comparison."""

import random
from fractions import Fraction

import pytest

from frontals.germs import MapGerm, analyse_frontal
from frontals.invariants import (
    evaluate_reading,
    frontal_milnor,
    marar_mond_eval,
    milnor_plane,
    quasihomogeneous_test,
    skw_counts,
)

from conftest import P


def counts_of(p, q):
    return skw_counts(analyse_frontal(MapGerm(P(p), P(q))))


# ------------------------------------------------------------------ S, K, T, W

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_skw_s_family(k):
    c = counts_of("y^2", f"y^5+x^{k}*y^3")
    assert (c.S, c.K, c.T, c.W) == (0, 0, 0, k)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_skw_four_one_family(k):
    c = counts_of(f"2*y^3+x^{k}*y", f"3*y^4+x^{k}*y^2")
    assert (c.S, c.K, c.T, c.W) == (k, 0, 0, 0)


def test_skw_five_three():
    c = counts_of("5*y^4+3*x*y^2", "4*y^5+2*x*y^3")
    assert (c.S, c.K, c.T, c.W) == (3, 3, 0, 0)
    assert (c.P3, c.PT, c.PAA, c.F3) == (3, 9, 9, 6)


def test_skw_six_one():
    c = counts_of("3*y^5+x*y", "5*y^6+x*y^2")
    assert (c.S, c.K, c.T, c.W) == (3, 6, 1, 0)
    assert (c.P3, c.PT, c.PAA, c.F3) == (3, 12, 12, 10)


def test_counts_reconstruct_colengths(frontal_corpus):
    for row in frontal_corpus:
        c = counts_of(row["p"], row["q"])
        assert c.reconstruct() == (c.P3, c.PT, c.PAA, c.F3), row["name"]


def test_counts_nonnegative(frontal_corpus):
    for row in frontal_corpus:
        c = counts_of(row["p"], row["q"])
        assert min(c.S, c.K, c.T, c.W) >= 0, row["name"]


# ------------------------------------------------------------------ plane Milnor numbers

@pytest.mark.parametrize(
    "eq,mu",
    [
        ("x*y", 1),
        ("y^2-x^3", 2),
        ("y^3+x^2*y", 4),
        ("y^3+x*y", 1),
        ("y^2-x^4", 3),
        ("y^3-x^4", 6),
    ],
)
def test_milnor_plane_values(eq, mu):
    assert milnor_plane(P(eq)).value == mu


def test_milnor_plane_nonreduced_hits_cap():
    r = milnor_plane(P("y^2"), cap=12)
    assert not r.finite and r.cap_reached


# ------------------------------------------------------------------ image identities

def test_marar_mond_degenerate_substitution():
    mu_c, mu_d = marar_mond_eval(0, 0, 0, 0, 0, 0)
    assert mu_c == 0
    assert mu_d == Fraction(1, 2)  # flags the empty-transverse-curve case


def test_marar_mond_s_family_values():
    # W=1 row: mu(D+) = mu(y^2+x) = 0
    _, mu_d = marar_mond_eval(0, 0, 0, 1, 0, 0)
    assert mu_d == 0
    # W=2 row: mu(D+) = mu(y^2+x^2) = 1
    _, mu_d = marar_mond_eval(0, 0, 0, 2, 0, 1)
    assert mu_d == 0


def test_frontal_milnor_examples():
    via_image, via_source = frontal_milnor(0, 0, 0, 1, 0)
    assert via_image == via_source == 0
    via_image, via_source = frontal_milnor(0, 0, 0, 1, 1)
    assert via_image == via_source == Fraction(1, 2)  # non-integral, flagged upstream


def test_frontal_milnor_expressions_agree_on_random_tuples():
    rng = random.Random(123)
    for _ in range(1000):
        S, K, T, W = (rng.randint(0, 12) for _ in range(4))
        mu_d = rng.randint(0, 40)
        via_image, via_source = frontal_milnor(S, K, T, W, mu_d)
        assert via_image == via_source


def test_reading_evaluation_empty_transverse():
    c = counts_of("y^2", "y^3")
    r = evaluate_reading("dplus", c, P("1"), empty=True)
    assert not r.applicable
    assert "mu_F = 0" in r.note


def test_reading_evaluation_nonintegral_flag():
    c = counts_of("y^2", "y^5+x*y^3")
    full_curve = P("y") * P("y^2+x")
    r = evaluate_reading("full", c, full_curve, empty=False)
    assert r.applicable and r.integral is False
    assert r.mu_F == Fraction(1, 2)


# ------------------------------------------------------------------ quasihomogeneity

def test_qh_examples():
    r = quasihomogeneous_test(MapGerm(P("y^2"), P("y^3")))
    assert r.is_qh and r.weights == (1, 1) and r.degrees == (1, 2, 3)
    r = quasihomogeneous_test(MapGerm(P("y^2"), P("y^5+x^3*y^3")))
    assert r.is_qh and r.weights == (2, 3) and r.degrees == (2, 6, 15)
    r = quasihomogeneous_test(MapGerm(P("y^2"), P("y^5+x*y^3+x^3*y")))
    assert not r.is_qh


def test_qh_f4_frontalised():
    r = quasihomogeneous_test(MapGerm(P("y^2"), P("y^7+x^3*y^3")))
    assert r.is_qh and r.weights == (4, 3)
    assert r.degrees == (4, 6, 21)


def test_qh_respects_both_components():
    r = quasihomogeneous_test(MapGerm(P("y^3+x*y"), P("y^4+x*y^2")))
    # p forces 3b = a + b; q forces 4b = a + 2b: both give a = 2b: consistent
    assert r.is_qh and r.weights == (2, 1)
    r = quasihomogeneous_test(MapGerm(P("y^3+x*y"), P("y^4+x^3*y^2")))
    # p forces a = 2b; q forces 4b = 3a + 2b i.e. a = 2b/3: inconsistent
    assert not r.is_qh


# ------------------------------------------------------------------ oracle pairs

ORACLE_PAIRS = [
    # (equation, single-branch parametrization or branch list)
    ("y^2-x^3", [("t^2", "t^3")]),
    ("x*y", [("t", "0"), ("0", "t")]),
    ("y^2-x^4", [("t", "t^2"), ("t", "-t^2")]),
    ("y^3-x^4", [("t^3", "t^4")]),
    ("y^2-x^5", [("t^2", "t^5")]),
    ("x^2*y-y^2", [("t", "t^2"), ("0", "t")]),
]


def test_milnor_plane_matches_curve_milnor():
    from frontals.curves import ParamCurve, curve_milnor
    from frontals.parsing import parse_expression

    for eq, branches in ORACLE_PAIRS:
        mu_eq = milnor_plane(P(eq)).value
        bs = tuple(
            ParamCurve(
                p=parse_expression(pt, ("t",)), q=parse_expression(qt, ("t",))
            )
            for pt, qt in branches
        )
        curve = bs[0] if len(bs) == 1 else ParamCurve(branches=bs)
        assert curve_milnor(curve) == mu_eq, eq
