"""Polynomial kernel: arithmetic, divided differences, resultants, exact
division, gcd and local divisibility."""

import random
from fractions import Fraction
from itertools import permutations

import pytest

from frontals.poly import (
    NotDivisibleError,
    Poly,
    divided_difference,
    exact_divide,
    local_divisibility,
    poly_gcd,
    proportional,
    resultant,
    second_divided_difference,
    squarefree_at_origin,
)

from conftest import P

XY = ("x", "y")
XYP = ("x", "y", "yp")


def rand_poly(rng, vars=XY, max_deg=4, max_terms=5, allow_zero=False):
    terms = {}
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in vars)
        terms[e] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return Poly(vars, terms)


# ------------------------------------------------------------------ basics

def test_zero_coefficients_are_dropped():
    p = Poly(XY, {(1, 0): 1, (0, 1): 0})
    assert (0, 1) not in p.terms
    assert p == P("x")


def test_addition_cancels():
    assert (P("x+y") - P("y")) == P("x")
    assert (P("x") - P("x")).is_zero


def test_pow_and_mul():
    assert P("x+y") ** 2 == P("x^2+2*x*y+y^2")


def test_equality_requires_same_vars():
    assert Poly(("x",), {(1,): 1}) != P("x")


# ------------------------------------------------------------------ derivatives

def test_partial_derivative_examples():
    assert P("y^2").derivative("y") == P("2*y")
    assert P("y^3+3*x*y").derivative("y") == P("3*y^2+3*x")
    assert P("y^5+x^3*y^3").derivative("x") == P("3*x^2*y^3")


def test_derivative_unknown_variable():
    with pytest.raises(Exception):
        P("y^2").derivative("z")


# ------------------------------------------------------------------ divided differences

def test_divided_difference_examples():
    assert divided_difference(P("y^2"), "y", "yp") == P("y+yp", XYP)
    assert divided_difference(P("y^3+3*x*y"), "y", "yp") == P("y^2+y*yp+yp^2+3*x", XYP)
    assert divided_difference(P("x"), "y", "yp").is_zero


def test_divided_difference_specializes_to_derivative():
    rng = random.Random(2024)
    y = Poly.variable(XYP, "y")
    for _ in range(25):
        f = rand_poly(rng, max_deg=6)
        dd = divided_difference(f, "y", "yp")
        spec = dd.substitute({"x": Poly.variable(XY, "x"), "y": Poly.variable(XY, "y"), "yp": Poly.variable(XY, "y")}, XY)
        assert spec == f.derivative("y")


def test_second_divided_difference_examples():
    assert second_divided_difference(P("y^2"), "y", "yp") == P("1", XYP)
    assert second_divided_difference(P("y^3+3*x*y"), "y", "yp") == P("yp+2*y", XYP)
    assert second_divided_difference(P("x"), "y", "yp").is_zero


def test_second_divided_difference_identity():
    # f[x,y,y'] - f_y - (y'-y)*alpha == 0 exactly, random f up to degree 10
    rng = random.Random(7)
    for _ in range(30):
        f = rand_poly(rng, max_deg=10, max_terms=6)
        dd = divided_difference(f, "y", "yp")
        alpha = second_divided_difference(f, "y", "yp")
        fy = f.derivative("y").lift(XYP)
        diff = Poly.variable(XYP, "yp") - Poly.variable(XYP, "y")
        assert dd - fy - diff * alpha == Poly.zero(XYP)


# ------------------------------------------------------------------ resultants

def test_resultant_examples():
    f = P("y+yp", XYP)
    g = P("y^2+y*yp+yp^2", XYP)
    assert resultant(f, g, "yp") == P("y^2", ("x", "y"))
    g2 = P("x*y^2+x*y*yp+x*yp^2", XYP)
    assert proportional(resultant(f, g2, "yp"), P("x*y^2"))
    h = P("yp", XYP)
    assert resultant(h, h, "yp").is_zero


def _det_permutation(m):
    n = len(m)
    vars = m[0][0].vars
    total = Poly.zero(vars)
    for perm in permutations(range(n)):
        sign = 1
        seen = []
        for i, j in enumerate(perm):
            sign *= (-1) ** sum(1 for k in seen if k > j)
            seen.append(j)
        prod = Poly.const(vars, sign)
        for i in range(n):
            prod = prod * m[i][perm[i]]
        total = total + prod
    return total


def test_resultant_against_permutation_determinant():
    from frontals.poly import sylvester_matrix

    rng = random.Random(11)
    for _ in range(10):
        f = rand_poly(rng, XYP, max_deg=2, max_terms=3)
        g = rand_poly(rng, XYP, max_deg=2, max_terms=3)
        if f.degree_in("yp") <= 0 or g.degree_in("yp") <= 0:
            continue
        m = sylvester_matrix(f, g, "yp")
        assert resultant(f, g, "yp") == _det_permutation(m)


def test_resultant_zero_iff_common_factor():
    rng = random.Random(13)
    hits = 0
    while hits < 12:
        a = rand_poly(rng, XYP, max_deg=2, max_terms=2)
        b = rand_poly(rng, XYP, max_deg=2, max_terms=2)
        c = rand_poly(rng, XYP, max_deg=2, max_terms=2)
        if c.degree_in("yp") <= 0 or a.is_zero or b.is_zero:
            continue
        hits += 1
        # shared nonconstant factor in yp forces a zero resultant
        assert resultant(a * c, b * c, "yp").is_zero


def test_resultant_nonzero_for_coprime():
    f = P("y+yp", XYP)
    g = P("x+yp^2", XYP)
    assert not resultant(f, g, "yp").is_zero


def test_resultant_errors():
    with pytest.raises(Exception):
        resultant(P("x", XYP), P("y", XYP), "yp")


# ------------------------------------------------------------------ exact division

def test_exact_divide_examples():
    assert exact_divide(P("x*y^2"), P("4*y^2")) == P("x") * Fraction(1, 4)
    assert exact_divide(P("y^3+x*y"), P("y")) == P("y^2+x")
    with pytest.raises(NotDivisibleError):
        exact_divide(P("y^3+x"), P("y"))


def test_exact_divide_roundtrip():
    rng = random.Random(3)
    for _ in range(30):
        f = rand_poly(rng)
        g = rand_poly(rng)
        assert exact_divide(f * g, g) == f


def test_exact_divide_by_zero():
    with pytest.raises(ZeroDivisionError):
        exact_divide(P("x"), Poly.zero(XY))


# ------------------------------------------------------------------ gcd

def test_gcd_simple():
    assert poly_gcd(P("2*y"), P("3*y^2")) == P("y")
    g = poly_gcd(P("6*y^2+6*x*y"), P("4*y^3+4*x*y^2"))
    assert proportional(g, P("y^2+x*y"))


def test_gcd_of_products():
    rng = random.Random(5)
    for _ in range(10):
        a = rand_poly(rng, max_deg=2, max_terms=2)
        b = rand_poly(rng, max_deg=2, max_terms=2)
        c = rand_poly(rng, max_deg=2, max_terms=2)
        if a.is_zero or b.is_zero or c.is_zero:
            continue
        g = poly_gcd(a * c, b * c)
        # the primitive part of c divides the gcd
        exact_divide(g, c.normalized_unit())  # would raise if not divisible


# ------------------------------------------------------------------ local divisibility

def test_local_divisibility_examples():
    d = local_divisibility(P("2*y"), P("3*y^2"))
    assert d.verdict == "divides" and d.mu_poly() == P("3/2*y")

    d = local_divisibility(P("2*y"), P("5*y^4+x^3"))
    assert d.verdict == "not_divisible"
    assert d.obstruction_degree == 3

    d = local_divisibility(P("2*y"), P("3*x*y^3"))
    assert d.verdict == "divides" and d.mu_poly() == P("3/2*x*y^2")


def test_local_divisibility_zero_cases():
    assert local_divisibility(Poly.zero(XY), P("y")).verdict == "not_divisible"
    assert local_divisibility(P("y"), Poly.zero(XY)).verdict == "divides"


def test_local_divisibility_unit_denominator():
    # f = y*(2+3y) has a non-constant unit cofactor; still divides y^2
    f = P("2*y+3*y^2")
    g = P("2*y^2+3*y^3")
    d = local_divisibility(f, g)
    assert d.verdict == "divides" and d.tier == "exact"
    # g/f = y exactly
    assert d.mu_num * P("1") == d.mu_den * P("y") or proportional(
        d.mu_num, d.mu_den * P("y")
    )


def _series_divides_bruteforce(f, g, order=12):
    """Independent dense check: does mu with g = mu*f exist to `order`?

    Solves for the coefficients of mu degree by degree using plain linear
    algebra over all monomials, no divided structure shared with the
    implementation under test.
    """
    fparts = {}
    for e, c in f.terms.items():
        fparts.setdefault(sum(e), {})[e] = c
    gparts = {}
    for e, c in g.terms.items():
        gparts.setdefault(sum(e), {})[e] = c
    if not fparts:
        return not gparts
    m = min(fparts)
    if gparts and min(gparts) < m:
        return False
    fm = fparts[m]
    mu = {}
    for e_deg in range(order + 1):
        target = dict(gparts.get(m + e_deg, {}))
        for k, fk in fparts.items():
            if k == m:
                continue
            mk = mu.get(e_deg - (k - m))
            if not mk:
                continue
            for e1, c1 in fk.items():
                for e2, c2 in mk.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    target[e] = target.get(e, Fraction(0)) - c1 * c2
        target = {e: c for e, c in target.items() if c}
        # solve target = mu_e * fm for homogeneous mu_e: dense elimination
        # over candidate monomials of degree e_deg.
        cands = []

        def monos(n, total):
            if n == 1:
                yield (total,)
                return
            for d in range(total + 1):
                for rest in monos(n - 1, total - d):
                    yield (d,) + rest

        cands = list(monos(len(f.vars), e_deg))
        cols = {}
        for i, me in enumerate(cands):
            for ef, cf in fm.items():
                e = tuple(a + b for a, b in zip(me, ef))
                cols.setdefault(e, {})[i] = cf
        # gaussian elimination
        rows = [(dict(r), Fraction(0)) for r in ()]
        unsolved = dict(target)
        sol = {}
        eqs = []
        for e in sorted(set(cols) | set(unsolved)):
            eqs.append((dict(cols.get(e, {})), unsolved.get(e, Fraction(0))))
        piv = {}
        for row, b in eqs:
            row = dict(row)
            while True:
                common = [j for j in row if j in piv]
                if not common:
                    break
                j = min(common)
                c = row.pop(j)
                prow, pb = piv[j]
                for k2, v in prow.items():
                    nv = row.get(k2, Fraction(0)) - c * v
                    if nv:
                        row[k2] = nv
                    elif k2 in row:
                        del row[k2]
                b -= c * pb
            if row:
                j = min(row)
                c = row.pop(j)
                piv[j] = ({k2: v / c for k2, v in row.items()}, b / c)
            elif b:
                return False
        vals = {}
        for j in sorted(piv, reverse=True):
            prow, pb = piv[j]
            vals[j] = pb - sum(v * vals.get(k2, Fraction(0)) for k2, v in prow.items())
        mue = {}
        for i, me in enumerate(cands):
            v = vals.get(i, Fraction(0))
            if v:
                mue[me] = v
        if mue:
            mu[e_deg] = mue
    return True


def test_local_divisibility_against_bruteforce():
    rng = random.Random(97)
    checked = 0
    while checked < 50:
        f = rand_poly(rng, max_deg=3, max_terms=3)
        if f.is_zero or f.constant_term() != 0:
            continue
        if rng.random() < 0.5:
            mu = rand_poly(rng, max_deg=2, max_terms=2)
            g = f * mu
        else:
            g = rand_poly(rng, max_deg=4, max_terms=3)
            if g.is_zero or g.constant_term() != 0:
                continue
        checked += 1
        got = local_divisibility(f, g, cap=12)
        want = _series_divides_bruteforce(f, g, order=12)
        if got.verdict == "divides":
            assert want
        elif got.verdict == "not_divisible":
            assert not want
        else:  # divides_to_cap: brute force must also see no obstruction
            assert want


# ------------------------------------------------------------------ squarefree

def test_squarefree_at_origin():
    assert squarefree_at_origin(P("y^3+x*y"))
    assert not squarefree_at_origin(P("y^2"))
    assert not squarefree_at_origin(P("y^2+2*x*y+x^2"))  # (x+y)^2
    assert squarefree_at_origin(P("1+y"))
    assert squarefree_at_origin(P("x^2+y^2"))
    # a repeated factor away from the origin does not spoil the germ
    assert squarefree_at_origin(P("x*y^2+1") ** 2 * P("y"))


def test_normalized_unit_sign():
    p = P("-2*y^2-4*x")
    n = p.normalized_unit()
    assert n == P("y^2+2*x")
