"""Exact sparse polynomials over the rationals in a few named variables.

This is the arithmetic kernel everything else is built on: partial
derivatives, divided differences, Sylvester resultants (fraction-free),
exact multivariate division, gcd by primitive pseudo-remainder sequences,
and divisibility in the local ring of germs at the origin.

Coefficients are `fractions.Fraction` throughout; nothing in this package
ever touches floating point.  A `Poly` is immutable after construction, so
values can be shared freely between threads and caches.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Mapping, Optional, Sequence, Union

Scalar = Fraction
ScalarLike = Union[int, Fraction]


class PolyError(ValueError):
    pass


class NotDivisibleError(ArithmeticError):
    """Exact division failed; `term` is the first obstructed (exponent, coeff)."""

    def __init__(self, message: str, term=None):
        super().__init__(message)
        self.term = term


def _scalar(c: ScalarLike) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected int or Fraction, got {type(c).__name__}")


def grlex_key(exps: tuple) -> tuple:
    """Sort key for graded-lexicographic order: total degree, then the tuple."""
    return (sum(exps), exps)


class Poly:
    """Sparse multivariate polynomial with exact rational coefficients.

    `vars` is an ordered tuple of variable names; `terms` maps exponent
    tuples (one entry per variable) to nonzero Fractions.  Zero
    coefficients are never stored, so two polynomials over the same
    variables are equal iff their term maps are equal.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, ScalarLike]):
        vs = tuple(vars)
        n = len(vs)
        tm = {}
        for exps, c in terms.items():
            e = tuple(exps)
            if len(e) != n:
                raise PolyError(f"exponent vector {e} has wrong length for vars {vs}")
            if any(k < 0 for k in e):
                raise PolyError(f"negative exponent in {e}")
            c = _scalar(c)
            if c:
                acc = tm.get(e)
                tm[e] = acc + c if acc is not None else c
                if not tm[e]:
                    del tm[e]
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", tm)

    def __setattr__(self, *a):  # immutability guard
        raise AttributeError("Poly is immutable")

    # ---------------------------------------------------------------- builders
    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Poly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars: Sequence[str], c: ScalarLike) -> "Poly":
        n = len(tuple(vars))
        return cls(vars, {(0,) * n: c})

    @classmethod
    def one(cls, vars: Sequence[str]) -> "Poly":
        return cls.const(vars, 1)

    @classmethod
    def variable(cls, vars: Sequence[str], name: str) -> "Poly":
        vs = tuple(vars)
        if name not in vs:
            raise PolyError(f"unknown variable {name!r} (vars={vs})")
        e = tuple(1 if v == name else 0 for v in vs)
        return cls(vs, {e: 1})

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: tuple, c: ScalarLike = 1) -> "Poly":
        return cls(vars, {tuple(exps): c})

    # ---------------------------------------------------------------- queries
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(all(k == 0 for k in e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def coeff(self, exps: tuple) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def total_degree(self) -> int:
        if self.is_zero:
            return -1
        return max(sum(e) for e in self.terms)

    def order(self) -> int:
        """Minimal total degree of a term (the order of the germ at 0)."""
        if self.is_zero:
            raise PolyError("order of the zero polynomial is undefined")
        return min(sum(e) for e in self.terms)

    def degree_in(self, v: str) -> int:
        i = self._index(v)
        if self.is_zero:
            return -1
        return max(e[i] for e in self.terms)

    def _index(self, v: str) -> int:
        try:
            return self.vars.index(v)
        except ValueError:
            raise PolyError(f"unknown variable {v!r} (vars={self.vars})") from None

    def sorted_terms(self, reverse: bool = True):
        """Terms in (reverse) graded-lexicographic order; deterministic."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=reverse)

    # ---------------------------------------------------------------- equality
    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    # ---------------------------------------------------------------- arithmetic
    def _check_same_vars(self, other: "Poly"):
        if self.vars != other.vars:
            raise PolyError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_same_vars(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e)
            s = acc + c if acc is not None else c
            if s:
                terms[e] = s
            elif acc is not None:
                del terms[e]
        return Poly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _scalar(other)
            if not c:
                return Poly.zero(self.vars)
            return Poly(self.vars, {e: cc * c for e, cc in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_same_vars(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(e)
                s = acc + c1 * c2 if acc is not None else c1 * c2
                if s:
                    out[e] = s
                elif acc is not None:
                    del out[e]
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError("exponent must be a nonnegative integer")
        result = Poly.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ---------------------------------------------------------------- calculus
    def derivative(self, v: str) -> "Poly":
        i = self._index(v)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                out[e2] = out.get(e2, Fraction(0)) + c * k
        return Poly(self.vars, out)

    # ---------------------------------------------------------------- structure
    def lift(self, new_vars: Sequence[str]) -> "Poly":
        """Embed into a larger variable set (must contain the current one)."""
        nv = tuple(new_vars)
        idx = []
        for v in self.vars:
            if v not in nv:
                raise PolyError(f"lift target {nv} misses variable {v!r}")
            idx.append(nv.index(v))
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * len(nv)
            for j, k in zip(idx, e):
                e2[j] = k
            out[tuple(e2)] = c
        return Poly(nv, out)

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        nv = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(nv)) != len(nv):
            raise PolyError(f"rename produces duplicate variables: {nv}")
        return Poly(nv, self.terms)

    def drop_var(self, v: str) -> "Poly":
        """Remove a variable the polynomial does not involve."""
        i = self._index(v)
        if self.degree_in(v) > 0:
            raise PolyError(f"polynomial involves {v!r}")
        nv = self.vars[:i] + self.vars[i + 1:]
        return Poly(nv, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    def substitute(self, mapping: Mapping[str, "Poly | ScalarLike"], out_vars: Sequence[str]) -> "Poly":
        """Substitute polynomials (or scalars) for variables, exactly.

        Every variable of `self` must be covered by `mapping`; values are
        polynomials over `out_vars` (scalars are promoted).
        """
        ov = tuple(out_vars)
        values = []
        for v in self.vars:
            if v not in mapping:
                raise PolyError(f"substitution misses variable {v!r}")
            val = mapping[v]
            if isinstance(val, (int, Fraction)):
                val = Poly.const(ov, val)
            if val.vars != ov:
                val = val.lift(ov)
            values.append(val)
        result = Poly.zero(ov)
        pow_cache: dict = {}
        for e, c in self.sorted_terms():
            term = Poly.const(ov, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in pow_cache:
                        pow_cache[key] = values[i] ** k
                    term = term * pow_cache[key]
            result = result + term
        return result

    def homogeneous_parts(self) -> dict:
        """Split into homogeneous components, keyed by total degree."""
        parts: dict = {}
        for e, c in self.terms.items():
            d = sum(e)
            parts.setdefault(d, {})[e] = c
        return {d: Poly(self.vars, tm) for d, tm in sorted(parts.items())}

    def coeffs_in(self, v: str) -> dict:
        """Coefficients with respect to one variable, as polynomials in the rest."""
        i = self._index(v)
        rest = self.vars[:i] + self.vars[i + 1:]
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + e[i + 1:]] = c
        return {k: Poly(rest, tm) for k, tm in out.items()}

    # ---------------------------------------------------------------- normal forms
    def content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive (0 for the zero poly)."""
        if self.is_zero:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = _int_gcd(num, abs(c.numerator))
            den = den * c.denominator // _int_gcd(den, c.denominator)
        return Fraction(num, den)

    def lex_leading(self) -> tuple:
        """(exponents, coefficient) of the lexicographically greatest monomial."""
        if self.is_zero:
            raise PolyError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def normalized_unit(self) -> "Poly":
        """Scale by a rational unit: integer-primitive, lex-leading coefficient > 0."""
        if self.is_zero:
            return self
        c = self.content()
        _, lead = self.lex_leading()
        if lead < 0:
            c = -c
        return self * (1 / c)

    # ---------------------------------------------------------------- display
    def __repr__(self):
        from .parsing import render  # local import to avoid a cycle at module load

        return f"Poly({render(self)!r}, vars={self.vars})"


def proportional(f: Poly, g: Poly) -> bool:
    """True iff f = c*g for a nonzero rational c (unit-scalar equality)."""
    if f.is_zero or g.is_zero:
        return f.is_zero and g.is_zero
    if f.vars != g.vars or set(f.terms) != set(g.terms):
        return False
    e = next(iter(f.terms))
    c = f.terms[e] / g.terms[e]
    return all(cf == c * g.terms[ef] for ef, cf in f.terms.items())


# -------------------------------------------------------------------- divided differences

def divided_difference(f: Poly, v: str, new_var: str) -> Poly:
    """(f(..., v) - f(..., v')) / (v - v'), exactly, over vars + (v',).

    Substituting v' = v recovers the partial derivative with respect to v.
    """
    if new_var in f.vars:
        raise PolyError(f"variable {new_var!r} already present")
    i = f._index(v)
    nv = f.vars + (new_var,)
    out: dict = {}
    for e, c in f.terms.items():
        b = e[i]
        for k in range(b):
            e2 = e[:i] + (k,) + e[i + 1:] + (b - 1 - k,)
            acc = out.get(e2)
            s = acc + c if acc is not None else c
            if s:
                out[e2] = s
            elif acc is not None:
                del out[e2]
    return Poly(nv, out)


def second_divided_difference(f: Poly, v: str, new_var: str) -> Poly:
    """The exact witness a with f[.., v, v'] = f_v + (v' - v) * a."""
    dd = divided_difference(f, v, new_var)
    fv = f.derivative(v).lift(dd.vars)
    num = dd - fv
    if num.is_zero:
        return num
    diff = Poly.variable(dd.vars, new_var) - Poly.variable(dd.vars, v)
    return exact_divide(num, diff)


# -------------------------------------------------------------------- exact division

def exact_divide(f: Poly, g: Poly) -> Poly:
    """Return h with f = g*h, or raise NotDivisibleError at the first obstructed term.

    Division proceeds by cancelling graded-lex leading terms; over an
    integral domain this finds the quotient exactly when it exists.
    """
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero:
        return Poly.zero(f.vars)
    f._check_same_vars(g)
    lead_g = max(g.terms, key=grlex_key)
    lc_g = g.terms[lead_g]
    rem = dict(f.terms)
    quot: dict = {}
    while rem:
        le = max(rem, key=grlex_key)
        lc = rem[le]
        diff = tuple(a - b for a, b in zip(le, lead_g))
        if any(k < 0 for k in diff):
            raise NotDivisibleError(
                f"term with exponents {le} is not divisible by the leading term {lead_g}",
                term=(le, lc),
            )
        c = lc / lc_g
        quot[diff] = quot.get(diff, Fraction(0)) + c
        for eg, cg in g.terms.items():
            e = tuple(a + b for a, b in zip(diff, eg))
            acc = rem.get(e)
            s = (acc if acc is not None else Fraction(0)) - c * cg
            if s:
                rem[e] = s
            elif acc is not None:
                del rem[e]
    return Poly(f.vars, quot)


def divides(g: Poly, f: Poly) -> bool:
    try:
        exact_divide(f, g)
        return True
    except NotDivisibleError:
        return False


# -------------------------------------------------------------------- resultants

def _bareiss_det(m: list) -> Poly:
    """Fraction-free determinant (Bareiss) of a square matrix of Polys."""
    n = len(m)
    vars = m[0][0].vars
    if n == 0:
        return Poly.one(vars)
    m = [row[:] for row in m]
    sign = 1
    prev = Poly.one(vars)
    for k in range(n - 1):
        if m[k][k].is_zero:
            pivot_row = next((i for i in range(k + 1, n) if not m[i][k].is_zero), None)
            if pivot_row is None:
                return Poly.zero(vars)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_divide(num, prev)
            m[i][k] = Poly.zero(vars)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def sylvester_matrix(f: Poly, g: Poly, v: str) -> list:
    """Sylvester matrix of f, g with respect to v, entries over the remaining vars."""
    cf = f.coeffs_in(v)
    cg = g.coeffs_in(v)
    m = max(cf)
    n = max(cg)
    rest = next(iter(cf.values())).vars if cf else ()
    zero = Poly.zero(rest)
    frow = [cf.get(m - j, zero) for j in range(m + 1)]
    grow = [cg.get(n - j, zero) for j in range(n + 1)]
    size = m + n
    rows = []
    for r in range(n):
        rows.append([zero] * r + frow + [zero] * (size - r - m - 1))
    for r in range(m):
        rows.append([zero] * r + grow + [zero] * (size - r - n - 1))
    return rows


def resultant(f: Poly, g: Poly, v: str) -> Poly:
    """Sylvester resultant eliminating v, by fraction-free elimination.

    The sign convention is the one of the Sylvester matrix with f-rows
    first and coefficients listed by decreasing degree; for a fixed
    variable order the output is deterministic.
    """
    if f.is_zero or g.is_zero:
        raise PolyError("resultant of the zero polynomial is undefined")
    f._check_same_vars(g)
    m = f.degree_in(v)
    n = g.degree_in(v)
    if m <= 0 and n <= 0:
        raise PolyError(f"both arguments are constant in {v!r}")
    i = f._index(v)
    rest = f.vars[:i] + f.vars[i + 1:]
    if m <= 0:
        return f.coeffs_in(v)[0] ** n
    if n <= 0:
        return g.coeffs_in(v)[0] ** m
    rows = sylvester_matrix(f, g, v)
    det = _bareiss_det(rows)
    if det.vars != rest:  # defensive; coeffs_in already uses `rest`
        det = det.lift(rest)
    return det


# -------------------------------------------------------------------- gcd

def _primitive_wrt(f: Poly, v: str) -> tuple:
    """(content, primitive part) of f viewed in (rest)[v]."""
    coeffs = f.coeffs_in(v)
    items = [coeffs[k] for k in sorted(coeffs)]
    cont = items[0]
    for c in items[1:]:
        cont = poly_gcd(cont, c)
        if cont.is_constant:
            break
    cont_l = cont.lift(f.vars)
    return cont_l, exact_divide(f, cont_l)


def _pseudo_rem(f: Poly, g: Poly, v: str) -> Poly:
    """Pseudo-remainder of f by g with respect to v (coefficients stay polynomial)."""
    df = f.degree_in(v)
    dg = g.degree_in(v)
    lc_g = g.coeffs_in(v)[dg].lift(f.vars)
    r = f
    while not r.is_zero and r.degree_in(v) >= dg:
        dr = r.degree_in(v)
        lc_r = r.coeffs_in(v)[dr].lift(f.vars)
        shift = Poly.variable(f.vars, v) ** (dr - dg)
        r = r * lc_g - g * lc_r * shift
    return r


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Gcd in Q[vars], normalized integer-primitive with positive lex-leading coefficient."""
    if f.is_zero:
        return g.normalized_unit()
    if g.is_zero:
        return f.normalized_unit()
    f._check_same_vars(g)
    v = next((w for w in f.vars if f.degree_in(w) > 0 or g.degree_in(w) > 0), None)
    if v is None:
        return Poly.one(f.vars)
    return _gcd_main(f, g, v)


def _gcd_main(f: Poly, g: Poly, v: str) -> Poly:
    cont_f, pf = _primitive_wrt(f, v)
    cont_g, pg = _primitive_wrt(g, v)
    i = f._index(v)
    cont = poly_gcd(cont_f.drop_var(v), cont_g.drop_var(v)).lift(f.vars)
    a, b = pf, pg
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while True:
        if b.is_zero:
            gc = a
            break
        if b.degree_in(v) == 0:
            gc = Poly.one(f.vars)
            break
        r = _pseudo_rem(a, b, v)
        if r.is_zero:
            gc = b
            break
        if r.degree_in(v) == 0:
            gc = Poly.one(f.vars)
            break
        _, r = _primitive_wrt(r, v)
        a, b = b, r
    if gc.degree_in(v) > 0:
        _, gc = _primitive_wrt(gc, v)
    return (cont * gc).normalized_unit()


# -------------------------------------------------------------------- squarefree test

def squarefree_at_origin(f: Poly) -> bool:
    """True iff f has no repeated factor vanishing at the origin.

    The zero set germ of f at 0 is reduced exactly when the gcd of f and
    all its partials does not vanish there (characteristic zero).
    """
    if f.is_zero:
        return False
    if f.is_constant:
        return True
    d = f
    for v in f.vars:
        d = poly_gcd(d, f.derivative(v))
        if d.is_constant:
            return True
    return d.constant_term() != 0


# -------------------------------------------------------------------- local divisibility

@dataclass(frozen=True)
class LocalDivision:
    """Outcome of testing f | g in the ring of germs at the origin.

    verdict: "divides", "not_divisible" or "divides_to_cap" (no obstruction
    found up to the jet cap; not a proof).  `tier` records which tier
    decided: "exact" (gcd cofactor is a local unit, or a verified
    polynomial quotient) or "jet" (order-by-order solving).

    For an exact verdict the multiplier is the fraction mu_num/mu_den with
    mu_den(0) != 0; for a cap verdict `mu_trunc` holds the truncation of
    the multiplier series to total degree `jet_order`.
    """

    verdict: str
    tier: str
    mu_num: Optional[Poly] = None
    mu_den: Optional[Poly] = None
    mu_trunc: Optional[Poly] = None
    jet_order: Optional[int] = None
    obstruction_degree: Optional[int] = None
    obstruction: Optional[str] = None

    @property
    def divides(self) -> Optional[bool]:
        if self.verdict == "divides":
            return True
        if self.verdict == "not_divisible":
            return False
        return None

    def mu_is_polynomial(self) -> bool:
        return self.mu_den is not None and self.mu_den.is_constant

    def mu_poly(self) -> Poly:
        if not self.mu_is_polynomial():
            raise PolyError("multiplier is not a polynomial")
        return self.mu_num * (1 / self.mu_den.constant_term())


def local_divisibility(f: Poly, g: Poly, cap: int = 40) -> LocalDivision:
    """Two-tier test of f | g in the local ring at the origin.

    Tier one: compute d = gcd(f, g); if the cofactor f/d does not vanish
    at 0 it is a local unit, so f | g with multiplier (g/d)/(f/d).  Tier
    two: solve g = mu * f degree by degree; a failed homogeneous division
    is a definitive obstruction, while success up to `cap` is reported as
    "divides_to_cap".
    """
    f._check_same_vars(g)
    if f.is_zero:
        if g.is_zero:
            return LocalDivision("divides", "exact", Poly.zero(f.vars), Poly.one(f.vars))
        return LocalDivision("not_divisible", "exact", obstruction="divisor is identically zero")
    if g.is_zero:
        return LocalDivision("divides", "exact", Poly.zero(f.vars), Poly.one(f.vars))

    d = poly_gcd(f, g)
    u = exact_divide(f, d)
    if u.constant_term() != 0:
        w = exact_divide(g, d)
        if u.is_constant:
            return LocalDivision("divides", "exact", w * (1 / u.constant_term()), Poly.one(f.vars))
        return LocalDivision("divides", "exact", w, u)

    # Jet tier: match homogeneous components of g = mu * f.
    m = f.order()
    if g.order() < m:
        low = min(sum(e) for e in g.terms)
        return LocalDivision(
            "not_divisible", "jet",
            obstruction_degree=low,
            obstruction=f"g has a term of total degree {low} below the order {m} of f",
        )
    f_parts = f.homogeneous_parts()
    g_parts = g.homogeneous_parts()
    fm = f_parts[m]
    mu_parts: dict = {}
    for e in range(cap + 1):
        r = g_parts.get(m + e, Poly.zero(f.vars))
        for k, fk in f_parts.items():
            if k == m:
                continue
            j = e - (k - m)
            if j in mu_parts:
                r = r - fk * mu_parts[j]
        if r.is_zero:
            continue
        try:
            mu_parts[e] = exact_divide(r, fm)
        except NotDivisibleError as exc:
            return LocalDivision(
                "not_divisible", "jet",
                obstruction_degree=m + e,
                obstruction=f"at total degree {m + e}: {exc}",
            )
    mu = Poly.zero(f.vars)
    for p in mu_parts.values():
        mu = mu + p
    if mu * f == g:
        return LocalDivision("divides", "exact", mu, Poly.one(f.vars))
    return LocalDivision("divides_to_cap", "jet", mu_trunc=mu, jet_order=cap)
