"""Truncated-jet linear algebra over local rings in two or three variables.

The central operation is `colength`: the vector-space dimension of a local
ring modulo an ideal, computed by truncating at increasing jet orders and
stopping once the dimension count stabilizes (by Nakayama's lemma, one
stationary step suffices for ideals).  All linear algebra is exact
rational Gaussian elimination; pivots are chosen as the graded-lex
smallest exponent vector so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .poly import Poly, PolyError, grlex_key


class LocalAlgebraError(ValueError):
    pass


# ---------------------------------------------------------------------- jets

class Jet:
    """A power series truncated at a total degree.

    `terms` only stores exponent vectors of total degree <= order; all
    arithmetic truncates at the smaller order of the operands.
    """

    __slots__ = ("vars", "order", "terms")

    def __init__(self, vars: Sequence[str], order: int, terms: Mapping[tuple, Union[int, Fraction]]):
        vs = tuple(vars)
        if order < 0:
            raise LocalAlgebraError("jet order must be nonnegative")
        tm = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != len(vs):
                raise LocalAlgebraError(f"exponent vector {e} has wrong length for {vs}")
            if sum(e) > order:
                continue
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                acc = tm.get(e)
                tm[e] = acc + c if acc is not None else c
                if not tm[e]:
                    del tm[e]
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", tm)

    def __setattr__(self, *a):
        raise AttributeError("Jet is immutable")

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "Jet":
        return cls(p.vars, order, p.terms)

    @classmethod
    def zero(cls, vars: Sequence[str], order: int) -> "Jet":
        return cls(vars, order, {})

    @classmethod
    def const(cls, vars: Sequence[str], c, order: int) -> "Jet":
        return cls(vars, order, {(0,) * len(tuple(vars)): c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def to_poly(self) -> Poly:
        return Poly(self.vars, self.terms)

    def truncate(self, order: int) -> "Jet":
        """Lower the truncation order (raising it cannot create precision)."""
        if order >= self.order:
            return self
        return Jet(self.vars, order, {e: c for e, c in self.terms.items() if sum(e) <= order})

    def rename(self, mapping: Mapping[str, str]) -> "Jet":
        nv = tuple(mapping.get(v, v) for v in self.vars)
        return Jet(nv, self.order, self.terms)

    def lift(self, new_vars: Sequence[str]) -> "Jet":
        return Jet.from_poly(self.to_poly().lift(new_vars), self.order)

    def _common(self, other: "Jet") -> int:
        if self.vars != other.vars:
            raise LocalAlgebraError(f"variable mismatch: {self.vars} vs {other.vars}")
        return min(self.order, other.order)

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self.vars == other.vars and self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, self.order, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Jet.const(self.vars, other, self.order)
        n = self._common(other)
        out = {e: c for e, c in self.terms.items() if sum(e) <= n}
        for e, c in other.terms.items():
            if sum(e) > n:
                continue
            acc = out.get(e)
            s = acc + c if acc is not None else c
            if s:
                out[e] = s
            elif acc is not None:
                del out[e]
        return Jet(self.vars, n, out)

    def __neg__(self):
        return Jet(self.vars, self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Jet.const(self.vars, other, self.order)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Jet(self.vars, self.order, {e: cc * c for e, cc in self.terms.items()})
        n = self._common(other)
        a = sorted(self.terms.items(), key=lambda t: sum(t[0]))
        b = sorted(other.terms.items(), key=lambda t: sum(t[0]))
        out: dict = {}
        for e1, c1 in a:
            d1 = sum(e1)
            if d1 > n:
                break
            for e2, c2 in b:
                if d1 + sum(e2) > n:
                    break
                e = tuple(i + j for i, j in zip(e1, e2))
                acc = out.get(e)
                s = acc + c1 * c2 if acc is not None else c1 * c2
                if s:
                    out[e] = s
                elif acc is not None:
                    del out[e]
        return Jet(self.vars, n, out)

    __rmul__ = __mul__

    def derivative(self, v: str) -> "Jet":
        p = self.to_poly().derivative(v)
        return Jet.from_poly(p, max(self.order - 1, 0))

    def homogeneous_part(self, d: int) -> "Jet":
        return Jet(self.vars, self.order, {e: c for e, c in self.terms.items() if sum(e) == d})

    def inverse(self) -> "Jet":
        """Multiplicative inverse of a unit jet (nonzero constant term)."""
        a0 = self.constant_term()
        if not a0:
            raise LocalAlgebraError("jet is not a unit (constant term 0)")
        n = self.order
        inv0 = 1 / a0
        parts_a: dict = {}
        for e, c in self.terms.items():
            parts_a.setdefault(sum(e), {})[e] = c
        out = {(0,) * len(self.vars): inv0}
        parts_b = {0: {(0,) * len(self.vars): inv0}}
        for d in range(1, n + 1):
            acc: dict = {}
            for k, ak in parts_a.items():
                if k == 0 or k > d:
                    continue
                bk = parts_b.get(d - k)
                if not bk:
                    continue
                for e1, c1 in ak.items():
                    for e2, c2 in bk.items():
                        e = tuple(i + j for i, j in zip(e1, e2))
                        acc[e] = acc.get(e, Fraction(0)) + c1 * c2
            part = {}
            for e, c in acc.items():
                c = -inv0 * c
                if c:
                    part[e] = c
            if part:
                parts_b[d] = part
                out.update(part)
        return Jet(self.vars, n, out)

    def substitute_polys(self, mapping: Mapping[str, Poly], out_vars: Sequence[str]) -> Poly:
        """Compose with polynomial values, truncated at this jet's order.

        Valid whenever every substituted value has positive order, so
        degree-(order+1) tails of `self` cannot contribute below the
        truncation degree.
        """
        ov = tuple(out_vars)
        values = []
        for v in self.vars:
            val = mapping[v]
            if val.vars != ov:
                val = val.lift(ov)
            values.append(val)
        n = self.order
        pow_cache: dict = {}

        def power(i: int, k: int) -> Poly:
            key = (i, k)
            if key not in pow_cache:
                if k == 0:
                    p = Poly.one(ov)
                else:
                    p = power(i, k - 1) * values[i]
                    p = Poly(ov, {e: c for e, c in p.terms.items() if sum(e) <= n})
                pow_cache[key] = p
            return pow_cache[key]

        result = Poly.zero(ov)
        for e, c in sorted(self.terms.items(), key=lambda t: grlex_key(t[0])):
            term = Poly.const(ov, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
                    term = Poly(ov, {ee: cc for ee, cc in term.terms.items() if sum(ee) <= n})
            result = result + term
        return result

    def __repr__(self):
        return f"Jet(order={self.order}, vars={self.vars}, terms={len(self.terms)})"


PolyOrJet = Union[Poly, Jet]


# ---------------------------------------------------------------------- colength

@dataclass(frozen=True)
class ColengthResult:
    """Outcome of a colength computation.

    `value` is the dimension when finite; when the jet cap is reached
    without stabilization `value` is None and `cap_reached` is True (this
    deliberately does not distinguish "infinite" from "slow").
    `monomial_basis` spans the quotient, listed in graded-lex order.
    """

    value: Optional[int]
    stabilized_at: Optional[int]
    cap: int
    cap_reached: bool = False
    monomial_basis: Optional[tuple] = None
    vars: tuple = ()

    @property
    def finite(self) -> bool:
        return self.value is not None

    def __repr__(self):
        if self.finite:
            return f"ColengthResult({self.value}, stabilized_at={self.stabilized_at})"
        return f"ColengthResult(cap_reached at {self.cap})"


def _monomials_below(nvars: int, k: int):
    """All exponent vectors of total degree < k, grlex ascending."""
    out = []

    def rec(prefix, remaining, budget):
        if remaining == 1:
            for d in range(budget + 1):
                out.append(prefix + (d,))
            return
        for d in range(budget + 1):
            rec(prefix + (d,), remaining - 1, budget - d)

    if k <= 0:
        return []
    rec((), nvars, k - 1)
    out.sort(key=grlex_key)
    return out


def _count_monomials_of_degree(nvars: int, d: int) -> int:
    # C(d + nvars - 1, nvars - 1)
    from math import comb

    return comb(d + nvars - 1, nvars - 1)


class _Echelon:
    """Online row echelon over monomial columns, pivot = grlex-min exponent."""

    def __init__(self):
        self.pivots: dict = {}

    def insert(self, row: dict) -> Optional[tuple]:
        while row:
            lead = min(row, key=grlex_key)
            piv = self.pivots.get(lead)
            if piv is None:
                c = row[lead]
                if c != 1:
                    row = {e: v / c for e, v in row.items()}
                self.pivots[lead] = row
                return lead
            c = row[lead]
            for e, v in piv.items():
                acc = row.get(e)
                s = (acc if acc is not None else Fraction(0)) - c * v
                if s:
                    row[e] = s
                elif acc is not None:
                    del row[e]
        return None


def _truncated_multiples(gen_terms: dict, nvars: int, K: int):
    """Rows m * g truncated below degree K, for all monomials m."""
    ordg = min(sum(e) for e in gen_terms)
    rows = []
    for m in _monomials_below(nvars, K - ordg):
        row = {}
        for e, c in gen_terms.items():
            ee = tuple(a + b for a, b in zip(m, e))
            if sum(ee) < K:
                row[ee] = c
        if row:
            rows.append(row)
    return rows


def colength(
    generators: Sequence[PolyOrJet],
    cap: int = 40,
    consecutive: int = 1,
) -> ColengthResult:
    """Colength of the ideal generated by `generators` in the local ring.

    At truncation degree k the quotient dimension d_k counts monomials of
    degree < k modulo all truncated monomial multiples of the generators;
    d_k is nondecreasing, and `consecutive` stationary steps certify the
    limit (one for ideals; module-type callers may ask for two).

    Jet generators are trusted only up to their own order, which lowers
    the effective cap.
    """
    gens = []
    vars_seen = None
    trust = None
    for g in generators:
        if isinstance(g, Jet):
            t = g.order
            trust = t if trust is None else min(trust, t)
            terms = g.terms
            vs = g.vars
        elif isinstance(g, Poly):
            terms = g.terms
            vs = g.vars
        else:
            raise LocalAlgebraError(f"unsupported generator type {type(g).__name__}")
        if vars_seen is None:
            vars_seen = vs
        elif vs != vars_seen:
            raise LocalAlgebraError(f"generators over different variables: {vs} vs {vars_seen}")
        if terms:
            gens.append(dict(terms))
    if vars_seen is None or not gens:
        raise LocalAlgebraError("colength needs at least one nonzero generator")
    nvars = len(vars_seen)
    effective_cap = cap if trust is None else min(cap, trust - consecutive)
    if effective_cap < 0:
        raise LocalAlgebraError("jet generators are too short for any stabilization check")

    K = min(6, effective_cap + consecutive + 1)
    while True:
        ech = _Echelon()
        for gt in gens:
            for row in _truncated_multiples(gt, nvars, K):
                ech.insert(row)
        pivot_count: dict = {}
        for e in ech.pivots:
            d = sum(e)
            pivot_count[d] = pivot_count.get(d, 0) + 1
        found = None
        for k in range(0, K - consecutive + 1):
            if k > effective_cap:
                break
            if all(
                pivot_count.get(j, 0) == _count_monomials_of_degree(nvars, j)
                for j in range(k, k + consecutive)
            ):
                found = k
                break
        if found is not None:
            k = found
            basis = tuple(
                e for e in _monomials_below(nvars, k) if e not in ech.pivots
            )
            return ColengthResult(
                value=len(basis),
                stabilized_at=k,
                cap=cap,
                monomial_basis=basis,
                vars=vars_seen,
            )
        K_final = effective_cap + consecutive + 1
        if K >= K_final:
            return ColengthResult(
                value=None,
                stabilized_at=None,
                cap=effective_cap,
                cap_reached=True,
                vars=vars_seen,
            )
        K = min(K * 2, K_final)


def fold_module_colength(h: Poly, cap: int = 40) -> ColengthResult:
    """Codimension of the tangent module of a fold surface with datum h(x, u).

    The ambient ring splits into even and odd parts along y (writing
    u = y^2); the even part is covered entirely, and the odd part reduces,
    after dividing by y, to the ideal (h_x, u*h_u, h) in the two-variable
    ring in (x, u).  Module quotients need two stationary truncation steps
    for the Nakayama argument, hence consecutive=2.
    """
    if h.vars != ("x", "u"):
        h = h.lift(("x", "u")) if set(h.vars) <= {"x", "u"} else h
    if h.is_zero:
        raise LocalAlgebraError("fold datum must be nonzero")
    u = Poly.variable(h.vars, "u")
    gens = [h.derivative("x"), u * h.derivative("u"), h]
    gens = [g for g in gens if not g.is_zero]
    return colength(gens, cap=cap, consecutive=2)


# ---------------------------------------------------------------------- membership

@dataclass(frozen=True)
class MembershipResult:
    solved: bool
    coefficients: Optional[tuple] = None  # tuple of Jet, one per generator
    obstructed_order: Optional[int] = None


def jet_solve_membership(
    target: Jet,
    generators: Sequence[Jet],
    coefficient_vars: Union[Sequence[str], Sequence[Sequence[str]]],
) -> MembershipResult:
    """Solve target = sum_i c_i * g_i to the common truncation order.

    `coefficient_vars` restricts which variables each c_i may use: one
    list applied to every generator or a per-generator list of lists.  The
    system is solved degree by degree by exact elimination; the first
    inconsistent order is reported as the obstruction.
    """
    if not generators:
        raise LocalAlgebraError("no generators")
    vars_full = target.vars
    order = min([target.order] + [g.order for g in generators])
    for g in generators:
        if g.vars != vars_full:
            raise LocalAlgebraError("generators and target must share a variable set")
    if coefficient_vars and isinstance(coefficient_vars[0], str):
        per_gen = [tuple(coefficient_vars)] * len(generators)
    else:
        per_gen = [tuple(cv) for cv in coefficient_vars]
    if len(per_gen) != len(generators):
        raise LocalAlgebraError("one coefficient variable list per generator required")
    for cv in per_gen:
        for v in cv:
            if v not in vars_full:
                raise LocalAlgebraError(f"coefficient variable {v!r} not among {vars_full}")

    # Unknowns: (i, m) coefficient monomial m (over per_gen[i]) of c_i.
    unknowns = []
    for i, cv in enumerate(per_gen):
        idx = [vars_full.index(v) for v in cv]
        gi = generators[i]
        if gi.is_zero:
            continue
        og = min(sum(e) for e in gi.terms)
        for m in _monomials_below(len(cv), order + 1 - og):
            unknowns.append((i, m, idx))

    # Equations: coefficient of each full monomial of degree <= order.
    # Build columns: for unknown (i, m): monomials of generator i shifted by m.
    col_of = {}
    for j, (i, m, idx) in enumerate(unknowns):
        col_of[j] = (i, m, idx)
    rows: dict = {}
    for j, (i, m, idx) in col_of.items():
        for e, c in generators[i].terms.items():
            ee = list(e)
            for pos, v_i in enumerate(idx):
                ee[v_i] += m[pos]
            ee = tuple(ee)
            if sum(ee) <= order:
                bucket = rows.setdefault(ee, {})
                bucket[j] = bucket.get(j, Fraction(0)) + c

    # Order equations by total degree, eliminate greedily.  Each pivot row
    # references only strictly larger unknown indices, so eliminating the
    # smallest pivot index present always terminates.
    eqs = sorted(rows.items(), key=lambda t: grlex_key(t[0]))
    rhs = dict(target.terms)
    pivots: dict = {}
    for mon, row in eqs:
        row = dict(row)
        b = rhs.get(mon, Fraction(0))
        while True:
            common = [jj for jj in row if jj in pivots]
            if not common:
                break
            jj = min(common)
            c = row.pop(jj)
            prow, pb = pivots[jj]
            for kk, vv in prow.items():
                acc = row.get(kk, Fraction(0)) - c * vv
                if acc:
                    row[kk] = acc
                elif kk in row:
                    del row[kk]
            b -= c * pb
        if row:
            pj = min(row)
            c = row.pop(pj)
            row = {jj: vv / c for jj, vv in row.items()}
            pivots[pj] = (row, b / c)
        elif b:
            return MembershipResult(False, obstructed_order=sum(mon))

    # Back-substitute (triangular by construction order).
    values: dict = {}
    for pj in sorted(pivots, reverse=True):
        row, b = pivots[pj]
        acc = b
        for jj, vv in row.items():
            acc -= vv * values.get(jj, Fraction(0))
        values[pj] = acc
    coeffs = []
    for i, cv in enumerate(per_gen):
        terms: dict = {}
        for j, (gi, m, idx) in col_of.items():
            if gi != i:
                continue
            v = values.get(j, Fraction(0))
            if v:
                e = [0] * len(vars_full)
                for pos, v_i in enumerate(idx):
                    e[v_i] = m[pos]
                terms[tuple(e)] = v
        coeffs.append(Jet(vars_full, order, terms))
    # Verify (the elimination above is not guaranteed to check consistency
    # of equations that never became pivots).
    acc = Jet.zero(vars_full, order)
    for c, g in zip(coeffs, generators):
        acc = acc + c * g
    diff = target - acc
    if not diff.is_zero:
        bad = min(sum(e) for e in diff.terms)
        return MembershipResult(False, obstructed_order=bad)
    return MembershipResult(True, coefficients=tuple(coeffs))
