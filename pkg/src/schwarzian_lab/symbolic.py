"""Exact symbolic engine for differential operators in jet variables.

A ``DiffExpr`` is a Laurent polynomial over Q in the variables u_1, u_2, ...
where u_k stands for the k-th derivative f^(k) of an undetermined holomorphic
function.  The exponent of u_1 lives in (1/2)Z because the B-series
construction passes through (f')^{1-n/2}; exponents of u_2, u_3, ... are
nonnegative integers.  An expression is *canonical* when every u_1 exponent
is integral — the final form of both Schwarzian series is canonical, and
``sigma_b`` asserts this.

Exponent keys are stored as integer tuples ``(2*e_1, e_2, ..., e_K)`` with
trailing zeros trimmed; coefficients are ``fractions.Fraction``.  Numeric
conversion happens only inside the evaluators.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .jets import Jet, jet_const, jet_derive, jet_pow, jet_reciprocal, jet_shift, derivative_values

Key = tuple  # (2*e1, e2, e3, ..., eK), trailing zeros trimmed


def _trim(key) -> Key:
    key = list(key)
    while len(key) > 1 and key[-1] == 0:
        key.pop()
    return tuple(key)


def _mul_keys(k1: Key, k2: Key) -> Key:
    n = max(len(k1), len(k2))
    k1 = k1 + (0,) * (n - len(k1))
    k2 = k2 + (0,) * (n - len(k2))
    return _trim(tuple(a + b for a, b in zip(k1, k2)))


class DiffExpr:
    """Immutable Laurent differential polynomial with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[_trim(tuple(key))] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("DiffExpr is immutable")

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "DiffExpr") -> "DiffExpr":
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + c
        return DiffExpr(terms)

    def __sub__(self, other: "DiffExpr") -> "DiffExpr":
        return self + other.scale(-1)

    def __mul__(self, other: "DiffExpr") -> "DiffExpr":
        terms = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = _mul_keys(k1, k2)
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return DiffExpr(terms)

    def scale(self, c) -> "DiffExpr":
        c = Fraction(c)
        return DiffExpr({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure ---------------------------------------------------------

    def is_canonical(self) -> bool:
        """True when every u_1 exponent is an integer."""
        return all(key[0] % 2 == 0 for key in self.terms)

    def max_index(self) -> int:
        """Largest k with u_k occurring (at least 1)."""
        return max((len(key) for key in self.terms), default=1)

    def weights(self) -> set:
        """Set of monomial weights sum_k (k-1)*e_k (u_1 counted with e_1)."""
        out = set()
        for key in self.terms:
            w = Fraction(0)
            for i, e in enumerate(key):
                k = i + 1
                ek = Fraction(e, 2) if k == 1 else Fraction(e)
                w += (k - 1) * ek
            out.add(w)
        return out

    def __repr__(self):
        return f"DiffExpr({to_string(self)!r})"


def monomial(coeff, e1_doubled: int = 0, **powers) -> DiffExpr:
    """Single term; `powers` maps 'u2', 'u3', ... to exponents."""
    top = max([1] + [int(name[1:]) for name in powers])
    key = [0] * top
    key[0] = e1_doubled
    for name, e in powers.items():
        key[int(name[1:]) - 1] = e
    return DiffExpr({tuple(key): Fraction(coeff)})


def u1_power(e1_doubled: int) -> DiffExpr:
    return DiffExpr({(e1_doubled,): Fraction(1)})


def classical(kind: str) -> DiffExpr:
    """The classical operators: 'schwarzian' S_f or 'pre_schwarzian' f''/f'."""
    if kind == "pre_schwarzian":
        return monomial(1, -2, u2=1)
    if kind == "schwarzian":
        return monomial(1, -2, u3=1) + monomial(Fraction(-3, 2), -4, u2=2)
    raise ValueError(f"unknown classical operator {kind!r}")


def sym_derive(e: DiffExpr) -> DiffExpr:
    """Formal z-derivative: u_k -> u_{k+1} via the Leibniz rule."""
    terms = {}

    def add(key, coeff):
        key = _trim(key)
        if coeff != 0:
            terms[key] = terms.get(key, Fraction(0)) + coeff

    for key, coeff in e.terms.items():
        for i, exp in enumerate(key):
            if exp == 0:
                continue
            k = i + 1
            ek = Fraction(exp, 2) if k == 1 else Fraction(exp)
            new = list(key) + [0] * max(0, (i + 2) - len(key))
            if k == 1:
                new[0] -= 2
            else:
                new[i] -= 1
            new[i + 1] += 1
            add(tuple(new), coeff * ek)
    return DiffExpr(terms)


@lru_cache(maxsize=None)
def sigma_a(n: int) -> DiffExpr:
    """A-series higher Schwarzian: sigma_3 = S_f, then
    sigma_{n+1} = sigma_n' - (n-1)*(f''/f')*sigma_n."""
    if n < 3:
        raise ValueError("A-series starts at n = 3")
    expr = classical("schwarzian")
    ps = classical("pre_schwarzian")
    for m in range(3, n):
        expr = sym_derive(expr) - (ps * expr).scale(m - 1)
    return expr


@lru_cache(maxsize=None)
def sigma_b(n: int) -> DiffExpr:
    """B-series higher Schwarzian: -2*(f')^{n/2-1} * d^{n-1}/dz^{n-1} (f')^{1-n/2}.

    Intermediate stages live on the half-integer u_1 lattice; the final
    product is asserted canonical (all u_1 exponents integral).

    Some published coefficient tables for n = 4, 5 differ in signs and one
    exponent from this direct expansion; the defining derivative formula is
    what is implemented, and the jet-arithmetic oracle in the test suite
    confirms it.
    """
    if n < 3:
        raise ValueError("B-series starts at n = 3")
    expr = u1_power(2 - n)  # (f')^{1 - n/2}
    for _ in range(n - 1):
        expr = sym_derive(expr)
    expr = (expr * u1_power(n - 2)).scale(-2)
    if not expr.is_canonical():
        raise AssertionError("B-series expansion failed to cancel half-integer exponents")
    return expr


def monomial_part(e: DiffExpr) -> DiffExpr:
    """Terms of degree exactly one in the higher variables u_2, u_3, ...

    These carry the coefficients a_{k,l} that drive the differential of the
    higher Bers maps at the origin.
    """
    picked = {}
    for key, coeff in e.terms.items():
        high = key[1:]
        if sum(high) == 1:
            picked[key] = coeff
    return DiffExpr(picked)


def monomial_coefficients(e: DiffExpr) -> dict:
    """Map (k, l) -> a_{k,l} for the degree-one terms a_{k,l} * u_k / u_1^l."""
    out = {}
    for key, coeff in monomial_part(e).terms.items():
        if key[0] % 2 != 0:
            raise ValueError("monomial coefficients need a canonical expression")
        k = len(key)  # the single u_k factor sits at the top index
        l = -key[0] // 2
        out[(k, l)] = coeff
    return out


def series_constant(e: DiffExpr) -> Fraction:
    """Coefficient c of the leading monomial c * u_n / u_1 (0 if absent)."""
    coeffs = monomial_coefficients(e)
    n = max((k for (k, _l) in coeffs), default=0)
    return coeffs.get((n, 1), Fraction(0))


# -- evaluation -------------------------------------------------------------


def _term_value(key, us, coeff):
    exact = all(isinstance(u, (int, Fraction)) for u in us[1:])
    val = coeff if exact else float(coeff)
    for i, e in enumerate(key):
        if e == 0:
            continue
        k = i + 1
        if k == 1:
            if e % 2 != 0:
                raise ValueError("evaluate needs a canonical expression (integral u_1 exponents)")
            p = e // 2
            u = Fraction(us[1]) if isinstance(us[1], int) else us[1]
            val = val * u**p
        else:
            val = val * us[k] ** e
    return val


def evaluate(e: DiffExpr, f: Jet, z_offset=0):
    """Numeric value of e[f] at f.center + z_offset.

    The jet is recentered by `jet_shift`, derivative values u_k = f^(k) are
    read off, and the Laurent polynomial is evaluated.  Requires jet order
    >= the largest derivative index in `e` and u_1 != 0 there.
    """
    top = e.max_index()
    if f.order < top:
        raise ValueError(f"jet order {f.order} below required derivative index {top}")
    g = jet_shift(f, z_offset) if z_offset != 0 else f
    us = (None,) + derivative_values(g)[1:]
    if us[1] == 0:
        raise ValueError("vanishing first derivative at evaluation point")
    total = None
    for key, coeff in e.terms.items():
        v = _term_value(key, us, coeff)
        total = v if total is None else total + v
    if total is None:
        exact = all(isinstance(u, (int, Fraction)) for u in us[1:])
        return Fraction(0) if exact else 0j
    return total


def evaluate_jet(e: DiffExpr, f: Jet) -> Jet:
    """e[f] as a jet at f.center (order drops by the top derivative index)."""
    top = e.max_index()
    if f.order < top:
        raise ValueError(f"jet order {f.order} below required derivative index {top}")
    out_order = f.order - top
    u_jets = {k: jet_derive(f, k) for k in range(1, top + 1)}
    u1_inv = jet_reciprocal(u_jets[1])
    exact = all(isinstance(c, (int, Fraction)) for c in f.coeffs)
    total = jet_const(Fraction(0) if exact else 0j, f.center, out_order)
    for key, coeff in e.terms.items():
        if key[0] % 2 != 0:
            raise ValueError("evaluate_jet needs a canonical expression")
        term = jet_const(coeff if exact else float(coeff), f.center, out_order)
        p = key[0] // 2
        base = u_jets[1] if p >= 0 else u1_inv
        for _ in range(abs(p)):
            term = term * base
        for i, exp in enumerate(key[1:], start=2):
            for _ in range(exp):
                term = term * u_jets[i]
        total = total + term
    return total


# -- rendering --------------------------------------------------------------


def _sort_key(key: Key):
    degree = sum(key[1:])
    factors = []
    for i, e in enumerate(key[1:], start=2):
        factors.extend([i] * e)
    factors.sort(reverse=True)
    return (degree, tuple(-x for x in factors), -key[0])


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_string(e: DiffExpr) -> str:
    """Canonical rendering, e.g. ``u4/u1 - 6*u3*u2/u1^2 + 6*u2^3/u1^3``.

    Terms are ordered by (total degree in u_2.., then index-lexicographic);
    this ordering is what the golden CLI tests pin down.
    """
    if not e.terms:
        return "0"
    pieces = []
    for key in sorted(e.terms, key=_sort_key):
        coeff = e.terms[key]
        num_factors = []
        for i in range(len(key) - 1, 0, -1):
            if key[i]:
                name = f"u{i + 1}"
                num_factors.append(name if key[i] == 1 else f"{name}^{key[i]}")
        d = key[0]
        if d > 0:
            num_factors.append("u1" if d == 2 else (f"u1^{d // 2}" if d % 2 == 0 else f"u1^({d}/2)"))
        body = "*".join(num_factors) if num_factors else "1"
        if abs(coeff) != 1:
            body = f"{_coeff_str(abs(coeff))}*{body}" if num_factors else _coeff_str(abs(coeff))
        if d < 0:
            body += "/u1" if d == -2 else (f"/u1^{-d // 2}" if d % 2 == 0 else f"/u1^({-d}/2)")
        pieces.append(("- " if coeff < 0 else "+ ") + body)
    text = " ".join(pieces)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]
