"""Randomized verification suites for the operator identities.

Each suite draws (function, Moebius map, point) triples from a seeded RNG,
evaluates both sides of one identity through the jet engine, and reports the
worst relative error.  The suites are deterministic for a fixed seed, so CLI
reports are byte-stable.  They are shared between the command-line front end
and the test bench.
"""

from __future__ import annotations

import random

from .jets import jet_compose, jet_derive, jet_pow, jet_reverse
from .maps import AnalyticFn, Moebius
from .symbolic import classical, evaluate, evaluate_jet, sigma_a, sigma_b


def sigma_expr(series: str, n: int):
    series = series.upper()
    if series == "A":
        return sigma_a(n)
    if series == "B":
        return sigma_b(n)
    raise ValueError(f"unknown series {series!r}")


def series_bound_constant(series: str, n: int) -> int:
    """The u_n/u_1 coefficient of the series: 1 for A, n-2 for B."""
    return 1 if series.upper() == "A" else n - 2


def random_function(rng: random.Random, deg: int = 6, scale: float = 0.15) -> AnalyticFn:
    """Polynomial with f(0) = 0, f'(0) = 1 and small higher coefficients,
    so jets stay locally injective near the origin."""
    coeffs = [[0.0, 0.0], [1.0, 0.0]]
    for k in range(2, deg + 1):
        r = scale / k
        coeffs.append([rng.uniform(-r, r), rng.uniform(-r, r)])
    return AnalyticFn({"kind": "taylor", "center": [0.0, 0.0], "coeffs": coeffs})


def random_moebius(rng: random.Random) -> Moebius:
    while True:
        a, b, c, d = (complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(4))
        if abs(a * d - b * c) > 0.3:
            return Moebius(a, b, c, d)


def random_point(rng: random.Random, radius: float = 0.35) -> complex:
    return complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))


def _relerr(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def _report(operation: str, inputs: dict, worst: float, tol: float) -> dict:
    return {
        "operation": operation,
        "inputs": inputs,
        "max_relerr": worst,
        "tolerance": tol,
        "ok": worst < tol,
    }


def covariance_suite(series: str, n_values=(3, 4, 5, 6), trials: int = 200, seed: int = 0, tol: float = 1e-9) -> dict:
    """Precomposition law sigma_n[f o g] = (sigma_n[f] o g) * (g')^(n-1)
    for Moebius g, checked pointwise through jets."""
    rng = random.Random(seed)
    n_values = tuple(n_values)
    worst = 0.0
    for _ in range(trials):
        n = rng.choice(n_values)
        expr = sigma_expr(series, n)
        f = random_function(rng)
        while True:
            g = random_moebius(rng)
            z = random_point(rng)
            gz = g(z)
            if abs(g.deriv(z)) > 1e-2 and abs(gz) < 20 and abs(complex(f.jet(gz, 1).coeffs[1])) > 1e-3:
                break
        order = n + 2
        comp = jet_compose(f.jet(gz, order), g.jet(z, order))
        lhs = evaluate(expr, comp)
        rhs = evaluate(expr, f.jet(gz, order)) * g.deriv(z) ** (n - 1)
        worst = max(worst, _relerr(lhs, rhs))
    return _report("covariance", {"series": series.upper(), "n": list(n_values), "trials": trials, "seed": seed}, worst, tol)


def altrec_suite(n_values=(3, 4, 5, 6), trials: int = 100, seed: int = 0, tol: float = 1e-8) -> dict:
    """A-series recursion in divided form:
    sigma_{n+1}[f]/(f')^(n-1) = (sigma_n[f]/(f')^(n-1))'."""
    rng = random.Random(seed)
    n_values = tuple(n_values)
    worst = 0.0
    for _ in range(trials):
        n = rng.choice(n_values)
        f = random_function(rng)
        z = random_point(rng)
        order = n + 4
        fj = f.jet(z, order)
        fp = jet_derive(fj, 1)
        quotient = evaluate_jet(sigma_a(n), fj) * jet_pow(fp, -(n - 1))
        rhs = jet_derive(quotient, 1).coeffs[0]
        lhs = evaluate(sigma_a(n + 1), fj) / complex(fp.coeffs[0]) ** (n - 1)
        worst = max(worst, _relerr(lhs, rhs))
    return _report("altrec", {"n": list(n_values), "trials": trials, "seed": seed}, worst, tol)


def schwinv_suite(n_values=(4, 5, 6), trials: int = 100, seed: int = 0, tol: float = 1e-8) -> dict:
    """sigma^A_n[f] = -(d^(n-3) S_{f^-1}) o f * (f')^(n-1), via jet reversion
    at the origin.

    The minus sign is forced by the chain rule: S_{f^-1} o f * (f')^2 = -S_f
    (differentiate f^-1 o f = id), and the divided recursion propagates that
    sign unchanged to every order.  Printed statements of this identity
    sometimes drop it; the engine agrees with the signed form to machine
    precision and disagrees with the unsigned one by exactly a factor -1.
    """
    rng = random.Random(seed)
    n_values = tuple(n_values)
    worst = 0.0
    for _ in range(trials):
        n = rng.choice(n_values)
        f = random_function(rng)
        order = n + 6
        fj = f.jet(0.0, order)
        finv = jet_reverse(fj)
        s_inv = evaluate_jet(classical("schwarzian"), finv)
        lhs_jet = jet_compose(jet_derive(s_inv, n - 3), fj) * jet_pow(jet_derive(fj, 1), n - 1) * (-1)
        rhs_jet = evaluate_jet(sigma_a(n), fj)
        m = min(lhs_jet.order, rhs_jet.order)
        diff = max(abs(complex(a - b)) for a, b in zip(lhs_jet.coeffs[: m + 1], rhs_jet.coeffs[: m + 1]))
        scale = max(1.0, max(abs(complex(c)) for c in rhs_jet.coeffs[: m + 1]))
        worst = max(worst, diff / scale)
    return _report("schwinv", {"n": list(n_values), "trials": trials, "seed": seed}, worst, tol)


def affine_suite(n_values=(3, 4, 5, 6), trials: int = 100, seed: int = 0, tol: float = 1e-8) -> dict:
    """sigma^A_n[a f + b] = sigma^A_n[f] for affine postcomposition."""
    rng = random.Random(seed)
    n_values = tuple(n_values)
    worst = 0.0
    for _ in range(trials):
        n = rng.choice(n_values)
        f = random_function(rng)
        z = random_point(rng)
        a = complex(rng.uniform(0.5, 2.0), rng.uniform(-1, 1))
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        fj = f.jet(z, n + 2)
        lhs = evaluate(sigma_a(n), fj * a + b)
        rhs = evaluate(sigma_a(n), fj)
        worst = max(worst, _relerr(lhs, rhs))
    return _report("affine", {"n": list(n_values), "trials": trials, "seed": seed}, worst, tol)


def bol_suite(n_values=(4, 6), trials: int = 100, seed: int = 0, tol: float = 1e-8) -> dict:
    """Derivative identity behind the B-series covariance: if
    f2 = (f1 o g) * (g')^(1-n/2) with Moebius g, then
    f2^(n-1) = (f1^(n-1) o g) * (g')^(n/2).

    Even weights keep the half-integer powers single-valued, so instances
    are drawn from even n.
    """
    rng = random.Random(seed)
    n_values = tuple(n_values)
    if any(n % 2 for n in n_values):
        raise ValueError("Bol instances are checked at even n")
    worst = 0.0
    for _ in range(trials):
        n = rng.choice(n_values)
        f1 = random_function(rng)
        while True:
            g = random_moebius(rng)
            z = random_point(rng)
            if abs(g.deriv(z)) > 1e-2 and abs(g(z)) < 20:
                break
        order = n + 2
        gj = g.jet(z, order)
        comp = jet_compose(f1.jet(g(z), order), gj)
        f2 = comp * jet_pow(jet_derive(gj, 1), 1 - n // 2)
        lhs = jet_derive(f2, n - 1).coeffs[0]
        f1_deriv = jet_derive(f1.jet(g(z), order), n - 1).coeffs[0]
        rhs = f1_deriv * g.deriv(z) ** (n // 2)
        worst = max(worst, _relerr(complex(lhs), complex(rhs)))
    return _report("bol", {"n": list(n_values), "trials": trials, "seed": seed}, worst, tol)


def weight_suite(trials: int = 100, seed: int = 0, n_max: int = 8) -> dict:
    """Weight homogeneity: every monomial of sigma_n has total weight n-1
    (u_k counts k-1), for randomly drawn series and order."""
    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        series = rng.choice(("A", "B"))
        n = rng.randint(3, n_max)
        expr = sigma_expr(series, n)
        if expr.weights() != {n - 1}:
            bad.append((series, n))
    return {
        "operation": "weight_homogeneity",
        "inputs": {"trials": trials, "seed": seed, "n_max": n_max},
        "failures": bad,
        "ok": not bad,
    }


VERIFY_SUITES = {
    "covariance": covariance_suite,
    "altrec": altrec_suite,
    "schwinv": schwinv_suite,
    "affine": affine_suite,
    "bol": bol_suite,
    "weights": weight_suite,
}
