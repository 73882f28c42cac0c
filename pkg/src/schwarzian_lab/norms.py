"""Hyperbolic sup-norm (B_n) estimation on structured sample grids.

The B_n norm of a function phi on a hyperbolic domain is
sup |phi(z)| * lambda(z)^(-n).  Sampling can only certify lower bounds for a
sup, so every estimate here is reported as a lower bound; the sharp-bound
checks phrase their claims accordingly (estimate <= bound + fp slack).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .maps import DISC, AnalyticFn, HyperbolicDomain
from .symbolic import DiffExpr, evaluate


def worker_count() -> int:
    """Thread cap from SCHWARZIAN_LAB_THREADS (default 1 = sequential)."""
    try:
        return max(1, int(os.environ.get("SCHWARZIAN_LAB_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SampleGrid:
    """Radial levels r_j = 1 - 2^-j for j = 0..J crossed with M uniform
    angles.  M even keeps the real diameter (where Koebe extremality lives)
    in the grid; the levels are nested as J grows, so refined grids contain
    coarser ones and max-estimates can only increase."""

    J: int = 14
    M: int = 256
    domain: HyperbolicDomain = field(default=DISC)

    def __post_init__(self):
        if self.M < 8 or self.M % 2:
            raise ValueError("angular count must be even and >= 8")
        if self.J < 0:
            raise ValueError("negative radial depth")

    def points(self) -> np.ndarray:
        radii = 1.0 - 0.5 ** np.arange(1, self.J + 1)
        angles = 2.0 * math.pi * np.arange(self.M) / self.M
        rings = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
        pts = np.concatenate([np.array([0.0 + 0.0j]), rings])
        if self.domain.tag == "exterior_disc":
            pts = 1.0 / np.conj(pts[1:])
        return pts


def _eval_chunks(phi, pts: np.ndarray) -> np.ndarray:
    try:
        vals = phi(pts)
        vals = np.asarray(vals, dtype=complex)
        if vals.shape != pts.shape:
            raise ValueError
        return vals
    except Exception:
        pass
    workers = worker_count()
    if workers == 1:
        return np.array([phi(z) for z in pts], dtype=complex)
    chunks = np.array_split(pts, workers * 4)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda ch: [phi(z) for z in ch], chunks))
    return np.array([v for part in parts for v in part], dtype=complex)


def bn_norm_estimate(phi, n: int, grid: SampleGrid | None = None) -> float:
    """Lower-bound estimate of sup |phi| * lambda^(-n) over the grid."""
    report = bn_norm_report(phi, n, grid)
    return report["estimate"]


def bn_norm_report(phi, n: int, grid: SampleGrid | None = None) -> dict:
    grid = grid or SampleGrid()
    pts = grid.points()
    vals = _eval_chunks(phi, pts)
    if not np.all(np.isfinite(vals)):
        raise ValueError("non-finite sample in norm estimation")
    weighted = np.abs(vals) * grid.domain.density(pts) ** (-float(n))
    i = int(np.argmax(weighted))
    return {
        "estimate": float(weighted[i]),
        "argmax": complex(pts[i]),
        "n": n,
        "grid": {"J": grid.J, "M": grid.M, "domain": grid.domain.tag},
        "kind": "lower_bound",
    }


def sigma_phi(fn: AnalyticFn, expr: DiffExpr):
    """Pointwise map z -> sigma[f](z) built from per-point jets of `fn`."""
    top = expr.max_index()

    def phi(z):
        return evaluate(expr, fn.jet(complex(z), top), 0)

    return phi


def a_series_bound(n: int) -> float:
    """Sharp B_{n-1} bound for the A series on schlicht functions."""
    return 6.0 * 4.0 ** (n - 3) * math.factorial(n - 2)


def b_series_bound(n: int) -> float:
    """Sharp B_{n-1} bound for the B series: 2(n-2) * n(n+2)...(3n-6)."""
    return 2.0 * (n - 2) * math.prod(range(n, 3 * n - 5, 2))


def bound_check(series: str, n: int, fn: AnalyticFn, expr: DiffExpr | None = None, grid: SampleGrid | None = None) -> dict:
    """Estimate ||sigma_n[f]||_{B_{n-1}} on the grid and compare to the sharp
    schlicht bound.  margin = bound - estimate; sampling gives lower bounds,
    so margin >= -1e-9 * max(1, bound) (fp slack, relative because the
    extremal values grow like 4^n n!) is the pass condition."""
    from .symbolic import sigma_a, sigma_b

    if expr is None:
        expr = sigma_a(n) if series == "A" else sigma_b(n)
    bound = a_series_bound(n) if series == "A" else b_series_bound(n)
    est = bn_norm_estimate(sigma_phi(fn, expr), n - 1, grid)
    return {"series": series, "n": n, "estimate": est, "bound": bound, "margin": bound - est}


def norm_limit_check(phi, n_range, grid: SampleGrid | None = None, f0=None) -> dict:
    """B_n norm estimates along n_range, compared against |phi(0)|.

    For bounded phi the norms converge to the absolute value at the origin
    (the weight lambda^{-n} concentrates there); the comparison uses
    |phi(0)|, which is what the limiting argument actually controls.
    """
    grid = grid or SampleGrid()
    estimates = [bn_norm_estimate(phi, n, grid) for n in n_range]
    center = abs(phi(0j)) if f0 is None else abs(f0)
    return {
        "ns": list(n_range),
        "estimates": estimates,
        "center_value": float(center),
        "final_gap": abs(estimates[-1] - center),
    }
