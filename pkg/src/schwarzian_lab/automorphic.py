"""Fuchsian-group machinery on the unit disc.

Word-ball enumeration for finitely generated groups of disc automorphisms,
truncated Poincare series with decay-based tail estimates, Weil-Petersson
pairings over fundamental domains, the weighted Bergman kernel and its
projection operator, and the difference functions z^k - g(z)^k g'(z)^q that
group averaging annihilates.

The only groups with a fundamental domain we parameterize exactly are cyclic
hyperbolic ones: conjugating the generator to a pure dilation turns the
quotient into a round half-annulus, which we sample with Gauss-Legendre
nodes and pull back to the disc with the exact Jacobian.  That is accurate
to quadrature order, unlike rejection sampling against isometric circles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .integrals import QuadGrid, disc_quadrature, quad2d, vec_eval, weighted_pairing
from .maps import (
    DISC,
    EXTERIOR_DISC,
    LOWER_HALF,
    UPPER_HALF,
    AnalyticFn,
    HyperbolicDomain,
    Moebius,
    _c2pair,
    poincare_density,
)


class GroupError(Exception):
    pass


def _preserves_disc(g: Moebius, tol: float = 1e-9) -> bool:
    if abs(g(0.2 + 0.1j)) >= 1:
        return False
    for theta in (0.0, 1.0, 2.5, 4.0):
        if abs(abs(g(np.exp(1j * theta))) - 1.0) > tol:
            return False
    return True


def _psl_key(g: Moebius) -> tuple:
    """Hashable key identifying g up to overall matrix scale.

    The matrix is projectivized by its largest-modulus entry before rounding,
    which keeps every key entry O(1).  Rounding the raw entries instead would
    start missing duplicates once long words push entries past ~1e3, where
    accumulated float drift crosses the absolute rounding grid (seen as word
    balls growing beyond the group's true element count)."""
    mat = (g.a, g.b, g.c, g.d)
    big = max(abs(v) for v in mat)
    pivot = next(v for v in mat if abs(v) >= big * (1 - 1e-12))
    mat = tuple(v / pivot for v in mat)
    return tuple((round(v.real, 9), round(v.imag, 9)) for v in mat)


@dataclass(frozen=True)
class GroupBall:
    """All reduced words of length <= radius in a set of generators.

    ``elements[i]`` carries the Moebius value of the i-th word and
    ``word_lengths[i]`` its length; the identity sits at index 0.  Values
    are deduplicated up to matrix sign, so the ball is closed under
    inversion and contains no repeated maps.
    """

    generators: tuple
    radius: int
    elements: tuple
    word_lengths: tuple

    def by_length(self, r: int) -> list:
        return [g for g, l in zip(self.elements, self.word_lengths) if l == r]

    def boundary_sum(self, z: complex, q: int, r: int | None = None) -> float:
        """sum of |g'(z)|^q over words of length r (default: the ball radius)."""
        r = self.radius if r is None else r
        return float(sum(abs(g.deriv(z)) ** q for g in self.by_length(r)))

    def __len__(self) -> int:
        return len(self.elements)


def group_ball(gens, radius: int) -> GroupBall:
    """Breadth-first enumeration of the word ball of the given radius."""
    gens = tuple(gens)
    for g in gens:
        if not _preserves_disc(g):
            raise GroupError("generator does not preserve the unit disc")
    steps = list(gens) + [g.inverse() for g in gens]
    ident = Moebius.identity()
    seen = {_psl_key(ident)}
    elements, lengths = [ident], [0]
    frontier = [ident]
    for r in range(1, radius + 1):
        nxt = []
        for w in frontier:
            for s in steps:
                cand = s.compose(w)
                key = _psl_key(cand)
                if key in seen:
                    continue
                seen.add(key)
                elements.append(cand)
                lengths.append(r)
                nxt.append(cand)
        frontier = nxt
    return GroupBall(gens, radius, tuple(elements), tuple(lengths))


def group_from_descriptor(desc: dict) -> list:
    """Generators from {"kind": "cyclic", "fixpoints": [t1, t2],
    "multiplier": m} or {"kind": "trivial"}."""
    kind = desc.get("kind")
    if kind == "trivial":
        return []
    if kind == "cyclic":
        t1, t2 = desc["fixpoints"]
        return [Moebius.hyperbolic(float(t1), float(t2), float(desc["multiplier"]))]
    raise GroupError(f"unknown group descriptor kind {kind!r}")


# -- Poincare series ----------------------------------------------------------


def sup_on_disc(f, rad: float = 0.999, n_r: int = 25, n_t: int = 64) -> float:
    """Sampled estimate of sup |f| over the closed unit disc."""
    r = np.linspace(0.0, rad, n_r)
    t = np.linspace(0.0, 2 * np.pi, n_t, endpoint=False)
    pts = (r[:, None] * np.exp(1j * t[None, :])).ravel()
    return float(np.max(np.abs(vec_eval(f, pts))))


def theta_values(f, q: int, ball: GroupBall, z):
    """Truncated Poincare series sum_{g in ball} f(g z) g'(z)^q, vectorized."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for g in ball.elements:
        acc = acc + vec_eval(f, g(z)) * g.deriv(z) ** q
    return acc


@dataclass(frozen=True)
class ThetaResult:
    value: complex
    tail_estimate: float
    automorphy_bound: float
    boundary_sum: float
    ratio: float
    radius: int

    def __complex__(self) -> complex:
        return self.value


def poincare_theta(f, q: int, ball: GroupBall, z: complex, f_sup: float | None = None) -> ThetaResult:
    """Truncated Poincare series at z with decay-based error bounds.

    The tail over words longer than the ball radius is estimated
    geometrically: with B_r = sum_{|w|=r} |g'(z)|^q and rho = B_r/B_{r-1},
    the omitted mass is at most sup|f| * B_r * rho/(1-rho).  The reported
    automorphy bound sup|f| * B_r * (1+rho) dominates the defect
    |Theta(g0 z) g0'(z)^q - Theta(z)| of the truncated sum, because the
    symmetric difference between the ball and its g0-translate consists of
    words of length r and r+1 only.
    """
    if q < 2:
        raise ValueError("weight must be >= 2")
    z = complex(z)
    if not DISC.contains(z):
        raise ValueError("evaluation point must lie in the unit disc")
    value = complex(theta_values(f, q, ball, z))
    if ball.radius == 0 or len(ball) == 1:
        return ThetaResult(value, 0.0, 0.0, 0.0, 0.0, ball.radius)
    if f_sup is None:
        f_sup = sup_on_disc(f)
    b_r = ball.boundary_sum(z, q)
    b_prev = ball.boundary_sum(z, q, ball.radius - 1)
    ratio = b_r / b_prev if b_prev > 0 else 0.0
    tail = f_sup * b_r * ratio / (1.0 - ratio) if ratio < 1.0 else math.inf
    auto = f_sup * b_r * (1.0 + ratio) if ratio < 1.0 else math.inf
    return ThetaResult(value, tail, auto, b_r, ratio, ball.radius)


def automorphy_residual(f, q: int, ball: GroupBall, z: complex, g0: Moebius | None = None) -> float:
    """|Theta(g0 z) g0'(z)^q - Theta(z)| for the truncated series."""
    g0 = g0 or ball.generators[0]
    z = complex(z)
    lhs = complex(theta_values(f, q, ball, g0(z))) * g0.deriv(z) ** q
    rhs = complex(theta_values(f, q, ball, z))
    return abs(lhs - rhs)


def metzger_element(k: int, g: Moebius, q: int) -> AnalyticFn:
    """The function p(z) = z^k - g(z)^k g'(z)^q.

    Averaging p over the full group <g> gives zero: the series telescopes,
    since the subtracted term is exactly the weight-q pull-back of z^k by g.
    Truncated averages therefore shrink to the two boundary words, which is
    the decay the tests measure.
    """
    if k < 0 or q < 2:
        raise ValueError("need k >= 0 and weight q >= 2")
    mat = [_c2pair(g.a), _c2pair(g.b), _c2pair(g.c), _c2pair(g.d)]
    return AnalyticFn({"kind": "pullback_diff", "k": k, "q": q, "mat": mat})


# -- pairings over fundamental domains ----------------------------------------


@dataclass(frozen=True)
class PairingSpec:
    """Weight and domain of a Weil-Petersson pairing <f,g> =
    integral of f conj(g) lambda^(2-2s) over a fundamental domain."""

    s: int
    domain: HyperbolicDomain = DISC

    def __post_init__(self):
        if int(self.s) != self.s or self.s < 2:
            raise ValueError("pairing weight must be an integer >= 2")

    @property
    def c_s(self) -> float:
        return (2 * self.s - 1) / (self.s - 1)


def wp_pairing(f, g, spec: PairingSpec, grid: QuadGrid) -> complex:
    if grid.domain is not spec.domain:
        raise ValueError("grid and pairing spec disagree on the domain")
    return weighted_pairing(f, g, spec.s, grid)


def dilation_conjugator(theta1: float, theta2: float) -> Moebius:
    """Moebius map sending the disc onto the upper half-plane with the
    boundary points e^{i theta1}, e^{i theta2} going to 0 and infinity.

    Conjugating a hyperbolic generator with these axis endpoints by the
    returned map yields a pure dilation zeta -> m zeta.
    """
    p, q = np.exp(1j * theta1), np.exp(1j * theta2)
    if abs(p - q) < 1e-12:
        raise GroupError("axis endpoints coincide")
    t = Moebius(1, -p, 1, -q)
    # t already maps the circle to a line through 0; rotate that line onto
    # the real axis using the image of a third boundary point.
    w = max((np.exp(1j * s) for s in np.linspace(0.1, 6.2, 7)), key=lambda u: min(abs(u - p), abs(u - q)))
    u = t(w)
    u /= abs(u)
    out = Moebius(1 / u, 0, 0, 1).compose(t)
    if complex(out(0)).imag < 0:
        out = Moebius(-1, 0, 0, 1).compose(out)
    return out


def fundamental_annulus_grid(
    theta1: float,
    theta2: float,
    multiplier: float,
    n_rad: int = 48,
    n_ang: int = 96,
    r0: float = 1.0,
) -> QuadGrid:
    """Quadrature over a fundamental domain of the cyclic group generated by
    the hyperbolic map with the given axis and multiplier.

    In the conjugated picture the group is the dilation zeta -> m zeta on the
    upper half-plane and {r0 <= |zeta| < m r0, 0 < arg zeta < pi} is a
    fundamental domain for any r0 > 0.  Nodes are Gauss-Legendre in
    (log|zeta|, arg zeta), pulled back to the disc with the area Jacobian
    |(T^{-1})'|^2, so the grid's nodes live in the disc and its weights
    integrate d^2z there.
    """
    gen = Moebius.hyperbolic(theta1, theta2, multiplier)
    t = dilation_conjugator(theta1, theta2)
    dil = t.compose(gen).compose(t.inverse())
    m = complex(dil(1j) / 1j).real
    if abs(complex(dil(2j) / 2j) - m) > 1e-8 or m <= 0:
        raise GroupError("conjugated generator is not a dilation")
    if m < 1:
        m = 1 / m
    xs, wx = np.polynomial.legendre.leggauss(n_rad)
    ps, wp = np.polynomial.legendre.leggauss(n_ang)
    length = math.log(m)
    x = 0.5 * length * (xs + 1.0) + math.log(r0)
    wx = 0.5 * length * wx
    phi = 0.5 * math.pi * (ps + 1.0)
    wp = 0.5 * math.pi * wp
    zeta = np.exp(x[:, None] + 1j * phi[None, :]).ravel()
    w2d = (np.exp(2 * x)[:, None] * wx[:, None] * wp[None, :]).ravel()
    tinv = t.inverse()
    nodes = tinv(zeta)
    weights = w2d * np.abs(tinv.deriv(zeta)) ** 2
    meta = {
        "kind": "cyclic_fundamental_domain",
        "fixpoints": [theta1, theta2],
        "multiplier": multiplier,
        "n_rad": n_rad,
        "n_ang": n_ang,
        "r0": r0,
    }
    return QuadGrid(DISC, nodes, weights.astype(float), meta)


def lemma_scalar_check(f, h, spec: PairingSpec, ball: GroupBall, fd_grid: QuadGrid, disc_grid: QuadGrid | None = None) -> dict:
    """Compare <f, Theta[h]> over a fundamental domain against <f, h> over
    the whole disc, for automorphic f.  Unfolding makes the two equal."""
    disc_grid = disc_grid or disc_quadrature()
    theta_h = lambda z: theta_values(h, spec.s, ball, z)
    lhs = wp_pairing(f, theta_h, spec, fd_grid)
    rhs = wp_pairing(f, h, spec, disc_grid)
    scale = max(abs(lhs), abs(rhs), 1e-300)
    return {"lhs": lhs, "rhs": rhs, "relerr": abs(lhs - rhs) / scale}


def theta_l1_check(h, s: int, ball: GroupBall, fd_grid: QuadGrid, disc_grid: QuadGrid | None = None) -> dict:
    """Truncated check of ||Theta[h]||_{L^1_s(F)} <= ||h||_{L^1_s(D)}."""
    disc_grid = disc_grid or disc_quadrature()
    lam_f = poincare_density(fd_grid.domain, fd_grid.nodes)
    lam_d = poincare_density(disc_grid.domain, disc_grid.nodes)
    lhs = float(np.sum(np.abs(theta_values(h, s, ball, fd_grid.nodes)) * lam_f ** (2 - s) * fd_grid.weights))
    rhs = float(np.sum(np.abs(vec_eval(h, disc_grid.nodes)) * lam_d ** (2 - s) * disc_grid.weights))
    return {"lhs": lhs, "rhs": rhs, "ok": lhs <= rhs * (1 + 1e-9)}


# -- Bergman kernels and projection -------------------------------------------


def bergman_kernel(domain: HyperbolicDomain = DISC):
    """Classical Bergman kernel k(z, w) of the domain, vectorized in both
    arguments.  On the disc k(z,w) = 1/(pi (1 - z conj(w))^2); the other
    domains carry the pull-back of this along a biholomorphism."""
    if domain is DISC:
        return lambda z, w: 1.0 / (np.pi * (1.0 - np.asarray(z) * np.conj(w)) ** 2)
    if domain in (UPPER_HALF, LOWER_HALF):
        return lambda z, w: -1.0 / (np.pi * (np.asarray(z) - np.conj(w)) ** 2)
    if domain is EXTERIOR_DISC:
        return lambda z, w: 1.0 / (np.pi * (np.asarray(z) * np.conj(w) - 1.0) ** 2)
    raise ValueError(f"no Bergman kernel for domain {domain!r}")


def s_bergman_kernel(domain: HyperbolicDomain, s: int):
    """Weighted kernel K_s = (2s-1) pi^(s-1) k^s."""
    if s < 2:
        raise ValueError("weight must be >= 2")
    k = bergman_kernel(domain)
    pref = (2 * s - 1) * math.pi ** (s - 1)
    return lambda z, w: pref * k(z, w) ** s


def bergman_project(f, s: int, z, grid: QuadGrid | None = None):
    """Weighted Bergman projection (beta f)(z) = integral of
    lambda^(2-2s)(w) K_s(z,w) f(w) over the domain.

    Fixes holomorphic f of the right growth; z may be a scalar or an array
    (the kernel matrix is built in one shot).
    """
    grid = grid or disc_quadrature()
    kernel = s_bergman_kernel(grid.domain, s)
    lam = poincare_density(grid.domain, grid.nodes)
    fw = vec_eval(f, grid.nodes) * lam ** (2.0 - 2.0 * s) * grid.weights
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    vals = kernel(zs[:, None], grid.nodes[None, :]) @ fw
    return complex(vals[0]) if np.ndim(z) == 0 else vals


def projection_symmetry_check(f, g, s: int, grid: QuadGrid | None = None) -> dict:
    """<beta f, g> vs <f, beta g> on a shared grid."""
    grid = grid or disc_quadrature(R=24, M=48)
    bf = bergman_project(f, s, grid.nodes, grid)
    bg = bergman_project(g, s, grid.nodes, grid)
    lam = poincare_density(grid.domain, grid.nodes)
    wgt = lam ** (2.0 - 2.0 * s) * grid.weights
    lhs = complex(np.sum(bf * np.conj(vec_eval(g, grid.nodes)) * wgt))
    rhs = complex(np.sum(vec_eval(f, grid.nodes) * np.conj(bg) * wgt))
    scale = max(abs(lhs), abs(rhs), 1e-300)
    return {"lhs": lhs, "rhs": rhs, "relerr": abs(lhs - rhs) / scale}
