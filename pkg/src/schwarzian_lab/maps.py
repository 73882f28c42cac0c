"""Möbius maps, hyperbolic domains with Poincaré densities, and a catalog
of named analytic functions evaluable to jets.

Densities use the curvature -4 normalization lambda_D(z) = (1-|z|^2)^{-1} on
the unit disc, which is the convention under which the sharp Schwarzian-norm
constant for schlicht functions is 6.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .jets import Jet, JetError, jet_compose, jet_from_coeffs, jet_reciprocal, jet_shift, jet_variable


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class Moebius:
    """Fractional-linear map normalized to determinant 1 (up to overall sign)."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if det == 0:
            raise ValueError("singular coefficient matrix")
        s = cmath.sqrt(det)
        for name, v in (("a", self.a / s), ("b", self.b / s), ("c", self.c / s), ("d", self.d / s)):
            object.__setattr__(self, name, v)

    def __call__(self, z):
        return (self.a * z + self.b) / (self.c * z + self.d)

    def deriv(self, z):
        return 1.0 / (self.c * z + self.d) ** 2

    def compose(self, other: "Moebius") -> "Moebius":
        """self after other: (self∘other)(z) = self(other(z))."""
        return Moebius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Moebius":
        return Moebius(self.d, -self.b, -self.c, self.a)

    def jet(self, z0: complex, order: int) -> Jet:
        den = self.c * z0 + self.d
        if abs(den) < 1e-14:
            raise JetError("jet at the pole of a Moebius map")
        z = jet_variable(complex(z0), order)
        return (self.a * z + self.b) * jet_reciprocal(self.c * z + self.d)

    def matches(self, other: "Moebius", tol: float = 1e-9) -> bool:
        """Equality in PSL(2,C): coefficient quadruples agree up to sign."""
        v1 = np.array([self.a, self.b, self.c, self.d])
        v2 = np.array([other.a, other.b, other.c, other.d])
        return min(np.abs(v1 - v2).max(), np.abs(v1 + v2).max()) < tol

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls) -> "Moebius":
        return cls(1, 0, 0, 1)

    @classmethod
    def rotation(cls, theta: float) -> "Moebius":
        return cls(cmath.exp(0.5j * theta), 0, 0, cmath.exp(-0.5j * theta))

    @classmethod
    def cayley(cls) -> "Moebius":
        """Unit disc onto the upper half-plane, z -> i(1+z)/(1-z)."""
        return cls(1j, 1j, -1, 1)

    @classmethod
    def disc_automorphism(cls, alpha: complex, theta: float = 0.0) -> "Moebius":
        """e^{i theta} (z - alpha)/(1 - conj(alpha) z); requires |alpha| < 1."""
        if abs(alpha) >= 1:
            raise ValueError("automorphism parameter must lie in the open disc")
        rot = cls.rotation(theta)
        return rot.compose(cls(1, -alpha, -alpha.conjugate(), 1))

    @classmethod
    def hyperbolic(cls, theta1: float, theta2: float, multiplier: float) -> "Moebius":
        """Disc-preserving hyperbolic map with axis endpoints e^{i theta_j}
        and the given real multiplier > 0 (translation length 2*log sqrt(m))."""
        if multiplier <= 0 or multiplier == 1:
            raise ValueError("multiplier must be positive and != 1")
        p, q = cmath.exp(1j * theta1), cmath.exp(1j * theta2)
        if abs(p - q) < 1e-12:
            raise ValueError("axis endpoints coincide")
        t = cls(1, -p, 1, -q)  # sends p -> 0, q -> inf
        s = math.sqrt(multiplier)
        dil = cls(s, 0, 0, 1 / s)
        return t.inverse().compose(dil).compose(t)


def moebius_jet(g: Moebius, z0: complex, order: int) -> Jet:
    return g.jet(z0, order)


# -- hyperbolic domains ------------------------------------------------------


@dataclass(frozen=True)
class HyperbolicDomain:
    tag: str

    def contains(self, z) -> bool:
        if self.tag == "disc":
            return abs(z) < 1
        if self.tag == "exterior_disc":
            return abs(z) > 1
        if self.tag == "upper_half":
            return z.imag > 0
        if self.tag == "lower_half":
            return z.imag < 0
        raise DomainError(self.tag)

    def density(self, z):
        """Poincaré density lambda_D, curvature -4 normalization.

        Accepts scalars or numpy arrays; strictly positive inside the domain.
        """
        if self.tag == "disc":
            return 1.0 / (1.0 - np.abs(z) ** 2)
        if self.tag == "exterior_disc":
            return 1.0 / (np.abs(z) ** 2 - 1.0)
        if self.tag == "upper_half":
            return 1.0 / (2.0 * np.imag(z))
        if self.tag == "lower_half":
            return 1.0 / (-2.0 * np.imag(z))
        raise DomainError(self.tag)

    def reflect(self, z):
        """Anticonformal reflection across the boundary; an involution."""
        if self.tag in ("disc", "exterior_disc"):
            return 1.0 / np.conj(z)
        return np.conj(z)

    def boundary_distance(self, z):
        if self.tag == "disc":
            return 1.0 - np.abs(z)
        if self.tag == "exterior_disc":
            return np.abs(z) - 1.0
        return np.abs(np.imag(z))


DISC = HyperbolicDomain("disc")
EXTERIOR_DISC = HyperbolicDomain("exterior_disc")
UPPER_HALF = HyperbolicDomain("upper_half")
LOWER_HALF = HyperbolicDomain("lower_half")

DOMAINS = {d.tag: d for d in (DISC, EXTERIOR_DISC, UPPER_HALF, LOWER_HALF)}


def poincare_density(dom: HyperbolicDomain, z) -> float:
    if np.ndim(z) == 0 and not dom.contains(complex(z)):
        raise DomainError(f"{z} is not inside {dom.tag}")
    return dom.density(z)


def reflect(dom: HyperbolicDomain, z):
    return dom.reflect(z)


# -- analytic function catalog ------------------------------------------------


def _c2pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _pair2c(p) -> complex:
    return complex(p[0], p[1])


class AnalyticFn:
    """A holomorphic function given by a JSON-serializable descriptor.

    Kinds: ``koebe``, ``identity``, ``cayley``, ``rotation`` (theta),
    ``taylor`` (center + coefficients, i.e. a polynomial), ``moebius``
    (coefficient matrix), ``rational`` (numerator/denominator coefficient
    lists around 0), ``compose`` (chain of descriptors, outermost first),
    and ``pullback_diff`` (z^k minus its weight-q pull-back under a Moebius
    map, z^k - g(z)^k g'(z)^q). Descriptors round-trip through JSON
    bit-exactly.
    """

    def __init__(self, descriptor: dict):
        self._d = dict(descriptor)
        kind = self._d.get("kind")
        if kind not in ("koebe", "identity", "cayley", "rotation", "taylor", "moebius", "rational", "compose", "pullback_diff"):
            raise ValueError(f"unknown function kind {kind!r}")
        if kind == "compose":
            self._fns = [AnalyticFn(d) for d in self._d["fns"]]

    def descriptor(self) -> dict:
        return json.loads(self.to_json())

    def to_json(self) -> str:
        return json.dumps(self._d, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "AnalyticFn":
        return cls(json.loads(text))

    def _moebius(self) -> Moebius:
        k = self._d["kind"]
        if k == "identity":
            return Moebius.identity()
        if k == "cayley":
            return Moebius.cayley()
        if k == "rotation":
            return Moebius.rotation(self._d["theta"])
        if k == "moebius":
            return self._moebius_field("mat")
        raise ValueError(k)

    def _moebius_field(self, field: str) -> Moebius:
        m = self._d[field]
        return Moebius(_pair2c(m[0]), _pair2c(m[1]), _pair2c(m[2]), _pair2c(m[3]))

    def __call__(self, z):
        k = self._d["kind"]
        if k == "koebe":
            return z / (1.0 - z) ** 2
        if k in ("identity", "cayley", "rotation", "moebius"):
            return self._moebius()(z)
        if k == "taylor":
            c0 = _pair2c(self._d["center"])
            coeffs = [_pair2c(p) for p in self._d["coeffs"]]
            w = z - c0
            acc = np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0j
            for c in reversed(coeffs):
                acc = acc * w + c
            return acc
        if k == "rational":
            num = [_pair2c(p) for p in self._d["num"]]
            den = [_pair2c(p) for p in self._d["den"]]
            pn = sum(c * z**j for j, c in enumerate(num))
            pd = sum(c * z**j for j, c in enumerate(den))
            return pn / pd
        if k == "compose":
            v = z
            for fn in reversed(self._fns):
                v = fn(v)
            return v
        if k == "pullback_diff":
            g = self._moebius_field("mat")
            kk, q = self._d["k"], self._d["q"]
            return z**kk - g(z) ** kk * g.deriv(z) ** q
        raise ValueError(k)

    def jet(self, z0: complex, order: int) -> Jet:
        k = self._d["kind"]
        z0 = complex(z0)
        if k == "koebe":
            z = jet_variable(z0, order)
            one_minus = 1.0 - z
            return z * jet_reciprocal(one_minus * one_minus)
        if k in ("identity", "cayley", "rotation", "moebius"):
            return self._moebius().jet(z0, order)
        if k == "taylor":
            c0 = _pair2c(self._d["center"])
            coeffs = [_pair2c(p) for p in self._d["coeffs"]]
            coeffs += [0j] * max(0, order + 1 - len(coeffs))
            base = jet_from_coeffs(coeffs, c0)
            shifted = jet_shift(base, z0 - c0)
            return jet_from_coeffs(shifted.coeffs[: order + 1], z0)
        if k == "rational":
            z = jet_variable(z0, order)
            num = [_pair2c(p) for p in self._d["num"]]
            den = [_pair2c(p) for p in self._d["den"]]
            pn = _poly_jet(num, z)
            pd = _poly_jet(den, z)
            return pn * jet_reciprocal(pd)
        if k == "compose":
            inner_jets = []
            point = z0
            for fn in reversed(self._fns):
                j = fn.jet(point, order)
                inner_jets.append(j)
                point = complex(j.coeffs[0])
            acc = inner_jets[0]
            for j in inner_jets[1:]:
                acc = jet_compose(j, acc)
            return acc
        if k == "pullback_diff":
            g = self._moebius_field("mat")
            kk, q = self._d["k"], self._d["q"]
            z = jet_variable(z0, order)
            gz = g.jet(z0, order)
            # g'(z) = 1/(c z + d)^2 as a jet, exact rational form
            dg = jet_reciprocal(_poly_jet([g.d, g.c], z) ** 2)
            return z**kk - gz**kk * dg**q
        raise ValueError(k)


def _poly_jet(coeffs, z: Jet) -> Jet:
    acc = jet_from_coeffs((coeffs[-1],) + (0j,) * z.order, z.center)
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


def catalog(name: str, **params) -> AnalyticFn:
    """Named analytic functions: koebe | identity | cayley | rotation(theta)
    | taylor(coeffs, center=0)."""
    if name == "koebe":
        return AnalyticFn({"kind": "koebe"})
    if name == "identity":
        return AnalyticFn({"kind": "identity"})
    if name == "cayley":
        return AnalyticFn({"kind": "cayley"})
    if name == "rotation":
        return AnalyticFn({"kind": "rotation", "theta": float(params["theta"])})
    if name == "taylor":
        center = params.get("center", 0)
        return AnalyticFn(
            {
                "kind": "taylor",
                "center": _c2pair(center),
                "coeffs": [_c2pair(c) for c in params["coeffs"]],
            }
        )
    raise ValueError(f"unknown catalog entry {name!r}")


def rotated_koebe(theta: float) -> AnalyticFn:
    """e^{-i theta} k(e^{i theta} z): schlicht, same norm profile as Koebe."""
    return AnalyticFn(
        {
            "kind": "compose",
            "fns": [
                {"kind": "rotation", "theta": -theta},
                {"kind": "koebe"},
                {"kind": "rotation", "theta": theta},
            ],
        }
    )


def schlicht_family() -> list:
    """Named functions that are univalent on the unit disc; the test bed for
    the sharp B_n norm bounds."""
    half_plane = AnalyticFn({"kind": "rational", "num": [[0.0, 0.0], [1.0, 0.0]], "den": [[1.0, 0.0], [-1.0, 0.0]]})
    odd_koebe = AnalyticFn(
        {"kind": "rational", "num": [[0.0, 0.0], [1.0, 0.0]], "den": [[1.0, 0.0], [0.0, 0.0], [-1.0, 0.0]]}
    )
    return [
        ("identity", catalog("identity")),
        ("koebe", catalog("koebe")),
        ("rotated_koebe", rotated_koebe(math.pi / 3)),
        ("half_plane", half_plane),  # z/(1-z)
        ("odd_koebe", odd_koebe),  # z/(1-z^2)
    ]
