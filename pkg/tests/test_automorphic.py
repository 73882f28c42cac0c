"""Poincare series over cyclic Fuchsian groups, Weil-Petersson pairings over
fundamental domains, and the weighted Bergman projection.

The lemma-scalar and symmetry checks deliberately use parity-breaking test
functions: on a symmetric axis with parity-pure functions both sides of
these identities vanish and the comparison degenerates to noise over noise.
"""

import math

import numpy as np
import pytest

from schwarzian_lab import (
    DISC,
    UPPER_HALF,
    Moebius,
    PairingSpec,
    automorphy_residual,
    bergman_kernel,
    bergman_project,
    catalog,
    disc_quadrature,
    fundamental_annulus_grid,
    group_ball,
    group_from_descriptor,
    lemma_scalar_check,
    metzger_element,
    poincare_theta,
    s_bergman_kernel,
    theta_l1_check,
    wp_pairing,
)
from schwarzian_lab.automorphic import GroupError, sup_on_disc, theta_values, dilation_conjugator

CYCLIC = {"kind": "cyclic", "fixpoints": [0.5, 2.8], "multiplier": 4.0}


def _cyclic_gens():
    return group_from_descriptor(CYCLIC)


def test_group_ball_cyclic_sizes():
    gens = _cyclic_gens()
    ball = group_ball(gens, 3)
    assert len(ball) == 7  # g^-3 .. g^3
    assert ball.by_length(0)[0].matches(Moebius.identity())
    assert sorted(ball.word_lengths)[:3] == [0, 1, 1]


def test_group_ball_two_generators():
    gens = [Moebius.hyperbolic(0.0, math.pi, 4.0), Moebius.hyperbolic(math.pi / 2, 3 * math.pi / 2, 4.0)]
    sizes = [len(group_ball(gens, r)) for r in (1, 2, 3)]
    assert sizes == [5, 17, 53]  # free-group growth, no collisions


def test_group_ball_rejects_non_disc_maps():
    with pytest.raises(GroupError):
        group_ball([Moebius(2, 1, 1, 1)], 2)


def test_group_descriptor_validation():
    assert group_from_descriptor({"kind": "trivial"}) == []
    with pytest.raises((GroupError, ValueError)):
        group_from_descriptor({"kind": "cyclic", "fixpoints": [0.5, 0.5], "multiplier": 4.0})
    with pytest.raises((GroupError, ValueError)):
        group_from_descriptor({"kind": "nonsense"})


def test_theta_trivial_group_is_identity_operator():
    f = catalog("taylor", coeffs=[0, 0.5, 1])
    ball = group_ball([], 4)
    z = 0.3 + 0.2j
    rep = poincare_theta(f, 2, ball, z)
    assert complex(rep) == f(z)


def test_theta_automorphy_within_reported_bound():
    f = catalog("taylor", coeffs=[0, 0.5, 1])
    ball = group_ball(_cyclic_gens(), 8)
    z = 0.3 + 0.2j
    rep = poincare_theta(f, 2, ball, z)
    res = automorphy_residual(f, 2, ball, z)
    # truncating the orbit sum breaks exact automorphy by the boundary words;
    # the reported bound dominates the symmetric difference of the two sums
    assert res <= rep.automorphy_bound
    assert rep.automorphy_bound < 1e-6
    assert rep.tail_estimate < rep.automorphy_bound


def test_theta_reindexing_residual_shrinks_with_radius():
    f = catalog("taylor", coeffs=[0, 0.5, 1])
    gens = _cyclic_gens()
    z = 0.3 + 0.2j
    res = [automorphy_residual(f, 2, group_ball(gens, r), z) for r in (4, 8, 12)]
    assert res[0] > res[1] > res[2]


def test_metzger_element_theta_decays():
    g = Moebius.hyperbolic(0.5, 2.8, 2.0)  # small multiplier keeps the tail
    # above the float cancellation floor at radius 16
    p = metzger_element(3, g, 2)
    vals = [abs(complex(poincare_theta(p, 2, group_ball([g], r), 0.25 + 0.15j))) for r in (4, 8, 16)]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 1e-6


def test_wp_pairing_constant():
    val = wp_pairing(lambda z: np.ones_like(z), lambda z: np.ones_like(z), PairingSpec(2), disc_quadrature())
    assert abs(val - math.pi / 3) < 1e-12


def test_pairing_spec_c_s():
    assert PairingSpec(2).c_s == 3.0
    spec = PairingSpec(2, UPPER_HALF)
    grid = disc_quadrature(R=8, M=8)
    with pytest.raises(ValueError):
        wp_pairing(lambda z: z, lambda z: z, spec, grid)


def test_dilation_conjugator_straightens_generator():
    t = dilation_conjugator(0.5, 2.8)
    g = Moebius.hyperbolic(0.5, 2.8, 4.0)
    conj = t.compose(g).compose(t.inverse())
    # t g t^-1 fixes 0 and infinity: a pure dilation of the half-plane
    assert abs(conj.b / conj.a) < 1e-9 and abs(conj.c / conj.d) < 1e-9
    ratio = (conj.a / conj.d).real
    assert abs(ratio - 4.0) < 1e-9 or abs(ratio - 0.25) < 1e-9
    assert t(complex(np.exp(0.5j))).imag < 1e-9  # axis endpoint lands on the real line


def test_fundamental_domain_base_radius_invariance():
    spec = PairingSpec(2)
    ball = group_ball(_cyclic_gens(), 12)
    f = catalog("taylor", coeffs=[0, 1, 0.5])
    h = catalog("taylor", coeffs=[0, 0, 1, 0.2])
    tf = lambda z: theta_values(f, 2, ball, z)
    th = lambda z: theta_values(h, 2, ball, z)
    g1 = fundamental_annulus_grid(0.5, 2.8, 4.0)
    g2 = fundamental_annulus_grid(0.5, 2.8, 4.0, r0=2.0)  # shifted by sqrt(multiplier)
    v1 = wp_pairing(tf, th, spec, g1)
    v2 = wp_pairing(tf, th, spec, g2)
    assert abs(v1 - v2) / abs(v1) < 1e-5


def test_lemma_scalar_pairing():
    # <f, Theta h>_G over the fundamental domain == <f, h> over the disc,
    # for automorphic f (here a truncated series itself)
    spec = PairingSpec(2)
    ball = group_ball(_cyclic_gens(), 12)
    fd = fundamental_annulus_grid(0.5, 2.8, 4.0)
    F = catalog("taylor", coeffs=[0, 0, 0.5, 0.2])
    f_auto = lambda z: theta_values(F, 2, ball, z)
    h = catalog("taylor", coeffs=[0, 1, 1])
    rep = lemma_scalar_check(f_auto, h, spec, ball, fd)
    assert abs(rep["lhs"]) > 1e-4  # nondegenerate configuration
    assert rep["relerr"] < 1e-2


def test_theta_l1_contraction():
    ball = group_ball(_cyclic_gens(), 10)
    fd = fundamental_annulus_grid(0.5, 2.8, 4.0)
    rep = theta_l1_check(catalog("taylor", coeffs=[0, 1, 1]), 2, ball, fd)
    assert rep["ok"] and rep["lhs"] <= rep["rhs"]


def test_sup_on_disc():
    assert abs(sup_on_disc(lambda z: np.abs(z) ** 2) - 1.0) < 5e-3


# -- weighted Bergman projection ----------------------------------------------


def test_bergman_kernel_values():
    k = bergman_kernel(DISC)
    assert abs(k(0.0, 0.0) - 1 / math.pi) < 1e-15
    ks = s_bergman_kernel(DISC, 2)
    assert abs(ks(0.3 + 0.1j, 0.0) - 3 / math.pi) < 1e-14


def test_bergman_kernel_pullback_covariance():
    c = Moebius.cayley()
    k_d = bergman_kernel(DISC)
    k_h = bergman_kernel(UPPER_HALF)
    for z, w in [(0.1 + 0.2j, -0.3j), (0.4, 0.2 - 0.1j)]:
        lhs = k_h(c(z), c(w)) * c.deriv(z) * np.conj(c.deriv(w))
        assert abs(lhs - k_d(z, w)) < 1e-12


def test_projection_fixes_holomorphic_monomials():
    zs = np.array([0.0, 0.3 + 0.2j, -0.5j, 0.6])
    for k in range(5):
        vals = bergman_project(lambda w, k=k: np.asarray(w) ** k, 2, zs)
        assert np.max(np.abs(vals - zs**k)) < 1e-12, k


def test_projection_constant_at_origin():
    v = bergman_project(lambda w: np.ones_like(np.asarray(w, dtype=complex)), 2, 0.0)
    assert abs(v - 1.0) < 1e-12


def test_projection_kills_antiholomorphic():
    v = bergman_project(lambda w: np.conj(w), 2, 0.35 + 0.1j)
    assert abs(v) < 1e-12


def test_projection_symmetry_in_pairing():
    # f = w^2 conj(w), g = w + conj(w): beta f = 2w/5, so both sides equal
    # <2w/5, w + conj(w)> = pi/30.
    from schwarzian_lab.automorphic import projection_symmetry_check
    from schwarzian_lab.integrals import disc_quadrature, weighted_pairing

    f = lambda w: np.asarray(w) ** 2 * np.conj(w)
    g = lambda w: np.asarray(w) + np.conj(w)

    # The analytic value, by substituting the closed-form projection:
    # polynomials are integrated exactly by the Gauss grid.
    direct = weighted_pairing(lambda w: 2 * np.asarray(w) / 5, g, 2, disc_quadrature())
    assert abs(direct - math.pi / 30) < 1e-12

    rep = projection_symmetry_check(f, g, 2)
    assert rep["relerr"] < 1e-9

    # The symmetry check itself re-evaluates the projection at every node,
    # and the near-boundary nodes are under-resolved on the coarse default
    # grid: both sides carry the same quadrature error, which shrinks as the
    # grid is refined.
    fine = projection_symmetry_check(f, g, 2, disc_quadrature(R=48, M=96))
    assert abs(fine["lhs"] - math.pi / 30) < abs(rep["lhs"] - math.pi / 30)
    assert abs(fine["lhs"] - math.pi / 30) < 1e-3
