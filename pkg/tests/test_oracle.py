"""Full-dimensional oracle: curl residuals, analytic Jacobians, eigenvalue
conventions, and the cross-check against the reduced forms."""

from fractions import Fraction as F

import numpy as np
import pytest

from curlsharp.constants import Params, rellich_hardy_C_min
from curlsharp.oracle import (CrosscheckMismatch, _Zonal, analytic_field,
                              crosscheck, weighted_integrals)
from curlsharp.spectral import Profile


def _random_points(rng, dim, count=100):
    pts = []
    while len(pts) < count:
        x = rng.uniform(-1.0, 1.0, dim)
        r = np.linalg.norm(x)
        if r < 1e-3:
            continue
        x = x / r * np.exp(rng.uniform(-1.5, 0.5))
        if dim == 3 and abs(x[2] / np.linalg.norm(x)) > 0.99:
            continue  # keep away from the axis where the frame degenerates
        pts.append(x)
    return pts


@pytest.mark.parametrize("dim,nu,gamma", [
    (2, 0, F(1)), (2, 1, F(0)), (2, 3, F(-1)),
    (3, 0, F(0)), (3, 1, F(2)), (3, 2, F(1, 2)),
])
def test_curl_residual_is_rounding(dim, nu, gamma):
    bundle = analytic_field(Params(dim, gamma), nu, Profile.make("bump", 2, 64), dim)
    rng = np.random.default_rng(2)
    for x in _random_points(rng, dim):
        jac = bundle.jac_cart(x)
        scale = max(np.max(np.abs(jac)), 1e-300)
        assert np.max(np.abs(jac - jac.T)) / scale < 1e-12


@pytest.mark.parametrize("dim,nu,gamma", [(2, 1, F(0)), (3, 2, F(1, 2)),
                                          (3, 0, F(1))])
def test_jacobian_matches_finite_differences(dim, nu, gamma):
    bundle = analytic_field(Params(dim, gamma), nu, Profile.make("bump", 2, 64), dim)
    rng = np.random.default_rng(8)
    eps = 1e-6
    for x in _random_points(rng, dim, count=25):
        jac = bundle.jac_cart(x)
        fd = np.zeros((dim, dim))
        for k in range(dim):
            dx = np.zeros(dim)
            dx[k] = eps
            fd[:, k] = (bundle.u_cart(x + dx) - bundle.u_cart(x - dx)) / (2 * eps)
        scale = max(np.max(np.abs(jac)), 1e-300)
        assert np.max(np.abs(jac - fd)) / scale < 1e-5


def test_gradient_of_potential_is_field():
    # u = grad(potential), checked by finite differences of the potential
    bundle = analytic_field(Params(3, F(1, 2)), 2, Profile.make("bump", 2, 64), 3)
    rng = np.random.default_rng(5)
    eps = 1e-6
    for x in _random_points(rng, 3, count=20):
        grad_fd = np.zeros(3)
        for k in range(3):
            dx = np.zeros(3)
            dx[k] = eps

            def pot(y):
                r = np.linalg.norm(y)
                theta = np.arccos(np.clip(y[2] / r, -1, 1))
                return float(bundle.potential(np.array([np.log(r)]),
                                              np.array([theta]))[0])

            grad_fd[k] = (pot(x + dx) - pot(x - dx)) / (2 * eps)
        u = bundle.u_cart(x)
        assert np.max(np.abs(u - grad_fd)) < 1e-5 * max(1.0, np.max(np.abs(u)))


@pytest.mark.parametrize("dim,nu", [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)])
def test_zonal_eigenvalue(dim, nu):
    # -Laplace-Beltrami Y = alpha_nu Y, checked by finite differences in theta
    zon = _Zonal(dim, nu)
    theta = np.linspace(0.15, np.pi - 0.15, 4001)
    dth = theta[1] - theta[0]
    y = zon.y(theta)
    d2 = (y[2:] - 2 * y[1:-1] + y[:-2]) / dth ** 2
    if dim == 2:
        lap = d2
    else:
        d1 = (y[2:] - y[:-2]) / (2 * dth)
        lap = d2 + np.cos(theta[1:-1]) / np.sin(theta[1:-1]) * d1
    anu = nu * (nu + dim - 2)
    resid = np.max(np.abs(-lap - anu * y[1:-1]))
    assert resid < 5e-5 * max(1.0, anu)


def test_harmonic_normalisation_asserted_at_startup():
    # closed-form norms: pi for cos(nu theta), 4 pi/(2 nu + 1) for Legendre
    bundle = analytic_field(Params(2, F(0)), 2, Profile.make("bump", 1, 64), 2)
    assert bundle.harmonic_norm2_quadrature() == pytest.approx(np.pi)
    bundle = analytic_field(Params(3, F(0)), 2, Profile.make("bump", 1, 64), 3)
    assert bundle.harmonic_norm2_quadrature() == pytest.approx(4 * np.pi / 5)


def test_zero_and_positive_integrals():
    bundle = analytic_field(Params(2, F(1, 2)), 1, Profile.make("bump", 2, 64), 2)
    ints = weighted_integrals(bundle)
    assert ints.I_lap > 0 and ints.I_grad > 0 and ints.I_u > 0 and ints.I_rem > 0
    assert ints.est_error < 1e-7


def test_quotient_dominates_constant():
    p = Params(2, F(1, 2))
    bundle = analytic_field(p, 1, Profile.make("bump", 3, 64), 2)
    ints = weighted_integrals(bundle)
    c_min = float(rellich_hardy_C_min(p).value)
    assert ints.I_lap / ints.I_grad >= c_min - 1e-6


def test_bundle_validation():
    with pytest.raises(ValueError):
        analytic_field(Params(4, F(0)), 1, Profile.make("bump", 1, 64), 4)
    with pytest.raises(ValueError):
        analytic_field(Params(3, F(0)), 1, Profile.make("bump", 1, 64), 2)
    with pytest.raises(ValueError):
        analytic_field(Params(2, F(0)), -1, Profile.make("bump", 1, 64), 2)


@pytest.mark.parametrize("gamma", [F(-1), F(0), F(1, 2), F(1), F(2)])
@pytest.mark.parametrize("dim", [2, 3])
def test_reduction_equivalence_grid(dim, gamma):
    """Full-dimensional vs reduced values of both channels and the
    remainder integral, across the case grid."""
    tol = 1e-6 if dim == 2 else 1e-5
    for nu in range(0, 4):
        for n in (1, 2):
            report = crosscheck(Params(dim, gamma), nu,
                                Profile.make("bump", n, 64), tol=tol)
            assert report.max_rel <= tol


def test_crosscheck_spot_cases():
    rep = crosscheck(Params(2, F(0)), 1, Profile.make("bump", 2, 64))
    assert rep.max_rel <= 1e-6
    rep = crosscheck(Params(2, F(1)), 0, Profile.make("bump", 2, 64))
    assert rep.max_rel <= 1e-6
    rep = crosscheck(Params(3, F(1, 2)), 2, Profile.make("bump", 2, 64))
    assert rep.max_rel <= 1e-5


def test_crosscheck_rejects_high_dim():
    with pytest.raises(ValueError):
        crosscheck(Params(4, F(0)), 1, Profile.make("bump", 1, 64))


def test_mismatch_raises():
    with pytest.raises(CrosscheckMismatch):
        crosscheck(Params(2, F(0)), 1, Profile.make("bump", 2, 64), tol=1e-18)
