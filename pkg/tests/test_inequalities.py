import math

import numpy as np
import pytest

from fraclog import euclid_radial as er, inequalities as ineq
from fraclog.constants import Params, eval_constants, c_N, C_N
from fraclog.errors import DivergentIntegralError, DomainError
from fraclog.spectral import ZonalExpansion


def test_deficit_vanishes_at_own_order():
    p = Params(3, 0.5)
    v = er.talenti_bubble(p)
    curve = ineq.sobolev_deficit(p, v, [0.2, 0.35, 0.5])
    scale = eval_constants(p).kappa_Ns * er.bubble_hs_energy(p)
    assert abs(curve.F_values[-1]) <= 1e-9 * scale
    assert all(F > 0.0 for F in curve.F_values[:-1])


def test_deficit_positive_for_gaussian():
    p = Params(3, 0.5)
    g = er.gaussian_profile(3)
    curve = ineq.sobolev_deficit(p, g, list(np.linspace(0.1, 0.9, 5)))
    assert all(F > 1e-3 for F in curve.F_values)


def test_deficit_derivative_vanishes_at_extremal_order():
    # F'_v(s0) = 0 when v = u_{s0}: the curve is tangent at its minimum
    N, s0 = 3, 0.5
    p = Params(N, s0)
    v = er.talenti_bubble(p)
    h = 1e-4
    curve = ineq.sobolev_deficit(p, v, [s0 - h, s0, s0 + h])
    scale = eval_constants(p).kappa_Ns * er.bubble_hs_energy(p)
    assert abs(curve.Fprime_fd[1]) <= 1e-6 * scale


@pytest.mark.parametrize("N,s", [(3, 0.25), (3, 0.5), (4, 0.5), (5, 0.75)])
def test_sharp_fraclog_identity(N, s):
    rep = ineq.sharp_fraclog_identity(Params(N, s))
    assert rep.passed and abs(rep.residual) <= 1e-5
    # extremality cross-check rides along: kappa * E~ = 1
    assert rep.details["inverse_kappa_check"] == pytest.approx(1.0, rel=1e-9)


def test_sharp_fraclog_identity_stable_under_tighter_tolerances():
    a = ineq.sharp_fraclog_identity(Params(3, 0.5), tol_scale=1.0)
    b = ineq.sharp_fraclog_identity(Params(3, 0.5), tol_scale=0.5)
    budget = a.details["error_budget"] + b.details["error_budget"]
    assert abs(a.residual - b.residual) <= max(2.0 * budget, 1e-12)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_euclid_log_identity(N):
    rep = ineq.euclid_log_identity(N)
    assert rep.passed and abs(rep.residual) <= 1e-5


def test_failure_demo():
    rep, curve = ineq.failure_demo(3, 0.5, 40)
    assert rep.passed
    d = rep.details
    scale = d["scale"]
    assert abs(d["F_at_s0"]) <= 1e-8 * scale
    assert d["min_F"] >= -1e-8 * scale
    assert d["min_Fprime"] < 0.0
    assert abs(d["min_Fprime"]) >= 10.0 * d["derivative_budget"]


def test_failure_demo_stable_under_grid_doubling():
    rep1, _ = ineq.failure_demo(3, 0.5, 40)
    rep2, _ = ineq.failure_demo(3, 0.5, 80)
    assert rep2.passed
    # location of the minimum stays within one coarse grid cell
    cell = 0.95 * 0.5 / 39
    assert abs(rep1.details["argmin_s"] - rep2.details["argmin_s"]) <= cell
    assert rep1.details["min_Fprime"] == pytest.approx(
        rep2.details["min_Fprime"], rel=0.05)


@pytest.mark.parametrize("N,s", [(1, 0.25), (2, 0.3), (3, 0.5), (4, 0.5), (5, 0.75)])
def test_sphere_identity_constant_instance(N, s):
    rep = ineq.sphere_identity_check(Params(N, s))
    assert rep.passed and abs(rep.residual) <= 1e-6
    assert rep.details["J_route_spread"] <= 1e-8


def test_sphere_identity_corrections_cancel_as_s_vanishes():
    rep = ineq.sphere_identity_check(Params(3, 1e-6))
    J = rep.details["J"]["closed_form"]
    assert abs(rep.details["correction_sum"]) <= 1e-5 * abs(J)
    assert rep.passed


def test_sphere_identity_kappa_sensitivity():
    # perturbing kappa by 1% must break the identity detectably
    p = Params(3, 0.5)
    cs = eval_constants(p)
    from fraclog.constants import sphere_area
    area = sphere_area(3)
    J = ineq.log_phi_sphere_integral(3)["closed_form"]
    s, N = p.s, p.N
    lhs = (2.0 / N) * (-math.log(area))
    kappa_bad = 1.01 * cs.kappa_Ns
    rhs_bad = ((cs.kappaprime_Ns * cs.A_Ns + kappa_bad * cs.Aprime_Ns)
               * area ** (2.0 * s / N)
               - 2.0 * J / area
               + 2.0 * kappa_bad * cs.A_Ns * J * area ** (-(N - 2.0 * s) / N))
    assert abs(lhs - rhs_bad) / abs(lhs) > 1e-3


def test_beckner_convention_selftest_gap():
    assert abs(ineq.beckner_convention_selftest()) <= 1e-6


def test_beckner_equality_for_extremal():
    rep = ineq.beckner_fraclog_check(1, 0.25, "extremal")
    assert rep.passed
    assert abs(rep.residual) <= 1e-4
    assert rep.details["inverse_transform_grid_dev"] <= 1e-6


@pytest.mark.parametrize("N,s", [(1, 0.25), (3, 0.5)])
def test_beckner_strict_for_gaussian(N, s):
    rep = ineq.beckner_fraclog_check(N, s, "gaussian")
    assert rep.passed
    assert rep.residual > 1e-3  # strictly positive margin


def test_beckner_rejects_large_order_in_dimension_one():
    with pytest.raises(DomainError):
        ineq.beckner_fraclog_check(1, 0.5, "extremal")


def test_flipped_directions_fail():
    # every audited inequality, reversed on the same data, must fail
    rep = ineq.beckner_fraclog_check(3, 0.5, "gaussian")
    assert not (rep.rhs - rep.lhs >= -1e-6)
    rep = ineq.moment_check(3, 0.5, er.gaussian_density_profile(3))
    assert not (rep.rhs - rep.lhs >= -1e-6)
    rep = ineq.lq_check(3, 0.5, 1.5, ineq.extremal_profile(3))
    assert not (rep.rhs - rep.lhs >= -1e-6)
    rep = ineq.beckner_sphere_equivalence(2, ZonalExpansion(2, 3, (1.0, 0.0, 0.0, 0.2)))
    assert not (rep.rhs - rep.lhs >= -1e-6)


def test_moment_check_gaussian():
    rep = ineq.moment_check(1, 0.25, er.gaussian_density_profile(1))
    assert rep.passed and rep.residual > 0.1
    rep3 = ineq.moment_check(3, 0.5, er.gaussian_density_profile(3))
    assert rep3.passed and rep3.residual > 0.1


def test_moment_check_extremal_in_dimension_three():
    rep = ineq.moment_check(3, 0.5, ineq.extremal_profile(3))
    assert rep.passed and rep.residual > 0.1


def test_moment_check_scaled_gaussian():
    # the two sides shift under dilation but the margin is scale-invariant
    # (both the log-energy and -ln(moment) pick up the same -2 ln sigma)
    r1 = ineq.moment_check(3, 0.5, er.gaussian_density_profile(3, sigma=1.0))
    r2 = ineq.moment_check(3, 0.5, er.gaussian_density_profile(3, sigma=2.0))
    assert r1.passed and r2.passed
    assert abs(r1.lhs - r2.lhs) > 0.5
    assert r1.residual == pytest.approx(r2.residual, abs=1e-8)


def test_moment_check_divergent_for_extremal_in_low_dimension():
    # the second moment of (1+x^2)^{-1} diverges on the line
    with pytest.raises(DivergentIntegralError):
        ineq.moment_check(1, 0.25, ineq.extremal_profile(1))


def test_lq_check_margins():
    rep = ineq.lq_check(1, 0.25, 1.5, ineq.extremal_profile(1))
    assert rep.passed and rep.residual > 0.01
    rep2 = ineq.lq_check(3, 0.5, 1.0, er.gaussian_density_profile(3))
    assert rep2.passed and rep2.residual > 0.01


def test_lq_check_divergent_l1_for_extremal_line():
    # (1+x^2)^{-1/2} is not integrable on the line
    with pytest.raises(DivergentIntegralError):
        ineq.lq_check(1, 0.25, 1.0, ineq.extremal_profile(1))
    with pytest.raises(DomainError):
        ineq.lq_check(1, 0.25, 2.5, ineq.extremal_profile(1))


def test_sphere_beckner_deficit():
    rep = ineq.beckner_sphere_equivalence(2, ZonalExpansion(2, 0, (1.0,)))
    assert rep.passed and abs(rep.residual) <= 1e-8
    rep2 = ineq.beckner_sphere_equivalence(2, ZonalExpansion(2, 3, (1.0, 0.0, 0.0, 0.2)))
    assert rep2.passed and rep2.residual > 1e-3
    assert rep2.details["C_N_consistency_rel"] <= 1e-12


def test_sphere_beckner_rejects_high_degree():
    with pytest.raises(DomainError):
        ineq.beckner_sphere_equivalence(2, ZonalExpansion(2, 17, tuple([1.0] * 18)))


def test_C_N_closed_form_consistency():
    for N in (1, 2, 3, 5):
        assert C_N(N) == pytest.approx((4.0 / N) / c_N(N), rel=1e-12)


def test_extremal_profile_is_normalized():
    for N in (1, 2, 3):
        f = ineq.extremal_profile(N)
        assert er.energy("frac", f.fourier, N, 0.0).value == pytest.approx(1.0, rel=1e-9)
