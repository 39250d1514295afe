import math

import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as sp_integrate

from thermolen.eos import StatePoint, VirialEos
from thermolen.errors import ConfigError, DomainError, StabilityError
from thermolen.eos import require_stable

from conftest import R, TEST_EOS

RT300 = R * 300.0


def test_ideal_pressure():
    assert VirialEos.ideal().pressure(300, 0.024) == pytest.approx(RT300 / 0.024, rel=1e-15)
    assert VirialEos.ideal().pressure(300, 0.024) == pytest.approx(103925, rel=1e-5)


def test_quasi_ideal_pressure():
    eos = VirialEos.quasi_ideal(3e-5)
    assert eos.pressure(300, 0.024) == pytest.approx(RT300 / (0.024 - 3e-5), rel=1e-15)


def test_ideal_dp_dv():
    assert VirialEos.ideal().dp_dv(300, 0.02) == pytest.approx(-RT300 / 4e-4, rel=1e-15)
    assert VirialEos.ideal().dp_dv(300, 0.02) == pytest.approx(-6.2355e6, rel=1e-12)


@pytest.mark.parametrize("label,eos", TEST_EOS)
@pytest.mark.parametrize("T", [100.0, 300.0, 1000.0])
@pytest.mark.parametrize("v", [0.012, 0.02, 0.05, 0.12])
def test_dp_dv_matches_central_difference(label, eos, T, v):
    h = 1e-6 * v
    fd = (eos.pressure(T, v + h) - eos.pressure(T, v - h)) / (2 * h)
    assert eos.dp_dv(T, v) == pytest.approx(fd, rel=1e-6)
    assert eos.dp_dv(T, v) < 0


def test_second_order_dp_dv_formula():
    B = -1e-4
    eos = VirialEos.virial([B])
    v = 0.015
    assert eos.dp_dv(300, v) == pytest.approx(-RT300 / v**2 - 2 * RT300 * B / v**3, rel=1e-14)


def test_ideal_work():
    w = VirialEos.ideal().work(300, 0.012, 0.024)
    assert w == pytest.approx(RT300 * math.log(2), rel=1e-15)
    assert w == pytest.approx(1728.85, abs=5e-3)


@pytest.mark.parametrize("label,eos", TEST_EOS)
def test_work_empty_interval(label, eos):
    assert eos.work(300, 0.02, 0.02) == 0.0
    assert eos.helmholtz_relative(300, 0.02, 0.02) == 0.0


@pytest.mark.parametrize("label,eos", TEST_EOS)
def test_work_matches_quadrature(label, eos):
    T, v1, v2 = 300.0, 0.012, 0.024
    ref, _ = sp_integrate.quad(lambda v: eos.pressure(T, v), v1, v2, epsabs=0, epsrel=1e-13)
    assert eos.work(T, v1, v2) == pytest.approx(ref, rel=1e-10)


def test_second_order_work_formula():
    B, T, v1, v2 = -1e-4, 300.0, 0.012, 0.024
    expect = R * T * (math.log(v2 / v1) + B * (v2 - v1) / (v1 * v2))
    assert VirialEos.virial([B]).work(T, v1, v2) == pytest.approx(expect, rel=1e-15)


def test_quasi_ideal_helmholtz():
    eos = VirialEos.quasi_ideal(3e-5)
    T, vr, v = 300.0, 0.012, 0.03
    assert eos.helmholtz_relative(T, vr, v) == pytest.approx(
        -R * T * math.log((v - 3e-5) / (vr - 3e-5)), rel=1e-14)


def test_ideal_helmholtz_doubling():
    assert VirialEos.ideal().helmholtz_relative(300, 0.01, 0.02) == pytest.approx(
        -RT300 * math.log(2), rel=1e-15)


volumes = st.floats(0.012, 0.5)
eos_index = st.integers(0, len(TEST_EOS) - 1)


@settings(max_examples=200, deadline=None)
@given(i=eos_index, a=volumes, b=volumes, T=st.floats(50, 2000))
def test_work_antisymmetric(i, a, b, T):
    eos = TEST_EOS[i][1]
    assert eos.work(T, a, b) == -eos.work(T, b, a)


@settings(max_examples=200, deadline=None)
@given(i=eos_index, a=volumes, b=volumes, c=volumes, T=st.floats(50, 2000))
def test_work_additive(i, a, b, c, T):
    eos = TEST_EOS[i][1]
    whole = eos.work(T, a, c)
    parts = eos.work(T, a, b) + eos.work(T, b, c)
    scale = abs(eos.work(T, a, b)) + abs(eos.work(T, b, c))
    assert abs(whole - parts) <= 1e-12 * max(abs(whole), scale)


@settings(max_examples=100, deadline=None)
@given(order=st.integers(2, 8), T=st.floats(50, 2000), v=st.floats(1e-3, 1.0),
       v2=st.floats(1e-3, 1.0))
def test_zero_coefficients_reproduce_ideal_bitwise(order, T, v, v2):
    ideal = VirialEos.ideal()
    zero = VirialEos.virial([0.0] * (order - 1), coeff_dT=[0.0] * (order - 1))
    assert zero.pressure(T, v) == ideal.pressure(T, v)
    assert zero.dp_dv(T, v) == ideal.dp_dv(T, v)
    assert zero.dp_dT(T, v) == ideal.dp_dT(T, v)
    assert zero.work(T, v, v2) == ideal.work(T, v, v2)
    assert zero.helmholtz_relative(T, v, v2) == ideal.helmholtz_relative(T, v, v2)


def test_domain_errors():
    eos = VirialEos.quasi_ideal(3e-5)
    for T, v in [(300, 0.0), (300, -1.0), (0.0, 0.02), (-5, 0.02), (300, 2e-5), (300, 3e-5)]:
        with pytest.raises(DomainError):
            eos.pressure(T, v)
    with pytest.raises(DomainError):
        eos.work(300, 0.02, 1e-5)
    with pytest.raises(DomainError):
        StatePoint(300, math.nan)


def test_invariants_enforced():
    with pytest.raises(ConfigError):
        VirialEos(order=2, coefficients=())
    with pytest.raises(ConfigError):
        VirialEos(gas_constant=-1.0)
    with pytest.raises(ConfigError):
        VirialEos(order=2, coefficients=(1e-4,), excluded_volume=1e-5)
    with pytest.raises(ConfigError):
        VirialEos.virial([0.0] * 8)
    with pytest.raises(ConfigError):
        VirialEos.virial([1e-4], coeff_dT=[1.0, 2.0])


def test_dp_dT_requires_derivatives():
    with pytest.raises(ConfigError):
        VirialEos.virial([1e-4]).dp_dT(300, 0.02)


def test_dp_dT_constant_coefficients_is_p_over_T():
    eos = VirialEos.virial([-1e-4, 2e-8], coeff_dT=[0.0, 0.0])
    assert eos.dp_dT(300, 0.015) == pytest.approx(eos.pressure(300, 0.015) / 300, rel=1e-14)


def test_dp_dT_matches_finite_difference():
    # B(T) = B0 + B1 T  with coeff_dT = [B1]
    B0, B1, T, v = -2e-4, 3e-7, 300.0, 0.015

    def p(T):
        return VirialEos.virial([B0 + B1 * T]).pressure(T, v)

    eos = VirialEos.virial([B0 + B1 * T], coeff_dT=[B1])
    h = 1e-3
    assert eos.dp_dT(T, v) == pytest.approx((p(T + h) - p(T - h)) / (2 * h), rel=1e-8)


def test_unstable_interval_located():
    # 1 + 2B/v < 0 below v = -2B = 0.02
    eos = VirialEos.virial([-0.01])
    lo, hi = eos.unstable_interval(300, 0.012, 0.03)
    assert lo == 0.012
    assert hi == pytest.approx(0.02, rel=1e-11)
    with pytest.raises(StabilityError) as info:
        require_stable(eos, 300, 0.012, 0.03)
    assert info.value.interval == (lo, hi)


def test_unstable_pocket_between_samples():
    # stiffness 1 + 2B/v + 3C/v**2 dips below zero only on a narrow band
    r1, r2 = 0.0200, 0.0200001
    B, C = -(r1 + r2) / 2, r1 * r2 / 3
    eos = VirialEos.virial([B, C])
    assert eos.stiffness(0.02000005) < 0
    bracket = eos.unstable_interval(300, 0.012, 0.05, samples=4)
    assert bracket is not None
    assert bracket[0] < 0.0200001 and bracket[1] > 0.02


def test_stable_interval_returns_none():
    assert VirialEos.virial([-1e-4, 2e-8]).unstable_interval(300, 0.012, 0.12) is None
