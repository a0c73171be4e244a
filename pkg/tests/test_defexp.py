import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from deformexp import (
    DomainError,
    e_sub,
    e_sup,
    kaniadakis_exp,
    ominus_sub,
    ominus_sup,
    oplus_sub,
    oplus_sup,
    quantum_group_exp,
    sub_to_sup_shift,
    tsallis_q_exp,
)

from conftest import close

xs = st.floats(-2, 2)
ys = st.floats(-2, 2)
hs = st.sampled_from([0.1, -0.1, 0.5, -0.5, 1.0, -1.0])


def test_e_sub_examples():
    assert e_sub(0, 1.3, 0.4) == 1 and e_sub(0.7, 0, -0.2) == 1
    assert e_sub(1, 3, 1) == pytest.approx(8, rel=4e-16)
    assert e_sub(0.3, 1.7, 0) == math.exp(0.3 * 1.7)


def test_e_sub_domain_guard():
    with pytest.raises(DomainError, match="1\\+hx <= 0"):
        e_sub(-3, 1, 1)
    with pytest.raises(DomainError):
        e_sub(1.0, 1, -1)


def test_e_sup_examples():
    assert e_sup(0, -1.1, 0.4) == 1 and e_sup(1.9, 0, 0.3) == 1
    assert e_sup(0.75, 1, 1) == pytest.approx(2, rel=1e-15)
    assert e_sup(0.75, 2, 1) == pytest.approx(4, rel=1e-15)
    assert e_sup(-1.2, 0.4, 0) == math.exp(-1.2 * 0.4)


def test_tsallis():
    for x in (-0.9, 0.0, 0.5, 3.0):
        assert close(tsallis_q_exp(x, 0), 1 + x, 1e-14)
    assert tsallis_q_exp(-5, 0) == 0
    assert tsallis_q_exp(-1, 0) == 0
    assert tsallis_q_exp(0.4, 1) == math.exp(0.4)
    # q = 2: (1 - x)^(-1) for x < 1
    assert close(tsallis_q_exp(0.5, 2), 2.0, 1e-15)
    assert tsallis_q_exp(1.5, 2) == 0


def test_kaniadakis():
    assert kaniadakis_exp(0.75, 1) == pytest.approx(2, rel=1e-15)
    assert kaniadakis_exp(0, 0.3) == 1
    assert kaniadakis_exp(0.8, 0) == math.exp(0.8)


def test_quantum_group():
    assert quantum_group_exp(0, 3.0) == 1
    assert quantum_group_exp(1, 2) == pytest.approx(2, rel=1e-15)
    assert quantum_group_exp(2, 4) == pytest.approx(math.pow(4, 2 / 3), rel=1e-15)
    with pytest.raises(DomainError):
        quantum_group_exp(1, 0)
    with pytest.raises(DomainError):
        quantum_group_exp(1, -2)


def test_shift_examples():
    assert sub_to_sup_shift(0, 0.9) == 0
    assert sub_to_sup_shift(0.75, 1) == 1
    assert sub_to_sup_shift(-0.75, 1) == -0.5
    assert e_sub(1, 1, 1) == pytest.approx(e_sup(0.75, 1, 1), rel=1e-15)
    assert e_sub(-0.5, 1, 1) == pytest.approx(0.5, rel=1e-15)
    assert e_sup(-0.75, 1, 1) == pytest.approx(0.5, rel=1e-15)
    with pytest.raises(ValueError):
        sub_to_sup_shift(1.0, 0.0)


@given(xs, ys, ys, hs)
def test_additive_in_y(x, y1, y2, h):
    assert close(e_sup(x, y1 + y2, h), e_sup(x, y1, h) * e_sup(x, y2, h), 1e-12)
    assume(1 + h * x > 0)
    assert close(e_sub(x, y1 + y2, h), e_sub(x, y1, h) * e_sub(x, y2, h), 1e-12)


@given(xs, ys, hs)
def test_reflection(x, y, h):
    assert close(e_sup(x, y, -h), e_sup(x, y, h), 1e-14)
    assume(1 - h * x > 0)
    assert close(e_sub(x, y, -h), e_sub(-x, -y, h), 1e-14)


@given(xs, xs, ys, hs)
def test_deformed_product_rules(x1, x2, y, h):
    assert close(e_sup(oplus_sup(x1, x2, h), y, h), e_sup(x1, y, h) * e_sup(x2, y, h), 1e-11)
    assert close(e_sup(ominus_sup(x1, x2, h), y, h), e_sup(x1, y, h) * e_sup(-x2, y, h), 1e-11)
    assert close(e_sup(ominus_sup(x1, x2, h), y, h), e_sup(x1, y, h) * e_sup(x2, -y, h), 1e-11)
    assume(1 + h * x1 > 1e-3 and 1 + h * x2 > 1e-3)
    prod = e_sub(x1, y, h) * e_sub(x2, y, h)
    assert close(e_sub(oplus_sub(x1, x2, h), y, h), prod, 1e-11)
    assert close(e_sub(x1 + x2 + h * x1 * x2, y, h), prod, 1e-11)
    assert close(e_sub(ominus_sub(x1, x2, h), y, h), e_sub(x1, y, h) * e_sub(x2, -y, h), 1e-11)


@given(xs, ys, hs)
def test_connection_formula(x, y, h):
    assert close(e_sup(x, y, h), e_sub(sub_to_sup_shift(x, h), y, h), 1e-11)


@given(xs, ys, hs)
def test_log_form_matches_direct_power(x, y, h):
    direct_sup = (h * x + math.sqrt(1 + h * h * x * x)) ** (y / h)
    assert close(e_sup(x, y, h), direct_sup, 1e-12)
    assume(1 + h * x > 0)
    assert close(e_sub(x, y, h), (1 + h * x) ** (y / h), 1e-12)


@given(xs, ys, hs)
def test_positive(x, y, h):
    assert e_sup(x, y, h) > 0
    assume(1 + h * x > 0)
    assert e_sub(x, y, h) > 0


def test_classical_limit_e_sub_linear():
    x, y = 0.3, 1.7
    errs = [abs(e_sub(x, y, h) - math.exp(x * y)) for h in (0.1, 0.01, 0.001)]
    for a, b in zip(errs, errs[1:]):
        assert 5 <= a / b <= 20


def test_classical_limit_e_sup_quadratic():
    # exp_h is even in h, so the error falls off like h^2
    x, y = 0.3, 1.7
    errs = [abs(e_sup(x, y, h) - math.exp(x * y)) for h in (0.1, 0.01, 0.001)]
    for a, b in zip(errs, errs[1:]):
        assert 50 <= a / b <= 200
