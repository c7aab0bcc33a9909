import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from locgpd import flows


def travel_time(c, a, b):
    """Time for dx/dt = 1 + c*bump(x) to carry a to b."""
    val, _ = quad(lambda x: 1.0 / (1.0 + c * flows.bump(x)), a, b, points=[1 / 3, 0.5, 2 / 3], epsabs=1e-13)
    return val


@pytest.mark.parametrize("n", [1, 2, 4, 7])
def test_calibration_against_quadrature(n):
    cal = flows.calibrate(n)
    assert cal.residual < 1e-7
    assert travel_time(cal.amplitude, 0.1, flows.calibration_target(n)) == pytest.approx(0.8, abs=1e-7)


def test_amplitudes_decrease_with_n():
    amps = [flows.calibrate(n).amplitude for n in (1, 2, 4, 8)]
    assert all(a > b > 0 for a, b in zip(amps, amps[1:]))
    assert flows.calibrate(0).amplitude == 0.0


@given(st.floats(-1, 2, allow_nan=False))
def test_bump_shape(x):
    b = flows.bump(x)
    assert 0.0 <= b <= 1.0
    if not 1 / 3 < x < 2 / 3:
        assert b == 0.0
    assert flows.bump(1 - x) == pytest.approx(b, abs=1e-12)


def test_bump_peak():
    assert flows.bump(0.5) == 1.0


def test_ladder_word():
    assert flows.ladder_word(1) == "A" * 20 + "B" * 20 + "b" * 20 + "a" * 20
    assert flows.ladder_word(-1) == "A" * 20 + "b" * 20 + "B" * 20 + "a" * 20
    assert flows.ladder_word(0) == "A" * 20 + "a" * 20


def test_region():
    assert flows.in_region(0.05, 3.7) and flows.in_region(0.5, 2.05)
    assert not flows.in_region(0.5, 0.5)
    assert flows.distance_to_ladder(0.5, 1.0) == 0.0


def test_vertical_flow_is_translation():
    assert flows.flow((0.0, 0.0), "Y", 0.75) == pytest.approx((0.0, 0.75))


def test_flow_leaves_region():
    with pytest.raises(flows.LeftRegion):
        flows.flow((0.0, 0.5), "X", 0.3)
    with pytest.raises(ValueError):
        flows.flow((0.0, 0.0), "Z", 0.1)


def test_flow_is_reversible():
    f = flows.LadderFields()
    p = f.flow((0.05, 1.0), "X", 0.9)
    assert f.flow(p, "X", -0.9) == pytest.approx((0.05, 1.0), abs=1e-10)


def test_inside_out_lands_on_unit():
    for n in (1, 3):
        ev = flows.eval_word(flows.ladder_word(n), "inside_out")
        assert ev.point == pytest.approx((0.0, 0.0), abs=1e-12)


def test_undefined_product():
    # walking straight up the middle of the square leaves the neighbourhood
    with pytest.raises(flows.UndefinedProduct):
        flows.eval_word("a" * 10 + "b" * 10, "split")
    with pytest.raises(ValueError):
        flows.eval_word("aaa", "inside_out")
    with pytest.raises(ValueError):
        flows.eval_word("ab", "sideways")


def test_associator_rung_one():
    w = flows.associator_witness(1)
    assert math.dist(w.point, w.expected) < 1e-4
    assert w.as_dict()["calibration"]["residual"] < 1e-7


def test_step_convergence():
    # halving the step changes the associator by far less than its size
    coarse = flows.associator_witness(2, step=1e-3).point
    fine = flows.associator_witness(2, step=5e-4).point
    assert math.dist(coarse, fine) < 1e-6
    assert coarse[0] == pytest.approx(1 / 200, abs=1e-4)


def test_rung_zero_and_negative_are_trivial():
    for n in (0, -2):
        w = flows.associator_witness(n)
        assert w.point == pytest.approx((0.0, 0.0), abs=1e-9)
