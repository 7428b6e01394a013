import math

import pytest

import polymod

PHI = (1 + math.sqrt(5)) / 2


def test_equal_weight_pentagon():
    P, Q = polymod.psi5(polymod.equal_weight(5), "12345")
    assert P == pytest.approx(PHI ** -0.5, abs=1e-9)
    assert Q == pytest.approx(PHI ** -0.5, abs=1e-9)


def test_equal_weight_hexahedron():
    assert polymod.psi6(polymod.equal_weight(6), "123456") == pytest.approx((1, 1, 1), abs=1e-9)


def test_round_trip_n6():
    theta = polymod.sample_weight(6, 11)
    s1 = polymod.psi6(theta, "123456")
    s2 = polymod.psi6(theta, "214356")
    back = polymod.invert6(s1, s2)
    assert max(abs(a - b) for a, b in zip(back["theta"], theta)) < 1e-9


def test_error_carries_code():
    with pytest.raises(polymod.PolymodError) as info:
        polymod.validate_weight([1.6, 1.6, 1.0, 1.0, 2 * math.pi - 5.2])
    assert info.value.args[0] == "PairSumTooLarge"


def test_complex_counts():
    assert polymod.complex_summary(polymod.equal_weight(5))["chi"] == -3
    assert polymod.cusp_count(polymod.equal_weight(6)) == 10


def test_no_intersection():
    with pytest.raises(polymod.PolymodError) as info:
        polymod.invert5((0.3, 0.5), (0.5, 0.3))
    assert info.value.args[0] == "NoIntersection"
