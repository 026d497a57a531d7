"""Young functions, conjugates, and both Orlicz-type norms."""
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hyperorlicz as hz
from hyperorlicz.orlicz import complementary_eval, young_eval, young_inverse

COSH1 = 0.5430806348152437  # cosh(1) - 1


def test_young_evaluations():
    assert young_eval(hz.phi_p(2.0), 2.0) == 2.0
    assert young_eval(hz.exp_minus_linear(), 0.0) == 0.0
    assert young_eval(hz.cosh_minus_one(), 1.0) == pytest.approx(COSH1, rel=1e-15)
    assert young_eval(hz.phi_p(1.0), 3.0) == 3.0


def test_young_overflow_to_infinity():
    assert young_eval(hz.exp_minus_linear(), 800.0) == math.inf
    assert young_eval(hz.cosh_minus_one(), 2000.0) == math.inf
    assert young_eval(hz.phi_p(3.0), 1e200) == math.inf


def test_young_inverse_roundtrip():
    for phi in (hz.phi_p(1.5), hz.cosh_minus_one(), hz.exp_minus_linear()):
        for target in (0.25, 1.0, 7.5):
            t = young_inverse(phi, target)
            assert young_eval(phi, t) == pytest.approx(target, rel=1e-9)


def test_tabulated_young_interpolation_and_validation():
    phi = hz.tabulated_young([(0.0, 0.0), (1.0, 0.5), (2.0, 2.0)])
    assert young_eval(phi, 0.5) == 0.25
    assert young_eval(phi, 1.5) == 1.25
    assert young_eval(phi, 3.0) == 3.5  # final slope 1.5 extrapolates
    with pytest.raises(ValueError):
        hz.tabulated_young([(0.5, 0.0), (1.0, 1.0)])  # must start at the origin
    with pytest.raises(ValueError):
        hz.tabulated_young([(0.0, 0.0), (1.0, 2.0), (2.0, 2.5)])  # slopes decrease


def test_complementary_power_pair():
    # the conjugate of t^2/2 is y^2/2
    assert complementary_eval(hz.phi_p(2.0), 3.0) == pytest.approx(4.5, rel=1e-12)
    # p = 3 pairs with q = 3/2
    q = 1.5
    y = 2.0
    assert complementary_eval(hz.phi_p(3.0), y) == pytest.approx(y**q / q, rel=1e-9)


def test_complementary_linear_kind():
    phi1 = hz.phi_p(1.0)
    assert complementary_eval(phi1, 0.5) == 0.0
    assert complementary_eval(phi1, 1.0) == 0.0
    assert complementary_eval(phi1, 2.0) == math.inf


def test_complementary_exp_kind_analytic():
    phi = hz.exp_minus_linear()
    for y in (0.0, 0.3, 1.0, 4.0, 20.0):
        expected = (1 + y) * math.log1p(y) - y
        assert complementary_eval(phi, y) == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_complementary_cosh_kind_analytic():
    phi = hz.cosh_minus_one()
    for y in (0.0, 0.5, 2.0, 10.0):
        expected = y * math.asinh(y) - (math.sqrt(1 + y * y) - 1)
        assert complementary_eval(phi, y) == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_complementary_tabulated_knot_scan():
    phi = hz.tabulated_young([(0.0, 0.0), (1.0, 1.0), (2.0, 3.0)])
    # slopes are 1 then 2; conjugate at y=1.5 is max(t*1.5 - phi(t)) = 0.5 at t=1
    assert complementary_eval(phi, 1.5) == pytest.approx(0.5, rel=1e-12)
    assert complementary_eval(phi, 3.0) == math.inf  # beyond the final slope


def test_luxemburg_golden_values(dr05):
    phi2 = hz.phi_p(2.0)
    n0 = hz.luxemburg_norm(dr05, hz.indicator([0]), phi2)
    assert n0.value == pytest.approx(2**-0.5, rel=1e-9)
    n2 = hz.luxemburg_norm(dr05, hz.indicator([2]), phi2)
    assert n2.value == pytest.approx(1.0, rel=1e-9)
    assert n0.bracket[0] <= n0.value <= n0.bracket[1] * (1 + 1e-15)


def test_luxemburg_zero_function(dr05):
    res = hz.luxemburg_norm(dr05, hz.ZERO_FUNCTION, hz.phi_p(2.0))
    assert res.value == 0.0 and res.iterations == 0


def test_luxemburg_phi1_is_l1_norm(dr03):
    f = hz.SparseFunction.from_dict({0: 1.0, 2: -0.5})
    res = hz.luxemburg_norm(dr03, f, hz.phi_p(1.0))
    l1 = 1.0 * dr03.haar[0] + 0.5 * dr03.haar[2]
    assert res.value == pytest.approx(l1, rel=1e-9)


def test_luxemburg_defining_inequality_holds_at_value(dr05):
    # the returned value is the upper bracket end, so the modular is <= 1 there
    phi = hz.cosh_minus_one()
    f = hz.SparseFunction.from_dict({0: 2.0, 3: 1.0, 7: -0.5})
    res = hz.luxemburg_norm(dr05, f, phi)
    total = sum(young_eval(phi, abs(v) / res.value) * dr05.haar[x]
                for x, v in f.values)
    assert total <= 1.0 + 1e-9


def test_orlicz_golden_values(dr05):
    phi2 = hz.phi_p(2.0)
    res = hz.orlicz_norm(dr05, hz.indicator([0]), phi2)
    assert res.value == pytest.approx(2**0.5, rel=1e-9)
    # linear growth pushes the infimum to the k -> infinity limit, value 1
    res1 = hz.orlicz_norm(dr05, hz.indicator([0]), hz.phi_p(1.0))
    assert res1.value == pytest.approx(1.0, rel=1e-6)


def test_sandwich_between_gauge_and_infimum_form(dr03):
    phi = hz.cosh_minus_one()
    f = hz.SparseFunction.from_dict({0: 1.5, 1: -0.25, 4: 0.75})
    lux = hz.luxemburg_norm(dr03, f, phi).value
    ame = hz.orlicz_norm(dr03, f, phi).value
    assert lux <= ame * (1 + 1e-9)
    assert ame <= 2 * lux * (1 + 1e-9)


def test_delta2_states():
    assert hz.delta2_check(hz.phi_p(3.0)).state == "proven"
    assert hz.delta2_check(hz.phi_p(3.0)).constant == 8.0
    assert hz.delta2_check(hz.exp_minus_linear()).state == "refuted"
    assert hz.delta2_check(hz.cosh_minus_one()).state == "refuted"
    tab = hz.tabulated_young([(0.0, 0.0), (1.0, 1.0), (2.0, 3.0)])
    assert hz.delta2_check(tab).state == "unknown"


def test_l1_embedding_report(dr05):
    lin = hz.l1_embedding_check(dr05, hz.phi_p(1.0))
    assert lin.holds and lin.derivative_status == "positive"
    assert lin.right_derivative == pytest.approx(1.0, rel=1e-6)
    assert not lin.rigorous
    exp = hz.l1_embedding_check(dr05, hz.exp_minus_linear())
    assert exp.holds and exp.derivative_status == "zero"
    assert exp.via_finite_window
    quad = hz.l1_embedding_check(dr05, hz.phi_p(2.0))
    assert quad.holds and quad.via_finite_window


@settings(max_examples=25, deadline=None)
@given(scale=st.floats(min_value=0.01, max_value=100.0),
       vals=st.lists(st.floats(min_value=-3.0, max_value=3.0), min_size=1,
                     max_size=5))
def test_gauge_norm_homogeneity(dr03, scale, vals):
    f = hz.SparseFunction.from_dict({i: v for i, v in enumerate(vals)})
    if f.is_zero():
        return
    phi = hz.phi_p(2.0)
    base = hz.luxemburg_norm(dr03, f, phi).value
    scaled = hz.luxemburg_norm(dr03, f.scale(scale), phi).value
    assert scaled == pytest.approx(scale * base, rel=1e-9)


@settings(max_examples=25, deadline=None)
@given(a=st.lists(st.floats(min_value=-2.0, max_value=2.0), min_size=1, max_size=4),
       b=st.lists(st.floats(min_value=-2.0, max_value=2.0), min_size=1, max_size=4))
def test_gauge_norm_triangle_inequality(dr03, a, b):
    f = hz.SparseFunction.from_dict({i: v for i, v in enumerate(a)})
    g = hz.SparseFunction.from_dict({i + 2: v for i, v in enumerate(b)})
    phi = hz.cosh_minus_one()
    nf = hz.luxemburg_norm(dr03, f, phi).value
    ng = hz.luxemburg_norm(dr03, g, phi).value
    nfg = hz.luxemburg_norm(dr03, f + g, phi).value
    assert nfg <= nf + ng + 1e-9
