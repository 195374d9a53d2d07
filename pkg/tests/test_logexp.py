import cmath
import math

import pytest

from chronolog.calculus import ScaleFunction, ToleranceConfig
from chronolog.errors import (
    NonvanishingViolation,
    NotNuRegressive,
    NotRegressive,
    OneNotInScale,
)
from chronolog.logexp import (
    IdentityResult,
    LegacyKind,
    LogVariant,
    delta_quotient,
    exp_delta,
    exp_nabla,
    identity_suite,
    legacy_log,
    log_cayley_multi,
    log_cayley_principal,
    log_delta_derivative,
    log_delta_multi,
    log_delta_principal,
    log_eta,
    log_nabla_multi,
    log_nabla_principal,
    log_ts,
    scaled_residual,
)
from chronolog.multivalue import TWO_PI_I, MultiLog, lattice_gap
from chronolog.timescale import parse_timescale


def _closed_form(p, ts, s, t):
    return cmath.log(p(t) / p(s))


# ---------------------------------------------------------------------------
# window logarithm against closed forms
# ---------------------------------------------------------------------------


def test_log_on_reals_is_plain_log_quotient():
    p = ScaleFunction.from_text("t^2+1")
    ts = parse_timescale("r")
    got = log_delta_principal(p, ts, 1.0, 3.0)
    assert got == pytest.approx(math.log(5.0), abs=1e-9)


def test_log_on_unit_grid_telescopes():
    p = ScaleFunction.from_text("t+10")
    ts = parse_timescale("hz:1")
    got = log_delta_principal(p, ts, 0.0, 4.0)
    assert got == pytest.approx(math.log(14.0 / 10.0), rel=1e-13)


def test_log_on_qgrid_telescopes():
    p = ScaleFunction.from_text("t")
    ts = parse_timescale("q:2")
    got = log_delta_principal(p, ts, 1.0, 8.0)
    assert got == pytest.approx(3.0 * math.log(2.0), rel=1e-13)


def test_log_on_alternating_grid():
    p = ScaleFunction.from_text("t+3")
    ts = parse_timescale("alt:1,2")
    got = log_delta_principal(p, ts, 0.0, 6.0)
    assert got == pytest.approx(math.log(9.0 / 3.0), rel=1e-13)


def test_log_on_finite_set():
    p = ScaleFunction.from_text("t^2+1")
    ts = parse_timescale("set:-5,-4,3")
    got = log_delta_principal(p, ts, -5.0, 3.0)
    # Log(17/26) + Log(10/17), all arguments positive real
    assert got == pytest.approx(math.log(10.0 / 26.0), rel=1e-13)


def test_log_mixed_union_with_sign_change():
    # continuous pieces wind through the cut; the jump crosses zero
    p = ScaleFunction.from_text("t^3")
    ts = parse_timescale("union:[-inf,-4];[2,inf]")
    got = log_delta_principal(p, ts, -5.0, 3.0)
    want = complex(math.log(27.0 / 125.0), math.pi)
    assert got == pytest.approx(want, abs=1e-9)


def test_log_window_orientation():
    p = ScaleFunction.from_text("t+1")
    ts = parse_timescale("hz:1")
    fwd = log_delta_principal(p, ts, 0.0, 5.0)
    rev = log_delta_principal(p, ts, 5.0, 0.0)
    assert rev == -fwd


def test_log_empty_window_is_zero():
    p = ScaleFunction.from_text("t+1")
    assert log_delta_principal(p, parse_timescale("hz:1"), 3.0, 3.0) == 0j


def test_log_multi_carries_lattice():
    p = ScaleFunction.from_text("t+10")
    ts = parse_timescale("hz:1")
    m = log_delta_multi(p, ts, 0.0, 4.0)
    assert isinstance(m, MultiLog)
    assert m.period == TWO_PI_I
    assert m.rep == log_delta_principal(p, ts, 0.0, 4.0)


def test_log_complex_valued_p_mod_lattice():
    p = ScaleFunction.from_text("t+3*i")
    ts = parse_timescale("hz:1")
    got = log_delta_multi(p, ts, 0.0, 5.0)
    k, res = lattice_gap(got, _closed_form(p, ts, 0.0, 5.0))
    assert res <= 1e-9


def test_nonvanishing_floor_trips_on_exact_zero():
    p = ScaleFunction.from_text("t-2")
    ts = parse_timescale("hz:1")
    with pytest.raises(NonvanishingViolation):
        log_delta_principal(p, ts, 0.0, 4.0)


def test_nonvanishing_floor_respects_eps_min():
    p = ScaleFunction.from_text("t-1.9999")
    ts = parse_timescale("hz:1")
    log_delta_principal(p, ts, 0.0, 4.0)  # |p(2)| = 1e-4, fine by default
    with pytest.raises(NonvanishingViolation):
        log_delta_principal(p, ts, 0.0, 4.0, ToleranceConfig(eps_min=1e-3))


# ---------------------------------------------------------------------------
# nabla variant
# ---------------------------------------------------------------------------


def test_nabla_log_telescopes_backward():
    p = ScaleFunction.from_text("t+2")
    ts = parse_timescale("hz:1")
    got = log_nabla_principal(p, ts, 0.0, 5.0)
    # product of p(tau)/p(tau - 1) over tau = 1..5
    want = sum(cmath.log(p(k) / p(k - 1)) for k in range(1, 6))
    assert got == pytest.approx(want, rel=1e-13)
    assert got == pytest.approx(math.log(7.0 / 2.0), rel=1e-13)


def test_nabla_log_matches_delta_mod_lattice():
    p = ScaleFunction.from_text("t^2+t+1")
    ts = parse_timescale("hz:1")
    a = log_nabla_multi(p, ts, 1.0, 5.0)
    b = log_delta_principal(p, ts, 1.0, 5.0)
    k, res = lattice_gap(a, b)
    assert res <= 1e-9


def test_nabla_log_on_union_uses_upper_quotient():
    p = ScaleFunction.from_text("t^3")
    ts = parse_timescale("union:[-inf,-4];[2,inf]")
    got = log_nabla_principal(p, ts, -5.0, 3.0)
    k, res = lattice_gap(got, complex(math.log(27.0 / 125.0), math.pi))
    assert res <= 1e-9


# ---------------------------------------------------------------------------
# Cayley and eta variants
# ---------------------------------------------------------------------------


def test_cayley_equals_delta_principal():
    p = ScaleFunction.from_text("t^2+1")
    ts = parse_timescale("hz:1")
    a = log_cayley_principal(p, ts, 0.0, 6.0)
    b = log_delta_principal(p, ts, 0.0, 6.0)
    assert scaled_residual(a, b) <= 1e-12


def test_cayley_multi_form():
    p = ScaleFunction.from_text("t+3*i")
    ts = parse_timescale("hz:2:1")
    m = log_cayley_multi(p, ts, 1.0, 7.0)
    k, res = lattice_gap(m, log_delta_principal(p, ts, 1.0, 7.0))
    assert res <= 1e-9


@pytest.mark.parametrize("eta", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_eta_family_collapses_to_delta(eta):
    p = ScaleFunction.from_text("t^2-3*t+40")
    ts = parse_timescale("q:2")
    m = log_eta(eta, p, ts, 1.0, 16.0)
    k, res = lattice_gap(m, log_delta_principal(p, ts, 1.0, 16.0))
    assert res <= 1e-9


def test_eta_validation():
    p = ScaleFunction.from_text("t+1")
    with pytest.raises(ValueError):
        log_eta(1.5, p, parse_timescale("hz:1"), 0.0, 3.0)


def test_log_ts_dispatch():
    p = ScaleFunction.from_text("t+10")
    ts = parse_timescale("hz:1")
    s, t = 0.0, 4.0
    principal = log_delta_principal(p, ts, s, t)
    assert log_ts("delta-principal", p, ts, s, t) == principal
    assert log_ts(LogVariant.DELTA_MULTI, p, ts, s, t).rep == principal
    assert log_ts("nabla-principal", p, ts, s, t) == log_nabla_principal(p, ts, s, t)
    assert log_ts("cayley-multi", p, ts, s, t).rep == log_cayley_principal(p, ts, s, t)
    got = log_ts("eta", p, ts, s, t, eta=0.5)
    assert isinstance(got, MultiLog)
    with pytest.raises(ValueError):
        log_ts("eta", p, ts, s, t)
    with pytest.raises(ValueError):
        log_ts("no-such-variant", p, ts, s, t)


# ---------------------------------------------------------------------------
# pointwise logarithmic derivative
# ---------------------------------------------------------------------------


def test_log_derivative_reciprocal_on_reals():
    p = ScaleFunction.from_text("t")
    ts = parse_timescale("r")
    for t in (0.5, 1.0, 2.0, 10.0):
        assert log_delta_derivative(p, ts, t) == pytest.approx(1.0 / t, rel=1e-12)


def test_log_derivative_on_uniform_grid():
    p = ScaleFunction.from_text("t")
    for h in (0.5, 1.0, 2.0):
        ts = parse_timescale(f"hz:{h}")
        for k in (1, 2, 5):
            t = k * h
            want = math.log(1.0 + h / t) / h
            assert log_delta_derivative(p, ts, t) == pytest.approx(want, rel=1e-12)


def test_log_derivative_on_qgrid():
    p = ScaleFunction.from_text("t")
    q = 2.0
    ts = parse_timescale("q:2")
    for k in range(0, 8):
        t = q ** k
        want = math.log(q) / ((q - 1.0) * t)
        assert log_delta_derivative(p, ts, t) == pytest.approx(want, rel=1e-12)


def test_log_derivative_alternating_two_cases():
    p = ScaleFunction.from_text("t")
    a, b = 1.0, 2.0
    ts = parse_timescale("alt:1,2")
    t = 3.0  # next gap is alpha
    assert log_delta_derivative(p, ts, t) == pytest.approx(math.log(1 + a / t) / a, rel=1e-12)
    t = 4.0  # next gap is beta
    assert log_delta_derivative(p, ts, t) == pytest.approx(math.log(1 + b / t) / b, rel=1e-12)


def test_log_derivative_differs_from_plain_quotient_on_grids():
    p = ScaleFunction.from_text("t")
    ts = parse_timescale("hz:1")
    quot = delta_quotient(p)(2.0, 1.0)
    logd = log_delta_derivative(p, ts, 2.0)
    assert quot == pytest.approx(0.5)
    assert logd == pytest.approx(math.log(1.5))
    assert abs(quot - logd) > 0.09


# ---------------------------------------------------------------------------
# exponentials
# ---------------------------------------------------------------------------


def test_exp_delta_constant_on_unit_grid_compounds():
    ts = parse_timescale("hz:1")
    got = exp_delta(lambda tau, mu: 1.0 + 0j, ts, 0.0, 3.0)
    assert got == pytest.approx(8.0 + 0j, rel=1e-12)


def test_exp_delta_constant_on_reals_is_classical():
    ts = parse_timescale("r")
    got = exp_delta(lambda tau, mu: 0.5 + 0j, ts, 1.0, 3.0)
    assert got == pytest.approx(cmath.exp(1.0), rel=1e-9)


def test_exp_delta_accepts_scale_function_coefficient():
    ts = parse_timescale("hz:1")
    c = ScaleFunction.from_text("t")
    # product of (1 + tau) for tau = 0..3
    got = exp_delta(c, ts, 0.0, 4.0)
    assert got == pytest.approx(24.0 + 0j, rel=1e-12)


def test_exp_delta_on_qgrid_compounds():
    ts = parse_timescale("q:2")
    got = exp_delta(lambda tau, mu: 1.0 + 0j, ts, 1.0, 8.0)
    assert got == pytest.approx((1 + 1) * (1 + 2) * (1 + 4) + 0j, rel=1e-12)


def test_exp_nabla_constant_on_unit_grid():
    ts = parse_timescale("hz:1")
    got = exp_nabla(lambda tau, nu: 0.5 + 0j, ts, 0.0, 3.0)
    assert got == pytest.approx(2.0 ** 3 + 0j, rel=1e-12)  # (1 - 0.5)^-3


def test_exp_regressivity_guards():
    ts = parse_timescale("hz:1")
    with pytest.raises(NotRegressive):
        exp_delta(lambda tau, mu: -1.0 + 0j, ts, 0.0, 3.0)
    with pytest.raises(NotNuRegressive):
        exp_nabla(lambda tau, nu: 1.0 + 0j, ts, 0.0, 3.0)


def test_exp_of_log_recovers_quotient():
    p = ScaleFunction.from_text("t^2+1")
    ts = parse_timescale("hz:1")
    got = exp_delta(delta_quotient(p), ts, 1.0, 5.0)
    assert got == pytest.approx(p(5.0) / p(1.0), rel=1e-9)


def test_exp_coefficient_type_check():
    with pytest.raises(TypeError):
        exp_delta(3.0, parse_timescale("r"), 0.0, 1.0)


# ---------------------------------------------------------------------------
# older constructions
# ---------------------------------------------------------------------------


def test_huff_and_euler_cauchy_on_reals_give_ln():
    ts = parse_timescale("r")
    for t in (2.0, 5.0, 20.0):
        assert legacy_log("huff", None, ts, 1.0, t) == pytest.approx(math.log(t), abs=1e-9)
        assert legacy_log("euler-cauchy", None, ts, 1.0, t) == pytest.approx(
            math.log(t), abs=1e-9
        )


def test_huff_on_unit_grid_direct_sum():
    ts = parse_timescale("hz:1")
    got = legacy_log(LegacyKind.HUFF, None, ts, 1.0, 4.0)
    assert got == pytest.approx(2.0 / 3 + 2.0 / 5 + 2.0 / 7, rel=1e-13)


def test_euler_cauchy_on_unit_grid_direct_sum():
    ts = parse_timescale("hz:1")
    got = legacy_log("euler-cauchy", None, ts, 1.0, 4.0)
    assert got == pytest.approx(1.0 / 3 + 1.0 / 4 + 1.0 / 5, rel=1e-13)


def test_integral_quotient_drops_cylinder_map():
    p = ScaleFunction.from_text("t")
    ts = parse_timescale("hz:1")
    got = legacy_log("integral-quotient", p, ts, 1.0, 4.0)
    assert got == pytest.approx(1.0 + 0.5 + 1.0 / 3, rel=1e-13)
    # differs from the cylinder-mapped logarithm
    assert abs(got - log_delta_principal(p, ts, 1.0, 4.0)) > 0.1


def test_jackson_is_pointwise_and_ignores_t0():
    p = ScaleFunction.from_text("t^2")
    ts = parse_timescale("hz:1")
    a = legacy_log("jackson", p, ts, 1.0, 2.0)
    b = legacy_log("jackson", p, ts, -99.0, 2.0)
    assert a == b == pytest.approx(5.0 / 4.0, rel=1e-13)
    ts = parse_timescale("r")
    assert legacy_log("jackson", p, ts, 0.0, 3.0) == pytest.approx(2.0 / 3.0, rel=1e-12)


def test_jackson_differs_from_log_derivative_on_grids():
    p = ScaleFunction.from_text("t")
    ts = parse_timescale("hz:1")
    jack = legacy_log("jackson", p, ts, 0.0, 2.0)
    logd = log_delta_derivative(p, ts, 2.0)
    assert abs(jack - logd) > 0.09


def test_mozyrska_anchored_at_one():
    ts = parse_timescale("r")
    for t in (2.0, 7.0):
        assert legacy_log("mozyrska", None, ts, 0.0, t) == pytest.approx(
            math.log(t), abs=1e-9
        )
    ts = parse_timescale("hz:1")
    got = legacy_log("mozyrska", None, ts, 0.0, 5.0)
    assert got == pytest.approx(1.0 + 0.5 + 1.0 / 3 + 0.25, rel=1e-13)


def test_mozyrska_needs_one_in_scale():
    ts = parse_timescale("hz:2")
    with pytest.raises(OneNotInScale):
        legacy_log("mozyrska", None, ts, 0.0, 4.0)


def test_legacy_p_requirements():
    ts = parse_timescale("r")
    with pytest.raises(ValueError):
        legacy_log("integral-quotient", None, ts, 1.0, 2.0)
    with pytest.raises(ValueError):
        legacy_log("jackson", None, ts, 1.0, 2.0)
    with pytest.raises(ValueError):
        legacy_log("not-a-kind", None, ts, 1.0, 2.0)


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------


def test_identity_suite_all_pass_on_unit_grid():
    p = ScaleFunction.from_text("t^2+1")
    q = ScaleFunction.from_text("t+3")
    rows = identity_suite(p, q, parse_timescale("hz:1"), 0.0, 6.0, 2.0)
    assert len(rows) == 11
    assert all(r.passed for r in rows)
    names = [r.identity for r in rows]
    assert names == sorted(names)
    assert "power-rule" in names and "eta-0.25" in names


def test_identity_suite_json_shape():
    p = ScaleFunction.from_text("t+10")
    q = ScaleFunction.from_text("t+2")
    rows = identity_suite(p, q, parse_timescale("r"), 1.0, 3.0, 0.5)
    d = rows[0].to_json_dict()
    assert set(d) == {"identity", "lhs", "rhs", "residual", "lattice_k", "pass"}
    assert set(d["lhs"]) == {"re", "im"}
    assert isinstance(d["pass"], bool)


def test_identity_suite_integer_alpha_on_complex_p():
    p = ScaleFunction.from_text("t+3*i")
    q = ScaleFunction.from_text("t+10")
    rows = identity_suite(p, q, parse_timescale("hz:1"), 0.0, 5.0, -2.0)
    assert all(r.passed for r in rows)


def test_identity_suite_rejects_fractional_alpha_on_complex_p():
    p = ScaleFunction.from_text("t+3*i")
    q = ScaleFunction.from_text("t+10")
    with pytest.raises(ValueError):
        identity_suite(p, q, parse_timescale("hz:1"), 0.0, 5.0, 0.5)


def test_identity_suite_fractional_alpha_on_positive_p():
    p = ScaleFunction.from_text("t+10")
    q = ScaleFunction.from_text("t^2+1")
    rows = identity_suite(p, q, parse_timescale("q:2"), 1.0, 16.0, 0.5)
    assert all(r.passed for r in rows)


def test_scaled_residual_definition():
    assert scaled_residual(1e6 + 0j, 1e6 + 1j) == pytest.approx(1e-6)
    assert scaled_residual(0.25 + 0j, 0.5 + 0j) == pytest.approx(0.25)
