"""
Tests for parameter validation and derived quantities
"""
import numpy as np
import pytest
from pydantic import ValidationError

from src.models import SystemParams, derive
from src.utils.exceptions import ParameterValidationError


def test_derive_default_parameters(fig2_params):
    rates, sat, sb = derive(fig2_params)

    assert rates.Gamma == 3.0
    assert rates.omega12 == 12.0
    assert sat.c == 3 + 4j
    assert sat.d == 3 - 4j
    assert sat.x == pytest.approx(0.06, abs=1e-15)
    assert sat.y == pytest.approx(0.06, abs=1e-15)
    assert sat.Q == pytest.approx(0.7344, abs=1e-14)


def test_two_photon_resonance_coefficients(fig2_params):
    _, sat, sb = derive(fig2_params)

    assert sb.b_plus == 0
    assert sb.p_plus == 3 - 4j
    assert sb.q_plus == 3 - 4j
    assert sb.p_plus == sat.c.conjugate()


def test_dephasing_rates(fig2_params):
    rates, _, _ = derive(fig2_params)

    assert rates.Gamma_ee == 6.0
    assert rates.Gamma_gg == 0.0


def test_b_plus_vanishes_whenever_detunings_match(draw_params):
    rng = np.random.default_rng(11)
    for _ in range(200):
        params = draw_params(rng)
        params = params.replace(delta=params.Delta)
        assert derive(params).sideband.b_plus == 0


def test_symmetric_pumping_when_control_detuning_matches_splitting(draw_params):
    rng = np.random.default_rng(12)
    for _ in range(200):
        params = draw_params(rng)
        params = params.replace(Delta=params.B_prime - params.B)
        _, sat, _ = derive(params)
        assert abs(sat.c) == pytest.approx(abs(sat.d), rel=1e-14)
        assert sat.x == pytest.approx(sat.y, rel=1e-12)


def test_coefficient_real_parts(draw_params):
    rng = np.random.default_rng(13)
    for _ in range(200):
        params = draw_params(rng)
        rates, sat, sb = derive(params)
        floor = min(rates.Gamma, rates.Gamma_ee)
        for z in (sb.a_plus, sb.a_minus, sb.p_plus, sb.p_minus, sb.q_plus, sb.q_minus):
            assert z.real >= floor
        assert sb.b_plus.real == 0.0
        assert sb.b_minus.real == 0.0
        assert sat.x > 0 and sat.y > 0 and sat.Q > 0


@pytest.mark.parametrize("field,value", [("G", 0.0), ("gamma1", 0.0), ("gamma2", -1.0), ("B", float("nan"))])
def test_invalid_parameters_rejected(field, value):
    with pytest.raises(ValidationError):
        SystemParams(**{field: value})


def test_derive_rechecks_copied_parameters(fig2_params):
    broken = fig2_params.model_copy(update={"G": 0j})

    with pytest.raises(ParameterValidationError):
        derive(broken)


def test_complex_coupling_accepted_from_strings():
    params = SystemParams(G="0.5+0.25j")

    assert params.G == 0.5 + 0.25j
    assert derive(params).saturation.x > 0


def test_replace_validates(fig2_params):
    assert fig2_params.replace(delta=6.0).delta == 6.0
    with pytest.raises(ValidationError):
        fig2_params.replace(gamma1=-2.0)


def test_locked_and_resonant_copies(fig2_params):
    locked = fig2_params.locked(10.25)
    assert locked.delta == locked.Delta == 10.25

    resonant = fig2_params.replace(delta=1.0, Delta=-3.0).at_two_photon_resonance()
    assert resonant.delta == resonant.Delta == 4.0


def test_parameters_use_builtin_complex_support(fig2_params):
    assert not SystemParams.model_config.get("arbitrary_types_allowed", False)
    assert "G" in SystemParams.model_json_schema()["properties"]

    restored = SystemParams.model_validate(fig2_params.replace(G=0.5 - 0.25j).model_dump(mode="json"))
    assert restored.G == 0.5 - 0.25j
