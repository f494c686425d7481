import math

import pytest

import seqdef


def test_er_thresholds():
    model = seqdef.DegreeModel.erdos_renyi(4.0)
    m = seqdef.moments(model)
    assert (m.mean_degree, m.second_moment, m.tau) == pytest.approx((4.0, 20.0, 5.0))
    assert seqdef.qc_random(model) == pytest.approx(0.75, abs=1e-12)
    assert seqdef.qc_intentional(model) < 0.75


def test_power_law_intentional_root():
    model = seqdef.DegreeModel.power_law(2.5, n=10**12)
    x = ((3 + math.sqrt(5)) / 2) ** 2
    assert seqdef.qc_intentional(model) == pytest.approx(x ** -1.5, abs=1e-3)


def test_sprt_formulas():
    d = seqdef.DetectorProfile(0.9, 0.001)
    r = seqdef.RiskBudget(0.01, 0.001)
    assert seqdef.expected_reports_random(0.5, d, r) == pytest.approx(1.89709, rel=1e-5)
    assert seqdef.expected_reports_intentional(d, r) == pytest.approx(0.779476, rel=1e-5)
    assert seqdef.expected_reports_random(1.0, d, r) == seqdef.expected_reports_intentional(d, r)
    assert seqdef.normal_cdf(0.0) == 0.5


def test_robust_design():
    r = seqdef.RiskBudget()
    assert seqdef.feasible(seqdef.DetectorProfile(0.9, 0.001), r, 1)
    assert seqdef.min_detection(0.001, r, 10) <= seqdef.min_detection(0.001, r, 5)
    with pytest.raises(seqdef.NumericalError):
        seqdef.min_detection(0.5, r, 1)


def test_rng_is_deterministic():
    a = seqdef.philox_u64(7, 3, 5)
    assert a == seqdef.philox_u64(7, 3, 5)
    assert a != seqdef.philox_u64(7, 4, 5)


def test_cli_command_is_deterministic():
    first = seqdef.run_command("operation-curves", {"sweep.mc": "1,10"})
    assert first == seqdef.run_command("operation-curves", {"sweep.mc": "1,10"})
    assert first.startswith("# seqdef operation-curves")


def test_bad_config_key():
    with pytest.raises(ValueError):
        seqdef.run_command("m1", {"no.such.key": "1"})
