import math

import numpy as np
import pytest

from fourierlab import (CounterexampleSpec, DomainError, LZParams, ValueSpace,
                        build_counterexample, dense_schedule, dual_exponent,
                        fit_growth, growth_series, lz_norm_sequence,
                        sharpness_verdict, weighted_lp_norm_sequence,
                        weighted_lp_norm_torus)
from fourierlab.sharpness import (MODEL_SCALES, expected_profile, index_count,
                                  torus_weight_integral, _lhs_value, _rhs_value)

SHORT = (16, 32, 64, 128)


def test_build_ex411_coefficients():
    spec = CounterexampleSpec("EX411", {"p": 1.5, "eps": 0.5}, schedule=SHORT)
    poly, space = build_counterexample(spec, 10)
    assert len(poly.coefficients) == 20
    assert space.r == pytest.approx(3.0)  # l^{p'} with p = 1.5
    for n, x in poly.coefficients.items():
        expected = abs(n) ** (-1.0 / 3.0) * (1.0 + math.log(abs(n))) ** -0.5
        assert x.norm() == pytest.approx(expected, rel=1e-12)
    # coefficients are coordinate multiples of distinct basis vectors
    mat = np.stack([x.entries for x in poly.coefficients.values()])
    assert np.count_nonzero(mat) == 20


def test_build_t61_spot_value():
    spec = CounterexampleSpec("T61", {"q0": 3.0, "alpha": 0.7}, schedule=SHORT)
    poly, space = build_counterexample(spec, 4)
    assert set(poly.coefficients) == {n for n in range(-4, 5) if n != 0}
    q0p = 1.5
    spot = 2.0 ** (-1.0 / q0p) * math.log(2.0) ** (-0.7 / q0p)
    assert poly.coefficients[1].norm() == pytest.approx(spot, rel=1e-12)
    assert poly.coefficients[-1].norm() == pytest.approx(spot, rel=1e-12)


@pytest.mark.parametrize("fam", ["EX411", "EX412", "R56_strict", "R56_endpoint",
                                 "T61", "PITT_TYPE", "Z_SHARP", "Z_LOGLOG",
                                 "BOCH_SHARP_b_eq", "BOCH_SHARP_b_gt"])
def test_single_shell_build_finite(fam):
    spec = CounterexampleSpec(fam, schedule=SHORT)
    poly, _ = build_counterexample(spec, 1)
    norms = list(poly.coefficient_norms().values())
    assert len(norms) == 2
    assert all(np.isfinite(v) and v > 0 for v in norms)


def test_build_is_deterministic():
    spec = CounterexampleSpec("EX411", schedule=SHORT)
    a, _ = build_counterexample(spec, 12)
    b, _ = build_counterexample(spec, 12)
    for n in a.coefficients:
        assert np.array_equal(a.coefficients[n].entries, b.coefficients[n].entries)


def test_parameter_windows_named():
    with pytest.raises(DomainError) as e1:
        CounterexampleSpec("EX411", {"p": 1.5, "eps": 0.2})
    assert "1/p'" in e1.value.condition
    with pytest.raises(DomainError) as e2:
        CounterexampleSpec("EX411", {"p": 1.5, "eps": 0.9})
    assert "1/p" in e2.value.condition
    with pytest.raises(DomainError) as e3:
        CounterexampleSpec("T61", {"q0": 3.0, "alpha": 0.3})
    assert "1/(q0 - 1)" in e3.value.condition
    with pytest.raises(DomainError):
        CounterexampleSpec("NOPE")
    with pytest.raises(DomainError):
        CounterexampleSpec("Z_SHARP", {"q": 1.0, "b": -0.5})
    with pytest.raises(DomainError):
        CounterexampleSpec("Z_SHARP", control=True)


def test_growth_series_validation():
    spec = CounterexampleSpec("EX411", schedule=(8, 16, 32))
    with pytest.raises(DomainError):
        growth_series(spec, "lhs")
    with pytest.raises(DomainError):
        growth_series(CounterexampleSpec("EX411", schedule=SHORT), "middle")


def test_ex411_series_match_paper_displays():
    # lhs^p is the partial sum of (1+log n)^{-eps p}/n against the HL weight;
    # rhs is the constant-in-t value-space mass
    spec = CounterexampleSpec("EX411", {"p": 1.5, "eps": 0.5}, schedule=SHORT)
    N = 64
    lhs = _lhs_value(spec, N)
    oracle = math.fsum(
        2.0 * (n ** (-1 / 3.0) * (1 + math.log(n)) ** -0.5) ** 1.5
        * (n + 1.0) ** (-0.5) for n in range(1, N + 1)) ** (1 / 1.5)
    assert lhs == pytest.approx(oracle, rel=1e-12)
    rhs = _rhs_value(spec, N)
    oracle_rhs = math.fsum(
        2.0 * (n ** (-1 / 3.0) * (1 + math.log(n)) ** -0.5) ** 3.0
        for n in range(1, N + 1)) ** (1 / 3.0)
    assert rhs == pytest.approx(oracle_rhs, rel=1e-12)


def test_fast_path_matches_generic_evaluators_small_n():
    # EX411: lhs via the generic weighted sequence norm on the built polynomial
    spec = CounterexampleSpec("EX411", {"p": 1.5, "eps": 0.5}, schedule=SHORT)
    N = 12
    poly, space = build_counterexample(spec, N)
    p = 1.5
    lhs_generic = weighted_lp_norm_sequence(poly, p, -1.0 * (2.0 - p) / p)
    assert lhs_generic == pytest.approx(_lhs_value(spec, N), rel=1e-12)
    rhs_generic = weighted_lp_norm_torus(poly, p, 0.0)
    assert rhs_generic == pytest.approx(_rhs_value(spec, N), rel=1e-10)
    # Z_SHARP lhs: constant-norm function, norm = unit LZ constant * mass
    specz = CounterexampleSpec("Z_SHARP", schedule=SHORT)
    polyz, spacez = build_counterexample(specz, N)
    mass = weighted_lp_norm_sequence(polyz, 1.0, 0.0)
    assert 2.0 * mass == pytest.approx(_lhs_value(specz, N), rel=1e-9)
    # Z_SHARP rhs via the generic Lorentz-Zygmund sequence norm
    rhs_generic = lz_norm_sequence(list(polyz.coefficient_norms().values()),
                                   LZParams(1.0, 1.0, -0.5))
    assert rhs_generic == pytest.approx(_rhs_value(specz, N), rel=1e-12)


def test_t61_shell_counts():
    assert index_count(1, 5, "max") == 10  # (2N)^d lattice points on the line
    assert index_count(2, 5, "max") == 11 ** 2 - 1
    spec = CounterexampleSpec("T61", d=2, schedule=(8, 16, 32, 64))
    poly, space = build_counterexample(spec, 8)
    assert len(poly.coefficients) == 17 ** 2 - 1
    assert space.m == 17 ** 2 - 1


def test_fit_growth_synthetic_oracles():
    ns = [2 ** k for k in range(7, 19, 2)]
    const = [(n, 5.0) for n in ns]
    fit = fit_growth(const)
    assert fit.model == "bounded" and fit.exponent == 0.0 and fit.r_squared == 1.0

    glog = MODEL_SCALES["log_power"]
    data = [(n, glog(n) ** 0.25) for n in ns]
    fit = fit_growth(data)
    assert fit.model == "log_power"
    assert fit.exponent == pytest.approx(0.25, abs=0.02)
    assert fit.r_squared >= 0.99

    gll = MODEL_SCALES["loglog_power"]
    data = [(n, gll(n) ** 1.0) for n in ns]
    fit = fit_growth(data)
    assert fit.model == "loglog_power"
    assert fit.exponent == pytest.approx(1.0, abs=0.1)
    assert fit.r_squared >= 0.95

    data = [(n, 0.3 * n ** 0.4) for n in ns]
    fit = fit_growth(data)
    assert fit.model == "power"
    assert fit.exponent == pytest.approx(0.4, abs=0.02)

    with pytest.raises(DomainError):
        fit_growth([(128, 1.0), (256, 2.0)])
    with pytest.raises(DomainError):
        fit_growth([(n, -1.0) for n in ns])


def test_verdict_all_families_sharp_at_defaults():
    for fam in ("EX411", "EX412", "R56_strict", "R56_endpoint", "T61",
                "PITT_TYPE", "Z_SHARP", "Z_LOGLOG", "BOCH_SHARP_b_eq",
                "BOCH_SHARP_b_gt"):
        rep = sharpness_verdict(CounterexampleSpec(fam))
        assert rep.verdict == "Sharp", (fam, rep.lhs_fit)
        assert rep.lhs_fit.r_squared >= 0.9


def test_verdict_control_specs_not_detected():
    controls = [("EX411", {"eps": 0.75}), ("EX412", {"eps": 0.55}),
                ("R56_strict", {"eps": 0.55}), ("R56_endpoint", {"eta": 0.6}),
                ("T61", {"alpha": 1.2}), ("BOCH_SHARP_b_eq", {"delta": 0.6}),
                ("BOCH_SHARP_b_gt", {"eps": 0.9})]
    for fam, params in controls:
        rep = sharpness_verdict(CounterexampleSpec(fam, params, control=True))
        assert rep.verdict == "NotDetected", fam


def test_expected_profiles_have_provenance():
    for fam in ("EX411", "T61", "Z_LOGLOG", "BOCH_SHARP_b_gt"):
        prof = expected_profile(CounterexampleSpec(fam, schedule=SHORT))
        assert prof.lhs.provenance
        assert prof.rhs.provenance


def test_rhs_certified_limit_bounds_later_values():
    # the analytic tail certificate at small N must dominate later values
    spec_small = CounterexampleSpec("EX411", schedule=(128, 256, 512, 1024))
    rep = sharpness_verdict(spec_small)
    rhs_much_later = _rhs_value(CounterexampleSpec("EX411"), 2 ** 17)
    assert rep.rhs_certified_limit is not None
    assert rhs_much_later <= rep.rhs_certified_limit


def test_dense_schedule_shape():
    s = dense_schedule(top=2 ** 12, start=2 ** 7, ratio=1.5)
    assert s[0] == 2 ** 7 and s[-1] == 2 ** 12
    assert all(b > a for a, b in zip(s, s[1:]))


def test_torus_weight_integral_closed_forms():
    assert torus_weight_integral(1, 1.0) == pytest.approx(0.25)
    assert torus_weight_integral(1, 0.0) == pytest.approx(1.0)
    assert torus_weight_integral(2, 0.0) == pytest.approx(1.0, rel=1e-10)
    exact = (math.sqrt(2.0) + math.asinh(1.0)) / 6.0
    assert torus_weight_integral(2, 1.0) == pytest.approx(exact, rel=1e-10)
    with pytest.raises(DomainError):
        torus_weight_integral(1, -1.0)


def test_d2_families_sharp_with_extended_schedule():
    sched = (16, 32, 64, 128, 256)
    for fam in ("EX411", "R56_strict", "Z_SHARP"):
        rep = sharpness_verdict(CounterexampleSpec(fam, d=2, schedule=sched))
        assert rep.verdict == "Sharp", fam
