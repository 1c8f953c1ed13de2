import math

import numpy as np
import pytest

from fourierlab import (DomainError, LZParams, PittParams, StepFunction,
                        TrigPolynomial, TypeNotion, ValueSpace, bochkarev_decay,
                        dual_exponent, exp_summability, lz_norm_sequence,
                        pitt_ratio, pitt_region_classify, stein_weiss_check,
                        type_test_ratio, zygmund_check)
from fourierlab.quadrature import QuadratureConfig

from conftest import philox, random_poly


def classify(d, p, q, beta, gamma, p0):
    return pitt_region_classify(PittParams(d, p, q, beta, gamma, p0)).label()


def test_region_pinned_examples():
    # classical Plancherel point sits at the closed endpoint, case (ii)
    assert classify(1, 2.0, 2.0, 0.0, 0.0, 2.0) == "endpoint_ii"
    # p = q = p0 = 1.5: the endpoint cannot be attained
    assert classify(1, 1.5, 1.5, 0.0, 1.0 / 3.0, 1.5) == "endpoint_fails"
    # interior point: max{0, 1/1.2 + 1/2 - 1} = 1/3 < 0.4 < 1/2
    beta = 0.4 + (1.0 - 1.0 / 1.2 - 1.0 / 2.0)
    assert classify(1, 1.2, 2.0, beta, 0.4, 2.0) == "interior"


def test_region_each_endpoint_case_hit():
    # (i): p = q outside [p0, p0'], p0 != 2
    g = max(0.0, 1.0 / 1.2 + 1.0 / 1.2 - 1.0)
    assert classify(1, 1.2, 1.2, g + 1.0 - 2.0 / 1.2, g, 1.5) == "endpoint_i"
    # (ii): p = q, p0 = 2
    assert classify(1, 3.0, 3.0, 1.0 / 3.0, 0.0, 2.0) == "endpoint_ii"
    # (iii): p < q with p <= p0
    g3 = max(0.0, 1.0 / 1.4 + 1.0 / 2.0 - 1.0)
    b3 = g3 + (1.0 - 1.0 / 1.4 - 1.0 / 2.0)
    assert classify(1, 1.4, 2.0, b3, g3, 1.5) == "endpoint_iii"
    # (iv): p in (p0, p0'), q >= p0'
    g4 = max(0.0, 1.0 / min(2.0, 1.5) + 1.0 / 4.0 - 1.0)
    b4 = g4 + (1.0 - 1.0 / 2.0 - 1.0 / 4.0)
    assert classify(1, 2.0, 4.0, b4, g4, 1.5) == "endpoint_iv"
    # failing endpoint with p < q: p in (p0, p0'), q < p0'
    g5 = 1.0 / 1.5 + 1.0 / 2.5 - 1.0
    b5 = g5 + (1.0 - 1.0 / 2.0 - 1.0 / 2.5)
    assert classify(1, 2.0, 2.5, b5, g5, 1.5) == "endpoint_fails"


def test_region_scaling_and_outside():
    assert classify(1, 1.5, 2.0, 0.4, 0.1, 2.0) == "scaling_violated"
    beta = 0.49 + (1.0 - 1.0 / 1.2 - 1.0 / 2.0)
    assert classify(1, 1.2, 2.0, beta + 0.01, 0.5, 2.0) in ("outside",
                                                            "scaling_violated")
    # gamma >= d/q on the scaling line is outside
    assert classify(1, 1.2, 2.0, 0.5 + 1.0 - 1.0 / 1.2 - 0.5, 0.5, 2.0) == "outside"


def test_region_rejects_bad_parameters():
    with pytest.raises(DomainError):
        PittParams(1, 2.0, 1.5, 0.0, 0.0, 2.0)  # p > q
    with pytest.raises(DomainError):
        PittParams(1, 1.0, 2.0, 0.0, 0.0, 2.0)
    with pytest.raises(DomainError):
        PittParams(1, 1.5, 2.0, 0.0, 0.0, 2.5)


def test_region_duality_symmetry():
    rng = philox(17)
    count = 0
    while count < 300:
        p0 = float(rng.uniform(1.05, 2.0))
        p = float(rng.uniform(1.05, 4.0))
        q = float(rng.uniform(p, 5.0))
        gamma = float(rng.uniform(0.0, 1.0 / q))
        beta = gamma + (1.0 - 1.0 / p - 1.0 / q)
        if beta < 0:
            continue
        qp, pp = dual_exponent(q), dual_exponent(p)
        dual_beta = gamma  # roles swap under (p,q) -> (q', p')
        if not (qp <= pp):
            continue
        count += 1
        a = classify(1, p, q, beta, gamma, p0)
        b = classify(1, qp, pp, gamma, beta, p0)
        assert a == b, (p, q, beta, gamma, p0)


def test_region_p_equals_q_specialization():
    # at p=q the general threshold equals the min{p0,q} formula
    rng = philox(23)
    for _ in range(200):
        p0 = float(rng.uniform(1.05, 2.0))
        q = float(rng.uniform(1.05, 5.0))
        general = max(0.0, 1.0 / min(q, p0) + 1.0 / q - 1.0)
        special = max(0.0, 1.0 / min(p0, q) + 1.0 / q - 1.0)
        assert general == pytest.approx(special)
        params = PittParams(1, q, q, general + 1.0 - 2.0 / q + 0.01, general + 0.01,
                            p0) if general + 1.0 - 2.0 / q + 0.01 >= 0 else None
        if params is not None and params.gamma < 1.0 / q:
            assert pitt_region_classify(params).label() in ("interior", "outside")


def test_pitt_ratio_single_mode_and_constant():
    space = ValueSpace(2.0, 1)
    params = PittParams(1, 2.0, 2.0, 0.0, 0.0, 2.0)
    f1 = TrigPolynomial(space, 1, {1: space.point([1.0])})
    r1 = pitt_ratio(f1, params)
    assert r1.ratio == pytest.approx(1.0, rel=1e-10)
    f0 = TrigPolynomial(space, 1, {0: space.point([2.0])})
    r0 = pitt_ratio(f0, params)
    assert r0.ratio == pytest.approx(1.0, rel=1e-10)
    with pytest.raises(DomainError):
        pitt_ratio(TrigPolynomial(space, 1, {0: space.point([0.0])}), params)


def test_pitt_ratio_homogeneous(rng):
    space = ValueSpace(1.5, 2)
    f = random_poly(rng, d=1, N=6, space=space)
    g = TrigPolynomial(space, 1, {n: x.scaled(3.7) for n, x in f.coefficients.items()})
    params = PittParams(1, 1.5, 2.0, 0.3 + 1.0 - 1.0 / 1.5 - 0.5, 0.3, 2.0)
    assert pitt_ratio(f, params).ratio == pytest.approx(pitt_ratio(g, params).ratio,
                                                        rel=1e-10)


def test_pitt_ratio_line_path():
    space = ValueSpace(2.0, 1)
    step = StepFunction(space, 1, 1.0, {0: space.point([1.0])})
    params = PittParams(1, 2.0, 2.0, 0.0, 0.0, 2.0)
    res = pitt_ratio(step, params, window=256.0)
    assert res.rhs == pytest.approx(1.0, rel=1e-12)
    assert res.ratio == pytest.approx(1.0, abs=2e-3)


def test_type_ratio_single_mode_normalizations():
    # type ratios are exactly 1 on a single mode; cotype ratios equal the
    # fixed quasi-norm constant of the function-side space (1 for the plain
    # Hausdorff-Young direction)
    space = ValueSpace(2.0, 2)
    f = TrigPolynomial(space, 1, {0: space.point([1.0, 1.0])})
    for notion in ("fourier", "paley", "hl"):
        assert type_test_ratio(f, TypeNotion(notion, "type", 1.5)) \
            == pytest.approx(1.0, rel=1e-8)
    q = 3.0
    assert type_test_ratio(f, TypeNotion("fourier", "cotype", q)) \
        == pytest.approx(1.0, rel=1e-8)
    qp = dual_exponent(q)
    assert type_test_ratio(f, TypeNotion("paley", "cotype", q)) \
        == pytest.approx((q / qp) ** (1.0 / q), rel=1e-3)
    from fourierlab.sharpness import torus_weight_integral

    assert type_test_ratio(f, TypeNotion("hl", "cotype", q)) \
        == pytest.approx(torus_weight_integral(1, q - 2.0) ** (-1.0 / q), rel=1e-8)


def test_fourier_type2_hilbert_bound(rng):
    for _ in range(10):
        f = random_poly(rng, d=1, N=12, space=ValueSpace(2.0, 3))
        ratio = type_test_ratio(f, TypeNotion("fourier", "type", 2.0))
        assert ratio <= 1.0 + 1e-10


def test_paley_type_bounded_for_matching_space(rng):
    # X = l^{p'} with p = 1.5: Paley type 1.5 ratios stay bounded across N
    p = 1.5
    space = ValueSpace(dual_exponent(p), 4)
    ratios = []
    for N in (8, 16, 32):
        f = random_poly(rng, d=1, N=N, space=space)
        ratios.append(type_test_ratio(f, TypeNotion("paley", "type", p)))
    assert max(ratios) < 4.0
    with pytest.raises(DomainError):
        TypeNotion("paley", "type", 2.5)
    with pytest.raises(DomainError):
        TypeNotion("hl", "cotype", 1.5)


def test_zygmund_single_coefficient_analytic():
    space = ValueSpace(2.0, 1)
    f = TrigPolynomial(space, 1, {0: space.point([3.0])})
    lhs, rhs = zygmund_check(f, 0.0, 1.0, "std")
    assert lhs == pytest.approx(3.0, rel=1e-12)
    assert rhs == pytest.approx(6.0, rel=1e-9)


def test_zygmund_zero_function():
    space = ValueSpace(2.0, 1)
    f = TrigPolynomial(space, 1, {0: space.point([0.0])})
    assert zygmund_check(f, 0.0, 1.0, "std") == (0.0, 0.0)


def test_zygmund_ratio_stable_across_truncation():
    space = ValueSpace(2.0, 1)
    ratios = []
    for N in (100, 400, 1000):
        f = TrigPolynomial(space, 1,
                           {n: space.point([1.0 / (1.0 + abs(n))])
                            for n in range(-N, N + 1)})
        lhs, rhs = zygmund_check(f, 0.0, 1.0, "std")
        ratios.append(lhs / rhs)
    assert max(ratios) < 2.0
    assert max(ratios) - min(ratios) < 0.2 * max(ratios)


def test_zygmund_variant_hypotheses():
    space = ValueSpace(2.0, 1)
    f = TrigPolynomial(space, 1, {0: space.point([1.0])})
    with pytest.raises(DomainError):
        zygmund_check(f, -2.0, 1.0, "std")
    with pytest.raises(DomainError):
        zygmund_check(f, 0.0, 1.0, "sequence")
    with pytest.raises(DomainError):
        zygmund_check(f, 0.0, math.inf, "endpoint")
    with pytest.raises(DomainError):
        zygmund_check(f, 0.0, 1.0, "bogus")


def test_exp_summability_examples():
    assert exp_summability([0.0, 0.0], 1.0, 1.0, 1.0) == 0.0
    assert exp_summability([1.0], 1.0, 1.0, 1.0) == pytest.approx(math.exp(-1.0))
    with pytest.raises(DomainError):
        exp_summability([1.0], 1.0, -2.0, 1.0)
    with pytest.raises(DomainError):
        exp_summability([1.0], 0.0, 1.0, 1.0)


def test_exp_summability_log_family_oracle():
    # c_n = 1/log(2+|n|)^{b+1/q}: sum exp(-2 log(2+|n|)) = sum (2+|n|)^{-2}
    b, q, a = 0.5, 2.0, 2.0
    ns = np.arange(-10_000, 10_001)
    norms = np.log(2.0 + np.abs(ns)) ** -(b + 1.0 / q)
    got = exp_summability(norms, a, b, q)
    oracle = math.fsum((2.0 + abs(int(n))) ** -2.0 for n in ns)
    assert got == pytest.approx(oracle, abs=1e-8)


def test_exp_summability_monotonicity():
    norms = [0.5, 1.0, 2.0]
    s1 = exp_summability(norms, 1.0, 1.0, 1.0)
    s2 = exp_summability(norms, 2.0, 1.0, 1.0)
    assert s2 < s1
    bigger = exp_summability([1.0, 2.0, 4.0], 1.0, 1.0, 1.0)
    assert bigger > s1


def test_exp_summability_budget_check():
    norms = [1.0, 0.5]
    budget = lz_norm_sequence(norms, LZParams(1.0, 1.0, 2.0))
    exp_summability(norms, 1.0, 1.0, 1.0, rho=budget * 1.01)
    with pytest.raises(DomainError):
        exp_summability(norms, 1.0, 1.0, 1.0, rho=budget * 0.5)


def test_bochkarev_scale_invariance_and_rejections(rng):
    space = ValueSpace(2.0, 1)
    f = random_poly(rng, d=1, N=24, space=space)
    v = bochkarev_decay(f, 2.0, 4.0)
    g = TrigPolynomial(space, 1, {n: x.scaled(11.0) for n, x in f.coefficients.items()})
    assert bochkarev_decay(g, 2.0, 4.0) == pytest.approx(v, rel=1e-12)
    with pytest.raises(DomainError):
        bochkarev_decay(f, 2.0, 1.5)  # q <= p0
    with pytest.raises(DomainError):
        bochkarev_decay(TrigPolynomial(space, 1, {0: space.point([0.0])}), 2.0, 4.0)


def test_bochkarev_statistic_bounded_across_sweep():
    space = ValueSpace(2.0, 1)
    sups = {}
    for N in (16, 64):
        sup = 0.0
        for k in range(40):
            g = philox(5000 + N, k)
            f = random_poly(g, d=1, N=N, space=space)
            sup = max(sup, bochkarev_decay(f, 2.0, 4.0))
        sups[N] = sup
    assert sups[64] < 1.2 * sups[16] + 0.2


def test_stein_weiss_zero_and_homogeneity():
    space = ValueSpace(2.0, 1)
    zero = StepFunction(space, 1, 1.0, {0: space.point([0.0])})
    res = stein_weiss_check(zero, 2.0, 2.0, 0.5, 0.25, 0.25)
    assert (res.lhs, res.rhs, res.ratio) == (0.0, 0.0, 0.0)
    g = StepFunction(space, 1, 1.0, {0: space.point([1.0])})
    g2 = StepFunction(space, 1, 1.0, {0: space.point([2.0])})
    r1 = stein_weiss_check(g, 2.0, 2.0, 0.5, 0.25, 0.25)
    r2 = stein_weiss_check(g2, 2.0, 2.0, 0.5, 0.25, 0.25)
    assert r2.lhs == pytest.approx(2 * r1.lhs, rel=1e-10)
    assert r2.rhs == pytest.approx(2 * r1.rhs, rel=1e-10)


def test_stein_weiss_ratio_stable_under_refinement():
    space = ValueSpace(2.0, 1)
    g = StepFunction(space, 1, 1.0, {0: space.point([1.0])})
    base = QuadratureConfig()
    r1 = stein_weiss_check(g, 2.0, 2.0, 0.5, 0.25, 0.25, base)
    r2 = stein_weiss_check(g, 2.0, 2.0, 0.5, 0.25, 0.25, base.doubled())
    assert abs(r1.ratio - r2.ratio) / r1.ratio < 0.01


def test_stein_weiss_named_rejections():
    space = ValueSpace(2.0, 1)
    g = StepFunction(space, 1, 1.0, {0: space.point([1.0])})
    cases = [
        ((0.9, 2.0, 0.5, 0.25, 0.25), "1 < u <= v"),
        ((2.0, 2.0, 1.2, 0.25, 0.25), "lambda"),
        ((2.0, 2.0, 0.1, 0.6, 0.25), "a < d/v"),
        ((2.0, 2.0, 0.1, 0.25, 0.6), "b < d/u'"),
        ((2.0, 2.0, 0.9, -0.2, 0.1), "a + b"),
        ((2.0, 2.0, 0.4, 0.25, 0.25), "lambda + a + b"),
    ]
    for args, frag in cases:
        with pytest.raises(DomainError) as excinfo:
            stein_weiss_check(g, *args)
        assert frag.split()[0] in excinfo.value.condition
