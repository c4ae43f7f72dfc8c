"""Engine behavior: sampling, determinism, reports, case registry."""

import random

import pytest

from srcid.engine import (
    PointContext,
    SamplingConfig,
    UnknownCaseError,
    get_case,
    list_cases,
    match_cases,
    point_seed,
    run_case,
    sample_params,
    verify_degeneration,
    verify_identity,
    verify_q_identities,
    verify_specialization,
)
from srcid.fields import COMPLEX, EXACT


def test_registry_covers_every_kind():
    kinds = {c.kind for c in list_cases()}
    assert kinds == {
        "identity",
        "factorization",
        "determinant",
        "specialization",
        "degeneration",
        "q_identity",
        "wallcrossing",
        "lascoux",
    }
    # the determinant availability matrix is fully registered
    ids = {c.case_id for c in list_cases()}
    for regime, families in (
        ("elliptic", ("mpt", "bs")),
        ("trig", ("mpt", "scalar_product", "dwbc", "bs", "bs_limit")),
        ("rational", ("mpt", "scalar_product", "dwbc", "bs", "bs_limit")),
    ):
        for family in families:
            for side in ("F", "G"):
                assert f"{regime}_{family}_{side}" in ids
    assert "rational_ik" in ids


def test_sampling_is_deterministic():
    cfg = SamplingConfig(master_seed=123, points=2)
    a = sample_params("rational", cfg, 0)
    b = sample_params("rational", cfg, 0)
    assert a == b
    c = sample_params("rational", cfg, 1)
    assert c != a


def test_sampling_smoke_many_draws():
    cfg = SamplingConfig(master_seed=5, points=1)
    for regime in ("rational", "trig"):
        for index in range(500):
            params = sample_params(regime, cfg, index)
            assert len(params.u) <= 5 and len(params.v) <= 5
    for index in range(50):
        params = sample_params("elliptic", cfg, index)
        assert 1 <= len(params.u) <= 4


def test_empty_sizes_are_valid():
    cfg = SamplingConfig(master_seed=11, points=1, fixed_sizes=(0, 0))
    params = sample_params("rational", cfg, 0)
    assert params.u == () and params.v == ()


def test_reports_are_deterministic():
    cfg = SamplingConfig(master_seed=99, points=4)
    rep1 = run_case("rational_source_identity", cfg)
    rep2 = run_case("rational_source_identity", cfg)
    d1 = rep1.as_dict(include_timings=False)
    d2 = rep2.as_dict(include_timings=False)
    assert d1 == d2
    assert rep1.as_dict()["millis"] >= 0.0


def test_exact_field_pass_means_literal_equality():
    cfg = SamplingConfig(master_seed=7, points=5, field=EXACT)
    rep = run_case("trig_source_identity", cfg)
    assert rep.passed
    assert rep.tol == 0.0
    assert all(p.residual == 0.0 for p in rep.points)


def test_complex_field_override():
    cfg = SamplingConfig(master_seed=7, points=3, field=COMPLEX)
    rep = run_case("rational_source_identity", cfg)
    assert rep.passed
    assert rep.field == COMPLEX
    assert rep.tol == 1e-10


def test_unknown_case_raises():
    with pytest.raises(UnknownCaseError):
        get_case("nonexistent_case")


def test_unsupported_field_rejected():
    cfg = SamplingConfig(master_seed=7, points=1, field=EXACT)
    with pytest.raises(ValueError):
        run_case("elliptic_source_identity", cfg)


def test_match_cases_filters():
    rational = match_cases(None, regime="rational")
    assert rational and all(c.regime == "rational" for c in rational)
    globbed = match_cases(["*_mpt_?"], regime="all")
    assert {c.case_id for c in globbed} == {
        "elliptic_mpt_F",
        "elliptic_mpt_G",
        "trig_mpt_F",
        "trig_mpt_G",
        "rational_mpt_F",
        "rational_mpt_G",
    }
    exact_only = match_cases(None, regime="all", field_name=EXACT)
    assert all(EXACT in c.fields for c in exact_only)


def test_point_seed_format():
    assert point_seed(42, "case", 3) == "42:case:3"


def test_kind_wrappers_run():
    cfg = SamplingConfig(master_seed=3, points=2)
    assert verify_identity("rational_source_identity", cfg).passed
    assert verify_specialization("rational_vanishing", cfg).passed
    assert verify_degeneration("lambda_zero_reduction", cfg).passed


def test_verify_q_identities_merges():
    cfg = SamplingConfig(master_seed=3, points=2)
    rep = verify_q_identities(cfg)
    assert rep.passed
    q_cases = [c for c in list_cases() if c.kind == "q_identity"]
    assert len(rep.points) == 2 * len(q_cases)
    labels = {p.label.split(":")[0] for p in rep.points}
    assert labels == {c.case_id for c in q_cases}


def test_every_registered_case_passes_at_default_tolerance():
    cfg = SamplingConfig(master_seed=20260801, points=4)
    for case in list_cases():
        rep = run_case(case.case_id, cfg)
        assert rep.passed, (case.case_id, rep.max_rel_err)


def test_point_context_rejection_sampling():
    cfg = SamplingConfig(master_seed=1, points=1)
    ctx = PointContext(random.Random("x"), EXACT, cfg)
    values = ctx.distinct_scalars(6)
    assert len(set(values)) == 6
    # the fraction helper honors the nonzero flag
    assert all(ctx.fraction(nonzero=True) != 0 for _ in range(50))


def test_fixed_sizes_pin_the_case_dimensions():
    cfg = SamplingConfig(master_seed=31, points=3, fixed_sizes=(2, 4))
    rep = run_case("rational_source_identity", cfg)
    assert rep.passed


def test_singular_config_rejected():
    with pytest.raises(ValueError):
        SamplingConfig(points=0)
    with pytest.raises(ValueError):
        SamplingConfig(tol_singular=0.0)


def test_attempt_raises_after_cap():
    from srcid.engine import SamplingError

    cfg = SamplingConfig(master_seed=1, points=1, resample_cap=10)
    ctx = PointContext(random.Random("y"), EXACT, cfg)
    with pytest.raises(SamplingError):
        ctx.attempt(lambda: 0, lambda x: False)


def test_sampling_failure_recorded_per_point():
    # a case whose sampler cannot succeed reports the error without raising
    from srcid.engine import REGISTRY, CaseDef, SamplingError

    def impossible(ctx):
        raise SamplingError("nothing to draw")

    case = CaseDef(
        "synthetic_unsatisfiable", "identity", "rational",
        "synthetic case for the error path", (EXACT,), impossible,
    )
    REGISTRY[case.case_id] = case
    try:
        rep = run_case(case.case_id, SamplingConfig(master_seed=1, points=3))
        assert not rep.passed
        assert len(rep.points) == 3
        assert all(p.error and "sampling" in p.error for p in rep.points)
    finally:
        del REGISTRY[case.case_id]
