"""Tests for the clause catalog, verification campaigns, and converse search."""

import json
from fractions import Fraction

import pytest

from confound_kit import (
    CLAUSES,
    Conclusion,
    Hypothesis,
    Model1Params,
    Model3Params,
    ParameterError,
    build_joint,
    clause_lookup,
    confounding_bias,
    falsify_converse,
    holds_algebraic,
    impose,
    observed_proportion,
    random_params,
    standardized_proportion,
    verify_clause,
)
from confound_kit.hypotheses import hypothesis_set
from confound_kit._rng import SplitMix64

H = Hypothesis

# The full catalog: (theorem, clause, model, conclusion, conditions).
EXPECTED_CATALOG = {
    ("T1", "a"): (1, "irrelevant_factor", {"H4"}),
    ("T1", "b"): (1, "irrelevant_factor", {"H6"}),
    ("T1", "c"): (1, "irrelevant_factor", {"H7", "H2", "H3"}),
    ("T2", "a"): (1, "no_confounding", {"H1"}),
    ("T2", "b"): (1, "no_confounding", {"H6", "H2", "H3"}),
    ("T2", "c"): (1, "no_confounding", {"H2", "H6", "H7"}),
    ("T2", "d"): (1, "no_confounding", {"H3", "H6", "H7"}),
    ("T2", "e"): (1, "no_confounding", {"H2", "H3", "H4"}),
    ("T3", "a"): (2, "irrelevant_factor", {"H4"}),
    ("T3", "b"): (2, "irrelevant_factor", {"H6"}),
    ("T3", "c"): (2, "irrelevant_factor", {"H7", "H2", "H3"}),
    ("T4", "a"): (2, "no_confounding", {"H1"}),
    ("T4", "b"): (2, "no_confounding", {"H2", "H6", "H7"}),
    ("T4", "c"): (2, "no_confounding", {"H3", "H6", "H7"}),
    ("T4", "d"): (2, "no_confounding", {"H2", "H3", "H4"}),
    ("T5", "a"): (3, "no_confounding", {"H1"}),
    ("T5", "b"): (3, "no_confounding", {"H2", "H3"}),
    ("T5", "c"): (3, "no_confounding", {"H6", "H7", "H2"}),
    ("T5", "d"): (3, "no_confounding", {"H6", "H7", "H3"}),
}


def test_catalog_shape():
    assert len(CLAUSES) == 19
    seen = {}
    for clause in CLAUSES:
        key = (clause.theorem, clause.clause)
        assert key not in seen
        seen[key] = clause
        model, conclusion, names = EXPECTED_CATALOG[key]
        assert clause.model == model
        assert clause.conclusion.value == conclusion
        assert {h.value for h in clause.conditions} == names
    assert set(seen) == set(EXPECTED_CATALOG)


def test_clause_lookup_normalizes_case():
    clause = clause_lookup("t2", "E")
    assert clause.theorem == "T2"
    assert clause.clause == "e"
    with pytest.raises(ParameterError):
        clause_lookup("T6", "a")
    with pytest.raises(ParameterError):
        clause_lookup("T1", "d")


def test_clause_to_dict_sorted_conditions():
    clause = clause_lookup("T2", "c")
    data = clause.to_dict()
    assert data == {
        "theorem": "T2",
        "clause": "c",
        "model": 1,
        "conditions": ["H2", "H6", "H7"],
        "conclusion": "no_confounding",
    }


# --- float campaigns ------------------------------------------------------


def test_all_clauses_pass_small_float_campaign():
    for clause in CLAUSES:
        report = verify_clause(clause, samples=300, seed=13)
        assert report.failures == 0, (clause.theorem, clause.clause)
        assert report.max_violation <= 1e-10
        assert report.samples == 300
        assert report.seed == 13
        assert report.passed


def test_pinned_campaign_bounds():
    # substitution-only condition sets leave no room for rounding drift
    assert verify_clause(clause_lookup("T1", "b"), samples=10_000, seed=5).max_violation <= 1e-12
    assert verify_clause(clause_lookup("T5", "b"), samples=10_000, seed=5).max_violation <= 1e-12
    # the equational clause accumulates a few ulps through the solve
    assert verify_clause(clause_lookup("T2", "a"), samples=10_000, seed=5).max_violation <= 1e-10


def test_default_float_tolerance_is_1e10():
    report = verify_clause(clause_lookup("T1", "a"), samples=100, seed=0)
    assert report.failures == 0
    strict = verify_clause(clause_lookup("T1", "a"), samples=100, seed=0, tol=0.0)
    # exact-zero tolerance in float mode counts rounding as failure
    assert strict.max_violation == report.max_violation


def test_campaign_reports_are_deterministic():
    a = verify_clause(clause_lookup("T2", "e"), samples=500, seed=99)
    b = verify_clause(clause_lookup("T2", "e"), samples=500, seed=99)
    assert a == b
    assert json.dumps(a.to_dict()) == json.dumps(b.to_dict())


def test_thread_count_does_not_change_results():
    one = verify_clause(clause_lookup("T4", "a"), samples=2000, seed=21, threads=1)
    four = verify_clause(clause_lookup("T4", "a"), samples=2000, seed=21, threads=4)
    assert one.max_violation == four.max_violation
    assert one.failures == four.failures


def test_single_sample_report():
    report = verify_clause(clause_lookup("T2", "e"), samples=1, seed=1)
    assert report.samples == 1
    assert report.failures == 0
    assert report.passed


def test_verify_rejects_bad_arguments():
    clause = clause_lookup("T1", "a")
    with pytest.raises(ParameterError):
        verify_clause(clause, samples=0)
    with pytest.raises(ParameterError):
        verify_clause(clause, samples=10, tol=-1.0)
    with pytest.raises(ParameterError):
        verify_clause(clause, samples=10, threads=0)


# --- exact campaigns ------------------------------------------------------


def test_exact_campaigns_have_zero_violation():
    for key in (("T1", "a"), ("T2", "a"), ("T3", "c"), ("T4", "d"), ("T5", "b")):
        report = verify_clause(clause_lookup(*key), samples=20, seed=8, exact=True)
        assert report.failures == 0
        assert report.max_violation == 0
        assert isinstance(report.max_violation, (int, Fraction))


def test_exact_mode_rejects_nonzero_tolerance():
    with pytest.raises(ParameterError):
        verify_clause(clause_lookup("T1", "a"), samples=10, exact=True, tol=1e-9)


def test_report_to_dict_shape():
    report = verify_clause(clause_lookup("T5", "d"), samples=50, seed=3)
    data = report.to_dict()
    assert set(data) == {"clause", "samples", "max_violation", "failures", "seed"}
    assert data["clause"]["conditions"] == ["H3", "H6", "H7"]
    json.dumps(data)


# --- theorem 1 core identity ----------------------------------------------


def test_t1_conditions_zero_the_product():
    # under H4 or H6 the quantity (b0-b1)*(a0-a1) vanishes identically
    rng = SplitMix64(40)
    for key in (("T1", "a"), ("T1", "b")):
        clause = clause_lookup(*key)
        for _ in range(50):
            params = impose(random_params(1, rng), clause.conditions, rng)
            assert (params.b0 - params.b1) * (params.a0 - params.a1) == 0.0


# --- boundary fixtures -----------------------------------------------------


def test_boundary_params_satisfy_conclusions():
    # outcome probabilities at the extreme points 0 and 1
    base = Model1Params(t=0.5, a0=0.3, a1=0.8, b0=0.0, b1=1.0, u0=1.0, u1=0.0)
    out = impose(base, clause_lookup("T1", "b").conditions, SplitMix64(0))
    joint = build_joint(out)
    assert standardized_proportion(joint) == observed_proportion(joint)

    m3 = Model3Params(a=0.5, t=0.5, b0=0.0, b1=1.0, u0=0.0, u1=1.0)
    out3 = impose(m3, clause_lookup("T5", "b").conditions, SplitMix64(0))
    assert confounding_bias(build_joint(out3)) == 0.0


# --- converse search -------------------------------------------------------


def test_falsify_converse_model1_no_confounding():
    witness = falsify_converse(1, Conclusion.NO_CONFOUNDING, samples=200, seed=6)
    assert witness is not None
    joint = build_joint(witness)
    assert abs(confounding_bias(joint)) <= 1e-12
    # bias vanishes by cancellation, not through any catalog condition set
    assert (witness.b0 - witness.b1) * (witness.a0 - witness.a1) != 0.0
    for clause in CLAUSES:
        if clause.model == 1 and clause.conclusion is Conclusion.NO_CONFOUNDING:
            if clause.conditions == hypothesis_set(H.H1):
                continue  # definitionally satisfied whenever bias is zero
            assert not all(holds_algebraic(witness, h, tol=1e-9) for h in clause.conditions)


def test_falsify_converse_model3_irrelevance_is_universal():
    witness = falsify_converse(3, Conclusion.IRRELEVANT_FACTOR, samples=5, seed=0)
    assert witness is not None
    joint = build_joint(witness)
    assert abs(standardized_proportion(joint) - observed_proportion(joint)) <= 1e-12


def test_falsify_converse_model1_irrelevance_has_no_witness():
    # for this structure irrelevance occurs only through a catalog condition
    assert falsify_converse(1, Conclusion.IRRELEVANT_FACTOR, samples=300, seed=4) is None


def test_falsify_converse_determinism():
    a = falsify_converse(2, Conclusion.NO_CONFOUNDING, samples=100, seed=12)
    b = falsify_converse(2, Conclusion.NO_CONFOUNDING, samples=100, seed=12)
    assert a == b
