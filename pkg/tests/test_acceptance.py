"""Acceptance suite: the eight headline guarantees, one line reported each.

Every criterion asserts its pinned values at its stated tolerance and then
records a PASS line (or a FAIL line before the assertion error propagates).
The conftest prints the recorded lines in the terminal summary, where they
survive pytest's output capture.
"""

import json
import time
from contextlib import contextmanager
from fractions import Fraction

from confound_kit import (
    CLAUSES,
    Verdict,
    analyze_counts,
    build_joint,
    check_lemma1,
    classify_covariate,
    closed_form_summary,
    counts_to_joint,
    fixture_path,
    load_counts,
    random_params,
    summary_from_joint,
    verify_clause,
)
from confound_kit.tables import Exposure, ResponseType, StratifiedCounts
from confound_kit._rng import SplitMix64

F = Fraction


# (number, "PASS"/"FAIL", description) entries, printed by the conftest hook
RESULTS = []


@contextmanager
def criterion(number, description):
    try:
        yield
    except BaseException:
        RESULTS.append((number, "FAIL", description))
        raise
    RESULTS.append((number, "PASS", description))


def test_criterion_1_table1_exact_reproduction():
    with criterion(1, "Table 1 reproduced exactly in under 1 ms"):
        counts = load_counts(fixture_path("table1_coarse.csv"))
        best = float("inf")
        for _ in range(5):
            start = time.perf_counter()
            report = analyze_counts(counts)
            best = min(best, time.perf_counter() - start)
        assert report.hypothetical == F(13, 25)      # 0.52
        assert report.observed == F(29, 50)          # 0.58
        assert abs(report.bias) == F(3, 50)          # |B| = 0.06
        assert report.standardized == F(119, 200)    # 0.595
        assert report.adjusted_gap == F(3, 40)       # 0.075
        assert report.verdict is Verdict.NEITHER
        assert best < 1e-3, f"analysis took {best * 1e3:.3f} ms"


def test_criterion_2_table2_exact_reproduction():
    with criterion(2, "Table 2 reproduced exactly, Confounder by the strict gap rule"):
        report = analyze_counts(load_counts(fixture_path("table2_coarse.csv")))
        assert report.standardized == F(71, 125)     # 0.568
        assert report.adjusted_gap == F(6, 125)      # 0.048
        assert report.adjusted_gap < abs(report.bias) == F(3, 50)
        assert report.verdict is Verdict.CONFOUNDER
        # the fixture carries the expected-difference annotation for the
        # narrative that contradicts this arithmetic
        note = fixture_path("table2_coarse.csv").read_text(encoding="utf-8")
        assert "Expected-difference note" in note
        assert "0.048" in note


def test_criterion_3_theorem_suites():
    with criterion(3, "all 19 clauses pass float and rational campaigns in under 10 s"):
        start = time.perf_counter()
        for clause in CLAUSES:
            float_report = verify_clause(clause, samples=10_000, seed=0, tol=1e-10)
            assert float_report.failures == 0, (clause.theorem, clause.clause)
            exact_report = verify_clause(clause, samples=100, seed=0, exact=True)
            assert exact_report.failures == 0, (clause.theorem, clause.clause)
            assert exact_report.max_violation == 0
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0, f"suites took {elapsed:.2f} s"


def test_criterion_4_lemma1_exclusivity():
    with criterion(4, "no random joint is both Irrelevant and Confounder; Table 1 is Neither"):
        rng = SplitMix64(41)
        for model in (1, 2, 3):
            for _ in range(10_000):
                joint = build_joint(random_params(model, rng))
                assert check_lemma1(joint, tol=1e-9)
        table1 = load_counts(fixture_path("table1_coarse.csv"))
        assert analyze_counts(table1).verdict is Verdict.NEITHER


def test_criterion_5_model3_universal_irrelevance():
    with criterion(5, "10^4 rational model-3 draws give standardized == observed exactly"):
        rng = SplitMix64(53)
        for _ in range(10_000):
            params = random_params(3, rng, exact=True)
            summary = summary_from_joint(build_joint(params))
            assert summary.standardized == summary.observed


def test_criterion_6_algebraic_numeric_agreement():
    with criterion(6, "algebraic and numeric hypothesis tests agree at 1e-10"):
        from confound_kit import DegenerateEventError, Hypothesis, holds_algebraic, holds_numeric

        rng = SplitMix64(67)
        for model in (1, 2, 3):
            for _ in range(10_000):
                params = random_params(model, rng)
                joint = build_joint(params)
                for h in Hypothesis:
                    try:
                        numeric = holds_numeric(joint, h, tol=1e-10)
                    except DegenerateEventError:
                        continue  # interior draws never get here
                    assert holds_algebraic(params, h, tol=1e-10) == numeric, (model, h)


def test_criterion_7_oracle_equivalence():
    with criterion(7, "closed forms match joints at 1e-12; table and joint verdicts coincide exactly"):
        rng = SplitMix64(79)
        for model in (1, 2, 3):
            for _ in range(1000):
                params = random_params(model, rng)
                direct = closed_form_summary(params)
                brute = summary_from_joint(build_joint(params))
                assert abs(direct.bias - brute.bias) <= 1e-12
                assert abs(direct.standardized - brute.standardized) <= 1e-12

        produced = 0
        while produced < 1000:
            rows = {}
            for rtype in ResponseType:
                for exposure in Exposure:
                    for stratum in ("0", "1"):
                        n = rng.next_u64() % 7
                        if n:
                            rows[(rtype, exposure, stratum)] = int(n)
            try:
                counts = StratifiedCounts(("0", "1"), rows)
                table_report = analyze_counts(counts)
            except Exception:
                continue  # empty arm or vanished stratum; draw again
            joint_report = classify_covariate(counts_to_joint(counts), tol=0)
            assert table_report == joint_report
            produced += 1


def test_criterion_8_campaign_determinism():
    with criterion(8, "same-seed verification campaigns serialize byte-identically"):
        for kwargs in (
            {"samples": 2000, "seed": 42},
            {"samples": 2000, "seed": 42, "threads": 3},
            {"samples": 50, "seed": 9, "exact": True},
        ):
            for clause in (CLAUSES[3], CLAUSES[17]):
                first = json.dumps(verify_clause(clause, **kwargs).to_dict())
                second = json.dumps(verify_clause(clause, **kwargs).to_dict())
                assert first == second
