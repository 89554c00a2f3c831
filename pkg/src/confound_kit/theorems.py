"""Sufficient-condition catalog for irrelevance and no-confounding.

Five catalog entries (T1..T5) bundle, per model structure, the hypothesis
sets that each guarantee one of two conclusions:

* irrelevant_factor: the standardized proportion equals the observed one;
* no_confounding: the bias is zero.

Every entry is checked by brute force rather than symbolically: a campaign
draws interior parameters, imposes the clause's hypothesis set exactly (see
``hypotheses.impose``), expands the joint, and evaluates the conclusion's
defining quantity, whose magnitude is the sample's violation.  Float
campaigns run on the selected kernel backend and are reproducible bit for
bit from (seed, samples) alone, independent of chunking or thread count;
exact campaigns rerun the same algorithm in rational arithmetic, where a
sound clause yields violations of exactly zero.

``falsify_converse`` probes the other direction, searching for parameters
where a conclusion holds but none of the catalog's condition sets for it
does.  For the no-confounding conclusion the single-hypothesis set {H1} is
skipped there: H1 restates bias zero, so counting it would make the search
vacuously impossible.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from . import kernel
from ._rng import sample_stream
from .errors import ConstraintError, ParameterError
from .hypotheses import (
    Hypothesis,
    HypothesisSet,
    equational_member,
    holds_algebraic,
    impose,
    random_params,
    substitution_reps,
)
from .joint import ModelParams, _num_to_json, build_joint
from .measures import summary_from_joint

THREADS_ENV = "CONFOUND_KIT_THREADS"
DEFAULT_FLOAT_TOL = 1e-10
_REDRAW_BUDGET = 1000
_CONCLUSION_TOL = 1e-12


class Conclusion(Enum):
    IRRELEVANT_FACTOR = "irrelevant_factor"
    NO_CONFOUNDING = "no_confounding"


@dataclass(frozen=True)
class TheoremClause:
    theorem: str
    clause: str
    model: int
    conditions: HypothesisSet
    conclusion: Conclusion

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "clause": self.clause,
            "model": self.model,
            "conditions": sorted(h.value for h in self.conditions),
            "conclusion": self.conclusion.value,
        }


def _clause(theorem, clause, model, conclusion, *names):
    return TheoremClause(
        theorem=theorem,
        clause=clause,
        model=model,
        conditions=frozenset(Hypothesis(n) for n in names),
        conclusion=conclusion,
    )


_IRR = Conclusion.IRRELEVANT_FACTOR
_NOC = Conclusion.NO_CONFOUNDING

CLAUSES: Tuple[TheoremClause, ...] = (
    _clause("T1", "a", 1, _IRR, "H4"),
    _clause("T1", "b", 1, _IRR, "H6"),
    _clause("T1", "c", 1, _IRR, "H7", "H2", "H3"),
    _clause("T2", "a", 1, _NOC, "H1"),
    _clause("T2", "b", 1, _NOC, "H6", "H2", "H3"),
    _clause("T2", "c", 1, _NOC, "H2", "H6", "H7"),
    _clause("T2", "d", 1, _NOC, "H3", "H6", "H7"),
    _clause("T2", "e", 1, _NOC, "H2", "H3", "H4"),
    _clause("T3", "a", 2, _IRR, "H4"),
    _clause("T3", "b", 2, _IRR, "H6"),
    _clause("T3", "c", 2, _IRR, "H7", "H2", "H3"),
    _clause("T4", "a", 2, _NOC, "H1"),
    _clause("T4", "b", 2, _NOC, "H2", "H6", "H7"),
    _clause("T4", "c", 2, _NOC, "H3", "H6", "H7"),
    _clause("T4", "d", 2, _NOC, "H2", "H3", "H4"),
    _clause("T5", "a", 3, _NOC, "H1"),
    _clause("T5", "b", 3, _NOC, "H2", "H3"),
    _clause("T5", "c", 3, _NOC, "H6", "H7", "H2"),
    _clause("T5", "d", 3, _NOC, "H6", "H7", "H3"),
)

_BY_ID = {(c.theorem, c.clause): c for c in CLAUSES}


def clause_lookup(theorem: str, clause: str) -> TheoremClause:
    try:
        return _BY_ID[(theorem.upper(), clause.lower())]
    except KeyError:
        raise ParameterError(
            f"no catalog entry {theorem!r} clause {clause!r}; "
            f"theorems are T1..T5 with clauses a..e"
        ) from None


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one clause campaign."""

    clause: TheoremClause
    samples: int
    max_violation: object
    failures: int
    seed: int

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "clause": self.clause.to_dict(),
            "samples": self.samples,
            "max_violation": _num_to_json(self.max_violation),
            "failures": self.failures,
            "seed": self.seed,
        }


def _thread_count(requested: Optional[int]) -> int:
    env = os.environ.get(THREADS_ENV)
    cap = None
    if env is not None:
        try:
            cap = int(env)
        except ValueError:
            raise ParameterError(f"{THREADS_ENV}={env!r} is not an integer") from None
        if cap < 1:
            raise ParameterError(f"{THREADS_ENV} must be at least 1, got {cap}")
    threads = requested if requested is not None else (cap or 1)
    if threads < 1:
        raise ParameterError(f"thread count must be at least 1, got {threads}")
    if cap is not None:
        threads = min(threads, cap)
    return threads


def _campaign_codes(clause: TheoremClause) -> tuple:
    """(model, rep, eq, conclusion) kernel arguments for one clause."""
    rep = substitution_reps(clause.model, clause.conditions)
    eq_member = equational_member(clause.conditions)
    eq = kernel.EQ_NONE
    if eq_member is Hypothesis.H1:
        eq = kernel.EQ_H1
    elif eq_member is Hypothesis.H5:
        eq = kernel.EQ_H5
    conclusion = (
        kernel.NO_CONFOUNDING
        if clause.conclusion is Conclusion.NO_CONFOUNDING
        else kernel.IRRELEVANT
    )
    return clause.model, rep, eq, conclusion


def _float_campaign(clause: TheoremClause, samples, seed, tol, threads):
    model, rep, eq, conclusion = _campaign_codes(clause)

    def chunk(start, count):
        return kernel.run_campaign(
            model, rep, eq, conclusion, start, count, seed, tol, _REDRAW_BUDGET
        )

    threads = min(threads, samples)
    if threads == 1:
        results = [chunk(0, samples)]
    else:
        size = samples // threads
        bounds = [
            (t * size, size + (samples - threads * size if t == threads - 1 else 0))
            for t in range(threads)
        ]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda se: chunk(*se), bounds))
    max_violation = max(r[0] for r in results)
    failures = sum(r[1] for r in results)
    exhausted = sum(r[2] for r in results)
    return max_violation, failures, exhausted


def _exact_campaign(clause: TheoremClause, samples, seed, tol):
    max_violation = 0
    failures = 0
    for i in range(samples):
        rng = sample_stream(seed, i)
        base = random_params(clause.model, rng, exact=True)
        params = impose(base, clause.conditions, rng, budget=_REDRAW_BUDGET)
        summary = summary_from_joint(build_joint(params))
        if clause.conclusion is Conclusion.NO_CONFOUNDING:
            violation = abs(summary.bias)
        else:
            violation = abs(summary.standardized - summary.observed)
        if violation > tol:
            failures += 1
        if violation > max_violation:
            max_violation = violation
    return max_violation, failures


def verify_clause(
    clause: TheoremClause,
    samples: int,
    seed: int = 0,
    tol=None,
    *,
    exact: bool = False,
    threads: Optional[int] = None,
) -> VerificationReport:
    """Campaign-check one clause: impose its conditions, measure its conclusion.

    ``tol`` defaults to 1e-10 in float mode and must be 0 in exact mode; a
    sample fails when its violation exceeds it.  Float campaigns may be chunked
    over ``threads`` workers (the CONFOUND_KIT_THREADS environment variable
    supplies the default and caps the value) without changing the report.
    """
    if samples < 1:
        raise ParameterError(f"samples must be positive, got {samples!r}")
    if tol is None:
        tol = 0 if exact else DEFAULT_FLOAT_TOL
    if tol < 0:
        raise ParameterError(f"tolerance must be nonnegative, got {tol!r}")
    if exact and tol != 0:
        raise ParameterError("exact campaigns compare exactly; tol must be 0")
    if exact:
        max_violation, failures = _exact_campaign(clause, samples, seed, tol)
    else:
        threads = _thread_count(threads)
        max_violation, failures, exhausted = _float_campaign(
            clause, samples, seed, float(tol), threads
        )
        if exhausted:
            eq_member = equational_member(clause.conditions)
            raise ConstraintError(
                f"{exhausted} samples exhausted the redraw budget solving "
                f"{eq_member.value if eq_member else 'the constraints'} "
                f"for {clause.theorem}({clause.clause})"
            )
    return VerificationReport(
        clause=clause,
        samples=samples,
        max_violation=max_violation,
        failures=failures,
        seed=seed,
    )


def falsify_converse(
    model: int,
    conclusion: Conclusion,
    samples: int,
    seed: int = 0,
    tol: float = 1e-9,
) -> Optional[ModelParams]:
    """Search for parameters where ``conclusion`` holds but no catalog
    condition set for (model, conclusion) does.

    Returns the first witness found, or None after ``samples`` draws; both
    are meaningful results (a None under a large budget is evidence the
    conditions are close to necessary).  Condition sets are tested
    algebraically within ``tol``.  For no_confounding the {H1} set is
    excluded as a restatement of the conclusion itself, and witnesses are
    constructed on the bias-zero surface directly; for irrelevant_factor
    unconstrained draws are screened for the conclusion instead.
    """
    if samples < 1:
        raise ParameterError(f"samples must be positive, got {samples!r}")
    condition_sets = [
        c.conditions
        for c in CLAUSES
        if c.model == model
        and c.conclusion is conclusion
        and not (
            conclusion is Conclusion.NO_CONFOUNDING
            and c.conditions == frozenset({Hypothesis.H1})
        )
    ]
    for i in range(samples):
        rng = sample_stream(seed, i)
        if conclusion is Conclusion.NO_CONFOUNDING:
            base = random_params(model, rng)
            try:
                params = impose(base, frozenset({Hypothesis.H1}), rng)
            except ConstraintError:
                continue
        else:
            params = random_params(model, rng)
        summary = summary_from_joint(build_joint(params))
        if conclusion is Conclusion.NO_CONFOUNDING:
            achieved = abs(summary.bias) <= _CONCLUSION_TOL
        else:
            achieved = abs(summary.standardized - summary.observed) <= _CONCLUSION_TOL
        if not achieved:
            continue
        if any(
            all(holds_algebraic(params, h, tol) for h in conditions)
            for conditions in condition_sets
        ):
            continue
        return params
    return None
