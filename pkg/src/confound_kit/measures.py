"""Confounding measures and covariate classification.

For a joint distribution over (E, C, D_ebar):

* hypothetical   P(D_ebar=1 | E=e), the unexposed risk the exposed group
                 would have had.
* observed       P(D_ebar=1 | E=ebar), the unexposed risk actually seen.
* bias           hypothetical - observed.  Signed; no confounding means
                 bias == 0, and comparisons of magnitude use |bias|.
* standardized   sum_k P(D_ebar=1 | E=ebar, C=k) * P(C=k | E=e), the
                 observed risk re-weighted to the exposed group's covariate
                 mix.
* adjusted_gap   |hypothetical - standardized|, the residual error after
                 standardizing over C.

Classification of the covariate, given a tolerance:

* irrelevant  if |standardized - observed| <= tol (standardizing changed
              nothing);
* confounder  if adjusted_gap < |bias| - tol (standardizing moved the
              estimate strictly closer to the hypothetical value);
* neither     otherwise.

Irrelevance is tested first.  The two positive verdicts are mutually
exclusive: irrelevance forces adjusted_gap == |bias|, so a strict
improvement is impossible, while a strict improvement forces
standardized != observed.  ``check_lemma1`` asserts that exclusivity on any
given joint.  The converse does not hold: a covariate can be neither
irrelevant nor a confounder (standardizing moves the estimate without
strictly helping).

All quantities follow the joint's arithmetic: rational joints give exact
rational answers, and in that mode the classification tolerance must be 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from .errors import DegenerateEventError, ParameterError
from .joint import (
    JointDistribution,
    Model1Params,
    Model2Params,
    Model3Params,
    ModelParams,
    Numeric,
    _num_to_json,
)

DEFAULT_FLOAT_TOL = 1e-9


class Verdict(Enum):
    IRRELEVANT = "irrelevant"
    CONFOUNDER = "confounder"
    NEITHER = "neither"


class MeasureSummary(NamedTuple):
    """The four scalar measures of one joint distribution."""

    hypothetical: Numeric
    observed: Numeric
    standardized: Numeric
    bias: Numeric


@dataclass(frozen=True)
class ClassificationReport:
    """Measures plus verdict for one joint distribution."""

    hypothetical: Numeric
    observed: Numeric
    standardized: Numeric
    bias: Numeric
    adjusted_gap: Numeric
    verdict: Verdict

    def to_dict(self) -> dict:
        return {
            "hypothetical": _num_to_json(self.hypothetical),
            "observed": _num_to_json(self.observed),
            "standardized": _num_to_json(self.standardized),
            "bias": _num_to_json(self.bias),
            "adjusted_gap": _num_to_json(self.adjusted_gap),
            "verdict": self.verdict.value,
        }

    def render_text(self) -> str:
        """Fixed-width table of the six fields."""
        rows = [("quantity", "value", "exact")]
        for name in ("hypothetical", "observed", "standardized", "bias", "adjusted_gap"):
            value = getattr(self, name)
            exact = str(Fraction(value)) if not isinstance(value, float) else repr(value)
            rows.append((name, f"{float(value):.6f}", exact))
        rows.append(("verdict", self.verdict.value, ""))
        widths = [max(len(r[i]) for r in rows) for i in range(3)]
        lines = [
            "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
            for row in rows
        ]
        return "\n".join(lines)


def hypothetical_proportion(joint: JointDistribution) -> Numeric:
    """P(D_ebar=1 | E=e)."""
    p = joint.p
    exposed = p[0] + p[1] + p[2] + p[3]
    if exposed == 0:
        raise DegenerateEventError("P(E=e) = 0; the hypothetical proportion is undefined")
    return (p[1] + p[3]) / exposed


def observed_proportion(joint: JointDistribution) -> Numeric:
    """P(D_ebar=1 | E=ebar)."""
    p = joint.p
    unexposed = p[4] + p[5] + p[6] + p[7]
    if unexposed == 0:
        raise DegenerateEventError("P(E=ebar) = 0; the observed proportion is undefined")
    return (p[5] + p[7]) / unexposed


def standardized_proportion(joint: JointDistribution) -> Numeric:
    """Observed risk re-weighted by the exposed group's covariate mix.

    Strata with P(C=k | E=e) = 0 carry no weight and are skipped; any other
    stratum with P(E=ebar, C=k) = 0 leaves the sum undefined and raises
    DegenerateEventError naming the stratum.
    """
    p = joint.p
    exposed = p[0] + p[1] + p[2] + p[3]
    if exposed == 0:
        raise DegenerateEventError("P(E=e) = 0; the standardized proportion is undefined")
    total = 0
    for k, (cases, stratum, weight) in enumerate(
        ((p[5], p[4] + p[5], p[0] + p[1]), (p[7], p[6] + p[7], p[2] + p[3]))
    ):
        if weight == 0:
            continue
        if stratum == 0:
            raise DegenerateEventError(
                f"P(E=ebar, C={k}) = 0 while P(C={k} | E=e) > 0; "
                "the standardized proportion is undefined"
            )
        total = total + (cases / stratum) * (weight / exposed)
    return total


def confounding_bias(joint: JointDistribution) -> Numeric:
    """hypothetical - observed; zero exactly when there is no confounding."""
    return hypothetical_proportion(joint) - observed_proportion(joint)


def summary_from_joint(joint: JointDistribution) -> MeasureSummary:
    """All four measures by brute-force summation over the joint's cells."""
    hypothetical = hypothetical_proportion(joint)
    observed = observed_proportion(joint)
    return MeasureSummary(
        hypothetical=hypothetical,
        observed=observed,
        standardized=standardized_proportion(joint),
        bias=hypothetical - observed,
    )


def closed_form_summary(params: ModelParams) -> MeasureSummary:
    """The same four measures straight from model parameters.

    Independent of the cell expansion; used to cross-check the joint route.
    """
    b0, b1, u0, u1 = params.b0, params.b1, params.u0, params.u1
    if isinstance(params, Model1Params):
        t, a0, a1 = params.t, params.a0, params.a1
        exposed0, exposed1 = a0 * (1 - t), a1 * t
        unexposed0, unexposed1 = (1 - a0) * (1 - t), (1 - a1) * t
    elif isinstance(params, Model2Params):
        a, c0, c1 = params.a, params.c0, params.c1
        exposed0, exposed1 = a * (1 - c1), a * c1
        unexposed0, unexposed1 = (1 - a) * (1 - c0), (1 - a) * c0
    elif isinstance(params, Model3Params):
        a, t = params.a, params.t
        exposed0, exposed1 = a * (1 - t), a * t
        unexposed0, unexposed1 = (1 - a) * (1 - t), (1 - a) * t
    else:
        raise ParameterError(f"not a model parameter set: {params!r}")
    exposed = exposed0 + exposed1
    unexposed = unexposed0 + unexposed1
    hypothetical = (u0 * exposed0 + u1 * exposed1) / exposed
    observed = (b0 * unexposed0 + b1 * unexposed1) / unexposed
    standardized = (b0 * exposed0 + b1 * exposed1) / exposed
    return MeasureSummary(
        hypothetical=hypothetical,
        observed=observed,
        standardized=standardized,
        bias=hypothetical - observed,
    )


def _classify(summary: MeasureSummary, tol) -> ClassificationReport:
    adjusted_gap = abs(summary.hypothetical - summary.standardized)
    if abs(summary.standardized - summary.observed) <= tol:
        verdict = Verdict.IRRELEVANT
    elif adjusted_gap < abs(summary.bias) - tol:
        verdict = Verdict.CONFOUNDER
    else:
        verdict = Verdict.NEITHER
    return ClassificationReport(
        hypothetical=summary.hypothetical,
        observed=summary.observed,
        standardized=summary.standardized,
        bias=summary.bias,
        adjusted_gap=adjusted_gap,
        verdict=verdict,
    )


def classify_covariate(
    joint: JointDistribution, tol: Optional[Union[int, float, Fraction]] = None
) -> ClassificationReport:
    """Classify the covariate of a joint as irrelevant, confounder, or neither.

    ``tol`` defaults to 0 for exact-rational joints and 1e-9 otherwise.  In
    exact mode a nonzero tolerance is rejected: comparisons there are exact
    by construction and a loosened equality would silently change verdicts.
    """
    exact = joint.is_exact
    if tol is None:
        tol = 0 if exact else DEFAULT_FLOAT_TOL
    if tol < 0:
        raise ParameterError(f"tolerance must be nonnegative, got {tol!r}")
    if exact and tol != 0:
        raise ParameterError("exact-rational classification requires tol = 0")
    return _classify(summary_from_joint(joint), tol)


def check_lemma1(joint: JointDistribution, tol: Union[int, float, Fraction] = 0) -> bool:
    """True when the two positive verdicts are mutually exclusive on ``joint``.

    Evaluates the irrelevance and confounder conditions independently (not
    through verdict precedence) and checks they do not both hold.
    """
    summary = summary_from_joint(joint)
    irrelevant = abs(summary.standardized - summary.observed) <= tol
    confounder = abs(summary.hypothetical - summary.standardized) < abs(summary.bias) - tol
    return not (irrelevant and confounder)
