"""The seven independence hypotheses and their imposition on parameters.

Each hypothesis is a conditional-independence statement about (E, C, D_ebar),
numbered uniformly across the three model structures:

    H1  E indep D_ebar
    H2  E indep D_ebar | C=0
    H3  E indep D_ebar | C=1
    H4  E indep C
    H5  D_ebar indep C
    H6  D_ebar indep C | E=ebar
    H7  D_ebar indep C | E=e

A hypothesis can be evaluated two ways, and the two agree wherever both are
defined:

* numerically on a joint distribution, as a within-slice product test
  |P(X=1,Y=1|S) - P(X=1|S) P(Y=1|S)| <= tol, which raises
  DegenerateEventError when the slice S has probability zero;
* algebraically on model parameters, as the per-model closed-form equality
  (for example H2 is u0 = b0 in every model, while H4 is a0 = a1 in Model 1,
  c0 = c1 in Model 2, and vacuous in Model 3).

The algebraic forms read the parameters directly, so on boundary parameter
sets they can express a conditional the joint gives zero mass (for instance
H5 in Model 1 with t = 0); interior parameters never hit that split.

``impose`` rewrites a parameter set so that a whole hypothesis set holds:
equality constraints are substituted through their equivalence classes, and
an equational constraint (H1 or H5) is solved for one designated parameter
(u1 for H1, u0 for H5), redrawing the remaining parameters when the solution
leaves [0, 1].
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import FrozenSet, Iterable, Optional

from ._rng import SplitMix64
from .errors import ConstraintError, DegenerateEventError, ParameterError
from .joint import (
    JointDistribution,
    Model1Params,
    Model2Params,
    Model3Params,
    ModelParams,
    model_number,
)


class Hypothesis(Enum):
    H1 = "H1"
    H2 = "H2"
    H3 = "H3"
    H4 = "H4"
    H5 = "H5"
    H6 = "H6"
    H7 = "H7"

    @property
    def statement(self) -> str:
        return _STATEMENTS[self]


_STATEMENTS = {
    Hypothesis.H1: "E ⊥ D_ebar",
    Hypothesis.H2: "E ⊥ D_ebar | C=0",
    Hypothesis.H3: "E ⊥ D_ebar | C=1",
    Hypothesis.H4: "E ⊥ C",
    Hypothesis.H5: "D_ebar ⊥ C",
    Hypothesis.H6: "D_ebar ⊥ C | E=ebar",
    Hypothesis.H7: "D_ebar ⊥ C | E=e",
}

HypothesisSet = FrozenSet[Hypothesis]


def hypothesis_set(*hypotheses: Hypothesis) -> HypothesisSet:
    return frozenset(hypotheses)


def parse_hypothesis(name: str) -> Hypothesis:
    try:
        return Hypothesis(name.upper())
    except ValueError:
        raise ParameterError(f"unknown hypothesis {name!r}; expected H1..H7") from None


# (X, Y, slice) for the numeric product test; variables use the joint's
# assignment names and "1" means E=e for the exposure.
_NUMERIC_FORM = {
    Hypothesis.H1: ("E", "D", None),
    Hypothesis.H2: ("E", "D", ("C", 0)),
    Hypothesis.H3: ("E", "D", ("C", 1)),
    Hypothesis.H4: ("E", "C", None),
    Hypothesis.H5: ("D", "C", None),
    Hypothesis.H6: ("D", "C", ("E", "ebar")),
    Hypothesis.H7: ("D", "C", ("E", "e")),
}

_POSITIVE = {"E": "e", "C": 1, "D": 1}


def holds_numeric(joint: JointDistribution, hypothesis: Hypothesis, tol=0) -> bool:
    """Product test for a hypothesis on a joint, within ``tol``.

    Raises DegenerateEventError when the conditioning slice has zero mass.
    """
    if tol < 0:
        raise ParameterError(f"tolerance must be nonnegative, got {tol!r}")
    x, y, cond = _NUMERIC_FORM[hypothesis]
    given = {} if cond is None else {cond[0]: cond[1]}
    kw = _joint_kwargs(given)
    slice_mass = joint.prob(**kw)
    if slice_mass == 0:
        raise DegenerateEventError(
            f"{hypothesis.value} conditions on {given!r}, which has probability zero"
        )
    q_xy = joint.prob(**_joint_kwargs({**given, x: _POSITIVE[x], y: _POSITIVE[y]})) / slice_mass
    q_x = joint.prob(**_joint_kwargs({**given, x: _POSITIVE[x]})) / slice_mass
    q_y = joint.prob(**_joint_kwargs({**given, y: _POSITIVE[y]})) / slice_mass
    return abs(q_xy - q_x * q_y) <= tol


def _joint_kwargs(assignment: dict) -> dict:
    return {var.lower(): value for var, value in assignment.items()}


def holds_algebraic(params: ModelParams, hypothesis: Hypothesis, tol=0) -> bool:
    """Closed-form test for a hypothesis on model parameters, within ``tol``."""
    if tol < 0:
        raise ParameterError(f"tolerance must be nonnegative, got {tol!r}")
    lhs, rhs = _algebraic_sides(params, hypothesis)
    return abs(lhs - rhs) <= tol


def _algebraic_sides(params: ModelParams, hypothesis: Hypothesis):
    """(lhs, rhs) of the defining equality; (0, 0) for vacuous cases."""
    H = Hypothesis
    b0, b1, u0, u1 = params.b0, params.b1, params.u0, params.u1
    if hypothesis is H.H2:
        return u0, b0
    if hypothesis is H.H3:
        return u1, b1
    if hypothesis is H.H6:
        return b0, b1
    if hypothesis is H.H7:
        return u0, u1

    if isinstance(params, Model1Params):
        t, a0, a1 = params.t, params.a0, params.a1
        if hypothesis is H.H4:
            return a0, a1
        if hypothesis is H.H1:
            exposed0, exposed1 = a0 * (1 - t), a1 * t
            unexposed0, unexposed1 = (1 - a0) * (1 - t), (1 - a1) * t
            return (
                (u0 * exposed0 + u1 * exposed1) / (exposed0 + exposed1),
                (b0 * unexposed0 + b1 * unexposed1) / (unexposed0 + unexposed1),
            )
        if hypothesis is H.H5:
            # P(D_ebar=1 | C=j) in parameter form; defined whatever t is.
            return u0 * a0 + b0 * (1 - a0), u1 * a1 + b1 * (1 - a1)
    elif isinstance(params, Model2Params):
        a, c0, c1 = params.a, params.c0, params.c1
        if hypothesis is H.H4:
            return c0, c1
        if hypothesis is H.H1:
            return u0 * (1 - c1) + u1 * c1, b0 * (1 - c0) + b1 * c0
        if hypothesis is H.H5:
            mass0 = (1 - c1) * a + (1 - c0) * (1 - a)
            mass1 = c1 * a + c0 * (1 - a)
            if mass0 == 0 or mass1 == 0:
                k = 0 if mass0 == 0 else 1
                raise DegenerateEventError(
                    f"H5 compares P(D_ebar=1 | C=k) across strata, but P(C={k}) = 0"
                )
            return (
                (u0 * (1 - c1) * a + b0 * (1 - c0) * (1 - a)) / mass0,
                (u1 * c1 * a + b1 * c0 * (1 - a)) / mass1,
            )
    elif isinstance(params, Model3Params):
        a, t = params.a, params.t
        if hypothesis is H.H4:
            return 0, 0  # independent by structure
        if hypothesis is H.H1:
            return u0 * (1 - t) + u1 * t, b0 * (1 - t) + b1 * t
        if hypothesis is H.H5:
            return b0 * (1 - a) + u0 * a, b1 * (1 - a) + u1 * a
    else:
        raise ParameterError(f"not a model parameter set: {params!r}")
    raise ParameterError(f"unknown hypothesis {hypothesis!r}")


# Parameter slots, uniform across models so constraint bookkeeping is shared:
# slot 0 is the structural mixing weight (t or a), slots 1..2 the exposure or
# covariate response pair (a0/a1, c0/c1; unused in Model 3), slots 3..6 the
# outcome parameters b0, b1, u0, u1.
_SLOT_FIELDS = {
    1: ("t", "a0", "a1", "b0", "b1", "u0", "u1"),
    2: ("a", "c0", "c1", "b0", "b1", "u0", "u1"),
    3: ("a", "t", None, "b0", "b1", "u0", "u1"),
}

# Equality constraints as slot pairs, per model number.  H4 ties the pair
# (1, 2) where that pair exists and is vacuous for Model 3.
_B0, _B1, _U0, _U1 = 3, 4, 5, 6


def _equality_pairs(model: int, hypotheses: Iterable[Hypothesis]):
    pairs = []
    for h in hypotheses:
        if h is Hypothesis.H2:
            pairs.append((_U0, _B0))
        elif h is Hypothesis.H3:
            pairs.append((_U1, _B1))
        elif h is Hypothesis.H6:
            pairs.append((_B0, _B1))
        elif h is Hypothesis.H7:
            pairs.append((_U0, _U1))
        elif h is Hypothesis.H4 and model != 3:
            pairs.append((1, 2))
    return pairs


def substitution_reps(model: int, hypotheses: HypothesisSet) -> tuple:
    """rep[j] = slot whose value slot j must copy under the equality constraints.

    Identity for unconstrained slots.  Classes among the outcome slots take
    the lowest member as representative; the exposure/covariate pair (1, 2)
    keeps slot 2 as representative, so H4 rewrites the C=0 side.
    """
    parent = list(range(7))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in _equality_pairs(model, hypotheses):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    rep = [0] * 7
    for j in range(7):
        root = find(j)
        members = [k for k in range(7) if find(k) == root]
        # No constraint ties slots 1..2 to the outcome slots, so a nontrivial
        # class is either {1, 2} (rewritten toward slot 2, the C=1 side) or a
        # subset of {3..6} (rewritten toward its lowest slot).
        rep[j] = 2 if members == [1, 2] else min(members)
    return tuple(rep)


def equational_member(hypotheses: HypothesisSet) -> Optional[Hypothesis]:
    """The single H1/H5 member of a set, if any.

    Raises ConstraintError when both are present: solving one for its
    designated parameter would in general break the other.
    """
    eqs = [h for h in (Hypothesis.H1, Hypothesis.H5) if h in hypotheses]
    if len(eqs) == 2:
        raise ConstraintError("H1 and H5 cannot be imposed together")
    return eqs[0] if eqs else None


def _solve_h1(model: int, v) -> object:
    """u1 making the exposed and unexposed risks equal, given the rest."""
    if model == 1:
        t, a0, a1, b0, b1, u0 = v[0], v[1], v[2], v[3], v[4], v[5]
        exposed0 = a0 * (1 - t)
        exposed1 = a1 * t
        unexposed0 = (1 - a0) * (1 - t)
        unexposed1 = (1 - a1) * t
        observed = (b0 * unexposed0 + b1 * unexposed1) / (unexposed0 + unexposed1)
        return (observed * (exposed0 + exposed1) - u0 * exposed0) / exposed1
    if model == 2:
        c0, c1, b0, b1, u0 = v[1], v[2], v[3], v[4], v[5]
        observed = b0 * (1 - c0) + b1 * c0
        return (observed - u0 * (1 - c1)) / c1
    t, b0, b1, u0 = v[1], v[3], v[4], v[5]
    observed = b0 * (1 - t) + b1 * t
    return (observed - u0 * (1 - t)) / t


def _solve_h5(model: int, v) -> object:
    """u0 making P(D_ebar=1 | C=0) equal P(D_ebar=1 | C=1), given the rest."""
    if model == 1:
        a0, a1, b0, b1, u1 = v[1], v[2], v[3], v[4], v[6]
        return (u1 * a1 + b1 * (1 - a1) - b0 * (1 - a0)) / a0
    if model == 2:
        a, c0, c1, b0, b1, u1 = v[0], v[1], v[2], v[3], v[4], v[6]
        target = (u1 * c1 * a + b1 * c0 * (1 - a)) / (c1 * a + c0 * (1 - a))
        mass0 = (1 - c1) * a + (1 - c0) * (1 - a)
        return (target * mass0 - b0 * (1 - c0) * (1 - a)) / ((1 - c1) * a)
    a, b0, b1, u1 = v[0], v[3], v[4], v[6]
    return u1 + (b1 - b0) * (1 - a) / a


def random_params(model: int, rng: SplitMix64, *, exact: bool = False) -> ModelParams:
    """Draw interior parameters for a model from a deterministic stream.

    Float mode draws each parameter uniformly from [0.01, 0.99]; exact mode
    draws numerators uniformly on the thousandths grid 10/1000 .. 990/1000.
    One variate per parameter, slots ascending, matching the campaign
    kernels' streams draw for draw.
    """
    if model not in _SLOT_FIELDS:
        raise ParameterError(f"unknown model number {model!r}; expected 1, 2, or 3")
    names = [name for name in _SLOT_FIELDS[model] if name]
    if exact:
        values = [Fraction(10 + rng.next_u64() % 981, 1000) for _ in names]
    else:
        values = [0.01 + rng.next_float() * 0.98 for _ in names]
    cls = (Model1Params, Model2Params, Model3Params)[model - 1]
    return cls(**dict(zip(names, values)))


def _slot_values(params: ModelParams) -> list:
    fields = _SLOT_FIELDS[model_number(params)]
    return [getattr(params, name) if name else 0 for name in fields]


def _params_from_slots(model: int, values) -> ModelParams:
    fields = _SLOT_FIELDS[model]
    cls = (Model1Params, Model2Params, Model3Params)[model - 1]
    return cls(**{name: values[j] for j, name in enumerate(fields) if name})


def impose(
    base: ModelParams,
    hypotheses: HypothesisSet,
    rng: SplitMix64,
    *,
    budget: int = 1000,
) -> ModelParams:
    """A parameter set of ``base``'s model on which every hypothesis holds.

    Equality constraints are substituted exactly, leaving unconstrained
    parameters untouched.  An H1/H5 member is then solved for its designated
    parameter; when the solution leaves [0, 1] (or a required divisor
    vanishes) all parameters are redrawn from ``rng``, at most ``budget``
    times, after which ConstraintError is raised.  Exactness follows
    ``base``: rational parameters are redrawn on the rational grid and
    solved exactly.
    """
    model = model_number(base)
    hypotheses = frozenset(hypotheses)
    rep = substitution_reps(model, hypotheses)
    eq = equational_member(hypotheses)
    if eq is not None:
        solved_slot = _U1 if eq is Hypothesis.H1 else _U0
        if rep[solved_slot] != solved_slot or any(
            j != solved_slot and rep[j] == solved_slot for j in range(7)
        ):
            raise ConstraintError(
                f"cannot solve {eq.value} for slot "
                f"{_SLOT_FIELDS[model][solved_slot]}: an equality constraint already ties it"
            )
    exact = base.is_exact
    values = _slot_values(base)
    for attempt in range(budget + 1):
        if attempt:
            values = _slot_values(random_params(model, rng, exact=exact))
        candidate = [values[rep[j]] for j in range(7)]
        if eq is None:
            return _params_from_slots(model, candidate)
        try:
            solved = (_solve_h1 if eq is Hypothesis.H1 else _solve_h5)(model, candidate)
        except ZeroDivisionError:
            continue
        if isinstance(solved, float) and solved != solved:
            continue
        if 0 <= solved <= 1:
            candidate[_U1 if eq is Hypothesis.H1 else _U0] = solved
            return _params_from_slots(model, candidate)
    raise ConstraintError(
        f"no parameters satisfying {eq.value} found within {budget} redraws"
    )
