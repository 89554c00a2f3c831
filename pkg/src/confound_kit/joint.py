"""Joint distributions over (E, C, D_ebar) for three binary causal structures.

E is a binary exposure with values e (exposed) and ebar (unexposed).  C is a
binary covariate.  D_ebar is the potential disease outcome under
non-exposure; it is defined for everyone, exposed individuals included, which
is what makes quantities such as P(D_ebar = 1 | E = e) hypothetical rather
than observable.  Throughout the package "D" in assignments and rendered
output always means this potential outcome, never the factual outcome.

Three parameterizations are supported, one per structure:

* Model 1, covariate influences exposure (C -> E, C -> D, E -> D):
  t = P(C=1), a_j = P(E=e | C=j), b_j = P(D_ebar=1 | E=ebar, C=j),
  u_j = P(D_ebar=1 | E=e, C=j).
* Model 2, exposure influences covariate (E -> C, C -> D, E -> D):
  a = P(E=e), c_0 = P(C=1 | E=ebar), c_1 = P(C=1 | E=e), and b_j, u_j
  as above.
* Model 3, exposure and covariate independent (C -> D, E -> D):
  a = P(E=e), t = P(C=1), and b_j, u_j as above.

Every parameter set expands to an explicit joint over the eight assignments
of (E, C, D_ebar), and every downstream quantity is a finite sum over those
cells, so the joint is the single ground truth the rest of the package
reduces to.  Cells are kept in a fixed order for serialization and
comparison:

    (e,0,0), (e,0,1), (e,1,0), (e,1,1),
    (ebar,0,0), (ebar,0,1), (ebar,1,0), (ebar,1,1)

where a triple reads (E, C, D_ebar).  Weights may be floats or exact
rationals (``fractions.Fraction``); arithmetic follows the inputs, so
rational parameters yield a rational joint and exact downstream comparisons.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass, fields
from enum import Enum
from fractions import Fraction
from typing import Mapping, Union

from .errors import DegenerateEventError, ParameterError

Numeric = Union[int, float, Fraction]

_SUM_TOL = 1e-12


class Exposure(Enum):
    EXPOSED = "e"
    UNEXPOSED = "ebar"


def _as_exposure(value: object) -> Exposure:
    if isinstance(value, Exposure):
        return value
    if value == "e":
        return Exposure.EXPOSED
    if value == "ebar":
        return Exposure.UNEXPOSED
    raise ParameterError(f"invalid exposure value {value!r}; expected 'e' or 'ebar'")


def _as_bit(name: str, value: object) -> int:
    if value in (0, 1):
        return int(value)
    raise ParameterError(f"invalid {name} value {value!r}; expected 0 or 1")


def _is_exact(values) -> bool:
    return all(isinstance(v, numbers.Rational) for v in values)


def _check_unit(name: str, value: Numeric) -> None:
    if isinstance(value, float) and value != value:
        raise ParameterError(f"parameter {name} is NaN")
    if not 0 <= value <= 1:
        raise ParameterError(f"parameter {name} = {value!r} outside [0, 1]")


def _check_open_unit(name: str, value: Numeric) -> None:
    _check_unit(name, value)
    if value == 0 or value == 1:
        raise ParameterError(f"parameter {name} = {value!r} must lie strictly inside (0, 1)")


def _num_to_json(value: Numeric) -> object:
    if isinstance(value, float):
        return value
    return str(Fraction(value))


def _num_from_json(value: object) -> Numeric:
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParameterError(f"invalid numeric value {value!r}")
    return value


class _ParamsBase:
    """Shared serialization and exactness helpers for parameter sets."""

    @property
    def is_exact(self) -> bool:
        return _is_exact(getattr(self, f.name) for f in fields(self))

    def to_dict(self) -> dict:
        """Serialize to plain JSON types; rationals become 'n/d' strings."""
        return {f.name: _num_to_json(getattr(self, f.name)) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: Mapping[str, object]):
        names = [f.name for f in fields(cls)]
        if set(data) != set(names):
            raise ParameterError(
                f"expected exactly the fields {names}, got {sorted(data)}"
            )
        return cls(**{n: _num_from_json(data[n]) for n in names})


@dataclass(frozen=True)
class Model1Params(_ParamsBase):
    """Covariate-influences-exposure structure (C -> E, C -> D, E -> D)."""

    t: Numeric
    a0: Numeric
    a1: Numeric
    b0: Numeric
    b1: Numeric
    u0: Numeric
    u1: Numeric

    def __post_init__(self) -> None:
        for f in fields(self):
            _check_unit(f.name, getattr(self, f.name))
        # Both exposure arms must be reachable, or every conditional on E is
        # undefined downstream.
        p_exposed = self.a0 * (1 - self.t) + self.a1 * self.t
        p_unexposed = (1 - self.a0) * (1 - self.t) + (1 - self.a1) * self.t
        if p_exposed == 0:
            raise ParameterError("degenerate exposure marginal: P(E=e) = 0")
        if p_unexposed == 0:
            raise ParameterError("degenerate exposure marginal: P(E=ebar) = 0")


@dataclass(frozen=True)
class Model2Params(_ParamsBase):
    """Exposure-influences-covariate structure (E -> C, C -> D, E -> D)."""

    a: Numeric
    c0: Numeric
    c1: Numeric
    b0: Numeric
    b1: Numeric
    u0: Numeric
    u1: Numeric

    def __post_init__(self) -> None:
        _check_open_unit("a", self.a)
        for f in fields(self):
            if f.name != "a":
                _check_unit(f.name, getattr(self, f.name))


@dataclass(frozen=True)
class Model3Params(_ParamsBase):
    """Independent exposure and covariate structure (C -> D, E -> D)."""

    a: Numeric
    t: Numeric
    b0: Numeric
    b1: Numeric
    u0: Numeric
    u1: Numeric

    def __post_init__(self) -> None:
        _check_open_unit("a", self.a)
        for f in fields(self):
            if f.name != "a":
                _check_unit(f.name, getattr(self, f.name))


ModelParams = Union[Model1Params, Model2Params, Model3Params]

_MODEL_NUMBERS = {Model1Params: 1, Model2Params: 2, Model3Params: 3}
_PARAMS_TYPES = {1: Model1Params, 2: Model2Params, 3: Model3Params}


def model_number(params: ModelParams) -> int:
    """1, 2, or 3 for the structure a parameter set belongs to."""
    try:
        return _MODEL_NUMBERS[type(params)]
    except KeyError:
        raise ParameterError(f"not a model parameter set: {params!r}") from None


def params_type(model: int):
    """The parameter dataclass for a model number."""
    try:
        return _PARAMS_TYPES[model]
    except KeyError:
        raise ParameterError(f"unknown model number {model!r}; expected 1, 2, or 3") from None


def params_from_dict(data: Mapping[str, object]) -> ModelParams:
    """Rebuild a parameter set from its serialized fields.

    The three field sets are pairwise distinct, so the structure is inferred
    from the keys alone.
    """
    keys = set(data)
    for cls in (Model1Params, Model2Params, Model3Params):
        if keys == {f.name for f in fields(cls)}:
            return cls.from_dict(data)
    raise ParameterError(f"field set {sorted(keys)} matches no model parameterization")


@dataclass(frozen=True)
class JointDistribution:
    """An explicit distribution over the eight (E, C, D_ebar) assignments.

    ``p`` lists cell weights in the canonical order given in the module
    docstring.  Weights must be nonnegative and sum to one: exactly when all
    are rational, within 1e-12 otherwise.
    """

    p: tuple

    def __post_init__(self) -> None:
        weights = tuple(self.p)
        object.__setattr__(self, "p", weights)
        if len(weights) != 8:
            raise ParameterError(f"joint needs exactly 8 cell weights, got {len(weights)}")
        for i, w in enumerate(weights):
            if isinstance(w, float) and w != w:
                raise ParameterError(f"cell {i} weight is NaN")
            if w < 0:
                raise ParameterError(f"cell {i} weight {w!r} is negative")
        total = sum(weights)
        if _is_exact(weights):
            if total != 1:
                raise ParameterError(f"exact cell weights sum to {total}, not 1")
        elif abs(total - 1) > _SUM_TOL:
            raise ParameterError(f"cell weights sum to {total!r}, not 1 within {_SUM_TOL}")

    @staticmethod
    def index(e: object, c: object, d: object) -> int:
        """Canonical cell index of the assignment (E=e, C=c, D_ebar=d)."""
        exposure = _as_exposure(e)
        c = _as_bit("C", c)
        d = _as_bit("D", d)
        return (0 if exposure is Exposure.EXPOSED else 4) + 2 * c + d

    @property
    def is_exact(self) -> bool:
        return _is_exact(self.p)

    def prob(self, e: object = None, c: object = None, d: object = None) -> Numeric:
        """Probability of the event fixing any subset of E, C, D_ebar."""
        exposure = None if e is None else _as_exposure(e)
        if c is not None:
            c = _as_bit("C", c)
        if d is not None:
            d = _as_bit("D", d)
        total = 0
        for i, w in enumerate(self.p):
            if exposure is not None and (i < 4) != (exposure is Exposure.EXPOSED):
                continue
            if c is not None and (i >> 1) & 1 != c:
                continue
            if d is not None and i & 1 != d:
                continue
            total = total + w
        return total

    def conditional(self, event: Mapping[str, object], given: Mapping[str, object]) -> Numeric:
        return conditional_prob(self, event, given)

    def swap_covariate(self) -> "JointDistribution":
        """The same distribution with the covariate labels 0 and 1 exchanged."""
        p = self.p
        return JointDistribution((p[2], p[3], p[0], p[1], p[6], p[7], p[4], p[5]))

    def to_dict(self) -> dict:
        """Serialize as {"p": [...]} in canonical cell order."""
        return {"p": [_num_to_json(w) for w in self.p]}

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> "JointDistribution":
        if set(data) != {"p"}:
            raise ParameterError(f"expected exactly the field ['p'], got {sorted(data)}")
        weights = data["p"]
        if not isinstance(weights, (list, tuple)):
            raise ParameterError("field 'p' must be a list of 8 cell weights")
        return cls(tuple(_num_from_json(w) for w in weights))


def _assignment_kwargs(assignment: Mapping[str, object]) -> dict:
    out = {}
    for key, value in assignment.items():
        if key == "E":
            out["e"] = value
        elif key == "C":
            out["c"] = value
        elif key == "D":
            out["d"] = value
        else:
            raise ParameterError(f"unknown variable {key!r}; expected 'E', 'C', or 'D'")
    return out


def conditional_prob(
    joint: JointDistribution,
    event: Mapping[str, object],
    given: Mapping[str, object],
) -> Numeric:
    """P(event | given) by brute-force summation over cells.

    Variables are named "E", "C", "D" (the last meaning D_ebar).  A variable
    fixed to conflicting values in ``event`` and ``given`` makes the event
    impossible, so the result is 0.  Conditioning on a zero-probability event
    raises DegenerateEventError.
    """
    given_kw = _assignment_kwargs(given)
    denominator = joint.prob(**given_kw)
    if denominator == 0:
        raise DegenerateEventError(f"conditioning event {dict(given)!r} has probability zero")
    merged = dict(given_kw)
    for key, value in _assignment_kwargs(event).items():
        if key in merged and merged[key] != value:
            return 0 * denominator  # impossible event; keeps the result's type
        merged[key] = value
    return joint.prob(**merged) / denominator


def joint_from_model1(params: Model1Params) -> JointDistribution:
    """Expand covariate-influences-exposure parameters to the joint."""
    t, a0, a1 = params.t, params.a0, params.a1
    b0, b1, u0, u1 = params.b0, params.b1, params.u0, params.u1
    tb = 1 - t
    return JointDistribution(
        (
            tb * a0 * (1 - u0),
            tb * a0 * u0,
            t * a1 * (1 - u1),
            t * a1 * u1,
            tb * (1 - a0) * (1 - b0),
            tb * (1 - a0) * b0,
            t * (1 - a1) * (1 - b1),
            t * (1 - a1) * b1,
        )
    )


def joint_from_model2(params: Model2Params) -> JointDistribution:
    """Expand exposure-influences-covariate parameters to the joint."""
    a, c0, c1 = params.a, params.c0, params.c1
    b0, b1, u0, u1 = params.b0, params.b1, params.u0, params.u1
    ab = 1 - a
    return JointDistribution(
        (
            a * (1 - c1) * (1 - u0),
            a * (1 - c1) * u0,
            a * c1 * (1 - u1),
            a * c1 * u1,
            ab * (1 - c0) * (1 - b0),
            ab * (1 - c0) * b0,
            ab * c0 * (1 - b1),
            ab * c0 * b1,
        )
    )


def joint_from_model3(params: Model3Params) -> JointDistribution:
    """Expand independent exposure/covariate parameters to the joint."""
    a, t = params.a, params.t
    b0, b1, u0, u1 = params.b0, params.b1, params.u0, params.u1
    ab = 1 - a
    tb = 1 - t
    return JointDistribution(
        (
            a * tb * (1 - u0),
            a * tb * u0,
            a * t * (1 - u1),
            a * t * u1,
            ab * tb * (1 - b0),
            ab * tb * b0,
            ab * t * (1 - b1),
            ab * t * b1,
        )
    )


def build_joint(params: ModelParams) -> JointDistribution:
    """Expand any parameter set to its joint distribution."""
    if isinstance(params, Model1Params):
        return joint_from_model1(params)
    if isinstance(params, Model2Params):
        return joint_from_model2(params)
    if isinstance(params, Model3Params):
        return joint_from_model3(params)
    raise ParameterError(f"not a model parameter set: {params!r}")
