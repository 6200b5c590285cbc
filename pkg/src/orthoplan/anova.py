"""Linear-model simulation and adjusted sums of squares.

The SS of a factor set U adjusted for a set T is the squared length of
the projection of Y onto span((I - P_T) X_U).  Two algebraically equal
routes are evaluated on every call and must agree exactly:

* the projection form  Y' V (V'V)^- V' Y  with  V = (I - P_T) X_U,
* the g-inverse form   Q' (C_UU;T)^- Q    with  Q = X_U'Y - N_UT G_T X_T'Y.

Responses are coerced to exact rationals (binary floats are rationals),
so both quadratic forms are computed without rounding and the
equivalence "SS fully adjusted = SS adjusted for T" becomes a decidable
identity instead of an almost-sure event.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import ratmat
from .errors import LengthMismatch, NoBlocks, OverlappingSets
from .orthogonality import cross_incidence, gram, orth_through
from .plan import BLOCK, GENERAL, design_matrix

__all__ = [
    "ModelSpec",
    "SSResult",
    "EquivalenceReport",
    "simulate",
    "ss_adjusted",
    "estssq_equivalence",
]


@dataclass(frozen=True)
class ModelSpec:
    """An additive main-effects model on a plan: general effect, one
    effect vector per named factor, optional block effects, and
    independent noise with standard deviation sigma."""

    plan: object
    effects: dict = field(default_factory=dict)
    block_effects: tuple | None = None
    general: object = 0
    sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        for name, vec in self.effects.items():
            s = self.plan.factor(name).levels
            if len(vec) != s:
                raise LengthMismatch(f"effect vector for {name} has length "
                                     f"{len(vec)}, factor has {s} levels")
        if self.block_effects is not None:
            if not self.plan.blocked:
                raise NoBlocks("block effects on an unblocked plan")
            if len(self.block_effects) != self.plan.b:
                raise LengthMismatch(f"{len(self.block_effects)} block effects "
                                     f"for {self.plan.b} blocks")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")


def simulate(model):
    """Response vector Y for the model.

    With sigma = 0 the exact mean response is returned (Fractions when
    the effects are rational).  Otherwise the mean is perturbed by
    sigma * z with z standard normal from ``default_rng(seed)``, making
    repeated calls byte-identical.
    """
    plan = model.plan
    mean = [Fraction(model.general)] * plan.n
    for name, vec in model.effects.items():
        col = plan.column(name)
        for u in range(plan.n):
            mean[u] += Fraction(vec[col[u]])
    if model.block_effects is not None:
        for u in range(plan.n):
            mean[u] += Fraction(model.block_effects[plan.block_of(u)])
    if model.sigma == 0:
        return np.array(mean, dtype=object)
    rng = np.random.default_rng(model.seed)
    noise = rng.standard_normal(plan.n)
    return np.array([float(x) for x in mean]) + model.sigma * noise


@dataclass(frozen=True)
class SSResult:
    """An adjusted sum of squares, exact."""

    target: tuple
    adjust_for: tuple
    value: Fraction

    def __float__(self):
        return float(self.value)

    def to_json(self):
        return {
            "target": list(self.target),
            "adjust_for": list(self.adjust_for),
            "value": str(self.value),
            "value_float": float(self.value),
        }


def _as_tuple(t):
    if t is None:
        return ()
    if isinstance(t, str):
        return (t,)
    return tuple(t)


def _stack_design(plan, idents):
    return np.hstack([design_matrix(plan, u) for u in idents])


def ss_adjusted(plan, y, target, adjust_for=()):
    """SS of the factor set ``target`` adjusted for the set ``adjust_for``
    (identifiers may include the general effect and the block factor).

    Both evaluation routes run on every call and are asserted equal; the
    g-inverse route is additionally evaluated under a second pivoting
    order, making invariance to the g-inverse choice part of the result.
    """
    target = _as_tuple(target)
    adjust = _as_tuple(adjust_for)
    if not target:
        raise ValueError("empty target set")
    if set(target) & set(adjust):
        raise OverlappingSets(f"target {target} meets adjusting set {adjust}")
    y_col = ratmat.vector([Fraction(v) for v in y])
    if y_col.shape[0] != plan.n:
        raise LengthMismatch(f"response length {y_col.shape[0]} != {plan.n} runs")

    x_u = _stack_design(plan, target)
    xu_y = x_u.T @ y_col
    if adjust:
        x_t = _stack_design(plan, adjust)
        n_ut = np.vstack([cross_incidence(plan, u, adjust) for u in target])
        xt_y = x_t.T @ y_col
        sol = ratmat.solve_consistent(gram(plan, adjust),
                                      np.hstack([n_ut.T, xt_y]))
        z_n, z_y = sol[:, :-1], sol[:, -1:]
        q_vec = xu_y - n_ut @ z_y
        c_mat = gram(plan, target) - n_ut @ z_n
        v_mat = x_u - x_t @ z_n
    else:
        q_vec = xu_y
        c_mat = gram(plan, target)
        v_mat = x_u

    # projection route
    w = v_mat.T @ y_col
    vv = v_mat.T @ v_mat
    ss_proj = (w.T @ ratmat.g_inverse(vv) @ w)[0, 0]
    # g-inverse route, under both pivoting orders
    ss_g = (q_vec.T @ ratmat.g_inverse(c_mat) @ q_vec)[0, 0]
    ss_g2 = (q_vec.T @ ratmat.g_inverse(c_mat, reverse=True) @ q_vec)[0, 0]
    assert ss_proj == ss_g == ss_g2, "the two SS routes disagree"
    assert ss_proj >= 0
    return SSResult(target=target, adjust_for=adjust, value=Fraction(ss_proj))


def _full_adjusting_set(plan, a):
    rest = [f for f in plan.factor_names if f != a] + [GENERAL]
    if plan.blocked:
        rest.append(BLOCK)
    return tuple(rest)


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of the SS-equivalence experiment for one factor: does
    adjusting for T alone reproduce the fully adjusted SS?

    The algebraic condition (the factor orthogonal through T to every
    other model term) is evaluated exactly; random rational responses
    then probe the SS identity itself.  The two must agree in both
    directions, which ``biconditional_observed`` records.
    """

    plan_name: str
    factor: str
    adjust_for: tuple
    condition_holds: bool
    checked_against: tuple
    trials: int
    equal_trials: int
    first_trial: dict
    witness: dict | None

    @property
    def all_equal(self):
        return self.equal_trials == self.trials

    @property
    def biconditional_observed(self):
        return self.condition_holds == self.all_equal

    def to_json(self):
        return {
            "plan": self.plan_name,
            "factor": self.factor,
            "adjust_for": list(self.adjust_for),
            "condition": {
                "holds": self.condition_holds,
                "checked_against": list(self.checked_against),
            },
            "trials": {
                "count": self.trials,
                "equal": self.equal_trials,
                "all_equal": self.all_equal,
            },
            "first_trial": self.first_trial,
            "witness": self.witness,
            "biconditional_observed": self.biconditional_observed,
        }


def estssq_equivalence(plan, a, adjust_for, trials=20, seed=0):
    """Test whether SS_{A;T} equals the fully adjusted SS of A.

    The necessary-and-sufficient condition is that A is orthogonal
    through T to every other term of the model (other treatment factors,
    the general effect, the block factor when present).  Each trial
    draws a small-integer response so both sums of squares are exact;
    when the condition fails the differing response is recorded as a
    witness.
    """
    adjust = _as_tuple(adjust_for)
    if a in adjust:
        raise OverlappingSets(f"{a!r} cannot be adjusted for itself")
    plan.factor(a)
    others = [f for f in plan.factor_names if f != a and f not in adjust]
    if GENERAL not in adjust:
        others.append(GENERAL)
    if plan.blocked and BLOCK not in adjust:
        others.append(BLOCK)
    condition = all(orth_through(plan, a, b, adjust).passed for b in others)

    full = _full_adjusting_set(plan, a)
    equal = 0
    witness = None
    first = None
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        y = [Fraction(int(v)) for v in rng.integers(-9, 10, size=plan.n)]
        ss_full = ss_adjusted(plan, y, a, full)
        ss_t = ss_adjusted(plan, y, a, adjust)
        if t == 0:
            first = {"ss_fully_adjusted": str(ss_full.value),
                     "ss_adjusted": str(ss_t.value)}
        if ss_full.value == ss_t.value:
            equal += 1
        elif witness is None:
            witness = {"trial": t, "y": [str(v) for v in y],
                       "ss_fully_adjusted": str(ss_full.value),
                       "ss_adjusted": str(ss_t.value)}
    return EquivalenceReport(plan_name=plan.name, factor=a, adjust_for=adjust,
                             condition_holds=condition,
                             checked_against=tuple(others), trials=trials,
                             equal_trials=equal, first_trial=first,
                             witness=witness)
