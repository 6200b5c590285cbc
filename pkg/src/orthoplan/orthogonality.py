"""Orthogonality of factor pairs through a conditioning set.

Factors A and B are orthogonal through a set T of other factors when

    X_A' (I - P_T) X_B = 0,

with P_T the orthogonal projector on the span of the design matrices of
the members of T.  Everything here is evaluated in exact rational
arithmetic via the small-matrix identity

    X_A' (I - P_T) X_B = N_AB - N_AT (X_T' X_T)^- N_BT',

which never materializes an n x n projector.  Special cases:

* T = {G}: reduces to the proportional frequency condition
  n N_AB = r_A r_B'.
* T = {block}: the defining condition of a plan orthogonal through the
  block factor, N_AB = L_A D_k^{-1} L_B'.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import ratmat
from .contrasts import ContrastMatrix, helmert_norms, helmert_raw
from .errors import NoBlocks, OverlappingSets
from .plan import (
    BLOCK,
    GENERAL,
    block_diagonal,
    block_incidence,
    incidence,
    levels_of,
    replication,
)

__all__ = [
    "PairCheck",
    "OrthReport",
    "orth_through",
    "proportional_frequencies",
    "is_potb",
    "is_potp",
    "contrast_c_matrix",
    "c_matrix_factor",
    "adjusted_information",
    "gram",
    "connected_factors",
]


def _as_tuple(t):
    if t is None:
        return ()
    if isinstance(t, str):
        return (t,)
    return tuple(t)


def gram(plan, idents):
    """X_T' X_T for the stacked design matrices of ``idents``, assembled
    from pairwise incidence counts (exact, small)."""
    idents = _as_tuple(idents)
    sizes = [levels_of(plan, u) for u in idents]
    total = sum(sizes)
    out = ratmat.zeros(total, total)
    offs = np.cumsum([0] + sizes)
    for a, u in enumerate(idents):
        for b, v in enumerate(idents):
            out[offs[a]:offs[a + 1], offs[b]:offs[b + 1]] = incidence(plan, u, v)
    return out


def cross_incidence(plan, a, idents):
    """N_AT = X_A' X_T as one wide exact matrix."""
    idents = _as_tuple(idents)
    blocks = [incidence(plan, a, u) for u in idents]
    if not blocks:
        return ratmat.zeros(levels_of(plan, a), 0)
    return np.hstack(blocks)


def adjusted_information(plan, a, b, through, reverse=False):
    """X_A' (I - P_T) X_B = N_AB - N_AT (X_T'X_T)^- N_BT', exact.

    The middle factor (X_T'X_T)^- N_BT' is obtained by solving the
    always-consistent normal system X_T'X_T Z = N_BT'; the product
    N_AT Z does not depend on the solution choice (``reverse`` flips the
    elimination order, which the invariance tests exploit).
    """
    through = _as_tuple(through)
    n_ab = ratmat.rational(incidence(plan, a, b))
    if not through:
        return n_ab
    g_mat = gram(plan, through)
    n_at = ratmat.rational(cross_incidence(plan, a, through))
    n_bt = ratmat.rational(cross_incidence(plan, b, through))
    z = ratmat.solve_consistent(g_mat, n_bt.T, reverse=reverse)
    return n_ab - n_at @ z


@dataclass(frozen=True)
class PairCheck:
    a: str
    b: str
    through: tuple
    passed: bool
    residual: np.ndarray
    pfc: bool | None = None
    informational: bool = False

    def to_json(self):
        doc = {
            "a": self.a,
            "b": self.b,
            "through": list(self.through),
            "pass": self.passed,
        }
        if self.pfc is not None:
            doc["pfc"] = self.pfc
        if self.informational:
            doc["informational"] = True
        if not self.passed:
            doc["residual"] = [[str(Fraction(x)) for x in row] for row in self.residual]
        return doc


@dataclass(frozen=True)
class OrthReport:
    plan_name: str
    check: str
    pairs: tuple
    c_matrix: ContrastMatrix | None = None

    @property
    def passed(self):
        return all(p.passed for p in self.pairs if not p.informational)

    def pair(self, a, b):
        for p in self.pairs:
            if {p.a, p.b} == {a, b}:
                return p
        raise KeyError((a, b))

    def to_json(self):
        doc = {
            "plan": self.plan_name,
            "check": self.check,
            "pass": self.passed,
            "pairs": [p.to_json() for p in self.pairs],
        }
        if self.c_matrix is not None:
            doc["c_matrix"] = {
                "entries": self.c_matrix.entries_json(),
                "eigenvalues": self.c_matrix.eigenvalues(),
            }
        return doc


def orth_through(plan, a, b, through):
    """Single-pair check; returns a PairCheck with the exact residual."""
    through = _as_tuple(through)
    if a == b or a in through or b in through:
        raise OverlappingSets(f"{a!r}, {b!r} must be distinct and outside {through!r}")
    return _orth_through_cached(plan, a, b, through)


@lru_cache(maxsize=None)
def _orth_through_cached(plan, a, b, through):
    residual = adjusted_information(plan, a, b, through)
    return PairCheck(a=a, b=b, through=through, passed=ratmat.is_zero(residual),
                     residual=residual)


def proportional_frequencies(plan, a, b):
    """The proportional frequency condition n N_AB = r_A r_B' (equivalent
    to orthogonality through the general effect alone)."""
    n_ab = ratmat.rational(incidence(plan, a, b))
    ra = ratmat.rational(replication(plan, a))
    rb = ratmat.rational(replication(plan, b))
    return bool((plan.n * n_ab == ra @ rb.T).all())


def _eq_blocked(plan, a, b):
    """Residual of the blocked condition N_AB - L_A D_k^{-1} L_B'."""
    n_ab = ratmat.rational(incidence(plan, a, b))
    la = ratmat.rational(block_incidence(plan, a))
    lb = ratmat.rational(block_incidence(plan, b))
    dk = block_diagonal(plan)
    dinv = ratmat.zeros(plan.b, plan.b)
    for j in range(plan.b):
        dinv[j, j] = Fraction(1, int(dk[j, j]))
    return n_ab - la @ dinv @ lb.T


def is_potb(plan):
    """Check every unordered treatment pair for orthogonality through the
    block factor; PFC status through {G} is recorded per pair as well."""
    if not plan.blocked:
        raise NoBlocks(f"plan {plan.name!r} has no blocks")
    checks = []
    for a, b in combinations(plan.factor_names, 2):
        residual = _core_pair(plan, a, b)
        checks.append(PairCheck(
            a=a, b=b, through=(BLOCK,), passed=ratmat.is_zero(residual),
            residual=residual, pfc=proportional_frequencies(plan, a, b)))
    return OrthReport(plan_name=plan.name, check="potb", pairs=tuple(checks),
                      c_matrix=contrast_c_matrix(plan))


def is_potp(plan, through):
    """Check every unordered factor pair outside ``through`` for
    orthogonality through that pair (or any factor set)."""
    through = _as_tuple(through)
    for t in through:
        plan.factor(t)
    rest = [f for f in plan.factor_names if f not in through]
    checks = []
    for a, b in combinations(rest, 2):
        checks.append(orth_through(plan, a, b, through))
    return OrthReport(plan_name=plan.name, check="potp", pairs=tuple(checks),
                      c_matrix=contrast_c_matrix(plan))


@lru_cache(maxsize=None)
def _core_pair(plan, a, b):
    """The pair matrix entering the contrast C-matrix: N_AB for unblocked
    plans, N_AB - L_A D_k^{-1} L_B' for blocked ones.  Cached; treat the
    result as read-only."""
    if plan.blocked:
        return _eq_blocked(plan, a, b)
    return ratmat.rational(incidence(plan, a, b))


def contrast_c_matrix(plan):
    """The C-matrix of all normalized main-effect contrasts, dimension
    v = sum_A (s_A - 1), as an exact ContrastMatrix."""
    names = plan.factor_names
    raws = {f: helmert_raw(plan.factor(f).levels) for f in names}
    norms = []
    labels = []
    for f in names:
        s = plan.factor(f).levels
        norms.extend(helmert_norms(s))
        labels.extend([f"{f}[{j}]" for j in range(1, s)])
    v = len(norms)
    raw = ratmat.zeros(v, v)
    offs = {}
    pos = 0
    for f in names:
        offs[f] = pos
        pos += plan.factor(f).levels - 1
    for i, a in enumerate(names):
        for b in names[i:]:
            core = _core_pair(plan, a, b)
            block = raws[a] @ core @ raws[b].T
            ia, ib = offs[a], offs[b]
            raw[ia:ia + block.shape[0], ib:ib + block.shape[1]] = block
            if a != b:
                raw[ib:ib + block.shape[1], ia:ia + block.shape[0]] = block.T
    return ContrastMatrix(raw=raw, norms=tuple(norms), labels=tuple(labels))


def c_matrix_factor(plan, a, adjust_for=None):
    """C_{AA;T} = X_A' (I - P_T) X_A, exact.

    ``adjust_for=None`` adjusts for everything else: all other treatment
    factors, the general effect, and the block factor when present,
    giving the factor's fully adjusted information matrix C_A.
    """
    if adjust_for is None:
        adjust_for = [f for f in plan.factor_names if f != a] + [GENERAL]
        if plan.blocked:
            adjust_for.append(BLOCK)
    adjust_for = _as_tuple(adjust_for)
    if a in adjust_for:
        raise OverlappingSets(f"{a!r} cannot be adjusted for itself")
    return adjusted_information(plan, a, a, adjust_for)


def connected_factors(plan):
    """Per-factor connectedness: rank(C_A) == s_A - 1.  Emits a warning
    for each disconnected factor."""
    out = {}
    for f in plan.factor_names:
        c = c_matrix_factor(plan, f)
        ok = ratmat.rank(c) == plan.factor(f).levels - 1
        if not ok:
            warnings.warn(f"factor {f} is not connected in plan {plan.name!r}")
        out[f] = ok
    return out
