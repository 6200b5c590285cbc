"""Plan data model: factors, runs, optional blocking, derived matrices,
and JSON / CSV serialization.

A plan is n runs on m factors.  Factor A with s_A levels produces the
n x s_A design matrix X_A (0/1, one unit entry per row).  Two
pseudo-factors are addressable wherever a factor identifier is accepted:
``GENERAL`` ("G", the all-ones column) and ``BLOCK`` (the n x b block
indicator, only for blocked plans).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    BlockSizeMismatch,
    LevelOutOfRange,
    NoBlocks,
    SchemaViolation,
    UnknownFactor,
)

GENERAL = "G"
BLOCK = "block"
RESERVED = (GENERAL, BLOCK)


@dataclass(frozen=True)
class Factor:
    name: str
    levels: int

    def __post_init__(self):
        if not self.name or self.name in RESERVED:
            raise ValueError(f"invalid factor name {self.name!r}")
        if self.levels < 2:
            raise ValueError(f"factor {self.name}: needs >= 2 levels")


@dataclass(frozen=True)
class Plan:
    name: str
    factors: tuple
    runs: tuple
    block_sizes: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "runs", tuple(tuple(int(x) for x in r) for r in self.runs))
        if self.block_sizes is not None:
            object.__setattr__(self, "block_sizes", tuple(int(k) for k in self.block_sizes))
        names = [f.name for f in self.factors]
        if len(set(names)) != len(names):
            raise ValueError("factor names must be unique")
        if not self.runs:
            raise ValueError("plan needs at least one run")
        m = len(self.factors)
        for i, run in enumerate(self.runs):
            if len(run) != m:
                raise ValueError(f"run {i} has {len(run)} coordinates, expected {m}")
            for f, x in zip(self.factors, run):
                if not 0 <= x < f.levels:
                    raise LevelOutOfRange(
                        f"run {i}, factor {f.name}: symbol {x} outside 0..{f.levels - 1}")
        if self.block_sizes is not None:
            if any(k < 1 for k in self.block_sizes):
                raise BlockSizeMismatch("block sizes must be positive")
            if sum(self.block_sizes) != len(self.runs):
                raise BlockSizeMismatch(
                    f"block sizes sum to {sum(self.block_sizes)}, plan has {len(self.runs)} runs")

    @property
    def n(self):
        return len(self.runs)

    @property
    def m(self):
        return len(self.factors)

    @property
    def b(self):
        return len(self.block_sizes) if self.block_sizes else 0

    @property
    def blocked(self):
        return self.block_sizes is not None

    @property
    def factor_names(self):
        return tuple(f.name for f in self.factors)

    def factor(self, name):
        for f in self.factors:
            if f.name == name:
                return f
        raise UnknownFactor(f"no factor named {name!r} in plan {self.name!r}")

    def column(self, name):
        """Symbols of one factor across runs, in run order."""
        j = self.factor_names.index(self.factor(name).name)
        return tuple(run[j] for run in self.runs)

    def block_of(self, run_index):
        if not self.blocked:
            raise NoBlocks(f"plan {self.name!r} has no blocks")
        upto = 0
        for j, k in enumerate(self.block_sizes):
            upto += k
            if run_index < upto:
                return j
        raise IndexError(run_index)

    def block_labels(self):
        """Block index of every run (requires blocking)."""
        if not self.blocked:
            raise NoBlocks(f"plan {self.name!r} has no blocks")
        out = []
        for j, k in enumerate(self.block_sizes):
            out.extend([j] * k)
        return tuple(out)


def _int_matrix(rows):
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = int(x)
    return out


@lru_cache(maxsize=None)
def design_matrix(plan, name):
    """n x s indicator matrix of a factor, or of GENERAL / BLOCK.

    Plans are immutable, so results are cached; treat the returned array
    as read-only.
    """
    if name == GENERAL:
        return _int_matrix([[1]] * plan.n)
    if name == BLOCK:
        labels = plan.block_labels()
        return _int_matrix([[int(lbl == j) for j in range(plan.b)] for lbl in labels])
    f = plan.factor(name)
    col = plan.column(name)
    return _int_matrix([[int(x == lvl) for lvl in range(f.levels)] for x in col])


def levels_of(plan, name):
    """Level count of a factor identifier, pseudo-factors included."""
    if name == GENERAL:
        return 1
    if name == BLOCK:
        if not plan.blocked:
            raise NoBlocks(f"plan {plan.name!r} has no blocks")
        return plan.b
    return plan.factor(name).levels


@lru_cache(maxsize=None)
def incidence(plan, a, b):
    """s_A x s_B count matrix N_AB = X_A' X_B (exact integers, cached;
    treat as read-only)."""
    xa = design_matrix(plan, a)
    xb = design_matrix(plan, b)
    return xa.T @ xb


def replication(plan, a):
    """Level replication counts r_A as an s_A x 1 column."""
    return incidence(plan, a, GENERAL)


def block_incidence(plan, a):
    """L_A = X_A' X_block, the s_A x b level-by-block counts."""
    return incidence(plan, a, BLOCK)


def block_diagonal(plan):
    """D_k = diag(block sizes) as an exact matrix."""
    if not plan.blocked:
        raise NoBlocks(f"plan {plan.name!r} has no blocks")
    b = plan.b
    out = _int_matrix([[0] * b for _ in range(b)])
    for j, k in enumerate(plan.block_sizes):
        out[j, j] = int(k)
    return out


# ---------------------------------------------------------------------------
# serialization

def plan_to_json(plan):
    doc = {
        "name": plan.name,
        "factors": [{"name": f.name, "levels": f.levels} for f in plan.factors],
        "runs": [list(run) for run in plan.runs],
    }
    if plan.blocked:
        doc["block_sizes"] = list(plan.block_sizes)
    return doc


def plan_dumps(plan):
    return json.dumps(plan_to_json(plan), indent=2, sort_keys=True) + "\n"


def _expect(doc, key, typ, path):
    if key not in doc:
        raise SchemaViolation(f"{path}.{key}", "missing")
    val = doc[key]
    if typ is int and isinstance(val, bool):
        raise SchemaViolation(f"{path}.{key}", "expected an integer")
    if not isinstance(val, typ):
        raise SchemaViolation(f"{path}.{key}", f"expected {typ.__name__}")
    return val


def plan_from_json(doc):
    if not isinstance(doc, dict):
        raise SchemaViolation("$", "expected an object")
    name = _expect(doc, "name", str, "$")
    raw_factors = _expect(doc, "factors", list, "$")
    factors = []
    for i, fd in enumerate(raw_factors):
        if not isinstance(fd, dict):
            raise SchemaViolation(f"$.factors[{i}]", "expected an object")
        fname = _expect(fd, "name", str, f"$.factors[{i}]")
        levels = _expect(fd, "levels", int, f"$.factors[{i}]")
        try:
            factors.append(Factor(fname, levels))
        except ValueError as exc:
            raise SchemaViolation(f"$.factors[{i}]", str(exc)) from exc
    raw_runs = _expect(doc, "runs", list, "$")
    runs = []
    for i, run in enumerate(raw_runs):
        if not isinstance(run, list):
            raise SchemaViolation(f"$.runs[{i}]", "expected a list")
        for j, x in enumerate(run):
            if isinstance(x, bool) or not isinstance(x, int):
                raise SchemaViolation(f"$.runs[{i}][{j}]", "expected an integer")
        runs.append(tuple(run))
    block_sizes = None
    if "block_sizes" in doc:
        raw_blocks = _expect(doc, "block_sizes", list, "$")
        for i, k in enumerate(raw_blocks):
            if isinstance(k, bool) or not isinstance(k, int):
                raise SchemaViolation(f"$.block_sizes[{i}]", "expected an integer")
        block_sizes = tuple(raw_blocks)
    return Plan(name=name, factors=tuple(factors), runs=tuple(runs), block_sizes=block_sizes)


def plan_loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("$", f"not valid JSON ({exc.msg})") from exc
    return plan_from_json(doc)


def plan_to_csv(plan):
    """One run per line; blocked plans carry a leading block-index column."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if plan.blocked:
        writer.writerow(["block", *plan.factor_names])
        for lbl, run in zip(plan.block_labels(), plan.runs):
            writer.writerow([lbl, *run])
    else:
        writer.writerow(list(plan.factor_names))
        for run in plan.runs:
            writer.writerow(list(run))
    return buf.getvalue()
