"""Tour of the basic object: a main-effect plan whose factor pairs are
orthogonal *through* the block factor.

The 10-run plan below accommodates seven 2-level factors in two blocks of
five.  No pair of factors is orthogonal in the ordinary (proportional
frequencies) sense -- the run count 10 is not even divisible by 4 -- yet
after adjusting for blocks every one of the 21 pairs decouples exactly.
"""

from fractions import Fraction

from orthoplan import seed_plans
from orthoplan.orthogonality import is_potb, orth_through
from orthoplan.plan import GENERAL, plan_to_csv

plan = seed_plans()["potb_2_7"]
print(plan_to_csv(plan))

# Ordinary orthogonality fails for, say, (A1, A2) ...
raw = orth_through(plan, "A1", "A2", (GENERAL,))
print("orthogonal after removing the mean only?", raw.passed)
print("residual:", [[str(Fraction(x)) for x in row] for row in raw.residual])

# ... but conditioning on the block factor clears every pair at once.
report = is_potb(plan)
print("\npairs checked:", len(report.pairs), "all pass:", report.passed)

# The payoff: the joint information matrix for all 7 main-effect
# contrasts is exactly 4 * I -- every factor looks like it sits in its
# own tidy orthogonal experiment.
ok, value = report.c_matrix.scalar_identity()
assert ok and value == 4
print("contrast information matrix = %s * identity (dim %d)"
      % (value, report.c_matrix.dim))
