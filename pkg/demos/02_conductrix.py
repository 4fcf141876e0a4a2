# %% [markdown]
# # Conductrices on Kodaira fibers
#
# On a simple elliptic fiber the conductrix is read off from multiplicities:
# half of each, rounded down.  The exhaustive solver reaches the same answer
# without being told the formula.

# %%
from coblecheck.conductrix import (ConductrixProblem, examine_conductrix,
                                   simple_fiber_conductrix, solve_conductrix,
                                   solve_quasi_elliptic)

for t in ("I4", "IV", "I0*", "II*"):
    p = ConductrixProblem.make(t)
    print(t, [c.pretty() for c in solve_conductrix(p).conductrices],
          "| formula:", simple_fiber_conductrix(t).pretty() or "0")

# %% [markdown]
# Multiple fibers need the s/r bookkeeping.  With a (-2) 2-section meeting E3,
# a multiple I1* admits a single candidate.

# %%
p = ConductrixProblem.make("I1*", multiple=True, two_section="E3")
res = solve_conductrix(p)
print(p.describe(), "->", [c.pretty() for c in res.conductrices])
print(res.solutions[0].trace[-1])

# %% [markdown]
# Some patterns pass the numerical tests and still die in the blown-up-point
# count.

# %%
p = ConductrixProblem.make("I4*", multiple=True)
print(examine_conductrix(p, {"E3": 1, "E4": 1, "E5": 1, "E6": 1,
                             "E7": 2, "E8": 2, "E9": 2})[:2])

# %% [markdown]
# A quasi-elliptic multiple II* hits the default coefficient bound; one more
# unit of slack settles it.

# %%
print(solve_quasi_elliptic("II*", True, slack=1))
for att, r in solve_quasi_elliptic("II*", True, slack=2).items():
    print(att, [c.pretty() for c in r.conductrices])
