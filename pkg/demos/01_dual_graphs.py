# %% [markdown]
# # Dual graphs of Coble surfaces with finite automorphism group
#
# Each bundled graph records the effective roots of one surface.  We certify
# that its reflection group has finite index, propagate root labels and count
# boundary components.

# %%
from coblecheck import load_registry
from coblecheck.cm import boundary_count, propagate_labels
from coblecheck.dynkin import vinberg_check

reg = load_registry()
print(sorted(reg.graphs))

# %% [markdown]
# Vinberg's condition with r = 9: every connected parabolic subdiagram must
# extend to one of rank 8.  The witnesses are the completions.

# %%
e8 = reg.graph("E8").graph
v = vinberg_check(e8, 9)
print(v.verdict, len(v.witnesses), "connected parabolics")
for comp, par in list(v.witnesses.items())[:3]:
    print("  ", "-".join(comp), "->", " + ".join(par.types))

# %% [markdown]
# Deleting one vertex from the E~7 + A~1 graph leaves a parabolic without a
# completion, and the verdict flips.

# %%
g = reg.graph("E7+A1(2)").graph
bad = vinberg_check(g.delete("E11"), 9)
print(bad.verdict, [c.vertices for c in bad.counterexamples])

# %% [markdown]
# Labels and boundary counts.  VII leaves its fifteen P vertices undetermined
# between two uniform choices, and each choice gives its own n.

# %%
for name in ("E8", "E6+A2", "VII", "VIII"):
    fx = reg.graph(name)
    lr = propagate_labels(fx.graph, fx.assumptions)
    bc = boundary_count(fx.graph, lr.labelings, fx.fibration, fx.assumptions)
    print(f"{name:8} n in {list(bc.n_values)}")
