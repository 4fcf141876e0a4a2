# %% [markdown]
# # Quotients by a 2-closed derivation
#
# Integral curves push forward with half their self-intersection, the others
# with double.  Applied curve by curve to the pulled-back canonical class this
# gives 2K on the quotient.

# %%
from coblecheck import load_registry
from coblecheck.quotient import (euler_identity_check, pushforward_self_intersection,
                                 quotient_surface)

print(pushforward_self_intersection(-2, True), pushforward_self_intersection(-2, False))

# %%
reg = load_registry()
q = quotient_surface(reg.scenarios["E8"])
print("2K' =", q.two_K_before.pretty())
print("boundary:", q.boundary)
for name, ok in q.checks.items():
    print(f"  {name}: {ok}")

# %% [markdown]
# Only fixtures with every pairing recorded can decide the global identities.
# The rest report None on what they cannot see.

# %%
for name, s in reg.scenarios.items():
    e = euler_identity_check(s)
    print(f"{name:10} complete={s.complete!s:5} (D)^2={e.D_squared} K.(D)={e.K_dot_D} euler={e.passed}")
