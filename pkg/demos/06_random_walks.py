# %% [markdown]
# # Random-walk measures versus ball counting

# %%
from fractions import Fraction

from gmt import GroupSpec, WalkConfig, walk_estimate

bs = GroupSpec.parse("2")
for n in (50, 100, 200):
    rep = walk_estimate(bs, None, WalkConfig(n, 50_000, seed=0, lazy_mass=Fraction(1, 5)), ["tau=0"])
    print(f"n={n:3d} P(tau=0)={rep.estimates[0]:.4f} tau variance={rep.tau_variance:.2f} (expected {2 * n / 5})")

# %%
rep = walk_estimate(bs, None, WalkConfig(20, 5000, seed=1), ["tau=0 & integral", "tau=0 & !integral"])
print(rep.to_json()["perPredicate"])
