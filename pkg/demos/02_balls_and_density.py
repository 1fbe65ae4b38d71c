# %% [markdown]
# # Balls, growth and densities
#
# Breadth-first search gives B_X(n) exactly. Density sequences of subsets follow from it.

# %%
from gmt import GroupSpec, density_report, enumerate_ball, growth_estimate

bs = GroupSpec.parse("2")
ball = enumerate_ball(bs, None, 12)
print("|B(n)|:", ball.per_radius_counts)
est = growth_estimate(ball)
print("sphere ratios:", [round(r, 3) for r in est.ratios])

# %% [markdown]
# The elliptic subgroup A = ker(tau) takes up a vanishing share of the ball:

# %%
rep = density_report(ball, "tau=0")
for n in range(0, 13, 3):
    print(f"n={n:2d} gamma={float(rep.gammas[n]):.4f}")

# %% [markdown]
# In BS(1,2) x Z the factor H = <a1, t> keeps a positive share although it has infinite index.
# The share drifts down to (lambda - 1)/(lambda + 1), where lambda is the growth rate of BS(1,2).

# %%
g2 = GroupSpec.parse("2,0;0,1")
rep = density_report(enumerate_ball(g2, None, 10), "v2=0")
print([round(float(x), 4) for x in rep.gammas])
