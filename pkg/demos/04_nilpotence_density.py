# %% [markdown]
# # How often do simple commutators vanish?

# %%
from gmt import GroupSpec, enumerate_ball, nr_density_exhaustive, nr_density_sampled

bs = GroupSpec.parse("2")
ball = enumerate_ball(bs, None, 5)
ex = nr_density_exhaustive(bs, ball, 1)
print("exact gamma_n(N_1):", [str(g) for g in ex.gammas])

sa = nr_density_sampled(bs, ball, 1, samples=5000, seed=1, radii=[5])
print("sampled at n=5:", sa.estimates[0], "95% CI", sa.cis[0])

# %%
heis = GroupSpec.parse("1,1;0,1")
hb = enumerate_ball(heis, None, 2)
print("Heisenberg, r=1:", [str(g) for g in nr_density_exhaustive(heis, hb, 1).gammas])
print("Heisenberg, r=2:", [str(g) for g in nr_density_exhaustive(heis, hb, 2).gammas])
