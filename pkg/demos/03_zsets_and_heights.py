# %% [markdown]
# # The sets Z+ and Z- and geodesic heights

# %%
from fractions import Fraction

from gmt import GroupSpec, ZSetConfig, enumerate_ball, geodesic_heights
from gmt.cayley import height_report, zset_report

bs = GroupSpec.parse("2")
ball = enumerate_ball(bs, None, 12)
zr = zset_report(ball, ZSetConfig(Fraction(11, 10)))
for n in (3, 6, 9, 12):
    print(f"n={n:2d} |A n B|={zr.elliptic_counts[n]:4d} Z share={zr.fractions[n]:.4f}")

# %%
half = bs.element([Fraction(1, 2)], 0)
print("geodesic of t^-1 a t:", ball.geodesic(half), "heights:", geodesic_heights(ball, half))

# %%
hr = height_report(ball, "Z", ZSetConfig(Fraction(11, 10)))
print("min h/|g| over Z by radius:", [None if d is None else round(d, 3) for d in hr.delta_hat])
