# %% [markdown]
# # Certificates of exponential growth for A
#
# For a witness (R, j) the 2^(k+1) products a_j^e0 t^R a_j^e1 ... t^R a_j^ek, shifted back into A,
# are pairwise distinct. Each has length at most (2R+1)(k+1).

# %%
from gmt import GroupSpec, density_report, enumerate_ball, find_witness, verify_certificate

cat = GroupSpec.parse("2,1;1,1")
R, j = find_witness(cat)
cert = verify_certificate(cat, R, j, 14)
print(cert)

# %% [markdown]
# Compare with the true count for BS(1,2) where the ball is small enough to enumerate:

# %%
bs = GroupSpec.parse("2")
cert = verify_certificate(bs, *find_witness(bs), 3)
ball = enumerate_ball(bs, None, cert.radius_bound)
print(f"|A n B({cert.radius_bound})| = {density_report(ball, 'tau=0').counts[-1]} >= {cert.count}")
