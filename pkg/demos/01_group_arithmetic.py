# %% [markdown]
# # Arithmetic in G(m, T)
#
# Elements are stored as (v, k): the t-exponent sum k and a rational vector v.
# Equality is a plain comparison of these pairs, so there is no word problem to solve.

# %%
from gmt import GroupSpec

bs = GroupSpec.parse("2")  # BS(1,2) = <a, t | t a t^-1 = a^2>
g = bs.element_from_word("t a1 t^-1")
print(g, "==", bs.a(1, 2), g == bs.a(1, 2))

# %%
h = bs.element_from_word("t^-1 a1 t")
print("t^-1 a t  ->", h, " normal form:", bs.normal_form(h))
print("[a, t] =", bs.simple_commutator([bs.a(1), bs.t()]))

# %% [markdown]
# Growth class is decided with exact matrix identities: (T - I)^m = 0, then (T^N - I)^m = 0.

# %%
for text in ["1", "1,1;0,1", "0,-1;1,0", "2", "2,1;1,1"]:
    spec = GroupSpec.parse(text)
    print(f"{text:10s} N={spec.N:<4d} {spec.growth_class.value}")

# %% [markdown]
# Upper central series of H = <a_1, ..., a_m, t^N> inside the Heisenberg-type group:

# %%
heis = GroupSpec.parse("1,1;0,1")
for word in ["a1", "a2", "t a2 t^-1", "t"]:
    print(word, "->", heis.central_series_index(heis.element_from_word(word)))
