# %% [markdown]
# Isotropic partners in the extended Neron-Severi lattice
#
# For each partner vector v = (r, H, s) we look for an isotropic u with
# <u, v> = 1.  Then Z u + Z v is a hyperbolic plane and its orthogonal
# complement is spanned by a vector pi of square 2n, whose middle
# coefficient rm - ls is a unit modulo 2n.

# %%
from math import gcd

from k3fm import rank1

n = 6
for r, s in ((6, 1), (3, 2), (2, 3), (1, 6)):
    l, k, m = rank1.solve_hyperbolic_partner(n, r, s, k_bound=n)
    pi = rank1.pi_vector(n, r, s, l, k, m)
    print(f"(r,s)=({r},{s})  u=({l},{k},{m})  pi=({pi.a},{pi.c},{pi.b})  "
          f"pi^2={pi.square}  gcd(rm-ls, 2n)={gcd(r * m - l * s, 2 * n)}")

# %%
# The whole check for every n up to 60 takes a fraction of a second.
bad = [c for n in range(1, 61) for c in rank1.check_lemma23(n) if not c.ok]
print("failures:", bad)

# %% [markdown]
# Over the natural numbers the equations lm = n k^2, rm + ls = 2nk - 1
# have no solutions at all: by AM-GM rm + ls >= 2 sqrt(rs lm) = 2nk.
# Allowing signs gives a non-empty search space.

# %%
for n in (6, 10, 15):
    nat = rank1.hyperbolic_solutions(n, 12)
    signed = rank1.hyperbolic_solutions(n, 12, signed=True)
    bad = rank1.search_lemma25_counterexamples(n, 12, signed=True)
    print(n, "naturals:", len(nat), "signed:", len(signed), "violations:", len(bad))
