# %% [markdown]
# Fourier-Mukai partners when the Picard number is one
#
# A K3 surface X with NS(X) = <2n> has one partner for every coprime
# factorisation n = r s with r >= s.  Three independent routes reach the
# same number 2^(tau(n) - 1): listing the factorisations, counting double
# cosets in the isometry group of the discriminant form, and measuring
# the covering group of the period space.

# %%
from k3fm import counting, rank1

for n in (1, 6, 12, 30, 210):
    parts = rank1.enumerate_partners(n)
    print(n, [(p.r, p.s) for p in parts], "expected", rank1.expected_partner_count(n))

# %%
# The Mukai vector (r, H, s) of each partner's moduli space squares to zero.
for p in rank1.enumerate_partners(30):
    v = p.mukai_vector
    print((p.r, p.s), "v^2 =", v.square, "special:", rank1.is_special(v))

# %%
rows = []
for n in range(2, 31):
    rows.append((n, len(rank1.enumerate_partners(n)), counting.rank1_fm_count(n),
                 counting.gamma_quotient_order(n)))
print("n  listing  double-cosets  covering")
for row in rows:
    print("{:<3}{:^9}{:^15}{:^9}".format(*row))
