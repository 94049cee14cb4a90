# %% [markdown]
# Discriminant forms and their isometry groups
#
# L*/L with q(x) = <x, x> mod 2 is computed from the Smith normal form of
# the Gram matrix.  Its isometry group is enumerated exhaustively.

# %%
from k3fm.discform import enumerate_isometries, negate, same_genus
from k3fm.lattice import discriminant_form, signature, standard_lattice

for n in (2, 6, 30):
    L = standard_lattice("lambda_n", n)
    F = discriminant_form(L)
    print(f"Lambda_{n}: signature {tuple(signature(L))}, {F}, |O| = {len(enumerate_isometries(F))}")

# %%
# <2n> and Lambda_n have anti-isometric discriminant forms, as orthogonal
# complements inside a unimodular lattice must.
for n in (6, 30):
    A = discriminant_form(standard_lattice("rank1", 2 * n))
    B = discriminant_form(standard_lattice("lambda_n", n))
    print(n, A, "|", negate(B))

# %%
from k3fm.lattice import IntegerLattice

A = IntegerLattice(((2, 15), (15, -2)))
B = IntegerLattice(((6, 13), (13, -10)))
print("same genus:", same_genus(A, B))
