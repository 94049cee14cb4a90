# %% [markdown]
# Indefinite binary quadratic forms
#
# Reduced forms of discriminant D fall into rho-cycles, one per proper
# class.  Walking the principal cycle also finds the fundamental unit,
# which decides whether the narrow and wide class numbers agree.

# %%
from k3fm import bqf, counting

for D in (5, 13, 229, 257):
    cs = bqf.cycles(D)
    u = bqf.pell_fundamental(D)
    print(f"D={D}: {len(cs)} cycles, unit ({u.x} + {u.y} sqrt D)/2 of norm {u.norm_sign}, "
          f"h = {bqf.wide_class_number(D)}")

# %%
for c in bqf.cycles(229):
    print(" -> ".join(f"({f.a},{f.b},{f.c})" for f in c))

# %% [markdown]
# A real quadratic field with no unit of norm -1 has twice as many
# narrow classes as ideal classes.

# %%
D = 12
print(bqf.narrow_class_number(D), bqf.wide_class_number(D), bqf.pell_fundamental(D))

# %% [markdown]
# Picard number two, NS of determinant -p: (h(p) + 1) / 2 partners.

# %%
for p in (5, 13, 229, 257, 401):
    print(p, bqf.wide_class_number(p), counting.rank2_fm_count(p))
