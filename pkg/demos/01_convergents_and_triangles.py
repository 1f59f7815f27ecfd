# %% [markdown]
# Convergents of the paperfolding continued fraction and the coefficient
# triangles they leave modulo 4.

# %%
import numpy as np

from stieltjes import ZZ, Zmod, coefficient_table, convergents, get_sequence
from stieltjes.render import RenderSpec, render_table

pf = get_sequence("paperfolding", 64)
pf.values(16)

# %%
# first few P_n / Q_n over the integers
for pair in convergents(pf, 6, ZZ):
    print(pair.index, pair.P.tolist(), pair.Q.tolist())

# %%
# a_{n,i} of Q_n mod 4; column 0 is constant, most of the upper part is zero
t = coefficient_table(pf, 32, 16, Zmod(4), "Q")
print(t.entries[:12, :8])
print("nonzero share:", np.count_nonzero(t.entries) / t.entries.size)

# %%
# zero runs sit below constant runs one column to the right
e = t.entries
steps = e[2:, 1:] == e[1:-1, 1:]
print("violations:", int((e[:-2, :-1][steps] != 0).sum()))

# %%
spec = RenderSpec(track="Q", seq_name="paperfolding", n_range=(1, 256), i_range=(0, 128), scale=2)
render_table(spec, "paperfolding_q.ppm")
print("wrote paperfolding_q.ppm")
