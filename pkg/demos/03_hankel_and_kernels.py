# %% [markdown]
# Hankel determinants from the partial quotients, and empirical 2-kernels.

# %%
from stieltjes import ZZ, expand_stieltjes, get_sequence
from stieltjes.verify import (
    column_automaticity_probe,
    double_running_product,
    hankel_direct,
    hankel_heilermann,
    squares_control_probe,
    stieltjes_kernel_probe,
)

pf = get_sequence("paperfolding", 200)
s = expand_stieltjes(pf, 40, ZZ)

# %%
# determinants of the x-shifted coefficients vs the product formula
direct = [hankel_direct(s.coeffs[1:], n) for n in range(1, 21)]
product = [hankel_heilermann(pf, n) for n in range(1, 21)]
print(direct)
print(direct == product == double_running_product(pf.prefix, 20))

# %%
for name in ("paperfolding", "rudin-shapiro"):
    r = stieltjes_kernel_probe(name)
    print(name, r.size, r.saturated, r.counts_by_level)
print("squares", squares_control_probe().counts_by_level)

# %%
reports = column_automaticity_probe("rudin-shapiro", "Q", 8, 2**12)
print([r.size for r in reports], all(r.saturated for r in reports))
