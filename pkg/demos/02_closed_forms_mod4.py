# %% [markdown]
# Power series of the two continued fractions against their closed forms.
# The convergent closed forms hold mod 4; the full closed forms only hold mod 2.

# %%
from stieltjes import Zmod, expand_stieltjes, get_sequence, theorem1_rhs, theorem2_rhs
from stieltjes.closedform import s_infinity_identities
from stieltjes.verify import verify_paperfolding_lemma, verify_rs_lemma

Z2, Z4 = Zmod(2), Zmod(4)
N = 512

# %%
pf = expand_stieltjes(get_sequence("paperfolding", N + 2), N, Z4)
rs = expand_stieltjes(get_sequence("rudin-shapiro", N + 2), N, Z4)
print(pf.tolist()[:16])
print(rs.tolist()[:16])

# %%
for name, lhs, rhs in (("paperfolding", pf, theorem1_rhs(N)), ("rudin-shapiro", rs, theorem2_rhs(N))):
    k = lhs.first_difference(rhs)
    diffs = sum(a != b for a, b in zip(lhs.tolist(), rhs.tolist()))
    print(f"{name}: first difference x^{k} ({lhs[k]} vs {rhs[k]}), {diffs} coefficients differ,"
          f" equal mod 2: {lhs.reduce(Z2) == rhs.reduce(Z2)}")

# %%
# the step that breaks: S^4 agrees with S(x^4) only mod 2
print(s_infinity_identities(N))

# %%
print(verify_paperfolding_lemma(range(4, 11)).passed, verify_rs_lemma(range(2, 6)).passed)
