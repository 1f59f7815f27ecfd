import numpy as np
import pytest
from conftest import sign_lists
from hypothesis import given, settings

from stieltjes.cfrac import (
    MAX_TABLE_ROWS,
    b_convergents,
    block_product,
    coefficient_table,
    convergent,
    convergent_from_text,
    convergent_to_text,
    convergents,
    expand_stieltjes,
    matrix_product_convergents,
    table_from_text,
    table_to_text,
)
from stieltjes.ring import ZZ, Poly, Zmod
from stieltjes.seq import ResourceError, get_sequence, sequence_prefix

Z4 = Zmod(4)
X = Poly([0, 1])


def test_first_convergents():
    pf = get_sequence("paperfolding", 8)
    pairs = list(convergents(pf, 2))
    assert (pairs[0].P, pairs[0].Q) == (X, Poly.one())
    assert (pairs[1].P, pairs[1].Q) == (X, Poly([1, 1]))
    # c_2 = -1: Q_2 = Q_1 - x Q_0
    assert pairs[2].Q == pairs[1].Q - X * pairs[0].Q == Poly.one()
    assert pairs[2].P == Poly([0, 1, -1])


def test_matrix_product_small():
    pf = get_sequence("paperfolding", 8)
    assert matrix_product_convergents(pf, 1) == (X, X, Poly.one(), Poly([1, 1]))
    Pm, P, Qm, Q = matrix_product_convergents(pf, 2)
    assert (P, Q) == (Poly([0, 1, -1]), Poly.one())


def test_b_convergents_are_block_products():
    for name in ("paperfolding", "rudin-shapiro"):
        vals = sequence_prefix(name, 8)[4:8]
        assert b_convergents(name, 2) == block_product(vals, 0, 4)
        assert b_convergents(name, 2)[3](0) == 1
    assert sequence_prefix("paperfolding", 8)[4:].tolist() == [1, -1, -1, 1]
    assert sequence_prefix("rudin-shapiro", 8)[4:].tolist() == [1, 1, -1, 1]
    with pytest.raises(ValueError):
        b_convergents("paperfolding", 1)


def test_expansion_low_terms():
    for name in ("paperfolding", "rudin-shapiro"):
        seq = get_sequence(name, 64)
        s = expand_stieltjes(seq, 20)
        assert s[0] == 0 and s[1] == seq[0]
    pf = expand_stieltjes(get_sequence("paperfolding", 16), 8, Z4)
    assert pf[2] == 3


def test_expansion_over_z_reduces():
    seq = get_sequence("rudin-shapiro", 200)
    assert expand_stieltjes(seq, 150).reduce(Z4) == expand_stieltjes(seq, 150, Z4)


def _deg_bounds_ok(n, P, Q):
    return Q.degree <= -(-n // 2) and P.degree <= -(-(n + 1) // 2)


@settings(max_examples=200)
@given(sign_lists(2, 64))
def test_convergent_properties(c):
    n_max = len(c) - 1
    pairs = list(convergents(c, n_max))
    prod = 1
    for n, pair in enumerate(pairs):
        prod *= c[n]
        assert pair.Q(0) == 1 and pair.P(0) == 0
        assert _deg_bounds_ok(n, pair.P, pair.Q)
        if n >= 1:
            prev = pairs[n - 1]
            det = prev.P * pair.Q - pair.P * prev.Q
            assert det == Poly.monomial(n + 1, (-1) ** (n + 1) * prod)
    assert matrix_product_convergents(c, n_max)[1::2] == (pairs[-1].P, pairs[-1].Q)
    native = list(convergents(c, n_max, Z4))
    for a, b in zip(pairs, native):
        assert a.P.reduce(Z4) == b.P and a.Q.reduce(Z4) == b.Q


@settings(max_examples=200)
@given(sign_lists(2, 40))
def test_stabilization(c):
    prod = 1
    for n in range(len(c)):
        prod *= c[n]
        if n == 0:
            continue
        lo = convergent(c, n - 1)
        hi = convergent(c, n)
        order = n + 1
        a = lo.P.to_series(order) * _inv(lo.Q, order)
        b = hi.P.to_series(order) * _inv(hi.Q, order)
        assert a.first_difference(b) == n + 1
        assert b[n + 1] - a[n + 1] == (-1) ** n * prod


def _inv(q, order):
    from stieltjes.ring import series_inverse

    return series_inverse(q.to_series(order))


def _triangle_violations(entries, modulus):
    """Scan for constant runs in a column and check the column to the left."""
    bad = []
    rows, cols = entries.shape
    for i in range(1, cols):
        col = entries[:, i]
        n1 = 1
        while n1 < rows:
            end = n1
            while end + 1 < rows and col[end + 1] == col[n1]:
                end += 1
            for n in range(n1 - 1, end - 1):
                if entries[n, i - 1] % modulus:
                    bad.append((n, i))
            n1 = end + 1
    return bad


@settings(max_examples=200)
@given(sign_lists(3, 64))
def test_triangle_mechanism(c):
    n_max = len(c) - 1
    for track in ("P", "Q"):
        t = coefficient_table(c, n_max, n_max // 2 + 2, Z4, track)
        assert _triangle_violations(t.entries, 4) == []


def test_triangle_scan_catches_violation():
    e = np.array([[1, 0], [1, 5], [1, 5], [1, 5]])
    assert _triangle_violations(e, 4)


@settings(max_examples=50)
@given(sign_lists(3, 64))
def test_table_rows_match_convergents(c):
    n_max = len(c) - 1
    for track in ("P", "Q"):
        t = coefficient_table(c, n_max, n_max, ZZ, track)
        for pair in convergents(c, n_max):
            F = pair.P if track == "P" else pair.Q
            row = t.row(pair.index)
            assert row[: F.degree + 1].tolist() == F.tolist()
            assert not row[F.degree + 1 :].any()


def test_table_columns():
    c = sequence_prefix("paperfolding", 200)
    t = coefficient_table(c, 199, 120, ZZ, "Q")
    assert (t.column(0) == 1).all()
    for n in range(2, 200):
        assert t.entries[n, 1] == t.entries[2, 1] + t.entries[1, 0] * c[3 : n + 1].sum()
        assert not t.row(n)[-(-n // 2) + 1 :].any()
    e = t.entries
    for n in range(2, 200):
        assert e[n, 0] == e[n - 1, 0]
        assert (e[n, 1:] == e[n - 1, 1:] + c[n] * e[n - 2, :-1]).all()


def test_table_caps():
    with pytest.raises(ResourceError):
        coefficient_table(np.ones(MAX_TABLE_ROWS + 10, dtype=int), MAX_TABLE_ROWS + 1, 4)
    with pytest.raises(ValueError):
        coefficient_table([1, 1, 1], 2, 2, ZZ, "R")


def test_text_round_trips():
    c = sequence_prefix("rudin-shapiro", 40)
    t = coefficient_table(c, 39, 20, Z4, "P")
    back = table_from_text(table_to_text(t), "P", Z4)
    assert np.array_equal(back.entries, t.entries)
    pair = convergent(c, 30)
    again = convergent_from_text(convergent_to_text(pair), 30, ZZ)
    assert (again.P, again.Q) == (pair.P, pair.Q)
