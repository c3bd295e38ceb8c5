import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from butterfly_bct.butterfly import ButterflyParams, closed_butterfly, gamma_enumerate
from butterfly_bct.field import FieldSpec
from butterfly_bct.sbox import (NotBijectiveError, Sbox, algebraic_degree, dumps, invert, is_permutation, load,
                                loads, moebius, save, sbox_from_univariate)


def test_table_validation():
    with pytest.raises(ValueError):
        Sbox(3, [0] * 7)
    with pytest.raises(ValueError):
        Sbox(2, [0, 1, 2, 4])
    s = Sbox(2, [3, 2, 1, 0])
    with pytest.raises(ValueError):
        s.table[0] = 1


def test_identity_and_constant():
    ident = Sbox.identity(6)
    assert is_permutation(ident)
    assert invert(ident) == ident
    assert not is_permutation(Sbox(6, np.zeros(64, dtype=int)))


def test_invert_names_colliding_pair():
    s = Sbox(3, [0, 1, 2, 3, 4, 5, 6, 2])
    with pytest.raises(NotBijectiveError) as err:
        invert(s)
    x1, x2 = err.value.pair
    assert s[x1] == s[x2] and x1 != x2


@settings(max_examples=50, deadline=None)
@given(st.permutations(list(range(32))))
def test_invert_roundtrip(perm):
    s = Sbox(5, perm)
    inv = invert(s)
    assert all(inv[s[x]] == x for x in range(32))
    assert invert(inv) == s


def test_univariate_identity_and_inverse(F3):
    one = F3.pack(1, 0)
    assert sbox_from_univariate([(one, 1)], F3) == Sbox.identity(6)
    inv = sbox_from_univariate([(one, F3.q2 - 2)], F3)
    assert inv[0] == 0
    for z in range(1, 64):
        assert F3.q2_mul(z, int(inv[z])) == one


def test_univariate_power_oracle(F3):
    one = F3.pack(1, 0)
    for i in (1, 2):
        e = (1 << i) + 1
        s = sbox_from_univariate([(one, e)], F3)
        assert [int(v) for v in s.table] == [F3.q2_pow_sq(z, e) for z in range(64)]


def test_univariate_rejects_repeated_exponent(F3):
    with pytest.raises(ValueError):
        sbox_from_univariate([(1, 3), (2, 3)], F3)


def test_univariate_additive_in_terms(F3):
    t1 = [(F3.pack(3, 5), 3)]
    t2 = [(F3.pack(1, 7), 10), (F3.pack(6, 0), 17)]
    a, b = sbox_from_univariate(t1, F3), sbox_from_univariate(t2, F3)
    assert (a ^ b) == sbox_from_univariate(t1 + t2, F3)


def test_degree_examples(F3):
    assert algebraic_degree(Sbox.identity(6)) == 1
    assert algebraic_degree(Sbox(6, np.zeros(64, dtype=int))) == 0
    one = F3.pack(1, 0)
    assert algebraic_degree(sbox_from_univariate([(one, 3)], F3)) == 2
    assert algebraic_degree(sbox_from_univariate([(one, 62)], F3)) == 5
    for i in (1, 2):
        for a, b in gamma_enumerate(F3, i):
            assert algebraic_degree(closed_butterfly(ButterflyParams(F3, i, a, b))) == 2


def naive_degree(table, m):
    # ANF by explicit subset sums over each monomial, one coordinate at a time
    deg = 0
    for u in range(1 << m):
        coeff = 0
        for x in range(1 << m):
            if x & ~u == 0:
                coeff ^= int(table[x])
        if coeff:
            deg = max(deg, bin(u).count("1"))
    return deg


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 15), min_size=16, max_size=16))
def test_degree_matches_naive_anf(values):
    s = Sbox(4, values)
    assert algebraic_degree(s) == naive_degree(s.table, 4)
    assert np.array_equal(moebius(moebius(s.table)), s.table)


def test_closed_butterfly_alpha_beta_one_is_permutation(F3):
    assert is_permutation(closed_butterfly(ButterflyParams(F3, 1, 1, 1)))


def test_file_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    s = Sbox(6, rng.permutation(64))
    path = tmp_path / "s.txt"
    save(s, path, ["random permutation"])
    assert load(path) == s
    text = dumps(s)
    assert text.splitlines()[0] == "m=6"
    assert loads("# c\n" + text.replace("\n", "  # tail\n", 3)) == s


@pytest.mark.parametrize("text", ["", "m=2\n0\n1\n", "m=x\n", "m=1\n0\nzz\n", "0\n1\n"])
def test_file_errors(text):
    with pytest.raises(ValueError):
        loads(text)
