import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from butterfly_bct.analysis import (DifferentialUniformityError, NotQuadraticError, PreconditionError,
                                    bct_system_table, bct_table, bct_via_inverse, bct_via_system,
                                    bilinear_image, boomerang_uniformity, ddt, ddt_entry, ddt_table,
                                    differential_uniformity, echelon, kernel, quadratic_boomerang4_check,
                                    span, walsh_nonlinearity, walsh_spectrum)
from butterfly_bct.butterfly import ButterflyParams, closed_butterfly, gamma_enumerate
from butterfly_bct.equivalence import reference_family
from butterfly_bct.field import FieldSpec
from butterfly_bct.sbox import NotBijectiveError, Sbox, algebraic_degree, is_permutation, sbox_from_univariate


def naive_bct(s):
    # straight from the definition, with an explicitly built inverse
    n = s.size
    inv = {int(s[x]): x for x in range(n)}
    out = np.zeros((n, n), dtype=int)
    for a in range(n):
        for b in range(n):
            out[a, b] = sum(inv[int(s[x]) ^ b] ^ inv[int(s[x ^ a]) ^ b] == a for x in range(n))
    return out


def naive_walsh(s):
    n = s.size
    w = np.zeros((n, n), dtype=int)
    for v in range(n):
        for u in range(n):
            w[v, u] = sum((-1) ** ((bin(v & int(s[x])).count("1") + bin(u & x).count("1")) & 1) for x in range(n))
    return w


@pytest.fixture(scope="module")
def inverse64():
    return reference_family("inverse", 3)


@pytest.fixture(scope="module")
def gamma_v(F3):
    a, b = gamma_enumerate(F3, 1)[1]
    return closed_butterfly(ButterflyParams(F3, 1, a, b))


def test_ddt_examples(gamma_v):
    s = gamma_v
    assert ddt_entry(s, 0, 0) == 64
    assert all(ddt_entry(s, a, 0) == 0 for a in range(1, 64))
    t = ddt_table(s)
    assert (t % 2 == 0).all()
    assert (t.sum(axis=0) == 64).all() and (t.sum(axis=1) == 64).all()
    assert differential_uniformity(s) == 4
    assert sum(ddt(s).histogram.values()) == 63 * 64


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(0, 31), min_size=32, max_size=32))
def test_ddt_matches_entry_counts(values):
    s = Sbox(5, values)
    t = ddt_table(s)
    for a in (1, 7, 31):
        for b in range(32):
            assert t[a, b] == ddt_entry(s, a, b)


def test_bct_trivial_rows(inverse64):
    t = bct_table(inverse64)
    assert (t[:, 0] == 64).all()
    assert (t[0, :] == 64).all()
    assert (bct_system_table(inverse64)[0, :] == 64).all()


def test_bct_needs_permutation():
    s = Sbox(3, [0, 0, 1, 2, 3, 4, 5, 6])
    with pytest.raises(NotBijectiveError):
        bct_via_inverse(s)
    with pytest.raises(NotBijectiveError):
        bct_via_system(s)


def test_inverse_sbox_bct(inverse64):
    assert boomerang_uniformity(inverse64) == 4
    fast = bct_via_inverse(inverse64)
    assert np.array_equal(fast.table, bct_via_system(inverse64).table)
    assert fast.histogram == {0: 1890, 2: 1890, 4: 189}
    assert sum(fast.histogram.values()) == 63 * 63


def test_bct_identity_oracle_agreement():
    ident = Sbox.identity(5)
    assert np.array_equal(bct_table(ident), bct_system_table(ident))
    assert (bct_table(ident) == 32).all()


@settings(max_examples=15, deadline=None)
@given(st.permutations(list(range(16))))
def test_bct_algorithms_match_definition(perm):
    s = Sbox(4, perm)
    ref = naive_bct(s)
    assert np.array_equal(bct_table(s), ref)
    assert np.array_equal(bct_system_table(s), ref)
    assert (ref >= ddt_table(s)).all()


def test_bct_dominates_ddt_m6(inverse64, gamma_v):
    rng = np.random.default_rng(5)
    for s in (inverse64, gamma_v, Sbox(6, rng.permutation(64))):
        assert (bct_table(s) >= ddt_table(s)).all()


def test_walsh_against_naive(gamma_v):
    small = Sbox(4, np.random.default_rng(1).permutation(16))
    assert np.array_equal(walsh_spectrum(small), naive_walsh(small))
    w = walsh_spectrum(gamma_v, range(1, 64))
    assert ((w.astype(np.int64) ** 2).sum(axis=1) == 64 * 64).all()  # Parseval


def test_nonlinearity_examples(F3, gamma_v):
    assert walsh_nonlinearity(Sbox.identity(6))[0] == 0
    aff = Sbox(6, np.arange(64) ^ 0b101101)
    assert walsh_nonlinearity(aff)[0] == 0
    cube = sbox_from_univariate([(F3.pack(1, 0), 3)], F3)
    w = naive_walsh(cube)
    assert walsh_nonlinearity(cube) == ((64 - np.abs(w[1:]).max()) // 2, np.abs(w[1:]).max())
    assert walsh_nonlinearity(gamma_v) == (24, 16)


def test_echelon_kernel_span():
    vecs = [0b1100, 0b0110, 0b1010, 0b0001]
    basis = echelon(vecs)
    assert basis == (0b1010, 0b0110, 0b0001)
    assert set(span(basis)) == set(span(vecs))
    assert echelon(reversed(vecs)) == basis
    ker = kernel(vecs)
    assert ker == (0b0111,)


def test_bilinear_image_examples():
    F = FieldSpec(3)
    lin = Sbox(3, [F.mul(5, x) for x in range(8)])
    assert all(bilinear_image(lin, a).dim == 0 for a in range(1, 8))
    cube = Sbox(3, [F.pow(x, 3) for x in range(8)])
    for a in range(1, 8):
        bi = bilinear_image(cube, a)
        brute = {F.pow(a ^ x, 3) ^ F.pow(a, 3) ^ F.pow(x, 3) for x in range(8)}
        assert bi.dim == 2 and bi.elements() == brute
        assert bi.dim + len(bi.kernel_basis) == 3


def test_bilinear_image_rank_nullity(gamma_v):
    for a in range(1, 64):
        bi = bilinear_image(gamma_v, a)
        assert bi.dim + len(bi.kernel_basis) == 6
        assert len(bi.kernel_basis) == 2
        sa = {int(gamma_v[a ^ x] ^ gamma_v[a] ^ gamma_v[x] ^ gamma_v[0]) for x in range(64)}
        assert bi.elements() == sa


def test_bilinear_image_preconditions(inverse64):
    with pytest.raises(NotQuadraticError):
        bilinear_image(inverse64, 1)
    with pytest.raises(PreconditionError):
        bilinear_image(Sbox.identity(6), 0)


def test_quadratic_check_preconditions(F3, inverse64):
    with pytest.raises(NotQuadraticError):
        quadratic_boomerang4_check(inverse64)
    F5 = FieldSpec(5)
    apn = Sbox(5, [F5.pow(x, 3) for x in range(32)])  # quadratic APN permutation
    with pytest.raises(DifferentialUniformityError):
        quadratic_boomerang4_check(apn)
    with pytest.raises(NotBijectiveError):
        quadratic_boomerang4_check(Sbox(6, np.zeros(64, dtype=int)))


def test_quadratic_check_agrees_with_direct_bct(F3):
    # quadratic permutations with DU 4 from butterfly parameters, inside and outside Gamma
    seen = 0
    for i in (1, 2):
        for a in range(1, 8):
            for b in range(1, 8):
                s = closed_butterfly(ButterflyParams(F3, i, a, b))
                if not is_permutation(s) or differential_uniformity(s) != 4:
                    continue
                ok, witness = quadratic_boomerang4_check(s, return_witness=True)
                assert ok == (boomerang_uniformity(s) == 4)
                assert (witness is None) == ok
                seen += 1
    assert seen >= 14


# 5-bit quadratic permutation with DU 4 and BU 12, found by a random walk
# over quadratic ANF coefficients that stays inside the permutations
QUAD_BU12 = [0, 18, 11, 3, 21, 31, 30, 14, 2, 9, 29, 12, 25, 10, 6, 15,
             16, 28, 13, 27, 7, 19, 26, 20, 17, 4, 24, 23, 8, 5, 1, 22]


def test_quadratic_check_detects_bu_above_4():
    s = Sbox(5, QUAD_BU12)
    assert is_permutation(s)
    assert algebraic_degree(s) == 2
    assert differential_uniformity(s) == 4
    assert boomerang_uniformity(s) == 12
    ok, (a, b) = quadratic_boomerang4_check(s, return_witness=True)
    assert not ok
    # the witness pair really has S(a, b) = 0 and different images
    assert b in span(bilinear_image(s, a).kernel_basis)
    assert bilinear_image(s, a).basis != bilinear_image(s, b).basis
    assert naive_bct(s)[1:, 1:].max() == 12
