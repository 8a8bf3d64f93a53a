import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from optlrc import field as F
from optlrc.field import GF, make_field, prime_power, smallest_irreducible

FIELDS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81, 125, 256, 1024, 2187, 4096]


def slow_mul(f: GF, a: int, b: int) -> int:
    """Schoolbook polynomial product reduced by the modulus, written from scratch."""
    p, m = f.p, f.m
    da = [(a // p**i) % p for i in range(m)]
    db = [(b // p**i) % p for i in range(m)]
    prod = [0] * (2 * m)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = list(f.modulus)
    for deg in range(2 * m - 1, m - 1, -1):
        c = prod[deg]
        if c:
            for i in range(m + 1):
                prod[deg - m + i] = (prod[deg - m + i] - c * mod[i]) % p
    return sum(prod[i] * p**i for i in range(m))


def test_gf4_table():
    f = make_field(4)
    assert f.modulus == (1, 1, 1)
    assert [[f.mul(a, b) for b in range(4)] for a in range(4)] == [
        [0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]
    ]
    assert f.add(2, 3) == 1


@pytest.mark.parametrize("q,expected", [(2, (2, 1)), (9, (3, 2)), (1024, (2, 10)), (65536, (2, 16))])
def test_prime_power(q, expected):
    assert prime_power(q) == expected


@pytest.mark.parametrize("q", [0, 1, 6, 12, 100])
def test_not_prime_power(q):
    with pytest.raises(ValueError):
        make_field(q)


def test_error_names_factorisation():
    with pytest.raises(ValueError, match=r"6 = 2 \* 3"):
        make_field(6)


def test_order_limit():
    with pytest.raises(ValueError, match="exceeds"):
        make_field(3**11)


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 8)])
def test_modulus_has_no_roots_and_is_smallest(p, m):
    mod = smallest_irreducible(p, m)
    assert mod[-1] == 1 and len(mod) == m + 1
    for x in range(p):
        assert sum(c * x**i for i, c in enumerate(mod)) % p != 0
    # every smaller monic degree-m polynomial factors: brute force over all products
    reducible = set()
    for d1 in range(1, m // 2 + 1):
        for a in itertools.product(range(p), repeat=d1):
            for b in itertools.product(range(p), repeat=m - d1):
                A, B = list(a) + [1], list(b) + [1]
                prod = [0] * (m + 1)
                for i, x in enumerate(A):
                    for j, y in enumerate(B):
                        prod[i + j] = (prod[i + j] + x * y) % p
                reducible.add(tuple(prod))
    assert mod not in reducible
    enc = sum(c * p**i for i, c in enumerate(mod[:-1]))
    for smaller in range(enc):
        cand = tuple((smaller // p**i) % p for i in range(m)) + (1,)
        assert cand in reducible


@pytest.mark.parametrize("q", [4, 8, 9, 16, 27, 25, 64])
def test_table_mul_matches_schoolbook(q):
    f = make_field(q)
    e = np.arange(q)
    table = f.mul(e[:, None], e[None, :])
    for a in range(q):
        for b in range(q):
            assert table[a, b] == slow_mul(f, a, b)


@pytest.mark.parametrize("q", FIELDS)
def test_inverse_and_negation(q):
    f = make_field(q)
    e = np.arange(1, q)
    assert np.all(f.mul(e, f.inv(e)) == 1)
    assert np.all(f.add(e, f.neg(e)) == 0)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


@pytest.mark.parametrize("q", FIELDS)
def test_multiplicative_group_cyclic(q):
    f = make_field(q)
    exp, log = f._exp_log
    assert sorted(exp[: q - 1].tolist()) == list(range(1, q))
    assert f.pow(int(exp[1]), q - 1) == 1


def test_scalar_and_array_agree():
    f = make_field(27)
    a, b = 17, 22
    assert f.mul(a, b) == int(f.mul(np.array([a]), np.array([b]))[0])
    assert f.add(a, b) == int(f.add(np.array([a]), np.array([b]))[0])
    assert isinstance(f.add(a, b), int) and isinstance(f.mul(a, b), int)


def test_large_odd_extension_add_without_table():
    f = make_field(2187)  # 3^7, above the add-table limit
    a = np.arange(0, 2187, 7)
    b = np.arange(0, 2187, 7)[::-1]
    s = f.add(a, b)
    da, db, ds = f.to_digits(a), f.to_digits(b), f.to_digits(s)
    assert np.array_equal((da + db) % 3, ds)


def test_serialize_roundtrip():
    for q in (7, 8, 81):
        f = make_field(q)
        assert GF.deserialize(f.serialize()) == f
    assert make_field(8).serialize() == "2 3 1 1 0 1"
    assert make_field(7).serialize() == "7 1 0 1"


def test_deserialize_rejects_reducible_modulus():
    with pytest.raises(ValueError):
        GF.deserialize("2 2 1 0 1")  # x^2 + 1 = (x+1)^2 over GF(2)


def test_checked_helpers():
    f = make_field(5)
    assert F.add(f, 3, 4) == 2 and F.mul(f, 3, 4) == 2 and F.inv(f, 3) == 2
    with pytest.raises(ValueError):
        F.add(f, 5, 1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 8, 9, 16, 25, 49, 243]), st.data())
def test_field_axioms_random(q, data):
    f = make_field(q)
    el = st.integers(0, q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert f.add(a, b) == f.add(b, a)
    assert f.mul(a, b) == f.mul(b, a)
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.sub(f.add(a, b), b) == a
    if b:
        assert f.mul(f.div(a, b), b) == a
    e = data.draw(st.integers(0, 3 * q))
    expect = 1
    for _ in range(e):
        expect = f.mul(expect, a)
    assert f.pow(a, e) == expect


def test_sum_and_dot():
    f = make_field(9)
    v = np.array([1, 2, 3, 4, 5])
    w = np.array([8, 7, 6, 5, 4])
    total = 0
    for x, y in zip(v, w):
        total = f.add(total, f.mul(int(x), int(y)))
    assert f.dot(v, w) == total
    assert np.array_equal(f.sum(np.zeros((0, 3), dtype=np.int64)), np.zeros(3))
