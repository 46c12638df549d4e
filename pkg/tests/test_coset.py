import itertools
from collections import Counter

import pytest

import oracles
from conftest import F2, F3
from coset2pc.analysis import posterior_messages
from coset2pc.code import LinearCode, simplex_code
from coset2pc.coset import decode, encode
from coset2pc.errors import DimensionMismatchError
from coset2pc.field import SeededRng
from coset2pc.matrix import FieldVector, Matrix


def vec(f, s):
    return FieldVector.from_digits(f, s)


def test_worked_example_encoding_is_valid(simplex7):
    z = encode(simplex7, vec(F2, "101"), SeededRng(0))
    assert decode(simplex7, z) == vec(F2, "101")
    assert decode(simplex7, vec(F2, "0000100")) == vec(F2, "101")


def test_zero_message_encodes_into_code(simplex7):
    rng = SeededRng(1)
    kernel = oracles.brute_kernel(simplex7.H.rows, 2)
    for _ in range(50):
        z = encode(simplex7, FieldVector.zeros(F2, 3), rng)
        assert z.values in kernel
        assert decode(simplex7, z).is_zero()


def test_identity_code_is_deterministic():
    code = LinearCode(F3, Matrix.identity(F3, 3))
    m = vec(F3, "201")
    assert all(encode(code, m, SeededRng(s)) == m for s in range(10))


def test_dimension_checks(simplex7):
    with pytest.raises(DimensionMismatchError):
        encode(simplex7, vec(F2, "10"), SeededRng(0))
    with pytest.raises(DimensionMismatchError):
        decode(simplex7, vec(F2, "10"))


def test_round_trip_random_messages(simplex7, code9, code20, simplex13):
    rng = SeededRng(77)
    for code in (simplex7, code9, code20, simplex13):
        for _ in range(200):
            m = FieldVector(code.field, [rng.integers(code.q) for _ in range(code.r)])
            assert decode(code, encode(code, m, rng)) == m


def test_encoding_uniform_over_coset():
    code = simplex_code(2, F3)  # [4,2] over F3: coset size 9
    m = vec(F3, "12")
    rng = SeededRng(5)
    counts = Counter(encode(code, m, rng).values for _ in range(9000))
    members = oracles.coset_members(code.H.rows, 3, (1, 2))
    assert set(counts) == set(members) and len(members) == 9
    # p = 1/9, 9000 draws: sd ~ 29.8; 5 sd band
    for z in members:
        assert abs(counts[z] - 1000) <= 150


def _secrecy_codes():
    return [simplex_code(3, F2), simplex_code(2, F3), simplex_code(2, F2)]


def test_secrecy_below_dual_distance(code9):
    for code in _secrecy_codes() + [code9]:
        assert code.q**code.n <= 3**10
        d = code.weight_profile.min_weight
        total = code.q**code.r
        for size in range(d):
            for J in itertools.combinations(range(1, code.n + 1), size):
                for vals in itertools.product(range(code.q), repeat=size):
                    post = posterior_messages(code, dict(zip(J, vals)))
                    assert len(post) == total
                    assert len(set(post.values())) == 1
