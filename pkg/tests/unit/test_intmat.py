import random

import pytest

from pyfibre.corpus import load_group
from pyfibre.intmat import (
    AbelianInvariants, IntMatrix, abelianization, invariants_of_rows, relation_matrix, smith_normal_form
)
from pyfibre.presentations import free_group
from tests.oracles import invariant_factors, sympy_determinant


def check_snf(rows, cols):
    m = IntMatrix.from_rows(rows, cols=cols)
    u, d, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert abs(sympy_determinant(u.to_rows())) == 1
    assert abs(sympy_determinant(v.to_rows())) == 1
    assert d.is_diagonal()
    diagonal = d.diagonal()
    assert all(x >= 0 for x in diagonal)
    nonzero = [x for x in diagonal if x]
    assert diagonal[:len(nonzero)] == nonzero
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    return nonzero


def test_snf_examples():
    assert check_snf([[2, 0], [0, 3]], 2) == [1, 6]
    assert check_snf([[0, 0], [0, 0], [0, 0]], 2) == []
    identity = IntMatrix.identity(4)
    assert smith_normal_form(identity)[1] == identity


def test_snf_random_against_minors():
    rnd = random.Random(7)
    for _ in range(1000):
        m, n = rnd.randint(1, 5), rnd.randint(1, 5)
        rows = [[rnd.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        assert check_snf(rows, n) == invariant_factors(rows)


def test_snf_large_entries():
    rows = [[10 ** 30, 0], [0, 10 ** 30 + 1]]
    assert check_snf(rows, 2) == [1, 10 ** 30 * (10 ** 30 + 1)]


def test_abelian_invariants():
    assert str(AbelianInvariants()) == '1'
    assert str(AbelianInvariants(torsion=(2,), free_rank=3)) == 'Z^3 x Z/2'
    assert str(AbelianInvariants(free_rank=1)) == 'Z'
    with pytest.raises(ValueError):
        AbelianInvariants(torsion=(2, 3))
    with pytest.raises(ValueError):
        AbelianInvariants(torsion=(1,))


def test_abelianization():
    assert abelianization(free_group(4)) == AbelianInvariants(free_rank=4)
    assert abelianization(load_group('Higman')).is_trivial
    assert abelianization(load_group('S3')) == AbelianInvariants(torsion=(2,))
    assert abelianization(load_group('Q8')) == AbelianInvariants(torsion=(2, 2))
    assert abelianization(load_group('A5')).is_trivial


def test_relation_matrix():
    s3 = load_group('S3')
    assert relation_matrix(s3.relators, s3.rank).to_rows() == [[2, 0], [0, 3], [2, 2]]
    assert invariants_of_rows([[2, 0], [0, 3], [2, 2]], 2) == AbelianInvariants(torsion=(2,))
    assert invariants_of_rows([], 3) == AbelianInvariants(free_rank=3)
