import random

import pytest

from pyfibre.config import Limits
from pyfibre.corpus import load_group
from pyfibre.cosets import CosetTable, coset_enumerate, relabel, standardize, trace
from pyfibre.errors import CosetRangeError, IncompleteTable, InconsistentTable
from pyfibre.parsing import parse_presentation
from pyfibre.presentations import free_group
from pyfibre.words import Word


@pytest.mark.parametrize('name, order', [('S3', 6), ('A5', 60), ('Q8', 8), ('Z2', 2)])
@pytest.mark.parametrize('strategy', ['hlt', 'felsch'])
def test_group_orders(name, order, strategy):
    t = coset_enumerate(load_group(name), limits=Limits(strategy=strategy))
    assert t.is_complete
    assert t.index == order


def test_cyclic():
    t = coset_enumerate(parse_presentation('< a | a^3 >'))
    assert t.index == 3
    assert t.rows[1:] == ((2, 3), (3, 1), (1, 2))


def test_subgroup_index():
    s3 = load_group('S3')
    assert coset_enumerate(s3, [s3.word('a')]).index == 3
    assert coset_enumerate(s3, [s3.word('b')]).index == 2
    assert coset_enumerate(s3, [s3.word('a'), s3.word('b')]).index == 1

    a5 = load_group('A5')
    assert coset_enumerate(a5, [a5.word('a')]).index == 30
    assert coset_enumerate(a5, [a5.word('b')]).index == 20
    assert coset_enumerate(a5, [a5.word('a b')]).index == 12


def test_infinite_index_is_incomplete():
    f2 = free_group(2)
    t = coset_enumerate(f2, [f2.word('a')], Limits(max_cosets=50, max_steps=10 ** 5))
    assert not t.is_complete
    assert 'max_cosets' in t.reason
    with pytest.raises(IncompleteTable):
        standardize(t)


def test_step_limit():
    t = coset_enumerate(load_group('A5'), limits=Limits(max_steps=10))
    assert t.status == 'incomplete'
    assert 'max_steps' in t.reason


def test_trace():
    s3 = load_group('S3')
    t = coset_enumerate(s3)
    for c in range(1, 7):
        assert trace(t, c, Word()) == c
        assert trace(t, c, s3.word('(a b)^2')) == c
    with pytest.raises(CosetRangeError):
        trace(t, 7, Word())

    f2 = free_group(2)
    t = CosetTable(f2, [(), (1, 1, 2, 2), (2, 2, 1, 1)])
    t.validate()
    assert trace(t, 1, f2.word('b')) == 2
    for w in ('a', 'b^2', 'b a b^-1'):
        assert trace(t, 1, f2.word(w)) == 1


def test_trace_undefined():
    f2 = free_group(2)
    t = CosetTable(f2, [(), (1, 1, 2, 0), (0, 0, 0, 1)], status='incomplete')
    assert trace(t, 1, f2.word('b')) == 2
    assert trace(t, 1, f2.word('b a')) is None


def test_validate():
    f2 = free_group(2)
    with pytest.raises(InconsistentTable):
        CosetTable(f2, [(), (1, 1, 2, 2), (2, 2, 2, 1)]).validate()
    # Not transitive.
    with pytest.raises(InconsistentTable):
        CosetTable(f2, [(), (1, 1, 1, 1), (2, 2, 2, 2)]).validate()
    z3 = parse_presentation('< a | a^3 >')
    with pytest.raises(InconsistentTable, match='moves coset'):
        CosetTable(z3, [(), (2, 2), (1, 1)]).validate()


def test_standardize():
    z3 = parse_presentation('< a | a^3 >')
    t = CosetTable(z3, [(), (3, 2), (1, 3), (2, 1)])
    assert standardize(t).rows[1:] == ((2, 3), (3, 1), (1, 2))

    t = coset_enumerate(load_group('A5'))
    s = standardize(t)
    assert standardize(s) == s

    rnd = random.Random(3)
    for _ in range(5):
        order = [1] + rnd.sample(range(2, 61), 59)
        assert standardize(relabel(s, order)) == s


def test_enumeration_is_deterministic():
    q8 = load_group('Q8')
    assert coset_enumerate(q8).rows == coset_enumerate(q8).rows
