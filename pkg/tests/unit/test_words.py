import random

import pytest

from pyfibre.words import Word, commutator, cyclic_normal_form, cyclically_reduce, free_reduce, syllables

x, y = Word.gen(0), Word.gen(1)
X, Y = ~x, ~y


def letters(*pairs):
    return Word(pairs)


def test_free_reduce():
    assert free_reduce(Word()) == Word()
    assert free_reduce(letters((0, 1), (0, -1))) == Word()
    assert free_reduce(letters((0, 1), (1, 1), (1, -1), (0, 1))) == letters((0, 1), (0, 1))


def test_free_reduce_idempotent():
    rnd = random.Random(1)
    for _ in range(200):
        w = Word((rnd.randrange(3), rnd.choice((1, -1))) for _ in range(rnd.randrange(12)))
        r = free_reduce(w)
        assert free_reduce(r) == r
        assert len(r) <= len(w)


def test_cyclically_reduce():
    assert cyclically_reduce(letters((0, 1), (1, 1), (0, -1))) == y
    assert cyclically_reduce(y) == y
    assert cyclically_reduce(letters((0, 1), (0, -1))) == Word()


def test_word_operations():
    assert x * y * Y * x == Word([(0, 1), (0, 1)])
    assert ~(x * y) == Y * X
    assert (x * y) ** 2 == letters((0, 1), (1, 1), (0, 1), (1, 1))
    assert (x * y) ** -1 == Y * X
    assert x ** 0 == Word()
    assert (x ** 3 * y).exponent_sums(2) == [3, 1]
    assert (x * y * x).occurrences(0) == 2
    assert (x * Y).columns() == [0, 3]
    assert (x * y).shift(2) == letters((2, 1), (3, 1))
    assert (x * y).substitute([y, x * x]) == y * x * x


def test_improper_letter():
    with pytest.raises(AssertionError):
        Word([(0, 2)])


def test_cyclic_normal_form():
    w = x * y * y
    assert cyclic_normal_form(w) == cyclic_normal_form(y * x * y)
    assert cyclic_normal_form(w) == cyclic_normal_form(~w)
    assert cyclic_normal_form(X * w * x) == cyclic_normal_form(w)
    assert cyclic_normal_form(x * y) != cyclic_normal_form(x * Y)


def test_syllables_and_commutator():
    assert syllables(x * x * Y * x) == [(0, 2), (1, -1), (0, 1)]
    assert commutator(x, y) == X * Y * x * y
    assert commutator(x, x) == Word()
