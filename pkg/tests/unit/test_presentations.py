import pytest

from pyfibre.corpus import load_group
from pyfibre.errors import AlphabetError, DegenerateRelator, DuplicateGenerator, TietzeError, UnknownGenerator
from pyfibre.intmat import abelianization
from pyfibre.presentations import (
    GeneratorMap, Presentation, cyclic_group, direct_product, free_abelian_group, free_group, free_product,
    tietze_add_generator, tietze_remove_generator, trivial_group
)
from pyfibre.words import Word


def test_relators_are_cyclically_reduced():
    p = Presentation(generators=('a', 'b'), relators=[Word([(1, 1), (0, 1), (0, 1), (1, -1)])])
    assert p.relators == (Word([(0, 1), (0, 1)]),)


def test_improper_presentations():
    with pytest.raises(DegenerateRelator):
        Presentation(generators=('a',), relators=[Word([(0, 1), (0, -1)])])
    with pytest.raises(DuplicateGenerator):
        Presentation(generators=('a', 'a'))
    with pytest.raises(AlphabetError):
        Presentation(generators=('a',), relators=[Word.gen(1)])


def test_index():
    p = free_group(2)
    assert p.index('b') == 1
    assert p.index(0) == 0
    with pytest.raises(UnknownGenerator):
        p.index('c')
    with pytest.raises(UnknownGenerator):
        p.index(2)


def test_free_product():
    p = free_product(free_group(2), Presentation(generators=('c',), relators=[Word.gen(0) ** 2]))
    assert p.rank == 3 and len(p.relators) == 1
    assert p.relators[0] == Word.gen(2) ** 2

    assert free_product(free_group(4), Presentation()) == free_group(4)

    p = free_product(free_group(4), load_group('Higman'))
    assert p.rank == 8 and len(p.relators) == 4
    assert p.generators[4:] == ('a_1', 'b_1', 'c_1', 'd_1')


def test_direct_product():
    p = direct_product(free_group(4), free_group(4))
    assert p.rank == 8 and len(p.relators) == 16

    p = direct_product(free_group(1), free_group(1))
    assert p.rank == 2 and len(p.relators) == 1
    assert str(abelianization(p)) == 'Z^2'

    p = direct_product(free_product(free_group(4), load_group('Higman')), free_group(4))
    assert p.rank == 12 and len(p.relators) == 4 + 32


def test_small_groups():
    assert str(free_abelian_group(3)) == '< a b c | a^-1 b^-1 a b, a^-1 c^-1 a c, b^-1 c^-1 b c >'
    assert cyclic_group(5).relators == (Word.gen(0) ** 5,)
    assert abelianization(trivial_group()).is_trivial


def test_tietze_add_generator():
    f2 = free_group(2)
    p = tietze_add_generator(f2, 'c', f2.word('a b'))
    assert p.generators == ('a', 'b', 'c')
    assert len(p.relators) == 1

    p = tietze_add_generator(free_group(1), 'e', Word())
    assert p.generators == ('a', 'e') and p.relators == (Word.gen(1),)

    with pytest.raises(DuplicateGenerator):
        tietze_add_generator(f2, 'a', Word())


def test_tietze_remove_generator():
    p = Presentation(generators=('a', 'g'), relators=[Word([(1, 1), (0, 1), (0, 1)])])
    assert tietze_remove_generator(p, 'g') == free_group(1)

    with pytest.raises(TietzeError):
        tietze_remove_generator(free_group(2), 'a')


def test_tietze_round_trip():
    s3 = load_group('S3')
    p = tietze_add_generator(s3, 'c', s3.word('a b^-1 a'))
    q = tietze_remove_generator(p, 'c')
    assert q.generators == s3.generators
    assert q.normalized_relators() == s3.normalized_relators()
    assert abelianization(p) == abelianization(s3)


def test_generator_map():
    f2 = free_group(2)
    s3 = load_group('S3')
    m = GeneratorMap(source=s3, target=f2, images=[f2.word('a'), f2.word('b a b^-1')])
    assert m.apply(s3.word('a b')) == f2.word('a b a b^-1')
    assert m.relator_images()[0] == f2.word('a^2')
    assert GeneratorMap.identity(s3).apply(s3.word('a b')) == s3.word('a b')
    with pytest.raises(AlphabetError):
        GeneratorMap(source=f2, target=free_group(1), images=[Word.gen(0), Word.gen(1)])
