import pytest

from pyfibre.corpus import load_groups
from pyfibre.errors import ParseError
from pyfibre.parsing import format_word, parse_file, parse_presentation, parse_word, serialize_file, tokenize
from pyfibre.words import Word


def test_parse_s3():
    p = parse_presentation('< a b | a^2, b^3, (a b)^2 >')
    assert p.generators == ('a', 'b')
    assert len(p.relators) == 3
    assert p.relators[2] == Word([(0, 1), (1, 1), (0, 1), (1, 1)])


def test_parse_higman():
    p = parse_presentation('< a b c d | b^-1 a b = a^2, c^-1 b c = b^2, d^-1 c d = c^2, a^-1 d a = d^2 >')
    assert p.rank == 4
    assert len(p.relators) == 4
    assert p.relators[0].exponent_sums(4) == [-1, 0, 0, 0]


def test_parse_named_and_comments():
    p = parse_presentation('# the cyclic group\nZ3 := < x | x^3 >  # order 3\n')
    assert p.generators == ('x',)
    assert p.relators == (Word.gen(0) ** 3,)


def test_parse_identity_word():
    p = parse_presentation('< a b | a = 1, b^2 >')
    assert p.relators == (Word.gen(0), Word.gen(1) ** 2)


def test_parse_errors():
    with pytest.raises(ParseError, match='empty word'):
        parse_presentation('< a | a a^-1 >')
    with pytest.raises(ParseError, match='Duplicate generator'):
        parse_presentation('< a a | >')
    with pytest.raises(ParseError, match="Unknown generator 'c'"):
        parse_presentation('< a b | c^2 >')

    with pytest.raises(ParseError) as e:
        parse_presentation('< a b |\n  a^2, b^ >')
    assert (e.value.line, e.value.column) == (2, 11)

    with pytest.raises(ParseError, match='Unexpected character'):
        parse_presentation('< a | a* >')


def test_tokenize_positions():
    tokens = tokenize('G := <a|\n a^-2>')
    assert [t.kind for t in tokens] == ['ident', 'define', '<', 'ident', '|', 'ident', '^', 'int', '>', 'eof']
    assert (tokens[5].line, tokens[5].column) == (2, 2)


def test_parse_word():
    assert parse_word('a b^-1 (a b)^2', ['a', 'b']) == Word([(0, 1), (1, -1), (0, 1), (1, 1), (0, 1), (1, 1)])
    assert parse_word('a a^-1', ['a']) == Word()
    with pytest.raises(ParseError):
        parse_word('a b', ['a'])


def test_format_word():
    assert format_word(Word(), ['a']) == '1'
    assert format_word(Word([(0, 1), (0, 1), (1, -1)]), ['a', 'b']) == 'a^2 b^-1'


def test_serialize_round_trip():
    groups = load_groups()
    assert parse_file(serialize_file(groups)) == groups
    assert str(groups['S3']) == '< a b | a^2, b^3, a b a b >'
    assert str(groups['F2']) == '< a b | >'
