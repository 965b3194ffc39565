""" Text form of presentations.

    file          := (named-group)*
    named-group   := IDENT ":=" group
    group         := "<" IDENT* "|" [relator ("," relator)*] ">"
    relator       := word | word "=" word
    word          := term+
    term          := (IDENT | "1" | "(" word ")") ["^" INT]

`#` starts a comment running to the end of the line; `1` is the empty word.
"""
import re
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from pyfibre.errors import ParseError, PresentationError
from pyfibre.presentations import Presentation
from pyfibre.words import Word, cyclically_reduce, free_reduce, syllables

_TOKEN = re.compile(r'''
    (?P<space>\s+|\#[^\n]*)
  | (?P<define>:=)
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<symbol>[<>|,()^=])
''', re.VERBOSE)


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None: raise ParseError(f"Unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != 'space':
            tokens.append(Token(m.group() if kind == 'symbol' else kind, m.group(), line, pos - line_start + 1))
        for k, char in enumerate(m.group()):
            if char == '\n':
                line += 1
                line_start = pos + k + 1
        pos = m.end()
    tokens.append(Token('eof', '', line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Optional[Sequence[str]] = None):
        self.tokens = tokenize(text)
        self.pos = 0
        self.names: Dict[str, int] = {name: i for i, name in enumerate(names or ())}

    @property
    def token(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.token
        return ParseError(message, token.line, token.column)

    def expect(self, kind: str) -> Token:
        token = self.token
        if token.kind != kind:
            raise self.error(f"Expected {kind!r}, found {token.text or 'end of input'!r}")
        self.pos += 1
        return token

    def accept(self, kind: str) -> Optional[Token]:
        if self.token.kind != kind: return None
        self.pos += 1
        return self.tokens[self.pos - 1]

    # ----------------------------------------------------

    def file(self) -> Dict[str, Presentation]:
        result: Dict[str, Presentation] = {}
        while self.token.kind != 'eof':
            name = self.expect('ident')
            if name.text in result: raise self.error(f"Duplicate group name {name.text!r}", name)
            self.expect('define')
            result[name.text] = self.group()
        return result

    def group(self) -> Presentation:
        self.expect('<')
        names: List[str] = []
        self.names = {}
        while self.token.kind == 'ident':
            token = self.expect('ident')
            if token.text in self.names: raise self.error(f"Duplicate generator {token.text!r}", token)
            self.names[token.text] = len(names)
            names.append(token.text)
        self.expect('|')
        relators: List[Word] = []
        if self.token.kind != '>':
            relators.append(self.relator())
            while self.accept(','):
                relators.append(self.relator())
        self.expect('>')
        try:
            return Presentation(generators=tuple(names), relators=relators)
        except PresentationError as e:
            raise self.error(str(e).rstrip('.')) from None

    def relator(self) -> Word:
        start = self.token
        w = self.word()
        if self.accept('='):
            w = w * ~self.word()
        r = cyclically_reduce(w)
        if not r: raise self.error("Relator normalizes to the empty word", start)
        return r

    def word(self) -> Word:
        if self.token.kind not in ('ident', 'int', '('):
            raise self.error(f"Expected a word, found {self.token.text or 'end of input'!r}")
        letters: List[Tuple[int, int]] = []
        while self.token.kind in ('ident', 'int', '('):
            letters.extend(self.term())
        return free_reduce(letters)

    def term(self) -> Word:
        token = self.token
        if self.accept('('):
            w = self.word()
            self.expect(')')
        elif self.accept('int'):
            if token.text != '1': raise self.error(f"Only 1 may stand for a word, found {token.text!r}", token)
            w = Word()
        else:
            self.expect('ident')
            if token.text not in self.names: raise self.error(f"Unknown generator {token.text!r}", token)
            w = Word.gen(self.names[token.text])
        if self.accept('^'):
            w = w ** int(self.expect('int').text)
        return w


# ----------------------------------------------------

def parse_presentation(text: str) -> Presentation:
    """ Parses one group, anonymous `< ... >` or a single named group.

    :raise: ParseError with line and column.
    """
    parser = _Parser(text)
    if parser.token.kind == 'ident':
        groups = parser.file()
        if len(groups) != 1: raise ParseError(f"Expected one group, found {len(groups)}", 1, 1)
        return next(iter(groups.values()))
    result = parser.group()
    parser.expect('eof')
    return result


def parse_file(text: str) -> Dict[str, Presentation]:
    return _Parser(text).file()


def parse_word(text: str, names: Sequence[str]) -> Word:
    parser = _Parser(text, names)
    result = parser.word()
    parser.expect('eof')
    return result


# ----------------------------------------------------

def format_word(w: Word, names: Sequence[str]) -> str:
    if not w: return '1'
    parts = []
    for g, e in syllables(w):
        parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
    return ' '.join(parts)


def serialize_presentation(p: Presentation, name: Optional[str] = None) -> str:
    relators = ', '.join(format_word(r, p.generators) for r in p.relators)
    body = f"< {' '.join(p.generators)} | {relators} >" if relators else f"< {' '.join(p.generators)} | >"
    return f"{name} := {body}" if name else body


def serialize_file(groups: Mapping[str, Presentation]) -> str:
    return ''.join(serialize_presentation(p, name) + '\n' for name, p in groups.items())
