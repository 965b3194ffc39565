import re
import string
from typing import List, Optional, Sequence, Tuple, Union

from pydantic import validator

from pyfibre.errors import (
    AlphabetError, DegenerateRelator, DuplicateGenerator, PresentationError, TietzeError, UnknownGenerator
)
from pyfibre.model import FibreModel
from pyfibre.words import Word, commutator, cyclic_normal_form, cyclically_reduce, free_reduce

IDENTIFIER = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')


class Presentation(FibreModel):
    """ Finitely presented group <generators | relators>.

    Relators are stored cyclically reduced, empty relators are rejected
    (the trivial group is <a | a>).
    """

    generators: Tuple[str, ...] = ()
    relators: Tuple[Word, ...] = ()

    @validator('generators')
    def _check_names(cls, v):
        seen = set()
        for name in v:
            if not IDENTIFIER.fullmatch(name): raise PresentationError(f"Improper generator name {name!r}.")
            if name in seen: raise DuplicateGenerator(name)
            seen.add(name)
        return v

    @validator('relators')
    def _normalize_relators(cls, v, values):
        if 'generators' not in values: return v
        n = len(values['generators'])
        result = []
        for w in v:
            if not w.is_over(n): raise AlphabetError(repr(w), n)
            r = cyclically_reduce(w)
            if not r: raise DegenerateRelator(repr(w))
            result.append(r)
        return tuple(result)

    # ----------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, generator: Union[int, str]) -> int:
        if isinstance(generator, int):
            if not 0 <= generator < self.rank: raise UnknownGenerator(generator)
            return generator
        try:
            return self.generators.index(generator)
        except ValueError:
            raise UnknownGenerator(generator) from None

    def word(self, text: str) -> Word:
        """ Parses a word over the generator names, e.g. p.word('a b^-1 (a b)^2'). """
        from pyfibre.parsing import parse_word
        return parse_word(text, self.generators)

    def format(self, w: Word) -> str:
        from pyfibre.parsing import format_word
        return format_word(w, self.generators)

    def normalized_relators(self) -> List[Word]:
        """ Sorted cyclic normal forms, the relator multiset up to rotation and inversion. """
        return sorted(cyclic_normal_form(r) for r in self.relators)

    def __str__(self):
        from pyfibre.parsing import serialize_presentation
        return serialize_presentation(self)


class GeneratorMap(FibreModel):
    """ Homomorphism candidate given by one target word per source generator. """

    source: Presentation
    target: Presentation
    images: Tuple[Word, ...]

    @validator('images')
    def _check_images(cls, v, values):
        if 'source' not in values or 'target' not in values: return v
        source, target = values['source'], values['target']
        if len(v) != source.rank:
            raise PresentationError(f"Need {source.rank} images, got {len(v)}.")
        for w in v:
            if not w.is_over(target.rank): raise AlphabetError(repr(w), target.rank)
        return tuple(free_reduce(w) for w in v)

    @classmethod
    def identity(cls, p: Presentation, target: Optional[Presentation] = None) -> 'GeneratorMap':
        return cls(source=p, target=target or p, images=[Word.gen(g) for g in range(p.rank)])

    def apply(self, w: Word) -> Word:
        return w.substitute(self.images)

    def relator_images(self) -> List[Word]:
        return [self.apply(r) for r in self.source.relators]


# ----------------------------------------------------
# Constructors

def default_names(r: int) -> List[str]:
    if r <= len(string.ascii_lowercase): return list(string.ascii_lowercase[:r])
    return [f"x{i}" for i in range(1, r + 1)]


def free_group(r: int, names: Optional[Sequence[str]] = None) -> Presentation:
    return Presentation(generators=tuple(names or default_names(r)))


def free_abelian_group(d: int) -> Presentation:
    names = default_names(d)
    return Presentation(generators=tuple(names), relators=[
        commutator(Word.gen(x), Word.gen(y)) for x in range(d) for y in range(x + 1, d)
    ])


def cyclic_group(n: int) -> Presentation:
    assert n >= 1, "Cyclic group order should be positive."
    return Presentation(generators=('a',), relators=[Word.gen(0) ** n])


def trivial_group() -> Presentation:
    return cyclic_group(1)


# ----------------------------------------------------
# Products

def _merge_names(first: Sequence[str], second: Sequence[str]) -> List[str]:
    result = list(first)
    used = set(first)
    for name in second:
        if name in used:
            i = 1
            while f"{name}_{i}" in used: i += 1
            name = f"{name}_{i}"
        used.add(name)
        result.append(name)
    return result


def free_product(p: Presentation, q: Presentation) -> Presentation:
    """ p * q: generators of p then of q (suffixed on collision), relators of both. """
    return Presentation(
        generators=tuple(_merge_names(p.generators, q.generators)),
        relators=p.relators + tuple(r.shift(p.rank) for r in q.relators),
    )


def direct_product(p: Presentation, q: Presentation) -> Presentation:
    """ p x q: the free product plus [x, y] for every generator x of p and y of q. """
    fp = free_product(p, q)
    commutators = tuple(
        commutator(Word.gen(x), Word.gen(p.rank + y))
        for x in range(p.rank) for y in range(q.rank)
    )
    return Presentation(generators=fp.generators, relators=fp.relators + commutators)


# ----------------------------------------------------
# Tietze moves

def tietze_add_generator(p: Presentation, name: str, definition: Word) -> Presentation:
    """ Adjoins generator `name` with relator name * definition^-1. """
    if name in p.generators: raise DuplicateGenerator(name)
    if not definition.is_over(p.rank): raise AlphabetError(repr(definition), p.rank)
    g = Word.gen(p.rank)
    return Presentation(
        generators=p.generators + (name,),
        relators=p.relators + (g * ~free_reduce(definition),),
    )


def tietze_remove_generator(p: Presentation, generator: Union[int, str]) -> Presentation:
    """ Eliminates a generator occurring exactly once in some relator.

    The first such relator is solved for the generator and removed, the solution is
    substituted into the other relators. Relators becoming trivial are dropped.

    :raise: TietzeError if no relator solves for the generator.
    """
    g = p.index(generator)
    for i, r in enumerate(p.relators):
        if r.occurrences(g) == 1: break
    else:
        raise TietzeError(f"No relator solves for generator {p.generators[g]!r}.")

    pos = next(k for k, (h, _) in enumerate(r) if h == g)
    sign = r[pos][1]
    rest = Word(r[pos + 1:] + r[:pos])
    # g^sign * rest = 1
    solution = ~rest if sign > 0 else rest

    def reindex(w: Word) -> Word:
        return Word((h - 1 if h > g else h, s) for h, s in w)

    images = [reindex(Word.gen(h)) for h in range(p.rank)]
    images[g] = reindex(solution)

    relators = []
    for k, other in enumerate(p.relators):
        if k == i: continue
        reduced = cyclically_reduce(other.substitute(images))
        if reduced: relators.append(reduced)

    return Presentation(
        generators=p.generators[:g] + p.generators[g + 1:],
        relators=relators,
    )
