from typing import Iterable, List, Sequence, Tuple

Letter = Tuple[int, int]


class Word(tuple):
    """ Element of a free group: a tuple of (generator index, sign) letters.

    Words are NOT reduced on construction, use free_reduce() or the product operator,
    which always reduces.

        >>> a, b = Word.gen(0), Word.gen(1)
        >>> a * b * ~b * a == Word([(0, 1), (0, 1)])
        True
    """

    def __new__(cls, letters: Iterable[Sequence[int]] = ()):
        result = []
        for g, s in letters:
            assert g >= 0 and s in (1, -1), f"Improper letter ({g}, {s})."
            result.append((int(g), int(s)))
        return super().__new__(cls, result)

    @classmethod
    def gen(cls, g: int, sign: int = 1) -> 'Word':
        return cls([(g, sign)])

    @classmethod
    def __get_validators__(cls):
        yield cls.validate

    @classmethod
    def validate(cls, v) -> 'Word':
        if isinstance(v, Word): return v
        return cls(v)

    # ----------------------------------------------------

    def __mul__(self, other: 'Word') -> 'Word':
        return free_reduce(tuple.__add__(self, other))

    def __invert__(self) -> 'Word':
        return Word((g, -s) for g, s in reversed(self))

    def __pow__(self, n: int) -> 'Word':
        if n < 0: return (~self) ** -n
        return free_reduce(tuple(self) * n)

    def __repr__(self):
        return f"Word({list(self)})"

    # ----------------------------------------------------

    def generators(self) -> List[int]:
        return sorted({g for g, _ in self})

    def occurrences(self, g: int) -> int:
        return sum(1 for h, _ in self if h == g)

    def exponent_sums(self, n: int) -> List[int]:
        result = [0] * n
        for g, s in self: result[g] += s
        return result

    def shift(self, offset: int) -> 'Word':
        return Word((g + offset, s) for g, s in self)

    def substitute(self, images: Sequence['Word']) -> 'Word':
        """ Replaces every generator g by images[g] and freely reduces. """
        letters: List[Letter] = []
        for g, s in self:
            letters.extend(images[g] if s > 0 else ~images[g])
        return free_reduce(letters)

    def is_over(self, generators: int) -> bool:
        return all(g < generators for g, _ in self)

    def columns(self) -> List[int]:
        """ Coset table columns of the letters: 2g for g, 2g+1 for g^-1. """
        return [2 * g + (0 if s > 0 else 1) for g, s in self]


def free_reduce(w: Iterable[Letter]) -> Word:
    stack: List[Letter] = []
    for g, s in w:
        if stack and stack[-1][0] == g and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((g, s))
    return Word(stack)


def cyclically_reduce(w: Iterable[Letter]) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i][0] == w[j][0] and w[i][1] == -w[j][1]:
        i += 1
        j -= 1
    return Word(w[i:j + 1])


def rotations(w: Word) -> List[Word]:
    return [Word(w[i:] + w[:i]) for i in range(len(w))] or [w]


def cyclic_normal_form(w: Iterable[Letter]) -> Word:
    """ Least rotation of the cyclic reduction of w or of its inverse.

    Two relators have the same normal form iff they are cyclic rotations of each other
    or of each other's inverses.
    """
    w = cyclically_reduce(w)
    return min(rotations(w) + rotations(~w))


def syllables(w: Word) -> List[Tuple[int, int]]:
    """ Groups a word into (generator, exponent) syllables. """
    result: List[Tuple[int, int]] = []
    for g, s in w:
        if result and result[-1][0] == g:
            result[-1] = (g, result[-1][1] + s)
        else:
            result.append((g, s))
    return result


def commutator(x: Word, y: Word) -> Word:
    return ~x * ~y * x * y
