class FibreError(Exception):
    def __reduce__(self):
        # Subclasses build args in __init__, so unpickling must not call it again.
        return _rebuild, (type(self), self.args, self.__dict__)


def _rebuild(cls, args, state):
    error = cls.__new__(cls)
    error.args = args
    error.__dict__.update(state)
    return error


# ----------------------------------------------------
# Presentations

class PresentationError(FibreError, ValueError):
    pass


class ParseError(PresentationError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column}).")
        self.line = line
        self.column = column


class DegenerateRelator(PresentationError):
    def __init__(self, relator: str = ''):
        super().__init__(f"Relator {relator!r} normalizes to the empty word.")
        self.relator = relator


class DuplicateGenerator(PresentationError):
    def __init__(self, name: str):
        super().__init__(f"Generator name {name!r} is already used.")
        self.name = name


class UnknownGenerator(PresentationError):
    def __init__(self, name):
        super().__init__(f"Unknown generator {name!r}.")
        self.name = name


class TietzeError(PresentationError):
    pass


class AlphabetError(PresentationError):
    def __init__(self, word: str, generators: int):
        super().__init__(f"Word {word} is not over an alphabet of {generators} generators.")
        self.word = word
        self.generators = generators


# ----------------------------------------------------
# Resources

class LimitExceeded(FibreError):
    def __init__(self, limit: str, value: int):
        super().__init__(f"Limit {limit}={value} exceeded.")
        self.limit = limit
        self.value = value


class BudgetExceeded(LimitExceeded):
    def __init__(self, value: int):
        super().__init__('budget', value)


# ----------------------------------------------------
# Coset tables

class IncompleteTable(FibreError):
    def __init__(self, reason: str = ''):
        super().__init__(f"Coset table is incomplete{': ' + reason if reason else ''}.")
        self.reason = reason


class CosetRangeError(FibreError, IndexError):
    def __init__(self, coset: int, index: int):
        super().__init__(f"Coset {coset} is out of range 1..{index}.")
        self.coset = coset
        self.index = index


class InconsistentTable(FibreError):
    pass


# ----------------------------------------------------
# Epimorphisms and fibre products

class EpimorphismError(FibreError):
    pass


class MismatchedTargets(EpimorphismError):
    def __init__(self):
        super().__init__("Epimorphisms have different targets.")


class PartialKernel(EpimorphismError):
    def __init__(self):
        super().__init__(
            "Kernel normal generators are partial, supply them explicitly with with_kernel().")


class MissingSection(EpimorphismError):
    def __init__(self, side: str):
        super().__init__(f"No section for the {side} epimorphism.")
        self.side = side


class NotAHomomorphism(EpimorphismError):
    def __init__(self, relator: str, quotient: str):
        super().__init__(f"Relator image {relator} is nontrivial in the finite quotient {quotient}.")
        self.relator = relator
        self.quotient = quotient


class PairInconsistency(EpimorphismError):
    def __init__(self, pair: str, quotient: str):
        super().__init__(f"Generator pair {pair} has different images in the finite quotient {quotient}.")
        self.pair = pair
        self.quotient = quotient


# ----------------------------------------------------
# Finite quotients

class IncomparableFingerprints(FibreError):
    def __init__(self, reason: str):
        super().__init__(f"Fingerprints are incomparable: {reason}.")
        self.reason = reason


class UnknownGroup(FibreError, KeyError):
    def __init__(self, name: str):
        super().__init__(f"No group named {name!r}.")
        self.name = name

    def __str__(self):
        return self.args[0]
