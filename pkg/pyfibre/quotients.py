""" Finite images: the group catalog, homomorphism counts and truncated fingerprints.

Permutations are 0-based array forms composed left to right, `(p * q)[i] = q[p[i]]`, so that a
word evaluates letter by letter in reading order, as it acts on cosets.
"""
import logging
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from pydantic import validator
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import AlternatingGroup, CyclicGroup, DihedralGroup, SymmetricGroup

from pyfibre.config import Limits
from pyfibre.errors import BudgetExceeded, IncomparableFingerprints, UnknownGroup
from pyfibre.intmat import AbelianInvariants
from pyfibre.lowindex import SubgroupClass, count_subgroups, low_index_subgroups
from pyfibre.model import FibreModel
from pyfibre.presentations import Presentation
from pyfibre.words import Word

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


class FiniteGroup(FibreModel):
    name: str
    degree: int
    generators: Tuple[Perm, ...]

    # Sorted, so element 0 is the identity.
    elements: Tuple[Perm, ...]

    _index: Dict[Perm, int]
    _mul: List[List[int]]
    _inv: List[int]

    @validator('elements')
    def _check_elements(cls, v, values):
        degree = values.get('degree')
        assert v and v[0] == tuple(range(degree or len(v[0]))), "Identity should come first."
        assert all(sorted(e) == list(range(len(e))) and len(e) == len(v[0]) for e in v), "Not permutations."
        return v

    def __init__(self, **data):
        super().__init__(**data)
        index = {e: i for i, e in enumerate(self.elements)}
        assert len(index) == len(self.elements), "Repeated elements."
        try:
            self._mul = [[index[compose(a, b)] for b in self.elements] for a in self.elements]
        except KeyError:
            raise AssertionError(f"Elements of {self.name} are not closed under composition.") from None
        self._index = index
        self._inv = [row.index(0) for row in self._mul]
        assert self.closure(self.generator_indices()) == frozenset(range(self.order)), \
            f"Generators of {self.name} do not generate the listed elements."

    @classmethod
    def from_permutations(cls, name: str, group: PermutationGroup) -> 'FiniteGroup':
        elements = sorted(tuple(p.array_form) for p in group.generate())
        assert len(elements) == group.order(), "Closure does not match the group order."
        return cls(
            name=name,
            degree=group.degree,
            generators=tuple(tuple(g.array_form) for g in group.generators),
            elements=tuple(elements),
        )

    # ----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, p: Perm) -> int:
        return self._index[tuple(p)]

    def generator_indices(self) -> List[int]:
        return [self._index[g] for g in self.generators]

    def mul(self, i: int, j: int) -> int:
        return self._mul[i][j]

    def inverse(self, i: int) -> int:
        return self._inv[i]

    def evaluate(self, images: Sequence[int], w: Word) -> int:
        """ Element reached by w when generator g is sent to element images[g]. """
        mul, inv = self._mul, self._inv
        x = 0
        for g, s in w:
            x = mul[x][images[g] if s > 0 else inv[images[g]]]
        return x

    def closure(self, indices: Sequence[int]) -> FrozenSet[int]:
        """ Subgroup generated by the given elements. """
        mul = self._mul
        reached = {0}
        queue = [0]
        while queue:
            e = queue.pop()
            for h in indices:
                f = mul[e][h]
                if f not in reached:
                    reached.add(f)
                    queue.append(f)
        return frozenset(reached)

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x: x, k = self._mul[x][i], k + 1
        return k

    @property
    def is_abelian(self) -> bool:
        gens = self.generator_indices()
        return all(self._mul[a][b] == self._mul[b][a] for a in gens for b in gens)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


# ----------------------------------------------------
# Catalog

def _quaternion_group() -> PermutationGroup:
    # Right regular representation on the eight unit quaternions.
    def mul(x, y):
        a1, b1, c1, d1 = x
        a2, b2, c2, d2 = y
        return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)

    units = [tuple(int(i == k) for i in range(4)) for k in range(4)]
    elements = units + [tuple(-x for x in u) for u in units]
    i, j = units[1], units[2]
    return PermutationGroup([
        Permutation([elements.index(mul(e, g)) for e in elements]) for g in (i, j)
    ])


@lru_cache(maxsize=None)
def catalog() -> Tuple[FiniteGroup, ...]:
    """ Z2..Z12, D3..D6 (order 2n), S3, S4, A4, A5 and Q8. """
    groups = [(f"Z{n}", CyclicGroup(n)) for n in range(2, 13)]
    groups += [(f"D{n}", DihedralGroup(n)) for n in range(3, 7)]
    groups += [
        ('S3', SymmetricGroup(3)),
        ('S4', SymmetricGroup(4)),
        ('A4', AlternatingGroup(4)),
        ('A5', PermutationGroup([Permutation([[0, 1, 2, 3, 4]]), Permutation([[0, 1, 2]], size=5)])),
        ('Q8', _quaternion_group()),
    ]
    return tuple(FiniteGroup.from_permutations(name, g) for name, g in groups)


def catalog_group(name: str) -> FiniteGroup:
    for s in catalog():
        if s.name == name: return s
    raise UnknownGroup(name)


def select_targets(names: Optional[Sequence[str]] = None, max_order: Optional[int] = None) -> List[FiniteGroup]:
    """ Catalog groups by name (all by default), always in catalog order. """
    if names is not None:
        for name in names: catalog_group(name)
    return [s for s in catalog()
            if (names is None or s.name in names) and (max_order is None or s.order <= max_order)]


# ----------------------------------------------------
# Homomorphisms

class HomCount(FibreModel):
    target: str
    total: int
    surjective: int


class KnownQuotient(FibreModel):
    """ Surjection of a presentation onto a catalog group, by generator images. """

    group: FiniteGroup
    images: Tuple[int, ...]

    def evaluate(self, w: Word) -> int:
        return self.group.evaluate(self.images, w)

    def __str__(self):
        return f"{self.group.name}{list(self.images)}"


class _HomSearch:
    """ Depth-first assignment of generator images, relators checked once fully assigned. """

    def __init__(self, p: Presentation, s: FiniteGroup, budget: int):
        self.p = p
        self.s = s
        self.budget = budget
        self.cost = 0
        self.levels: List[List[Word]] = [[] for _ in range(p.rank)]
        for r in p.relators: self.levels[max(g for g, _ in r)].append(r)
        self._closures: Dict[FrozenSet[int], bool] = {}

    def tick(self, n: int):
        self.cost += n
        if self.cost > self.budget: raise BudgetExceeded(self.budget)

    def homs(self, first: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
        if not self.p.rank:
            yield ()
            return
        assignment = [0] * self.p.rank
        order = self.s.order

        def extend(level: int) -> Iterator[Tuple[int, ...]]:
            for v in ([first] if level == 0 and first is not None else range(order)):
                self.tick(1)
                assignment[level] = v
                for r in self.levels[level]:
                    self.tick(len(r))
                    if self.s.evaluate(assignment, r): break
                else:
                    if level + 1 == self.p.rank:
                        yield tuple(assignment)
                    else:
                        yield from extend(level + 1)

        yield from extend(0)

    def is_surjective(self, images: Tuple[int, ...]) -> bool:
        key = frozenset(images)
        if key not in self._closures:
            self._closures[key] = len(self.s.closure(sorted(key))) == self.s.order
        return self._closures[key]


def first_values(p: Presentation, s: FiniteGroup) -> List[Optional[int]]:
    """ Independent branches of a hom search: the images of the first generator. """
    return list(range(s.order)) if p.rank else [None]


def count_homs_branch(p: Presentation, s: FiniteGroup, first: Optional[int], budget: int) -> Tuple[int, int, int]:
    """ :return: homs, surjective homs and evaluations spent, for one image of the first generator. """
    search = _HomSearch(p, s, budget)
    total = surjective = 0
    for images in search.homs(first):
        total += 1
        if search.is_surjective(images): surjective += 1
    return total, surjective, search.cost


def merge_hom_counts(s: FiniteGroup, parts: Sequence[Tuple[int, int, int]], budget: int) -> HomCount:
    if sum(cost for _, _, cost in parts) > budget: raise BudgetExceeded(budget)
    return HomCount(
        target=s.name,
        total=sum(t for t, _, _ in parts),
        surjective=sum(u for _, u, _ in parts),
    )


def count_homs(p: Presentation, s: FiniteGroup, limits: Optional[Limits] = None) -> HomCount:
    """ Counts homomorphisms p -> s and how many of them are onto.

    :raise: BudgetExceeded when more than limits.budget assignments and relator letters are evaluated.
    """
    budget = (limits or Limits()).budget
    parts, spent = [], 0
    for v in first_values(p, s):
        part = count_homs_branch(p, s, v, budget - spent)
        spent += part[2]
        parts.append(part)
    result = merge_hom_counts(s, parts, budget)
    logger.debug("Homs into %s: %d total, %d onto, %d evaluations", s.name, result.total, result.surjective, spent)
    return result


def find_quotients(
        p: Presentation,
        targets: Optional[Sequence[FiniteGroup]] = None,
        limits: Optional[Limits] = None,
) -> List[KnownQuotient]:
    """ Every surjection of p onto the target groups (whole catalog by default). """
    budget = (limits or Limits()).budget
    result = []
    for s in (catalog() if targets is None else targets):
        search = _HomSearch(p, s, budget)
        result.extend(KnownQuotient(group=s, images=images)
                      for images in search.homs() if search.is_surjective(images))
    logger.debug("Found %d finite quotients", len(result))
    return result


# ----------------------------------------------------
# Fingerprints

class ClassDetail(FibreModel):
    is_normal: bool
    h1: AbelianInvariants

    def key(self):
        return self.is_normal, self.h1.free_rank, self.h1.torsion


class IndexProfile(FibreModel):
    index: int
    classes: int
    total: int
    normal: int
    classes_detail: Tuple[ClassDetail, ...]


class Fingerprint(FibreModel):
    bound: int
    per_index: Tuple[IndexProfile, ...]
    hom_counts: Tuple[HomCount, ...]


def assemble_fingerprint(k: int, classes: Sequence[SubgroupClass], hom_counts: Sequence[HomCount]) -> Fingerprint:
    profiles = []
    for n in range(1, k + 1):
        counts = count_subgroups(classes, n)
        details = [ClassDetail(is_normal=c.is_normal, h1=c.h1) for c in classes if c.index == n]
        profiles.append(IndexProfile(
            index=n,
            classes=counts.classes,
            total=counts.total,
            normal=counts.normal,
            classes_detail=tuple(sorted(details, key=ClassDetail.key)),
        ))
    return Fingerprint(bound=k, per_index=tuple(profiles), hom_counts=tuple(hom_counts))


def fingerprint(
        p: Presentation,
        k: int,
        targets: Optional[Sequence[FiniteGroup]] = None,
        limits: Optional[Limits] = None,
) -> Fingerprint:
    """ Truncated profile of the finite images of p.

    :param k: Subgroup index bound.
    :param targets: Catalog groups to count homs into, whole catalog by default.
    :raise: LimitExceeded (or BudgetExceeded) from the underlying searches.
    """
    targets = catalog() if targets is None else targets
    classes = low_index_subgroups(p, k, limits)
    return assemble_fingerprint(k, classes, [count_homs(p, s, limits) for s in targets])


class FingerprintDifference(FibreModel):
    section: str
    key: str
    field: str
    left: str
    right: str


class FingerprintComparison(FibreModel):
    bound: int
    equal: bool
    difference: Optional[FingerprintDifference] = None
    message: str


def _first_difference(a: Fingerprint, b: Fingerprint) -> Optional[FingerprintDifference]:
    for x, y in zip(a.per_index, b.per_index):
        for field in ('total', 'classes', 'normal'):
            if getattr(x, field) != getattr(y, field):
                return FingerprintDifference(section='perIndex', key=str(x.index), field=field,
                                             left=str(getattr(x, field)), right=str(getattr(y, field)))
    for x, y in zip(a.per_index, b.per_index):
        if x.classes_detail != y.classes_detail:
            def show(profile):
                return ', '.join(f"{'normal' if d.is_normal else 'non-normal'} {d.h1}" for d in profile.classes_detail)

            return FingerprintDifference(section='perIndex', key=str(x.index), field='classesDetail',
                                         left=show(x), right=show(y))
    for x, y in zip(a.hom_counts, b.hom_counts):
        for field in ('total', 'surjective'):
            if getattr(x, field) != getattr(y, field):
                return FingerprintDifference(section='homCounts', key=x.target, field=field,
                                             left=str(getattr(x, field)), right=str(getattr(y, field)))
    return None


def compare_fingerprints(a: Fingerprint, b: Fingerprint) -> FingerprintComparison:
    """ Exact comparison.

    Coordinates are visited as subgroup counts per index (total, classes, normal), then class
    invariants per index, then hom counts per target; the first differing one is reported.

    :raise: IncomparableFingerprints on different bounds or target sets.
    """
    if a.bound != b.bound: raise IncomparableFingerprints(f"bounds {a.bound} and {b.bound}")
    if [h.target for h in a.hom_counts] != [h.target for h in b.hom_counts]:
        raise IncomparableFingerprints("target sets differ")

    difference = _first_difference(a, b)
    if difference is None:
        message = f"no difference detected up to bound {a.bound}"
    else:
        where = f"index {difference.key}" if difference.section == 'perIndex' else f"target {difference.key}"
        message = f"differ at {where}: {difference.field} {difference.left} vs {difference.right}"
    return FingerprintComparison(bound=a.bound, equal=difference is None, difference=difference, message=message)
