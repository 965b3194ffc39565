""" Subgroups of small index up to conjugacy.

Depth-first search over standard partial coset tables: the first undefined entry in row-scan
order is filled with every existing coset, then with one new coset. Each assignment is closed
under relator deductions, conflicts prune the branch, and a table that some other basepoint
relabels into a smaller one is pruned as not first in its conjugacy class.
"""
import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

from pyfibre.config import Limits
from pyfibre.cosets import CosetTable, trace
from pyfibre.errors import AlphabetError, LimitExceeded
from pyfibre.intmat import AbelianInvariants
from pyfibre.model import FibreModel
from pyfibre.presentations import Presentation
from pyfibre.words import Word, rotations

logger = logging.getLogger(__name__)

# Partial table rows 0..k (row 0 unused), the number of cosets in use and the basepoints
# whose relabelling is not yet known to give a larger table.
class Node(NamedTuple):
    rows: List[List[int]]
    n: int
    pending: Tuple[int, ...] = ()


Rows = Tuple[Tuple[int, ...], ...]

# A complete table with the number of cosets whose stabilizer is the subgroup itself.
Found = Tuple[Rows, int]

FRONTIER_WIDTH = 32


class SubgroupClass(FibreModel):
    table: CosetTable
    index: int
    is_normal: bool
    class_size: int

    # Abelianization of the subgroup, None when not computed.
    h1: Optional[AbelianInvariants] = None

    # max_index of the run that found the class.
    bound: int


class SubgroupCount(FibreModel):
    index: int
    classes: int
    total: int
    normal: int


# ----------------------------------------------------

class _Search:
    """ Search state over one mutable table. Assignments are recorded on a trail and undone on backtrack. """

    def __init__(self, p: Presentation, max_index: int, max_nodes: int):
        self.k = max_index
        self.max_nodes = max_nodes
        self.nodes = 0
        self.ncols = 2 * p.rank
        self.inv = [x ^ 1 for x in range(self.ncols)]
        cycles = set()
        for r in p.relators:
            for w in rotations(r) + rotations(~r): cycles.add(tuple(w.columns()))
        self.by_column = [[list(c) for c in sorted(cycles) if c[0] == x] for x in range(self.ncols)]
        self.trail: List[Tuple[int, int]] = []
        self.found: List[Found] = []

    def root(self) -> Node:
        return Node([[0] * self.ncols for _ in range(self.k + 1)], 1)

    def visit(self):
        self.nodes += 1
        if self.nodes > self.max_nodes: raise LimitExceeded('max_nodes', self.max_nodes)

    @staticmethod
    def first_gap(rows: List[List[int]], n: int, start: int = 1) -> Optional[Tuple[int, int]]:
        """ First undefined entry in row-scan order, rows before `start` being full. """
        for c in range(start, n + 1):
            row = rows[c]
            if 0 in row: return c, row.index(0)
        return None

    def put(self, rows: List[List[int]], c: int, x: int, d: int):
        rows[c][x] = d
        rows[d][self.inv[x]] = c
        self.trail.append((c, x))
        self.trail.append((d, self.inv[x]))

    def undo(self, rows: List[List[int]], mark: int):
        trail = self.trail
        while len(trail) > mark:
            c, x = trail.pop()
            rows[c][x] = 0

    def scan(self, rows: List[List[int]], c: int, w: Sequence[int], queue: List[Tuple[int, int]]) -> bool:
        """ Traces a relator cycle from both ends, fills a single gap, returns False on a conflict. """
        inv = self.inv
        f, i, j = c, 0, len(w) - 1
        while i <= j and rows[f][w[i]]:
            f = rows[f][w[i]]
            i += 1
        if i > j: return f == c
        b = c
        while j >= i and rows[b][inv[w[j]]]:
            b = rows[b][inv[w[j]]]
            j -= 1
        if j < i: return f == b
        if i == j:
            self.put(rows, f, w[i], b)
            queue.append((f, w[i]))
        return True

    def assign(self, rows: List[List[int]], c: int, x: int, d: int) -> bool:
        inv = self.inv
        self.put(rows, c, x, d)
        queue = [(c, x)]
        while queue:
            c, x = queue.pop()
            d = rows[c][x]
            for start, col in ((c, x), (d, inv[x])):
                for w in self.by_column[col]:
                    if not self.scan(rows, start, w, queue): return False
        return True

    def compare_from(self, rows: List[List[int]], n: int, b: int) -> int:
        """ Compares the table relabelled from basepoint b with the table itself in row-scan order.

        A decided comparison only reads defined entries, so it holds for every completion.

        :return: -1 if the relabelled table is smaller, 1 if larger, 0 if equal or undecided.
        """
        ncols = self.ncols
        label = [0] * (n + 1)
        label[b] = 1
        order = [b]
        for r in range(1, n + 1):
            if r > len(order): return 0
            source = rows[order[r - 1]]
            row = rows[r]
            for x in range(ncols):
                e, t = source[x], row[x]
                if not e or not t: return 0
                l = label[e]
                if not l:
                    order.append(e)
                    l = label[e] = len(order)
                if l != t: return -1 if l < t else 1
        return 0

    def still_first(self, rows: List[List[int]], n: int, pending: Sequence[int]) -> Optional[Tuple[int, ...]]:
        """ Basepoints left undecided, None if one relabels the table into a smaller one. """
        kept = []
        for b in pending:
            s = self.compare_from(rows, n, b)
            if s < 0: return None
            if not s: kept.append(b)
        return tuple(kept)

    def branches(self, rows: List[List[int]], n: int, pending: Tuple[int, ...], gap: Tuple[int, int]):
        """ Fills the gap with every coset in turn; yields (cosets, pending) with the table updated. """
        c, x = gap
        candidates = [d for d in range(1, n + 1) if not rows[d][self.inv[x]]]
        if n < self.k: candidates.append(n + 1)
        for d in candidates:
            mark = len(self.trail)
            if self.assign(rows, c, x, d):
                m = max(n, d)
                kept = self.still_first(rows, m, pending + (d,) if d > n else pending)
                if kept is not None: yield m, kept
            self.undo(rows, mark)

    def complete(self, rows: List[List[int]], n: int, pending: Tuple[int, ...]):
        # Basepoints still pending on a complete table relabel it into itself.
        self.found.append((tuple(tuple(r) for r in rows[1:n + 1]), 1 + len(pending)))

    def descend(self, rows: List[List[int]], n: int, pending: Tuple[int, ...], start: int = 1):
        self.visit()
        gap = self.first_gap(rows, n, start)
        if gap is None:
            self.complete(rows, n, pending)
            return
        for m, kept in self.branches(rows, n, pending, gap):
            self.descend(rows, m, kept, gap[0])


def search_frontier(p: Presentation, max_index: int, max_nodes: int) -> Tuple[List[Node], List[Found], int]:
    """ Expands the search breadth-first until at least FRONTIER_WIDTH open nodes remain.

    The frontier depends only on the presentation and the bound, so subtrees can be searched
    independently and merged in any order.

    :return: open nodes, complete tables met on the way, nodes expanded.
    """
    search = _Search(p, max_index, max_nodes)
    level = [search.root()]
    while level and len(level) < FRONTIER_WIDTH:
        deeper = []
        for rows, n, pending in level:
            search.visit()
            gap = search.first_gap(rows, n)
            if gap is None:
                search.complete(rows, n, pending)
                continue
            for m, kept in search.branches(rows, n, pending, gap):
                deeper.append(Node([r[:] for r in rows], m, kept))
        level = deeper
    logger.debug("Low-index frontier: %d open nodes, %d tables, %d nodes", len(level), len(search.found), search.nodes)
    return level, search.found, search.nodes


def search_subtree(p: Presentation, max_index: int, node: Node, max_nodes: int) -> Tuple[List[Found], int]:
    """ Depth-first search below one frontier node.

    :return: complete tables found, nodes visited.
    :raise: LimitExceeded when more than max_nodes nodes are visited.
    """
    search = _Search(p, max_index, max_nodes)
    rows, n, pending = node
    search.descend([r[:] for r in rows], n, pending)
    return search.found, search.nodes


def check_bound(max_index: int, limits: Limits):
    assert max_index >= 1, "max_index should be positive."
    if max_index > limits.max_index_cap: raise LimitExceeded('max_index_cap', limits.max_index_cap)


def assemble_classes(
        p: Presentation, max_index: int, found: Sequence[Found], with_h1: bool = True,
) -> List[SubgroupClass]:
    """ SubgroupClass values for found tables, in canonical order (index, then rows). """
    from pyfibre.schreier import subgroup_abelianization

    result = []
    for rows, fixed in sorted(set(found), key=lambda item: (len(item[0]), item[0])):
        n = len(rows)
        assert n % fixed == 0, "Normalizer index does not divide the subgroup index."
        t = CosetTable(p, ((),) + rows)
        # Tables from the search are complete and standard, no revalidation.
        result.append(SubgroupClass.construct(
            table=t,
            index=n,
            is_normal=fixed == n,
            class_size=n // fixed,
            h1=subgroup_abelianization(p, t) if with_h1 else None,
            bound=max_index,
        ))
    return result


# ----------------------------------------------------

def low_index_subgroups(
        p: Presentation,
        max_index: int,
        limits: Optional[Limits] = None,
        with_h1: bool = True,
) -> List[SubgroupClass]:
    """ One representative per conjugacy class of subgroups of index at most max_index.

    :param p: Presentation of the group.
    :param max_index: Index bound k >= 1.
    :param limits: max_nodes and max_index_cap are used.
    :param with_h1: Fill SubgroupClass.h1 by Reidemeister-Schreier rewriting.
    :return: Classes ordered by index, then by table rows.
    :raise: LimitExceeded on too many search nodes or a bound above max_index_cap,
        no partial result is returned.
    """
    limits = limits or Limits()
    check_bound(max_index, limits)
    logger.info("Searching subgroups of index <= %d in a group with %d generators", max_index, p.rank)

    level, found, nodes = search_frontier(p, max_index, limits.max_nodes)
    for node in level:
        more, used = search_subtree(p, max_index, node, limits.max_nodes)
        nodes += used
        if nodes > limits.max_nodes: raise LimitExceeded('max_nodes', limits.max_nodes)
        found.extend(more)

    result = assemble_classes(p, max_index, found, with_h1)
    logger.info("Found %d classes in %d search nodes", len(result), nodes)
    return result


def count_subgroups(classes: Sequence[SubgroupClass], n: int) -> SubgroupCount:
    """ Counts at index n: classes, subgroups (sum of class sizes) and normal subgroups.

    :raise: ValueError if n exceeds the bound the classes were enumerated with.
    """
    bound = min((c.bound for c in classes), default=0)
    if n > bound: raise ValueError(f"Index {n} exceeds the enumeration bound {bound}.")
    at_n = [c for c in classes if c.index == n]
    return SubgroupCount(
        index=n,
        classes=len(at_n),
        total=sum(c.class_size for c in at_n),
        normal=sum(1 for c in at_n if c.is_normal),
    )


def contains_subgroup_conjugate(t: CosetTable, gens: Sequence[Word]) -> List[int]:
    """ Cosets fixed by every word of gens.

    A nonempty result means some conjugate of the subgroup contains <gens>.

    :raise: IncompleteTable, AlphabetError for a word over more generators than the table has.
    """
    t.require_complete()
    rank = t.presentation.rank
    for w in gens:
        if not w.is_over(rank): raise AlphabetError(repr(w), rank)
    return [c for c in range(1, t.index + 1) if all(trace(t, c, w) == c for w in gens)]
