import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from typing_extensions import Literal

from pyfibre.config import Limits
from pyfibre.errors import CosetRangeError, IncompleteTable, InconsistentTable
from pyfibre.presentations import Presentation
from pyfibre.words import Word, free_reduce, rotations

logger = logging.getLogger(__name__)

Status = Literal['complete', 'incomplete']
Rows = Sequence[Sequence[int]]


class CosetTable:
    """ Right action of the generators on the cosets 1..index of a subgroup.

    Column 2g holds the action of generator g, column 2g+1 the action of its inverse.
    Coset 1 is the subgroup itself, an entry 0 is undefined (only in incomplete tables).
    """

    __slots__ = ('presentation', 'subgroup_generators', 'rows', 'status', 'reason')

    def __init__(
            self,
            presentation: Presentation,
            rows: Rows,
            *,
            subgroup_generators: Iterable[Word] = (),
            status: Status = 'complete',
            reason: str = '',
    ):
        """
        :param presentation: Group whose generators act.
        :param rows: Table rows for cosets 1..n, as a list whose item 0 is ignored.
        :param subgroup_generators: Words generating the subgroup, if known.
        :param status: 'complete' or 'incomplete'.
        :param reason: Why an incomplete table stopped.
        """
        self.presentation = presentation
        self.subgroup_generators = tuple(subgroup_generators)
        self.rows: Tuple[Tuple[int, ...], ...] = ((0,) * (2 * presentation.rank),) + tuple(
            tuple(r) for r in rows[1:])
        self.status = status
        self.reason = reason

    @property
    def index(self) -> int:
        return len(self.rows) - 1

    @property
    def is_complete(self) -> bool:
        return self.status == 'complete'

    @property
    def ncols(self) -> int:
        return 2 * self.presentation.rank

    def entry(self, coset: int, generator: int, sign: int = 1) -> int:
        return self.rows[coset][2 * generator + (0 if sign > 0 else 1)]

    def permutation(self, generator: int) -> Tuple[int, ...]:
        """ Images of cosets 1..n under the generator (item 0 unused). """
        return tuple(row[2 * generator] for row in self.rows)

    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return self.rows[1:]

    def require_complete(self) -> 'CosetTable':
        if not self.is_complete: raise IncompleteTable(self.reason)
        return self

    def __eq__(self, other):
        return (isinstance(other, CosetTable) and self.rows == other.rows
                and self.presentation == other.presentation)

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"CosetTable(index={self.index}, status={self.status!r})"

    # ----------------------------------------------------

    def validate(self):
        """ Checks the complete-table invariants.

        :raise: InconsistentTable naming the first violated invariant.
        """
        self.require_complete()
        n, rows = self.index, self.rows
        for c in range(1, n + 1):
            for x, d in enumerate(rows[c]):
                if not 1 <= d <= n: raise InconsistentTable(f"Entry ({c}, {x}) = {d} is out of range.")
                if rows[d][x ^ 1] != c: raise InconsistentTable(f"Entry ({c}, {x}) has no inverse entry.")
        for g in range(self.presentation.rank):
            if sorted(self.permutation(g)[1:]) != list(range(1, n + 1)):
                raise InconsistentTable(f"Column of generator {g} is not a permutation.")
        if len(bfs_order(rows, 1)) != n: raise InconsistentTable("Action is not transitive.")
        for r in self.presentation.relators:
            for c in range(1, n + 1):
                if trace(self, c, r) != c:
                    raise InconsistentTable(f"Relator {self.presentation.format(r)} moves coset {c}.")
        for w in self.subgroup_generators:
            if trace(self, 1, w) != 1:
                raise InconsistentTable(f"Subgroup generator {self.presentation.format(w)} moves coset 1.")


# ----------------------------------------------------
# Tracing and relabelling

def trace(t: CosetTable, start: int, w: Word) -> Optional[int]:
    """ Coset reached from `start` reading `w` left to right, None if an entry is undefined. """
    if not 1 <= start <= t.index: raise CosetRangeError(start, t.index)
    rows = t.rows
    c = start
    for col in w.columns():
        c = rows[c][col]
        if not c: return None
    return c


def bfs_order(rows: Rows, start: int) -> List[int]:
    """ Cosets in order of discovery scanning rows in order and columns left to right. """
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        for d in rows[order[i]]:
            if d and d not in seen:
                seen.add(d)
                order.append(d)
        i += 1
    return order


def relabel(t: CosetTable, order: Sequence[int]) -> CosetTable:
    """ Renumbers coset order[i] as i + 1. """
    label = [0] * (t.index + 1)
    for i, c in enumerate(order): label[c] = i + 1
    rows = [()] + [[label[d] for d in t.rows[c]] for c in order]
    return CosetTable(t.presentation, rows, subgroup_generators=t.subgroup_generators,
                      status=t.status, reason=t.reason)


def standardize(t: CosetTable) -> CosetTable:
    """ Canonical numbering: breadth-first discovery order from coset 1.

    :raise: IncompleteTable for incomplete input.
    """
    t.require_complete()
    return relabel(t, bfs_order(t.rows, 1))


# ----------------------------------------------------
# Enumeration

class _TableFull(Exception):
    pass


class _OutOfSteps(Exception):
    pass


class _Enumerator:
    """ Working state of one Todd-Coxeter enumeration (HLT or Felsch). """

    def __init__(self, p: Presentation, subgens: Sequence[Word], limits: Limits):
        self.presentation = p
        self.limits = limits
        self.ncols = 2 * p.rank
        self.inv = [x ^ 1 for x in range(self.ncols)]
        self.relators = [r.columns() for r in p.relators]
        self.subgens = [c for c in (free_reduce(w).columns() for w in subgens) if c]

        self.table: List[List[int]] = [[0] * self.ncols, [0] * self.ncols]
        self.parent = [0, 1]
        self.live = 1
        self.steps = 0

        self.felsch = limits.strategy == 'felsch'
        self.deductions: List[Tuple[int, int]] = []
        self.by_column: Dict[int, List[List[int]]] = {x: [] for x in range(self.ncols)}
        if self.felsch:
            cycles = set()
            for r in p.relators:
                for w in rotations(r) + rotations(~r): cycles.add(tuple(w.columns()))
            for cycle in sorted(cycles): self.by_column[cycle[0]].append(list(cycle))

    # ----------------------------------------------------

    def rep(self, k: int) -> int:
        parent = self.parent
        r = k
        while parent[r] != r: r = parent[r]
        while parent[k] != r:
            parent[k], k = r, parent[k]
        return r

    def merge(self, k: int, l: int, queue: List[int]):
        a, b = self.rep(k), self.rep(l)
        if a == b: return
        if a > b: a, b = b, a
        self.parent[b] = a
        self.live -= 1
        queue.append(b)

    def coincidence(self, a: int, b: int):
        table, inv = self.table, self.inv
        queue: List[int] = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ncols):
                d = table[g][x]
                if not d: continue
                table[d][inv[x]] = 0
                mu, nu = self.rep(g), self.rep(d)
                if table[mu][x]:
                    self.merge(nu, table[mu][x], queue)
                elif table[nu][inv[x]]:
                    self.merge(mu, table[nu][inv[x]], queue)
                else:
                    table[mu][x] = nu
                    table[nu][inv[x]] = mu
                    if self.felsch: self.deductions.append((mu, x))

    def define(self, c: int, x: int):
        if self.live >= self.limits.max_cosets: raise _TableFull()
        b = len(self.table)
        self.table.append([0] * self.ncols)
        self.parent.append(b)
        self.live += 1
        self.table[c][x] = b
        self.table[b][self.inv[x]] = c
        if self.felsch: self.deductions.append((c, x))

    def scan(self, alpha: int, w: Sequence[int], fill: bool):
        """ Scans `w` at `alpha`, deducing a single gap, defining cosets for larger gaps if `fill`. """
        self.steps += len(w)
        if self.steps > self.limits.max_steps: raise _OutOfSteps()
        table, inv = self.table, self.inv
        f, i, b, j = alpha, 0, alpha, len(w) - 1
        while True:
            while i <= j and table[f][w[i]]:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != alpha: self.coincidence(f, alpha)
                return
            while j >= i and table[b][inv[w[j]]]:
                b = table[b][inv[w[j]]]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][inv[w[i]]] = f
                if self.felsch: self.deductions.append((f, w[i]))
                return
            if not fill: return
            self.define(f, w[i])

    def process_deductions(self):
        table, parent = self.table, self.parent
        while self.deductions:
            c, x = self.deductions.pop()
            if parent[c] == c:
                for w in self.by_column[x]:
                    self.scan(c, w, fill=False)
                    if parent[c] != c: break
            if parent[c] == c:
                d = table[c][x]
                if d and parent[d] == d:
                    for w in self.by_column[self.inv[x]]:
                        self.scan(d, w, fill=False)
                        if parent[d] != d: break

    def lookahead(self) -> bool:
        """ Scans every relator at every live coset without defining, returns True if room was freed. """
        before = self.live
        self.deductions.clear()
        for beta in range(1, len(self.table)):
            for w in self.relators:
                if self.parent[beta] != beta: break
                self.scan(beta, w, fill=False)
        if self.felsch: self.process_deductions()
        logger.debug("Lookahead freed %d of %d cosets", before - self.live, before)
        return self.live < self.limits.max_cosets

    def compact(self, alpha: int) -> int:
        """ Drops dead cosets, returns the new number of coset `alpha` (or of the next live one). """
        live = [c for c in range(1, len(self.table)) if self.parent[c] == c]
        label = [0] * len(self.table)
        for i, c in enumerate(live): label[c] = i + 1
        self.table = [[0] * self.ncols] + [[label[d] for d in self.table[c]] for c in live]
        self.parent = list(range(len(self.table)))
        logger.debug("Compacted coset table to %d cosets", len(live))
        return sum(1 for c in live if c < alpha) + 1

    # ----------------------------------------------------

    def _process_coset(self, alpha: int):
        parent = self.parent
        if not self.felsch:
            for w in self.relators:
                self.scan(alpha, w, fill=True)
                if parent[alpha] != alpha: return
        for x in range(self.ncols):
            if parent[alpha] != alpha: return
            if not self.table[alpha][x]:
                self.define(alpha, x)
                if self.felsch: self.process_deductions()

    def _sweep(self):
        alpha = 1
        while alpha < len(self.table):
            if self.parent[alpha] == alpha:
                try:
                    self._process_coset(alpha)
                except _TableFull:
                    if not self.lookahead(): raise
                    continue
            alpha += 1
            dead = len(self.table) - 1 - self.live
            if dead > max(1024, self.live) and not self.deductions: alpha = self.compact(alpha)

    def _closed(self) -> bool:
        """ Final check of the relators at every coset and the subgroup generators at coset 1. """
        table = self.table
        for beta in range(1, len(table)):
            if self.parent[beta] != beta: continue
            if not all(table[beta]): return False
            for w in self.relators:
                c = beta
                for x in w: c = table[c][x]
                if c != beta:
                    self.scan(beta, w, fill=True)
                    return False
        for w in self.subgens:
            c = 1
            for x in w: c = table[c][x]
            if c != 1:
                self.scan(1, w, fill=True)
                return False
        return True

    def run(self) -> CosetTable:
        status, reason = 'complete', ''
        try:
            for w in self.subgens:
                self.scan(1, w, fill=True)
            if self.felsch: self.process_deductions()
            while True:
                self._sweep()
                if self._closed(): break
                logger.debug("Coset table not closed after a sweep, sweeping again")
        except _TableFull:
            status, reason = 'incomplete', f"max_cosets={self.limits.max_cosets} reached"
        except _OutOfSteps:
            status, reason = 'incomplete', f"max_steps={self.limits.max_steps} reached"

        if status == 'incomplete': logger.warning("Coset enumeration stopped: %s", reason)
        self.compact(1)
        return CosetTable(
            self.presentation, self.table,
            subgroup_generators=[w for w in self._subgroup_words()],
            status=status, reason=reason,
        )

    def _subgroup_words(self) -> List[Word]:
        return [Word((x >> 1, -1 if x & 1 else 1) for x in w) for w in self.subgens]


def coset_enumerate(
        p: Presentation,
        subgens: Sequence[Word] = (),
        limits: Optional[Limits] = None,
) -> CosetTable:
    """ Todd-Coxeter enumeration of the cosets of <subgens> in p.

    :param p: Presentation of the group.
    :param subgens: Words generating the subgroup.
    :param limits: Coset and step ceilings and the strategy, see Limits.
    :return: Complete table with index rows, or an incomplete table (status 'incomplete',
        reason set) when a limit is reached. Never a wrong complete table.
    """
    limits = limits or Limits()
    for w in subgens: assert w.is_over(p.rank), "Subgroup generator is not over the group's generators."
    t = _Enumerator(p, subgens, limits).run()
    if t.is_complete:
        t.validate()
        logger.debug("Enumerated %d cosets", t.index)
    return t
