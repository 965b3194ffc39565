from typing import Dict, List, Tuple

from pyfibre.cosets import CosetTable
from pyfibre.intmat import AbelianInvariants, invariants_of_rows
from pyfibre.presentations import Presentation
from pyfibre.words import Word, cyclic_normal_form, cyclically_reduce


def _spanning_tree(t: CosetTable) -> Tuple[List[int], Dict[int, Tuple[int, int]]]:
    """ Breadth-first Schreier transversal.

    :return: cosets in discovery order and, for every coset but 1, the (coset, column) entry it was
        reached through.
    """
    rows = t.rows
    order = [1]
    parent: Dict[int, Tuple[int, int]] = {1: (0, 0)}
    for c in order:
        for x, d in enumerate(rows[c]):
            if d in parent: continue
            parent[d] = (c, x)
            order.append(d)
    del parent[1]
    return order, parent


def _rewrite(p: Presentation, t: CosetTable) -> Tuple[List[Tuple[int, int]], List[Word]]:
    """ Schreier generators as (coset, generator) entries and the rewritten relators. """
    t.require_complete()
    rows = t.rows
    _, parent = _spanning_tree(t)
    # Tree entries oriented along the generator's positive direction.
    tree = {(c, x >> 1) if not x & 1 else (d, x >> 1) for d, (c, x) in parent.items()}
    entries = [(c, g) for c in range(1, t.index + 1) for g in range(p.rank) if (c, g) not in tree]
    if not p.relators: return entries, []
    number: Dict[Tuple[int, int], int] = {e: i for i, e in enumerate(entries)}

    relators: List[Word] = []
    for r in p.relators:
        for c in range(1, t.index + 1):
            letters = []
            cur = c
            for g, s in r:
                if s > 0:
                    if (cur, g) in number: letters.append((number[cur, g], 1))
                    cur = rows[cur][2 * g]
                else:
                    cur = rows[cur][2 * g + 1]
                    if (cur, g) in number: letters.append((number[cur, g], -1))
            assert cur == c, "Relator does not close in the coset table."
            relators.append(cyclically_reduce(letters))
    return entries, relators


def coset_representatives(t: CosetTable) -> List[Word]:
    """ Schreier transversal, one word per coset 1..n (coset 1 gets the empty word). """
    t.require_complete()
    order, parent = _spanning_tree(t)
    representatives = [Word()] * (t.index + 1)
    for d in order[1:]:
        c, x = parent[d]
        representatives[d] = representatives[c] * Word.gen(x >> 1, -1 if x & 1 else 1)
    return representatives[1:]


def subgroup_presentation(p: Presentation, t: CosetTable) -> Presentation:
    """ Reidemeister-Schreier presentation of the subgroup with coset table t.

    Generators are named `<generator>_<coset>`, one per table entry outside the spanning tree.
    Relators are every relator of p rewritten at every coset, cyclically reduced, with empty
    ones dropped and repeats (up to rotation and inversion) removed.

    :raise: IncompleteTable
    """
    entries, rewritten = _rewrite(p, t)
    relators, seen = [], set()
    for r in rewritten:
        key = cyclic_normal_form(r)
        if not r or key in seen: continue
        seen.add(key)
        relators.append(r)
    # Names are distinct identifiers and relators are reduced and nonempty by construction.
    return Presentation.construct(
        generators=tuple(f"{p.generators[g]}_{c}" for c, g in entries),
        relators=tuple(relators),
    )


def subgroup_abelianization(p: Presentation, t: CosetTable) -> AbelianInvariants:
    entries, rewritten = _rewrite(p, t)
    return invariants_of_rows([r.exponent_sums(len(entries)) for r in rewritten], len(entries))
