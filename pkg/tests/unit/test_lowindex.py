import pytest

from pyfibre.config import Limits
from pyfibre.corpus import load_group
from pyfibre.cosets import bfs_order, relabel
from pyfibre.errors import AlphabetError, LimitExceeded, PresentationError
from pyfibre.intmat import AbelianInvariants
from pyfibre.lowindex import (
    FRONTIER_WIDTH, assemble_classes, contains_subgroup_conjugate, count_subgroups, low_index_subgroups,
    search_frontier, search_subtree
)
from pyfibre.parsing import parse_presentation
from pyfibre.presentations import free_group
from pyfibre.words import Word
from tests.oracles import free_group_subgroups


def totals(classes, k):
    return [count_subgroups(classes, n).total for n in range(1, k + 1)]


@pytest.mark.parametrize('rank', [2, 3])
def test_free_group_counts(rank):
    classes = low_index_subgroups(free_group(rank), 4, with_h1=False)
    assert totals(classes, 4) == [free_group_subgroups(rank, n) for n in range(1, 5)]


def test_free_group_f2():
    assert totals(low_index_subgroups(free_group(2), 4, with_h1=False), 4) == [1, 3, 13, 71]


def test_f2_index_two():
    classes = low_index_subgroups(free_group(2), 2)
    assert [c.index for c in classes] == [1, 2, 2, 2]
    assert all(c.is_normal and c.class_size == 1 for c in classes)
    assert classes[0].h1 == AbelianInvariants(free_rank=2)
    assert all(c.h1 == AbelianInvariants(free_rank=3) for c in classes[1:])

    counts = count_subgroups(classes, 2)
    assert (counts.classes, counts.total, counts.normal) == (3, 3, 3)
    with pytest.raises(ValueError):
        count_subgroups(classes, 3)


def test_f1():
    classes = low_index_subgroups(free_group(1), 3)
    assert [(c.index, c.is_normal, c.class_size) for c in classes] == [(1, True, 1), (2, True, 1), (3, True, 1)]
    assert all(c.h1 == AbelianInvariants(free_rank=1) for c in classes)


def test_s3():
    classes = low_index_subgroups(load_group('S3'), 6)
    assert [(c.index, c.is_normal, c.class_size) for c in classes] == [
        (1, True, 1), (2, True, 1), (3, False, 3), (6, True, 1),
    ]
    assert classes[1].h1 == AbelianInvariants(torsion=(3,))
    assert classes[2].h1 == AbelianInvariants(torsion=(2,))
    assert classes[3].h1.is_trivial
    counts = count_subgroups(classes, 3)
    assert (counts.classes, counts.total, counts.normal) == (1, 3, 0)
    assert count_subgroups(classes, 4).total == 0


def test_canonical_order_and_bound():
    classes = low_index_subgroups(load_group('A5'), 6, with_h1=False)
    assert [c.index for c in classes] == [1, 5, 6]
    assert [c.class_size for c in classes] == [1, 5, 6]
    assert all(c.bound == 6 for c in classes)
    assert all(c.table.is_complete for c in classes)
    assert all(c.h1 is None for c in classes)


def test_limits():
    with pytest.raises(LimitExceeded) as e:
        low_index_subgroups(free_group(2), 13)
    assert e.value.limit == 'max_index_cap'
    with pytest.raises(LimitExceeded) as e:
        low_index_subgroups(free_group(2), 4, Limits(max_nodes=20))
    assert e.value.limit == 'max_nodes'
    with pytest.raises(AssertionError):
        low_index_subgroups(free_group(2), 0)


def test_frontier_split():
    f2 = free_group(2)
    level, found, nodes = search_frontier(f2, 4, 10 ** 6)
    assert len(level) >= FRONTIER_WIDTH or not level
    for node in level:
        more, used = search_subtree(f2, 4, node, 10 ** 6)
        found.extend(more)
    assert assemble_classes(f2, 4, found, with_h1=False) == low_index_subgroups(f2, 4, with_h1=False)


def test_contains_subgroup_conjugate():
    s3 = load_group('S3')
    classes = low_index_subgroups(s3, 3, with_h1=False)
    index_three = classes[2].table
    assert len(contains_subgroup_conjugate(index_three, [s3.word('a')])) == 1
    assert contains_subgroup_conjugate(index_three, [s3.word('b')]) == []
    assert contains_subgroup_conjugate(classes[1].table, [s3.word('b')]) == [1, 2]
    assert contains_subgroup_conjugate(classes[0].table, [s3.word('a'), s3.word('b')]) == [1]


@pytest.mark.parametrize('group', ['S3', 'Q8', '< a b | a^2, b^2 >'])
def test_classes_are_not_conjugate(group):
    p = parse_presentation(group) if group.startswith('<') else load_group(group)
    seen = set()
    for c in low_index_subgroups(p, 4, with_h1=False):
        t = c.table
        conjugates = {relabel(t, bfs_order(t.rows, b)).key() for b in range(1, t.index + 1)}
        assert len(conjugates) == c.class_size
        assert seen.isdisjoint(conjugates)
        seen |= conjugates


def test_contains_subgroup_conjugate_alphabet():
    table = low_index_subgroups(load_group('S3'), 2, with_h1=False)[1].table
    with pytest.raises(PresentationError):
        contains_subgroup_conjugate(table, [Word.gen(5)])
    with pytest.raises(AlphabetError):
        contains_subgroup_conjugate(table, [Word.gen(0), Word.gen(2) ** -1])
