import pytest

from pyfibre.config import Limits
from pyfibre.cosets import coset_enumerate, trace
from pyfibre.corpus import load_fibre_demo, load_group
from pyfibre.errors import (
    AlphabetError, DegenerateRelator, EpimorphismError, MismatchedTargets, MissingSection, NotAHomomorphism,
    PairInconsistency, PartialKernel, PresentationError
)
from pyfibre.fibre import (
    abelianized_span, assemble_double, certify_generator_map, check_dense_image, double_fibre_product,
    extend_epi_over_free_product, fibre_product_generators, make_quotient_epi, retraction_with_z,
    verify_pt_hypotheses, with_kernel, with_section
)
from pyfibre.parsing import parse_presentation
from pyfibre.presentations import cyclic_group, free_group
from pyfibre.quotients import select_targets
from pyfibre.words import Word

HIGMAN_CERT = "acyclic per Baumslag, Dyer and Heller"


@pytest.fixture(scope='module')
def higman_epi():
    return make_quotient_epi(*load_fibre_demo('higman'))


@pytest.fixture(scope='module')
def z2_epi():
    return make_quotient_epi(free_group(1), [Word.gen(0) ** 2])


# ----------------------------------------------------
# Epimorphisms

def test_make_quotient_epi(higman_epi, z2_epi):
    assert higman_epi.source == free_group(4)
    assert higman_epi.target.normalized_relators() == load_group('Higman').normalized_relators()
    assert higman_epi.kernel == higman_epi.target.relators
    assert len(higman_epi.kernel) == 4
    assert higman_epi.section == tuple(Word.gen(i) for i in range(4))
    assert higman_epi.quotients == ()
    assert higman_epi.assumed() == []

    assert z2_epi.kernel == (Word.gen(0) ** 2,)
    assert [str(q) for q in z2_epi.quotients] == ['Z2[1]']

    with pytest.raises(DegenerateRelator):
        make_quotient_epi(free_group(2), [Word([(0, 1), (0, -1)])])


def test_canonical_epi_is_syntactic():
    s3 = load_group('S3')
    epi = make_quotient_epi(s3, [s3.word('b')])
    assert [c.status for c in epi.certification] == ['syntactic'] * 3
    assert epi.apply(s3.word('a b')) == s3.word('a b')
    assert epi.lift(s3.word('b^2')) == s3.word('b^2')


@pytest.mark.parametrize('group, relators', [
    ('F2', ['a^2', 'b^3', '(a b)^2']),
    ('F2', ['a^2', 'b^3', '(a b)^5']),
    ('S3', ['b']),
    ('Q8', ['a^2']),
])
def test_kernel_is_trivial_in_target(group, relators):
    g = load_group(group)
    epi = make_quotient_epi(g, [g.word(r) for r in relators])
    t = coset_enumerate(epi.target)
    assert t.is_complete
    for r in epi.kernel:
        image = epi.apply(r)
        assert all(trace(t, c, image) == c for c in range(1, t.index + 1))


def test_extend_over_free_group(higman_epi):
    epi = extend_epi_over_free_product(higman_epi, free_group(1), [Word.gen(0)])
    assert epi.source.rank == 5
    assert epi.kernel_complete
    assert len(epi.kernel) == 5
    assert epi.kernel[4] == Word([(4, 1), (0, -1)])
    assert epi.apply(Word.gen(4)) == Word.gen(0)


def test_extend_with_unproven_relator(higman_epi):
    gamma = parse_presentation('< t | t^2 >')
    epi = extend_epi_over_free_product(higman_epi, gamma, [Word.gen(0)])
    assert epi.certification[-1].status == 'assumed'
    assert not epi.kernel_complete
    assert epi.assumed() == ['relator t^2 maps to a^2, assumed trivial']
    with pytest.raises(PartialKernel):
        fibre_product_generators(epi, higman_epi)


def test_extend_certificates(z2_epi):
    epi = extend_epi_over_free_product(z2_epi, parse_presentation('< t | t^2 >'), [Word.gen(0)])
    assert epi.certification[-1].status == 'syntactic'
    assert epi.kernel_complete

    epi = extend_epi_over_free_product(z2_epi, parse_presentation('< t | t^4 >'), [Word.gen(0)])
    assert epi.certification[-1].status == 'finite-quotient-checked'
    assert not epi.kernel_complete

    with pytest.raises(NotAHomomorphism):
        extend_epi_over_free_product(z2_epi, parse_presentation('< t | t^3 >'), [Word.gen(0)])
    with pytest.raises(PresentationError):
        extend_epi_over_free_product(z2_epi, free_group(2), [Word.gen(0)])
    with pytest.raises(AlphabetError):
        extend_epi_over_free_product(z2_epi, free_group(1), [Word.gen(1)])


def test_with_kernel_and_section(z2_epi):
    epi = with_kernel(z2_epi.copy(update=dict(kernel_complete=False)), [Word.gen(0) ** 2])
    assert epi.kernel_complete
    assert epi.assumed() == ['kernel normal generators supplied by the user']

    epi = with_section(z2_epi, [Word.gen(0) ** 3])
    assert epi.section == (Word.gen(0) ** 3,)
    with pytest.raises(EpimorphismError):
        with_section(z2_epi, [Word.gen(0) ** 2])

    with pytest.raises(MissingSection):
        z2_epi.copy(update=dict(section=None)).lift(Word.gen(0))


# ----------------------------------------------------
# Fibre products

def test_symmetric_higman_pairs(higman_epi):
    fp = fibre_product_generators(higman_epi, higman_epi)
    assert len(fp.pairs) == 12
    assert [pair.family for pair in fp.pairs] == ['left'] * 4 + ['right'] * 4 + ['kernel'] * 4
    assert all(pair.left == pair.right for pair in fp.pairs[:8])
    assert [pair.left for pair in fp.pairs[8:]] == list(higman_epi.kernel)
    assert all(pair.right == Word() for pair in fp.pairs[8:])
    assert fp.ambient.rank == 8 and len(fp.ambient.relators) == 16
    assert fp.format_pair(fp.pairs[0]) == '(a, a)'
    assert abelianized_span(fp).is_trivial


def test_span_without_kernel_is_infinite(higman_epi):
    fp = fibre_product_generators(higman_epi, higman_epi).without_kernel_pairs()
    assert len(fp.pairs) == 8
    assert abelianized_span(fp).free_rank == 4


def test_f5_against_f4(higman_epi):
    p1 = extend_epi_over_free_product(higman_epi, free_group(1), [Word.gen(0)])
    fp = fibre_product_generators(p1, higman_epi)
    assert [pair.family for pair in fp.pairs].count('left') == 5
    assert [pair.family for pair in fp.pairs].count('right') == 4
    assert [pair.family for pair in fp.pairs].count('kernel') == 5
    assert fp.ambient.rank == 9
    assert fp.pairs[4].right == Word.gen(0)
    assert fp == double_fibre_product(higman_epi, free_group(1), [Word.gen(0)])


def test_fibre_product_errors(higman_epi, z2_epi):
    with pytest.raises(MismatchedTargets):
        fibre_product_generators(higman_epi, z2_epi)
    with pytest.raises(MissingSection):
        fibre_product_generators(higman_epi.copy(update=dict(section=None)), higman_epi)
    with pytest.raises(MissingSection):
        fibre_product_generators(higman_epi, higman_epi.copy(update=dict(section=None)))
    with pytest.raises(PairInconsistency):
        fibre_product_generators(z2_epi, z2_epi.copy(update=dict(section=(Word.gen(0) ** 2,))))


def test_trivial_quotient_pairs():
    epi = make_quotient_epi(*load_fibre_demo('trivial'))
    fp = fibre_product_generators(epi, epi)
    assert [fp.format_pair(pair) for pair in fp.pairs] == ['(a, a)', '(a, a)', '(a, 1)']
    assert abelianized_span(fp).is_trivial


def test_parity_pairs_are_compared():
    epi = make_quotient_epi(*load_fibre_demo('parity'))
    assert [str(q) for q in epi.quotients] == ['Z2[1]']
    fp = fibre_product_generators(epi, epi)
    assert [fp.format_pair(pair) for pair in fp.pairs] == ['(a, a)', '(a, a)', '(a^2, 1)']
    assert fp.consistency_checks == 3
    assert fp.right_projection_onto


def test_right_projection(higman_epi):
    assert fibre_product_generators(higman_epi, higman_epi).right_projection_onto
    trivial = make_quotient_epi(*load_fibre_demo('trivial'))
    fp = fibre_product_generators(trivial, trivial)
    assert fp.right_projection_onto
    assert fp.consistency_checks == 0


# ----------------------------------------------------
# Hypotheses on the quotient

def test_pt_higman():
    report = verify_pt_hypotheses(load_group('Higman'), 4, HIGMAN_CERT)
    assert report.overall == 'certified-at-truncation'
    assert report.q_hat_trivial_up_to == 4
    assert report.h1_trivial
    assert report.homs == 'pass'
    assert report.h2_certificate.citation == HIGMAN_CERT
    assert report.reasons == ()


def test_pt_without_certificate():
    report = verify_pt_hypotheses(load_group('Higman'), 2, targets=select_targets(['Z2']))
    assert report.overall == 'incomplete'
    assert report.reasons == ('no H2 certificate',)


@pytest.mark.parametrize('name', ['Z2', 'F1'])
def test_pt_refuted(name):
    report = verify_pt_hypotheses(load_group(name), 2, HIGMAN_CERT)
    assert report.overall == 'refuted'
    assert report.q_hat == 'fail'
    assert report.q_hat_trivial_up_to is None
    assert not report.h1_trivial
    assert report.homs == 'fail'


@pytest.mark.parametrize('n', range(2, 13))
def test_pt_refuted_for_cyclic_groups(n):
    report = verify_pt_hypotheses(cyclic_group(n), n, HIGMAN_CERT, targets=select_targets([f"Z{n}"]))
    assert report.overall == 'refuted'
    assert report.q_hat == 'fail'
    assert not report.h1_trivial
    assert report.homs == 'fail'


def test_pt_limits_never_certify():
    report = verify_pt_hypotheses(load_group('Higman'), 4, HIGMAN_CERT, Limits(max_nodes=1), select_targets(['Z2']))
    assert report.q_hat == 'incomplete'
    assert report.overall == 'incomplete'

    report = verify_pt_hypotheses(load_group('Higman'), 2, HIGMAN_CERT, Limits(budget=10), select_targets(['A5']))
    assert report.homs == 'incomplete'
    assert report.overall == 'incomplete'


# ----------------------------------------------------
# Dense image

def test_dense_image_higman_index_two(higman_epi):
    fp = fibre_product_generators(higman_epi, higman_epi)
    report = check_dense_image(fp, 2)
    assert report.verdict == 'PASS'
    assert report.classes_checked == 256
    assert report.violations == ()


def test_dense_image_without_kernel(higman_epi):
    fp = fibre_product_generators(higman_epi, higman_epi).without_kernel_pairs()
    report = check_dense_image(fp, 2)
    assert report.verdict == 'FAIL'
    assert report.violations
    assert all(v.index == 2 and v.is_normal and v.fixed_cosets == (1, 2) for v in report.violations)


def test_dense_image_demos():
    trivial = make_quotient_epi(*load_fibre_demo('trivial'))
    assert check_dense_image(fibre_product_generators(trivial, trivial), 4).verdict == 'PASS'

    diagonal = make_quotient_epi(*load_fibre_demo('diagonal'))
    fp = fibre_product_generators(diagonal, diagonal)
    assert fp.pairs and all(pair.family != 'kernel' for pair in fp.pairs)
    assert check_dense_image(fp, 2).verdict == 'FAIL'


def test_dense_image_incomplete(higman_epi):
    fp = fibre_product_generators(higman_epi, higman_epi)
    report = check_dense_image(fp, 2, Limits(max_nodes=5))
    assert report.verdict == 'INCOMPLETE'
    assert 'max_nodes' in report.reason


@pytest.mark.parametrize('demo, first_fail, k', [('parity', 2, 4), ('diagonal', 2, 2), ('trivial', None, 4)])
def test_dense_image_is_monotone(demo, first_fail, k):
    epi = make_quotient_epi(*load_fibre_demo(demo))
    fp = fibre_product_generators(epi, epi)
    violations = set()
    for bound in range(1, k + 1):
        report = check_dense_image(fp, bound)
        assert report.verdict == ('FAIL' if first_fail is not None and bound >= first_fail else 'PASS')
        tables = {v.table for v in report.violations}
        assert violations <= tables
        violations = tables


# ----------------------------------------------------
# Doubles

def test_assemble_double():
    d, retraction = assemble_double(free_group(1, ['t']))
    assert d.rank == 9 and len(d.relators) == 20
    assert all(c.status == 'syntactic' for c in certify_generator_map(retraction))
    assert retraction.apply(Word.gen(4)) == Word.gen(0)
    assert retraction.apply(Word.gen(0) * Word.gen(8)) == Word()

    d, retraction = assemble_double(parse_presentation('< t | t^2 >'))
    assert d.rank == 9 and len(d.relators) == 21
    assert retraction.relator_images()[0] == Word.gen(0) ** 2


def test_retraction_with_z():
    m = retraction_with_z(load_group('Higman'))
    assert m.target.rank == 5
    assert m.source.rank == 12
    assert m.apply(Word.gen(8)) == Word.gen(4)
    assert m.apply(Word.gen(9)) == Word()
    assert all(c.status == 'syntactic' for c in certify_generator_map(m))
