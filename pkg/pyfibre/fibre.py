""" Epimorphisms with explicit kernels and sections, fibre products and their checks.

For epimorphisms p1: G1 -> Q and p2: G2 -> Q, the fibre product P = {(g1, g2) : p1(g1) = p2(g2)}
is generated by the pairs (s, u_s) over generators s of G1, (v_t, t) over generators t of G2 and
(r, 1) over normal generators r of ker p1, where u_s and v_t are lifts through the sections.
"""
import logging
from typing import List, Optional, Sequence, Tuple

from typing_extensions import Literal

from pyfibre.config import Limits
from pyfibre.errors import (
    AlphabetError, EpimorphismError, LimitExceeded, MismatchedTargets, MissingSection, NotAHomomorphism,
    PairInconsistency, PartialKernel, PresentationError
)
from pyfibre.intmat import AbelianInvariants, abelianization, invariants_of_rows
from pyfibre.lowindex import contains_subgroup_conjugate, low_index_subgroups
from pyfibre.model import FibreModel
from pyfibre.presentations import GeneratorMap, Presentation, direct_product, free_group, free_product
from pyfibre.quotients import HomCount, KnownQuotient, catalog, count_homs, find_quotients, select_targets
from pyfibre.words import Word, cyclic_normal_form, cyclically_reduce, free_reduce

logger = logging.getLogger(__name__)

Certification = Literal['syntactic', 'finite-quotient-checked', 'assumed']
CheckStatus = Literal['pass', 'fail', 'incomplete']
Verdict = Literal['PASS', 'FAIL', 'INCOMPLETE']

# Finite quotients of a target are searched among catalog groups up to this order.
QUOTIENT_SEARCH_MAX_ORDER = 8


class RelatorCertificate(FibreModel):
    relator: Word
    image: Word
    status: Certification


def certify_word(w: Word, target: Presentation, quotients: Sequence[KnownQuotient]) -> Certification:
    """ How well it is known that w is trivial in the target group.

    :raise: NotAHomomorphism if w is nontrivial in a known finite quotient.
    """
    r = cyclically_reduce(w)
    if not r: return 'syntactic'
    if cyclic_normal_form(r) in {cyclic_normal_form(t) for t in target.relators}: return 'syntactic'
    for q in quotients:
        if q.evaluate(r): raise NotAHomomorphism(target.format(r), str(q))
    return 'finite-quotient-checked' if quotients else 'assumed'


def certify_generator_map(m: GeneratorMap, quotients: Sequence[KnownQuotient] = ()) -> List[RelatorCertificate]:
    """ One certificate per source relator: is its image trivial in the target? """
    return [
        RelatorCertificate(relator=r, image=image, status=certify_word(image, m.target, quotients))
        for r, image in zip(m.source.relators, m.relator_images())
    ]


class Epimorphism(FibreModel):
    source: Presentation
    target: Presentation
    images: GeneratorMap

    # Target generator -> word over the source, None if unknown.
    section: Optional[Tuple[Word, ...]] = None

    # Normal generators of the kernel (the set R) and whether they are known to suffice.
    kernel: Tuple[Word, ...] = ()
    kernel_complete: bool = True

    certification: Tuple[RelatorCertificate, ...] = ()

    # Facts taken on trust, as free text.
    assumptions: Tuple[str, ...] = ()

    # Surjections of the target onto catalog groups known so far.
    quotients: Tuple[KnownQuotient, ...] = ()

    def apply(self, w: Word) -> Word:
        return self.images.apply(w)

    def lift(self, w: Word) -> Word:
        """ Preimage of a target word through the section. """
        if self.section is None: raise MissingSection('given')
        return w.substitute(self.section)

    def assumed(self) -> List[str]:
        """ Ledger of every assumed fact behind this epimorphism. """
        return list(self.assumptions) + [
            f"relator {self.source.format(c.relator)} maps to {self.target.format(c.image)}, assumed trivial"
            for c in self.certification if c.status == 'assumed'
        ]


def _known_quotients(target: Presentation, limits: Optional[Limits]) -> Tuple[KnownQuotient, ...]:
    return tuple(find_quotients(target, select_targets(max_order=QUOTIENT_SEARCH_MAX_ORDER), limits))


def make_quotient_epi(
        g: Presentation,
        extra_relators: Sequence[Word],
        quotients: Optional[Sequence[KnownQuotient]] = None,
        limits: Optional[Limits] = None,
) -> Epimorphism:
    """ Canonical epimorphism <X | S> -> <X | S, R>.

    Images and section are the identity words, the kernel is R, every relator is certified
    syntactically.

    :param quotients: Known finite quotients of the target, searched among small catalog groups if None.
    :raise: DegenerateRelator, AlphabetError
    """
    target = Presentation(generators=g.generators, relators=g.relators + tuple(extra_relators))
    images = GeneratorMap.identity(g, target)
    if quotients is None: quotients = _known_quotients(target, limits)
    return Epimorphism(
        source=g,
        target=target,
        images=images,
        section=tuple(Word.gen(i) for i in range(g.rank)),
        kernel=target.relators[len(g.relators):],
        certification=tuple(certify_generator_map(images)),
        quotients=tuple(quotients),
    )


def extend_epi_over_free_product(base: Epimorphism, gamma: Presentation, gamma_images: Sequence[Word]) -> Epimorphism:
    """ Extends base: G -> Q to G * gamma -> Q, sending gamma's generators to gamma_images.

    Each gamma relator image is certified (syntactic, finite-quotient-checked or assumed). The kernel
    gains t * section(image(t))^-1 for every gamma generator t, and stays complete only if the base
    kernel is complete, the base has a section and every gamma relator is certified syntactically.

    :raise: PresentationError on a wrong image count, AlphabetError on a word over the wrong alphabet,
        NotAHomomorphism if a known finite quotient refutes a relator image.
    """
    if len(gamma_images) != gamma.rank:
        raise PresentationError(f"Need {gamma.rank} images, got {len(gamma_images)}.")
    for w in gamma_images:
        if not w.is_over(base.target.rank): raise AlphabetError(repr(w), base.target.rank)

    source = free_product(base.source, gamma)
    images = GeneratorMap(source=source, target=base.target, images=base.images.images + tuple(gamma_images))
    psi = GeneratorMap(source=gamma, target=base.target, images=gamma_images)
    certificates = certify_generator_map(psi, base.quotients)
    for c in certificates:
        if c.status != 'syntactic':
            logger.warning("Relator %s of the free factor maps to %s, %s",
                           gamma.format(c.relator), base.target.format(c.image), c.status)

    r = base.source.rank
    kernel = list(base.kernel)
    if base.section is not None:
        kernel += [free_reduce(Word.gen(r + i) * ~base.lift(w)) for i, w in enumerate(psi.images)]
    complete = (base.kernel_complete and base.section is not None
                and all(c.status == 'syntactic' for c in certificates))

    return Epimorphism(
        source=source,
        target=base.target,
        images=images,
        section=base.section,
        kernel=tuple(w for w in kernel if w),
        kernel_complete=complete,
        certification=base.certification + tuple(
            RelatorCertificate(relator=c.relator.shift(r), image=c.image, status=c.status) for c in certificates
        ),
        assumptions=base.assumptions,
        quotients=base.quotients,
    )


def with_kernel(epi: Epimorphism, kernel: Sequence[Word]) -> Epimorphism:
    """ Replaces the kernel normal generators by a user-supplied complete set (recorded as assumed). """
    for w in kernel:
        if not w.is_over(epi.source.rank): raise AlphabetError(repr(w), epi.source.rank)
    words = tuple(w for w in (free_reduce(w) for w in kernel) if w)
    return epi.copy(update=dict(
        kernel=words,
        kernel_complete=True,
        assumptions=epi.assumptions + ("kernel normal generators supplied by the user",),
    ))


def with_section(epi: Epimorphism, section: Sequence[Word]) -> Epimorphism:
    """ Sets a user-supplied section, checked in every known finite quotient.

    :raise: EpimorphismError if the section is refuted by a known quotient.
    """
    if len(section) != epi.target.rank:
        raise PresentationError(f"Need {epi.target.rank} section words, got {len(section)}.")
    for w in section:
        if not w.is_over(epi.source.rank): raise AlphabetError(repr(w), epi.source.rank)
    section = tuple(free_reduce(w) for w in section)
    for q in epi.quotients:
        for y, w in enumerate(section):
            if q.evaluate(epi.apply(w)) != q.evaluate(Word.gen(y)):
                raise EpimorphismError(f"Section word for {epi.target.generators[y]} is refuted by the quotient {q}.")
    return epi.copy(update=dict(
        section=section,
        assumptions=epi.assumptions + ("section supplied by the user",),
    ))


# ----------------------------------------------------
# Fibre products

class GeneratorPair(FibreModel):
    family: Literal['left', 'right', 'kernel']
    left: Word
    right: Word


class FibreProduct(FibreModel):
    left: Epimorphism
    right: Epimorphism
    pairs: Tuple[GeneratorPair, ...]

    # direct_product(left.source, right.source)
    ambient: Presentation

    # Every generator t of G2 is the right component of a (v_t, t) pair, so P maps onto G2.
    right_projection_onto: bool

    # Pair comparisons made in the known finite quotients of Q.
    consistency_checks: int = 0

    def ambient_word(self, pair: GeneratorPair) -> Word:
        return pair.left * pair.right.shift(self.left.source.rank)

    def ambient_words(self) -> List[Word]:
        return [self.ambient_word(pair) for pair in self.pairs]

    def format_pair(self, pair: GeneratorPair) -> str:
        return f"({self.left.source.format(pair.left)}, {self.right.source.format(pair.right)})"

    def without_kernel_pairs(self) -> 'FibreProduct':
        return self.copy(update=dict(
            pairs=tuple(pair for pair in self.pairs if pair.family != 'kernel'),
        ))

    def assumed(self) -> List[str]:
        result = [f"left: {a}" for a in self.left.assumed()] + [f"right: {a}" for a in self.right.assumed()]
        return result


def _family(family: str, pairs: Sequence[Tuple[Word, Word]]) -> List[GeneratorPair]:
    result, seen = [], set()
    for left, right in pairs:
        left, right = free_reduce(left), free_reduce(right)
        if not left and not right: continue
        if (left, right) in seen: continue
        seen.add((left, right))
        result.append(GeneratorPair(family=family, left=left, right=right))
    return result


def fibre_product_generators(p1: Epimorphism, p2: Epimorphism) -> FibreProduct:
    """ Generating pairs of the fibre product of p1 and p2.

    Pairs are (s, u_s) for generators s of G1, (v_t, t) for generators t of G2 and (r, 1) for the
    kernel normal generators r of p1, with duplicates removed within each family. Every pair is
    checked to agree in every known finite quotient of Q.

    :raise: MismatchedTargets, PartialKernel, MissingSection, PairInconsistency
    """
    if p1.target != p2.target: raise MismatchedTargets()
    if not p1.kernel_complete: raise PartialKernel()
    if p1.section is None: raise MissingSection('left')
    if p2.section is None: raise MissingSection('right')

    g1, g2 = p1.source, p2.source
    pairs = _family('left', [(Word.gen(s), p2.lift(p1.images.images[s])) for s in range(g1.rank)])
    pairs += _family('right', [(p1.lift(p2.images.images[t]), Word.gen(t)) for t in range(g2.rank)])
    pairs += _family('kernel', [(r, Word()) for r in p1.kernel])

    quotients = p1.quotients or p2.quotients
    for q in quotients:
        for pair in pairs:
            if q.evaluate(p1.apply(pair.left)) != q.evaluate(p2.apply(pair.right)):
                raise PairInconsistency(f"({g1.format(pair.left)}, {g2.format(pair.right)})", str(q))

    seconds = {pair.right for pair in pairs if pair.family == 'right'}
    onto = all(Word.gen(t) in seconds for t in range(g2.rank))
    if not onto: logger.warning("Right pairs do not reach every generator of the right source")
    logger.info("Fibre product has %d generating pairs, checked in %d finite quotients", len(pairs), len(quotients))
    return FibreProduct(
        left=p1,
        right=p2,
        pairs=tuple(pairs),
        ambient=direct_product(g1, g2),
        right_projection_onto=onto,
        consistency_checks=len(quotients) * len(pairs),
    )


def abelianized_span(fp: FibreProduct) -> AbelianInvariants:
    """ Invariants of the ambient abelianization modulo the image of the pairs.

    Trivial exactly when the pairs generate the whole abelianized ambient group.
    """
    n = fp.ambient.rank
    rows = [w.exponent_sums(n) for w in fp.ambient_words()] + [r.exponent_sums(n) for r in fp.ambient.relators]
    return invariants_of_rows(rows, n)


# ----------------------------------------------------
# Platonov-Tavgen hypotheses

class H2Certificate(FibreModel):
    present: bool
    citation: str = ''


class PTReport(FibreModel):
    bound: int

    # Bound up to which no proper finite-index subgroup was found, None if one was or the search failed.
    q_hat_trivial_up_to: Optional[int]
    q_hat: CheckStatus
    proper_subgroups: int = 0

    h1_trivial: bool
    h1: AbelianInvariants

    homs: CheckStatus
    hom_counts: Tuple[HomCount, ...] = ()

    h2_certificate: H2Certificate
    overall: Literal['certified-at-truncation', 'refuted', 'incomplete']
    reasons: Tuple[str, ...] = ()


def pt_report(
        k: int,
        h1: AbelianInvariants,
        proper_subgroups: Optional[int],
        hom_counts: Optional[Sequence[HomCount]],
        h2_certificate: Optional[str],
) -> PTReport:
    """ Combines the checks; None stands for a check stopped by a limit. """
    q_hat: CheckStatus = 'incomplete' if proper_subgroups is None else ('fail' if proper_subgroups else 'pass')
    homs: CheckStatus = 'incomplete' if hom_counts is None else (
        'fail' if any(h.total > 1 for h in hom_counts) else 'pass')

    reasons = []
    if q_hat == 'fail': reasons.append(f"{proper_subgroups} proper subgroup classes of index <= {k}")
    if q_hat == 'incomplete': reasons.append("low-index search stopped by a limit")
    if not h1.is_trivial: reasons.append(f"abelianization is {h1}")
    if homs == 'fail':
        reasons += [f"{h.total - 1} nontrivial homs into {h.target}" for h in hom_counts if h.total > 1]
    if homs == 'incomplete': reasons.append("hom count stopped by the budget")
    if not h2_certificate: reasons.append("no H2 certificate")

    if q_hat == 'fail' or homs == 'fail' or not h1.is_trivial:
        overall = 'refuted'
    elif q_hat == 'incomplete' or homs == 'incomplete' or not h2_certificate:
        overall = 'incomplete'
    else:
        overall = 'certified-at-truncation'

    return PTReport(
        bound=k,
        q_hat_trivial_up_to=k if q_hat == 'pass' else None,
        q_hat=q_hat,
        proper_subgroups=proper_subgroups or 0,
        h1_trivial=h1.is_trivial,
        h1=h1,
        homs=homs,
        hom_counts=tuple(hom_counts or ()),
        h2_certificate=H2Certificate(present=bool(h2_certificate), citation=h2_certificate or ''),
        overall=overall,
        reasons=tuple(reasons),
    )


def verify_pt_hypotheses(
        q: Presentation,
        k: int,
        h2_certificate: Optional[str] = None,
        limits: Optional[Limits] = None,
        targets=None,
) -> PTReport:
    """ Truncated check that q has no finite quotients and trivial H1, plus the H2 certificate.

    :param k: Index bound of the low-index search.
    :param h2_certificate: Free text citing why H2(q, Z) = 0, recorded verbatim.
    :param targets: Catalog groups for the hom check, the whole catalog by default.
    :return: Report with overall 'refuted' if a proper finite-index subgroup, a nontrivial hom or
        nontrivial H1 is found; 'certified-at-truncation' only when every check passes and a
        certificate is given; 'incomplete' otherwise. Limits never certify.
    """
    h1 = abelianization(q)
    try:
        proper = sum(1 for c in low_index_subgroups(q, k, limits, with_h1=False) if c.index > 1)
    except LimitExceeded as e:
        logger.warning("Low-index check incomplete: %s", e)
        proper = None
    try:
        hom_counts = [count_homs(q, s, limits) for s in (catalog() if targets is None else targets)]
    except LimitExceeded as e:
        logger.warning("Hom check incomplete: %s", e)
        hom_counts = None
    return pt_report(k, h1, proper, hom_counts, h2_certificate)


# ----------------------------------------------------
# Dense image

class Violation(FibreModel):
    """ Proper finite-index subgroup of the ambient group with a conjugate containing P. """

    index: int
    is_normal: bool
    class_size: int
    fixed_cosets: Tuple[int, ...]
    table: Tuple[Tuple[int, ...], ...]


class DenseImageReport(FibreModel):
    bound: int
    verdict: Verdict
    classes_checked: int = 0
    violations: Tuple[Violation, ...] = ()
    reason: str = ''


def dense_image_report(fp: FibreProduct, k: int, classes) -> DenseImageReport:
    words = fp.ambient_words()
    violations = []
    for c in classes:
        if c.index == 1: continue
        fixed = contains_subgroup_conjugate(c.table, words)
        if fixed:
            violations.append(Violation(index=c.index, is_normal=c.is_normal, class_size=c.class_size,
                                        fixed_cosets=tuple(fixed), table=c.table.key()))
    return DenseImageReport(
        bound=k,
        verdict='FAIL' if violations else 'PASS',
        classes_checked=len(classes),
        violations=tuple(violations),
    )


def check_dense_image(fp: FibreProduct, k: int, limits: Optional[Limits] = None) -> DenseImageReport:
    """ Looks for a proper subgroup of index <= k of the ambient group containing a conjugate of P.

    :return: PASS if there is none, FAIL listing every such subgroup class, INCOMPLETE when a limit stops
        the subgroup search.
    """
    try:
        classes = low_index_subgroups(fp.ambient, k, limits, with_h1=False)
    except LimitExceeded as e:
        logger.warning("Dense-image check incomplete: %s", e)
        return DenseImageReport(bound=k, verdict='INCOMPLETE', reason=str(e))
    return dense_image_report(fp, k, classes)


# ----------------------------------------------------
# Doubles

def assemble_double(gamma: Presentation, free_rank: int = 4) -> Tuple[Presentation, GeneratorMap]:
    """ D = (F_r * gamma) x F_r and the retraction D -> gamma killing both free factors.

    :return: the presentation and the retraction, every relator of which is certified syntactically.
    """
    f = free_group(free_rank)
    d = direct_product(free_product(f, gamma), f)
    images = [Word()] * free_rank + [Word.gen(i) for i in range(gamma.rank)] + [Word()] * free_rank
    retraction = GeneratorMap(source=d, target=gamma, images=images)
    assert all(c.status == 'syntactic' for c in certify_generator_map(retraction)), \
        "Retraction is not certified syntactically."
    return d, retraction


def retraction_with_z(gamma: Presentation, free_rank: int = 4) -> GeneratorMap:
    """ Retraction of (F_r * gamma) x F_r onto gamma x Z.

    Kills the first free factor, fixes gamma and sends the first generator of the second free
    factor to the Z generator, the others to 1.
    """
    d, _ = assemble_double(gamma, free_rank)
    target = direct_product(gamma, free_group(1, ['z']))
    images = ([Word()] * free_rank + [Word.gen(i) for i in range(gamma.rank)]
              + [Word.gen(gamma.rank)] + [Word()] * (free_rank - 1))
    m = GeneratorMap(source=d, target=target, images=images)
    assert all(c.status == 'syntactic' for c in certify_generator_map(m)), \
        "Retraction is not certified syntactically."
    return m


def double_fibre_product(base: Epimorphism, gamma: Presentation, gamma_images: Sequence[Word]) -> FibreProduct:
    """ Fibre product of base extended over gamma with base itself, inside (G * gamma) x G. """
    return fibre_product_generators(extend_epi_over_free_product(base, gamma, gamma_images), base)
