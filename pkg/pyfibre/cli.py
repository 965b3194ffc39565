""" Command line front end.

    python -m pyfibre demo
    python -m pyfibre low-index --group F2 --max-index 3
    python -m pyfibre verify-pt --group Higman --max-index 4 --h2-cert "..."

Exit codes: 0 on PASS, 1 on a refutation, 2 on usage and input errors, 3 when a limit stops the run.
"""
import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Any, Awaitable, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from pydantic import ValidationError

from pyfibre.config import Limits, RunConfig
from pyfibre.corpus import load_fibre_demo, load_group, load_groups, read_quotient
from pyfibre.cosets import CosetTable, coset_enumerate, standardize
from pyfibre.engine import Engine
from pyfibre.errors import (
    FibreError, LimitExceeded, NotAHomomorphism, PairInconsistency, UnknownGroup
)
from pyfibre.fibre import (
    FibreProduct, Verdict, abelianized_span, assemble_double, certify_generator_map, fibre_product_generators,
    make_quotient_epi, retraction_with_z
)
from pyfibre.intmat import AbelianInvariants, abelianization
from pyfibre.lowindex import SubgroupClass, count_subgroups
from pyfibre.model import FibreModel
from pyfibre.parsing import parse_file, serialize_presentation
from pyfibre.presentations import GeneratorMap, Presentation
from pyfibre.quotients import Fingerprint, catalog_group, compare_fingerprints, select_targets
from pyfibre.schreier import subgroup_presentation
from pyfibre.words import Word

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
USAGE_ERROR = 2
EXIT_CODES = {'PASS': 0, 'FAIL': 1, 'INCOMPLETE': 3}

HIGMAN_H2_CERTIFICATE = "Higman's group is acyclic (Baumslag, Dyer and Heller, 1980), so H2(Q, Z) = 0"
DEMO_TARGETS = ('Z2', 'Z3', 'S3')


class UsageError(FibreError):
    pass


class Ledger(FibreModel):
    status: str
    assumed: Tuple[str, ...] = ()


class Report(FibreModel):
    schema_version: int = SCHEMA_VERSION
    command: str
    verdict: Verdict
    certification: Ledger
    result: Dict[str, Any]


class ClassSummary(FibreModel):
    id: int
    index: int
    is_normal: bool
    class_size: int
    h1: Optional[AbelianInvariants] = None


class PairSummary(FibreModel):
    family: str
    left: str
    right: str


class Outcome(NamedTuple):
    verdict: str
    result: Dict[str, Any]
    lines: List[str]
    assumed: Tuple[str, ...] = ()


Handler = Callable[[RunConfig, Engine], Awaitable[Outcome]]


# ----------------------------------------------------
# Inputs

def _resolve_group(source: str, group: Optional[str] = None) -> Tuple[str, Presentation]:
    """ A presentation file (one group, or the one named `group`) or the name of a bundled group. """
    path = Path(source)
    if not path.is_file(): return source, load_group(source)
    groups = parse_file(path.read_text(encoding='utf-8'))
    if group is not None:
        if group not in groups: raise UnknownGroup(group)
        return group, groups[group]
    if len(groups) != 1:
        raise UsageError(f"{source} holds {len(groups)} groups, choose one with --group.")
    return next(iter(groups.items()))


def _input_group(config: RunConfig) -> Tuple[str, Presentation]:
    if config.inputs: return _resolve_group(config.inputs[0], config.group)
    if config.group is None: raise UsageError("Give a presentation file or --group NAME.")
    return config.group, load_group(config.group)


def _quotient(source: str) -> Tuple[Presentation, List[Word]]:
    path = Path(source)
    if path.is_file(): return read_quotient(path.read_text(encoding='utf-8'))
    return load_fibre_demo(source)


def _fibre_product(config: RunConfig) -> FibreProduct:
    left = make_quotient_epi(*_quotient(config.left), limits=config.limits)
    right = left if config.right == config.left else make_quotient_epi(*_quotient(config.right), limits=config.limits)
    fp = fibre_product_generators(left, right)
    return fp.without_kernel_pairs() if config.without_kernel else fp


# ----------------------------------------------------
# Text helpers

def _table_lines(p: Presentation, t: CosetTable) -> List[str]:
    header = ['coset'] + [f"{g}{suffix}" for g in p.generators for suffix in ('', '^-1')]
    rows = [header] + [[str(c)] + [str(d) for d in t.rows[c]] for c in range(1, t.index + 1)]
    width = max(len(cell) for row in rows for cell in row)
    return ['  '.join(cell.rjust(width) for cell in row) for row in rows]


def _class_summaries(classes: Sequence[SubgroupClass]) -> List[ClassSummary]:
    return [ClassSummary(id=i, index=c.index, is_normal=c.is_normal, class_size=c.class_size, h1=c.h1)
            for i, c in enumerate(classes, 1)]


def _class_lines(summaries: Sequence[ClassSummary]) -> List[str]:
    return [
        f"#{s.id}  index {s.index}  {'normal' if s.is_normal else 'non-normal'}  "
        f"class size {s.class_size}" + (f"  H1 = {s.h1}" if s.h1 is not None else '')
        for s in summaries
    ]


def _fingerprint_lines(f: Fingerprint) -> List[str]:
    lines = []
    for profile in f.per_index:
        details = ', '.join(f"{'N' if d.is_normal else '-'} {d.h1}" for d in profile.classes_detail)
        lines.append(f"index {profile.index}: classes {profile.classes}, total {profile.total}, "
                     f"normal {profile.normal}" + (f" [{details}]" if details else ''))
    lines += [f"homs into {h.target}: total {h.total}, onto {h.surjective}" for h in f.hom_counts]
    return lines


def _pair_summaries(fp: FibreProduct) -> List[PairSummary]:
    return [PairSummary(family=pair.family, left=fp.left.source.format(pair.left),
                        right=fp.right.source.format(pair.right)) for pair in fp.pairs]


# ----------------------------------------------------
# Commands

async def _abelianize(config: RunConfig, engine: Engine) -> Outcome:
    name, p = _input_group(config)
    h1 = abelianization(p)
    return Outcome('PASS', {'group': name, 'abelianization': h1}, [f"H1({name}) = {h1}"])


async def _enumerate(config: RunConfig, engine: Engine) -> Outcome:
    name, p = _input_group(config)
    t = coset_enumerate(p, [p.word(w) for w in config.subgroup], config.limits)
    if not t.is_complete:
        return Outcome('INCOMPLETE', {'group': name, 'status': t.status, 'reason': t.reason},
                       [f"enumeration incomplete: {t.reason}"])
    t = standardize(t)
    return Outcome('PASS', {'group': name, 'index': t.index, 'table': [list(r) for r in t.key()]},
                   [f"index {t.index}"] + _table_lines(p, t))


async def _low_index(config: RunConfig, engine: Engine) -> Outcome:
    name, p = _input_group(config)
    k = config.max_index
    classes = await engine.low_index_subgroups(p, k)
    summaries = _class_summaries(classes)
    counts = [count_subgroups(classes, n) for n in range(1, k + 1)]
    lines = _class_lines(summaries) + ['index  classes  total  normal'] + [
        f"{c.index:5}  {c.classes:7}  {c.total:5}  {c.normal:6}" for c in counts
    ]
    return Outcome('PASS', {'group': name, 'bound': k, 'classes': summaries, 'counts': counts}, lines)


async def _subgroup_presentation(config: RunConfig, engine: Engine) -> Outcome:
    if config.class_id is None: raise UsageError("Choose a subgroup class with --class ID.")
    name, p = _input_group(config)
    classes = await engine.low_index_subgroups(p, config.max_index, with_h1=False)
    if config.class_id > len(classes):
        raise UsageError(f"There are {len(classes)} classes of index <= {config.max_index}.")
    c = classes[config.class_id - 1]
    sp = subgroup_presentation(p, c.table)
    text = serialize_presentation(sp, f"{name}_{config.class_id}")
    return Outcome('PASS', {
        'group': name,
        'class': config.class_id,
        'index': c.index,
        'presentation': text,
        'abelianization': abelianization(sp),
    }, [text])


async def _homs(config: RunConfig, engine: Engine) -> Outcome:
    if config.target is None: raise UsageError("Choose a catalog group with --target NAME.")
    name, p = _input_group(config)
    count = await engine.count_homs(p, catalog_group(config.target))
    return Outcome('PASS', {'group': name, 'homs': count},
                   [f"homs {name} -> {count.target}: total {count.total}, onto {count.surjective}"])


async def _fingerprint(config: RunConfig, engine: Engine) -> Outcome:
    name, p = _input_group(config)
    f = await engine.fingerprint(p, config.max_index, select_targets(config.targets))
    return Outcome('PASS', {'group': name, 'fingerprint': f}, _fingerprint_lines(f))


async def _compare(config: RunConfig, engine: Engine) -> Outcome:
    if len(config.inputs) != 2: raise UsageError("compare needs two groups.")
    (a_name, a), (b_name, b) = (_resolve_group(source) for source in config.inputs)
    targets = select_targets(config.targets)
    fa = await engine.fingerprint(a, config.max_index, targets)
    fb = await engine.fingerprint(b, config.max_index, targets)
    comparison = compare_fingerprints(fa, fb)
    return Outcome('PASS' if comparison.equal else 'FAIL', {
        'groups': [a_name, b_name],
        'comparison': comparison,
    }, [f"{a_name} vs {b_name}: {comparison.message}"])


async def _fibre(config: RunConfig, engine: Engine) -> Outcome:
    fp = _fibre_product(config)
    span = abelianized_span(fp)
    pairs = _pair_summaries(fp)
    known = len(fp.left.quotients or fp.right.quotients)
    lines = [f"{p.family:6}  ({p.left}, {p.right})" for p in pairs] + [
        f"{len(pairs)} generating pairs in a product of {fp.ambient.rank} generators, "
        f"{len(fp.ambient.relators)} relators",
        f"abelianized cokernel of the pairs: {span}",
        f"projection onto the right factor: {'onto' if fp.right_projection_onto else 'not shown onto'}",
        f"pair consistency: {fp.consistency_checks} comparisons in {known} known quotients",
    ]
    return Outcome('PASS', {
        'pairs': pairs,
        'ambientGenerators': fp.ambient.rank,
        'ambientRelators': len(fp.ambient.relators),
        'knownQuotients': known,
        'consistencyChecks': fp.consistency_checks,
        'rightProjectionOnto': fp.right_projection_onto,
        'span': span,
    }, lines, tuple(fp.assumed()))


def _images(m: GeneratorMap) -> Dict[str, str]:
    return {g: m.target.format(w) for g, w in zip(m.source.generators, m.images)}


async def _double(config: RunConfig, engine: Engine) -> Outcome:
    name, gamma = _input_group(config)
    d, retraction = assemble_double(gamma)
    onto_z = retraction_with_z(gamma)
    certified = sum(1 for m in (retraction, onto_z) for c in certify_generator_map(m) if c.status == 'syntactic')
    lines = [
        serialize_presentation(d, f"D_{name}"),
        f"(F4 * {name}) x F4: {d.rank} generators, {len(d.relators)} relators",
        f"retraction onto {name}: " + ', '.join(f"{g} -> {w}" for g, w in _images(retraction).items()),
        f"retraction onto {name} x Z: " + ', '.join(f"{g} -> {w}" for g, w in _images(onto_z).items()),
        f"{certified} relator images certified syntactically",
    ]
    return Outcome('PASS', {
        'group': name,
        'double': serialize_presentation(d),
        'generators': d.rank,
        'relators': len(d.relators),
        'retraction': _images(retraction),
        'retractionWithZ': _images(onto_z),
        'certifiedRelators': certified,
    }, lines)


def _pt_verdict(overall: str) -> str:
    return {'certified-at-truncation': 'PASS', 'refuted': 'FAIL'}.get(overall, 'INCOMPLETE')


async def _verify_pt(config: RunConfig, engine: Engine) -> Outcome:
    name, q = _input_group(config)
    targets = select_targets(config.targets) if config.targets else None
    report = await engine.verify_pt_hypotheses(q, config.max_index, config.h2_cert, targets)
    assumed = (f"H2({name}, Z) = 0: {config.h2_cert}",) if config.h2_cert else ()
    lines = [
        f"finite-index subgroups up to index {report.bound}: {report.q_hat}",
        f"H1 = {report.h1}",
        f"homs into {len(report.hom_counts)} catalog groups: {report.homs}",
        f"H2 certificate: {report.h2_certificate.citation or 'none'}",
        f"{name}: {report.overall}",
    ] + [f"  {reason}" for reason in report.reasons]
    return Outcome(_pt_verdict(report.overall), {'group': name, 'report': report}, lines, assumed)


async def _dense_image(config: RunConfig, engine: Engine) -> Outcome:
    fp = _fibre_product(config)
    report = await engine.check_dense_image(fp, config.max_index)
    lines = [f"{report.classes_checked} subgroup classes of index <= {report.bound} checked"] + [
        f"contained in a conjugate of an index {v.index} subgroup "
        f"({'normal' if v.is_normal else 'non-normal'}, fixed cosets {list(v.fixed_cosets)})"
        for v in report.violations
    ] + ([report.reason] if report.reason else [])
    return Outcome(report.verdict, {'pairs': len(fp.pairs), 'denseImage': report}, lines, tuple(fp.assumed()))


async def _demo(config: RunConfig, engine: Engine) -> Outcome:
    higman = load_groups()['Higman']
    pt = await engine.verify_pt_hypotheses(higman, 4, HIGMAN_H2_CERTIFICATE)
    epi = make_quotient_epi(*load_fibre_demo('higman'), limits=config.limits)
    fp = fibre_product_generators(epi, epi)
    dense = await engine.check_dense_image(fp, 3)
    span = abelianized_span(fp)
    fingerprint = await engine.fingerprint(fp.ambient, 2, select_targets(DEMO_TARGETS))

    steps = {
        'verifyPt': _pt_verdict(pt.overall),
        'denseImage': dense.verdict,
        'span': 'PASS' if span.is_trivial else 'FAIL',
    }
    verdict = next((v for v in ('FAIL', 'INCOMPLETE') if v in steps.values()), 'PASS')
    lines = [
        f"Higman group, index <= 4: {pt.overall}",
        f"fibre product of F4 -> Higman with itself: {len(fp.pairs)} generating pairs",
        f"dense image in F4 x F4, index <= 3: {dense.verdict} ({dense.classes_checked} classes)",
        f"abelianized cokernel of the pairs: {span}",
        "fingerprint of F4 x F4:",
    ] + [f"  {line}" for line in _fingerprint_lines(fingerprint)]
    return Outcome(verdict, {
        'steps': steps,
        'ptHypotheses': pt,
        'pairs': _pair_summaries(fp),
        'denseImage': dense,
        'span': span,
        'ambientFingerprint': fingerprint,
    }, lines, (f"H2(Higman, Z) = 0: {HIGMAN_H2_CERTIFICATE}",) + tuple(fp.assumed()))


COMMANDS: Dict[str, Handler] = {
    'demo': _demo,
    'abelianize': _abelianize,
    'enumerate': _enumerate,
    'low-index': _low_index,
    'subgroup-presentation': _subgroup_presentation,
    'homs': _homs,
    'fingerprint': _fingerprint,
    'compare': _compare,
    'fibre-product': _fibre,
    'verify-pt': _verify_pt,
    'dense-image': _dense_image,
    'double': _double,
}


# ----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('inputs', nargs='*', help="presentation files or bundled group names")
    common.add_argument('--group', help="group to take from the input file, or bundled group name")
    common.add_argument('--max-index', type=int, help="subgroup index bound (default 3)")
    common.add_argument('--max-cosets', type=int)
    common.add_argument('--max-steps', type=int)
    common.add_argument('--max-nodes', type=int)
    common.add_argument('--strategy', choices=['hlt', 'felsch'])
    common.add_argument('--budget', type=int, help="relator evaluations per hom count")
    common.add_argument('--targets', help="comma separated catalog groups")
    common.add_argument('--target', help="catalog group")
    common.add_argument('--format', choices=['text', 'json'], default='text')
    common.add_argument('--jobs', type=int, help="worker processes (default: number of processors)")
    common.add_argument('--h2-cert', help="citation certifying H2(Q, Z) = 0")
    common.add_argument('--class', dest='class_id', type=int, help="subgroup class id from low-index")
    common.add_argument('--subgroup', action='append', default=[], help="subgroup generator word")
    common.add_argument('--left', help="quotient file or bundled fibre demo (default higman)")
    common.add_argument('--right', help="quotient file or bundled fibre demo (default higman)")
    common.add_argument('--without-kernel', action='store_true', help="drop the kernel pairs")
    common.add_argument('-v', '--verbose', action='count', default=0)

    parser = argparse.ArgumentParser(prog='pyfibre', description="Fibre products of finitely presented groups.")
    commands = parser.add_subparsers(dest='command', required=True)
    for name in COMMANDS: commands.add_parser(name, parents=[common])
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    limits = {name: getattr(args, name) for name in ('max_cosets', 'max_steps', 'max_nodes', 'strategy', 'budget')}
    options = {name: getattr(args, name) for name in ('max_index', 'jobs', 'left', 'right')}
    return RunConfig(
        command=args.command,
        inputs=tuple(args.inputs),
        group=args.group,
        limits=Limits(**{k: v for k, v in limits.items() if v is not None}),
        targets=tuple(t.strip() for t in args.targets.split(',') if t.strip()) if args.targets else None,
        format=args.format,
        h2_cert=args.h2_cert,
        class_id=args.class_id,
        subgroup=tuple(args.subgroup),
        target=args.target,
        without_kernel=args.without_kernel,
        verbose=args.verbose,
        **{k: v for k, v in options.items() if v is not None},
    )


def _ledger(verdict: str, assumed: Sequence[str]) -> Ledger:
    if verdict != 'PASS':
        status = 'not-certified'
    elif assumed:
        status = 'certified-at-truncation-with-assumptions'
    else:
        status = 'certified-at-truncation'
    return Ledger(status=status, assumed=tuple(assumed))


async def execute(config: RunConfig) -> Tuple[Report, List[str]]:
    """ Runs one command, returns the report and its text rendering. """
    async with Engine(jobs=config.jobs, limits=config.limits) as engine:
        try:
            outcome = await COMMANDS[config.command](config, engine)
        except LimitExceeded as e:
            logger.warning("%s", e)
            outcome = Outcome('INCOMPLETE', {'reason': str(e)}, [str(e)])
        except (NotAHomomorphism, PairInconsistency) as e:
            outcome = Outcome('FAIL', {'reason': str(e)}, [str(e)])
    ledger = _ledger(outcome.verdict, outcome.assumed)
    report = Report(command=config.command, verdict=outcome.verdict, certification=ledger, result=outcome.result)
    lines = outcome.lines + [f"verdict: {outcome.verdict} ({ledger.status})"]
    lines += [f"assumed: {a}" for a in ledger.assumed]
    return report, lines


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_ERROR

    logging.basicConfig(
        level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )

    try:
        config = make_config(args)
        report, lines = asyncio.run(execute(config))
    except (ValidationError, FibreError, OSError) as e:
        print(f"pyfibre: error: {e}", file=sys.stderr)
        return USAGE_ERROR

    if config.format == 'json':
        print(report.to_json(indent=2))
    else:
        print('\n'.join(lines))
    return EXIT_CODES[report.verdict]


def main():
    sys.exit(run())
