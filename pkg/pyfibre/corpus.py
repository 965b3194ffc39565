""" Presentations bundled with the package (pyfibre/data). """
from pathlib import Path
from typing import Dict, List, Tuple

from pyfibre.errors import PresentationError, UnknownGroup
from pyfibre.parsing import parse_file
from pyfibre.presentations import Presentation
from pyfibre.words import Word, cyclic_normal_form

DATA = Path(__file__).parent / 'data'
FIBRE_DATA = DATA / 'fibre'


def load_groups() -> Dict[str, Presentation]:
    """ Every bundled group by name: F1..F5, S3, A5, Q8, Z2, Higman. """
    groups: Dict[str, Presentation] = {}
    for path in sorted(DATA.glob('*.fp')):
        groups.update(parse_file(path.read_text(encoding='utf-8')))
    return groups


def load_group(name: str) -> Presentation:
    groups = load_groups()
    if name not in groups: raise UnknownGroup(name)
    return groups[name]


def fibre_demos() -> List[str]:
    return sorted(path.stem for path in FIBRE_DATA.glob('*.fp'))


def read_quotient(text: str) -> Tuple[Presentation, List[Word]]:
    """ Reads `source` and `target` groups on the same generators.

    :return: the source and the target relators missing from the source.
    :raise: PresentationError if a group is missing or the generators differ.
    """
    groups = parse_file(text)
    for name in ('source', 'target'):
        if name not in groups: raise PresentationError(f"Quotient file needs a group named {name!r}.")
    source, target = groups['source'], groups['target']
    if source.generators != target.generators:
        raise PresentationError("Source and target should have the same generators.")
    known = {cyclic_normal_form(r) for r in source.relators}
    return source, [r for r in target.relators if cyclic_normal_form(r) not in known]


def load_fibre_demo(name: str) -> Tuple[Presentation, List[Word]]:
    """ Bundled quotient by name: diagonal, higman, parity or trivial. """
    path = FIBRE_DATA / f"{name}.fp"
    if not path.is_file(): raise UnknownGroup(name)
    return read_quotient(path.read_text(encoding='utf-8'))
