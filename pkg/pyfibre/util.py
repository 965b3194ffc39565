import os
import re
from typing import Iterable, List, TypeVar

T = TypeVar('T')


def to_camel(s: str) -> str:
    return re.sub(r'_([a-z0-9])', lambda m: m.group(1).upper(), s)


def default_jobs() -> int:
    return os.cpu_count() or 1


def unique(items: Iterable[T]) -> List[T]:
    """ Drops repeated items, keeping the first occurrence. """
    seen = set()
    result = []
    for item in items:
        if item in seen: continue
        seen.add(item)
        result.append(item)
    return result
