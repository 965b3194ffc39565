import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence

from pyfibre.config import Limits
from pyfibre.errors import LimitExceeded
from pyfibre.fibre import DenseImageReport, FibreProduct, PTReport, dense_image_report, pt_report
from pyfibre.intmat import abelianization
from pyfibre.lowindex import SubgroupClass, assemble_classes, check_bound, search_frontier, search_subtree
from pyfibre.presentations import Presentation
from pyfibre.quotients import (
    FiniteGroup, Fingerprint, HomCount, assemble_fingerprint, catalog, count_homs_branch, first_values,
    merge_hom_counts
)
from pyfibre.schreier import subgroup_abelianization

logger = logging.getLogger(__name__)


class Engine:
    """ Runs the searches over a pool of worker processes.

    Work is split into pieces that do not depend on the number of workers and merged by addition
    or canonical sorting, so results (limit verdicts included) are the same for every `jobs`.

        async with Engine(jobs=4) as engine:
            classes = await engine.low_index_subgroups(p, 3)
    """

    jobs: int
    limits: Limits

    def __init__(self, jobs: int = 1, limits: Optional[Limits] = None):
        assert jobs >= 1, "jobs should be positive."
        self.jobs = jobs
        self.limits = limits or Limits()
        self._pool: Optional[ProcessPoolExecutor] = None

    @classmethod
    async def create(cls, **kwargs) -> 'Engine':
        self = cls(**kwargs)
        await self.start()
        return self

    async def start(self):
        assert self._pool is None, "Engine is already started."
        if self.jobs > 1: self._pool = ProcessPoolExecutor(max_workers=self.jobs)

    async def close(self):
        if self._pool is None: return
        self._pool.shutdown(wait=True)
        self._pool = None

    async def __aenter__(self) -> 'Engine':
        await self.start()
        return self

    async def __aexit__(self, *exc):
        await self.close()

    async def _map(self, fn: Callable, *iterables: Sequence) -> List:
        """ fn over zipped arguments, results in argument order. Runs inline without a pool. """
        calls = list(zip(*iterables))
        if self._pool is None: return [fn(*args) for args in calls]
        loop = asyncio.get_running_loop()
        return list(await asyncio.gather(*(loop.run_in_executor(self._pool, fn, *args) for args in calls)))

    # ----------------------------------------------------

    async def low_index_subgroups(self, p: Presentation, max_index: int, with_h1: bool = True) -> List[SubgroupClass]:
        """ As lowindex.low_index_subgroups, with subtrees and abelianizations spread over the pool. """
        limits = self.limits
        check_bound(max_index, limits)
        level, found, nodes = search_frontier(p, max_index, limits.max_nodes)
        n = len(level)
        parts = await self._map(search_subtree, [p] * n, [max_index] * n, level, [limits.max_nodes] * n)
        nodes += sum(used for _, used in parts)
        if nodes > limits.max_nodes: raise LimitExceeded('max_nodes', limits.max_nodes)
        for more, _ in parts: found.extend(more)

        classes = assemble_classes(p, max_index, found, with_h1=False)
        if with_h1:
            h1s = await self._map(subgroup_abelianization, [p] * len(classes), [c.table for c in classes])
            classes = [c.copy(update=dict(h1=h1)) for c, h1 in zip(classes, h1s)]
        logger.info("Found %d classes of index <= %d in %d search nodes", len(classes), max_index, nodes)
        return classes

    async def count_homs(self, p: Presentation, s: FiniteGroup) -> HomCount:
        budget = self.limits.budget
        values = first_values(p, s)
        n = len(values)
        parts = await self._map(count_homs_branch, [p] * n, [s] * n, values, [budget] * n)
        return merge_hom_counts(s, parts, budget)

    async def fingerprint(
            self, p: Presentation, k: int, targets: Optional[Sequence[FiniteGroup]] = None,
    ) -> Fingerprint:
        classes = await self.low_index_subgroups(p, k)
        hom_counts = [await self.count_homs(p, s) for s in (catalog() if targets is None else targets)]
        return assemble_fingerprint(k, classes, hom_counts)

    async def verify_pt_hypotheses(
            self,
            q: Presentation,
            k: int,
            h2_certificate: Optional[str] = None,
            targets: Optional[Sequence[FiniteGroup]] = None,
    ) -> PTReport:
        h1 = abelianization(q)
        try:
            classes = await self.low_index_subgroups(q, k, with_h1=False)
            proper = sum(1 for c in classes if c.index > 1)
        except LimitExceeded as e:
            logger.warning("Low-index check incomplete: %s", e)
            proper = None
        try:
            hom_counts = [await self.count_homs(q, s) for s in (catalog() if targets is None else targets)]
        except LimitExceeded as e:
            logger.warning("Hom check incomplete: %s", e)
            hom_counts = None
        return pt_report(k, h1, proper, hom_counts, h2_certificate)

    async def check_dense_image(self, fp: FibreProduct, k: int) -> DenseImageReport:
        try:
            classes = await self.low_index_subgroups(fp.ambient, k, with_h1=False)
        except LimitExceeded as e:
            logger.warning("Dense-image check incomplete: %s", e)
            return DenseImageReport(bound=k, verdict='INCOMPLETE', reason=str(e))
        return dense_image_report(fp, k, classes)
