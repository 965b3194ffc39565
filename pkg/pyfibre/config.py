from typing import Optional, Tuple

from pydantic import validator
from typing_extensions import Literal

from pyfibre.model import FibreModel
from pyfibre.util import default_jobs

Strategy = Literal['hlt', 'felsch']
OutputFormat = Literal['text', 'json']


class Limits(FibreModel):
    # Live cosets of one coset enumeration.
    max_cosets: int = 10 ** 6

    # Scan and definition steps of one coset enumeration.
    max_steps: int = 10 ** 8

    strategy: Strategy = 'hlt'

    # Search nodes of one low-index run.
    max_nodes: int = 10 ** 7

    # Relator-letter evaluations of one count_homs call.
    budget: int = 10 ** 9

    # Low-index bounds above this are rejected.
    max_index_cap: int = 12

    @validator('max_cosets', 'max_steps', 'max_nodes', 'budget', 'max_index_cap')
    def _positive(cls, v, field):
        if v < 1: raise ValueError(f"{field.name} must be positive")
        return v


class RunConfig(FibreModel):
    command: str

    # Presentation files, or names of bundled groups.
    inputs: Tuple[str, ...] = ()
    group: Optional[str] = None

    # Quotient files with `source` and `target` groups, or names of bundled fibre demos.
    left: str = 'higman'
    right: str = 'higman'
    without_kernel: bool = False

    max_index: int = 3
    limits: Limits = Limits()
    targets: Optional[Tuple[str, ...]] = None
    format: OutputFormat = 'text'
    jobs: int = default_jobs()
    h2_cert: Optional[str] = None
    class_id: Optional[int] = None
    subgroup: Tuple[str, ...] = ()
    target: Optional[str] = None
    verbose: int = 0

    @validator('max_index', 'jobs')
    def _positive(cls, v, field):
        if v < 1: raise ValueError(f"{field.name} must be positive")
        return v

    @validator('class_id')
    def _positive_id(cls, v):
        if v is not None and v < 1: raise ValueError("class id must be positive")
        return v
