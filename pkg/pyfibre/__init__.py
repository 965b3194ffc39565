from .words import Word, free_reduce, cyclically_reduce
from .presentations import (
    Presentation, GeneratorMap, free_product, direct_product, tietze_add_generator, tietze_remove_generator
)
from .parsing import parse_presentation, parse_file, serialize_presentation
from .intmat import IntMatrix, AbelianInvariants, smith_normal_form, abelianization
from .config import Limits
from .cosets import CosetTable, coset_enumerate, trace, standardize
from .lowindex import SubgroupClass, low_index_subgroups, count_subgroups, contains_subgroup_conjugate
from .schreier import subgroup_presentation, subgroup_abelianization
from .quotients import FiniteGroup, Fingerprint, catalog, count_homs, fingerprint, compare_fingerprints
from .fibre import (
    Epimorphism, FibreProduct, PTReport, make_quotient_epi, extend_epi_over_free_product,
    fibre_product_generators, verify_pt_hypotheses, check_dense_image, assemble_double
)
from .engine import Engine
from . import errors
