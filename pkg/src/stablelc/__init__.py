"""Stable local cohomology of graded maximal Cohen-Macaulay modules over hypersurfaces.

Modules are given by matrix factorizations; stable local cohomology at the
maximal ideal is computed degree by degree inside the Macaulay inverse
system, and compared against classical top local cohomology.
"""

from .fields import Field, GF, QQ, parse_field
from .polynomial import PolyRing, Polynomial
from .parser import ParseError, parse_poly
from .matrix import PolyMatrix
from .mf import (
    HilbertTable,
    InvalidFactorization,
    MatrixFactorization,
    cokernel_hilbert,
    desuspend,
    direct_sum,
    free_mf,
    is_minimal,
    make_mf,
    reduce_mf,
    suspend,
    tensor_mf,
    trivial_mf,
    validate_mf,
)
from .mfio import FormatError, dump_mf, load_mf, parse_mf
from .stable import (
    GradedModuleView,
    NonMinimalInput,
    coincide_check,
    gamma_stab_max,
    periodic_complex_check,
    slc_via_syzygy,
    stable_equiv,
    stable_shift,
    top_local_cohomology,
)
from .verification import SUITES, InstanceSpec, generate_instance, radical_normalizer, run_suite

__version__ = "0.1.0"
