"""Exact filter grades of ideals on finitely presented modules over polynomial rings."""

from .errors import (
    EngineError,
    FGradeError,
    IllDefinedMapError,
    MethodDisagreement,
    NotMonomialError,
    PreconditionError,
    RingMismatchError,
)
from .filtergrade import (
    INFINITY,
    FGradeReport,
    FRSCertificate,
    SuppQuery,
    check_frs,
    depth_grade,
    fgrade_ext,
    fgrade_koszul,
    fgrade_prime_min,
    fgrade_quotient_step,
    find_frs_element,
    max_frs,
    module_dim,
    supp_in_V,
)
from .fmodule import FModuleReport, check_bcm, check_dim_equality, check_fmodule, check_quotient_stability
from .groebner import (
    GroebnerBasis,
    Ideal,
    buchberger,
    ideal_intersect,
    ideal_member,
    ideal_quotient,
    krull_dim,
    minimal_primes_monomial,
    normal_form,
    radical_member,
)
from .homological import (
    ChainComplex,
    ExtModule,
    ext_module,
    free_resolution,
    homology_at,
    koszul_complex,
    koszul_homology,
)
from .modules import (
    FPModule,
    FreeModule,
    Matrix,
    ModuleMap,
    annihilator,
    colon_submodule,
    direct_sum,
    is_zero,
    kernel,
    quotient_by_elements,
    syzygies,
)
from .ring import QQ, MonomialOrder, PolyRing, Polynomial, PrimeField, polynomial_ring

__version__ = "0.1.0"
