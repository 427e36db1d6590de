"""Exact-arithmetic cyclic homology for Hopf algebras and Hopf-Galois extensions.

The package computes Hochschild and cyclic homology of finite-dimensional
instances -- group algebras, their crossed ("anti-Yetter-Drinfeld") coefficient
modules, Hopf-Galois extensions such as strongly group-graded algebras, and
finitely generated quantum tori -- entirely over exact fields, and machine-
verifies the structural isomorphisms relating those homologies.
"""

from .crossed import (
    CrossedModule,
    adjoint,
    coadjoint,
    coinvariants_filtration,
    e1_page_report,
    induce,
    modular_pair_module,
    one_dimensional,
    restrict,
    trivial_module,
    verify_crossed,
    verify_modular,
)
from .cyclic import (
    CharacteristicError,
    CyclicObject,
    build_aux_cyclic,
    build_cyclic,
    burghelea_finite,
    cocommutative_folding_check,
    group_homology,
    hc,
    hc_bicomplex,
    hc_connes,
    hochschild,
    sbi_check,
    semisimple_reduction,
    shapiro_check,
    tor_oracle,
    verify_cyclic_identities,
)
from .galois import (
    AlgebraData,
    ComoduleAlgebra,
    burghelea_graded,
    comodule_from_hopf,
    crossed_product,
    galois_check,
    lambda_iso,
    relative_cyclic,
    separable_base_change,
    strongly_graded,
    trace_map,
    twisted_group_algebra,
    um_actions,
)
from .hopf import (
    FiniteGroup,
    HopfAlgebra,
    group_algebra,
    group_subalgebra,
    hopf_from_json,
    hopf_to_json,
    verify_hopf,
)
from .linalg import (
    QQ,
    Bicomplex,
    ChainComplex,
    PrimeField,
    QuotientSpace,
    SparseMatrix,
    Subspace,
    TruncationError,
    homology_dims,
    quasi_iso_check,
    rank,
    rank_kernel,
    smith_normal_form,
    total_complex,
)
from .qtorus import TorusCocycle, box_check, degree_lattice, torus_homology
from .reporting import CheckReport, CheckResult

__all__ = [
    "AlgebraData",
    "Bicomplex",
    "ChainComplex",
    "CharacteristicError",
    "CheckReport",
    "CheckResult",
    "ComoduleAlgebra",
    "CrossedModule",
    "CyclicObject",
    "FiniteGroup",
    "HopfAlgebra",
    "PrimeField",
    "QQ",
    "QuotientSpace",
    "SparseMatrix",
    "Subspace",
    "TorusCocycle",
    "TruncationError",
    "adjoint",
    "box_check",
    "build_aux_cyclic",
    "build_cyclic",
    "burghelea_finite",
    "burghelea_graded",
    "coadjoint",
    "cocommutative_folding_check",
    "coinvariants_filtration",
    "comodule_from_hopf",
    "crossed_product",
    "degree_lattice",
    "e1_page_report",
    "galois_check",
    "group_algebra",
    "group_homology",
    "group_subalgebra",
    "hc",
    "hc_bicomplex",
    "hc_connes",
    "hochschild",
    "homology_dims",
    "hopf_from_json",
    "hopf_to_json",
    "induce",
    "lambda_iso",
    "modular_pair_module",
    "one_dimensional",
    "quasi_iso_check",
    "rank",
    "rank_kernel",
    "relative_cyclic",
    "restrict",
    "sbi_check",
    "semisimple_reduction",
    "separable_base_change",
    "shapiro_check",
    "smith_normal_form",
    "strongly_graded",
    "torus_homology",
    "tor_oracle",
    "total_complex",
    "trace_map",
    "trivial_module",
    "twisted_group_algebra",
    "um_actions",
    "verify_crossed",
    "verify_cyclic_identities",
    "verify_hopf",
    "verify_modular",
]

__version__ = "0.1.0"
