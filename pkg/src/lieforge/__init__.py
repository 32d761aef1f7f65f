"""Exact structure-constant toolkit for finite-dimensional Lie algebras."""

from .linalg import (
    QQ,
    LinalgError,
    ModularRank,
    NullspaceBasis,
    PrimeExhaustion,
    SolveResult,
    SparseRationalMatrix,
    parse_rat,
    rat,
    rat_str,
)
from .core import (
    ActionNotDerivation,
    BasisLabel,
    JacobiReport,
    LabelError,
    LieAlgebra,
    LieError,
    Subspace,
    center,
    derived_series,
    direct_sum,
    from_json_bytes,
    from_json_dict,
    is_centerless,
    is_nilpotent,
    is_perfect,
    jacobiator,
    lower_central_series,
    permute_basis,
    quasi_cyclic_check,
    relabel_copies,
    semidirect_product,
    to_json_bytes,
    to_json_dict,
    verify_jacobi,
    weight_vectors,
)
from .sl2 import (
    ModuleAction,
    NonDiagonalizable,
    clebsch_gordan,
    decompose_module,
    direct_sum_actions,
    equivariant_hom_dimension,
    heisenberg_pairing,
    ladder_action,
    slm_algebra,
    slm_module_action,
    sym_monomials,
    tensor_action,
    transvectant,
    wedge_action,
    wedge_multiplicities,
    weights_to_multiplicities,
)
from .families import (
    BracketComponentSpec,
    ConditionReport,
    EvenN,
    GNParams,
    InvalidParameters,
    JacobiFailure,
    PRESET_NAMES,
    TowerSpec,
    build_direct_sum_family,
    build_gn,
    build_model_nilradical,
    build_sl2_gn,
    build_sl2_heisenberg,
    build_slm_quasicyclic,
    build_three_gen_nilradical,
    build_tower,
    build_transvectant_algebra,
    check_angelopoulos_conditions,
    preset,
    solve_bracket_coefficients,
)
from .cohomology import (
    Cochain,
    CohomologyReport,
    DerivationReport,
    NotACocycle,
    SizeExceeded,
    build_psi_cocycle,
    ce_differential,
    cohomology_full,
    cohomology_invariant,
    commutant_derivations,
    completeness_check,
    deform_bracket,
    derivation_algebra,
    invariant_cochain_basis,
    maurer_cartan_check,
)

__all__ = [
    "QQ",
    "LinalgError",
    "ModularRank",
    "NullspaceBasis",
    "PrimeExhaustion",
    "SolveResult",
    "SparseRationalMatrix",
    "parse_rat",
    "rat",
    "rat_str",
    "ActionNotDerivation",
    "BasisLabel",
    "JacobiReport",
    "LabelError",
    "LieAlgebra",
    "LieError",
    "Subspace",
    "center",
    "derived_series",
    "direct_sum",
    "from_json_bytes",
    "from_json_dict",
    "is_centerless",
    "is_nilpotent",
    "is_perfect",
    "jacobiator",
    "lower_central_series",
    "permute_basis",
    "quasi_cyclic_check",
    "relabel_copies",
    "semidirect_product",
    "to_json_bytes",
    "to_json_dict",
    "verify_jacobi",
    "weight_vectors",
    "ModuleAction",
    "NonDiagonalizable",
    "clebsch_gordan",
    "decompose_module",
    "direct_sum_actions",
    "equivariant_hom_dimension",
    "heisenberg_pairing",
    "ladder_action",
    "slm_algebra",
    "slm_module_action",
    "sym_monomials",
    "tensor_action",
    "transvectant",
    "wedge_action",
    "wedge_multiplicities",
    "weights_to_multiplicities",
    "BracketComponentSpec",
    "ConditionReport",
    "EvenN",
    "GNParams",
    "InvalidParameters",
    "JacobiFailure",
    "PRESET_NAMES",
    "TowerSpec",
    "build_direct_sum_family",
    "build_gn",
    "build_model_nilradical",
    "build_sl2_gn",
    "build_sl2_heisenberg",
    "build_slm_quasicyclic",
    "build_three_gen_nilradical",
    "build_tower",
    "build_transvectant_algebra",
    "check_angelopoulos_conditions",
    "preset",
    "solve_bracket_coefficients",
    "Cochain",
    "CohomologyReport",
    "DerivationReport",
    "NotACocycle",
    "SizeExceeded",
    "build_psi_cocycle",
    "ce_differential",
    "cohomology_full",
    "cohomology_invariant",
    "commutant_derivations",
    "completeness_check",
    "deform_bracket",
    "derivation_algebra",
    "invariant_cochain_basis",
    "maurer_cartan_check",
]
