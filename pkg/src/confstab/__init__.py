"""confstab: exact verification of homological stability for
configuration spaces of Euclidean and affine spaces.

Pieces: exact sparse integer/prime-field linear algebra (Smith normal
form, chain complexes, homology with deterministic bases); the presented
cohomology ring of ordered configuration spaces with its symmetric-group
and injection functoriality; twisted symmetric-group homology via the
bar resolution and the induced stabilization maps; weight polynomial
purity; FI generation degrees; and a CLI that runs the campaigns and
emits machine-readable reports.
"""

from .arnold import (ArnoldElement, SigmaModule, admissible_basis, basis_count,
                     fi_map, homology_module, multiply, normal_form,
                     poincare_coefficients, sigma_action, standard_inclusion_map)
from .bar import (BarComplexSpec, EquivarianceError, bar_complex,
                  coinvariants_summary, group_homology, group_homology_of_module,
                  stability_map)
from .budget import BudgetExceededError, SizeBudget
from .chain import (BasesNotComputedError, ChainComplex, ChainMap,
                    HomologySummary, homology, induced_map)
from .config import RunConfig
from .fipoly import (FiFamily, GenerationDegreeReport, generation_degree,
                     h0_cokernel, monomial_count_bound)
from .rings import GF, QQ, Ring, ZZ, ring_by_name
from .snf import smith_normal_form
from .sparse import SparseMatrix
from .stability import (StabilityCell, StabilityReport, check_classical,
                        check_twisted, check_weight_piece)
from .symgroup import PermGroup
from .weights import (PurityParams, WeightPolynomial, alpha_purity_check,
                      pconf_purity_params, pconf_weight_poly,
                      projective_space_poly, punctured_affine_poly,
                      tate_summand, twist_shift, weight_pieces)

__version__ = "0.1.0"

__all__ = [
    "ArnoldElement", "BarComplexSpec", "BasesNotComputedError",
    "BudgetExceededError", "ChainComplex", "ChainMap", "EquivarianceError",
    "FiFamily", "GF", "GenerationDegreeReport", "HomologySummary",
    "PermGroup", "PurityParams", "QQ", "Ring", "RunConfig", "SigmaModule",
    "SizeBudget", "SparseMatrix", "StabilityCell", "StabilityReport",
    "WeightPolynomial", "ZZ", "admissible_basis", "alpha_purity_check",
    "bar_complex", "basis_count", "check_classical", "check_twisted",
    "check_weight_piece", "coinvariants_summary", "fi_map",
    "generation_degree", "group_homology", "group_homology_of_module",
    "h0_cokernel", "homology", "homology_module", "induced_map",
    "monomial_count_bound", "multiply", "normal_form",
    "pconf_purity_params", "pconf_weight_poly", "poincare_coefficients",
    "projective_space_poly", "punctured_affine_poly", "ring_by_name",
    "sigma_action", "smith_normal_form", "stability_map",
    "standard_inclusion_map", "tate_summand", "twist_shift",
    "weight_pieces",
]
