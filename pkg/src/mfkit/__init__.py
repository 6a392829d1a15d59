"""mfkit: graded matrix factorizations of hypersurface polynomials,
Bott-formula sheaf cohomology, and the translation between Betti tables
and Beilinson-type cohomology tables, with instance checkers for the
2^e rank bound and the 2^(e+1) cohomology bound."""

from .algebra import (
    GF,
    QI,
    QQ,
    Field,
    FpElement,
    GaussianRational,
    NEG_INFINITY,
    ParseError,
    Polynomial,
    degree_info,
    parse_poly,
)
from .graded import DegreeMultiset, HomogeneousMatrix, compose
from .mf import (
    BettiTable,
    MatrixFactorization,
    betti,
    direct_sum,
    dual,
    fermat,
    is_reduced,
    is_valid,
    presentation_equivalent,
    rank_one,
    reduce,
    require_valid,
    shift,
    tensor,
    trivial_f_one,
    trivial_one_f,
    twist,
    validate,
    zero_mf,
)
# The function bott() itself stays namespaced (mfkit.bott.bott) so the
# submodule attribute is not shadowed.
from .bott import (
    CohomologyVector,
    binom,
    bott_vector,
    restricted_bott,
    rho_line_bundle,
    rho_point,
    rho_structure_sheaf,
)
from .orlov import (
    CohomologyTable,
    HypersurfaceContext,
    Phi0Descriptor,
    Verdict,
    betti_to_table,
    check_bgs,
    check_rho,
    dual_table,
    euclid_split,
    phi0_residue,
    rho_of_mf,
    rho_of_table,
    shamash_degrees,
    table_to_betti,
)

__version__ = "0.1.0"
