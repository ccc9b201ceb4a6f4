"""Exact homology of sequences and N-complexes of finitely generated abelian groups.

Groups are cokernels of integer matrices, complexes live on finite windows
with zero padding, and everything is computed exactly through Hermite and
Smith normal forms.
"""

from .complexes import (
    NComplex,
    NonCommutingSquareError,
    NotAnNComplexError,
    SeqMorphism,
    Sequence,
    direct_sum_sequence,
    embed,
    is_ncomplex,
    kernel_truncate,
    make_seq_morphism,
    make_sequence,
    power_differential,
    power_morphism,
    quotient_sequence,
    r_n_expand,
    r_n_expand_morphism,
    rebase,
    s_functor,
    s_functor_morphism,
    shift_morphism,
    sub_sequence,
    translate,
    translate_morphism,
    truncate_morphism,
    validate_ncomplex,
    zero_sequence,
)
from .groups import (
    GroupMorphism,
    IllDefinedMorphismError,
    NotInducedError,
    PresentedGroup,
    Subgroup,
    Subquotient,
    canonical_invariants,
    check_morphism,
    contains,
    direct_sum,
    image,
    induced_map,
    kernel,
    subgroup_intersection,
    subgroup_sum,
    subquotient,
)
from .homology import (
    HomologyQuery,
    HomologyValue,
    TotalHomology,
    TotalHomologyError,
    bisequence_square_commutes,
    d_star,
    factorization_check,
    homology,
    homology_induced,
    homology_sequence,
    i_star,
    inclusion_lattice,
    is_quasi_iso,
    quasi_iso_report,
    reformulation_check,
    total_homology,
)
from .intmat import IntMatrix, hermite_basis, integer_kernel, smith_normal_form, solve_in_span
from .resolutions import (
    ResolutionReport,
    augmentation,
    check_resolution,
    classical_resolution,
    hh_projective_resolution,
    is_projective,
    verify_lower_bound,
)

__version__ = "0.1.0"
