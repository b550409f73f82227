"""Desk-scale numerical laboratory for p-norm isometrisability of groups.

Subpackages by theme: exponent and region geometry (exponents), operator
p-norms (pnorm), free-group combinatorics (freegroup), eigenvalue
experiments (spectra), window-averaged norms (isometrize), Littlewood
T_1 norms by LP (littlewood), and the batch CLI (cli).
"""

from .errors import InvalidCertificateError, NumericError
from .exponents import (
    LensRegion,
    PExponent,
    PytlikEllipse,
    as_exponent,
    conjugate,
    ellipse_contains,
    lens_contains,
    pytlik_witness,
    theta,
)
from .freegroup import (
    CayleyBall,
    GeneratorFamily,
    ball,
    ball_word_count,
    costacking_map,
    mu1_of_representation,
    mu1_truncated,
    mu1_truncated_sparse,
    phi_alpha,
    random_lp_isometry,
    reduce_word,
    stacking_map,
    word_inverse,
    word_mul,
)
from .groups import cyclic_group, natural_permutation_matrices, \
    regular_permutation_matrices, symmetric_group
from .isometrize import (
    AmenableRep,
    AveragedNorm,
    SupNorm,
    finite_group_rep,
    folner_norm,
    integers_rep,
    isometry_defect,
    sup_norm,
    uniform_bound,
)
from .littlewood import (
    BallIndexSet,
    FiniteGroupIndexSet,
    LittlewoodInstance,
    T1Result,
    ball_index_set,
    build_instance,
    group_index_set,
    lq_t1_ratio,
    t1_norm,
    verify_decomposition,
)
from .pnorm import (
    NormEstimate,
    a_alpha,
    as_complex_matrix,
    lemma_estimate_check,
    opnorm_2,
    opnorm_boyd,
    opnorm_endpoint,
    opnorm_interp_upper,
    pspace_inequality_check,
    vector_pnorm,
)
from .spectra import (
    LensReport,
    Spectrum,
    eigenvalues,
    kesten_radius,
    lens_experiment,
    spectral_radius_sparse,
)

__version__ = "0.1.0"
