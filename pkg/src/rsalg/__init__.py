"""Restricted Fourier and Fourier-Stieltjes algebras of finite inverse semigroups."""

from .groupoid import (
    Groupoid,
    GroupoidRep,
    build_associated_groupoid,
    check_groupoid,
    groupoid_convolution,
    i_norm,
    is_positive_definite_groupoid,
    left_regular_groupoid_rep,
)
from .representations import (
    check_restricted_rep,
    coefficient,
    direct_sum,
    gns,
    groupoid_to_rep,
    rep_to_groupoid,
    tensor,
)
from .restricted import (
    CFunction,
    MatrixRep,
    build_restricted_semigroup,
    coefficient_pair,
    lambda_r,
    restricted_convolution,
    restricted_product,
    rho_r,
    tilde,
)
from .semigroup import (
    InverseSemigroup,
    build_standard,
    check_inverse_semigroup,
    idempotents,
    parse_semigroup,
    render_semigroup,
)

__version__ = "0.1.0"
