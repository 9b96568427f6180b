"""Random samplers used by the Gibbs engines."""

from restricted_regression.distributions.bounds import BoxBounds
from restricted_regression.distributions.conjugate import (
    InverseWishart,
    sample_inverse_gamma,
    sample_inverse_wishart,
    sample_matrix_normal,
    sample_matrix_normal_factored,
    sample_mvn,
)
from restricted_regression.distributions.rng import RngStream
from restricted_regression.distributions.truncated import (
    DEFAULT_INNER_SWEEPS,
    LinearTransform,
    gibbs_box_sweeps,
    sample_mvn_under_linear_box,
    sample_tmvn_box,
    sample_truncnorm,
)

__all__ = [
    "DEFAULT_INNER_SWEEPS",
    "BoxBounds",
    "InverseWishart",
    "LinearTransform",
    "RngStream",
    "gibbs_box_sweeps",
    "sample_inverse_gamma",
    "sample_inverse_wishart",
    "sample_matrix_normal",
    "sample_matrix_normal_factored",
    "sample_mvn",
    "sample_mvn_under_linear_box",
    "sample_tmvn_box",
    "sample_truncnorm",
]
