"""Restriction systems, true values and hyperparameters of the studies.

Preferred blocks are 0-based column indices.
"""

import numpy as np

from restricted_regression.restrictions import RestrictionSystem

INF = np.inf

# Single-response simulation: y = X beta + e, n = 20, X = [1, Z1..Z4].
EXAMPLE1_N = 20
EXAMPLE1_BETA = np.array([-0.5, 1.0, -2.0, 3.0, 4.0])
EXAMPLE1_SIGMA2 = 1.0
EXAMPLE1_A = 6.0
EXAMPLE1_B = 2.0

DELTA_GRID = np.round(np.linspace(-1.0, 1.0, 11), 10)

# Two-response simulation.
EXAMPLE2_N = 20
EXAMPLE2_B = np.array(
    [
        [2.0, -1.0],
        [-1.0, -1.5],
        [0.5, 1.0],
        [1.0, 1.0],
        [0.5, 0.7],
    ]
)
EXAMPLE2_SIGMA = np.array([[1.0, 0.5], [0.5, 1.0]])
EXAMPLE2_R = 2.0

RENT_PRIOR_MEAN = np.array([37.63, 130.0, 123.0, 0.0, -1.153])
RENT_A = 0.001
RENT_B = 0.001

CHEMICAL_R = 3.0


def restriction1(delta: float = 0.0) -> RestrictionSystem:
    """beta2 + beta3 <= -0.5, beta2 + beta4 - beta5 <= 0.2, beta3 + beta5 <= 2.2 + delta."""
    H = np.array(
        [
            [0.0, 1.0, 1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 1.0, -1.0],
            [0.0, 0.0, 1.0, 0.0, 1.0],
        ]
    )
    return RestrictionSystem.from_bounds(H, [-0.5, 0.2, 2.2 + delta], preferred=(2, 3, 4))


def restriction2() -> RestrictionSystem:
    """beta2 + beta3 <= -0.5, beta3 <= -1.5, -beta4 <= -2."""
    H = np.array(
        [
            [0.0, 1.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0, 0.0],
        ]
    )
    return RestrictionSystem.from_bounds(H, [-0.5, -1.5, -2.0], preferred=(1, 2, 3))


def restriction2_square() -> RestrictionSystem:
    """Restriction 2 padded with identity rows to a square, invertible system."""
    H = np.array(
        [
            [1.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 1.0],
        ]
    )
    return RestrictionSystem.from_bounds(H, [INF, -0.5, -1.5, -2.0, INF])


def example2_system() -> RestrictionSystem:
    """Shared R for both responses; the block is chosen by pivoting."""
    R = np.array(
        [
            [0.0, 1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0, -1.0, 1.0],
        ]
    )
    G = np.array([[0.0, 0.0], [0.5, 0.0], [0.5, 1.0]])
    return RestrictionSystem.from_bounds(R, G)


def rent_system() -> RestrictionSystem:
    """beta2 >= 0, beta3 >= 0, beta4 <= 0, beta5 <= 0 in H beta <= 0 form."""
    H = np.array(
        [
            [0.0, -1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 1.0],
        ]
    )
    return RestrictionSystem.from_bounds(H, np.zeros(4), preferred=(1, 2, 3, 4))


def rent_square_system() -> RestrictionSystem:
    H = np.diag([1.0, -1.0, -1.0, 1.0, 1.0])
    return RestrictionSystem.from_bounds(H, [INF, 0.0, 0.0, 0.0, 0.0])


def chemical_system() -> RestrictionSystem:
    R = np.array([[0.0, 1.0, 1.0, -1.0], [0.0, 0.0, 0.0, 1.0]])
    G = np.array([[-1.0, 0.6, 1.0], [-2.0, 1.5, 1.5]])
    return RestrictionSystem.from_bounds(R, G, preferred=(2, 3))
