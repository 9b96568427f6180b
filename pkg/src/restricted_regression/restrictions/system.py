"""Restriction systems K <= H beta <= G and their full-rank partition.

A univariate system has K, G of shape (q,); a multivariate system
K <= R B <= G has K, G of shape (q, k) and applies the same R to every
response column. Index lists are 0-based throughout the Python API.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from restricted_regression.core.errors import (
    NoFullRankBlockError,
    PreferredSingularError,
    ShapeMismatchError,
)
from restricted_regression.distributions.bounds import BoxBounds
from restricted_regression.numerics import unvec, vec
from restricted_regression.validators.restriction_validator import (
    RestrictionValidator,
)

logger = logging.getLogger(__name__)

FEASIBILITY_SLACK = 1e-12
PIVOT_TOL = 1e-12


def _frozen(a: ArrayLike) -> NDArray[np.float64]:
    arr = np.array(a, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RestrictionSystem:
    """K <= H beta <= G (or K <= R B <= G).

    Attributes:
        H: q x p restriction matrix (R in the multivariate model).
        K: Lower bounds, entries may be -inf.
        G: Upper bounds, entries may be +inf.
        preferred: Optional user choice of the full-rank column block S.
    """

    H: NDArray[np.float64]
    K: NDArray[np.float64]
    G: NDArray[np.float64]
    preferred: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        H = np.array(self.H, dtype=np.float64)
        if H.ndim == 1:
            H = H.reshape(1, -1)
        if H.ndim != 2:  # noqa: PLR2004
            raise ShapeMismatchError(f"restriction matrix must be 2-d, got {H.shape}")
        object.__setattr__(self, "H", _frozen(H))
        object.__setattr__(self, "K", _frozen(self.K))
        object.__setattr__(self, "G", _frozen(self.G))
        if self.preferred is not None:
            object.__setattr__(self, "preferred", tuple(int(j) for j in self.preferred))

    @classmethod
    def from_bounds(
        cls,
        H: ArrayLike,
        G: ArrayLike,
        K: ArrayLike | None = None,
        preferred: tuple[int, ...] | None = None,
    ) -> "RestrictionSystem":
        """Build a system, defaulting K to -inf."""
        upper = np.asarray(G, dtype=np.float64)
        lower = np.full(upper.shape, -np.inf) if K is None else K
        return cls(np.asarray(H, dtype=np.float64), lower, upper, preferred)

    @property
    def q(self) -> int:
        return int(self.H.shape[0])

    @property
    def p(self) -> int:
        return int(self.H.shape[1])

    @property
    def is_multivariate(self) -> bool:
        return self.K.ndim == 2  # noqa: PLR2004

    @property
    def k(self) -> int:
        return int(self.K.shape[1]) if self.is_multivariate else 1

    def with_upper(self, G: ArrayLike) -> "RestrictionSystem":
        return RestrictionSystem(self.H, self.K, G, self.preferred)


@dataclass(frozen=True, eq=False)
class Partition:
    """Split of coefficient indices into S (|S| = q, H_S invertible) and S'.

    Attributes:
        S: Indices of the full-rank block (ascending unless given explicitly).
        S_prime: Remaining indices, ascending.
        H_S: q x q block H[:, S].
        H_S_prime: q x (p - q) block H[:, S'].
        order: S followed by S'.
        inverse: Permutation undoing ``order``.
    """

    S: tuple[int, ...]
    S_prime: tuple[int, ...]
    H_S: NDArray[np.float64]
    H_S_prime: NDArray[np.float64]
    order: NDArray[np.intp] = field(init=False)
    inverse: NDArray[np.intp] = field(init=False)

    def __post_init__(self) -> None:
        order = np.array(self.S + self.S_prime, dtype=np.intp)
        inverse = np.argsort(order).astype(np.intp)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "inverse", inverse)

    @property
    def q(self) -> int:
        return len(self.S)

    @property
    def p(self) -> int:
        return len(self.S) + len(self.S_prime)

    def split(self, beta: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """(beta_S, beta_S') from coefficients (vector or p x k matrix) in original order."""
        arr = np.asarray(beta, dtype=np.float64)
        if arr.shape[0] != self.p:
            raise ShapeMismatchError(f"expected {self.p} coefficient rows, got {arr.shape[0]}")
        return arr[list(self.S)], arr[list(self.S_prime)]

    def assemble(self, beta_S: ArrayLike, beta_S_prime: ArrayLike) -> NDArray[np.float64]:
        """Inverse of :meth:`split`."""
        stacked = np.concatenate(
            [np.asarray(beta_S, dtype=np.float64), np.asarray(beta_S_prime, dtype=np.float64)]
        )
        return stacked[self.inverse]


def validate(system: RestrictionSystem) -> None:
    """Confirm q <= p, rank(H) = q and K < G.

    Raises:
        ShapeMismatchError: On inconsistent shapes.
        RankDeficientError: If the rows of H are dependent.
        EmptyIntervalError: If some K[i] >= G[i].
    """
    result = RestrictionValidator().validate(system)
    for warning in result.warnings:
        logger.warning("restriction system: %s", warning)
    result.raise_for_status()


def _make_partition(system: RestrictionSystem, S: list[int]) -> Partition:
    S_block = tuple(S)
    S_prime = tuple(j for j in range(system.p) if j not in set(S_block))
    return Partition(
        S=S_block,
        S_prime=S_prime,
        H_S=_frozen(system.H[:, list(S_block)]),
        H_S_prime=_frozen(system.H[:, list(S_prime)].reshape(system.q, len(S_prime))),
    )


def _pivot_columns(H: NDArray[np.float64]) -> list[int]:
    """Row-wise Gaussian elimination choosing the largest remaining pivot.

    Ties go to the smallest column index.
    """
    work = np.array(H, dtype=np.float64)
    q, p = work.shape
    tol = PIVOT_TOL * max(1.0, float(np.max(np.abs(work))))
    chosen: list[int] = []
    free = np.ones(p, dtype=bool)
    for i in range(q):
        candidates = np.where(free, np.abs(work[i]), -1.0)
        col = int(np.argmax(candidates))
        if candidates[col] <= tol:
            raise NoFullRankBlockError(
                f"no usable pivot in restriction row {i + 1}; rank(H) < {q}"
            )
        chosen.append(col)
        free[col] = False
        below = work[i + 1 :, col] / work[i, col]
        work[i + 1 :] -= np.outer(below, work[i])
    return chosen


def select_partition(
    system: RestrictionSystem, preferred: tuple[int, ...] | list[int] | None = None
) -> Partition:
    """Choose S with H_S invertible.

    A preferred block (argument first, then ``system.preferred``) is used
    verbatim; otherwise columns are chosen by pivoted elimination, which is
    deterministic for a fixed system.

    Raises:
        PreferredSingularError: If the preferred block is singular.
        ShapeMismatchError: If the preferred block has the wrong size or
            out-of-range indices.
        NoFullRankBlockError: If elimination finds no pivot.
    """
    choice = preferred if preferred is not None else system.preferred
    if choice is not None:
        S = [int(j) for j in choice]
        if len(S) != system.q or len(set(S)) != system.q or not all(0 <= j < system.p for j in S):
            raise ShapeMismatchError(
                f"preferred block {[j + 1 for j in S]} must list {system.q} distinct "
                f"columns in 1..{system.p}"
            )
        partition = _make_partition(system, S)
        if np.linalg.matrix_rank(partition.H_S) < system.q:
            raise PreferredSingularError(
                f"columns {[j + 1 for j in partition.S]} of H form a singular block"
            )
        return partition

    partition = _make_partition(system, sorted(_pivot_columns(system.H)))
    logger.debug(
        "selected restriction partition",
        extra={"S": [j + 1 for j in partition.S], "S_prime": [j + 1 for j in partition.S_prime]},
    )
    return partition


def conditional_box(
    partition: Partition, system: RestrictionSystem, beta_S_prime: ArrayLike
) -> BoxBounds:
    """Box for H_S beta_S given beta_S': [K - H_S' beta_S', G - H_S' beta_S'].

    Multivariate boxes are vec-ed column-major and bound vec(R_S B_S).

    Raises:
        ShapeMismatchError: If ``beta_S_prime`` does not conform.
    """
    b = np.asarray(beta_S_prime, dtype=np.float64)
    n_free = len(partition.S_prime)
    expected = (n_free, system.k) if system.is_multivariate else (n_free,)
    if b.shape != expected:
        raise ShapeMismatchError(f"beta_S' has shape {b.shape}, expected {expected}")
    shift = partition.H_S_prime @ b
    lower = system.K - shift
    upper = system.G - shift
    if system.is_multivariate:
        return BoxBounds(vec(lower), vec(upper))
    return BoxBounds(lower, upper)


def solve_block(partition: Partition, theta: ArrayLike, k: int | None = None) -> NDArray[np.float64]:
    """beta_S = H_S^{-1} theta; for k responses theta is vec(H_S B_S)."""
    rhs = np.asarray(theta, dtype=np.float64)
    if k is not None:
        rhs = unvec(rhs, partition.q, k)
    return np.linalg.solve(partition.H_S, rhs)


def feasible_point(
    system: RestrictionSystem, partition: Partition, anchor: ArrayLike | None = None
) -> NDArray[np.float64]:
    """Point strictly satisfying the restrictions.

    beta_S' comes from ``anchor`` (zero by default); theta is the interior
    point of the conditional box and beta_S = H_S^{-1} theta.
    """
    shape = (system.p, system.k) if system.is_multivariate else (system.p,)
    base = np.zeros(shape) if anchor is None else np.asarray(anchor, dtype=np.float64).reshape(shape)
    _, beta_S_prime = partition.split(base)
    theta = conditional_box(partition, system, beta_S_prime).interior_point()
    beta_S = solve_block(partition, theta, system.k if system.is_multivariate else None)
    return partition.assemble(beta_S, beta_S_prime)


def check_feasible(beta: ArrayLike, system: RestrictionSystem) -> bool:
    """Whether K <= H beta <= G holds row-wise within 1e-12 relative slack.

    Raises:
        ShapeMismatchError: If ``beta`` does not conform to H.
    """
    b = np.asarray(beta, dtype=np.float64)
    expected = (system.p, system.k) if system.is_multivariate else (system.p,)
    if b.shape != expected:
        raise ShapeMismatchError(f"beta has shape {b.shape}, expected {expected}")
    hb = system.H @ b
    slack = FEASIBILITY_SLACK * np.maximum(1.0, np.abs(hb))
    return bool(np.all(system.K - slack <= hb) and np.all(hb <= system.G + slack))


def permute_design(
    X: ArrayLike, partition: Partition
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """(X_S, X_S') gathering the design columns of S and S'.

    Raises:
        ShapeMismatchError: If X does not have p columns.
    """
    design = np.asarray(X, dtype=np.float64)
    if design.ndim != 2 or design.shape[1] != partition.p:  # noqa: PLR2004
        raise ShapeMismatchError(
            f"design has shape {design.shape}, expected {partition.p} columns"
        )
    return design[:, list(partition.S)], design[:, list(partition.S_prime)]
