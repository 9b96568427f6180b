"""Chain containers returned by the samplers."""

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray
import pandas as pd

from restricted_regression.core.errors import EmptyChainError, InvalidParameterError

DEFAULT_BURN_IN_FRACTION = 0.1


def resolve_burn_in(iters: int, burn_in: int | None, fraction: float = DEFAULT_BURN_IN_FRACTION) -> int:
    """Validate ``iters``/``burn_in``; ``None`` means ``floor(fraction * iters)``.

    Raises:
        InvalidParameterError: If iters < 1 or burn_in is outside [0, iters).
    """
    if iters < 1:
        raise InvalidParameterError(f"iters must be >= 1, got {iters}")
    resolved = math.floor(fraction * iters) if burn_in is None else int(burn_in)
    if not 0 <= resolved < iters:
        raise InvalidParameterError(f"burn-in must lie in [0, {iters}), got {resolved}")
    return resolved


def beta_names(p: int) -> list[str]:
    return [f"beta_{i}" for i in range(1, p + 1)]


def _pair(i: int, j: int, wide: bool) -> str:
    return f"{i}_{j}" if wide else f"{i}{j}"


def sigma_names(k: int) -> list[str]:
    wide = k >= 10  # noqa: PLR2004
    return [f"sigma_{_pair(i, j, wide)}" for i in range(1, k + 1) for j in range(1, k + 1)]


def beta_matrix_names(p: int, k: int) -> list[str]:
    """Coefficient names in column-major order (response j outer)."""
    wide = max(p, k) >= 10  # noqa: PLR2004
    return [f"beta_{_pair(i, j, wide)}" for j in range(1, k + 1) for i in range(1, p + 1)]


@dataclass(eq=False)
class Chain:
    """Draws of (sigma^2, beta) from a univariate sampler.

    Coefficients are stored in the original column order. Iteration t
    (0-based) is row t; the first ``burn_in`` rows are warm-up.

    Attributes:
        sigma2: (iters,) variance draws.
        beta: (iters, p) coefficient draws.
        burn_in: Number of leading draws to discard.
        seed: Seed of the stream that produced the chain.
        method: ``bks`` or ``geweke``.
        config: Snapshot of the run settings.
        seconds_per_iteration: Mean wall-clock cost of one iteration.
    """

    sigma2: NDArray[np.float64]
    beta: NDArray[np.float64]
    burn_in: int = 0
    seed: int = 0
    method: str = "bks"
    config: dict[str, Any] = field(default_factory=dict)
    seconds_per_iteration: float = 0.0

    def __post_init__(self) -> None:
        self.sigma2 = np.asarray(self.sigma2, dtype=np.float64).ravel()
        self.beta = np.asarray(self.beta, dtype=np.float64)
        if self.beta.ndim != 2 or self.beta.shape[0] != self.sigma2.size:  # noqa: PLR2004
            raise InvalidParameterError(
                f"beta draws {self.beta.shape} do not match {self.sigma2.size} variance draws"
            )

    def __len__(self) -> int:
        return int(self.sigma2.size)

    @property
    def p(self) -> int:
        return int(self.beta.shape[1])

    @property
    def kept_sigma2(self) -> NDArray[np.float64]:
        return self.sigma2[self.burn_in :]

    @property
    def kept_beta(self) -> NDArray[np.float64]:
        return self.beta[self.burn_in :]

    def parameter_names(self) -> list[str]:
        return ["sigma2", *beta_names(self.p)]

    def draws(self) -> NDArray[np.float64]:
        """All draws as an (iters, 1 + p) array in :meth:`parameter_names` order."""
        return np.column_stack([self.sigma2, self.beta])

    def to_frame(self, *, kept_only: bool = False) -> pd.DataFrame:
        """Chain as a frame with a 1-based ``iter`` column."""
        frame = pd.DataFrame(self.draws(), columns=self.parameter_names())
        frame.insert(0, "iter", np.arange(1, len(self) + 1))
        return frame.iloc[self.burn_in :] if kept_only else frame

    def posterior_mean(self) -> tuple[float, NDArray[np.float64]]:
        """(E[sigma^2], E[beta]) over the kept draws.

        Raises:
            EmptyChainError: If no draws remain after burn-in.
        """
        if self.burn_in >= len(self):
            raise EmptyChainError("no draws remain after burn-in")
        return float(np.mean(self.kept_sigma2)), self.kept_beta.mean(axis=0)


@dataclass(eq=False)
class ChainMV:
    """Draws of (Sigma, B) from the multivariate sampler.

    Attributes:
        sigma: (iters, k, k) covariance draws.
        beta: (iters, p, k) coefficient draws in original row order.
    """

    sigma: NDArray[np.float64]
    beta: NDArray[np.float64]
    burn_in: int = 0
    seed: int = 0
    method: str = "bks"
    config: dict[str, Any] = field(default_factory=dict)
    seconds_per_iteration: float = 0.0

    def __post_init__(self) -> None:
        self.sigma = np.asarray(self.sigma, dtype=np.float64)
        self.beta = np.asarray(self.beta, dtype=np.float64)
        if (
            self.sigma.ndim != 3  # noqa: PLR2004
            or self.beta.ndim != 3  # noqa: PLR2004
            or self.sigma.shape[0] != self.beta.shape[0]
            or self.sigma.shape[1:] != (self.k, self.k)
        ):
            raise InvalidParameterError(
                f"sigma draws {self.sigma.shape} and beta draws {self.beta.shape} do not conform"
            )

    def __len__(self) -> int:
        return int(self.sigma.shape[0])

    @property
    def p(self) -> int:
        return int(self.beta.shape[1])

    @property
    def k(self) -> int:
        return int(self.beta.shape[2])

    @property
    def kept_sigma(self) -> NDArray[np.float64]:
        return self.sigma[self.burn_in :]

    @property
    def kept_beta(self) -> NDArray[np.float64]:
        return self.beta[self.burn_in :]

    def parameter_names(self) -> list[str]:
        return [*sigma_names(self.k), *beta_matrix_names(self.p, self.k)]

    def draws(self) -> NDArray[np.float64]:
        iters = len(self)
        sigma_flat = self.sigma.reshape(iters, self.k * self.k)
        beta_flat = self.beta.transpose(0, 2, 1).reshape(iters, self.p * self.k)
        return np.column_stack([sigma_flat, beta_flat])

    def to_frame(self, *, kept_only: bool = False) -> pd.DataFrame:
        frame = pd.DataFrame(self.draws(), columns=self.parameter_names())
        frame.insert(0, "iter", np.arange(1, len(self) + 1))
        return frame.iloc[self.burn_in :] if kept_only else frame

    def posterior_mean(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        if self.burn_in >= len(self):
            raise EmptyChainError("no draws remain after burn-in")
        return self.kept_sigma.mean(axis=0), self.kept_beta.mean(axis=0)
