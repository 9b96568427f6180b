"""Axis-aligned boxes with possibly infinite faces."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from restricted_regression.core.errors import (
    DimensionMismatchError,
    EmptyIntervalError,
)


@dataclass(frozen=True, eq=False)
class BoxBounds:
    """Box {x : lower < x < upper} in R^d.

    Attributes:
        lower: Lower faces, entries in R or -inf.
        upper: Upper faces, entries in R or +inf.
    """

    lower: NDArray[np.float64]
    upper: NDArray[np.float64]

    def __post_init__(self) -> None:
        lower = np.array(self.lower, dtype=np.float64).ravel()
        upper = np.array(self.upper, dtype=np.float64).ravel()
        if lower.shape != upper.shape:
            raise DimensionMismatchError(
                f"lower has {lower.size} entries, upper has {upper.size}"
            )
        if np.any(np.isnan(lower)) or np.any(np.isnan(upper)):
            raise EmptyIntervalError("box bounds contain NaN")
        bad = np.flatnonzero(~(lower < upper))
        if bad.size:
            i = int(bad[0])
            raise EmptyIntervalError(
                f"empty interval at coordinate {i}: lower {lower[i]} >= upper {upper[i]}"
            )
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def unbounded(cls, dim: int) -> "BoxBounds":
        return cls(np.full(dim, -np.inf), np.full(dim, np.inf))

    @property
    def dim(self) -> int:
        return int(self.lower.size)

    def contains(self, x: ArrayLike, *, strict: bool = False) -> bool:
        """Whether ``x`` lies in the (closed or open) box."""
        arr = np.asarray(x, dtype=np.float64).ravel()
        if arr.size != self.dim:
            raise DimensionMismatchError(
                f"point has {arr.size} entries, box has dimension {self.dim}"
            )
        if strict:
            return bool(np.all((self.lower < arr) & (arr < self.upper)))
        return bool(np.all((self.lower <= arr) & (arr <= self.upper)))

    def interior_point(self) -> NDArray[np.float64]:
        """Deterministic interior point.

        Midpoint of a finite interval, the finite face moved inward by one for
        a one-sided interval, zero for an unbounded coordinate.
        """
        lo_finite = np.isfinite(self.lower)
        hi_finite = np.isfinite(self.upper)
        point = np.zeros(self.dim)
        both = lo_finite & hi_finite
        point[both] = 0.5 * (self.lower[both] + self.upper[both])
        only_lo = lo_finite & ~hi_finite
        point[only_lo] = self.lower[only_lo] + 1.0
        only_hi = hi_finite & ~lo_finite
        point[only_hi] = self.upper[only_hi] - 1.0
        return point

    def repair(self, x: ArrayLike) -> NDArray[np.float64]:
        """Replace coordinates not strictly inside the box by interior values."""
        arr = np.array(x, dtype=np.float64).ravel()
        outside = ~((self.lower < arr) & (arr < self.upper))
        if np.any(outside):
            arr[outside] = self.interior_point()[outside]
        return arr
