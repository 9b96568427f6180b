"""Posterior summaries and single-chain convergence diagnostics.

Means and standard deviations use ``math.fsum`` so they do not depend on
the order of the draws. Autocorrelations come from an FFT of the centered
series; the effective sample size truncates the autocorrelation sum with
Geyer's initial positive (monotone) sequence. The split-half z score compares
the means of the two halves of the kept draws in units of their joint
Monte-Carlo standard error.
"""

import logging
import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
import pandas as pd

from restricted_regression.core.errors import EmptyChainError, InsufficientDataError
from restricted_regression.engines import Chain, ChainMV
from restricted_regression.models import ParameterSummary, Summary

logger = logging.getLogger(__name__)

ESS_MIN_LENGTH = 100
SPLIT_MIN_LENGTH = 200


def _as_series(series: ArrayLike) -> NDArray[np.float64]:
    return np.asarray(series, dtype=np.float64).ravel()


def mean_sd(series: ArrayLike) -> tuple[float, float]:
    """Order-independent mean and sample standard deviation (0 for one draw).

    Raises:
        EmptyChainError: If the series is empty.
    """
    x = _as_series(series)
    if x.size == 0:
        raise EmptyChainError("cannot summarize an empty series")
    if np.ptp(x) == 0:
        return float(x[0]), 0.0
    mean = math.fsum(x) / x.size
    return mean, math.sqrt(math.fsum((x - mean) ** 2) / (x.size - 1))


def acf(series: ArrayLike, max_lag: int) -> NDArray[np.float64]:
    """Sample autocorrelations at lags 0..max_lag.

    A constant series has no defined autocorrelation; it is reported as
    1 at lag 0 and 0 elsewhere.

    Raises:
        InsufficientDataError: If ``max_lag`` is negative or not below the
            series length.
    """
    x = _as_series(series)
    n = x.size
    if max_lag < 0 or max_lag >= n:
        raise InsufficientDataError(
            f"max lag {max_lag} needs a series longer than {max_lag}, got {n} draws"
        )
    rho = np.zeros(max_lag + 1)
    rho[0] = 1.0
    if np.ptp(x) == 0:
        logger.debug("constant series, autocorrelation set to zero")
        return rho
    centered = x - x.mean()
    size = 1 << (2 * n - 1).bit_length()
    spectrum = np.fft.rfft(centered, size)
    acov = np.fft.irfft(spectrum * np.conj(spectrum), size)[: max_lag + 1]
    rho[1:] = acov[1:] / acov[0]
    return rho


def ess(series: ArrayLike) -> float:
    """Effective sample size N / tau, clipped to (0, N].

    Raises:
        InsufficientDataError: If the series has fewer than 100 draws.
    """
    x = _as_series(series)
    n = x.size
    if n < ESS_MIN_LENGTH:
        raise InsufficientDataError(f"ESS needs at least {ESS_MIN_LENGTH} draws, got {n}")
    if np.ptp(x) == 0:
        return float(n)
    rho = acf(x, n - 1)
    pairs = rho[: 2 * (n // 2)].reshape(-1, 2).sum(axis=1)
    positive = np.flatnonzero(pairs <= 0.0)
    pairs = pairs[: positive[0]] if positive.size else pairs
    pairs = np.minimum.accumulate(pairs)
    tau = -1.0 + 2.0 * float(pairs.sum())
    if tau <= 1.0:
        return float(n)
    return float(n) / tau


def split_mean_z(series: ArrayLike) -> float:
    """Difference of the half means over their joint standard error.

    Each half's standard error is its SD over the square root of its ESS.

    Raises:
        InsufficientDataError: If the series has fewer than 200 draws.
    """
    x = _as_series(series)
    if x.size < SPLIT_MIN_LENGTH:
        raise InsufficientDataError(
            f"split-half check needs at least {SPLIT_MIN_LENGTH} draws, got {x.size}"
        )
    if np.ptp(x) == 0:
        return 0.0
    half = x.size // 2
    first, second = x[:half], x[x.size - half :]
    m1, s1 = mean_sd(first)
    m2, s2 = mean_sd(second)
    se = math.sqrt(s1 * s1 / ess(first) + s2 * s2 / ess(second))
    if se == 0.0:
        return 0.0 if m1 == m2 else math.copysign(math.inf, m1 - m2)
    return (m1 - m2) / se


def summarize_series(name: str, series: ArrayLike) -> ParameterSummary:
    x = _as_series(series)
    mean, sd = mean_sd(x)
    return ParameterSummary(
        name=name,
        mean=mean,
        sd=sd,
        ess=ess(x) if x.size >= ESS_MIN_LENGTH else None,
        acf1=float(acf(x, 1)[1]) if x.size > 1 else None,
        split_z=split_mean_z(x) if x.size >= SPLIT_MIN_LENGTH else None,
    )


def summarize_frame(frame: pd.DataFrame, burn_in: int = 0) -> Summary:
    """Summarize every parameter column of a chain frame.

    The ``iter`` column, when present, is ignored.

    Raises:
        EmptyChainError: If no rows remain after burn-in.
    """
    kept = frame.iloc[burn_in:]
    if kept.empty:
        raise EmptyChainError(f"no draws remain after a burn-in of {burn_in}")
    columns = [c for c in kept.columns if c != "iter"]
    return Summary(
        parameters=[summarize_series(c, kept[c].to_numpy(dtype=np.float64)) for c in columns],
        draws=len(kept),
    )


def summarize(chain: Chain | ChainMV) -> Summary:
    """Posterior mean, SD, ESS, lag-1 ACF and split-half z per parameter.

    Raises:
        EmptyChainError: If the burn-in covers the whole chain.
    """
    return summarize_frame(chain.to_frame(), burn_in=chain.burn_in)
