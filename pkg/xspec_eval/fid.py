"""
Frechet distance between Gaussian fits of two feature populations.

The cross term uses the symmetric form Tr((S1 Sy S1)^1/2) with S1 = Sx^1/2, which
equals Tr((Sx Sy)^1/2) without taking the root of a non-symmetric matrix.
"""

from pathlib import Path
from typing import Union

import numpy as np
from loguru import logger

from xspec_eval.csvtable import read_csv_table
from xspec_eval.errors import DegenerateInputError, NumericDomainError, ParseError, ShapeError
from xspec_eval.schema.fid import FeatureSet, GaussianStats

CLAMP_FLOOR = -1e-6


def _tolerance(a: np.ndarray) -> float:
    return 1e-8 * (1.0 + float(np.max(np.abs(a)))) if a.size else 1e-8


def gaussian_stats(f: FeatureSet) -> GaussianStats:
    """Column means and unbiased sample covariance"""
    if f.n < 2:
        raise DegenerateInputError(f"covariance needs at least 2 samples, got {f.n}")
    mu = f.data.mean(axis=0)
    sigma = np.atleast_2d(np.cov(f.data, rowvar=False, ddof=1))
    sigma = (sigma + sigma.T) / 2.0
    return GaussianStats(mu=mu, sigma=sigma)


def sqrtm_psd(a: np.ndarray) -> np.ndarray:
    """Principal square root of a symmetric positive semi-definite matrix"""
    a = np.atleast_2d(np.asarray(a, dtype=np.float64))
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"sqrtm_psd needs a square matrix, got shape {a.shape}")
    tol = _tolerance(a)
    asymmetry = float(np.max(np.abs(a - a.T)))
    if asymmetry > tol:
        raise NumericDomainError(f"matrix is not symmetric (max |a - a^T| = {asymmetry:.3e})")

    eigenvalues, eigenvectors = np.linalg.eigh((a + a.T) / 2.0)
    smallest = float(eigenvalues.min())
    if smallest < -tol:
        raise NumericDomainError(f"matrix is not positive semi-definite (eigenvalue {smallest:.3e})")
    if smallest < 0:
        logger.debug(f"clamping {int(np.sum(eigenvalues < 0))} slightly negative eigenvalues to 0")

    root = (eigenvectors * np.sqrt(np.clip(eigenvalues, 0.0, None))) @ eigenvectors.T
    return (root + root.T) / 2.0


def frechet_distance(a: GaussianStats, b: GaussianStats) -> float:
    if a.d != b.d:
        raise ShapeError(f"feature dimensions differ: {a.d} vs {b.d}")

    root_a = sqrtm_psd(a.sigma)
    inner = root_a @ b.sigma @ root_a
    cross = np.trace(sqrtm_psd((inner + inner.T) / 2.0))

    diff = a.mu - b.mu
    trace_a = float(np.trace(a.sigma))
    trace_b = float(np.trace(b.sigma))
    value = float(diff @ diff + trace_a + trace_b - 2.0 * cross)

    if value < 0:
        if value < CLAMP_FLOOR:
            raise NumericDomainError(f"Frechet distance {value:.3e} is below {CLAMP_FLOOR:g}")
        value = 0.0
    return value


def fid(x: FeatureSet, y: FeatureSet) -> float:
    """Frechet distance between the Gaussian fits of x and y"""
    if x.d != y.d:
        raise ShapeError(f"feature dimensions differ: {x.d} vs {y.d}")
    value = frechet_distance(gaussian_stats(x), gaussian_stats(y))
    logger.debug(f"FID over {x.n} vs {y.n} samples in {x.d} dimensions: {value}")
    return value


def load_features(path: Union[str, Path]) -> FeatureSet:
    """Read a feature CSV with header sample_id,f0,...,f{d-1}"""
    path = Path(path)
    columns, frame = read_csv_table(path)

    expected = ["sample_id"] + [f"f{k}" for k in range(len(columns) - 1)]
    if len(columns) < 2 or columns != expected:
        raise ParseError(
            f"{path}: header must be sample_id,f0,...,f{{d-1}}, got {','.join(columns)}", line=1
        )
    if frame.empty:
        raise ParseError(f"{path}: no samples")

    rows = []
    for line, _, *fields in frame.itertuples(name=None):
        try:
            values = [float(v) for v in fields]
        except ValueError:
            raise ParseError(f"{path}: non-numeric feature value", line=line)
        if not all(np.isfinite(values)):
            raise ParseError(f"{path}: non-finite feature value", line=line)
        rows.append(values)

    return FeatureSet.from_rows(rows, sample_ids=frame["sample_id"].tolist())
