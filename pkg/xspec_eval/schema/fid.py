from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from xspec_eval.errors import ArgumentError, ShapeError


class FeatureSet(BaseModel):
    """n x d matrix of feature rows"""

    data: np.ndarray
    sample_ids: Optional[Tuple[str, ...]] = None

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @classmethod
    def from_rows(cls, rows, sample_ids=None) -> "FeatureSet":
        data = np.array(rows, dtype=np.float64)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise ShapeError(f"features must be a non-empty n x d matrix, got shape {data.shape}")
        if not np.all(np.isfinite(data)):
            raise ArgumentError("features must be finite")
        data.setflags(write=False)
        ids = tuple(sample_ids) if sample_ids is not None else None
        return cls(data=data, sample_ids=ids)

    @property
    def n(self) -> int:
        return int(self.data.shape[0])

    @property
    def d(self) -> int:
        return int(self.data.shape[1])


class GaussianStats(BaseModel):
    """Mean vector and covariance matrix of a feature population"""

    mu: np.ndarray
    sigma: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @property
    def d(self) -> int:
        return int(self.mu.shape[0])
