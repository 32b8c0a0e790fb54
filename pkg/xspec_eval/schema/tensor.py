from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from xspec_eval.errors import ShapeError


class Tensor(BaseModel):
    """Dense float64 tensor stored as extents plus flat row-major data"""

    dims: Tuple[int, ...]
    data: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @model_validator(mode="after")
    def data_fills_dims(self) -> "Tensor":
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError(f"extents must be positive, got {self.dims}")
        expected = int(np.prod(self.dims))
        if self.data.ndim != 1 or self.data.size != expected:
            raise ValueError(
                f"data of shape {self.data.shape} does not fill extents {self.dims} "
                f"(expected {expected} flat values)"
            )
        return self

    @classmethod
    def from_flat(cls, dims: Sequence[int], data: Sequence[float]) -> "Tensor":
        """Build a tensor from extents and flat row-major values"""
        dims = tuple(int(d) for d in dims)
        if not dims or any(d < 1 for d in dims):
            raise ShapeError(f"extents must be positive, got {dims}")
        flat = np.array(data, dtype=np.float64).ravel()
        if flat.size != int(np.prod(dims)):
            raise ShapeError(
                f"{flat.size} values do not fill extents {dims} "
                f"(expected {int(np.prod(dims))})"
            )
        flat.setflags(write=False)
        return cls(dims=dims, data=flat)

    @classmethod
    def from_array(cls, array) -> "Tensor":
        """Build a tensor from any array-like, keeping its shape"""
        array = np.asarray(array, dtype=np.float64)
        if array.ndim == 0:
            array = array.reshape(1)
        return cls.from_flat(array.shape, array.ravel())

    @property
    def array(self) -> np.ndarray:
        """Read-only view shaped by dims"""
        return self.data.reshape(self.dims)

    @property
    def ndim(self) -> int:
        return len(self.dims)
