from typing import Dict, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from xspec_eval.errors import ShapeError
from xspec_eval.schema.tensor import Tensor

Probability = Union[float, Tensor]


class LossWeights(BaseModel):
    """Coefficients of the composite objective; defaults are the empirically chosen values"""

    lambda_cyc: float = Field(default=10.0, ge=0.0)
    lambda_syn: float = Field(default=30.0, ge=0.0)
    lambda_idr: float = Field(default=10.0, ge=0.0)


class DiscriminatorProbe(BaseModel):
    """Discriminator outputs entering the adversarial term.

    Each entry is a scalar probability or a tensor of per-patch probabilities.
    """

    p_real_ir: Probability  # D_IR(i)
    p_fake_ir: Probability  # D_IR(G(v))
    p_real_vis: Probability  # D_VIS(v)
    p_fake_vis: Probability  # D_VIS(F(i))

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


BUNDLE_FIELDS = ("v", "i", "g_v", "f_i", "fgv", "gfi")


def _dims_mismatch(tensors: Dict[str, Tensor]) -> str:
    dims = {name: t.dims for name, t in tensors.items() if isinstance(t, Tensor)}
    if len(set(dims.values())) > 1:
        listed = ", ".join(f"{name}={d}" for name, d in dims.items())
        return f"bundle tensors must share extents, got {listed}"
    return ""


class ConversionBundle(BaseModel):
    """Originals, one-step conversions and cyclic syntheses of one (v, i) batch"""

    v: Tensor
    i: Tensor
    g_v: Tensor  # G(v)
    f_i: Tensor  # F(i)
    fgv: Tensor  # F(G(v))
    gfi: Tensor  # G(F(i))

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def shared_dims(self) -> "ConversionBundle":
        mismatch = _dims_mismatch(self.tensors)
        if mismatch:
            raise ValueError(mismatch)
        return self

    @classmethod
    def from_tensors(cls, **tensors: Tensor) -> "ConversionBundle":
        """Build a bundle, reporting differing extents as a ShapeError"""
        mismatch = _dims_mismatch(tensors)
        if mismatch:
            raise ShapeError(mismatch)
        return cls(**tensors)

    @property
    def tensors(self) -> Dict[str, Tensor]:
        return {name: getattr(self, name) for name in BUNDLE_FIELDS}


class Embedding128(BaseModel):
    """Identity embedding produced by the external face feature extractor"""

    values: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @field_validator("values", mode="before")
    @classmethod
    def as_float_vector(cls, value):
        return np.asarray(value, dtype=np.float64).ravel()


class LossReport(BaseModel):
    """Evaluated loss terms and their weighted total"""

    l_gan: float
    l_cyc: float
    l_syn: float
    l_idr: float
    total: float


class TrainingSchedule(BaseModel):
    """Documented training constants; recorded here, never used to train"""

    epochs: int = 200
    decay_start: int = 100
    batch_size: int = 1
    base_learning_rate: float = 2e-4

    def learning_rate(self, epoch: int) -> float:
        """Constant rate, then a linear ramp reaching 0 at the final epoch"""
        if epoch < 0 or epoch >= self.epochs:
            raise ValueError(f"epoch {epoch} outside [0, {self.epochs})")
        if epoch < self.decay_start:
            return self.base_learning_rate
        decay_epochs = self.epochs - self.decay_start
        remaining = self.epochs - 1 - epoch
        return self.base_learning_rate * remaining / (decay_epochs - 1)


def as_probabilities(value: Probability) -> np.ndarray:
    if isinstance(value, Tensor):
        return value.data
    return np.atleast_1d(np.asarray(value, dtype=np.float64))
