from typing import Dict, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class RocPoint(BaseModel):
    """One operating point; acceptance rule is score >= threshold"""

    threshold: float
    far: float
    gar: float

    model_config = ConfigDict(frozen=True)


class RocCurve(BaseModel):
    """Staircase ROC ordered by FAR, then GAR; runs from (0, g0) to (1, 1)"""

    points: Tuple[RocPoint, ...]

    model_config = ConfigDict(frozen=True)

    @property
    def far(self) -> np.ndarray:
        return np.array([p.far for p in self.points], dtype=np.float64)

    @property
    def gar(self) -> np.ndarray:
        return np.array([p.gar for p in self.points], dtype=np.float64)

    @property
    def thresholds(self) -> np.ndarray:
        return np.array([p.threshold for p in self.points], dtype=np.float64)


class BiometricReport(BaseModel):
    """Scalar metric summary of one score set (all rates are fractions)"""

    gar_at_far: Dict[str, float]
    eer: float = Field(ge=0.0, le=1.0)
    d_prime: float = Field(ge=0.0)
    auc: float = Field(ge=0.0, le=1.0)
    n_genuine: int
    n_impostor: int
