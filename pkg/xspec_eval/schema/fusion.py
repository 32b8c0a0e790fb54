from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field

UnitInterval = Annotated[float, Field(ge=0.0, le=1.0, allow_inf_nan=False)]


class ModalityQuality(BaseModel):
    """GAR at the reference FAR and d-prime of one modality (G_V/d'_V or G_I/d'_I)"""

    gar: UnitInterval
    d_prime: Annotated[float, Field(ge=0.0, allow_inf_nan=False)]

    model_config = ConfigDict(frozen=True)


class FusionWeights(BaseModel):
    """Visible weight w1 and infrared weight w2, with w2 = 1 - w1"""

    w1: UnitInterval
    w2: UnitInterval

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_visible(cls, w1: float) -> "FusionWeights":
        return cls(w1=w1, w2=1.0 - w1)

    @classmethod
    def from_infrared(cls, w2: float) -> "FusionWeights":
        return cls(w1=1.0 - w2, w2=w2)
