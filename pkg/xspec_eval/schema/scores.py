from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from xspec_eval.errors import DegenerateInputError


class ScoreTrial(BaseModel):
    """One probe-gallery comparison; score is a similarity (higher = more likely genuine)"""

    probe_id: str
    probe_subject: str
    gallery_id: str
    gallery_subject: str
    score: float

    model_config = ConfigDict(frozen=True)

    @field_validator("score")
    @classmethod
    def score_is_finite(cls, value: float) -> float:
        if not np.isfinite(value):
            raise ValueError("score must be finite")
        return value

    @property
    def genuine(self) -> bool:
        return self.probe_subject == self.gallery_subject

    @property
    def key(self) -> Tuple[str, str]:
        return (self.probe_id, self.gallery_id)


class ScoreSet(BaseModel):
    """Labeled matching trials; the genuine/impostor partition follows subject equality"""

    trials: Tuple[ScoreTrial, ...]

    model_config = ConfigDict(frozen=True)

    @property
    def scores(self) -> np.ndarray:
        return np.array([t.score for t in self.trials], dtype=np.float64)

    @property
    def genuine_mask(self) -> np.ndarray:
        return np.array([t.genuine for t in self.trials], dtype=bool)

    @property
    def genuine(self) -> np.ndarray:
        return self.scores[self.genuine_mask]

    @property
    def impostor(self) -> np.ndarray:
        return self.scores[~self.genuine_mask]

    @property
    def n_genuine(self) -> int:
        return int(self.genuine_mask.sum())

    @property
    def n_impostor(self) -> int:
        return len(self.trials) - self.n_genuine

    def with_scores(self, scores) -> "ScoreSet":
        """Copy of this set with every trial score replaced, labels untouched"""
        trials = [
            t.model_copy(update={"score": float(s)}) for t, s in zip(self.trials, scores)
        ]
        return ScoreSet(trials=tuple(trials))

    def require_both_classes(self, minimum: int = 1) -> Tuple[np.ndarray, np.ndarray]:
        """Genuine and impostor score arrays, each holding at least `minimum` scores"""
        genuine, impostor = self.genuine, self.impostor
        if genuine.size < minimum or impostor.size < minimum:
            raise DegenerateInputError(
                f"need at least {minimum} genuine and {minimum} impostor trials, "
                f"got {genuine.size} genuine and {impostor.size} impostor"
            )
        return genuine, impostor


class SynthParams(BaseModel):
    """Normal score distributions for one synthetic modality"""

    genuine_mean: float = 0.7
    genuine_sd: float = 0.1
    impostor_mean: float = 0.4
    impostor_sd: float = 0.1
