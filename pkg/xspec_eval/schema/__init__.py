"""
Pydantic models for the toolkit's domain types
"""

from xspec_eval.schema.tensor import Tensor
from xspec_eval.schema.scores import ScoreTrial, ScoreSet, SynthParams
from xspec_eval.schema.metrics import RocPoint, RocCurve, BiometricReport
from xspec_eval.schema.fusion import ModalityQuality, FusionWeights
from xspec_eval.schema.fid import FeatureSet, GaussianStats
from xspec_eval.schema.losses import (
    LossWeights,
    DiscriminatorProbe,
    ConversionBundle,
    Embedding128,
    LossReport,
    TrainingSchedule,
)
from xspec_eval.schema.netspec import LayerSpec, NetworkSpec, LayerShape

__all__ = [
    "Tensor",
    "ScoreTrial",
    "ScoreSet",
    "SynthParams",
    "RocPoint",
    "RocCurve",
    "BiometricReport",
    "ModalityQuality",
    "FusionWeights",
    "FeatureSet",
    "GaussianStats",
    "LossWeights",
    "DiscriminatorProbe",
    "ConversionBundle",
    "Embedding128",
    "LossReport",
    "TrainingSchedule",
    "LayerSpec",
    "NetworkSpec",
    "LayerShape",
]
