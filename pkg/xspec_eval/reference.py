"""
Published per-modality and fusion-rule results, kept as reference numbers.

GAR and EER values are percentages as published. They depend on image datasets
and trained converters and are not reproduced by this toolkit.
"""

from typing import Dict, List

from pydantic import BaseModel, ConfigDict

from xspec_eval.errors import ArgumentError
from xspec_eval.fusion import sawf_weights
from xspec_eval.schema.fusion import FusionWeights, ModalityQuality


class PublishedModality(BaseModel):
    """Single-modality matching result after conversion (no fusion)"""

    band: str
    gar_far_1e1: float
    gar_far_1e3: float
    eer: float
    d_prime: float
    fid: float

    model_config = ConfigDict(frozen=True)

    def quality(self) -> ModalityQuality:
        """GAR at FAR 1e-3 as a fraction, with d-prime"""
        return ModalityQuality(gar=self.gar_far_1e3 / 100.0, d_prime=self.d_prime)


class PublishedFusionRow(BaseModel):
    rule: str
    gar_far_1e1: float
    gar_far_1e3: float
    eer: float
    d_prime: float
    auc: float

    model_config = ConfigDict(frozen=True)


class PublishedSetting(BaseModel):
    """One evaluation setting: visible and infrared rows plus the fusion comparison"""

    name: str
    visible: PublishedModality
    infrared: PublishedModality
    fusion: List[PublishedFusionRow]

    model_config = ConfigDict(frozen=True)


def _fusion(rows) -> List[PublishedFusionRow]:
    names = ("maximum", "geometric_average", "arithmetic_average", "sawf")
    return [
        PublishedFusionRow(
            rule=name, gar_far_1e1=g1, gar_far_1e3=g3, eer=eer, d_prime=dp, auc=auc
        )
        for name, (g1, g3, eer, dp, auc) in zip(names, rows)
    ]


PUBLISHED: Dict[str, PublishedSetting] = {
    "casia": PublishedSetting(
        name="casia",
        visible=PublishedModality(band="VIS", gar_far_1e1=100, gar_far_1e3=95, eer=2.42, d_prime=4.59, fid=44.42),
        infrared=PublishedModality(band="NIR", gar_far_1e1=100, gar_far_1e3=96, eer=2.38, d_prime=4.63, fid=39.40),
        fusion=_fusion(
            [
                (100, 95, 2.06, 5.02, 0.99945),
                (100, 97, 1.96, 4.38, 0.99960),
                (100, 97, 1.92, 5.16, 0.99962),
                (100, 100, 0.0001, 6.54, 1.00000),
            ]
        ),
    ),
    "tinders_1.5m": PublishedSetting(
        name="tinders_1.5m",
        visible=PublishedModality(band="VIS", gar_far_1e1=99.22, gar_far_1e3=25.78, eer=8.31, d_prime=2.73, fid=40.17),
        infrared=PublishedModality(band="SWIR", gar_far_1e1=95.31, gar_far_1e3=41.41, eer=5.47, d_prime=2.90, fid=52.30),
        fusion=_fusion(
            [
                (99.22, 27.34, 8.26, 2.75, 0.97538),
                (100, 75.78, 2.85, 3.21, 0.99731),
                (100, 83.59, 2.18, 3.63, 0.99892),
                (100, 85.16, 1.62, 4.15, 0.99939),
            ]
        ),
    ),
    "tinders_50m": PublishedSetting(
        name="tinders_50m",
        visible=PublishedModality(band="VIS", gar_far_1e1=87.5, gar_far_1e3=48, eer=12, d_prime=2.36, fid=44.10),
        infrared=PublishedModality(band="SWIR", gar_far_1e1=69, gar_far_1e3=20, eer=18.93, d_prime=1.81, fid=65.53),
        fusion=_fusion(
            [
                (87.5, 46.5, 11.93, 2.49, 0.95891),
                (92, 39, 9.5, 2.58, 0.97032),
                (91, 47.5, 9.5, 2.59, 0.97711),
                (98, 58.5, 7.07, 3.40, 0.98741),
            ]
        ),
    ),
    "tinders_106m": PublishedSetting(
        name="tinders_106m",
        visible=PublishedModality(band="VIS", gar_far_1e1=70.5, gar_far_1e3=28.5, eer=18.11, d_prime=1.67, fid=53.25),
        infrared=PublishedModality(band="SWIR", gar_far_1e1=40, gar_far_1e3=5, eer=27.39, d_prime=1.25, fid=94.94),
        fusion=_fusion(
            [
                (70.5, 28.5, 18, 1.7814, 0.90540),
                (77.5, 25, 15.57, 1.956, 0.93088),
                (86, 43, 12.39, 2.2423, 0.94885),
                (88.5, 42.5, 11.07, 2.5462, 0.95541),
            ]
        ),
    ),
}


def published(setting: str) -> PublishedSetting:
    try:
        return PUBLISHED[setting]
    except KeyError:
        raise ArgumentError(f"unknown setting {setting!r}, expected one of {sorted(PUBLISHED)}")


def reference_sawf_weights(setting: str, tie_epsilon: float = 1e-9) -> FusionWeights:
    """SAWF weights implied by the published single-modality qualities"""
    entry = published(setting)
    return sawf_weights(entry.visible.quality(), entry.infrared.quality(), tie_epsilon)
