"""
Biometric verification metrics over similarity scores.

Acceptance rule is score >= threshold. The ROC is the exact staircase of
(FAR, GAR) points obtained by sweeping every unique score (plus +inf);
GAR@FAR and EER interpolate linearly between adjacent points.
"""

from pathlib import Path
from typing import Iterable, Union

import numpy as np
import pandas as pd
from loguru import logger

from xspec_eval.errors import ArgumentError, DegenerateInputError
from xspec_eval.report.writers import format_float
from xspec_eval.schema.metrics import BiometricReport, RocCurve, RocPoint
from xspec_eval.schema.scores import ScoreSet


def _accept_counts(sorted_scores: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    """Number of scores >= each threshold"""
    return sorted_scores.size - np.searchsorted(sorted_scores, thresholds, side="left")


def roc_curve(s: ScoreSet) -> RocCurve:
    genuine, impostor = s.require_both_classes()
    genuine = np.sort(genuine)
    impostor = np.sort(impostor)

    # Strictest first: +inf, then unique scores in decreasing order.
    thresholds = np.concatenate(([np.inf], np.unique(np.concatenate((genuine, impostor)))[::-1]))
    far = _accept_counts(impostor, thresholds) / impostor.size
    gar = _accept_counts(genuine, thresholds) / genuine.size

    # Lowering the threshold never decreases FAR or GAR, and every unique score
    # moves at least one of them, so points are distinct and sorted by (FAR, GAR).
    points = [
        RocPoint(threshold=float(t), far=float(f), gar=float(g))
        for t, f, g in zip(thresholds, far, gar)
    ]

    logger.debug(
        f"ROC over {genuine.size} genuine / {impostor.size} impostor scores: {len(points)} points"
    )
    return RocCurve(points=tuple(points))


def gar_at_far(r: RocCurve, far_level: float) -> float:
    """GAR on the upper envelope of the ROC at the requested FAR"""
    if not (0.0 < far_level <= 1.0):
        raise ArgumentError(f"far_level must lie in (0, 1], got {far_level}")
    far, gar = r.far, r.gar

    at_or_below = np.nonzero(far <= far_level)[0]
    last = int(at_or_below[-1])
    if far[last] == far_level:
        return float(gar[last])

    # far[last] < far_level < far[last + 1]: segment from the top of one riser
    # to the bottom of the next.
    nxt = last + 1
    fraction = (far_level - far[last]) / (far[nxt] - far[last])
    return float(gar[last] + fraction * (gar[nxt] - gar[last]))


def eer(r: RocCurve) -> float:
    """Rate where FAR equals FRR = 1 - GAR on the piecewise-linear curve"""
    far = r.far
    frr = 1.0 - r.gar
    diff = far - frr

    crossing = np.nonzero(diff >= 0)[0]
    k = int(crossing[0])
    if diff[k] == 0 or k == 0:
        return float(far[k])

    # diff[k - 1] < 0 < diff[k]
    t = diff[k - 1] / (diff[k - 1] - diff[k])
    value = far[k - 1] + t * (far[k] - far[k - 1])
    return float(min(max(value, 0.0), 1.0))


def d_prime(s: ScoreSet) -> float:
    """|mu_g - mu_i| / sqrt((var_g + var_i) / 2) with sample variances"""
    genuine, impostor = s.require_both_classes(minimum=2)
    separation = abs(float(genuine.mean()) - float(impostor.mean()))
    spread = np.sqrt((genuine.var(ddof=1) + impostor.var(ddof=1)) / 2.0)
    if spread == 0:
        if separation == 0:
            return 0.0
        raise DegenerateInputError(
            "d-prime is infinite: both classes have zero variance and different means"
        )
    return float(separation / spread)


def auc(r: RocCurve) -> float:
    """Trapezoidal area under GAR over FAR on [0, 1]"""
    far, gar = r.far, r.gar
    area = np.sum(np.diff(far) * (gar[1:] + gar[:-1]) / 2.0)
    return float(min(max(area, 0.0), 1.0))


def evaluate(s: ScoreSet, far_points: Iterable[float]) -> BiometricReport:
    """Full metric report for one score set"""
    curve = roc_curve(s)
    return BiometricReport(
        gar_at_far={format_float(level): gar_at_far(curve, level) for level in far_points},
        eer=eer(curve),
        d_prime=d_prime(s),
        auc=auc(curve),
        n_genuine=s.n_genuine,
        n_impostor=s.n_impostor,
    )


def write_roc(r: RocCurve, path: Union[str, Path]) -> Path:
    """ROC CSV: threshold,far,gar with full precision"""
    path = Path(path)
    frame = pd.DataFrame(
        {
            "threshold": [format_float(p.threshold) for p in r.points],
            "far": [format_float(p.far) for p in r.points],
            "gar": [format_float(p.gar) for p in r.points],
        }
    )
    frame.to_csv(path, index=False, lineterminator="\n")
    return path
