"""
Score-level fusion of a visible and an infrared score set.

SAWF weights each modality by its share of GAR at a reference FAR, letting the
modality with the larger d-prime pick which share is computed directly.
Baseline rules combine the two scores of each trial elementwise.
"""

from typing import Dict, Literal, Tuple

import numpy as np
from loguru import logger

from xspec_eval.errors import AlignmentError, ArgumentError
from xspec_eval.metrics import d_prime, gar_at_far, roc_curve
from xspec_eval.schema.fusion import FusionWeights, ModalityQuality
from xspec_eval.schema.scores import ScoreSet

BaselineRule = Literal[
    "maximum",
    "minimum",
    "arithmetic_average",
    "geometric_average",
    "median",
    "product",
    "sum",
]

BASELINE_RULES: Tuple[str, ...] = (
    "maximum",
    "minimum",
    "arithmetic_average",
    "geometric_average",
    "median",
    "product",
    "sum",
)


def _share(gar: float, other: float) -> float:
    total = gar + other
    if total == 0:
        return 0.5
    return gar / total


def sawf_weights(
    q_vis: ModalityQuality, q_ir: ModalityQuality, tie_epsilon: float = 1e-9
) -> FusionWeights:
    """Self-adaptive weights from per-modality GAR and d-prime"""
    values = (q_vis.gar, q_vis.d_prime, q_ir.gar, q_ir.d_prime, tie_epsilon)
    if any(np.isnan(v) for v in values):
        raise ArgumentError(f"SAWF inputs must not be NaN: vis={q_vis}, ir={q_ir}")
    if tie_epsilon < 0:
        raise ArgumentError(f"tie_epsilon must be non-negative, got {tie_epsilon}")

    if q_vis.d_prime > q_ir.d_prime + tie_epsilon:
        weights = FusionWeights.from_visible(_share(q_vis.gar, q_ir.gar))
        branch = "visible"
    elif q_ir.d_prime > q_vis.d_prime + tie_epsilon:
        weights = FusionWeights.from_infrared(_share(q_ir.gar, q_vis.gar))
        branch = "infrared"
    else:
        weights = FusionWeights(w1=0.5, w2=0.5)
        branch = "tie"

    logger.debug(
        f"SAWF {branch} branch: d'_V={q_vis.d_prime:.4f} d'_I={q_ir.d_prime:.4f} "
        f"-> w1={weights.w1:.6f} w2={weights.w2:.6f}"
    )
    return weights


def eer_weights(eer_vis: float, eer_ir: float) -> FusionWeights:
    """Weights inversely proportional to each modality's EER"""
    if np.isnan(eer_vis) or np.isnan(eer_ir):
        raise ArgumentError("EER inputs must not be NaN")
    if eer_vis < 0 or eer_ir < 0:
        raise ArgumentError(f"EER must be non-negative, got {eer_vis} and {eer_ir}")
    total = eer_vis + eer_ir
    if total == 0:
        return FusionWeights(w1=0.5, w2=0.5)
    return FusionWeights.from_visible(eer_ir / total)


def _aligned(scores_vis: ScoreSet, scores_ir: ScoreSet) -> np.ndarray:
    """Infrared scores reordered to follow the visible trial order"""
    ir_by_key: Dict[Tuple[str, str], int] = {}
    for index, trial in enumerate(scores_ir.trials):
        if trial.key in ir_by_key:
            raise AlignmentError(f"duplicate infrared trial key {trial.key}")
        ir_by_key[trial.key] = index

    seen = set()
    order = []
    for trial in scores_vis.trials:
        if trial.key in seen:
            raise AlignmentError(f"duplicate visible trial key {trial.key}")
        seen.add(trial.key)
        index = ir_by_key.get(trial.key)
        if index is None:
            raise AlignmentError(f"visible trial {trial.key} has no infrared counterpart")
        counterpart = scores_ir.trials[index]
        if trial.genuine != counterpart.genuine:
            raise AlignmentError(f"trial {trial.key} is labeled differently across modalities")
        order.append(index)

    if len(seen) != len(ir_by_key):
        unmatched = next(t.key for t in scores_ir.trials if t.key not in seen)
        raise AlignmentError(f"infrared trial {unmatched} has no visible counterpart")

    return scores_ir.scores[np.array(order, dtype=np.int64)]


def fuse_weighted(w: FusionWeights, scores_vis: ScoreSet, scores_ir: ScoreSet) -> ScoreSet:
    """w1 * visible + w2 * infrared per trial, labels and order of the visible set"""
    ir = _aligned(scores_vis, scores_ir)
    return scores_vis.with_scores(w.w1 * scores_vis.scores + w.w2 * ir)


def fuse_baseline(rule: BaselineRule, scores_vis: ScoreSet, scores_ir: ScoreSet) -> ScoreSet:
    ir = _aligned(scores_vis, scores_ir)
    vis = scores_vis.scores

    if rule in ("geometric_average", "product") and (np.any(vis < 0) or np.any(ir < 0)):
        raise ArgumentError(f"{rule} needs non-negative scores")

    if rule == "maximum":
        fused = np.maximum(vis, ir)
    elif rule == "minimum":
        fused = np.minimum(vis, ir)
    elif rule in ("arithmetic_average", "median"):
        # The median of two values is their mean.
        fused = (vis + ir) / 2.0
    elif rule == "geometric_average":
        fused = np.sqrt(vis * ir)
    elif rule == "product":
        fused = vis * ir
    elif rule == "sum":
        fused = vis + ir
    else:
        raise ArgumentError(f"unknown fusion rule {rule!r}")
    return scores_vis.with_scores(fused)


def modality_quality(s: ScoreSet, reference_far: float) -> ModalityQuality:
    """GAR at the reference FAR and d-prime of one modality"""
    return ModalityQuality(gar=gar_at_far(roc_curve(s), reference_far), d_prime=d_prime(s))


def sawf_fuse(
    scores_vis: ScoreSet,
    scores_ir: ScoreSet,
    reference_far: float = 1e-3,
    tie_epsilon: float = 1e-9,
) -> Tuple[FusionWeights, ScoreSet]:
    """Measure both modalities, derive SAWF weights and fuse"""
    # Alignment is checked before measuring so mismatched inputs fail fast.
    _aligned(scores_vis, scores_ir)
    weights = sawf_weights(
        modality_quality(scores_vis, reference_far),
        modality_quality(scores_ir, reference_far),
        tie_epsilon,
    )
    return weights, fuse_weighted(weights, scores_vis, scores_ir)
