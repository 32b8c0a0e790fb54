"""
Score set ingestion, normalization and synthetic generation.

Scores are similarities throughout: higher means more likely genuine.
"""

from pathlib import Path
from typing import Literal, Tuple, Union

import numpy as np
import pandas as pd
from loguru import logger

from xspec_eval.csvtable import read_csv_table
from xspec_eval.errors import ArgumentError, DegenerateInputError, ParseError
from xspec_eval.report.writers import format_float
from xspec_eval.schema.scores import ScoreSet, ScoreTrial, SynthParams

SCORE_COLUMNS = ["probe_id", "probe_subject", "gallery_id", "gallery_subject", "score"]

NormalizationMethod = Literal["minmax", "zscore", "none"]


def load_scores(path: Union[str, Path]) -> ScoreSet:
    """Read a Score CSV; parse errors name the offending file line (header is line 1)"""
    path = Path(path)
    header, frame = read_csv_table(path)

    if header != SCORE_COLUMNS:
        raise ParseError(
            f"{path}: header must be {','.join(SCORE_COLUMNS)}, got {','.join(header)}",
            line=1,
        )
    if frame.empty:
        raise ParseError(f"{path}: no trials")

    trials = []
    for line, *fields in frame.itertuples(name=None):
        if any(value == "" for value in fields):
            raise ParseError(f"{path}: missing column value", line=line)
        try:
            score = float(fields[4])
        except ValueError:
            raise ParseError(f"{path}: non-numeric score {fields[4]!r}", line=line)
        if not np.isfinite(score):
            raise ParseError(f"{path}: non-finite score {fields[4]!r}", line=line)
        trials.append(
            ScoreTrial(
                probe_id=fields[0],
                probe_subject=fields[1],
                gallery_id=fields[2],
                gallery_subject=fields[3],
                score=score,
            )
        )

    scores = ScoreSet(trials=tuple(trials))
    logger.debug(
        f"Loaded {len(trials)} trials from {path} "
        f"({scores.n_genuine} genuine, {scores.n_impostor} impostor)"
    )
    return scores


def write_scores(s: ScoreSet, path: Union[str, Path]) -> Path:
    """Write a Score CSV with shortest round-trip float formatting"""
    path = Path(path)
    frame = pd.DataFrame(
        {
            "probe_id": [t.probe_id for t in s.trials],
            "probe_subject": [t.probe_subject for t in s.trials],
            "gallery_id": [t.gallery_id for t in s.trials],
            "gallery_subject": [t.gallery_subject for t in s.trials],
            "score": [format_float(t.score) for t in s.trials],
        },
        columns=SCORE_COLUMNS,
    )
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
    return path


def normalize(s: ScoreSet, method: NormalizationMethod) -> ScoreSet:
    """Affine normalization using statistics pooled over all trials"""
    if method == "none":
        return s
    scores = s.scores
    if method == "minmax":
        low, high = float(scores.min()), float(scores.max())
        if not high > low:
            raise DegenerateInputError(f"minmax needs max > min, all scores equal {low}")
        return s.with_scores((scores - low) / (high - low))
    if method == "zscore":
        if scores.size < 2:
            raise DegenerateInputError("zscore needs at least 2 scores")
        mean = float(scores.mean())
        sd = float(scores.std(ddof=1))
        if not sd > 0:
            raise DegenerateInputError(f"zscore needs stddev > 0, all scores equal {mean}")
        return s.with_scores((scores - mean) / sd)
    raise ArgumentError(f"unknown normalization method {method!r}")


def distance_to_similarity(s: ScoreSet) -> ScoreSet:
    """Map distances d >= 0 to similarities 1 / (1 + d)"""
    scores = s.scores
    if np.any(scores < 0):
        raise ArgumentError(f"distances must be non-negative, found {scores.min()}")
    return s.with_scores(1.0 / (1.0 + scores))


def _check_synth_arguments(n_genuine: int, n_impostor: int, params: SynthParams) -> None:
    if n_genuine < 1 or n_impostor < 1:
        raise ArgumentError(
            f"need at least one trial per class, got {n_genuine} genuine, {n_impostor} impostor"
        )
    if params.genuine_sd < 0 or params.impostor_sd < 0:
        raise ArgumentError("standard deviations must be non-negative")


def _draw(
    rng: np.random.Generator, n_genuine: int, n_impostor: int, params: SynthParams
) -> ScoreSet:
    genuine = np.clip(rng.normal(params.genuine_mean, params.genuine_sd, n_genuine), 0.0, 1.0)
    impostor = np.clip(
        rng.normal(params.impostor_mean, params.impostor_sd, n_impostor), 0.0, 1.0
    )
    trials = [
        ScoreTrial(
            probe_id=f"p{k}",
            probe_subject=f"s{k}",
            gallery_id=f"g{k}",
            gallery_subject=f"s{k}",
            score=float(score),
        )
        for k, score in enumerate(genuine)
    ]
    trials += [
        ScoreTrial(
            probe_id=f"q{k}",
            probe_subject=f"u{k}",
            gallery_id=f"h{k}",
            gallery_subject=f"w{k}",
            score=float(score),
        )
        for k, score in enumerate(impostor)
    ]
    return ScoreSet(trials=tuple(trials))


def synth_scores(
    seed: int,
    n_genuine: int,
    n_impostor: int,
    genuine_mean: float,
    genuine_sd: float,
    impostor_mean: float,
    impostor_sd: float,
) -> ScoreSet:
    """Seeded normal genuine/impostor scores clipped to [0, 1]"""
    params = SynthParams(
        genuine_mean=genuine_mean,
        genuine_sd=genuine_sd,
        impostor_mean=impostor_mean,
        impostor_sd=impostor_sd,
    )
    _check_synth_arguments(n_genuine, n_impostor, params)
    return _draw(np.random.default_rng(seed), n_genuine, n_impostor, params)


def synth_pair(
    seed: int,
    n_genuine: int,
    n_impostor: int,
    vis: SynthParams,
    ir: SynthParams,
) -> Tuple[ScoreSet, ScoreSet]:
    """Visible and infrared sets sharing trial keys, with independent noise streams"""
    _check_synth_arguments(n_genuine, n_impostor, vis)
    _check_synth_arguments(n_genuine, n_impostor, ir)
    vis_seed, ir_seed = np.random.SeedSequence(seed).spawn(2)
    return (
        _draw(np.random.default_rng(vis_seed), n_genuine, n_impostor, vis),
        _draw(np.random.default_rng(ir_seed), n_genuine, n_impostor, ir),
    )
