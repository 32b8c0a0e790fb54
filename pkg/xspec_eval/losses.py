"""
Evaluation of the composite translation objective and its four terms.

Nothing here trains: every term is a pure function of supplied tensors,
discriminator probabilities and identity embeddings.
"""

import numpy as np
from loguru import logger

from xspec_eval.errors import ArgumentError, ShapeError
from xspec_eval.schema.losses import (
    ConversionBundle,
    DiscriminatorProbe,
    Embedding128,
    LossReport,
    LossWeights,
    as_probabilities,
)
from xspec_eval.tensorcore import l1_mean

EMBEDDING_SIZE = 128
LOG_CLAMP = 1e-7


def _log_mean(name: str, value, clamp: float, complement: bool) -> float:
    p = as_probabilities(value)
    if np.any(np.isnan(p)) or np.any(p < 0.0) or np.any(p > 1.0):
        raise ArgumentError(f"{name} must hold probabilities in [0, 1]")
    p = np.clip(p, clamp, 1.0 - clamp)
    # Logs per patch, then the mean over patches.
    return float(np.mean(np.log1p(-p) if complement else np.log(p)))


def adversarial_loss(d: DiscriminatorProbe, clamp: float = LOG_CLAMP) -> float:
    """log D_IR(i) + log(1 - D_IR(G(v))) + log D_VIS(v) + log(1 - D_VIS(F(i)))"""
    if not (0.0 < clamp < 0.5):
        raise ArgumentError(f"log clamp must lie in (0, 0.5), got {clamp}")
    return (
        _log_mean("p_real_ir", d.p_real_ir, clamp, complement=False)
        + _log_mean("p_fake_ir", d.p_fake_ir, clamp, complement=True)
        + _log_mean("p_real_vis", d.p_real_vis, clamp, complement=False)
        + _log_mean("p_fake_vis", d.p_fake_vis, clamp, complement=True)
    )


def cycle_loss(b: ConversionBundle) -> float:
    """Round-trip reconstruction error: |F(G(v)) - v| + |G(F(i)) - i|"""
    return l1_mean(b.fgv, b.v) + l1_mean(b.gfi, b.i)


def syn_loss(b: ConversionBundle) -> float:
    """One-step vs two-step synthesis: |F(i) - F(G(v))| + |G(v) - G(F(i))|"""
    return l1_mean(b.f_i, b.fgv) + l1_mean(b.g_v, b.gfi)


def idr_loss(e_vis: Embedding128, e_ir: Embedding128) -> float:
    for name, e in (("visible", e_vis), ("infrared", e_ir)):
        if e.values.size != EMBEDDING_SIZE:
            raise ShapeError(
                f"{name} embedding has {e.values.size} values, expected {EMBEDDING_SIZE}"
            )
        if not np.all(np.isfinite(e.values)):
            raise ArgumentError(f"{name} embedding has non-finite values")
    return float(np.linalg.norm(e_vis.values - e_ir.values))


def composite_loss(
    adv: float, cyc: float, syn: float, idr: float, w: LossWeights = LossWeights()
) -> float:
    for name, value in (("cycle", cyc), ("synthesized", syn), ("identity", idr)):
        if value < 0:
            raise ArgumentError(f"{name} loss must be non-negative, got {value}")
    return adv + w.lambda_cyc * cyc + w.lambda_syn * syn + w.lambda_idr * idr


def evaluate_losses(
    probe: DiscriminatorProbe,
    bundle: ConversionBundle,
    e_vis: Embedding128,
    e_ir: Embedding128,
    weights: LossWeights = LossWeights(),
    clamp: float = LOG_CLAMP,
) -> LossReport:
    """All four terms and the weighted total"""
    l_gan = adversarial_loss(probe, clamp)
    l_cyc = cycle_loss(bundle)
    l_syn = syn_loss(bundle)
    l_idr = idr_loss(e_vis, e_ir)
    total = composite_loss(l_gan, l_cyc, l_syn, l_idr, weights)
    logger.debug(
        f"losses: gan={l_gan:.6f} cyc={l_cyc:.6f} syn={l_syn:.6f} idr={l_idr:.6f} total={total:.6f}"
    )
    return LossReport(l_gan=l_gan, l_cyc=l_cyc, l_syn=l_syn, l_idr=l_idr, total=total)
