"""
Batch runner behind the command-line front end.

EvalRunner.run dispatches one RunConfig to its subcommand, writes every output
under the configured directory and removes whatever it wrote if the run fails.
"""

from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, field_validator

from xspec_eval.errors import ArgumentError, ShapeError, UnsupportedLayerError
from xspec_eval.fid import fid, load_features
from xspec_eval.fusion import eer_weights, fuse_baseline, fuse_weighted, modality_quality, sawf_weights
from xspec_eval.losses import evaluate_losses
from xspec_eval.metrics import evaluate, roc_curve, write_roc, eer as curve_eer
from xspec_eval.netspec import (
    describe,
    empirical_receptive_field,
    param_count,
    receptive_field,
    resolve_network,
)
from xspec_eval.reference import PUBLISHED, reference_sawf_weights
from xspec_eval.report.svg import generate_roc_svg, write_roc_svg
from xspec_eval.report.tables import netspec_text, write_comparison
from xspec_eval.report.writers import write_json, write_text
from xspec_eval.schema.losses import (
    BUNDLE_FIELDS,
    ConversionBundle,
    DiscriminatorProbe,
    Embedding128,
    LossWeights,
)
from xspec_eval.schema.metrics import BiometricReport
from xspec_eval.schema.scores import ScoreSet, SynthParams
from xspec_eval.scores import (
    distance_to_similarity,
    load_scores,
    normalize,
    synth_pair,
    synth_scores,
    write_scores,
)
from xspec_eval.settings import EvalSettings
from xspec_eval.tensorcore import read_tensor

Subcommand = Literal["eval", "fuse", "fid", "losses", "netspec", "synth", "reference"]

FUSION_RULES = (
    "sawf",
    "maximum",
    "minimum",
    "geometric_average",
    "arithmetic_average",
    "median",
    "eer_weighted",
)

PROBE_TENSORS = {
    "p_real_ir": "d_real_ir",
    "p_fake_ir": "d_fake_ir",
    "p_real_vis": "d_real_vis",
    "p_fake_vis": "d_fake_vis",
}


class RunConfig(BaseModel):
    """Everything one invocation needs; build with from_settings for toolkit defaults"""

    subcommand: Subcommand
    out: Path

    # Inputs
    scores: Optional[Path] = None
    scores_vis: Optional[Path] = None
    scores_ir: Optional[Path] = None
    features_x: Optional[Path] = None
    features_y: Optional[Path] = None
    tensors: Optional[Path] = None
    embeddings: Optional[Path] = None
    network: str = "discriminator"
    input_size: int = Field(default=256, ge=1)
    empirical: bool = False
    distance: bool = False
    setting: Optional[str] = None

    # Evaluation
    far_points: List[float] = [1e-1, 1e-3]
    normalization: Literal["minmax", "zscore", "none"] = "none"
    sawf_reference_far: float = 1e-3
    sawf_tie_epsilon: float = Field(default=1e-9, ge=0.0)
    lambda_cyc: float = Field(default=10.0, ge=0.0)
    lambda_syn: float = Field(default=30.0, ge=0.0)
    lambda_idr: float = Field(default=10.0, ge=0.0)
    log_clamp: float = 1e-7
    probe_max_channels: int = Field(default=8, ge=1)

    # Synthetic scores
    seed: int = 42
    n_genuine: int = 500
    n_impostor: int = 500
    pair: bool = False
    synth: SynthParams = SynthParams()
    synth_ir: SynthParams = SynthParams(
        genuine_mean=0.75, genuine_sd=0.08, impostor_mean=0.35, impostor_sd=0.10
    )

    # Reports
    svg_width: int = 800
    svg_height: int = 600

    model_config = ConfigDict(frozen=True)

    @field_validator("far_points")
    @classmethod
    def far_points_in_range(cls, value: List[float]) -> List[float]:
        if not value:
            raise ValueError("far_points must not be empty")
        for level in value:
            if not (0.0 < level <= 1.0):
                raise ValueError(f"far point {level} outside (0, 1]")
        return value

    @field_validator("sawf_reference_far")
    @classmethod
    def reference_far_in_range(cls, value: float) -> float:
        if not (0.0 < value <= 1.0):
            raise ValueError(f"sawf_reference_far {value} outside (0, 1]")
        return value

    @classmethod
    def from_settings(cls, settings: EvalSettings, **overrides) -> "RunConfig":
        """Defaults from settings; overrides that are None fall back to them"""
        values = {
            "far_points": settings.far_points,
            "normalization": settings.normalization,
            "sawf_reference_far": settings.sawf_reference_far,
            "sawf_tie_epsilon": settings.sawf_tie_epsilon,
            "lambda_cyc": settings.lambda_cyc,
            "lambda_syn": settings.lambda_syn,
            "lambda_idr": settings.lambda_idr,
            "log_clamp": settings.log_clamp,
            "probe_max_channels": settings.probe_max_channels,
            "seed": settings.seed,
            "svg_width": settings.svg_width,
            "svg_height": settings.svg_height,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class RunResult(BaseModel):
    """Files written by a run, plus text to echo on standard output"""

    outputs: List[Path] = []
    stdout: Optional[str] = None


def _require(config: RunConfig, *names: str) -> Tuple:
    missing = [name for name in names if getattr(config, name) is None]
    if missing:
        raise ArgumentError(
            f"{config.subcommand} needs --{', --'.join(n.replace('_', '-') for n in missing)}"
        )
    return tuple(getattr(config, name) for name in names)


class EvalRunner:
    """Runs one subcommand and tracks the files it writes"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.written: List[Path] = []

    def run(self) -> RunResult:
        config = self.config
        logger.info(f"Running {config.subcommand} into {config.out}")
        try:
            config.out.mkdir(parents=True, exist_ok=True)
            handler = getattr(self, f"_run_{config.subcommand}")
            stdout = handler()
        except (ValueError, OSError) as e:
            logger.error(f"{config.subcommand} failed: {e}")
            self._remove_partial_outputs()
            raise
        return RunResult(outputs=list(self.written), stdout=stdout)

    def _path(self, name: str) -> Path:
        # Registered before writing so a half-written file is also removed on failure.
        path = self.config.out / name
        self.written.append(path)
        return path

    def _track(self, path: Path) -> Path:
        logger.info(f"Wrote {path}")
        return path

    def _remove_partial_outputs(self) -> None:
        for path in self.written:
            try:
                path.unlink()
                logger.debug(f"Removed partial output {path}")
            except FileNotFoundError:
                pass
        self.written = []

    def _load(self, path: Path) -> ScoreSet:
        s = load_scores(path)
        if self.config.distance:
            s = distance_to_similarity(s)
        return normalize(s, self.config.normalization)

    def _write_report(self, report: BiometricReport, name: str) -> None:
        self._track(write_json(report.model_dump(), self._path(name)))

    def _run_eval(self) -> None:
        (path,) = _require(self.config, "scores")
        s = self._load(path)
        report = evaluate(s, self.config.far_points)
        curve = roc_curve(s)

        self._write_report(report, "report.json")
        self._track(write_roc(curve, self._path("roc.csv")))
        svg = generate_roc_svg(
            curve,
            title=f"ROC {path.name}",
            eer=report.eer,
            width=self.config.svg_width,
            height=self.config.svg_height,
        )
        self._track(write_roc_svg(svg, self._path("roc.svg")))

    def _run_fuse(self) -> None:
        config = self.config
        vis_path, ir_path = _require(config, "scores_vis", "scores_ir")
        vis = self._load(vis_path)
        ir = self._load(ir_path)

        q_vis = modality_quality(vis, config.sawf_reference_far)
        q_ir = modality_quality(ir, config.sawf_reference_far)
        sawf = sawf_weights(q_vis, q_ir, config.sawf_tie_epsilon)
        by_eer = eer_weights(curve_eer(roc_curve(vis)), curve_eer(roc_curve(ir)))

        reports: Dict[str, BiometricReport] = {
            "visible": evaluate(vis, config.far_points),
            "infrared": evaluate(ir, config.far_points),
        }
        for rule in FUSION_RULES:
            if rule == "sawf":
                fused = fuse_weighted(sawf, vis, ir)
            elif rule == "eer_weighted":
                fused = fuse_weighted(by_eer, vis, ir)
            else:
                fused = fuse_baseline(rule, vis, ir)
            self._track(write_scores(fused, self._path(f"fused_{rule}.csv")))
            reports[rule] = evaluate(fused, config.far_points)
            self._write_report(reports[rule], f"report_{rule}.json")

        self._track(write_comparison(reports, config.far_points, self._path("comparison.csv")))
        self._track(
            write_json(
                {
                    "reference_far": config.sawf_reference_far,
                    "visible": q_vis.model_dump(),
                    "infrared": q_ir.model_dump(),
                    "sawf": sawf.model_dump(),
                    "eer_weighted": by_eer.model_dump(),
                },
                self._path("weights.json"),
            )
        )

    def _run_fid(self) -> None:
        x_path, y_path = _require(self.config, "features_x", "features_y")
        value = fid(load_features(x_path), load_features(y_path))
        self._track(write_json({"fid": value}, self._path("fid.json")))

    def _run_losses(self) -> None:
        config = self.config
        directory, embeddings_path = _require(config, "tensors", "embeddings")
        bundle = ConversionBundle.from_tensors(
            **{name: read_tensor(directory / f"{name}.tnsr") for name in BUNDLE_FIELDS}
        )
        probe = DiscriminatorProbe(
            **{field: read_tensor(directory / f"{name}.tnsr") for field, name in PROBE_TENSORS.items()}
        )

        embeddings = load_features(embeddings_path)
        if embeddings.n != 2:
            raise ShapeError(
                f"{embeddings_path}: expected 2 embedding rows (visible, infrared), got {embeddings.n}"
            )
        report = evaluate_losses(
            probe,
            bundle,
            Embedding128(values=embeddings.data[0]),
            Embedding128(values=embeddings.data[1]),
            LossWeights(
                lambda_cyc=config.lambda_cyc,
                lambda_syn=config.lambda_syn,
                lambda_idr=config.lambda_idr,
            ),
            clamp=config.log_clamp,
        )
        self._track(write_json(report.model_dump(), self._path("losses.json")))

    def _run_netspec(self) -> str:
        config = self.config
        net = resolve_network(config.network)
        input_shape = (net.input_channels, config.input_size, config.input_size)
        layers = describe(net, input_shape)
        total = param_count(net)
        try:
            rf: Optional[int] = receptive_field(net)
        except UnsupportedLayerError:
            rf = None

        empirical = None
        if config.empirical:
            empirical = empirical_receptive_field(
                net, config.seed, config.input_size, config.probe_max_channels
            )

        text = netspec_text(net.name, input_shape, layers, total, rf, empirical)
        self._track(write_text(text, self._path("netspec.txt")))
        self._track(
            write_json(
                {
                    "name": net.name,
                    "input_shape": list(input_shape),
                    "layers": layers,
                    "params": total,
                    "receptive_field": rf,
                    "empirical_receptive_field": empirical,
                },
                self._path("netspec.json"),
            )
        )
        return text

    def _run_synth(self) -> None:
        config = self.config
        if config.pair:
            vis, ir = synth_pair(config.seed, config.n_genuine, config.n_impostor, config.synth, config.synth_ir)
            self._track(write_scores(vis, self._path("scores_vis.csv")))
            self._track(write_scores(ir, self._path("scores_ir.csv")))
            return
        s = synth_scores(
            config.seed,
            config.n_genuine,
            config.n_impostor,
            config.synth.genuine_mean,
            config.synth.genuine_sd,
            config.synth.impostor_mean,
            config.synth.impostor_sd,
        )
        self._track(write_scores(s, self._path("scores.csv")))

    def _run_reference(self) -> str:
        config = self.config
        names = [config.setting] if config.setting is not None else list(PUBLISHED)
        payload = {}
        lines = []
        for name in names:
            weights = reference_sawf_weights(name, config.sawf_tie_epsilon)
            entry = PUBLISHED[name]
            payload[name] = {
                "visible": entry.visible.quality().model_dump(),
                "infrared": entry.infrared.quality().model_dump(),
                "sawf": weights.model_dump(),
                "published_fusion": [row.model_dump() for row in entry.fusion],
            }
            lines.append(f"{name}: w1={weights.w1:.6f} w2={weights.w2:.6f}")
        self._track(write_json(payload, self._path("reference.json")))
        return "\n".join(lines) + "\n"


def run(config: RunConfig) -> RunResult:
    return EvalRunner(config).run()
