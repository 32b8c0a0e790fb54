"""Console script for xspec-eval."""

import json
import sys
from functools import wraps
from typing import List, Optional

import click
from loguru import logger

from xspec_eval.errors import ArgumentError
from xspec_eval.runner import RunConfig, run
from xspec_eval.schema.scores import SynthParams
from xspec_eval.settings import EvalSettings


def _parse_far_points(text: Optional[str]) -> Optional[List[float]]:
    if text is None:
        return None
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ArgumentError(f"--far-points must be a comma-separated list of numbers, got {text!r}")


def _configure_logging(settings: EvalSettings, verbose: bool, log_file: Optional[str]) -> List[int]:
    logger.remove()
    logger.enable("xspec_eval")
    sinks = []
    if verbose:
        sinks.append(logger.add(sys.stderr, level="DEBUG"))
    log_file = log_file or settings.log_file
    if log_file:
        sinks.append(logger.add(log_file, level=settings.log_level, enqueue=True))
    return sinks


def _report_error(e: Exception) -> None:
    kind = getattr(e, "kind", type(e).__name__)
    record = {"error": kind, "message": str(e)}
    click.echo(json.dumps(record), err=True)


def _execute(common: dict, overrides: dict) -> None:
    """Build the config, run it, and map failures onto the one-line error contract"""
    settings = EvalSettings()
    sinks = _configure_logging(settings, common["verbose"], common["log_file"])
    try:
        config = RunConfig.from_settings(
            settings,
            out=common["out"],
            far_points=_parse_far_points(common["far_points"]),
            normalization=common["normalize"],
            seed=common["seed"],
            **overrides,
        )
        result = run(config)
    except (ValueError, OSError) as e:
        _report_error(e)
        sys.exit(1)
    finally:
        for sink in sinks:
            logger.remove(sink)
    if result.stdout:
        click.echo(result.stdout, nl=False)


def common_options(func):
    @click.option("--out", "out", required=True, type=click.Path(file_okay=False), help="Output directory")
    @click.option("--far-points", default=None, help="Comma-separated FAR levels, default 0.1,0.001")
    @click.option(
        "--normalize",
        type=click.Choice(["minmax", "zscore", "none"]),
        default=None,
        help="Score normalization applied to each input set",
    )
    @click.option("--seed", type=int, default=None)
    @click.option("--verbose", is_flag=True, help="Log to standard error")
    @click.option("--log-file", default=None, type=click.Path(dir_okay=False))
    @wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)

    return wrapper


def _pop_common(kwargs: dict) -> dict:
    return {k: kwargs.pop(k) for k in ("out", "far_points", "normalize", "seed", "verbose", "log_file")}


@click.group()
@click.version_option(package_name="xspec-eval")
def main():
    """Cross-spectral biometric evaluation and score fusion."""


@main.command("eval")
@click.option("--scores", required=True, type=click.Path(dir_okay=False))
@click.option("--distance", is_flag=True, help="Scores are distances; convert to similarities")
@common_options
def eval_command(**kwargs):
    """GAR@FAR, EER, d-prime and AUC of one score set, with ROC CSV and SVG."""
    common = _pop_common(kwargs)
    _execute(common, {"subcommand": "eval", **kwargs})


@main.command("fuse")
@click.option("--scores-vis", required=True, type=click.Path(dir_okay=False))
@click.option("--scores-ir", required=True, type=click.Path(dir_okay=False))
@click.option("--sawf-ref-far", "sawf_reference_far", type=float, default=None)
@click.option("--distance", is_flag=True, help="Scores are distances; convert to similarities")
@common_options
def fuse_command(**kwargs):
    """Fuse visible and infrared scores with SAWF and the baseline rules."""
    common = _pop_common(kwargs)
    _execute(common, {"subcommand": "fuse", **kwargs})


@main.command("fid")
@click.option("--features-x", required=True, type=click.Path(dir_okay=False))
@click.option("--features-y", required=True, type=click.Path(dir_okay=False))
@common_options
def fid_command(**kwargs):
    """Frechet distance between two feature CSVs."""
    common = _pop_common(kwargs)
    _execute(common, {"subcommand": "fid", **kwargs})


@main.command("losses")
@click.option("--tensors", required=True, type=click.Path(file_okay=False))
@click.option("--embeddings", required=True, type=click.Path(dir_okay=False))
@click.option("--lambda-cyc", type=float, default=None)
@click.option("--lambda-syn", type=float, default=None)
@click.option("--lambda-idr", type=float, default=None)
@common_options
def losses_command(**kwargs):
    """Evaluate the composite objective from tensor files and two embeddings."""
    common = _pop_common(kwargs)
    _execute(common, {"subcommand": "losses", **kwargs})


@main.command("netspec")
@click.option("--network", default="discriminator", help="generator, discriminator or a JSON path")
@click.option("--input-size", type=int, default=256)
@click.option("--empirical", is_flag=True, help="Also probe the receptive field numerically")
@common_options
def netspec_command(**kwargs):
    """Layer shapes, parameter count and receptive field of a network."""
    common = _pop_common(kwargs)
    _execute(common, {"subcommand": "netspec", **kwargs})


@main.command("synth")
@click.option("--n-genuine", type=int, default=500)
@click.option("--n-impostor", type=int, default=500)
@click.option("--genuine-mean", type=float, default=0.7)
@click.option("--genuine-sd", type=float, default=0.1)
@click.option("--impostor-mean", type=float, default=0.4)
@click.option("--impostor-sd", type=float, default=0.1)
@click.option("--pair", is_flag=True, help="Write a visible/infrared pair with shared trial keys")
@common_options
def synth_command(n_genuine, n_impostor, genuine_mean, genuine_sd, impostor_mean, impostor_sd, pair, **kwargs):
    """Seeded synthetic Score CSV."""
    common = _pop_common(kwargs)
    params = SynthParams(
        genuine_mean=genuine_mean,
        genuine_sd=genuine_sd,
        impostor_mean=impostor_mean,
        impostor_sd=impostor_sd,
    )
    _execute(
        common,
        {
            "subcommand": "synth",
            "n_genuine": n_genuine,
            "n_impostor": n_impostor,
            "synth": params,
            "pair": pair,
        },
    )


@main.command("reference")
@click.option("--setting", default=None, help="casia, tinders_1.5m, tinders_50m or tinders_106m")
@common_options
def reference_command(**kwargs):
    """SAWF weights implied by published single-modality results."""
    common = _pop_common(kwargs)
    _execute(common, {"subcommand": "reference", **kwargs})


if __name__ == "__main__":
    main()
