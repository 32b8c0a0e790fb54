"""
Human-readable tables: the fusion comparison and the network layer report.
"""

from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import pandas as pd

from xspec_eval.report.writers import format_float
from xspec_eval.schema.metrics import BiometricReport


def comparison_frame(reports: Dict[str, BiometricReport], far_points: Sequence[float]) -> pd.DataFrame:
    """One row per rule in insertion order; GAR and EER as percentages"""
    rows = []
    for rule, report in reports.items():
        row = {"rule": rule}
        for level in far_points:
            row[f"gar_pct_at_far_{format_float(level)}"] = format_float(
                100.0 * report.gar_at_far[format_float(level)]
            )
        row["eer_pct"] = format_float(100.0 * report.eer)
        row["d_prime"] = format_float(report.d_prime)
        row["auc"] = format_float(report.auc)
        rows.append(row)
    return pd.DataFrame(rows)


def write_comparison(
    reports: Dict[str, BiometricReport], far_points: Sequence[float], path: Union[str, Path]
) -> Path:
    path = Path(path)
    comparison_frame(reports, far_points).to_csv(path, index=False, lineterminator="\n")
    return path


def netspec_text(
    name: str,
    input_shape: Sequence[int],
    layers: List[dict],
    total_params: int,
    receptive_field: Optional[int],
    empirical_receptive_field: Optional[int] = None,
) -> str:
    header = ["layer", "kind", "kernel", "stride", "padding", "pad_mode", "in_ch", "out_ch", "output", "params"]
    body = [
        [
            str(row["layer"]),
            row["kind"],
            str(row["kernel"]),
            str(row["stride"]),
            str(row["padding"]),
            row["pad_mode"],
            str(row["in_ch"]),
            str(row["out_ch"]),
            "x".join(str(v) for v in row["output_shape"]),
            str(row["params"]),
        ]
        for row in layers
    ]
    widths = [max(len(cell) for cell in column) for column in zip(header, *body)]

    def render(cells: List[str]) -> str:
        return "  ".join(cell.rjust(width) for cell, width in zip(cells, widths)).rstrip()

    lines = [
        f"network: {name}",
        f"input: {'x'.join(str(v) for v in input_shape)}",
        "",
        render(header),
    ]
    lines += [render(cells) for cells in body]
    lines += [
        "",
        f"parameters: {total_params}",
        f"receptive_field: {receptive_field if receptive_field is not None else 'n/a (transposed convolution)'}",
    ]
    if empirical_receptive_field is not None:
        lines.append(f"empirical_receptive_field: {empirical_receptive_field}")
    return "\n".join(lines) + "\n"
