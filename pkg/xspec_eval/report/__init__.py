"""
Rendered artifacts: deterministic JSON/CSV text, ROC plots and tables
"""

from xspec_eval.report.writers import format_float, dump_json, write_json, write_text
from xspec_eval.report.svg import generate_roc_svg, write_roc_svg
from xspec_eval.report.tables import comparison_frame, write_comparison, netspec_text

__all__ = [
    "format_float",
    "dump_json",
    "write_json",
    "write_text",
    "generate_roc_svg",
    "write_roc_svg",
    "comparison_frame",
    "write_comparison",
    "netspec_text",
]
