"""
Strict CSV table reading shared by the score and feature loaders.

Rows are split with csv.reader so every record keeps its physical file line;
blank lines are skipped and rows whose field count differs from the header are
rejected. The frame is indexed by file line number (header is line 1).
"""

import csv
from pathlib import Path
from typing import List, Tuple

import pandas as pd

from xspec_eval.errors import ParseError


def read_csv_table(path: Path) -> Tuple[List[str], pd.DataFrame]:
    """Header fields and an all-string frame indexed by file line"""
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None:
                raise ParseError(f"{path}: empty file")
            if not header:
                raise ParseError(f"{path}: blank header line", line=1)

            lines: List[int] = []
            rows: List[List[str]] = []
            for row in reader:
                if not row:
                    continue
                if len(row) != len(header):
                    raise ParseError(
                        f"{path}: expected {len(header)} fields, found {len(row)}",
                        line=reader.line_num,
                    )
                lines.append(reader.line_num)
                rows.append(row)
    except UnicodeDecodeError as e:
        raise ParseError(f"{path}: not UTF-8 text ({e.reason})")
    except csv.Error as e:
        raise ParseError(f"{path}: {e}")

    frame = pd.DataFrame(rows, columns=header, index=pd.Index(lines, name="line"), dtype=str)
    return header, frame
