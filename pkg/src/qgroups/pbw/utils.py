from __future__ import annotations

import csv
import io
import json
import logging
from typing import Any, Iterable, Sequence


def setup_cli_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
    )


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([str(c) for c in row])
    return buf.getvalue().rstrip("\n")


def to_json_text(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)
