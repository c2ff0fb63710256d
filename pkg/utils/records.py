"""
Experiment records: CSV tables plus one JSON sidecar per run.

Tables hold only seed-determined values so reruns are byte-identical; the
wall-clock lives in the sidecar.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from pathlib import Path
from typing import Any, Iterable, Sequence

from pydantic import BaseModel, Field

from config.config import CODE_VERSION, format_float

logger = logging.getLogger(__name__)


class ExperimentRecord(BaseModel):
    """Provenance of one CLI run."""

    command: str = Field(description="Subcommand that produced the tables, e.g. 'walk run'")
    config: dict[str, Any] = Field(description="Workspace and flag snapshot")
    tables: list[str] = Field(default_factory=list, description="CSV file names relative to the record")
    wall_clock: float = Field(default=0.0, description="Seconds spent producing the tables")
    code_version: str = Field(default=CODE_VERSION)


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    if value is None:
        return ""
    return str(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """CSV text with '\\n' line endings and 17-digit floats."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


class RecordWriter:
    """Collects the tables of one run under out_dir/<stem>.*"""

    def __init__(self, out_dir: Path, stem: str, command: str, config: dict[str, Any]):
        self.out_dir = Path(out_dir)
        self.stem = stem
        self.record = ExperimentRecord(command=command, config=config)
        self._started = time.perf_counter()

    def table(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        file_name = f"{self.stem}.{name}.csv"
        if file_name in self.record.tables:
            raise ValueError(f"table {file_name} written twice in one record")
        path = self.out_dir / file_name
        path.write_text(render_csv(header, rows), encoding="utf-8")
        self.record.tables.append(file_name)
        logger.debug("wrote %s", path)
        return path

    def close(self) -> Path:
        self.record.wall_clock = time.perf_counter() - self._started
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / f"{self.stem}.record.json"
        path.write_text(json.dumps(self.record.model_dump(), indent=2, sort_keys=True), encoding="utf-8")
        return path


def load_record(path: str | Path) -> tuple[ExperimentRecord | None, str]:
    p = Path(path)
    try:
        return ExperimentRecord.model_validate_json(p.read_text(encoding="utf-8")), f"Loaded {p}"
    except FileNotFoundError:
        return None, f"Record not found: {p}"
    except ValueError as e:
        return None, f"Record {p} is invalid: {e}"
