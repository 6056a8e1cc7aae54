#!/usr/bin/env python3

# Copyright (c) carleson-lab contributors.
# All rights reserved.
#
# This source code is licensed under the BSD-style license described in
# pyproject.toml.
#

"""
Result artifacts.

A report is a JSON object

    command, version, config, seed, result, status, timestamp,
    determinism_hash

where `determinism_hash` is the sha256 of the canonical payload without
`timestamp` and without the hash itself: the same config and seed give the
same hash. Floats are written with 17 significant digits, non-finite floats
as "inf", "-inf" and "nan", complex numbers in descriptor form (-0.3+0.1i).

The CSV projection holds the `rows` of the result, preceded by `#` lines
carrying the rest of the envelope, one `# key = <json>` per line.
"""

import csv
import datetime
import enum
import hashlib
import io
import json
import logging
import math
import sys
from typing import Any, Dict, Iterable, List, Optional, TextIO

import numpy as np
from prettytable import PrettyTable

from carleson_lab.internal import constants
from carleson_lab.internal.exceptions import ConfigError
from carleson_lab.internal.helpers import format_complex

logger = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_VIOLATION = "violation"

_HASH_EXCLUDED = ("timestamp", "determinism_hash")
# where and how a report is written does not change its content
_CONFIG_HASH_EXCLUDED = ("out", "format", "threads")
_ENVELOPE = ("command", "version", "config", "seed", "status", "timestamp", "determinism_hash")


def jsonable(value: Any) -> Any:
    """Plain JSON data for records, numpy scalars, enums and complex numbers."""
    if hasattr(value, "to_record"):
        return jsonable(value.to_record())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in value]
    if isinstance(value, enum.Enum):
        return jsonable(value.value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return format_complex(complex(value))
    if value is None or isinstance(value, str):
        return value
    return str(value)


def _float_text(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError("non-finite float {!r} in a report".format(value))
    text = "{:.{}g}".format(value, constants.REPORT_FLOAT_DIGITS)
    if text.lstrip("-").isdigit():
        # keep floats floats when read back
        text += ".0"
    return text


class ReportEncoder(json.JSONEncoder):
    """
    JSON encoder writing floats with REPORT_FLOAT_DIGITS significant digits.
    Non-finite floats are turned into strings by `jsonable` beforehand.
    """

    def iterencode(self, o, _one_shot=False):
        if self.ensure_ascii:
            encoder = json.encoder.encode_basestring_ascii
        else:
            encoder = json.encoder.encode_basestring
        # pylint: disable=protected-access
        return json.encoder._make_iterencode(
            {} if self.check_circular else None,
            self.default,
            encoder,
            self.indent,
            _float_text,
            self.key_separator,
            self.item_separator,
            self.sort_keys,
            self.skipkeys,
            _one_shot,
        )(o, 0)


def dumps(value: Any, **kwargs) -> str:
    return json.dumps(value, cls=ReportEncoder, allow_nan=False, **kwargs)


def canonical_json(record: Dict[str, Any]) -> str:
    return dumps(record, sort_keys=True, separators=(",", ":"))


def determinism_hash(record: Dict[str, Any]) -> str:
    payload = {k: v for k, v in record.items() if k not in _HASH_EXCLUDED}
    if isinstance(payload.get("config"), dict):
        payload["config"] = {
            k: v for k, v in payload["config"].items() if k not in _CONFIG_HASH_EXCLUDED
        }
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def build_report(
    command: str,
    config,
    result: Any,
    violation: bool = False,
    version: str = "",
    timestamp: Optional[str] = None,
) -> Dict[str, Any]:
    record = {
        "command": command,
        "version": version,
        "config": jsonable(config),
        "seed": int(config.seed),
        "result": jsonable(result),
        "status": STATUS_VIOLATION if violation else STATUS_OK,
        "timestamp": timestamp
        or datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
    }
    record["determinism_hash"] = determinism_hash(record)
    return record


def result_rows(result: Dict[str, Any]) -> List[Dict[str, Any]]:
    """The CSV projection of a result record."""
    rows = result.get("rows") if isinstance(result, dict) else None
    if isinstance(rows, list):
        return rows
    if isinstance(result, dict):
        return [{k: v for k, v in result.items() if not isinstance(v, (dict, list))}]
    return [{"value": result}]


def _cell(value: Any) -> str:
    if isinstance(value, str):
        return value
    return dumps(value, separators=(",", ":"))


def _uncell(text: str) -> Any:
    try:
        return json.loads(text)
    except ValueError:
        return text


def dump_json(record: Dict[str, Any], stream: TextIO):
    stream.write(dumps(record, indent=2))
    stream.write("\n")


def dump_csv(record: Dict[str, Any], stream: TextIO):
    for key in _ENVELOPE:
        stream.write("# {} = {}\n".format(key, dumps(record[key], sort_keys=True)))
    rows = result_rows(record["result"])
    columns: List[str] = []
    for row in rows:
        columns.extend(k for k in row if k not in columns)
    writer = csv.DictWriter(stream, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _cell(v) for k, v in row.items()})


def write_report(record: Dict[str, Any], out: Optional[str], fmt: str = "json") -> None:
    """Writes the report to `out` (stdout when None) in json or csv."""
    dump = dump_csv if fmt == "csv" else dump_json
    if out is None:
        dump(record, sys.stdout)
        sys.stdout.flush()
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as f:
            dump(record, f)
    except OSError as e:
        raise ConfigError("cannot write report to {}: {}".format(out, e), out=out) from e
    logger.info("%s report written to %s (%s)", record["command"], out, fmt)


def loads_report(text: str) -> Dict[str, Any]:
    """Parses a JSON or CSV report. CSV reports come back as the envelope plus
    `rows`."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return json.loads(stripped)
    envelope: Dict[str, Any] = {}
    body = io.StringIO()
    for line in text.splitlines(keepends=True):
        if line.startswith("# "):
            key, _, value = line[2:].partition(" = ")
            envelope[key.strip()] = json.loads(value)
        else:
            body.write(line)
    body.seek(0)
    envelope["rows"] = [
        {k: _uncell(v) for k, v in row.items() if v != ""} for row in csv.DictReader(body)
    ]
    return envelope


def read_report(path: str) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as f:
            return loads_report(f.read())
    except OSError as e:
        raise ConfigError("cannot read report {}: {}".format(path, e), path=path) from e


def summary_table(rows: Iterable[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    """A terminal table of result rows, floats shortened."""
    rows = list(rows)
    if not rows:
        return ""
    columns = columns or list(rows[0])
    table = PrettyTable(columns)
    table.align = "r"
    for row in rows:
        table.add_row([_short(row.get(c)) for c in columns])
    return table.get_string()


def _short(value: Any) -> str:
    if isinstance(value, float):
        return "{:.6g}".format(value)
    if value is None:
        return "-"
    return str(value)


def publish(config, result: Any, violation: bool = False) -> int:
    """
    Writes the report of an experiment as configured (`out`, `format`) and
    returns the exit status: 0, or 2 when an audited threshold was violated.
    """
    record = build_report(config.command, config, result, violation, constants.VERSION)
    write_report(record, config.out, config.format)
    if config.out is not None:
        table = summary_table(result_rows(record["result"]))
        if table:
            print(table)
    if violation:
        logger.warning("%s: audited threshold violated", config.command)
        return 2
    return 0
