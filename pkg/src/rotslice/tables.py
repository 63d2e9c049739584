"""Result tables and experiment configs.

A table file is plain text:

    # rotslice 0.1.0
    #@ command = ap-scan
    #@ p = 3
    # rows = 5
    k
    0
    ...

Lines starting with ``#@`` are the full, resolved configuration, so a table
can be fed back to ``rotslice rerun``.  Other ``#`` lines are metadata.
Columns are tab separated; exact rationals are written as ``p/q``.
"""
from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from .errors import ConfigError

VERSION = "0.1.0"


def fmt(value: Any) -> str:
    """Canonical string for a table cell."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (tuple, list, frozenset, set)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return ",".join(fmt(v) for v in items)
    if value is None:
        return ""
    return str(value)


def fmt_decimal(x: Fraction, digits: int = 30) -> str:
    """``x`` rounded to ``digits`` significant decimal digits, deterministic."""
    x = Fraction(x)
    if x == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


@dataclass
class ResultTable:
    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)
    config: List[Tuple[str, str]] = field(default_factory=list)
    metadata: List[Tuple[str, Any]] = field(default_factory=list)

    def add(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values, schema has {len(self.columns)}")
        self.rows.append(list(values))

    def meta(self, key: str, value: Any) -> None:
        self.metadata.append((key, value))

    def render(self) -> str:
        lines = [f"# rotslice {VERSION}"]
        lines += [f"#@ {k} = {v}" for k, v in self.config]
        lines += [f"# {k} = {fmt(v)}" for k, v in self.metadata]
        lines.append(f"# rows = {len(self.rows)}")
        lines.append("\t".join(self.columns))
        lines += ["\t".join(fmt(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the same directory and rename it into place."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(prefix=".rotslice-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def parse_config_text(text: str, prefix: str = "") -> List[Tuple[int, str, str]]:
    """``(line number, key, value)`` from ``key = value`` lines.

    With ``prefix`` (e.g. ``"#@"``) only lines carrying it are read and the
    prefix is stripped; otherwise blank lines and ``#`` comments are skipped.
    """
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if prefix:
            if not line.startswith(prefix):
                continue
            line = line[len(prefix):].strip()
        elif not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError("expected 'key = value'", line=no)
        key = key.strip()
        if not key:
            raise ConfigError("empty key", line=no)
        out.append((no, key, value.strip()))
    return out


def read_table(text: str) -> Dict[str, Any]:
    """Parse a rendered table back into config, metadata, columns and rows."""
    config, meta, body = [], [], []
    for line in text.splitlines():
        if line.startswith("#@"):
            k, _, v = line[2:].partition("=")
            config.append((k.strip(), v.strip()))
        elif line.startswith("#"):
            k, _, v = line[1:].partition("=")
            meta.append((k.strip(), v.strip()))
        else:
            body.append(line.split("\t"))
    columns = body[0] if body else []
    return {"config": config, "metadata": meta, "columns": columns, "rows": body[1:]}


__all__ = ["VERSION", "ResultTable", "fmt", "fmt_decimal", "write_atomic", "parse_config_text", "read_table"]
