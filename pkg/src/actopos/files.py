"""Text file formats: monoid tables and M-set action tables.

Monoid file: line 1 the order n, line 2 the identity index, then n rows of
n whitespace-separated indices (row a holds the products a*b).  M-set file:
line 1 a path to the monoid file (resolved against the M-set file's
directory), line 2 the carrier size k, then k rows of n indices (row x
holds the values x*m).
"""

from __future__ import annotations

from pathlib import Path

from .errors import RangeError, ValidationError
from .monoid import Monoid, validate_monoid
from .mset import RightMSet, validate_right_mset


def parse_monoid_text(text: str) -> Monoid:
    tokens = _line_tokens(text)
    if len(tokens) < 2:
        raise RangeError("monoid file needs an order line and an identity line")
    n = _int_line(tokens[0], "order")
    identity = _int_line(tokens[1], "identity")
    rows = tokens[2:]
    if len(rows) != n:
        raise RangeError(f"expected {n} table rows, found {len(rows)}")
    table = [[int(v) for v in row] for row in rows]
    return validate_monoid(table, identity)


def read_monoid_file(path: str | Path) -> Monoid:
    return parse_monoid_text(Path(path).read_text())


def monoid_to_text(M: Monoid) -> str:
    lines = [str(M.order), str(M.identity)]
    lines.extend(" ".join(str(v) for v in row) for row in M.table)
    return "\n".join(lines) + "\n"


def parse_mset_text(text: str, base_dir: str | Path) -> RightMSet:
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if len(lines) < 2:
        raise RangeError("M-set file needs a monoid path line and a size line")
    monoid_path = Path(lines[0])
    if not monoid_path.is_absolute():
        monoid_path = Path(base_dir) / monoid_path
    M = read_monoid_file(monoid_path)
    k = _int_line(lines[1].split(), "size")
    rows = [line.split() for line in lines[2:]]
    if len(rows) != k:
        raise RangeError(f"expected {k} action rows, found {len(rows)}")
    action = [[int(v) for v in row] for row in rows]
    return validate_right_mset(M, action)


def read_mset_file(path: str | Path) -> RightMSet:
    p = Path(path)
    return parse_mset_text(p.read_text(), p.parent)


def mset_to_text(X: RightMSet, monoid_path: str) -> str:
    lines = [monoid_path, str(X.size)]
    lines.extend(" ".join(str(v) for v in row) for row in X.action)
    return "\n".join(lines) + "\n"


def _line_tokens(text: str) -> list[list[str]]:
    out = []
    for line in text.splitlines():
        parts = line.split()
        if parts:
            out.append(parts)
    return out


def _int_line(parts: list[str], what: str) -> int:
    if len(parts) != 1:
        raise RangeError(f"{what} line must hold a single integer")
    try:
        return int(parts[0])
    except ValueError as exc:
        raise ValidationError(f"{what} line is not an integer: {parts[0]}") from exc
