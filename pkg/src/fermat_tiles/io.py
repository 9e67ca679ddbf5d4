"""Atomic CSV / JSON / PGM writers."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path


def _atomic_write(path: str | os.PathLike, data: bytes) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
    return path


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def write_csv(path, header, rows) -> Path:
    return _atomic_write(path, csv_text(header, rows).encode())


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def write_json(path, obj) -> Path:
    return _atomic_write(path, json_text(obj).encode("utf-8"))


def pgm_bytes(matrix, maxval: int = 255) -> bytes:
    """Binary P5 image; row 0 of ``matrix`` is the top row."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    head = f"P5\n{cols} {rows}\n{maxval}\n".encode("ascii")
    body = bytes(v for row in matrix for v in row)
    return head + body


def write_pgm(path, matrix, maxval: int = 255) -> Path:
    for row in matrix:
        if any(not 0 <= v <= maxval for v in row):
            raise ValueError("pixel value out of range")
    return _atomic_write(path, pgm_bytes(matrix, maxval))


def scale_residues(matrix, modulus: int, maxval: int = 255) -> list[list[int]]:
    top = max(modulus - 1, 1)
    return [[v * maxval // top for v in row] for row in matrix]


def incidence_matrix(points, size: int, maxval: int = 255) -> list[list[int]]:
    """size x size grid, row = first coordinate, ``maxval`` where a point lies."""
    grid = [[0] * size for _ in range(size)]
    for x, y in points:
        grid[x][y] = maxval
    return grid
