"""ASCII PLY, OBJ and CSV point-cloud exporters and readers."""

from __future__ import annotations

import csv
from enum import Enum
from pathlib import Path

import numpy as np

PLY_PROPS = ("x", "y", "z", "nx", "ny", "nz")
CSV_HEADER = list(PLY_PROPS)


class ExportFormat(str, Enum):
    PLY = "ply"
    OBJ = "obj"
    CSV = "csv"

    @classmethod
    def from_path(cls, path) -> "ExportFormat":
        return cls(Path(path).suffix.lstrip(".").lower())


DEFAULT_DIGITS = 9
MAX_DIGITS = 17


def _fmt(v: float, digits: int = DEFAULT_DIGITS) -> str:
    return f"{v:.{digits}g}"


def _rows(points, normals):
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    if normals is None:
        normals = np.zeros_like(points)
    normals = np.asarray(normals, dtype=float).reshape(-1, 3)
    if len(points) != len(normals):
        raise ValueError("points and normals differ in length")
    return np.hstack([points, normals])


def format_ply(points, normals=None, digits: int = DEFAULT_DIGITS) -> str:
    data = _rows(points, normals)
    lines = ["ply", "format ascii 1.0", f"element vertex {len(data)}"]
    lines += [f"property float {name}" for name in PLY_PROPS]
    lines.append("end_header")
    lines += [" ".join(_fmt(v, digits) for v in row) for row in data]
    return "\n".join(lines) + "\n"


def format_obj(points, normals=None, digits: int = DEFAULT_DIGITS) -> str:
    data = _rows(points, normals)
    lines = [f"v {_fmt(x, digits)} {_fmt(y, digits)} {_fmt(z, digits)}" for x, y, z in data[:, :3]]
    if normals is not None:
        lines += [f"vn {_fmt(x, digits)} {_fmt(y, digits)} {_fmt(z, digits)}" for x, y, z in data[:, 3:]]
    return "\n".join(lines) + "\n"


def format_csv(points, normals=None, digits: int = DEFAULT_DIGITS) -> str:
    data = _rows(points, normals)
    lines = [",".join(CSV_HEADER)]
    lines += [",".join(_fmt(v, digits) for v in row) for row in data]
    return "\n".join(lines) + "\n"


_FORMATTERS = {ExportFormat.PLY: format_ply, ExportFormat.OBJ: format_obj, ExportFormat.CSV: format_csv}


def format_cloud(points, normals=None, fmt: ExportFormat | str = ExportFormat.PLY,
                 digits: int = DEFAULT_DIGITS) -> str:
    if not 1 <= digits <= MAX_DIGITS:
        raise ValueError(f"digits must be in [1, {MAX_DIGITS}], got {digits}")
    return _FORMATTERS[ExportFormat(fmt)](points, normals, digits)


def write_cloud(path, points, normals=None, fmt: ExportFormat | str | None = None,
                digits: int = DEFAULT_DIGITS) -> None:
    fmt = ExportFormat(fmt) if fmt is not None else ExportFormat.from_path(path)
    text = format_cloud(points, normals, fmt, digits)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _read_ply(text: str):
    lines = text.splitlines()
    if not lines or lines[0].strip() != "ply":
        raise ValueError("not a PLY file")
    count, props, body_start = None, [], None
    for i, line in enumerate(lines[1:], start=1):
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "format" and parts[1] != "ascii":
            raise ValueError("only ASCII PLY is supported")
        if parts[:2] == ["element", "vertex"]:
            count = int(parts[2])
        elif parts[0] == "property" and count is not None:
            props.append(parts[-1])
        elif parts[0] == "end_header":
            body_start = i + 1
            break
    if count is None or body_start is None:
        raise ValueError("malformed PLY header")
    rows = [line.split() for line in lines[body_start:body_start + count]]
    if len(rows) != count:
        raise ValueError(f"PLY declares {count} vertices, found {len(rows)}")
    data = np.array(rows, dtype=float).reshape(count, len(props))
    cols = {name: data[:, j] for j, name in enumerate(props)}
    points = np.stack([cols[k] for k in "xyz"], axis=-1)
    normals = None
    if all(k in cols for k in ("nx", "ny", "nz")):
        normals = np.stack([cols[k] for k in ("nx", "ny", "nz")], axis=-1)
    return points, normals


def _read_obj(text: str):
    vs, vns = [], []
    for line in text.splitlines():
        parts = line.split()
        if parts and parts[0] == "v":
            vs.append([float(v) for v in parts[1:4]])
        elif parts and parts[0] == "vn":
            vns.append([float(v) for v in parts[1:4]])
    points = np.array(vs, dtype=float).reshape(-1, 3)
    normals = np.array(vns, dtype=float).reshape(-1, 3) if len(vns) == len(vs) and vns else None
    return points, normals


def _read_csv(text: str):
    reader = csv.DictReader(text.splitlines())
    rows = list(reader)
    fields = reader.fieldnames or []
    if not all(k in fields for k in "xyz"):
        raise ValueError("CSV needs x, y, z columns")
    points = np.array([[float(r[k]) for k in "xyz"] for r in rows], dtype=float).reshape(-1, 3)
    normals = None
    if all(k in fields for k in ("nx", "ny", "nz")):
        normals = np.array([[float(r[k]) for k in ("nx", "ny", "nz")] for r in rows], dtype=float).reshape(-1, 3)
    return points, normals


def read_cloud(path, fmt: ExportFormat | str | None = None):
    """Return ``(points, normals)``; ``normals`` is ``None`` if the file has none."""
    fmt = ExportFormat(fmt) if fmt is not None else ExportFormat.from_path(path)
    text = Path(path).read_text()
    return {ExportFormat.PLY: _read_ply, ExportFormat.OBJ: _read_obj, ExportFormat.CSV: _read_csv}[fmt](text)
