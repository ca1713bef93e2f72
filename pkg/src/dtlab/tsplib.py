"""TSPLIB-style instance files plus a JSON sidecar for generator metadata.

Supported EDGE_WEIGHT_TYPE values:

* ``EUC_2D``   -- plane points under the Euclidean metric
* ``HEX_2D``   -- plane points under the regular-hexagon gauge (nonstandard
  tag, same NODE_COORD_SECTION layout as EUC_2D)
* ``EXPLICIT`` with ``EDGE_WEIGHT_FORMAT: FULL_MATRIX``

Distances are kept as floats; no TSPLIB integer rounding is applied.  A
``foo.tsp`` may have a ``foo.json`` sidecar carrying everything a distance
matrix cannot: family name and parameters, canonical root, analytic weights,
the reference tour, the expected spanning-tree edges and drawing layout.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InputError, ParseError
from .metric import MetricInstance

_KIND_TO_TAG = {"euclidean": "EUC_2D", "hexagonal": "HEX_2D"}
_TAG_TO_KIND = {v: k for k, v in _KIND_TO_TAG.items()}


def sidecar_path(path) -> Path:
    return Path(path).with_suffix(".json")


def write_tsplib(inst: MetricInstance, path, name: str | None = None) -> None:
    """Write a metric instance; point metrics keep full coordinate precision,
    explicit matrices are serialized with 12 significant digits."""
    path = Path(path)
    lines = [f"NAME : {name or path.stem}", "TYPE : TSP", f"DIMENSION : {inst.n}"]
    if inst.kind in _KIND_TO_TAG:
        if inst.coords is None:
            raise InputError(f"{inst.kind} instance has no coordinates")
        lines.append(f"EDGE_WEIGHT_TYPE : {_KIND_TO_TAG[inst.kind]}")
        lines.append("NODE_COORD_SECTION")
        for i, (x, y) in enumerate(inst.coords):
            lines.append(f"{i + 1} {x:.17g} {y:.17g}")
    else:
        lines.append("EDGE_WEIGHT_TYPE : EXPLICIT")
        lines.append("EDGE_WEIGHT_FORMAT : FULL_MATRIX")
        lines.append("EDGE_WEIGHT_SECTION")
        for row in inst.matrix:
            lines.append(" ".join(f"{x:.12g}" for x in row))
    lines.append("EOF")
    path.write_text("\n".join(lines) + "\n")


def read_tsplib(path) -> MetricInstance:
    path = Path(path)
    try:
        raw = path.read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    header: dict[str, str] = {}
    coords: dict[int, tuple[float, float]] = {}
    weights: list[float] = []
    section = None
    header_lines: dict[str, int] = {}
    last_line = 0
    for line_no, line in enumerate(raw.splitlines(), start=1):
        text = line.strip()
        if not text:
            continue
        last_line = line_no
        if text.upper() == "EOF":
            break
        if section == "coords":
            parts = text.split()
            if len(parts) != 3:
                raise ParseError(f"expected 'index x y', got {text!r}", line_no)
            try:
                idx, x, y = int(parts[0]), float(parts[1]), float(parts[2])
            except ValueError:
                raise ParseError(f"bad node coordinate line {text!r}", line_no) from None
            if idx in coords:
                raise ParseError(f"duplicate node index {idx}", line_no)
            coords[idx] = (x, y)
            n = _dimension(header, header_lines)
            if len(coords) == n:
                section = None
            continue
        if section == "weights":
            try:
                weights.extend(float(t) for t in text.split())
            except ValueError:
                raise ParseError(f"bad weight entry in {text!r}", line_no) from None
            n = _dimension(header, header_lines)
            if len(weights) > n * n:
                raise ParseError(
                    f"too many EDGE_WEIGHT_SECTION entries (expected {n * n})",
                    line_no)
            if len(weights) == n * n:
                section = None
            continue
        if text.upper().startswith("NODE_COORD_SECTION"):
            _dimension(header, header_lines, need_line=line_no)
            section = "coords"
            continue
        if text.upper().startswith("EDGE_WEIGHT_SECTION"):
            _dimension(header, header_lines, need_line=line_no)
            section = "weights"
            continue
        if ":" in text:
            key, _, value = text.partition(":")
            header[key.strip().upper()] = value.strip()
            header_lines[key.strip().upper()] = line_no
            continue
        raise ParseError(f"unrecognized line {text!r}", line_no)

    n = _dimension(header, header_lines, need_line=last_line)
    tag = header.get("EDGE_WEIGHT_TYPE", "")
    if tag in _TAG_TO_KIND:
        if len(coords) != n:
            raise ParseError(
                f"NODE_COORD_SECTION has {len(coords)} nodes, DIMENSION is {n}",
                last_line)
        missing = [i for i in range(1, n + 1) if i not in coords]
        if missing:
            raise ParseError(f"missing node indices {missing[:4]}", last_line)
        pts = np.array([coords[i] for i in range(1, n + 1)])
        return MetricInstance.from_points(pts, kind=_TAG_TO_KIND[tag])
    if tag == "EXPLICIT":
        fmt = header.get("EDGE_WEIGHT_FORMAT", "")
        if fmt != "FULL_MATRIX":
            raise ParseError(
                f"unsupported EDGE_WEIGHT_FORMAT {fmt!r} (only FULL_MATRIX)",
                header_lines.get("EDGE_WEIGHT_FORMAT", last_line))
        if len(weights) != n * n:
            raise ParseError(
                f"EDGE_WEIGHT_SECTION has {len(weights)} entries, expected {n * n}",
                last_line)
        mat = np.array(weights).reshape(n, n)
        return MetricInstance.from_matrix(mat)
    raise ParseError(
        f"unsupported EDGE_WEIGHT_TYPE {tag!r}",
        header_lines.get("EDGE_WEIGHT_TYPE", last_line))


def _dimension(header, header_lines, need_line: int | None = None) -> int:
    if "DIMENSION" not in header:
        raise ParseError("DIMENSION must appear before any data section",
                         need_line)
    try:
        n = int(header["DIMENSION"])
    except ValueError:
        raise ParseError(f"bad DIMENSION {header['DIMENSION']!r}",
                         header_lines.get("DIMENSION")) from None
    if n < 1:
        raise ParseError(f"bad DIMENSION {n}", header_lines.get("DIMENSION"))
    return n


def write_sidecar(tsp_path, payload: dict) -> None:
    sidecar_path(tsp_path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_sidecar(tsp_path) -> dict | None:
    p = sidecar_path(tsp_path)
    if not p.exists():
        return None
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"bad sidecar {p}: {e.msg}", e.lineno) from None
    if not isinstance(data, dict):
        raise ParseError(f"bad sidecar {p}: expected a JSON object")
    return data
