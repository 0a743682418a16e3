"""Matrix and graph serialization: CSV, raw binary, PGM heatmap, edge lists."""
from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .graph import INF, DistMatrix, Graph

MAGIC = b"APSP"
INF_SENTINEL = 2**64 - 1
_HEADER = struct.Struct("<4sQI")  # magic, n, width


def distance_csv(m: DistMatrix) -> str:
    """Rows of comma-separated integers with the literal INF for unreachable."""
    lines = []
    for row in m.data:
        lines.append(",".join("INF" if not np.isfinite(x) else str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def write_distance_csv(m: DistMatrix, path: str | Path) -> None:
    Path(path).write_text(distance_csv(m))


def write_distance_binary(m: DistMatrix, path: str | Path) -> None:
    """Little-endian header (magic, n, width) then row-major uint64 with the
    max value as the unreachable sentinel."""
    raw = np.where(np.isfinite(m.data), m.data, 0).astype("<u8")
    raw[~np.isfinite(m.data)] = INF_SENTINEL
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, m.n, 64))
        fh.write(raw.tobytes())


def read_distance_binary(path: str | Path) -> DistMatrix:
    blob = Path(path).read_bytes()
    magic, n, width = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise ValueError(f"bad magic {magic!r}")
    if width != 64:
        raise ValueError(f"unsupported stored width {width}")
    raw = np.frombuffer(blob, dtype="<u8", offset=_HEADER.size).reshape(n, n)
    out = raw.astype(np.float64)
    out[raw == INF_SENTINEL] = INF
    return DistMatrix(out)


def write_heatmap_pgm(m: DistMatrix, path: str | Path) -> None:
    """Grayscale PGM of the distance matrix: darker = closer, white = unreachable."""
    finite = np.isfinite(m.data)
    max_d = m.data[finite].max()
    gray = np.full(m.data.shape, 255, dtype=np.uint8)
    if max_d > 0:
        gray[finite] = np.round(230.0 * m.data[finite] / max_d).astype(np.uint8)
    else:
        gray[finite] = 0
    with open(path, "wb") as fh:
        fh.write(f"P5\n{m.n} {m.n}\n255\n".encode())
        fh.write(gray.tobytes())


def edge_list_text(g: Graph) -> str:
    """Edge-list format with an explicit "#n <count>" header."""
    lines = [f"#n {g.n}"]
    for u, v, w in g.edges:
        lines.append(f"{u} {v} {w}")
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(edge_list_text(g))
