"""CSV and binary PGM (P5) renderings of tables and twist matrices."""

from __future__ import annotations

import numpy as np

from .errors import ResourceLimitError

PGM_MAX_LEVEL = 10


def to_csv(entries) -> str:
    rows = np.asarray(entries).tolist()
    return "\n".join(",".join(str(int(v)) for v in row) for row in rows) + "\n"


def gray_levels(entries, max_value: int) -> np.ndarray:
    """floor(255 * e / max_value) per cell; all black when max_value is 0."""
    a = np.asarray(entries, dtype=np.int64)
    if max_value <= 0:
        return np.zeros(a.shape, dtype=np.uint8)
    return (255 * a // max_value).astype(np.uint8)


def to_pgm(entries, max_value: int, level: int | None = None) -> bytes:
    if level is not None and level > PGM_MAX_LEVEL:
        raise ResourceLimitError(f"PGM output is limited to level {PGM_MAX_LEVEL}, got {level}")
    pixels = gray_levels(entries, max_value)
    height, width = pixels.shape
    return f"P5\n{width} {height}\n255\n".encode("ascii") + pixels.tobytes()


def read_pgm(data: bytes) -> np.ndarray:
    """Parse a P5 image written by :func:`to_pgm`."""
    magic, dims, maxval, rest = data.split(b"\n", 3)
    if magic != b"P5" or maxval != b"255":
        raise ValueError("not an 8-bit P5 image")
    width, height = (int(v) for v in dims.split())
    return np.frombuffer(rest, dtype=np.uint8).reshape(height, width)
