"""Deterministic rasterization of period images and torus scatter plots.

No anti-aliasing: every pixel is either the background or an exact palette
entry, so rasters can be compared byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionNot2, EmptyImage, IoError, UnsupportedFormat
from .supercharacter import PeriodImage

RGB = tuple[int, int, int]


@dataclass
class RenderConfig:
    size_px: int = 1024
    viewport_radius: float | None = None  # None: 1.05 * |X|
    palette: list[RGB] | str = "auto"
    background: RGB = (255, 255, 255)
    point_radius_px: int = 1

    def __post_init__(self):
        if self.size_px < 64:
            raise ValueError("size_px must be >= 64")
        if self.viewport_radius is not None and self.viewport_radius <= 0:
            raise ValueError("viewport_radius must be positive")
        if self.point_radius_px < 0:
            raise ValueError("point_radius_px must be >= 0")


@dataclass
class Raster:
    width: int
    height: int
    pixels: np.ndarray  # (height, width, 3) uint8, row-major

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()

    def __eq__(self, other):
        return (
            isinstance(other, Raster)
            and (self.width, self.height) == (other.width, other.height)
            and np.array_equal(self.pixels, other.pixels)
        )


def hsv_palette(count: int) -> np.ndarray:
    """Layer j gets hue j/count at full saturation and value."""
    h6 = np.arange(count, dtype=np.float64) * 6.0 / count
    sextant = np.floor(h6).astype(np.int64) % 6
    f = h6 - np.floor(h6)
    one = np.ones(count)
    zero = np.zeros(count)
    rise, fall = f, 1.0 - f
    table = {
        0: (one, rise, zero),
        1: (fall, one, zero),
        2: (zero, one, rise),
        3: (zero, fall, one),
        4: (rise, zero, one),
        5: (one, zero, fall),
    }
    rgb = np.zeros((count, 3))
    for s, (r, g, b) in table.items():
        m = sextant == s
        rgb[m] = np.column_stack([r, g, b])[m]
    return np.floor(rgb * 255.0).astype(np.uint8)


def _palette(cfg: RenderConfig, count: int) -> np.ndarray:
    if isinstance(cfg.palette, str):
        if cfg.palette != "auto":
            raise ValueError(f"unknown palette {cfg.palette!r}")
        return hsv_palette(count)
    pal = np.asarray(cfg.palette, dtype=np.uint8).reshape(-1, 3)
    if len(pal) < count:
        raise ValueError(f"palette has {len(pal)} colours, need {count}")
    return pal


def _disc_offsets(radius: int) -> list[tuple[int, int]]:
    return [
        (dr, dc)
        for dr in range(-radius, radius + 1)
        for dc in range(-radius, radius + 1)
        if dr * dr + dc * dc <= radius * radius
    ]


def _draw(size, rows, cols, colors, background, radius) -> Raster:
    """Paint discs in the given order; a later point wins every pixel it covers."""
    winner = np.full(size * size, -1, dtype=np.int64)
    order = np.arange(len(rows), dtype=np.int64)
    for dr, dc in _disc_offsets(radius):
        r = rows + dr
        c = cols + dc
        ok = (r >= 0) & (r < size) & (c >= 0) & (c < size)
        np.maximum.at(winner, r[ok] * size + c[ok], order[ok])
    pixels = np.empty((size * size, 3), dtype=np.uint8)
    pixels[:] = np.asarray(background, dtype=np.uint8)
    hit = winner >= 0
    pixels[hit] = colors[winner[hit]]
    return Raster(size, size, pixels.reshape(size, size, 3))


def pixel_coords(values: np.ndarray, radius: float, size: int) -> tuple[np.ndarray, np.ndarray]:
    """(row, col) = (floor((1 - Im z/R) size/2), floor((Re z/R + 1) size/2))."""
    cols = np.floor((values.real / radius + 1.0) * size / 2.0).astype(np.int64)
    rows = np.floor((1.0 - values.imag / radius) * size / 2.0).astype(np.int64)
    return rows, cols


def rasterize(img: PeriodImage, cfg: RenderConfig | None = None) -> Raster:
    """Plot sigma_X(y) for every y, coloured by layer y mod c.

    Draw order is ascending layer, then ascending y.
    """
    cfg = cfg or RenderConfig()
    if len(img.rep_values) == 0:
        raise EmptyImage("nothing to draw")
    radius = cfg.viewport_radius or 1.05 * img.spec.order
    c = img.layer_mod
    ys = img.ys
    layers = img.layers
    order = np.lexsort((ys, layers))
    vals = img.values[order]
    rows, cols = pixel_coords(vals, radius, cfg.size_px)
    colors = _palette(cfg, c)[layers[order]]
    return _draw(cfg.size_px, rows, cols, colors, cfg.background, cfg.point_radius_px)


def scatter_torus(lam, cfg: RenderConfig | None = None) -> Raster:
    """Plot a 2-dimensional point set from [0,1)^2 onto the full canvas."""
    cfg = cfg or RenderConfig()
    pts = lam.points if hasattr(lam, "points") else np.asarray(lam, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DimensionNot2(f"need 2-dimensional points, got shape {pts.shape}")
    size = cfg.size_px
    cols = np.minimum(np.floor(pts[:, 0] * size).astype(np.int64), size - 1)
    rows = size - 1 - np.minimum(np.floor(pts[:, 1] * size).astype(np.int64), size - 1)
    if isinstance(cfg.palette, str):
        color = np.zeros(3, dtype=np.uint8)
    else:
        color = np.asarray(cfg.palette[0], dtype=np.uint8)
    colors = np.tile(color, (len(pts), 1))
    return _draw(size, rows, cols, colors, cfg.background, cfg.point_radius_px)


def ppm_bytes(raster: Raster) -> bytes:
    header = f"P6\n{raster.width} {raster.height}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(raster.pixels, dtype=np.uint8).tobytes()


def write_image(raster: Raster, path) -> None:
    """Write .ppm (binary P6) or .png (8-bit RGB)."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix not in (".ppm", ".png"):
        raise UnsupportedFormat(f"unsupported image extension {path.suffix!r}")
    try:
        if suffix == ".ppm":
            path.write_bytes(ppm_bytes(raster))
        else:
            from PIL import Image

            Image.fromarray(np.ascontiguousarray(raster.pixels)).save(path, format="PNG")
    except OSError as exc:
        raise IoError(str(exc)) from exc


def read_ppm(path) -> Raster:
    data = Path(path).read_bytes()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P6" or parts[2] != b"255":
        raise IoError("not a binary 8-bit PPM")
    w, h = map(int, parts[1].split())
    pixels = np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w, 3).copy()
    return Raster(w, h, pixels)
