"""Procedural 2.5D terrain worlds and the ground-truth hazard oracle.

Heightmaps are (N+1)x(N+1) node grids over a square extent. Five families are
supported: Flat, Rolling (smooth value-noise hills), Rough (multi-octave
value noise), Boulders (hemispherical bumps at Poisson-disk locations on a
flat base), and Slope (constant-gradient plane). Generation is a pure
function of the spec, including its seed.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .seeding import derive_seed, rng_for


class Family(Enum):
    FLAT = "flat"
    ROLLING = "rolling"
    ROUGH = "rough"
    BOULDERS = "boulders"
    SLOPE = "slope"


# Hazard oracle constants: per-unit-slope and per-meter-of-height-std rates.
# A 30 deg uniform slope alone gives 1 - exp(-2.0 * tan(30 deg)) ~= 0.68.
KAPPA_SLOPE = 2.0
KAPPA_STD = 4.0

# Value-noise synthesis: lacunarity 2.0 everywhere; octave count and
# persistence fixed per family (Rough is the full 4-octave stack).
_FAMILY_OCTAVES = {Family.ROLLING: 2, Family.ROUGH: 4}
_FAMILY_PERSISTENCE = {Family.ROLLING: 0.5, Family.ROUGH: 0.5}
_LACUNARITY = 2.0

# Monte-Carlo calibrated standard deviation of the raw fBm field, frozen so
# that amplitude_m equals the expected height standard deviation.
# (see scripts/calibrate_noise.py)
_FBM_STD = {Family.ROLLING: 0.5068, Family.ROUGH: 0.5225}

_BOULDER_SEP_FACTOR = 2.5  # min centre separation in bump radii


@dataclass(frozen=True)
class TerrainSpec:
    """Recipe for one deterministic terrain world."""

    family: Family
    extent_m: float
    base_resolution_m: float
    amplitude_m: float = 0.0
    correlation_length_m: float = 4.0
    obstacle_density: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.extent_m <= 0:
            raise ValueError("extent_m must be positive")
        if self.base_resolution_m <= 0:
            raise ValueError("base_resolution_m must be positive")
        n = self.extent_m / self.base_resolution_m
        if abs(n - round(n)) > 1e-9 * max(1.0, n) or round(n) < 16:
            raise ValueError(
                "extent_m / base_resolution_m must be an integer >= 16"
            )
        if self.amplitude_m < 0:
            raise ValueError("amplitude_m must be nonnegative")
        if self.amplitude_m == 0 and self.family not in (Family.FLAT, Family.ROLLING):
            raise ValueError(
                "amplitude_m = 0 is only permitted for family Flat or Rolling"
            )
        if self.correlation_length_m <= 0:
            raise ValueError("correlation_length_m must be positive")
        if not 0.0 <= self.obstacle_density <= 1.0:
            raise ValueError("obstacle_density must be in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def cells(self) -> int:
        return int(round(self.extent_m / self.base_resolution_m))


@dataclass(frozen=True)
class TerrainField:
    """Realized heightmap: nodes[iy, ix] is the height at
    (origin_x + ix*resolution, origin_y + iy*resolution)."""

    nodes: np.ndarray
    resolution_m: float
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.nodes.ndim != 2 or self.nodes.shape[0] != self.nodes.shape[1]:
            raise ValueError("nodes must be a square 2-D grid")
        if self.nodes.shape[0] < 17:
            raise ValueError("nodes grid must be at least 17x17 (N >= 16)")
        if not np.all(np.isfinite(self.nodes)):
            raise ValueError("nodes must be finite")
        if self.resolution_m <= 0:
            raise ValueError("resolution_m must be positive")

    @property
    def n_cells(self) -> int:
        return self.nodes.shape[0] - 1

    @property
    def extent_m(self) -> float:
        return self.n_cells * self.resolution_m

    def bounds(self) -> tuple[float, float, float, float]:
        """(xmin, ymin, xmax, ymax) of the covered square."""
        x0, y0 = self.origin
        return (x0, y0, x0 + self.extent_m, y0 + self.extent_m)

    def contains(self, x: float, y: float) -> bool:
        xmin, ymin, xmax, ymax = self.bounds()
        return xmin <= x <= xmax and ymin <= y <= ymax


def _mix32(h: np.ndarray) -> np.ndarray:
    h ^= h >> np.uint32(16)
    h *= np.uint32(0x7FEB352D)
    h ^= h >> np.uint32(15)
    h *= np.uint32(0x846CA68B)
    h ^= h >> np.uint32(16)
    return h


def _lattice_values(ix: np.ndarray, iy: np.ndarray, seed: int) -> np.ndarray:
    """Hashed lattice value in [-1, 1) at integer coordinates, per seed."""
    s_lo = ((seed & 0xFFFFFFFF) * 0xC2B2AE3D) & 0xFFFFFFFF
    s_hi = (((seed >> 32) & 0xFFFFFFFF) * 0x27D4EB2F) & 0xFFFFFFFF
    h = ix.astype(np.uint32) * np.uint32(0x9E3779B1)
    h ^= iy.astype(np.uint32) * np.uint32(0x85EBCA77)
    h ^= np.uint32(s_lo)
    h ^= np.uint32(s_hi)
    h = _mix32(h)
    return h.astype(np.float64) / 2147483648.0 - 1.0


def _value_noise(x: np.ndarray, y: np.ndarray, seed: int) -> np.ndarray:
    """Quintic-faded bilinear value noise on the unit lattice."""
    x0 = np.floor(x)
    y0 = np.floor(y)
    fx = x - x0
    fy = y - y0
    i0 = x0.astype(np.int64)
    j0 = y0.astype(np.int64)
    ux = fx * fx * fx * (fx * (fx * 6.0 - 15.0) + 10.0)
    uy = fy * fy * fy * (fy * (fy * 6.0 - 15.0) + 10.0)
    v00 = _lattice_values(i0, j0, seed)
    v10 = _lattice_values(i0 + 1, j0, seed)
    v01 = _lattice_values(i0, j0 + 1, seed)
    v11 = _lattice_values(i0 + 1, j0 + 1, seed)
    vx0 = v00 + ux * (v10 - v00)
    vx1 = v01 + ux * (v11 - v01)
    return vx0 + uy * (vx1 - vx0)


def _fbm(x: np.ndarray, y: np.ndarray, seed: int, octaves: int, persistence: float) -> np.ndarray:
    total = np.zeros_like(x)
    amp = 1.0
    freq = 1.0
    for o in range(octaves):
        oct_seed = derive_seed(seed, "octave", o)
        total += amp * _value_noise(x * freq, y * freq, oct_seed)
        amp *= persistence
        freq *= _LACUNARITY
    return total


def _poisson_disk(rng: np.random.Generator, extent: float, min_sep: float, n_target: int) -> np.ndarray:
    """Greedy dart throwing; returns up to n_target centres >= min_sep apart."""
    accepted: list[np.ndarray] = []
    attempts = 0
    max_attempts = max(30 * n_target, 1)
    while len(accepted) < n_target and attempts < max_attempts:
        p = rng.uniform(0.0, extent, size=2)
        attempts += 1
        if all(np.hypot(*(p - q)) >= min_sep for q in accepted):
            accepted.append(p)
    return np.array(accepted) if accepted else np.zeros((0, 2))


def generate_terrain(spec: TerrainSpec) -> TerrainField:
    """Realize a terrain world deterministically from its spec."""
    n = spec.cells
    coords = np.arange(n + 1) * spec.base_resolution_m
    gx, gy = np.meshgrid(coords, coords)  # gx varies along axis 1

    if spec.family is Family.FLAT or spec.amplitude_m == 0.0:
        nodes = np.zeros((n + 1, n + 1))
    elif spec.family in (Family.ROLLING, Family.ROUGH):
        lat_x = gx / spec.correlation_length_m
        lat_y = gy / spec.correlation_length_m
        raw = _fbm(
            lat_x,
            lat_y,
            derive_seed(spec.seed, "fbm"),
            _FAMILY_OCTAVES[spec.family],
            _FAMILY_PERSISTENCE[spec.family],
        )
        nodes = spec.amplitude_m * raw / _FBM_STD[spec.family]
    elif spec.family is Family.BOULDERS:
        radius = spec.correlation_length_m
        min_sep = _BOULDER_SEP_FACTOR * radius
        n_target = int(round(spec.obstacle_density * (spec.extent_m / min_sep) ** 2))
        centres = _poisson_disk(
            rng_for(spec.seed, "boulders"), spec.extent_m, min_sep, n_target
        )
        nodes = np.zeros((n + 1, n + 1))
        for cx, cy in centres:
            d2 = (gx - cx) ** 2 + (gy - cy) ** 2
            bump = 1.0 - d2 / radius**2
            nodes += spec.amplitude_m * np.sqrt(np.maximum(bump, 0.0))
    elif spec.family is Family.SLOPE:
        phi = rng_for(spec.seed, "slope").uniform(0.0, 2.0 * np.pi)
        grade = spec.amplitude_m / spec.correlation_length_m
        half = spec.extent_m / 2.0
        nodes = grade * ((gx - half) * np.cos(phi) + (gy - half) * np.sin(phi))
    else:  # pragma: no cover
        raise ValueError(f"unknown family {spec.family}")

    return TerrainField(nodes=nodes, resolution_m=spec.base_resolution_m)


def heights_at(field: TerrainField, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Vectorized bilinear height interpolation. All queries must be in bounds."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    xmin, ymin, xmax, ymax = field.bounds()
    if np.any(x < xmin) or np.any(x > xmax) or np.any(y < ymin) or np.any(y > ymax):
        raise ValueError("height query outside terrain bounds")
    n = field.n_cells
    gx = (x - xmin) / field.resolution_m
    gy = (y - ymin) / field.resolution_m
    ix = np.clip(np.floor(gx).astype(np.int64), 0, n - 1)
    iy = np.clip(np.floor(gy).astype(np.int64), 0, n - 1)
    fx = gx - ix
    fy = gy - iy
    h00 = field.nodes[iy, ix]
    h10 = field.nodes[iy, ix + 1]
    h01 = field.nodes[iy + 1, ix]
    h11 = field.nodes[iy + 1, ix + 1]
    return (
        h00 * (1 - fx) * (1 - fy)
        + h10 * fx * (1 - fy)
        + h01 * (1 - fx) * fy
        + h11 * fx * fy
    )


def height_at(field: TerrainField, x: float, y: float) -> float:
    """Bilinear interpolation of the four surrounding nodes at one point."""
    return float(heights_at(field, np.float64(x), np.float64(y)))


def oracle_labels(field: TerrainField, centres: np.ndarray, footprint_m: float) -> np.ndarray:
    """Ground-truth hazard labels in [0, 1) for many footprint windows at once.

    Per window: y = 1 - exp(-(KAPPA_SLOPE * s + KAPPA_STD * sigma_h)) where s
    is the mean gradient magnitude and sigma_h the height standard deviation
    over a footprint_m square sampled at the field resolution.
    """
    centres = np.atleast_2d(np.asarray(centres, dtype=np.float64))
    if footprint_m <= 0:
        raise ValueError("footprint_m must be positive")
    half = footprint_m / 2.0
    xmin, ymin, xmax, ymax = field.bounds()
    if (
        np.any(centres[:, 0] - half < xmin)
        or np.any(centres[:, 0] + half > xmax)
        or np.any(centres[:, 1] - half < ymin)
        or np.any(centres[:, 1] + half > ymax)
    ):
        raise ValueError("footprint window outside terrain bounds")
    n_side = max(int(round(footprint_m / field.resolution_m)) + 1, 2)
    offs = np.linspace(-half, half, n_side)
    px = centres[:, 0, None, None] + offs[None, None, :]
    py = centres[:, 1, None, None] + offs[None, :, None]
    h = heights_at(field, np.broadcast_to(px, (len(centres), n_side, n_side)),
                   np.broadcast_to(py, (len(centres), n_side, n_side)))
    spacing = footprint_m / (n_side - 1)
    dy, dx = np.gradient(h, spacing, axis=(1, 2))
    slope = np.sqrt(dx**2 + dy**2).mean(axis=(1, 2))
    sigma = h.std(axis=(1, 2))
    return 1.0 - np.exp(-(KAPPA_SLOPE * slope + KAPPA_STD * sigma))


def oracle_label(field: TerrainField, cell_center: tuple[float, float], footprint_m: float) -> float:
    """Hazard oracle for a single footprint window."""
    return float(oracle_labels(field, np.array([cell_center]), footprint_m)[0])


def dump_terrain(field: TerrainField) -> str:
    """Plain-text grid dump: header then N+1 rows of N+1 heights."""
    x0, y0 = field.origin
    lines = [f"TERRAIN v1 {field.n_cells} {field.resolution_m!r} {x0!r} {y0!r}"]
    for row in field.nodes:
        lines.append(" ".join(repr(v) for v in row))
    return "\n".join(lines) + "\n"


def load_terrain(text: str) -> TerrainField:
    """Parse a dump_terrain() string back into a TerrainField."""
    lines = text.strip().split("\n")
    head = lines[0].split()
    if head[:2] != ["TERRAIN", "v1"]:
        raise ValueError("bad terrain dump header")
    n = int(head[2])
    res = float(head[3])
    origin = (float(head[4]), float(head[5]))
    if len(lines) != n + 2:
        raise ValueError("terrain dump row count mismatch")
    nodes = np.array([[float(v) for v in line.split()] for line in lines[1:]])
    return TerrainField(nodes=nodes, resolution_m=res, origin=origin)
