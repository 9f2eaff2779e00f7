"""Two-term density surrogate K*A + B and its positivity threshold."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

DEFAULT_T_SAMPLES = 9


@dataclass(frozen=True)
class DensityModel:
    theta: np.ndarray
    t: np.ndarray
    A: np.ndarray  # shape (len(theta), len(t))
    B: np.ndarray
    tag: str = "file"

    def __post_init__(self):
        for name in ("theta", "t", "A", "B"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        shape = (len(self.theta), len(self.t))
        if self.A.shape != shape or self.B.shape != shape:
            raise ValueError(f"A and B must have shape {shape}")
        if np.any(self.A <= 0):
            raise ValueError("A must be positive at every sample")

    def scaled(self, a: float = 1.0, b: float = 1.0) -> "DensityModel":
        return DensityModel(self.theta, self.t, a * self.A, b * self.B, self.tag)

    def density(self, K: float) -> np.ndarray:
        return K * self.A + self.B


def _grids(grid: int, t_samples: int) -> tuple[np.ndarray, np.ndarray]:
    if grid < 4:
        raise ValueError("theta grid needs at least 4 points")
    theta = np.arange(grid) / grid  # periodic in theta
    t = np.linspace(0.0, 1.0, t_samples)
    return theta, t


def builtin_negative(grid: int = 4096, t_samples: int = DEFAULT_T_SAMPLES) -> DensityModel:
    """Orientation-reversing surrogate: B dips to -1.5 where A = 1 (theta = 3/4).

    A = 1 + cos^2(2 pi theta)/2 + sin^2(pi t)/4 and B = sin(2 pi theta) - 1/2.
    With s = sin(2 pi theta) the ratio -B/A at t = 0 is (1/2 - s)/(3/2 - s^2/2),
    which decreases in s on [-1, 1], so its maximum 3/2 sits at s = -1.
    """
    theta, t = _grids(grid, t_samples)
    TH, T = np.meshgrid(theta, t, indexing="ij")
    A = 1 + 0.5 * np.cos(2 * np.pi * TH) ** 2 + 0.25 * np.sin(np.pi * T) ** 2
    B = np.sin(2 * np.pi * TH) - 0.5
    return DensityModel(theta, t, A, B, "builtin-negative")


def builtin_positive(grid: int = 4096, t_samples: int = DEFAULT_T_SAMPLES) -> DensityModel:
    """Orientation-preserving surrogate with B >= 1 everywhere."""
    theta, t = _grids(grid, t_samples)
    TH, T = np.meshgrid(theta, t, indexing="ij")
    A = 1 + 0.5 * np.cos(2 * np.pi * TH) ** 2 + 0.25 * np.sin(np.pi * T) ** 2
    B = 1 + 0.5 * np.sin(2 * np.pi * TH) ** 2 + 0.5 * T
    return DensityModel(theta, t, A, B, "builtin-positive")


def density_threshold(m: DensityModel) -> float:
    """K0 = max(0, sup of -B/A over the samples)."""
    return max(0.0, float(np.max(-m.B / m.A)))


def threshold_location(m: DensityModel) -> tuple[float, float]:
    i, j = np.unravel_index(np.argmax(-m.B / m.A), m.A.shape)
    return float(m.theta[i]), float(m.t[j])


def load_density_csv(path: str | Path) -> DensityModel:
    """Read ``theta,t,A,B`` rows covering a full theta x t grid."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(line for line in fh if line.strip() and not line.lstrip().startswith("#")))
    if not rows or [h.strip() for h in rows[0]] != ["theta", "t", "A", "B"]:
        raise ValueError(f"{path}: header must be theta,t,A,B")
    try:
        data = np.array([[float(x) for x in row] for row in rows[1:]])
    except ValueError:
        raise ValueError(f"{path}: non-numeric field") from None
    if data.ndim != 2 or data.shape[1] != 4 or len(data) == 0:
        raise ValueError(f"{path}: expected rows of 4 numbers")
    theta = np.unique(data[:, 0])
    t = np.unique(data[:, 1])
    if len(data) != len(theta) * len(t):
        raise ValueError(f"{path}: samples do not form a full theta x t grid")
    A = np.full((len(theta), len(t)), np.nan)
    B = np.full_like(A, np.nan)
    ii = np.searchsorted(theta, data[:, 0])
    jj = np.searchsorted(t, data[:, 1])
    A[ii, jj] = data[:, 2]
    B[ii, jj] = data[:, 3]
    if np.isnan(A).any():
        raise ValueError(f"{path}: duplicate (theta, t) samples")
    return DensityModel(theta, t, A, B, "file")


def write_density_csv(m: DensityModel, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["theta", "t", "A", "B"])
        for i, th in enumerate(m.theta):
            for j, t in enumerate(m.t):
                w.writerow([repr(float(th)), repr(float(t)), repr(float(m.A[i, j])), repr(float(m.B[i, j]))])
