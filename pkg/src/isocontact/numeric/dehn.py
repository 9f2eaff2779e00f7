"""Generalized Dehn twist on the unit cotangent model of T*S^n.

Points are pairs (x, y) in R^{n+1} x R^{n+1} with |y| = 1 and x . y = 0;
y is the base point and x the fiber vector. The twist rotates the pair
by the angle nu(|x|) in the plane spanned by y and x/|x|:

    x' = cos(nu) x + |x| sin(nu) y
    y' = cos(nu) y - sin(nu) x / |x|

This is the time-one map of the Hamiltonian F(|x|) with F' = nu, so it is
symplectic for ``omega = sum dx_i ^ dy_i`` whenever nu is smooth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

DEFAULT_R = 2.0
FD_STEP = 1e-4
CONSTRAINT_TOL = 1e-12
CUTOFF_START = 0.25


def smooth_cutoff(s: float) -> float:
    """C-infinity step: 1 for s <= 1/4, 0 for s >= 1.

    The long transition keeps third derivatives small, which is what the
    central-difference check at step 1e-4 is sensitive to.
    """
    if s <= CUTOFF_START:
        return 1.0
    if s >= 1.0:
        return 0.0
    u = (s - CUTOFF_START) / (1 - CUTOFF_START)  # in (0, 1)
    a = math.exp(-1 / (1 - u))
    b = math.exp(-1 / u)
    return a / (a + b)


@dataclass(frozen=True)
class GDTProfile:
    n: int
    nu: Callable[[float], float]
    R: float = DEFAULT_R

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("sphere dimension must be positive")
        if not (self.R > 0 and math.isfinite(self.R)):
            raise ValueError("support radius must be finite and positive")

    def angle(self, t: float) -> float:
        return 0.0 if t >= self.R else float(self.nu(t))

    def inverse(self) -> "GDTProfile":
        nu = self.nu
        return GDTProfile(self.n, lambda t: -nu(t), self.R)


def default_bump(n: int = 2, R: float = DEFAULT_R) -> GDTProfile:
    """nu(t) = t near 0, cut off smoothly to 0 by t = R."""
    return GDTProfile(n, lambda t: t * smooth_cutoff(t / R), R)


def zero_profile(n: int = 2, R: float = DEFAULT_R) -> GDTProfile:
    return GDTProfile(n, lambda t: 0.0, R)


def staircase_profile(n: int = 2, R: float = DEFAULT_R, step: float = 2e-4) -> GDTProfile:
    """The default bump frozen on intervals of width ``step``: jumps everywhere at FD scale."""
    base = default_bump(n, R)
    return GDTProfile(n, lambda t: base.angle(step * math.floor(t / step)), R)


def _rotate(p: GDTProfile, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    t = float(np.linalg.norm(x))
    nu = p.angle(t)
    if nu == 0.0:
        return x.copy(), y.copy()
    c, s = math.cos(nu), math.sin(nu)
    if t == 0.0:
        if abs(s) > CONSTRAINT_TOL:
            raise ValueError("angle at the zero section must be a multiple of pi")
        return x.copy(), c * y
    return c * x + (t * s) * y, c * y - (s / t) * x


def gdt_apply(p: GDTProfile, x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (p.n + 1,) or y.shape != (p.n + 1,):
        raise ValueError(f"x and y must be vectors of length {p.n + 1}")
    if abs(float(y @ y) - 1.0) > CONSTRAINT_TOL or abs(float(x @ y)) > CONSTRAINT_TOL:
        raise ValueError("input must satisfy |y| = 1 and x . y = 0")
    return _rotate(p, x, y)


def random_point(rng: np.random.Generator, n: int, max_norm: float) -> tuple[np.ndarray, np.ndarray]:
    y = rng.normal(size=n + 1)
    y /= np.linalg.norm(y)
    x = rng.normal(size=n + 1)
    x -= (x @ y) * y
    x *= rng.uniform(0.0, max_norm) / np.linalg.norm(x)
    x -= (x @ y) * y
    return x, y


def random_tangent(rng: np.random.Generator, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(u, v) with v . y = 0 and u . y + x . v = 0."""
    v = rng.normal(size=len(y))
    v -= (v @ y) * y
    u = rng.normal(size=len(y))
    u -= (u @ y + x @ v) * y
    return u, v


def omega(u1, v1, u2, v2) -> float:
    return float(u1 @ v2 - v1 @ u2)


def _differential(p: GDTProfile, x, y, u, v, h: float = FD_STEP):
    xp, yp = _rotate(p, x + h * u, y + h * v)
    xm, ym = _rotate(p, x - h * u, y - h * v)
    return (xp - xm) / (2 * h), (yp - ym) / (2 * h)


@dataclass(frozen=True)
class SymplecticReport:
    max_error: float
    max_constraint_error: float
    samples: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tol

    def render(self) -> str:
        return (
            f"dehn-check: {'pass' if self.passed else 'fail'}\n"
            f"samples = {self.samples}\n"
            f"max symplectic error = {self.max_error:.6e}\n"
            f"max constraint error = {self.max_constraint_error:.6e}\n"
            f"tol = {self.tol:.6e}\n"
        )


def gdt_check_symplectic(p: GDTProfile, samples: int = 100, tol: float = 1e-5, seed: int = 0) -> SymplecticReport:
    rng = np.random.default_rng(seed)
    worst = 0.0
    worst_c = 0.0
    for _ in range(samples):
        x, y = random_point(rng, p.n, 1.1 * p.R)
        u1, v1 = random_tangent(rng, x, y)
        u2, v2 = random_tangent(rng, x, y)
        X, Y = gdt_apply(p, x, y)
        worst_c = max(worst_c, abs(float(Y @ Y) - 1.0), abs(float(X @ Y)))
        a1, b1 = _differential(p, x, y, u1, v1)
        a2, b2 = _differential(p, x, y, u2, v2)
        worst = max(worst, abs(omega(a1, b1, a2, b2) - omega(u1, v1, u2, v2)))
    return SymplecticReport(worst, worst_c, samples, tol)
