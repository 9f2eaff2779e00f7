"""Sampled radial profiles (h1, h2) and collar function pairs (f, g).

Both checkers take samples on a grid and test the required shape
conditions with finite differences. "Near" an endpoint means the first or
last sixteenth of the grid.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

MAX_EPSILON = 5.4  # the h2 blend stays monotone up to here
NEAR_FRACTION = 1 / 16


@dataclass(frozen=True)
class Violation:
    condition: str
    index: int
    detail: str

    def __str__(self) -> str:
        return f"{self.condition} at sample {self.index}: {self.detail}"


@dataclass
class CheckReport:
    violations: list[Violation] = field(default_factory=list)
    stats: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, condition: str, index: int, detail: str) -> None:
        self.violations.append(Violation(condition, int(index), detail))

    def conditions(self) -> set[str]:
        return {v.condition for v in self.violations}

    def render(self, title: str) -> str:
        lines = [f"{title}: {'pass' if self.passed else 'fail'}"]
        lines += [f"{k} = {v:.6e}" for k, v in self.stats.items()]
        lines += [f"violation: {v}" for v in self.violations]
        return "\n".join(lines) + "\n"


def _check_grid(r: np.ndarray, epsilon: float) -> None:
    if r.ndim != 1 or len(r) < 4:
        raise ValueError("grid needs at least 4 samples")
    if np.any(np.diff(r) <= 0):
        raise ValueError("grid must be strictly increasing")
    if abs(r[0]) > 1e-12 or abs(r[-1] - epsilon) > 1e-12 * max(1.0, epsilon):
        raise ValueError(f"grid must run from 0 to epsilon={epsilon}")


def _near(n: int) -> int:
    return max(2, int(np.ceil(n * NEAR_FRACTION)))


@dataclass(frozen=True)
class ProfileSpec:
    epsilon: float
    r: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    provenance: str = "builtin"

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        for name in ("r", "h1", "h2"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if not (self.r.shape == self.h1.shape == self.h2.shape):
            raise ValueError("r, h1, h2 must have equal length")
        _check_grid(self.r, self.epsilon)
        if np.any(self.h1 <= 0):
            raise ValueError("h1 must be positive at every sample")
        if np.any(self.h2 < 0):
            raise ValueError("h2 must be nonnegative at every sample")

    def replace(self, **kw) -> "ProfileSpec":
        data = dict(epsilon=self.epsilon, r=self.r, h1=self.h1, h2=self.h2, provenance=self.provenance)
        data.update(kw)
        return ProfileSpec(**data)


def _h2_default(r: np.ndarray, eps: float) -> np.ndarray:
    third = eps / 3
    out = np.where(r <= third, r**2, eps)
    mid = (r > third) & (r < 2 * third)
    t = (r[mid] - third) / third
    p0, p1, m0 = third**2, eps, 2 * third * third
    h00 = 2 * t**3 - 3 * t**2 + 1
    h10 = t**3 - 2 * t**2 + t
    h01 = -2 * t**3 + 3 * t**2
    out[mid] = h00 * p0 + h10 * m0 + h01 * p1
    return out


def _h1_default(r: np.ndarray, eps: float) -> np.ndarray:
    L = 2 * eps / 3
    u = np.minimum(r / L, 1.0)
    psi = np.where(r <= L, L * (0.5 + u**3 - u**4 / 2), r)
    return np.exp(-psi)


def default_profile(epsilon: float = 1.0, n_samples: int = 4096) -> ProfileSpec:
    """Builtin h1, h2 on ``n_samples`` evenly spaced points of [0, epsilon].

    h2 is r^2 up to epsilon/3, a monotone cubic Hermite blend, then the
    constant epsilon from 2 epsilon/3. h1 is exp(-psi) where psi' is a
    smoothstep reaching 1 at 2 epsilon/3, so h1'(0) = 0 and h1 = e^-r after.
    """
    if not (0 < epsilon <= MAX_EPSILON):
        raise ValueError(f"epsilon must lie in (0, {MAX_EPSILON}]")
    if n_samples < 16:
        raise ValueError("need at least 16 samples")
    r = np.linspace(0.0, epsilon, n_samples)
    return ProfileSpec(epsilon, r, _h1_default(r, epsilon), _h2_default(r, epsilon))


def _third_derivative_bound(h: np.ndarray, dr: float) -> float:
    if len(h) < 4:
        return 0.0
    return float(np.max(np.abs(np.diff(h, 3)))) / dr**3


def check_profile(p: ProfileSpec, tol: float = 1e-9) -> CheckReport:
    rep = CheckReport()
    r, h1, h2 = p.r, p.h1, p.h2
    n = len(r)
    dr = np.diff(r)
    slope = np.diff(h1) / dr
    for i in np.flatnonzero(slope >= -tol):
        rep.add("h1 decreasing", i, f"slope {slope[i]:.3e}")
    rep.stats["max h1 slope"] = float(slope.max())

    # one-sided second-order estimate of h1'(0); truncation is about d^2/3 * |h'''|,
    # allowed with a safety factor of 3
    d = dr[0]
    d0 = (-3 * h1[0] + 4 * h1[1] - h1[2]) / (2 * d)
    allow = tol + d**2 * _third_derivative_bound(h1[: _near(n) + 3], d)
    if abs(d0) > allow:
        rep.add("h1'(0) = 0", 0, f"estimate {d0:.3e} exceeds {allow:.3e}")
    rep.stats["h1'(0) estimate"] = float(d0)

    k = _near(n)
    dev = np.abs(h1[-k:] - np.exp(-r[-k:]))
    for j in np.flatnonzero(dev > tol):
        rep.add("h1 = exp(-r) near epsilon", n - k + j, f"deviation {dev[j]:.3e}")
    dev = np.abs(h2[:k] - r[:k] ** 2)
    for j in np.flatnonzero(dev > tol):
        rep.add("h2 = r^2 near 0", j, f"deviation {dev[j]:.3e}")

    g1 = np.gradient(h1, r)
    g2 = np.gradient(h2, r)
    W = g2 * h1 - g1 * h2
    inner = W[1:]
    for j in np.flatnonzero(inner <= 0):
        rep.add("h2'h1 - h1'h2 > 0", j + 1, f"W = {inner[j]:.3e}")
    rep.stats["min W (r > 0)"] = float(inner.min())
    return rep


@dataclass(frozen=True)
class CollarPair:
    a: float
    b: float
    c: float
    epsilon: float
    t: np.ndarray
    f: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        if not (self.a < self.c < self.b):
            raise ValueError("collar needs a < c < b")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        for name in ("t", "f", "g"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if not (self.t.shape == self.f.shape == self.g.shape):
            raise ValueError("t, f, g must have equal length")
        _check_grid(self.t, self.epsilon)

    def replace(self, **kw) -> "CollarPair":
        data = dict(a=self.a, b=self.b, c=self.c, epsilon=self.epsilon, t=self.t, f=self.f, g=self.g)
        data.update(kw)
        return CollarPair(**data)


def builtin_collar(epsilon: float = 1.0, n_samples: int = 4096, a: float = 0.0, c: float = 1.0, b: float = 2.0) -> CollarPair:
    """f rises from c to b with a smoothstep start; g climbs from the identity to the constant epsilon."""
    t = np.linspace(0.0, epsilon, n_samples)
    s = t / epsilon
    w = np.clip((s - 0.25) / 0.5, 0.0, 1.0)
    G_mid = 0.25 + 0.5 * (w - w**3 + w**4 / 2 + 10 * w**3 - 15 * w**4 + 6 * w**5)
    G = np.where(s <= 0.25, s, np.where(s >= 0.75, 1.0, G_mid))
    F = np.where(s <= 0.25, 0.0, np.where(s >= 0.75, 0.5 + 2 * (s - 0.75), w**3 - w**4 / 2))
    return CollarPair(a, b, c, epsilon, t, c + (b - c) * F, epsilon * G)


def check_collar(cp: CollarPair, tol: float = 1e-9) -> CheckReport:
    rep = CheckReport()
    t, f, g = cp.t, cp.f, cp.g
    n = len(t)
    k = _near(n)
    if abs(f[0] - cp.c) > tol:
        rep.add("f(0) = c", 0, f"f(0) = {f[0]:.6g}")
    if abs(g[0]) > tol:
        rep.add("g(0) = 0", 0, f"g(0) = {g[0]:.6g}")
    if abs(f[-1] - cp.b) > tol:
        rep.add("f(epsilon) = b", n - 1, f"f(epsilon) = {f[-1]:.6g}")
    for j in np.flatnonzero(np.abs(f[:k] - cp.c) > tol):
        rep.add("f constant near 0", j, f"f = {f[j]:.6g}")
    for j in np.flatnonzero(np.abs(g[:k] - t[:k]) > tol):
        rep.add("g identity near 0", j, f"g - t = {g[j] - t[j]:.3e}")
    for j in np.flatnonzero(np.abs(g[-k:] - cp.epsilon) > tol):
        rep.add("g constant near epsilon", n - k + j, f"g = {g[n - k + j]:.6g}")
    for j in np.flatnonzero((f < cp.a - tol) | (f > cp.b + tol)):
        rep.add("f in [a, b]", j, f"f = {f[j]:.6g}")
    for j in np.flatnonzero((g < -tol) | (g > cp.epsilon + tol)):
        rep.add("g in [0, epsilon]", j, f"g = {g[j]:.6g}")
    df = np.diff(f) / np.diff(t)
    for j in np.flatnonzero(df < -tol):
        rep.add("f nondecreasing", j, f"slope {df[j]:.3e}")
    s = np.gradient(f, t) + np.gradient(g, t)
    for j in np.flatnonzero(s <= tol):
        rep.add("f' + g' > 0", j, f"f' + g' = {s[j]:.3e}")
    rep.stats["min f'+g'"] = float(s.min())
    return rep


def _read_columns(path: str | Path, names: tuple[str, ...]) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(line for line in fh if line.strip() and not line.lstrip().startswith("#")))
    if not rows:
        raise ValueError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if header != list(names):
        raise ValueError(f"{path}: header must be {','.join(names)}, got {','.join(header)}")
    data = []
    for i, row in enumerate(rows[1:], 2):
        if len(row) != len(names):
            raise ValueError(f"{path}: line {i}: expected {len(names)} fields")
        try:
            data.append([float(x) for x in row])
        except ValueError:
            raise ValueError(f"{path}: line {i}: non-numeric field") from None
    if not data:
        raise ValueError(f"{path}: no data rows")
    arr = np.array(data)
    return {n: arr[:, i] for i, n in enumerate(names)}


def load_profile_csv(path: str | Path) -> ProfileSpec:
    cols = _read_columns(path, ("r", "h1", "h2"))
    return ProfileSpec(float(cols["r"][-1]), cols["r"], cols["h1"], cols["h2"], "file")


def load_collar_csv(path: str | Path, a: float | None = None, b: float | None = None, c: float | None = None) -> CollarPair:
    """Collar from ``t,f,g`` columns; c and b default to f's endpoint values and a to 2c - b."""
    cols = _read_columns(path, ("t", "f", "g"))
    f = cols["f"]
    c = float(f[0]) if c is None else c
    b = float(f[-1]) if b is None else b
    a = 2 * c - b if a is None else a
    return CollarPair(a, b, c, float(cols["t"][-1]), cols["t"], f, cols["g"])


def write_profile_csv(p: ProfileSpec, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r", "h1", "h2"])
        w.writerows(zip(map(repr, p.r.tolist()), map(repr, p.h1.tolist()), map(repr, p.h2.tolist())))
