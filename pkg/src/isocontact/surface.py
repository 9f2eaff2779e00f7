"""Page surfaces with a fixed, finite curve atlas.

A page of genus g with n boundary components carries the curves

* ``a<i>``, ``b<i>`` (1 <= i <= g): a symplectic pair on the i-th handle,
* ``d<j>``: boundary-parallel curves,
* ``s<j>``: belt curves created by stabilization.

First homology is coordinatized in the ordered basis
``(a1, b1, ..., ag, bg, e..., s...)``. For a page that was never summed,
``d1 .. d(n-1)`` are the basis vectors ``e`` and ``dn`` is minus their sum.

Band sums and stabilizations keep every existing curve's class. To make
that possible a page remembers two pieces of history:

``blocks``
    sizes of the boundary families it was band-summed from. The d-curves
    are numbered block after block; within a block the last d-curve is
    minus the sum of the others. For a block that took part in a band sum
    that last curve is the separating curve parallel to where the band was
    attached, not a boundary component of the sum.
``belts``
    number of stabilizations. Each adds a boundary component and an ``s``
    curve with a basis vector of its own.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .linalg import IntMatrix

CURVE_KINDS = ("a", "b", "d", "s")
_TOKEN = re.compile(r"^([abds])([1-9][0-9]*)$")


@dataclass(frozen=True, order=True)
class AtlasCurve:
    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in CURVE_KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("curve indices are 1-based")

    @classmethod
    def parse(cls, token: str) -> "AtlasCurve":
        m = _TOKEN.match(token)
        if not m:
            raise ValueError(f"bad curve token {token!r}")
        return cls(m.group(1), int(m.group(2)))

    @property
    def token(self) -> str:
        return f"{self.kind}{self.index}"

    def __str__(self) -> str:
        return self.token


def A(i: int) -> AtlasCurve:
    return AtlasCurve("a", i)


def B(i: int) -> AtlasCurve:
    return AtlasCurve("b", i)


def D(j: int) -> AtlasCurve:
    return AtlasCurve("d", j)


def S(j: int) -> AtlasCurve:
    return AtlasCurve("s", j)


@dataclass(frozen=True)
class Surface:
    genus: int
    boundary: int
    blocks: tuple[int, ...] = field(default=())
    belts: int = 0

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if self.boundary < 1:
            raise ValueError("pages need at least one boundary component")
        if self.belts < 0:
            raise ValueError("belt count must be nonnegative")
        blocks = tuple(int(b) for b in self.blocks) or (self.boundary - self.belts,)
        object.__setattr__(self, "blocks", blocks)
        if any(b < 1 for b in blocks):
            raise ValueError(f"inconsistent boundary data: blocks={blocks}, belts={self.belts}")
        if sum(blocks) - (len(blocks) - 1) + self.belts != self.boundary:
            raise ValueError(
                f"blocks {blocks} with {self.belts} belts give "
                f"{sum(blocks) - len(blocks) + 1 + self.belts} boundary components, not {self.boundary}"
            )

    @property
    def is_plain(self) -> bool:
        """True when no band-sum or stabilization history is recorded."""
        return len(self.blocks) == 1 and self.belts == 0

    @property
    def d_count(self) -> int:
        return sum(self.blocks)

    @property
    def rank(self) -> int:
        return homology_rank(self)

    def s_indices(self) -> range:
        start = self.d_count + 1
        return range(start, start + self.belts)

    def curves(self) -> list[AtlasCurve]:
        out = []
        for i in range(1, self.genus + 1):
            out += [A(i), B(i)]
        out += [D(j) for j in range(1, self.d_count + 1)]
        out += [S(j) for j in self.s_indices()]
        return out

    def has_curve(self, c: AtlasCurve) -> bool:
        if c.kind in ("a", "b"):
            return c.index <= self.genus
        if c.kind == "d":
            return c.index <= self.d_count
        return c.index in self.s_indices()

    def check_curve(self, c: AtlasCurve) -> None:
        if not self.has_curve(c):
            raise ValueError(f"curve {c} is not in the atlas of {self.describe()}")

    def describe(self) -> str:
        text = f"Sigma(g={self.genus}, n={self.boundary})"
        if not self.is_plain:
            text += f"[blocks={','.join(map(str, self.blocks))}, belts={self.belts}]"
        return text

    def intersection_form(self) -> IntMatrix:
        return intersection_matrix(self)


def euler_characteristic(s: Surface) -> int:
    return 2 - 2 * s.genus - s.boundary


def homology_rank(s: Surface) -> int:
    return 2 * s.genus + s.boundary - 1


def curve_class(s: Surface, c: AtlasCurve) -> tuple[int, ...]:
    s.check_curve(c)
    v = [0] * s.rank
    if c.kind == "a":
        v[2 * (c.index - 1)] = 1
    elif c.kind == "b":
        v[2 * (c.index - 1) + 1] = 1
    elif c.kind == "d":
        base = 2 * s.genus
        start = 1
        for size in s.blocks:
            if c.index < start + size:
                k = c.index - start
                if k < size - 1:
                    v[base + k] = 1
                else:
                    for t in range(size - 1):
                        v[base + t] = -1
                break
            base += size - 1
            start += size
    else:
        offset = 2 * s.genus + sum(b - 1 for b in s.blocks)
        v[offset + c.index - s.d_count - 1] = 1
    return tuple(v)


def intersection_matrix(s: Surface) -> IntMatrix:
    """Gram matrix J with J[i][j] = <x_i, x_j>."""
    r = s.rank
    J = [[0] * r for _ in range(r)]
    for i in range(s.genus):
        J[2 * i][2 * i + 1] = 1
        J[2 * i + 1][2 * i] = -1
    return IntMatrix.from_rows(J, r)


def intersection_number(s: Surface, x: Sequence[int], y: Sequence[int]) -> int:
    r = s.rank
    if len(x) != r or len(y) != r:
        raise ValueError(f"vectors must have length {r}")
    total = 0
    for i in range(s.genus):
        total += x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i]
    return total


def geometrically_disjoint(c1: AtlasCurve, c2: AtlasCurve) -> bool:
    """Only the pair a_i, b_i meets; parallel copies count as disjoint."""
    if c1.index == c2.index and {c1.kind, c2.kind} == {"a", "b"}:
        return False
    return True
