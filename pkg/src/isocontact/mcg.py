"""Dehn-twist words acting on absolute and relative first homology.

Conventions
-----------
A positive twist along c acts on absolute classes by
``x -> x + <x, c> c``. Relative classes are written in the basis dual to
the absolute one under the Lefschetz pairing, so that the variation of a
single twist is ``y -> sign * <y, c> * c``, i.e. the matrix ``sign * c c^T``.
With J the intersection Gram matrix the inclusion of absolute into relative
homology is ``J^T``, and for any monodromy

    abs action = I + V J^T,     rel action = I + J^T V.

Words are applied left to right: the leftmost twist acts first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .linalg import IntMatrix
from .surface import AtlasCurve, Surface, curve_class, intersection_matrix

_SIGNED = re.compile(r"^([+-])([abds][1-9][0-9]*)$")


@dataclass(frozen=True)
class SignedTwist:
    curve: AtlasCurve
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("twist sign must be +1 or -1")

    @classmethod
    def parse(cls, token: str) -> "SignedTwist":
        m = _SIGNED.match(token)
        if not m:
            raise ValueError(f"bad twist token {token!r} (expected e.g. +a1 or -d2)")
        return cls(AtlasCurve.parse(m.group(2)), 1 if m.group(1) == "+" else -1)

    @property
    def token(self) -> str:
        return ("+" if self.sign > 0 else "-") + self.curve.token

    def inverse(self) -> "SignedTwist":
        return SignedTwist(self.curve, -self.sign)

    def __str__(self) -> str:
        return self.token


@dataclass(frozen=True)
class TwistWord:
    twists: tuple[SignedTwist, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))

    @classmethod
    def parse(cls, text: str | Iterable[str]) -> "TwistWord":
        tokens = text.split() if isinstance(text, str) else list(text)
        return cls(tuple(SignedTwist.parse(t) for t in tokens))

    @classmethod
    def of(cls, *items: tuple[AtlasCurve, int] | SignedTwist) -> "TwistWord":
        out = []
        for it in items:
            out.append(it if isinstance(it, SignedTwist) else SignedTwist(*it))
        return cls(tuple(out))

    def __len__(self) -> int:
        return len(self.twists)

    def __iter__(self):
        return iter(self.twists)

    def __add__(self, other: "TwistWord") -> "TwistWord":
        return word_concat(self, other)

    def __pow__(self, k: int) -> "TwistWord":
        if k < 0:
            return word_inverse(self) ** (-k)
        return TwistWord(self.twists * k)

    def inverse(self) -> "TwistWord":
        return word_inverse(self)

    def curves(self) -> list[AtlasCurve]:
        return [t.curve for t in self.twists]

    def render(self) -> str:
        return " ".join(t.token for t in self.twists)

    def __str__(self) -> str:
        return self.render() or "(empty)"


def word_concat(w1: TwistWord, w2: TwistWord) -> TwistWord:
    return TwistWord(w1.twists + w2.twists)


def word_inverse(w: TwistWord) -> TwistWord:
    return TwistWord(tuple(t.inverse() for t in reversed(w.twists)))


def validate_word(s: Surface, w: TwistWord) -> None:
    for t in w:
        s.check_curve(t.curve)


def _outer(c: Sequence[int], k: int = 1) -> IntMatrix:
    n = len(c)
    return IntMatrix(n, n, (k * a * b for a in c for b in c))


def twist_variation(s: Surface, t: SignedTwist) -> IntMatrix:
    return _outer(curve_class(s, t.curve), t.sign)


def twist_action_abs(s: Surface, t: SignedTwist) -> IntMatrix:
    V = twist_variation(s, t)
    return IntMatrix.identity(s.rank) + V @ intersection_matrix(s).T


def twist_action_rel(s: Surface, t: SignedTwist) -> IntMatrix:
    V = twist_variation(s, t)
    return IntMatrix.identity(s.rank) + intersection_matrix(s).T @ V


def word_action_abs(s: Surface, w: TwistWord) -> IntMatrix:
    M = IntMatrix.identity(s.rank)
    for t in w:
        M = twist_action_abs(s, t) @ M
    return M


def word_action_rel(s: Surface, w: TwistWord) -> IntMatrix:
    M = IntMatrix.identity(s.rank)
    for t in w:
        M = twist_action_rel(s, t) @ M
    return M


def word_variation(s: Surface, w: TwistWord) -> IntMatrix:
    """Variation map rel -> abs of the composite monodromy.

    Folds the law ``Var(t after p) = Var(t) . rel(p) + Var(p)`` over the word.
    """
    n = s.rank
    V = IntMatrix.zeros(n, n)
    R = IntMatrix.identity(n)
    for t in w:
        V = twist_variation(s, t) @ R + V
        R = twist_action_rel(s, t) @ R
    return V
