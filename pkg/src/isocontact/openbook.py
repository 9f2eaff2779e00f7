"""Abstract open books (page, monodromy word) and the homology of their manifolds."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import NamedTuple

from .linalg import DivisorChain, cokernel_divisors, has_two_torsion
from .mcg import SignedTwist, TwistWord, word_variation
from .surface import A, AtlasCurve, B, D, S, Surface


class RawOpenBook(NamedTuple):
    """Unvalidated open-book fields, as read from a file."""

    genus: int
    boundary: int
    word: TwistWord = TwistWord()
    blocks: tuple[int, ...] = ()
    belts: int = 0
    label: str = ""


@dataclass(frozen=True)
class OpenBook:
    page: Surface
    monodromy: TwistWord = field(default_factory=TwistWord)
    label: str = ""

    def __post_init__(self):
        problems = ob_validate(self)
        if problems:
            raise ValueError("; ".join(problems))

    @classmethod
    def from_raw(cls, raw: RawOpenBook) -> "OpenBook":
        problems = ob_validate(raw)
        if problems:
            raise ValueError("; ".join(problems))
        page = Surface(raw.genus, raw.boundary, raw.blocks, raw.belts)
        return cls(page, raw.word, raw.label)

    def describe(self) -> str:
        return f"{self.page.describe()} word: {self.monodromy}"


@dataclass(frozen=True)
class HomologySummary:
    free_rank: int
    torsion: DivisorChain
    two_torsion: bool

    @classmethod
    def of(cls, chain: DivisorChain) -> "HomologySummary":
        return cls(chain.free_rank, chain, has_two_torsion(chain))

    @property
    def is_trivial(self) -> bool:
        return self.torsion.is_trivial

    @property
    def divisors(self) -> tuple[int, ...]:
        return self.torsion.torsion

    def __str__(self) -> str:
        return str(self.torsion)


def ob_validate(ob: OpenBook | RawOpenBook) -> list[str]:
    """List every violated invariant; empty means valid."""
    if isinstance(ob, OpenBook):
        g, n, word = ob.page.genus, ob.page.boundary, ob.monodromy
        blocks, belts = ob.page.blocks, ob.page.belts
    else:
        g, n, word, blocks, belts = ob.genus, ob.boundary, ob.word, ob.blocks, ob.belts
    out = []
    if g < 0:
        out.append(f"genus {g} is negative")
    if n < 1:
        out.append(f"page must have at least one boundary component (n={n})")
    if belts < 0:
        out.append(f"belt count {belts} is negative")
    if out:
        return out
    try:
        page = Surface(g, n, tuple(blocks), belts)
    except ValueError as exc:
        return [str(exc)]
    for pos, t in enumerate(word, 1):
        if not page.has_curve(t.curve):
            c = t.curve
            if c.kind in ("a", "b") and page.genus == 0:
                why = "no genus curves on a genus-0 page"
            else:
                why = f"not in the atlas of {page.describe()}"
            out.append(f"twist {pos} ({t.token}): {why}")
    return out


def ob_first_homology(ob: OpenBook) -> HomologySummary:
    return HomologySummary.of(cokernel_divisors(word_variation(ob.page, ob.monodromy)))


def _canonicalize(page: Surface, word: TwistWord) -> tuple[Surface, TwistWord]:
    """Merge adjacent boundary blocks whose closing d-curves the word never uses.

    Two such blocks describe the same page as one block of the combined size,
    with the same homology basis; only d/s indices shift.
    """
    blocks = list(page.blocks)
    twists = list(word.twists)
    while True:
        used = {t.curve.index for t in twists if t.curve.kind == "d"}
        ends = []
        start = 1
        for size in blocks:
            ends.append(start + size - 1)
            start += size
        pair = next(
            (i for i in range(len(blocks) - 1) if ends[i] not in used and ends[i + 1] not in used),
            None,
        )
        if pair is None:
            break
        dropped = ends[pair]

        def shift(c: AtlasCurve) -> AtlasCurve:
            if c.kind in ("d", "s") and c.index > dropped:
                return AtlasCurve(c.kind, c.index - 1)
            return c

        twists = [SignedTwist(shift(t.curve), t.sign) for t in twists]
        blocks[pair:pair + 2] = [blocks[pair] + blocks[pair + 1] - 1]
    return Surface(page.genus, page.boundary, tuple(blocks), page.belts), TwistWord(tuple(twists))


def ob_connected_sum(x: OpenBook, y: OpenBook) -> OpenBook:
    """Band sum of pages with monodromy x-word followed by the relabeled y-word."""
    px, py = x.page, y.page
    dx, dy = px.d_count, py.d_count
    page = Surface(
        px.genus + py.genus,
        px.boundary + py.boundary - 1,
        px.blocks + py.blocks,
        px.belts + py.belts,
    )

    def from_x(c: AtlasCurve) -> AtlasCurve:
        if c.kind == "s":
            return S(dx + dy + (c.index - dx))
        return c

    def from_y(c: AtlasCurve) -> AtlasCurve:
        if c.kind in ("a", "b"):
            return AtlasCurve(c.kind, c.index + px.genus)
        if c.kind == "d":
            return D(c.index + dx)
        return S(dx + dy + px.belts + (c.index - dy))

    twists = [SignedTwist(from_x(t.curve), t.sign) for t in x.monodromy]
    twists += [SignedTwist(from_y(t.curve), t.sign) for t in y.monodromy]
    page, word = _canonicalize(page, TwistWord(tuple(twists)))
    label = "#".join(l for l in (x.label, y.label) if l)
    return OpenBook(page, word, label)


def ob_stabilize(ob: OpenBook, sign: int = 1) -> OpenBook:
    """Add a boundary component with a belt curve and twist once along it."""
    if sign not in (1, -1):
        raise ValueError("stabilization sign must be +1 or -1")
    p = ob.page
    page = Surface(p.genus, p.boundary + 1, p.blocks, p.belts + 1)
    belt = S(p.d_count + p.belts + 1)
    word = TwistWord(ob.monodromy.twists + (SignedTwist(belt, sign),))
    suffix = "+" if sign > 0 else "-"
    label = f"{ob.label}/stab{suffix}" if ob.label else ""
    return OpenBook(page, word, label)


def disk() -> OpenBook:
    return OpenBook(Surface(0, 1), TwistWord(), "disk")


def annulus(power: int = 0) -> OpenBook:
    """Annulus with ``power`` twists along its core (sign from the power)."""
    sign = 1 if power >= 0 else -1
    return OpenBook(Surface(0, 2), TwistWord.of(*[(D(1), sign)] * abs(power)), f"annulus^{power}")


def trefoil() -> OpenBook:
    return OpenBook(Surface(1, 1), TwistWord.of((A(1), 1), (B(1), 1)), "trefoil")


def random_open_book(
    rng: random.Random,
    max_genus: int = 2,
    max_boundary: int = 3,
    max_length: int = 6,
    signs: tuple[int, ...] = (1, -1),
) -> OpenBook:
    g = rng.randint(0, max_genus)
    n = rng.randint(1, max_boundary)
    page = Surface(g, n)
    atlas = page.curves()
    length = rng.randint(0, max_length)
    twists = tuple(SignedTwist(rng.choice(atlas), rng.choice(signs)) for _ in range(length))
    return OpenBook(page, TwistWord(twists), f"rand-g{g}n{n}")
