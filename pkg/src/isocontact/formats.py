"""Line-oriented text formats for open books and five-folds."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .certifier import FiveFoldDescription
from .mcg import TwistWord
from .openbook import OpenBook, RawOpenBook, ob_validate


class FormatError(ValueError):
    def __init__(self, lineno: int | None, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


@dataclass(frozen=True)
class OpenBookFile:
    book: OpenBook
    c1: str = "auto"


@dataclass(frozen=True)
class FiveFoldFile:
    description: FiveFoldDescription
    c1: str | None = None
    label: str = ""


_KV = re.compile(r"^([a-z0-9_]+)=(\S+)$")
# '#' opens a comment only at line start or after whitespace, so labels like a#b survive
_COMMENT = re.compile(r"(^|\s)#.*$")


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), 1):
        line = _COMMENT.sub("", raw).strip()
        if line:
            yield i, line


def _pairs(lineno: int, items: list[str], allowed: set[str]) -> dict[str, str]:
    out = {}
    for item in items:
        m = _KV.match(item)
        if not m:
            raise FormatError(lineno, f"expected key=value, got {item!r}")
        k, v = m.groups()
        if k not in allowed:
            raise FormatError(lineno, f"unknown key {k!r}")
        if k in out:
            raise FormatError(lineno, f"duplicate key {k!r}")
        out[k] = v
    return out


def _int(lineno: int, key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise FormatError(lineno, f"{key} must be an integer, got {value!r}") from None


def parse_openbook_file(text: str, default_label: str = "") -> OpenBookFile:
    surface = None
    word_line = None
    word = TwistWord()
    c1 = "auto"
    label = default_label
    seen: set[str] = set()
    for lineno, line in _lines(text):
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key in seen:
            raise FormatError(lineno, f"duplicate {key!r} line")
        if key == "surface":
            kv = _pairs(lineno, rest.split(), {"g", "n", "blocks", "belts"})
            if "g" not in kv or "n" not in kv:
                raise FormatError(lineno, "surface needs g= and n=")
            blocks = ()
            if "blocks" in kv:
                blocks = tuple(_int(lineno, "blocks", b) for b in kv["blocks"].split(","))
            surface = (
                lineno,
                _int(lineno, "g", kv["g"]),
                _int(lineno, "n", kv["n"]),
                blocks,
                _int(lineno, "belts", kv.get("belts", "0")),
            )
        elif key == "word":
            try:
                word = TwistWord.parse(rest)
            except ValueError as exc:
                raise FormatError(lineno, str(exc)) from None
            word_line = lineno
        elif key == "contact":
            kv = _pairs(lineno, rest.split(), {"c1"})
            if kv.get("c1") not in ("zero", "nonzero", "auto"):
                raise FormatError(lineno, "contact line needs c1=zero|nonzero|auto")
            c1 = kv["c1"]
        elif key == "label":
            if not rest:
                raise FormatError(lineno, "empty label")
            label = rest
        else:
            raise FormatError(lineno, f"unknown key {key!r}")
        seen.add(key)
    if surface is None:
        raise FormatError(None, "missing 'surface' line")
    s_line, g, n, blocks, belts = surface
    raw = RawOpenBook(g, n, word, blocks, belts, label)
    problems = ob_validate(raw)
    if problems:
        where = word_line if word_line and all(p.startswith("twist") for p in problems) else s_line
        raise FormatError(where, "; ".join(problems))
    return OpenBookFile(OpenBook.from_raw(raw), c1)


def render_openbook(ob: OpenBook, c1: str = "auto") -> str:
    p = ob.page
    head = f"surface g={p.genus} n={p.boundary}"
    if not p.is_plain:
        head += f" blocks={','.join(map(str, p.blocks))} belts={p.belts}"
    lines = [head, f"word {ob.monodromy.render()}".rstrip()]
    if c1 != "auto":
        lines.append(f"contact c1={c1}")
    if ob.label:
        lines.append(f"label {ob.label}")
    return "\n".join(lines) + "\n"


def parse_fivefold_file(text: str, default_label: str = "") -> FiveFoldFile:
    body = list(_lines(text))
    if not body or body[0][1] != "fivefold":
        raise FormatError(body[0][0] if body else None, "expected 'fivefold' header")
    s2xs3 = twisted = 0
    mk: dict[int, int] = {}
    c1 = None
    label = default_label
    for lineno, line in body[1:]:
        key, _, rest = line.partition(" ")
        parts = rest.split()
        if key == "summand":
            if not parts:
                raise FormatError(lineno, "summand needs a kind")
            kind, items = parts[0], parts[1:]
            if kind == "s2xs3":
                kv = _pairs(lineno, items, {"count"})
                s2xs3 += _count(lineno, kv)
            elif kind == "twisted":
                kv = _pairs(lineno, items, {"count"})
                twisted += _count(lineno, kv)
            elif kind == "mk":
                kv = _pairs(lineno, items, {"k", "count"})
                if "k" not in kv:
                    raise FormatError(lineno, "mk summand needs k=")
                k = _int(lineno, "k", kv["k"])
                if k < 2:
                    raise FormatError(lineno, f"M_k requires k >= 2, got k={k}")
                mk[k] = mk.get(k, 0) + _count(lineno, kv)
            else:
                raise FormatError(lineno, f"unknown summand kind {kind!r}")
        elif key == "contact":
            if c1 is not None:
                raise FormatError(lineno, "duplicate 'contact' line")
            kv = _pairs(lineno, parts, {"c1"})
            if kv.get("c1") not in ("zero", "nonzero"):
                raise FormatError(lineno, "contact line needs c1=zero|nonzero")
            c1 = kv["c1"]
        elif key == "label":
            label = rest.strip()
        else:
            raise FormatError(lineno, f"unknown key {key!r}")
    desc = FiveFoldDescription(s2xs3, tuple(sorted((k, c) for k, c in mk.items() if c)), twisted)
    return FiveFoldFile(desc, c1, label)


def _count(lineno: int, kv: dict[str, str]) -> int:
    n = _int(lineno, "count", kv.get("count", "1"))
    if n < 0:
        raise FormatError(lineno, "count must be nonnegative")
    return n


def render_fivefold(f: FiveFoldFile) -> str:
    d = f.description
    lines = ["fivefold"]
    if d.s2xs3_count:
        lines.append(f"summand s2xs3 count={d.s2xs3_count}")
    lines += [f"summand mk k={k} count={c}" for k, c in d.mk if c]
    if d.twisted_count:
        lines.append(f"summand twisted count={d.twisted_count}")
    if f.c1:
        lines.append(f"contact c1={f.c1}")
    if f.label:
        lines.append(f"label {f.label}")
    return "\n".join(lines) + "\n"
