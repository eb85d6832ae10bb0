"""Chart transcriptions shipped as data files.

Positions are stored as affine families: a family lists loop variables with
inclusive ``[start, stop, step]`` ranges and gives each coordinate as a
linear form in them (the key ``"1"`` is the constant term).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from importlib import resources
from typing import Mapping

from .errors import InvalidInput
from .specseq import Arrow, Coord, Window

SCHEMA_VERSION = 1
KNOWN = ("pic_ku_chart", "baut_m2ku_chart")


def _form(form: Mapping[str, int], env: Mapping[str, int]) -> int:
    try:
        return sum(int(c) * (1 if v == "1" else env[v]) for v, c in form.items())
    except KeyError as exc:
        raise InvalidInput(f"unbound variable {exc} in a transcription form") from exc


def expand(family: Mapping) -> list[dict[str, int]]:
    """All variable assignments of a family, in loop order."""
    names = list(family.get("vars", {}))
    ranges = []
    for v in names:
        spec = family["vars"][v]
        if len(spec) != 3 or spec[2] == 0:
            raise InvalidInput(f"range for {v} must be [start, stop, step]")
        a, b, step = (int(x) for x in spec)
        ranges.append(range(a, b + (1 if step > 0 else -1), step))
    return [dict(zip(names, combo)) for combo in itertools.product(*ranges)]


def _point(spec: Mapping, env) -> tuple[int, int]:
    return (_form(spec.get("n", {}), env), _form(spec.get("s", {}), env))


def to_st(n: int, s: int) -> Coord:
    return (s, n + s)


@dataclass(frozen=True)
class ChartArrow:
    family: str
    r: int
    source: tuple[int, int]   # (n, s)
    target: tuple[int, int]
    status: str
    check_only: bool

    def to_arrow(self) -> Arrow:
        return Arrow(self.r, to_st(*self.source), None, self.status, "transcribed",
                     f"{self.family}")


@dataclass(frozen=True)
class Transcription:
    name: str
    data: dict

    @property
    def clip(self) -> Window:
        c = self.data["clip"]
        return Window(c["n"][0], c["n"][1], c["s"][1], c["s"][0])

    def dots(self) -> list[tuple[int, int]]:
        out = []
        for fam in self.data.get("dots", []):
            out += [_point(fam["at"], env) for env in expand(fam)]
        return out

    def boxes(self) -> list[tuple[tuple[int, int], str]]:
        out = []
        for fam in self.data.get("boxes", []):
            out += [(_point(fam["at"], env), fam.get("group", "Z")) for env in expand(fam)]
        return out

    def stars(self) -> list[tuple[int, int]]:
        return [tuple(p) for p in self.data.get("stars", [])]

    def arrows(self) -> list[ChartArrow]:
        out = []
        for fam in self.data.get("arrows", []):
            r = int(fam["r"])
            for env in expand(fam) or [{}]:
                src, tgt = _point(fam["from"], env), _point(fam["to"], env)
                if tgt != (src[0] - 1, src[1] + r):
                    raise InvalidInput(f"{fam['family']}: {src} -> {tgt} is not a d_{r}")
                out.append(ChartArrow(fam["family"], r, src, tgt, fam.get("status", "known"),
                                      bool(fam.get("check_only", False))))
        return out

    def engine_arrows(self) -> list[Arrow]:
        """Arrows the engine installs, deduplicated, in (r, s, t) order."""
        seen = {}
        for a in self.arrows():
            if a.check_only:
                continue
            arrow = a.to_arrow()
            seen.setdefault((arrow.r, arrow.source), arrow)
        return [seen[k] for k in sorted(seen)]

    def open_arrows(self, window: Window) -> list[Arrow]:
        """Undecided differentials generated from the ``open`` patterns."""
        out = []
        for pat in self.data.get("open", []):
            r = int(pat["r"])
            mod, res = pat["s_mod"][1], pat["s_mod"][0]
            for s in range(window.s_min, window.s_max + 1):
                if s % mod != res:
                    continue
                if "source_t" in pat:
                    src = (s, int(pat["source_t"]))
                else:
                    src = (s - r, int(pat["target_t"]) - r + 1)
                    if src[0] < 0 or src[1] < 0:
                        continue
                out.append(Arrow(r, src, None, "unknown", "open pattern", pat.get("note", "")))
        return out

    def polygons(self) -> list[tuple[int, list[tuple[int, int]]]]:
        return [(int(p["page"]), [tuple(v) for v in p["polygon"]])
                for p in self.data.get("undefined_regions", [])]


def load(name: str) -> Transcription:
    """Load a shipped transcription by name (``pic_ku_chart``, ``baut_m2ku_chart``)."""
    if name not in KNOWN:
        raise InvalidInput(f"unknown transcription {name!r}; choose from {', '.join(KNOWN)}")
    text = resources.files("brauerkit.data").joinpath(f"{name}.json").read_text()
    return from_text(text, name)


def from_text(text: str, name: str = "custom") -> Transcription:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"transcription is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or data.get("schema_version") != SCHEMA_VERSION:
        raise InvalidInput(f"transcription needs schema_version {SCHEMA_VERSION}")
    for key in ("clip",):
        if key not in data:
            raise InvalidInput(f"transcription lacks {key!r}")
    return Transcription(data.get("name", name), data)
