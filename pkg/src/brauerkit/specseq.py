"""Bigraded spectral sequences of finitely generated abelian groups.

Cells are indexed by (s, t) and drawn at (t - s, s). Every cell group is
kept in canonical invariant-factor form, so a differential is an integer
matrix between canonical coordinates (rows index the target factors).

Arrows are declared once for the whole sequence and installed page by page.
An arrow with ``matrix=None`` is "nonzero, map unspecified"; it is resolved
on its page when the answer does not depend on the choice. Arrows with
``status="unknown"`` are possible differentials that nobody has decided;
the engine never applies them but marks both ends as indeterminate.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import prod
from typing import Iterable, Mapping, Sequence

from .errors import (DeadDifferential, DSquareNonzero, Indeterminate, InvalidInput, NotStabilized,
                     RegionViolation, ShapeMismatch, SlotOutsideWindow)
from .exactalg import FinAbGroup, IntMatrix, cokernel, subquotient

Coord = tuple[int, int]


# ----------------------------------------------------------------------------
# regions and windows

@dataclass(frozen=True)
class Region:
    """Where E_r^{s,t} is defined.

    Spectra use the plain half plane s >= 0. For a fringed sequence the cell
    exists on E_r iff s >= 0 and either t >= s or
    (t - r)(r - 1) >= (r - 2)(s - r).
    """

    fringed: bool = False

    def contains(self, s: int, t: int, r: int) -> bool:
        if s < 0:
            return False
        if not self.fringed or t >= s:
            return True
        if r < 2:
            return False
        return (t - r) * (r - 1) >= (r - 2) * (s - r)

    def boundary(self, r: int, s: int) -> Fraction | None:
        """Least t with (s, t) defined on E_r, as a rational bound."""
        if not self.fringed:
            return None
        if r < 2:
            return Fraction(s)
        return min(Fraction(s), r + Fraction((r - 2) * (s - r), r - 1))

    def to_json(self) -> dict:
        return {"fringed": self.fringed}


SPECTRUM = Region(False)
FRINGED = Region(True)


@dataclass(frozen=True)
class Window:
    """Bounds n_min <= t - s <= n_max and s_min <= s <= s_max."""

    n_min: int
    n_max: int
    s_max: int
    s_min: int = 0

    def __post_init__(self):
        if self.n_min > self.n_max or self.s_min > self.s_max or self.s_min < 0:
            raise InvalidInput(f"empty window {self}")

    def contains(self, s: int, t: int) -> bool:
        return self.s_min <= s <= self.s_max and self.n_min <= t - s <= self.n_max

    def within(self, other: "Window") -> bool:
        return (other.n_min <= self.n_min and self.n_max <= other.n_max
                and other.s_min <= self.s_min and self.s_max <= other.s_max)

    @classmethod
    def parse(cls, text: str, s_max: int) -> "Window":
        """``"a:b"`` gives a <= t - s <= b, used by the CLI."""
        try:
            a, b = (int(x) for x in text.split(":"))
        except ValueError as exc:
            raise InvalidInput(f"window must look like a:b, got {text!r}") from exc
        return cls(a, b, s_max)

    def to_json(self) -> dict:
        return {"n": [self.n_min, self.n_max], "s": [self.s_min, self.s_max]}


# ----------------------------------------------------------------------------
# cells and arrows

@dataclass(frozen=True)
class Cell:
    """One E_r^{s,t}.

    ``reps[i]`` writes the i-th canonical generator in the E_2 coordinates of
    the same cell; ``basis`` names those E_2 generators.
    """

    group: FinAbGroup
    basis: tuple[str, ...] = ()
    reps: tuple[tuple[int, ...], ...] = ()
    base: tuple[int, ...] = ()
    nonabelian: bool = False
    fringe: bool = False
    certified: bool = False
    indeterminate: tuple[str, ...] = ()
    provenance: str = "computed"
    note: str = ""

    @classmethod
    def of(cls, group: FinAbGroup, basis: Sequence[str] | None = None, **kw) -> "Cell":
        k = len(group.invariant_factors)
        if basis is None:
            basis = tuple(f"e{i}" for i in range(k)) if k > 1 else ("x",) * k
        if len(basis) != k:
            raise ShapeMismatch(f"{len(basis)} labels for {k} generators")
        reps = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
        return cls(group, tuple(basis), reps, group.invariant_factors, **kw)

    @classmethod
    def star(cls, note: str = "", **kw) -> "Cell":
        """Placeholder for a nonabelian or non-group slot."""
        return cls(FinAbGroup(()), (), (), nonabelian=True, note=note, **kw)

    @property
    def factors(self) -> tuple[int, ...]:
        return self.group.invariant_factors

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def is_zero(self) -> bool:
        return not self.nonabelian and self.group.is_trivial()

    @property
    def determinate(self) -> bool:
        return not self.indeterminate

    @property
    def labels(self) -> tuple[str, ...]:
        out = []
        e2 = self.base or (0,) * len(self.basis)
        for rep in self.reps:
            terms = []
            for c, name, d in zip(rep, self.basis, e2):
                c = c % d if d else c
                if d and c > d // 2:
                    c -= d
                if c == 1:
                    terms.append(name)
                elif c == -1:
                    terms.append(f"-{name}")
                elif c:
                    terms.append(f"{c}{name}")
            out.append(" + ".join(terms) if terms else "0")
        return tuple(out)

    def flagged(self, reason: str) -> "Cell":
        if reason in self.indeterminate:
            return self
        return replace(self, indeterminate=self.indeterminate + (reason,))

    def to_json(self) -> dict:
        out = {"group": self.group.to_json(), "labels": list(self.labels)}
        if self.nonabelian:
            out["nonabelian"] = True
        if self.fringe:
            out["fringe"] = True
        if self.certified:
            out["certified"] = True
        if self.indeterminate:
            out["indeterminate"] = list(self.indeterminate)
        if self.note:
            out["note"] = self.note
        out["provenance"] = self.provenance
        return out


@dataclass(frozen=True)
class Arrow:
    r: int
    source: Coord
    matrix: tuple[tuple[int, ...], ...] | None = None
    status: str = "known"
    provenance: str = "transcribed"
    note: str = ""

    def __post_init__(self):
        if self.r < 2:
            raise InvalidInput(f"differentials start on E_2, got d_{self.r}")
        if self.status not in ("known", "unknown"):
            raise InvalidInput(f"bad arrow status {self.status!r}")
        if self.matrix is not None:
            object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in row) for row in self.matrix))
        object.__setattr__(self, "source", (int(self.source[0]), int(self.source[1])))

    @property
    def target(self) -> Coord:
        s, t = self.source
        return (s + self.r, t + self.r - 1)

    def to_json(self) -> dict:
        out = {"r": self.r, "source": list(self.source), "target": list(self.target),
               "status": self.status, "provenance": self.provenance}
        if self.matrix is not None:
            out["matrix"] = [list(row) for row in self.matrix]
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class HiddenExtension:
    """Extension data in total degree n.

    A link ``(s, s2)`` says that |E_inf^{s}| times the generator of filtration
    s equals the generator of filtration s2 > s.
    """

    degree: int
    links: tuple[tuple[int, int], ...]
    citation: str = ""

    def __post_init__(self):
        links = tuple((int(a), int(b)) for a, b in self.links)
        for a, b in links:
            if b <= a:
                raise InvalidInput(f"extension link {a} -> {b} must raise filtration")
        object.__setattr__(self, "links", links)


# ----------------------------------------------------------------------------
# pages

@dataclass(frozen=True)
class Page:
    r: int
    cells: Mapping[Coord, Cell]
    differentials: Mapping[Coord, IntMatrix]
    rules: tuple[Arrow, ...]
    region: Region
    window: Window
    certified: frozenset = frozenset()
    open_arrows: tuple[Arrow, ...] = ()
    settled_arrows: tuple[Arrow, ...] = ()
    clipped: tuple[Coord, ...] = ()
    name: str = ""
    stable: bool = False
    e2_factors: Mapping[Coord, tuple[int, ...]] = field(default_factory=dict)

    def cell(self, s: int, t: int) -> Cell | None:
        return self.cells.get((s, t))

    def group(self, s: int, t: int) -> FinAbGroup:
        c = self.cells.get((s, t))
        return c.group if c is not None else FinAbGroup(())

    def defined(self, s: int, t: int) -> bool:
        return self.region.contains(s, t, self.r) and self.window.contains(s, t)

    def degree(self, n: int) -> list[tuple[Coord, Cell]]:
        return sorted(((k, c) for k, c in self.cells.items() if k[1] - k[0] == n),
                      key=lambda kc: kc[0][0])

    def labels(self, s: int, t: int) -> tuple[str, ...]:
        c = self.cells.get((s, t))
        if c is None:
            return ()
        return c.labels

    def nonzero(self) -> list[Coord]:
        return sorted(self.cells, key=lambda k: (k[1] - k[0], k[0]))

    def to_json(self) -> dict:
        cells = []
        for k in sorted(self.cells, key=lambda k: (k[0], k[1])):
            c = self.cells[k]
            cells.append({"s": k[0], "t": k[1], "n": k[1] - k[0], **c.to_json()})
        diffs = []
        for k in sorted(self.differentials):
            m = self.differentials[k]
            diffs.append({"source": list(k), "target": [k[0] + self.r, k[1] + self.r - 1],
                          "matrix": m.to_lists()})
        return {
            "r": "inf" if self.stable else self.r,
            "window": self.window.to_json(),
            "region": self.region.to_json(),
            "cells": cells,
            "differentials": diffs,
            "open": [a.to_json() for a in self.open_arrows],
            "settled": [a.to_json() for a in self.settled_arrows],
            "clipped": [list(k) for k in self.clipped],
        }


def _diag(factors: Sequence[int]) -> IntMatrix:
    return IntMatrix.diag(list(factors))


def _zero_in(col: Sequence[int], factors: Sequence[int]) -> bool:
    """Is the coordinate vector zero in the canonical group with these factors?"""
    return all((x % d == 0) if d else x == 0 for x, d in zip(col, factors))


def _well_defined(m: IntMatrix, src: Sequence[int], tgt: Sequence[int]) -> bool:
    for j, d in enumerate(src):
        if d and not _zero_in([d * m[i, j] for i in range(m.rows)], tgt):
            return False
    return True


def _is_zero_map(m: IntMatrix, tgt: Sequence[int]) -> bool:
    return all(_zero_in(col, tgt) for col in m.columns())


def _resolve(arrow: Arrow, src: Cell, tgt: Cell) -> tuple[IntMatrix, str | None]:
    """Matrix of ``arrow`` on its page, plus a flag for the source if needed."""
    sf, tf = src.factors, tgt.factors
    if arrow.matrix is not None:
        m = IntMatrix.of(arrow.matrix, cols=len(sf))
        if m.rows != len(tf) or m.cols != len(sf):
            raise ShapeMismatch(f"d_{arrow.r} at {arrow.source} needs a {len(tf)}x{len(sf)} matrix")
        if not _well_defined(m, sf, tf):
            raise InvalidInput(f"d_{arrow.r} at {arrow.source} is not a homomorphism")
        return m, None
    if tf != (2,):
        raise InvalidInput(f"d_{arrow.r} at {arrow.source} lands in {tgt.group}; "
                           "an explicit matrix is required")
    hits = [j for j, d in enumerate(sf) if d % 2 == 0]
    if not hits:
        raise DeadDifferential(f"no nonzero map {src.group} -> Z/2 for d_{arrow.r} at {arrow.source}")
    row = [0] * len(sf)
    row[hits[0]] = 1
    flag = None
    if len(sf) > 1 and any(d for d in sf):
        flag = f"d_{arrow.r} map unspecified"
    return IntMatrix.of([row], cols=len(sf)), flag


def _positive(v: tuple[int, ...]) -> tuple[int, ...]:
    # g and -g generate the same cyclic factor; prefer a positive leading entry
    lead = next((x for x in v if x), 0)
    return tuple(-x for x in v) if lead < 0 else v


def _install(cells: dict[Coord, Cell], rules: Sequence[Arrow], r: int, region: Region,
             window: Window, certified: frozenset):
    """Differentials d_r living on a page with the given cells."""
    diffs: dict[Coord, IntMatrix] = {}
    open_arrows, settled, clipped = [], [], []
    marks: dict[Coord, list[str]] = {}

    def mark(k, why):
        if k in cells:
            marks.setdefault(k, []).append(why)

    for a in rules:
        if a.r != r:
            continue
        src_k, tgt_k = a.source, a.target
        src_in, tgt_in = window.contains(*src_k), window.contains(*tgt_k)
        if not src_in and not tgt_in:
            continue
        if src_in != tgt_in:
            inside = src_k if src_in else tgt_k
            if inside in cells:
                clipped.append(inside)
                mark(inside, f"d_{r} crosses the window edge")
            continue
        src, tgt = cells.get(src_k), cells.get(tgt_k)
        if a.status == "unknown":
            if src is None or tgt is None:
                continue
            if src_k in certified:
                settled.append(a)
                continue
            open_arrows.append(a)
            continue
        declared_nonzero = a.matrix is None or any(any(row) for row in a.matrix)
        for k, c in ((src_k, src), (tgt_k, tgt)):
            if c is None and declared_nonzero:
                if not region.contains(*k, r):
                    raise RegionViolation(f"d_{r} {src_k} -> {tgt_k}: {k} is undefined on E_{r}")
                if a.matrix is None:
                    raise DeadDifferential(f"d_{r} {src_k} -> {tgt_k}: {k} is zero on E_{r}")
        if src is None or tgt is None:
            continue
        if src.nonabelian or tgt.nonabelian:
            raise InvalidInput(f"d_{r} at {src_k} touches a nonabelian slot")
        m, flag = _resolve(a, src, tgt)
        if _is_zero_map(m, tgt.factors):
            continue
        if src_k in certified:
            raise DSquareNonzero(f"certified permanent cycle {src_k} supports d_{r}")
        if src_k in diffs:
            raise InvalidInput(f"two d_{r} rules start at {src_k}")
        diffs[src_k] = m
        if flag:
            mark(src_k, flag)

    for k, m in diffs.items():
        nxt = (k[0] + r, k[1] + r - 1)
        if nxt in diffs:
            comp = diffs[nxt] @ m
            tgt2 = cells[(nxt[0] + r, nxt[1] + r - 1)]
            if not _is_zero_map(comp, tgt2.factors):
                raise DSquareNonzero(f"d_{r} o d_{r} is nonzero starting at {k}")

    out = dict(cells)
    for k, whys in marks.items():
        c = out[k]
        for w in whys:
            c = c.flagged(w)
        out[k] = c
    return out, diffs, tuple(open_arrows), tuple(settled), tuple(sorted(set(clipped)))


def make_sequence(e2: Mapping[Coord, Cell | FinAbGroup], rules: Iterable[Arrow], window: Window,
                  region: Region = SPECTRUM, certified: Iterable[Coord] = (), name: str = "") -> Page:
    """Validated E_2 page. Cells outside ``window`` are dropped."""
    rules = tuple(rules)
    certified = frozenset((int(s), int(t)) for s, t in certified)
    cells: dict[Coord, Cell] = {}
    for (s, t), c in e2.items():
        if isinstance(c, FinAbGroup):
            c = Cell.of(c)
        if not window.contains(s, t) or c.is_zero:
            continue
        if not region.contains(s, t, 2):
            raise RegionViolation(f"E_2 cell at (s,t)=({s},{t}) lies outside the region of definition")
        if region.fringed and t in (0, 1) and not c.fringe:
            c = replace(c, fringe=True)
        if (s, t) in certified and not c.certified:
            c = replace(c, certified=True)
        cells[(s, t)] = c
    e2_factors = {k: c.factors for k, c in cells.items()}
    cells, diffs, opened, settled, clipped = _install(cells, rules, 2, region, window, certified)
    return Page(2, cells, diffs, rules, region, window, certified, opened, settled, clipped,
                name, False, e2_factors)


def turn_page(p: Page) -> Page:
    """E_{r+1} = ker d_r / im d_r, cell by cell."""
    r = p.r
    new: dict[Coord, Cell] = {}
    for (s, t), c in p.cells.items():
        if not p.region.contains(s, t, r + 1):
            continue
        out = p.differentials.get((s, t))
        inc = p.differentials.get((s - r, t - r + 1))
        if c.nonabelian or (out is None and inc is None):
            new[(s, t)] = c
            continue
        k = c.rank
        tgt_factors = p.cells[(s + r, t + r - 1)].factors if out is not None else ()
        sq = subquotient(out if out is not None else IntMatrix.zeros(0, k),
                         inc if inc is not None else IntMatrix.zeros(k, 0),
                         source_relations=_diag(c.factors),
                         target_relations=_diag(tgt_factors))
        if sq.group.is_trivial():
            continue
        reps = tuple(_positive(tuple(sum(g[i] * c.reps[i][j] for i in range(k))
                                     for j in range(len(c.basis))))
                     for g in sq.generators)
        new[(s, t)] = replace(c, group=sq.group, reps=reps)
    for a in p.open_arrows:
        for k in (a.source, a.target):
            if k in new:
                new[k] = new[k].flagged(f"open d_{a.r} {a.source} -> {a.target}")
    cells, diffs, opened, settled, clipped = _install(new, p.rules, r + 1, p.region, p.window,
                                                      p.certified)
    return Page(r + 1, cells, diffs, p.rules, p.region, p.window, p.certified, opened,
                p.settled_arrows + settled, tuple(sorted(set(p.clipped + clipped))), p.name,
                False, p.e2_factors)


def restrict(p: Page, window: Window) -> Page:
    """The same page seen through a smaller window."""
    if not window.within(p.window):
        raise InvalidInput(f"window {window} exceeds the computed window {p.window}")
    keep = {k: c for k, c in p.cells.items() if window.contains(*k)}
    diffs = {k: m for k, m in p.differentials.items()
             if window.contains(*k) and window.contains(k[0] + p.r, k[1] + p.r - 1)}
    return replace(p, cells=keep, differentials=diffs, window=window)


def pages(p: Page, r_last: int) -> list[Page]:
    """``[p, turn_page(p), ...]`` up to and including E_{r_last}."""
    out = [p]
    while out[-1].r < r_last:
        out.append(turn_page(out[-1]))
    return out


def e_infinity(p: Page, window: Window | None = None, r_max: int | None = None) -> Page:
    """Run to E_{r_max + 1} and restrict to ``window``.

    Raises NotStabilized if a declared differential longer than ``r_max``
    touches the computation window.
    """
    longest = max((a.r for a in p.rules), default=p.r)
    if r_max is None:
        r_max = max(longest, p.r)
    late = [a for a in p.rules
            if a.r > r_max and (p.window.contains(*a.source) or p.window.contains(*a.target))]
    if late:
        a = late[0]
        raise NotStabilized(f"d_{a.r} at {a.source} is beyond r_max={r_max}")
    q = p
    while q.r <= r_max:
        q = turn_page(q)
    w = window or p.window
    if not w.within(p.window):
        raise InvalidInput(f"window {w} exceeds the computed window {p.window}")
    cells = {k: c for k, c in q.cells.items() if w.contains(*k)}
    if q.region.fringed:
        cells = {k: c for k, c in cells.items() if _stable_region(q.region, *k)}
    return replace(q, cells=cells, differentials={}, stable=True,
                   open_arrows=tuple(a for a in q.open_arrows))


def _stable_region(region: Region, s: int, t: int) -> bool:
    # limit of the fringe region as r grows: t - s >= 0, or t - s = -1
    return t - s >= -1 and s >= 0 if region.fringed else s >= 0


# ----------------------------------------------------------------------------
# assembly

@dataclass(frozen=True)
class Assembly:
    degree: int
    group: FinAbGroup
    filtration: tuple[tuple[int, FinAbGroup], ...]
    ambiguous: bool
    links: tuple[tuple[int, int], ...] = ()

    def to_json(self) -> dict:
        return {"degree": self.degree, "group": self.group.to_json(),
                "filtration": [{"s": s, "group": g.to_json()} for s, g in self.filtration],
                "ambiguous": self.ambiguous, "links": [list(l) for l in self.links]}


def assemble_degree(p: Page, n: int, ext: Sequence[HiddenExtension] = ()) -> Assembly:
    """Reassemble total degree ``n`` from its filtration quotients."""
    cells = p.degree(n)
    bad = [(k, c) for k, c in cells
           if c.indeterminate or c.nonabelian or (c.fringe and not c.certified)]
    if bad:
        k, c = bad[0]
        why = ", ".join(c.indeterminate) or ("nonabelian" if c.nonabelian else "fringe cell")
        raise Indeterminate(f"degree {n}: cell (s,t)={k} is not determinate ({why})")
    links = tuple(l for e in ext if e.degree == n for l in e.links)
    by_s = {k[0]: c for k, c in cells}
    offsets, total = {}, 0
    for k, c in cells:
        offsets[k[0]] = total
        total += c.rank
    rel_cols = []
    linked = dict(links)
    if len(linked) != len(links):
        raise InvalidInput(f"degree {n}: a filtration is linked twice")
    for a, b in links:
        if a not in by_s or b not in by_s:
            raise InvalidInput(f"degree {n}: link {a} -> {b} meets an empty filtration")
        if not (by_s[a].group.is_cyclic() and by_s[b].group.is_cyclic()):
            raise InvalidInput(f"degree {n}: extension links need cyclic quotients")
        if not by_s[a].group.is_finite:
            raise InvalidInput(f"degree {n}: cannot extend past an infinite quotient")
    for k, c in cells:
        s = k[0]
        for j, d in enumerate(c.factors):
            if d == 0:
                continue
            col = [0] * total
            col[offsets[s] + j] = d
            if s in linked:
                col[offsets[linked[s]]] -= 1
            rel_cols.append(col)
    if total == 0:
        group = FinAbGroup(())
    else:
        group = cokernel(IntMatrix.from_columns(rel_cols, total) if rel_cols
                         else IntMatrix.zeros(total, 0))
    filtration = tuple((k[0], c.group) for k, c in cells)
    if all(g.is_finite for _, g in filtration):
        expected = prod(g.order for _, g in filtration)
        if group.order != expected:
            raise DSquareNonzero(f"degree {n}: assembled order {group.order} != {expected}")
    ambiguous = not links and sum(1 for _, g in filtration if not g.is_trivial()) > 1
    return Assembly(n, group, filtration, ambiguous, links)


# ----------------------------------------------------------------------------
# obstruction slots

_SLOT_KINDS = ("theta_odd", "theta_even", "lift_difference")


@dataclass(frozen=True)
class ObstructionSlot:
    """A cell that receives an obstruction or parametrizes lifts.

    ``r`` is the page the slot lives on: theta_even sits at E_r^{2r,2r-1},
    theta_odd at E_r^{2r-1,2r-2} (the class numbered 2r-1), and differences
    of lifts on the diagonal t = s.
    """

    kind: str
    s: int
    t: int
    r: int

    def __post_init__(self):
        k, s, t, r = self.kind, self.s, self.t, self.r
        if k not in _SLOT_KINDS:
            raise InvalidInput(f"unknown slot kind {k!r}")
        ok = {"theta_even": r >= 2 and (s, t) == (2 * r, 2 * r - 1),
              "theta_odd": r >= 2 and (s, t) == (2 * r - 1, 2 * r - 2),
              "lift_difference": r >= 2 and s == t and s >= 0}[k]
        if not ok:
            raise InvalidInput(f"{k} cannot sit at E_{r}^{{{s},{t}}}")


def permanent_cycle_certificate(seq: Sequence[Page], k: Coord, r_from: int) -> tuple[bool, str]:
    """Check that no d_r with r >= r_from can leave the cell ``k``.

    Computed pages are inspected directly. Past the last one a longer
    differential must land in a zero E_2 cell, or outside the region.
    """
    s, t = k
    last = seq[-1]
    for p in seq:
        if p.r >= r_from and k in p.differentials:
            return False, f"supports d_{p.r}"
    if any(a.status == "known" and a.source == k and a.r > last.r for a in last.rules):
        return False, "a longer differential is declared"
    if any(k in (a.source, a.target) for p in seq for a in p.open_arrows):
        return False, "meets an open differential"
    e2 = seq[0].e2_factors
    if not last.region.fringed or t - s - 1 >= 0:
        return False, "no vanishing region above this cell"
    # the target (s + r, t + r - 1) leaves the region once r(t-1-s) < t-1-2s
    r_bound = (t - 1 - 2 * s) // (t - 1 - s)
    for r in range(max(r_from, last.r + 1), r_bound + 1):
        tgt = (s + r, t + r - 1)
        if not last.region.contains(*tgt, r):
            continue
        if not last.window.contains(*tgt):
            return False, f"d_{r} target {tgt} lies outside the window"
        if tgt in e2:
            return False, f"d_{r} target {tgt} is nonzero on E_2"
    return True, f"targets of d_r vanish for r <= {r_bound} and leave the region beyond"


def obstruction_groups(seq: Sequence[Page], slots: Sequence[ObstructionSlot]) -> list[dict]:
    """Group, page and status at each slot."""
    by_r = {p.r: p for p in seq if not p.stable}
    out = []
    for slot in slots:
        p = by_r.get(slot.r)
        if p is None or not p.window.contains(slot.s, slot.t):
            raise SlotOutsideWindow(f"{slot.kind} at E_{slot.r}^{{{slot.s},{slot.t}}} was not computed")
        c = p.cell(slot.s, slot.t)
        if not p.region.contains(slot.s, slot.t, slot.r):
            status = "undefined"
        elif c is not None and c.indeterminate:
            status = "indeterminate"
        else:
            status = "determinate"
        row = {"kind": slot.kind, "s": slot.s, "t": slot.t, "r": slot.r,
               "group": p.group(slot.s, slot.t).to_json(), "status": status}
        if slot.kind == "lift_difference":
            ok, why = permanent_cycle_certificate(
                [q for q in seq if not q.stable and q.r >= slot.r], (slot.s, slot.t), slot.r)
            row["permanent"] = ok
            row["certificate"] = why
        out.append(row)
    return out


def vanishing_scan(p: Page, s_min: int, n_min: int) -> list[Coord]:
    """Nonzero cells of ``p`` with s >= s_min and t - s >= n_min."""
    return sorted(k for k, c in p.cells.items()
                  if k[0] >= s_min and k[1] - k[0] >= n_min and not c.is_zero)


def render_chart(p: Page, format: str = "ascii", **kw) -> str:
    from .charts import render
    return render(p, format, **kw)
