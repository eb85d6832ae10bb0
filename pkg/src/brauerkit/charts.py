"""ASCII and SVG charts of spectral sequence pages.

Cells are drawn at (t - s, s). Conventions: a dot is Z/2, a square is Z, a
double square is Z^2, other groups get a text label, and a starred circle
marks a nonabelian slot. Arrows are differentials; dotted arrows are
undecided ones; undecided arrows generated from open patterns are not drawn,
only the "?" they leave on the cells they touch. In a fringed sequence the cells undefined on E_2 are hatched
dark and those lost on E_3 light.

Both renderers are deterministic: same page, same bytes.
"""
from __future__ import annotations

from .errors import InvalidInput
from .specseq import Arrow, Cell, Page, Window

UNIT = 20
MARGIN = 30


def _glyph(c: Cell | None) -> str:
    if c is None:
        return " . "
    if c.nonabelian:
        return "(*)"
    f = c.factors
    if f == (2,):
        g = " o "
    elif f == (0,):
        g = "[ ]"
    elif f == (0, 0):
        g = "[=]"
    else:
        text = str(c.group).replace(" + ", "+").replace("Z/", "")
        g = f"{text:^3}" if len(text) <= 3 else " # "
    if c.indeterminate:
        g = g[:2] + "?"
    return g


def _arrows(p: Page, window: Window, which: str) -> list[Arrow]:
    out = []
    for a in p.rules:
        if which == "page" and a.r != p.r:
            continue
        if which == "future" and a.r < p.r:
            continue
        if window.contains(*a.source) and window.contains(*a.target):
            out.append(a)
    return sorted(out, key=lambda a: (a.r, a.source[1] - a.source[0], a.source[0], a.status))


def _drawn(p: Page, a: Arrow) -> bool:
    """Draw a known arrow only if it acts on this page or a later one."""
    if a.status == "unknown":
        return a.provenance == "transcribed" and a.source not in p.certified
    if a.r == p.r:
        return a.source in p.differentials
    return a.source in p.cells and a.target in p.cells


def render_ascii(p: Page, window: Window | None = None, arrows: str = "future") -> str:
    w = window or p.window
    lines = [f"# {p.name or 'page'} E_{'inf' if p.stable else p.r}  n = t - s across, s up"]
    for s in range(w.s_max, w.s_min - 1, -1):
        row = []
        for n in range(w.n_min, w.n_max + 1):
            t = n + s
            if not p.region.contains(s, t, 2):
                row.append(" : ")
            elif p.region.fringed and not p.region.contains(s, t, max(p.r, 3)) and (s, t) not in p.cells:
                row.append(" ' ")
            else:
                row.append(_glyph(p.cells.get((s, t))))
        lines.append(f"{s:>3} |" + "".join(row).rstrip())
    lines.append("    +" + "---" * (w.n_max - w.n_min + 1))
    axis = "".join(f"{n:^3}" if n % 4 == 0 else "   " for n in range(w.n_min, w.n_max + 1))
    lines.append("     " + axis.rstrip())
    arrs = [a for a in _arrows(p, w, arrows) if _drawn(p, a)]
    if arrs:
        lines.append("")
        for a in arrs:
            (s, t), (s2, t2) = a.source, a.target
            mark = "?" if a.status == "unknown" else ""
            lines.append(f"d{a.r}{mark}: ({t - s},{s}) -> ({t2 - s2},{s2})")
    return "\n".join(lines) + "\n"


def _xy(w: Window, n: float, s: float) -> tuple[float, float]:
    return (MARGIN + (n - w.n_min) * UNIT, MARGIN + (w.s_max - s) * UNIT)


def _f(x: float) -> str:
    return f"{x:.1f}"


def render_svg(p: Page, window: Window | None = None, arrows: str = "future") -> str:
    w = window or p.window
    width = 2 * MARGIN + (w.n_max - w.n_min) * UNIT
    height = 2 * MARGIN + (w.s_max - w.s_min) * UNIT
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           "<defs>",
           '<pattern id="hatch2" width="4" height="4" patternUnits="userSpaceOnUse">'
           '<circle cx="2" cy="2" r="0.9" fill="#666"/></pattern>',
           '<pattern id="hatch3" width="4" height="4" patternUnits="userSpaceOnUse">'
           '<circle cx="2" cy="2" r="0.9" fill="#bbb"/></pattern>',
           '<marker id="head" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto">'
           '<path d="M0,0 L6,3 L0,6 z" fill="#888"/></marker>',
           "</defs>",
           f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>']
    # undefined regions
    if p.region.fringed:
        for s in range(w.s_min, w.s_max + 1):
            for n in range(w.n_min, w.n_max + 1):
                t = n + s
                fill = None
                if not p.region.contains(s, t, 2):
                    fill = "hatch2"
                elif not p.region.contains(s, t, 3):
                    fill = "hatch3"
                if fill:
                    x, y = _xy(w, n - 0.5, s + 0.5)
                    out.append(f'<rect x="{_f(x)}" y="{_f(y)}" width="{UNIT}" height="{UNIT}" '
                               f'fill="url(#{fill})"/>')
    # grid and axes
    for n in range(w.n_min, w.n_max + 1):
        x0, y0 = _xy(w, n, w.s_min)
        _, y1 = _xy(w, n, w.s_max)
        out.append(f'<line x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x0)}" y2="{_f(y1)}" '
                   'stroke="#eee" stroke-width="0.5"/>')
    for s in range(w.s_min, w.s_max + 1):
        x0, y0 = _xy(w, w.n_min, s)
        x1, _ = _xy(w, w.n_max, s)
        out.append(f'<line x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" y2="{_f(y0)}" '
                   'stroke="#eee" stroke-width="0.5"/>')
    x0, y0 = _xy(w, w.n_min, w.s_min)
    x1, _ = _xy(w, w.n_max, w.s_min)
    out.append(f'<line x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" y2="{_f(y0)}" stroke="black"/>')
    if w.n_min <= 0 <= w.n_max:
        xa, ya = _xy(w, 0, w.s_min)
        _, yb = _xy(w, 0, w.s_max)
        out.append(f'<line x1="{_f(xa)}" y1="{_f(ya)}" x2="{_f(xa)}" y2="{_f(yb)}" stroke="black"/>')
    for n in range(w.n_min, w.n_max + 1):
        if n % 4 == 0:
            x, y = _xy(w, n, w.s_min)
            out.append(f'<text x="{_f(x)}" y="{_f(y + 14)}" font-size="9" '
                       f'text-anchor="middle">{n}</text>')
    # arrows
    for a in _arrows(p, w, arrows):
        if not _drawn(p, a):
            continue
        (s, t), (s2, t2) = a.source, a.target
        xa, ya = _xy(w, t - s, s)
        xb, yb = _xy(w, t2 - s2, s2)
        dx, dy = xb - xa, yb - ya
        norm = (dx * dx + dy * dy) ** 0.5
        k = 5 / norm
        dash = ' stroke-dasharray="2,2"' if a.status == "unknown" else ""
        out.append(f'<line x1="{_f(xa + k * dx)}" y1="{_f(ya + k * dy)}" x2="{_f(xb - k * dx)}" '
                   f'y2="{_f(yb - k * dy)}" stroke="#888" stroke-width="0.8"{dash} '
                   'marker-end="url(#head)"/>')
    # cells
    for (s, t) in sorted(p.cells, key=lambda k: (k[0], k[1])):
        if not w.contains(s, t):
            continue
        c = p.cells[(s, t)]
        x, y = _xy(w, t - s, s)
        out.append(_svg_cell(c, x, y))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _svg_cell(c: Cell, x: float, y: float) -> str:
    q = "" if not c.indeterminate else ' stroke-dasharray="1,1"'
    if c.nonabelian:
        return (f'<circle cx="{_f(x)}" cy="{_f(y)}" r="6" fill="white" stroke="black"/>'
                f'<text x="{_f(x)}" y="{_f(y + 3)}" font-size="9" text-anchor="middle">*</text>')
    f = c.factors
    if f == (2,):
        fill = "white" if c.indeterminate else "black"
        return f'<circle cx="{_f(x)}" cy="{_f(y)}" r="3" fill="{fill}" stroke="black"{q}/>'
    if f == (0,):
        return f'<rect x="{_f(x - 4)}" y="{_f(y - 4)}" width="8" height="8" fill="white" stroke="black"{q}/>'
    if f == (0, 0):
        return (f'<rect x="{_f(x - 4)}" y="{_f(y - 4)}" width="8" height="8" fill="white" stroke="black"{q}/>'
                f'<rect x="{_f(x - 2)}" y="{_f(y - 2)}" width="4" height="4" fill="white" stroke="black"/>')
    label = str(c.group).replace(" + ", "+")
    return f'<text x="{_f(x)}" y="{_f(y + 3)}" font-size="7" text-anchor="middle">{label}</text>'


def render(p: Page, format: str = "ascii", window: Window | None = None, arrows: str = "future") -> str:
    if arrows not in ("all", "page", "future"):
        raise InvalidInput(f"arrows must be all, page or future, got {arrows!r}")
    if format == "ascii":
        return render_ascii(p, window, arrows)
    if format == "svg":
        return render_svg(p, window, arrows)
    raise InvalidInput(f"unknown chart format {format!r}")
