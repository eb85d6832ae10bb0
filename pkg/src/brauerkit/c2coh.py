"""Cohomology of the group C_2 via the 2-periodic resolution.

A C_2-module is Z^n modulo the columns of a relation matrix, with an
involution sigma. The cochain complex is M -> M -> M -> ... with
differentials sigma - 1, 1 + sigma, sigma - 1, ...
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Mapping

from .errors import BadChart, InvalidInput, NotExact, ShapeMismatch
from .exactalg import (FinAbGroup, IntMatrix, Subquotient, cokernel, hom_is_isomorphism,
                       in_lattice, rank_mod_p, solve_integer, subquotient)


@dataclass(frozen=True)
class C2Module:
    sigma: IntMatrix
    relations: IntMatrix
    name: str = ""

    def __post_init__(self):
        s = IntMatrix.of(self.sigma)
        n = s.rows
        if s.cols != n:
            raise ShapeMismatch("sigma must be square")
        rel = IntMatrix.zeros(n, 0) if self.relations is None else IntMatrix.of(self.relations, cols=None)
        if rel.rows != n and not (rel.rows == 0 and rel.cols == 0):
            raise ShapeMismatch("relations must have one row per generator")
        if rel.rows == 0:
            rel = IntMatrix.zeros(n, 0)
        object.__setattr__(self, "sigma", s)
        object.__setattr__(self, "relations", rel)
        for col in (s @ rel).columns():
            if not in_lattice(rel, col):
                raise InvalidInput("sigma does not preserve the relations")
        sq = s @ s - IntMatrix.identity(n)
        for col in sq.columns():
            if not in_lattice(rel, col):
                raise InvalidInput("sigma is not an involution")

    @property
    def rank(self) -> int:
        return self.sigma.rows

    @property
    def group(self) -> FinAbGroup:
        return cokernel(self.relations)

    def d(self, s: int) -> IntMatrix:
        """The cochain differential C^s -> C^{s+1}."""
        one = IntMatrix.identity(self.rank)
        return self.sigma - one if s % 2 == 0 else self.sigma + one

    # constructors
    @classmethod
    def trivial(cls, n: int = 0, rank: int = 1) -> "C2Module":
        """(Z/n)^rank with trivial action (n = 0 for Z)."""
        rel = IntMatrix.diag([n] * rank) if n else IntMatrix.zeros(rank, 0)
        return cls(IntMatrix.identity(rank), rel, f"Z/{n}" if n else "Z")

    @classmethod
    def sign(cls, n: int = 0) -> "C2Module":
        """Z (or Z/n) with sigma = -1."""
        rel = IntMatrix.diag([n]) if n else IntMatrix.zeros(1, 0)
        return cls(IntMatrix.of([[-1]]), rel, "Z^-" if not n else f"Z/{n}^-")

    @classmethod
    def regular(cls) -> "C2Module":
        """Z[C_2] with the swap action."""
        return cls(IntMatrix.of([[0, 1], [1, 0]]), IntMatrix.zeros(2, 0), "Z[C2]")

    @classmethod
    def induced(cls, m: "C2Module") -> "C2Module":
        """M + sigma M with the swap involution."""
        n = m.rank
        rows = [[0] * n + [int(i == j) for j in range(n)] for i in range(n)]
        rows += [[int(i == j) for j in range(n)] + [0] * n for i in range(n)]
        rel_cols = [tuple(c) + (0,) * n for c in m.relations.columns()]
        rel_cols += [(0,) * n + tuple(c) for c in m.relations.columns()]
        rel = IntMatrix.from_columns(rel_cols, 2 * n) if rel_cols else IntMatrix.zeros(2 * n, 0)
        return cls(IntMatrix.of(rows), rel, f"Ind({m.name})")

    def direct_sum(self, other: "C2Module") -> "C2Module":
        n, m = self.rank, other.rank
        rows = [list(r) + [0] * m for r in self.sigma.entries] + [[0] * n + list(r) for r in other.sigma.entries]
        cols = [tuple(c) + (0,) * m for c in self.relations.columns()]
        cols += [(0,) * n + tuple(c) for c in other.relations.columns()]
        rel = IntMatrix.from_columns(cols, n + m) if cols else IntMatrix.zeros(n + m, 0)
        return C2Module(IntMatrix.of(rows), rel, f"{self.name}+{other.name}")

    def to_json(self) -> dict:
        return {"schema_version": 1, "sigma": self.sigma.to_lists(),
                "relations": self.relations.to_lists(), "rank": self.rank, "name": self.name}

    @classmethod
    def from_json(cls, data: Mapping) -> "C2Module":
        try:
            sigma = IntMatrix.of(data["sigma"])
            n = sigma.rows
            rel_data = data.get("relations") or []
            rel = IntMatrix.of(rel_data, cols=len(rel_data[0]) if rel_data else 0) if rel_data else IntMatrix.zeros(n, 0)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise InvalidInput(f"malformed C2 module: {exc}") from exc
        return cls(sigma, rel, str(data.get("name", "")))


def cohomology_subquotient(m: C2Module, s: int) -> Subquotient:
    if s < 0:
        raise InvalidInput("cohomological degree must be >= 0")
    into = m.d(s)
    if s == 0:
        out = IntMatrix.zeros(m.rank, 0)
    else:
        out = m.d(s - 1)
    return subquotient(into, out, m.relations, m.relations)


def cohomology(m: C2Module, s: int) -> FinAbGroup:
    return cohomology_subquotient(m, s).group


def cohomology_range(m: C2Module, lo: int, hi: int) -> list[FinAbGroup]:
    return [cohomology(m, s) for s in range(lo, hi + 1)]


# ----------------------------------------------------------------------------
# short exact sequences and connecting maps
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ShortExactSequence:
    """0 -> A --i--> B --p--> C -> 0 of C_2-modules."""

    a: C2Module
    b: C2Module
    c: C2Module
    i: IntMatrix
    p: IntMatrix

    def check(self) -> None:
        a, b, c, i, p = self.a, self.b, self.c, IntMatrix.of(self.i), IntMatrix.of(self.p)
        if (i.rows, i.cols) != (b.rank, a.rank) or (p.rows, p.cols) != (c.rank, b.rank):
            raise ShapeMismatch("maps do not match the module ranks")
        for col in (i @ a.relations).columns():
            if not in_lattice(b.relations, col):
                raise NotExact("i is not well defined")
        for col in (p @ b.relations).columns():
            if not in_lattice(c.relations, col):
                raise NotExact("p is not well defined")
        for col in (b.sigma @ i - i @ a.sigma).columns():
            if not in_lattice(b.relations, col):
                raise NotExact("i is not equivariant")
        for col in (c.sigma @ p - p @ b.sigma).columns():
            if not in_lattice(c.relations, col):
                raise NotExact("p is not equivariant")
        if not subquotient(i, IntMatrix.zeros(a.rank, 0), a.relations, b.relations).group.is_trivial():
            raise NotExact("i is not injective")
        if not cokernel(p.hstack(c.relations)).is_trivial():
            raise NotExact("p is not surjective")
        try:
            middle = subquotient(p, i, b.relations, c.relations).group
        except Exception as exc:
            raise NotExact(f"p o i is not zero: {exc}") from exc
        if not middle.is_trivial():
            raise NotExact("kernel of p is larger than the image of i")


@dataclass(frozen=True)
class ConnectingMap:
    s: int
    source: FinAbGroup
    target: FinAbGroup
    matrix: IntMatrix

    def is_zero(self) -> bool:
        return all(self.target.reduce(col) == tuple(0 for _ in col) for col in self.matrix.columns())

    def is_isomorphism(self) -> bool:
        return hom_is_isomorphism(self.matrix, self.source, self.target)

    def to_json(self) -> dict:
        return {"s": self.s, "source": str(self.source), "target": str(self.target),
                "matrix": self.matrix.to_lists()}


def les_connecting(ses: ShortExactSequence, s: int) -> ConnectingMap:
    """delta: H^s(C) -> H^{s+1}(A) by lifting cocycles."""
    ses.check()
    i, p = IntMatrix.of(ses.i), IntMatrix.of(ses.p)
    src = cohomology_subquotient(ses.c, s)
    tgt = cohomology_subquotient(ses.a, s + 1)
    lift_p = p.hstack(ses.c.relations)
    lift_i = i.hstack(ses.b.relations)
    db = ses.b.d(s)
    cols = []
    for g in src.generators:
        x = solve_integer(lift_p, g)
        if x is None:
            raise NotExact("cannot lift a cocycle through p")
        b = x[:ses.b.rank]
        y = solve_integer(lift_i, db.apply(b))
        if y is None:
            raise NotExact("boundary of the lift is not in the image of i")
        cols.append(tgt.project(y[:ses.a.rank]))
    k = len(tgt.group.invariant_factors)
    mat = IntMatrix.from_columns(cols, k) if cols else IntMatrix.zeros(k, 0)
    return ConnectingMap(s, src.group, tgt.group, mat)


# ----------------------------------------------------------------------------
# operations on H^*(C_2; Z/2) = F_2[x]
# ----------------------------------------------------------------------------

def steenrod_sq(i: int, s: int) -> int:
    """Coefficient of x^{s+i} in Sq^i(x^s)."""
    if i < 0 or s < 0:
        raise InvalidInput("degrees must be non-negative")
    return comb(s, i) % 2


def twisted_bockstein_sequence() -> ShortExactSequence:
    """0 -> Z^- --2--> Z^- -> Z/2 -> 0."""
    zm = C2Module.sign()
    z2 = C2Module(IntMatrix.of([[1]]), IntMatrix.of([[2]]), "Z/2")
    return ShortExactSequence(zm, zm, z2, IntMatrix.of([[2]]), IntMatrix.of([[1]]))


def twisted_bockstein(s: int) -> ConnectingMap:
    """beta^-: H^s(C_2; Z/2) -> H^{s+1}(C_2; Z^-)."""
    return les_connecting(twisted_bockstein_sequence(), s)


def twisted_bockstein_nonzero(s: int) -> bool:
    return not twisted_bockstein(s).is_zero()


def d2_coefficient(s: int) -> int:
    """(Sq^2 + x Sq^1)(x^s) = C(s+1, 2) x^{s+2}, mod 2."""
    return (steenrod_sq(2, s) + steenrod_sq(1, s)) % 2


def d3_coefficient(s: int) -> int:
    """beta^- Sq^2 on x^s, as a bit."""
    return int(steenrod_sq(2, s) == 1 and twisted_bockstein_nonzero(s + 2))


# ----------------------------------------------------------------------------
# equivariant operation groups
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class OperationChart:
    """E_2 = H^s(C_2; pi_t) for an operation spectral sequence, read at one stem."""

    name: str
    coefficients: Mapping[int, C2Module]
    stem: int
    s_max: int = 8

    def e2(self) -> dict[tuple[int, int], FinAbGroup]:
        out = {}
        for t, m in self.coefficients.items():
            if not isinstance(m, C2Module):
                raise BadChart(f"entry at t={t} is not a C2 module")
            for s in range(0, self.s_max + 1):
                if t - s < self.stem:
                    continue
                g = cohomology(m, s)
                if not g.is_trivial():
                    out[(s, t)] = g
        return out


def phi_chart_mod2() -> OperationChart:
    """pi_t F(HZ/2, HZ/2) = Z/2 for t = 0, -1, -2 (trivial action)."""
    z2 = C2Module.trivial(2)
    return OperationChart("F(HZ/2,HZ/2)", {0: z2, -1: z2, -2: z2}, stem=-2)


def phi_chart_twisted() -> OperationChart:
    """pi_t F(HZ/2, HZ) = Z/2 for t = -1, -3."""
    z2 = C2Module.trivial(2)
    return OperationChart("F(HZ/2,HZ^-)", {-1: z2, -3: z2}, stem=-3)


@dataclass(frozen=True)
class OperationBound:
    stem: int
    bound: int
    dots: tuple[tuple[int, int], ...]
    operations: tuple[str, ...]
    evaluation: tuple[tuple[int, ...], ...]
    rank: int

    @property
    def group(self) -> FinAbGroup | None:
        if self.bound == 2 ** self.rank:
            return FinAbGroup((2,) * self.rank)
        return None

    def to_json(self) -> dict:
        g = self.group
        return {"stem": self.stem, "bound": self.bound, "dots": [list(d) for d in self.dots],
                "operations": list(self.operations), "evaluation": [list(r) for r in self.evaluation],
                "rank": self.rank, "group": str(g) if g is not None else None}


def _ops_mod2(k: int) -> tuple[int, ...]:
    # Sq^2, x Sq^1, x^2 applied to x^k, coefficient of x^{k+2}
    return (steenrod_sq(2, k), steenrod_sq(1, k), 1)


def _ops_twisted(k: int) -> tuple[int, ...]:
    # beta^- Sq^2 and beta^-(x^2 .) applied to x^k, landing in H^{k+3}(Z^-)
    b = 1 if twisted_bockstein_nonzero(k + 2) else 0
    return (steenrod_sq(2, k) * b, b)


OPERATION_FAMILIES = {
    -2: (("Sq^2", "x Sq^1", "x^2"), _ops_mod2),
    -3: (("beta^- Sq^2", "beta^-(x^2 .)"), _ops_twisted),
}


def operation_group_bound(chart: OperationChart, k_max: int = 6) -> OperationBound:
    """Bound |pi_stem| by the E_2 dots at that stem; certify independence of named operations."""
    if not isinstance(chart, OperationChart):
        raise BadChart("expected an OperationChart")
    e2 = chart.e2()
    bound = 1
    dots = []
    for (s, t), g in sorted(e2.items()):
        if t - s != chart.stem:
            continue
        if not g.is_finite:
            raise BadChart(f"infinite group at (s,t)=({s},{t})")
        bound *= g.order
        dots.append((s, t))
    if not dots:
        return OperationBound(chart.stem, 1, (), (), (), 0)
    names, fn = OPERATION_FAMILIES.get(chart.stem, ((), None))
    if fn is None:
        return OperationBound(chart.stem, bound, tuple(dots), (), (), 0)
    rows = tuple(fn(k) for k in range(k_max + 1))
    rank = rank_mod_p([list(r) for r in rows], 2)
    return OperationBound(chart.stem, bound, tuple(dots), names, rows, rank)
