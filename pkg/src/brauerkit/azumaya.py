"""Azumaya predicates, Hochschild cohomology and Morita reduction over F_p."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import NotAzumaya, UnsupportedCoeff, WindowEmpty
from .exactalg import FinAbGroup, IntMatrix, cokernel, nullspace_mod_p, rank_mod_p
from .graded import GradedAlgebra, base_change

UNIT_SEARCH_EXHAUSTIVE_LIMIT = 20000
UNIT_SEARCH_SEED = 20240229
UNIT_SEARCH_TRIALS = 4000


# ----------------------------------------------------------------------------
# Azumaya test
# ----------------------------------------------------------------------------

def action_matrix(a: GradedAlgebra) -> list[list]:
    """Matrix of A (x) A^op -> End(A), x (x) y -> (z -> eps(|y|,|z|) x z y).

    Columns are indexed by pairs (i, j), rows by matrix units (r, c)
    meaning "coefficient of e_r in the image of e_c".
    """
    n = a.rank
    g = a.grading
    R = a.coeff
    degs = a.degrees
    zy = [[a.product_of_basis(c, j) for j in range(n)] for c in range(n)]
    cols = []
    for i in range(n):
        for j in range(n):
            col = [0] * (n * n)
            for c in range(n):
                s = g.eps(degs[j], degs[c])
                for m, coef in zy[c][j].items():
                    for r, d in a.product_of_basis(i, m).items():
                        col[r * n + c] += s * coef * d
            cols.append([R.norm(x) for x in col])
    return [[cols[k][row] for k in range(n * n)] for row in range(n * n)]


def _degree_blocks(a: GradedAlgebra):
    n = a.rank
    g = a.grading
    degs = a.degrees
    src = {}
    for i in range(n):
        for j in range(n):
            src.setdefault(g.add(degs[i], degs[j]), []).append(i * n + j)
    tgt = {}
    for r in range(n):
        for c in range(n):
            tgt.setdefault(g.norm(degs[r] - degs[c]), []).append(r * n + c)
    return src, tgt


def is_azumaya(a: GradedAlgebra) -> bool:
    """Graded Azumaya test: the action map is invertible in each degree."""
    if a.rank == 0:
        return False
    m = action_matrix(a)
    src, tgt = _degree_blocks(a)
    if set(src) != set(tgt):
        return False
    R = a.coeff
    for deg, cols in src.items():
        rows = tgt[deg]
        if len(rows) != len(cols):
            return False
        block = [[m[r][c] for c in cols] for r in rows]
        if R.kind == "Fp":
            if rank_mod_p(block, R.modulus) != len(cols):
                return False
        elif not R.is_unit(R.det(block)):
            return False
    return True


# ----------------------------------------------------------------------------
# linear algebra helpers over F_p
# ----------------------------------------------------------------------------

def _require_field(a: GradedAlgebra) -> int:
    if a.coeff.kind != "Fp":
        raise UnsupportedCoeff(f"only prime-field coefficients are supported, not {a.coeff.tag}")
    return a.coeff.modulus


def _inverse_mod_p(m: list[list[int]], p: int) -> list[list[int]]:
    n = len(m)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] % p)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [x * inv % p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[c])]
    return [r[n:] for r in aug]


def _unit_first_basis(a: GradedAlgebra):
    """Homogeneous basis with the unit first; returns (P, Pinv) over F_p."""
    p = a.coeff.modulus
    n = a.rank
    u = a.unit
    pivot = next(i for i in range(n) if u[i] % p)
    new = [list(u)] + [[int(k == i) for k in range(n)] for i in range(n) if i != pivot]
    P = [[new[c][r] for c in range(n)] for r in range(n)]
    return P, _inverse_mod_p(P, p)


@dataclass(frozen=True)
class Bimodule:
    """A graded bimodule over an algebra, by left and right action matrices.

    ``left[i][q][m]`` is the coefficient of f_q in e_i . f_m, and similarly
    for ``right`` (f_m . e_i).
    """

    degrees: tuple[int, ...]
    left: tuple
    right: tuple

    @classmethod
    def regular(cls, a: GradedAlgebra) -> "Bimodule":
        n = a.rank
        left = []
        right = []
        for i in range(n):
            ei = a.basis_vector(i)
            left.append(tuple(map(tuple, a.left_mult_matrix(ei))))
            cols = [a.mul(a.basis_vector(m), ei) for m in range(n)]
            right.append(tuple(tuple(cols[m][q] for m in range(n)) for q in range(n)))
        return cls(a.degrees, tuple(left), tuple(right))


def hochschild(a: GradedAlgebra, bimodule: Bimodule | None = None, s_max: int = 3) -> list[FinAbGroup]:
    """HH^0 .. HH^s_max of a with coefficients in a bimodule (default: a itself).

    Uses the normalized bar complex of degree-preserving cochains over F_p.
    """
    p = _require_field(a)
    if not 0 <= s_max <= 4:
        raise UnsupportedCoeff("s_max must lie in 0..4")
    M = bimodule or Bimodule.regular(a)
    g = a.grading
    n = a.rank
    P, Pinv = _unit_first_basis(a)

    def to_new(v):
        return [sum(Pinv[r][k] * v[k] for k in range(n)) % p for r in range(n)]

    newvec = [[P[r][c] for r in range(n)] for c in range(n)]
    degs = [a.degree_of(v) if a.degree_of(v) is not None else 0 for v in newvec]
    prod = [[to_new(a.mul(newvec[i], newvec[j])) for j in range(n)] for i in range(n)]
    dimM = len(M.degrees)

    def act(mats, v):
        out = [[0] * dimM for _ in range(dimM)]
        for k in range(n):
            if v[k] % p:
                for q in range(dimM):
                    for m in range(dimM):
                        out[q][m] = (out[q][m] + v[k] * mats[k][q][m]) % p
        return out

    left = [act(M.left, newvec[i]) for i in range(n)]
    right = [act(M.right, newvec[i]) for i in range(n)]
    bar = list(range(1, n))

    def cochain_basis(s):
        out = []
        for T in itertools.product(bar, repeat=s):
            d = g.norm(sum(degs[t] for t in T))
            for m in range(dimM):
                if g.norm(M.degrees[m]) == d:
                    out.append((T, m))
        return out

    bases = [cochain_basis(s) for s in range(s_max + 2)]
    index = [{b: k for k, b in enumerate(B)} for B in bases]

    def delta(s):
        rows = []
        for U, q in bases[s + 1]:
            row = {}

            def put(key, c):
                k = index[s].get(key)
                if k is not None and c % p:
                    row[k] = (row.get(k, 0) + c) % p

            for m in range(dimM):
                c = left[U[0]][q][m]
                if c:
                    put((U[1:], m), c)
            for i in range(s):
                sign = -1 if (i + 1) % 2 else 1
                for k in range(1, n):
                    c = prod[U[i]][U[i + 1]][k]
                    if c:
                        put((U[:i] + (k,) + U[i + 2:], q), sign * c)
            sign = -1 if (s + 1) % 2 else 1
            for m in range(dimM):
                c = right[U[-1]][q][m]
                if c:
                    put((U[:-1], m), sign * c)
            rows.append([row.get(k, 0) for k in range(len(bases[s]))])
        return rows

    ranks = []
    for s in range(s_max + 1):
        ranks.append(rank_mod_p(delta(s), p) if bases[s] and bases[s + 1] else 0)
    out = []
    for s in range(s_max + 1):
        dim = len(bases[s]) - ranks[s] - (ranks[s - 1] if s else 0)
        out.append(FinAbGroup((p,) * dim))
    return out


# ----------------------------------------------------------------------------
# Morita reduction over F_p
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Q2Class:
    """Element (odd_bit, h) of Q_2; ``h`` is a bit vector in H^1(-, Z/2)."""

    odd_bit: int
    h: tuple[int, ...]
    label: str = field(default="", compare=False)

    def to_json(self) -> dict:
        return {"odd_bit": self.odd_bit, "h": list(self.h), "label": self.label}


@dataclass(frozen=True)
class WallInvariants:
    type_bit: int
    quad_class: Q2Class
    brauer_class: str = "trivial"

    def to_json(self) -> dict:
        return {"type_bit": self.type_bit, "quad_class": self.quad_class.to_json(),
                "brauer_class": self.brauer_class}


def _commutant(a: GradedAlgebra, subset: Sequence[int], within: Sequence[int]) -> list[list[int]]:
    """Basis (mod p) of the span of ``within`` commuting (ungraded) with ``subset``."""
    p = a.coeff.modulus
    n = a.rank
    rows = []
    for j in subset:
        ej = a.basis_vector(j)
        comm = []
        for i in within:
            ei = a.basis_vector(i)
            x = a.mul(ei, ej)
            y = a.mul(ej, ei)
            comm.append([(u - v) % p for u, v in zip(x, y)])
        for k in range(n):
            rows.append([comm[c][k] for c in range(len(within))])
    coords = nullspace_mod_p(rows, p, len(within))
    out = []
    for c in coords:
        v = [0] * n
        for w, i in zip(c, within):
            v[i] = w
        out.append(v)
    return out


def ungraded_center(a: GradedAlgebra) -> list[list[int]]:
    _require_field(a)
    idx = list(range(a.rank))
    return _commutant(a, idx, idx)


def _split_quadratic(a: GradedAlgebra, basis: list[list[int]]) -> bool:
    """Does the rank-2 commutative subalgebra spanned by ``basis`` have a nontrivial idempotent?"""
    p = a.coeff.modulus
    for c0, c1 in itertools.product(range(p), repeat=2):
        x = tuple((c0 * u + c1 * v) % p for u, v in zip(*basis))
        if x == a.unit or not any(x):
            continue
        if a.mul(x, x) == x:
            return True
    return False


def morita_reduce_field(a: GradedAlgebra):
    """Wall invariants of an Azumaya algebra over F_p, plus a basic representative."""
    from .brauerwall import basic_representative, field_profile, square_class_bit

    p = _require_field(a)
    if a.grading.group == "Z":
        a = base_change(a, theta="reduce")
    if not is_azumaya(a):
        raise NotAzumaya("algebra is not Azumaya")
    prof = field_profile(p)
    everything = list(range(a.rank))
    z_odd = _commutant(a, everything, a.module.indices_in_degree(1))
    z_even = _commutant(a, everything, a.module.indices_in_degree(0))
    if len(z_even) != 1 or len(z_odd) > 1:
        raise NotAzumaya("ungraded center is too large")
    if not z_odd:
        even = a.module.indices_in_degree(0)
        z0 = _commutant(a, even, even)
        if len(z0) == 1:
            h = (0,)
        elif len(z0) == 2:
            h = (0,) if _split_quadratic(a, z0) else (1,)
        else:
            raise NotAzumaya("center of the even part has unexpected rank")
        inv = WallInvariants(0, Q2Class(0, h, prof.h1_label(h)))
    else:
        w = z_odd[0]
        w2 = a.mul(w, w)
        i0 = next(i for i in range(a.rank) if a.unit[i] % p)
        c = w2[i0] * pow(a.unit[i0], -1, p) % p
        h = (square_class_bit(c, p),)
        inv = WallInvariants(1, Q2Class(1, h, prof.h1_label(h)))
    return basic_representative(inv, a.coeff), inv


# ----------------------------------------------------------------------------
# homogeneous units
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class UnitDegreeReport:
    degrees: tuple[int, ...]
    witnesses: Mapping[int, tuple]
    exhaustive: bool
    grading_group: str

    @property
    def subgroup(self) -> str:
        if self.grading_group == "Z2":
            return "Z/2" if 1 in self.degrees else "0"
        from math import gcd
        d = 0
        for x in self.degrees:
            d = gcd(d, x)
        return "0" if d == 0 else ("Z" if d == 1 else f"{d}Z")


def _is_unit_element(a: GradedAlgebra, x) -> tuple | None:
    p = a.coeff.modulus
    m = a.left_mult_matrix(x)
    if rank_mod_p(m, p) != a.rank:
        return None
    inv = _inverse_mod_p([list(r) for r in m], p)
    y = tuple(sum(inv[r][k] * a.unit[k] for k in range(a.rank)) % p for r in range(a.rank))
    if a.mul(x, y) == a.unit and a.mul(y, x) == a.unit:
        return y
    return None


def homogeneous_unit_degrees(a: GradedAlgebra) -> UnitDegreeReport:
    """Degrees containing a homogeneous unit, each with a witness and its inverse."""
    p = _require_field(a)
    n = a.rank
    rng = random.Random(UNIT_SEARCH_SEED)
    found = {}
    exhaustive = True
    for deg in a.module.degree_support():
        idx = a.module.indices_in_degree(deg)
        total = p ** len(idx)

        def vec(coeffs):
            v = [0] * n
            for i, c in zip(idx, coeffs):
                v[i] = c
            return tuple(v)

        if total <= UNIT_SEARCH_EXHAUSTIVE_LIMIT:
            candidates = (vec(c) for c in itertools.product(range(p), repeat=len(idx)))
        else:
            exhaustive = False
            candidates = (vec([rng.randrange(p) for _ in idx]) for _ in range(UNIT_SEARCH_TRIALS))
        for x in candidates:
            if not any(x):
                continue
            y = _is_unit_element(a, x)
            if y is not None:
                found[deg] = (x, y)
                break
    return UnitDegreeReport(tuple(sorted(found)), found, exhaustive, a.grading.group)


# ----------------------------------------------------------------------------
# homotopy of Aut at the coefficient level
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientDatum:
    """pi_t R -> pi_t A, as a matrix between presented groups."""

    t: int
    unit_map: IntMatrix
    source_relations: IntMatrix | None = None
    target_relations: IntMatrix | None = None


def aut_homotopy_sequence(data: Sequence[CoefficientDatum], window: tuple[int, int] | None = None) -> dict:
    """pi_t Aut(A) = coker(pi_t R -> pi_t A) for t > 0; the t = 0 terms are listed."""
    lo, hi = window if window is not None else (min((d.t for d in data), default=0),
                                                max((d.t for d in data), default=-1))
    chosen = [d for d in data if lo <= d.t <= hi]
    if not chosen:
        raise WindowEmpty(f"no coefficient data in window {lo}:{hi}")
    out = {}
    for d in sorted(chosen, key=lambda d: d.t):
        f = d.unit_map
        if d.t > 0:
            rel = d.target_relations if d.target_relations is not None else IntMatrix.zeros(f.rows, 0)
            out[d.t] = cokernel(f.hstack(rel))
        else:
            out[d.t] = {
                "terms": ["pi0 GL1(R)", "pi0 GL1(A)", "pi0 Aut(A)", "pi0 Pic(R)"],
                "unit_map": f.to_lists(),
                "exactness": "left to the caller",
            }
    return out
