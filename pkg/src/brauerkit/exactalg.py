"""Exact integer linear algebra and finitely generated abelian groups.

Everything here uses Python integers (or :class:`fractions.Fraction` for
localizations of the integers), so there is no overflow and no rounding.
The Smith normal form is the workhorse: cokernels, kernels and
subquotients of lattices all go through it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint, isprime

from .errors import BadPrime, CompositionNotZero, InvalidInput, NotUnit, ShapeMismatch


# ----------------------------------------------------------------------------
# coefficient rings
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class CoeffRing:
    """One of Z, Z/n, F_p or Z[1/m] (m given by its prime factors).

    Elements are plain ``int`` for the first three kinds and ``Fraction``
    for localizations. Use :meth:`norm` to bring an arbitrary integer or
    fraction into canonical form.
    """

    kind: str
    modulus: int = 0
    primes: tuple[int, ...] = ()

    KINDS = ("Z", "Zmod", "Fp", "Zloc")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise InvalidInput(f"unknown coefficient ring kind {self.kind!r}")
        if self.kind == "Zmod" and self.modulus < 2:
            raise InvalidInput("Z/n requires n >= 2")
        if self.kind == "Fp" and not isprime(self.modulus):
            raise InvalidInput(f"F_p requires p prime, got {self.modulus}")
        if self.kind == "Zloc":
            ps = self.primes
            if not ps or len(set(ps)) != len(ps) or not all(isprime(p) for p in ps):
                raise InvalidInput("Z[1/m] needs a nonempty list of distinct primes")
            object.__setattr__(self, "primes", tuple(sorted(ps)))

    # constructors
    @classmethod
    def integers(cls) -> "CoeffRing":
        return cls("Z")

    @classmethod
    def integers_mod(cls, n: int) -> "CoeffRing":
        return cls("Zmod", modulus=n)

    @classmethod
    def prime_field(cls, p: int) -> "CoeffRing":
        return cls("Fp", modulus=p)

    @classmethod
    def localized(cls, primes: Iterable[int]) -> "CoeffRing":
        return cls("Zloc", primes=tuple(primes))

    @classmethod
    def parse(cls, tag: str) -> "CoeffRing":
        """Parse ``Z``, ``Z/6``, ``F5``, ``Z[1/2]`` or ``Z[1/6]``-style tags."""
        s = tag.strip().replace(" ", "")
        up = s.upper()
        if up == "Z":
            return cls.integers()
        if up.startswith("Z/"):
            return cls.integers_mod(int(s[2:]))
        if up.startswith("F"):
            return cls.prime_field(int(s[1:].lstrip(":_")))
        if up.startswith("Z[1/") and s.endswith("]"):
            m = int(s[4:-1])
            if m < 2:
                raise InvalidInput(f"bad localization {tag!r}")
            return cls.localized(sorted(factorint(m)))
        raise InvalidInput(f"cannot parse coefficient ring {tag!r}")

    @property
    def tag(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.kind == "Zmod":
            return f"Z/{self.modulus}"
        if self.kind == "Fp":
            return f"F{self.modulus}"
        m = 1
        for p in self.primes:
            m *= p
        return f"Z[1/{m}]"

    def __str__(self):
        return self.tag

    # properties
    @property
    def is_field(self) -> bool:
        return self.kind == "Fp"

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind in ("Zmod", "Fp") else 0

    @property
    def two_invertible(self) -> bool:
        if self.kind in ("Fp", "Zmod"):
            return self.modulus % 2 == 1
        if self.kind == "Zloc":
            return 2 in self.primes
        return False

    @property
    def is_finite(self) -> bool:
        return self.kind in ("Zmod", "Fp")

    # arithmetic
    def norm(self, x):
        if self.kind in ("Zmod", "Fp"):
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    return (x.numerator * pow(x.denominator, -1, self.modulus)) % self.modulus
                x = x.numerator
            return int(x) % self.modulus
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise InvalidInput(f"{x} is not an integer")
                return x.numerator
            return int(x)
        q = Fraction(x)
        if not self._denominator_ok(q.denominator):
            raise InvalidInput(f"{x} does not lie in {self.tag}")
        return q

    def _denominator_ok(self, d: int) -> bool:
        for p in self.primes:
            while d % p == 0:
                d //= p
        return d == 1

    def zero(self):
        return self.norm(0)

    def one(self):
        return self.norm(1)

    def is_zero(self, x) -> bool:
        return self.norm(x) == 0

    def is_unit(self, x) -> bool:
        x = self.norm(x)
        if self.kind == "Z":
            return x in (1, -1)
        if self.kind in ("Zmod", "Fp"):
            return gcd(x, self.modulus) == 1
        if x == 0:
            return False
        return self._denominator_ok(abs(x.numerator))

    def inv(self, x):
        x = self.norm(x)
        if not self.is_unit(x):
            raise NotUnit(f"{x} is not a unit in {self.tag}")
        if self.kind in ("Zmod", "Fp"):
            return pow(x, -1, self.modulus)
        if self.kind == "Z":
            return x
        return 1 / x

    def elements(self) -> list[int]:
        if not self.is_finite:
            raise InvalidInput(f"{self.tag} is infinite")
        return list(range(self.modulus))

    def is_square(self, x) -> bool:
        """Square test for finite rings (exhaustive)."""
        x = self.norm(x)
        return any(self.norm(y * y) == x for y in self.elements())

    def det(self, rows: Sequence[Sequence]):
        """Determinant of a square matrix with entries in this ring."""
        n = len(rows)
        if n == 0:
            return self.one()
        if self.kind == "Zloc":
            return self.norm(_fraction_det(rows))
        if self.kind == "Fp":
            return _det_mod_p(rows, self.modulus)
        d = bareiss_det([[_as_int(x) for x in r] for r in rows])
        return self.norm(d)

    def to_json(self) -> dict:
        if self.kind == "Z":
            return {"ring": "Z"}
        if self.kind in ("Zmod", "Fp"):
            return {"ring": self.kind, "modulus": self.modulus}
        return {"ring": "Zloc", "primes": list(self.primes)}

    @classmethod
    def from_json(cls, data) -> "CoeffRing":
        if isinstance(data, str):
            return cls.parse(data)
        try:
            kind = data["ring"]
            if kind == "Z":
                return cls.integers()
            if kind in ("Zmod", "Fp"):
                return cls(kind, modulus=int(data["modulus"]))
            if kind == "Zloc":
                return cls.localized(int(p) for p in data["primes"])
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed coefficient ring {data!r}") from exc
        raise InvalidInput(f"unknown coefficient ring {data!r}")


def _as_int(x) -> int:
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise InvalidInput(f"{x} is not an integer")
        return x.numerator
    return int(x)


def bareiss_det(a: list[list[int]]) -> int:
    """Fraction-free determinant over Z."""
    n = len(a)
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _fraction_det(rows) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return det


def _det_mod_p(rows, p: int) -> int:
    m = [[int(x) % p for x in r] for r in rows]
    n = len(m)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det = det * m[k][k] % p
        inv = pow(m[k][k], -1, p)
        for i in range(k + 1, n):
            f = m[i][k] * inv % p
            if f:
                rk, ri = m[k], m[i]
                for j in range(k, n):
                    ri[j] = (ri[j] - f * rk[j]) % p
    return det % p


# ----------------------------------------------------------------------------
# linear algebra over F_p (numpy, exact since p is small)
# ----------------------------------------------------------------------------

MAX_NUMPY_PRIME = 2 ** 31   # keeps p^2 inside int64


def rref_mod_p(rows, p: int, ncols: int | None = None):
    """Reduced row echelon form mod p. Returns (matrix, pivot columns)."""
    if p >= MAX_NUMPY_PRIME:
        raise BadPrime(f"p = {p} is too large for int64 row reduction")
    rows = [[int(x) % p for x in row] for row in rows]
    a = np.array(rows, dtype=np.int64).reshape(len(rows), -1 if rows else (ncols or 0))
    if a.size == 0:
        return a.reshape(len(rows), ncols or 0), []
    nr, nc = a.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(rows, p: int) -> int:
    if not rows:
        return 0
    return len(rref_mod_p(rows, p)[1])


def nullspace_mod_p(rows, p: int, ncols: int) -> list[list[int]]:
    """Basis of {x : rows . x = 0} over F_p."""
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    a, pivots = rref_mod_p(rows, p, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = int(-a[r, f]) % p
        basis.append(v)
    return basis


# ----------------------------------------------------------------------------
# integer matrices
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ShapeMismatch(f"entries do not match shape {self.rows}x{self.cols}")

    @classmethod
    def of(cls, data, cols: int | None = None) -> "IntMatrix":
        if isinstance(data, IntMatrix):
            return data
        rows = [tuple(_as_int(x) for x in r) for r in data]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, r: int, c: int) -> "IntMatrix":
        return cls(r, c, tuple((0,) * c for _ in range(r)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None):
        k = len(values)
        r = k if rows is None else rows
        c = k if cols is None else cols
        return cls(r, c, tuple(tuple(values[i] if i == j and i < k else 0 for j in range(c))
                               for i in range(r)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls(rows, len(columns), tuple(tuple(int(col[i]) for col in columns)
                                             for i in range(rows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(tuple(self.entries[i][j] for i in range(self.rows))
                                                     for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        oc = other.columns()
        return IntMatrix(self.rows, other.cols,
                         tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in oc) for r in self.entries))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ShapeMismatch("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("shape mismatch in addition")
        return IntMatrix(self.rows, self.cols, tuple(tuple(a + b for a, b in zip(r, s))
                                                     for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scale(-1)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ShapeMismatch("hstack needs equal row counts")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def det(self) -> int:
        if self.rows != self.cols:
            raise ShapeMismatch("determinant of a non-square matrix")
        return bareiss_det(self.to_lists()) if self.rows else 1

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.entries) for j, x in enumerate(r) if i != j)

    def __str__(self):
        return "\n".join(" ".join(f"{x:>3}" for x in r) for r in self.entries)


# ----------------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------------

def _snf_full(m: IntMatrix):
    """Return (U, Uinv, D, V, Vinv) with U m V = D, all as lists of lists."""
    a = m.to_lists()
    nr, nc = m.rows, m.cols
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    Ui = [r[:] for r in U]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]
    Vi = [r[:] for r in V]

    def row_add(i, j, c):  # R_i += c R_j
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]
        for r in Ui:
            r[j] -= c * r[i]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    def col_add(i, j, c):  # C_i += c C_j
        for r in a:
            r[i] += c * r[j]
        for r in V:
            r[i] += c * r[j]
        Vi[j] = [x - c * y for x, y in zip(Vi[j], Vi[i])]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return U, Ui, a, V, Vi
            _, i, j = best
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    row_add(i, t, -q)
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    col_add(j, t, -q)
                if a[t][j]:
                    dirty = True
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % p), None)
            if bad is not None:
                row_add(t, bad[0], 1)
                continue
            if p < 0:
                row_neg(t)
            break
    return U, Ui, a, V, Vi


def smith_normal_form(m) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return unimodular ``U``, ``V`` and diagonal ``D`` with ``U @ m @ V == D``.

    The diagonal of ``D`` is non-negative and forms a divisibility chain,
    with zeros last.
    """
    m = IntMatrix.of(m)
    U, _, D, V, _ = _snf_full(m)
    return (IntMatrix(m.rows, m.rows, tuple(map(tuple, U))),
            IntMatrix(m.rows, m.cols, tuple(map(tuple, D))),
            IntMatrix(m.cols, m.cols, tuple(map(tuple, V))))


def invariant_factors_of(m) -> list[int]:
    m = IntMatrix.of(m)
    _, _, D, _, _ = _snf_full(m)
    return [D[i][i] for i in range(min(m.rows, m.cols))]


# ----------------------------------------------------------------------------
# finitely generated abelian groups
# ----------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class FinAbGroup:
    """Canonical invariant-factor form ``Z/d1 + ... + Z/dk + Z^r``.

    Positive factors are >= 2 and satisfy d1 | d2 | ...; a factor 0 stands
    for an infinite cyclic summand and those come last. Two groups are
    isomorphic iff their factor tuples are equal.
    """

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = self.invariant_factors
        pos = [d for d in fs if d]
        if any(d < 2 for d in pos) or any(d < 0 for d in fs):
            raise InvalidInput(f"non-canonical invariant factors {fs}")
        if any(b % a for a, b in zip(pos, pos[1:])):
            raise InvalidInput(f"factors {fs} are not a divisibility chain")
        if list(fs) != pos + [0] * (len(fs) - len(pos)):
            raise InvalidInput(f"infinite factors must come last in {fs}")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FinAbGroup":
        """Canonical form of the direct sum of cyclic groups Z/n (0 meaning Z)."""
        orders = [abs(int(n)) for n in orders]
        if not orders:
            return cls(())
        return cokernel(IntMatrix.diag(orders))

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls(())

    @classmethod
    def cyclic(cls, n: int) -> "FinAbGroup":
        return cls.from_orders([n])

    @classmethod
    def free(cls, rank: int) -> "FinAbGroup":
        return cls((0,) * rank)

    @property
    def torsion_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def direct_sum(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup.from_orders(self.invariant_factors + other.invariant_factors)

    def __add__(self, other):
        return self.direct_sum(other)

    def elements(self) -> list[tuple[int, ...]]:
        """All elements as coordinate tuples (finite groups only)."""
        if not self.is_finite:
            raise InvalidInput("infinite group has no element list")
        out = [()]
        for d in self.invariant_factors:
            out = [e + (k,) for e in out for k in range(d)]
        return out

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(c % d if d else c for c, d in zip(coords, self.invariant_factors))

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        parts = [f"Z/{d}" if d else "Z" for d in self.torsion_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "label": str(self)}

    @classmethod
    def from_json(cls, data) -> "FinAbGroup":
        return cls.from_orders(data["invariant_factors"] if isinstance(data, dict) else data)


# ----------------------------------------------------------------------------
# lattices, kernels, subquotients
# ----------------------------------------------------------------------------

class _LatticeSolver:
    """Solve B c = v over Z for a full-column-rank basis matrix B."""

    def __init__(self, basis: IntMatrix):
        self.basis = basis
        self.U, _, D, self.V, _ = _snf_full(basis)
        self.k = basis.cols
        self.d = [D[i][i] for i in range(self.k)]
        if any(x == 0 for x in self.d):
            raise InvalidInput("lattice basis is not of full column rank")

    def solve(self, v: Sequence[int]) -> tuple[int, ...] | None:
        w = [sum(a * b for a, b in zip(r, v)) for r in self.U]
        if any(w[i] for i in range(self.k, len(w))):
            return None
        y = []
        for i in range(self.k):
            if w[i] % self.d[i]:
                return None
            y.append(w[i] // self.d[i])
        return tuple(sum(r[j] * y[j] for j in range(self.k)) for r in self.V)


def lattice_basis(gens: IntMatrix) -> IntMatrix:
    """A Z-basis (as columns) of the lattice spanned by the columns of ``gens``."""
    U, Ui, D, _, _ = _snf_full(gens)
    r = sum(1 for i in range(min(gens.rows, gens.cols)) if D[i][i])
    cols = [[Ui[row][i] * D[i][i] for row in range(gens.rows)] for i in range(r)]
    return IntMatrix.from_columns(cols, gens.rows)


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Saturated Z-basis (as columns) of ker(m) inside Z^cols."""
    _, _, D, V, _ = _snf_full(m)
    r = sum(1 for i in range(min(m.rows, m.cols)) if D[i][i])
    cols = [[V[row][j] for row in range(m.cols)] for j in range(r, m.cols)]
    return IntMatrix.from_columns(cols, m.cols)


def in_lattice(gens: IntMatrix | None, v: Sequence[int]) -> bool:
    if not any(v):
        return True
    if gens is None or gens.cols == 0:
        return False
    basis = lattice_basis(gens)
    if basis.cols == 0:
        return False
    return _LatticeSolver(basis).solve(v) is not None


def _relations_or_empty(rel: IntMatrix | None, n: int) -> IntMatrix:
    if rel is None:
        return IntMatrix.zeros(n, 0)
    rel = IntMatrix.of(rel, cols=None) if not isinstance(rel, IntMatrix) else rel
    if rel.rows != n:
        raise ShapeMismatch(f"relation matrix has {rel.rows} rows, expected {n}")
    return rel


@dataclass(frozen=True)
class Subquotient:
    """The group ker(f) / (im(g) + relations) with an explicit projection.

    ``generators[i]`` is a representative vector (in the ambient Z^n) of the
    i-th canonical generator of ``group``; :meth:`project` sends a kernel
    vector to its canonical coordinates.
    """

    group: FinAbGroup
    ambient: int
    generators: tuple[tuple[int, ...], ...]
    _kernel: IntMatrix = field(repr=False, compare=False)
    _transform: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _keep: tuple[int, ...] = field(repr=False, compare=False)

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ambient:
            raise ShapeMismatch("vector has the wrong length")
        if self._kernel.cols == 0:
            if any(v):
                raise InvalidInput(f"{tuple(v)} is not in the kernel")
            return ()
        c = _LatticeSolver(self._kernel).solve(v)
        if c is None:
            raise InvalidInput(f"{tuple(v)} is not in the kernel")
        w = [sum(a * b for a, b in zip(self._transform[i], c)) for i in self._keep]
        return self.group.reduce(w)

    def contains(self, v: Sequence[int]) -> bool:
        if self._kernel.cols == 0:
            return not any(v)
        return _LatticeSolver(self._kernel).solve(v) is not None

    def lift(self, coords: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.ambient
        for c, g in zip(coords, self.generators):
            for i, x in enumerate(g):
                out[i] += c * x
        return tuple(out)


def subquotient(ker_of, im_of, source_relations=None, target_relations=None) -> Subquotient:
    """Homology ker(ker_of) / im(im_of) of presented abelian groups.

    ``ker_of`` is a ``b x a`` matrix Z^a -> Z^b, ``im_of`` is ``a x k``.
    The middle group is Z^a modulo the columns of ``source_relations`` and
    the target is Z^b modulo ``target_relations`` (both optional).
    Raises :class:`CompositionNotZero` if ``ker_of @ im_of`` is not zero in
    the target.
    """
    f = IntMatrix.of(ker_of)
    g = IntMatrix.of(im_of)
    a = f.cols
    if g.rows != a:
        raise ShapeMismatch(f"im_of lands in Z^{g.rows}, ker_of starts at Z^{a}")
    src_rel = _relations_or_empty(source_relations, a)
    tgt_rel = _relations_or_empty(target_relations, f.rows)

    comp = f @ g
    for col in comp.columns():
        if not in_lattice(tgt_rel, col):
            raise CompositionNotZero(f"composite is nonzero on column {col}")

    # preimage of the target relation lattice
    big = f.hstack(tgt_rel)
    kb = kernel_basis(big)
    proj = IntMatrix(a, kb.cols, kb.entries[:a])
    K = lattice_basis(proj) if proj.cols else IntMatrix.zeros(a, 0)

    denominators = g.columns() + src_rel.columns()
    if K.cols == 0:
        if any(any(c) for c in denominators):
            raise CompositionNotZero("denominator does not lie in the kernel")
        return Subquotient(FinAbGroup(()), a, (), K, (), ())
    solver = _LatticeSolver(K)
    coords = []
    for col in denominators:
        c = solver.solve(col)
        if c is None:
            raise CompositionNotZero(f"{col} does not lie in the kernel (ill-defined map?)")
        coords.append(c)
    C = IntMatrix.from_columns(coords, K.cols) if coords else IntMatrix.zeros(K.cols, 0)
    U, Ui, D, _, _ = _snf_full(C)
    m = K.cols
    diag = [D[i][i] if i < C.cols else 0 for i in range(m)]
    keep = tuple(i for i in range(m) if diag[i] != 1)
    factors = tuple(diag[i] for i in keep)
    gens = []
    for i in keep:
        col = [Ui[r][i] for r in range(m)]
        gens.append(K.apply(col))
    return Subquotient(FinAbGroup(factors), a, tuple(gens), K, tuple(map(tuple, U)), keep)


def cokernel(m) -> FinAbGroup:
    """Canonical form of Z^rows / im(m)."""
    m = IntMatrix.of(m) if not isinstance(m, IntMatrix) else m
    return subquotient(IntMatrix.zeros(0, m.rows), m).group


def is_unimodular(m: IntMatrix) -> bool:
    return m.rows == m.cols and m.det() in (1, -1)


def solve_integer(gens: IntMatrix, target: Sequence[int]) -> tuple[int, ...] | None:
    """Some integer x with gens @ x == target, or None."""
    if gens.rows != len(target):
        raise ShapeMismatch("target has the wrong length")
    if gens.cols == 0:
        return () if not any(target) else None
    U, _, D, V, _ = _snf_full(gens)
    w = [sum(a * b for a, b in zip(r, target)) for r in U]
    k = min(gens.rows, gens.cols)
    y = [0] * gens.cols
    for i in range(gens.rows):
        d = D[i][i] if i < k else 0
        if d == 0:
            if w[i]:
                return None
        else:
            if w[i] % d:
                return None
            y[i] = w[i] // d
    return tuple(sum(r[j] * y[j] for j in range(gens.cols)) for r in V)


def hom_is_isomorphism(matrix: IntMatrix, source: FinAbGroup, target: FinAbGroup) -> bool:
    """Is the map Z^k/diag(source) -> Z^l/diag(target) given by ``matrix`` bijective?"""
    src_rel = IntMatrix.diag(list(source.invariant_factors))
    tgt_rel = IntMatrix.diag(list(target.invariant_factors))
    if matrix.rows != len(target.invariant_factors) or matrix.cols != len(source.invariant_factors):
        raise ShapeMismatch("matrix does not match the groups")
    ker = subquotient(matrix, IntMatrix.zeros(matrix.cols, 0), src_rel, tgt_rel).group
    coker = cokernel(matrix.hstack(tgt_rel))
    return ker.is_trivial() and coker.is_trivial()
