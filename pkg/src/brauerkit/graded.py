"""Graded modules and algebras given by structure constants.

Gradings are by Z or Z/2 with a sign pairing eps(a, b) = sign**(a*b).
An algebra stores, for every ordered pair of basis vectors, the sparse
expansion of their product. Axioms are checked on construction.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (AxiomViolation, BadPrime, EmptyBasis, InvalidInput, MixedContext,
                     ShapeMismatch)
from .exactalg import CoeffRing

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Grading:
    group: str = "Z2"
    sign: int = -1

    def __post_init__(self):
        if self.group not in ("Z", "Z2"):
            raise InvalidInput(f"grading group must be 'Z' or 'Z2', not {self.group!r}")
        if self.sign not in (1, -1):
            raise InvalidInput("sign must be +1 or -1")

    def norm(self, g: int) -> int:
        return g % 2 if self.group == "Z2" else int(g)

    def add(self, a: int, b: int) -> int:
        return self.norm(a + b)

    def eps(self, a: int, b: int) -> int:
        return self.sign if (a * b) % 2 else 1

    def reduced(self) -> "Grading":
        return Grading("Z2", self.sign)

    def to_json(self) -> dict:
        return {"group": self.group, "sign": self.sign}


Z2 = Grading("Z2", -1)


@dataclass(frozen=True)
class GradedModule:
    """Free graded module with a basis in the listed degrees."""

    coeff: CoeffRing
    grading: Grading
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.grading.norm(d) for d in self.degrees))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def rank_in_degree(self, g: int) -> int:
        g = self.grading.norm(g)
        return sum(1 for d in self.degrees if d == g)

    def indices_in_degree(self, g: int) -> list[int]:
        g = self.grading.norm(g)
        return [i for i, d in enumerate(self.degrees) if d == g]

    def degree_support(self) -> list[int]:
        return sorted(set(self.degrees))


Vector = tuple


class GradedAlgebra:
    """Associative unital graded algebra of finite rank.

    ``table[i][j]`` maps a basis index ``k`` to the coefficient of e_k in
    e_i * e_j. Dense nested lists c[i][j][k] are accepted as well.
    """

    def __init__(self, module: GradedModule, table, unit: Sequence, *,
                 names: Sequence[str] | None = None, check: bool = True):
        if module.rank == 0:
            raise EmptyBasis("an algebra needs a nonempty basis")
        self.module = module
        R = module.coeff
        n = module.rank
        if len(table) != n or any(len(row) != n for row in table):
            raise ShapeMismatch(f"structure constants must be {n}x{n}(x{n})")
        prod = []
        for i in range(n):
            row = []
            for j in range(n):
                entry = table[i][j]
                if isinstance(entry, Mapping):
                    items = entry.items()
                else:
                    if len(entry) != n:
                        raise ShapeMismatch(f"structure constant c[{i}][{j}] has wrong length")
                    items = enumerate(entry)
                d = {}
                for k, c in items:
                    k = int(k)
                    if not 0 <= k < n:
                        raise ShapeMismatch(f"basis index {k} out of range")
                    c = R.norm(c)
                    if c != 0:
                        d[k] = c
                row.append(d)
            prod.append(tuple(row))
        self._prod = tuple(prod)
        if len(unit) != n:
            raise ShapeMismatch("unit has the wrong length")
        self.unit = tuple(R.norm(c) for c in unit)
        self.names = tuple(names) if names is not None else tuple(f"e{i}" for i in range(n))
        if check:
            self.validate()

    # basic accessors
    @property
    def coeff(self) -> CoeffRing:
        return self.module.coeff

    @property
    def grading(self) -> Grading:
        return self.module.grading

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.module.degrees

    @property
    def rank(self) -> int:
        return self.module.rank

    def product_of_basis(self, i: int, j: int) -> dict[int, object]:
        return dict(self._prod[i][j])

    def structure_constants(self) -> list[list[list]]:
        n = self.rank
        z = self.coeff.zero()
        return [[[self._prod[i][j].get(k, z) for k in range(n)] for j in range(n)] for i in range(n)]

    def basis_vector(self, i: int) -> Vector:
        R = self.coeff
        return tuple(R.one() if k == i else R.zero() for k in range(self.rank))

    def zero_vector(self) -> Vector:
        return tuple(self.coeff.zero() for _ in range(self.rank))

    # arithmetic
    def mul(self, x: Sequence, y: Sequence) -> Vector:
        R = self.coeff
        out = [0] * self.rank
        for i, a in enumerate(x):
            if a == 0:
                continue
            row = self._prod[i]
            for j, b in enumerate(y):
                if b == 0:
                    continue
                ab = a * b
                for k, c in row[j].items():
                    out[k] += ab * c
        return tuple(R.norm(v) for v in out)

    def add(self, x: Sequence, y: Sequence) -> Vector:
        R = self.coeff
        return tuple(R.norm(a + b) for a, b in zip(x, y))

    def scale(self, c, x: Sequence) -> Vector:
        R = self.coeff
        return tuple(R.norm(c * a) for a in x)

    def left_mult_matrix(self, x: Sequence) -> list[list]:
        """Matrix (rows = output coords) of y -> x*y."""
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.rank)]
        return [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]

    def degree_of(self, x: Sequence) -> int | None:
        """Degree of a nonzero homogeneous element, else None."""
        ds = {self.degrees[i] for i, a in enumerate(x) if a != 0}
        return ds.pop() if len(ds) == 1 else None

    def power(self, x: Sequence, k: int) -> Vector:
        out = self.unit
        for _ in range(k):
            out = self.mul(out, x)
        return out

    # validation
    def validate(self) -> None:
        g = self.grading
        n = self.rank
        degs = self.degrees
        for i in range(n):
            for j in range(n):
                target = g.add(degs[i], degs[j])
                for k in self._prod[i][j]:
                    if degs[k] != target:
                        raise AxiomViolation(
                            f"e{i}*e{j} has a component on e{k} of the wrong degree")
        if self.degree_of(self.unit) not in (0, None) or not any(self.unit):
            raise AxiomViolation("unit must be a nonzero element of degree 0")
        if any(a != 0 and degs[i] != 0 for i, a in enumerate(self.unit)):
            raise AxiomViolation("unit must be of degree 0")
        for i in range(n):
            ei = self.basis_vector(i)
            if self.mul(self.unit, ei) != ei or self.mul(ei, self.unit) != ei:
                raise AxiomViolation(f"unit law fails on e{i}")
        R = self.coeff
        for i in range(n):
            for j in range(n):
                pij = self._prod[i][j]
                for k in range(n):
                    left = {}
                    for m, c in pij.items():
                        for l, d in self._prod[m][k].items():
                            left[l] = left.get(l, 0) + c * d
                    right = {}
                    for m, c in self._prod[j][k].items():
                        for l, d in self._prod[i][m].items():
                            right[l] = right.get(l, 0) + c * d
                    for l in set(left) | set(right):
                        if R.norm(left.get(l, 0) - right.get(l, 0)) != 0:
                            raise AxiomViolation(f"associativity fails on (e{i}, e{j}, e{k})")

    def same_context(self, other: "GradedAlgebra") -> bool:
        return self.coeff == other.coeff and self.grading == other.grading

    def __eq__(self, other):
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return (self.module == other.module and self._prod == other._prod
                and self.unit == other.unit)

    def __hash__(self):
        return hash((self.module, self.unit, self.rank))

    def __repr__(self):
        return (f"GradedAlgebra(rank={self.rank}, coeff={self.coeff.tag}, "
                f"grading={self.grading.group}, degrees={self.degrees})")

    # serialization
    def to_descriptor(self) -> dict:
        def enc(c):
            if isinstance(c, Fraction):
                return c.numerator if c.denominator == 1 else str(c)
            return int(c)
        return {
            "schema_version": SCHEMA_VERSION,
            "coeff": self.coeff.to_json(),
            "grading": self.grading.to_json(),
            "basis_degrees": list(self.degrees),
            "basis_names": list(self.names),
            "structure_constants": [[[enc(c) for c in v] for v in row]
                                    for row in self.structure_constants()],
            "unit": [enc(c) for c in self.unit],
        }

    @classmethod
    def from_descriptor(cls, data: dict) -> "GradedAlgebra":
        if not isinstance(data, dict):
            raise InvalidInput("algebra descriptor must be a JSON object")
        version = data.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise InvalidInput(f"unsupported schema_version {version}")
        try:
            coeff = CoeffRing.from_json(data["coeff"])
            gr = data["grading"]
            grading = Grading(gr, -1) if isinstance(gr, str) else Grading(gr["group"], int(gr.get("sign", -1)))
            degrees = [int(d) for d in data["basis_degrees"]]
            consts = [[[_decode_scalar(c) for c in v] for v in row]
                      for row in data["structure_constants"]]
            unit = [_decode_scalar(c) for c in data["unit"]]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise InvalidInput(f"malformed algebra descriptor: {exc}") from exc
        return cls(GradedModule(coeff, grading, tuple(degrees)), consts, unit,
                   names=data.get("basis_names"))

    def dumps(self) -> str:
        return json.dumps(self.to_descriptor(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "GradedAlgebra":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"descriptor is not valid JSON: {exc}") from exc
        return cls.from_descriptor(data)


def _decode_scalar(c):
    if isinstance(c, bool):
        raise InvalidInput("booleans are not scalars")
    if isinstance(c, int):
        return c
    if isinstance(c, str):
        return Fraction(c)
    raise InvalidInput(f"bad scalar {c!r}")


# ----------------------------------------------------------------------------
# constructions
# ----------------------------------------------------------------------------

def trivial_algebra(coeff: CoeffRing, grading: Grading = Z2) -> GradedAlgebra:
    return GradedAlgebra(GradedModule(coeff, grading, (0,)), [[{0: 1}]], [1], names=["1"])


def tensor_algebras(a: GradedAlgebra, b: GradedAlgebra) -> GradedAlgebra:
    """Graded tensor product with (a x b)(a' x b') = eps(|b|, |a'|) aa' x bb'."""
    if not a.same_context(b):
        raise MixedContext("tensor factors must share coefficients and grading")
    g = a.grading
    na, nb = a.rank, b.rank
    degs = tuple(g.add(a.degrees[i], b.degrees[j]) for i in range(na) for j in range(nb))
    table = [[None] * (na * nb) for _ in range(na * nb)]
    for i in range(na):
        for j in range(nb):
            for k in range(na):
                sign = g.eps(b.degrees[j], a.degrees[k])
                pa = a._prod[i][k]
                for l in range(nb):
                    pb = b._prod[j][l]
                    d = {}
                    for p, c in pa.items():
                        for q, e in pb.items():
                            d[p * nb + q] = sign * c * e
                    table[i * nb + j][k * nb + l] = d
    unit = [a.unit[i] * b.unit[j] for i in range(na) for j in range(nb)]
    names = [f"{x}*{y}" for x in a.names for y in b.names]
    return GradedAlgebra(GradedModule(a.coeff, g, degs), table, unit, names=names)


def opposite(a: GradedAlgebra) -> GradedAlgebra:
    """Opposite algebra: x *op y = eps(|x|, |y|) y x."""
    g = a.grading
    n = a.rank
    table = [[{k: g.eps(a.degrees[i], a.degrees[j]) * c for k, c in a._prod[j][i].items()}
              for j in range(n)] for i in range(n)]
    return GradedAlgebra(a.module, table, a.unit, names=a.names)


class EndAlgebra(GradedAlgebra):
    """Endomorphism algebra of a free graded module, on matrix units e_ij."""

    def __init__(self, module: GradedModule):
        if module.rank == 0:
            raise EmptyBasis("end_algebra needs a nonempty basis")
        g = module.grading
        n = module.rank
        gam = module.degrees
        degs = tuple(g.norm(gam[j] - gam[i]) for i in range(n) for j in range(n))
        N = n * n
        table = [[{} for _ in range(N)] for _ in range(N)]
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    table[i * n + j][j * n + l] = {i * n + l: 1}
        unit = [int(i == j) for i in range(n) for j in range(n)]
        self.base = module
        self.boundary = degs
        super().__init__(GradedModule(module.coeff, g, degs), table, unit,
                         names=[f"E{i}{j}" for i in range(n) for j in range(n)])


def end_algebra(m: GradedModule) -> EndAlgebra:
    return EndAlgebra(m)


def matrix_algebra(coeff: CoeffRing, n: int, grading: Grading = Z2) -> EndAlgebra:
    """Ungraded n x n matrices (all basis degrees zero)."""
    return EndAlgebra(GradedModule(coeff, grading, (0,) * n))


# ----------------------------------------------------------------------------
# base change
# ----------------------------------------------------------------------------

def coefficient_map(source: CoeffRing, target: CoeffRing):
    """The canonical ring map source -> target, or BadPrime if none exists."""
    if source == target:
        return lambda x: x
    if source.kind == "Z":
        return target.norm
    if source.kind == "Zloc":
        if target.kind == "Fp":
            if target.modulus in source.primes:
                raise BadPrime(f"{target.modulus} is inverted in {source.tag}")
            return target.norm
        if target.kind == "Zloc" and set(source.primes) <= set(target.primes):
            return target.norm
        if target.kind == "Zmod" and all(target.modulus % p for p in source.primes):
            return target.norm
    if source.kind == "Zmod" and target.kind in ("Zmod", "Fp") and source.modulus % target.modulus == 0:
        return target.norm
    raise BadPrime(f"no canonical map {source.tag} -> {target.tag}")


def base_change(a: GradedAlgebra, target: CoeffRing | None = None,
                theta: str = "identity") -> GradedAlgebra:
    """Push structure constants along a ring map and degrees along theta.

    ``theta`` is ``"identity"`` or ``"reduce"`` (Z-grading to Z/2).
    """
    target = target or a.coeff
    f = coefficient_map(a.coeff, target)
    if theta == "identity":
        grading = a.grading
    elif theta == "reduce":
        if a.grading.group != "Z":
            raise InvalidInput("theta 'reduce' needs a Z-graded algebra")
        grading = a.grading.reduced()
    else:
        raise InvalidInput(f"unknown grading map {theta!r}")
    n = a.rank
    table = [[{k: f(c) for k, c in a._prod[i][j].items()} for j in range(n)] for i in range(n)]
    unit = [f(c) for c in a.unit]
    if isinstance(a, EndAlgebra):
        base = GradedModule(target, grading, a.base.degrees)
        out = EndAlgebra(base)
        pushed = GradedAlgebra(out.module, table, unit, names=a.names, check=False)
        if pushed != out:
            raise AxiomViolation("base change of a matrix algebra is not a matrix algebra")
        return out
    return GradedAlgebra(GradedModule(target, grading, a.degrees), table, unit, names=a.names)


# ----------------------------------------------------------------------------
# maps
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedMap:
    """Linear map between free graded modules; ``matrix[r][c]`` sends e_c to row r."""

    source: GradedModule
    target: GradedModule
    degree: int
    matrix: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.matrix) != self.target.rank or any(len(r) != self.source.rank for r in self.matrix):
            raise ShapeMismatch("map matrix does not match source/target ranks")
        R = self.target.coeff
        object.__setattr__(self, "matrix", tuple(tuple(R.norm(x) for x in r) for r in self.matrix))

    @classmethod
    def from_images(cls, source: GradedModule, target: GradedModule, images: Sequence[Sequence],
                    degree: int = 0) -> "GradedMap":
        cols = list(images)
        if len(cols) != source.rank:
            raise ShapeMismatch("need one image per source basis vector")
        return cls(source, target, degree,
                   tuple(tuple(cols[c][r] for c in range(source.rank)) for r in range(target.rank)))

    @classmethod
    def identity(cls, m: GradedModule) -> "GradedMap":
        return cls(m, m, 0, tuple(tuple(int(i == j) for j in range(m.rank)) for i in range(m.rank)))

    def apply(self, v: Sequence) -> tuple:
        R = self.target.coeff
        return tuple(R.norm(sum(a * b for a, b in zip(row, v))) for row in self.matrix)

    def respects_degrees(self) -> bool:
        g = self.source.grading
        for c in range(self.source.rank):
            want = g.add(self.source.degrees[c], self.degree)
            for r in range(self.target.rank):
                if self.matrix[r][c] != 0 and self.target.degrees[r] != want:
                    return False
        return True


def is_algebra_isomorphism(phi: GradedMap, a: GradedAlgebra, b: GradedAlgebra) -> bool:
    if phi.source != a.module or phi.target != b.module:
        raise ShapeMismatch("map source/target do not match the algebras")
    if phi.degree != 0 or not phi.respects_degrees():
        return False
    if phi.apply(a.unit) != b.unit:
        return False
    images = [phi.apply(a.basis_vector(i)) for i in range(a.rank)]
    for i in range(a.rank):
        for j in range(a.rank):
            if phi.apply(a.mul(a.basis_vector(i), a.basis_vector(j))) != b.mul(images[i], images[j]):
                return False
    if a.rank != b.rank:
        return False
    return b.coeff.is_unit(b.coeff.det(phi.matrix))


def koszul_swap(a: GradedAlgebra, b: GradedAlgebra) -> GradedMap:
    """The map a (x) b -> b (x) a, x (x) y -> eps(|x|, |y|) y (x) x."""
    ab = tensor_algebras(a, b)
    ba = tensor_algebras(b, a)
    g = a.grading
    images = []
    for i in range(a.rank):
        for j in range(b.rank):
            v = [0] * (a.rank * b.rank)
            v[j * a.rank + i] = g.eps(a.degrees[i], b.degrees[j])
            images.append(v)
    return GradedMap.from_images(ab.module, ba.module, images)


def truncated_polynomial(coeff: CoeffRing, n: int, degree: int = 0,
                         grading: Grading = Z2) -> GradedAlgebra:
    """coeff[y]/(y^n) with y in the given degree."""
    if n < 1:
        raise EmptyBasis("need n >= 1")
    degs = tuple(grading.norm(k * degree) for k in range(n))
    table = [[({i + j: 1} if i + j < n else {}) for j in range(n)] for i in range(n)]
    return GradedAlgebra(GradedModule(coeff, grading, degs), table, [1] + [0] * (n - 1),
                         names=[f"y^{k}" for k in range(n)])


def product_algebra(coeff: CoeffRing, n: int, grading: Grading = Z2) -> GradedAlgebra:
    """The commutative algebra coeff^n of n orthogonal idempotents, in degree 0."""
    table = [[({i: 1} if i == j else {}) for j in range(n)] for i in range(n)]
    return GradedAlgebra(GradedModule(coeff, grading, (0,) * n), table, [1] * n,
                         names=[f"p{i}" for i in range(n)])


def algebra_from_table(coeff: CoeffRing, degrees: Iterable[int], table, unit,
                       grading: Grading = Z2, names=None) -> GradedAlgebra:
    return GradedAlgebra(GradedModule(coeff, grading, tuple(degrees)), table, unit, names=names)
