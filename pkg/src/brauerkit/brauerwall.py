"""Quadratic extensions, Brauer-Wall groups and their generator algebras.

A Brauer-Wall class is stored as a triple ``(type_bit, h, brauer_bit)``
where ``h`` is a bit vector for H^1_et(R, Z/2) in a fixed basis of the
profile. The Q_2 law is

    (e1, h1) * (e2, h2) = (e1 + e2, h1 + h2 + e1*e2*[-1]).

Arithmetic inputs (Br and H^1) are curated profile data with citations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from sympy import isprime

from .azumaya import Q2Class, WallInvariants, is_azumaya, morita_reduce_field
from .errors import (IllegalClass, InvalidInput, NotSeparable, NotUnit, TwoNotInvertible,
                     UnsupportedCoeff, UnsupportedRing)
from .exactalg import CoeffRing, FinAbGroup
from .graded import Z2, GradedAlgebra, GradedModule, trivial_algebra

# ----------------------------------------------------------------------------
# quadratic data and the generator algebras
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticDatum:
    """The rank-2 algebra R[y]/(y^2 - t*y - n); sigma(y) = t - y."""

    t: object = 0
    n: object = -1

    @classmethod
    def y2_plus(cls, c) -> "QuadraticDatum":
        """R[y]/(y^2 + c)."""
        return cls(0, -c)

    @classmethod
    def y2_equals(cls, c) -> "QuadraticDatum":
        return cls(0, c)

    @classmethod
    def artin_schreier(cls) -> "QuadraticDatum":
        """y^2 = y + 1, the nontrivial extension in characteristic 2."""
        return cls(1, 1)

    def discriminant(self):
        return self.t * self.t + 4 * self.n

    def label(self) -> str:
        if self.t == 0:
            return f"y^2 = {self.n}"
        return f"y^2 = {self.t}y + {self.n}"


def quaternion_algebra(r: CoeffRing, u, d: QuadraticDatum) -> GradedAlgebra:
    """Graded quaternion algebra L<S>/(S^2 - u, S l - sigma(l) S), L = R[y]/(d).

    Basis (1, y, S, yS) in degrees (0, 0, 1, 1).
    """
    if not r.is_unit(d.discriminant()):
        raise NotSeparable(f"discriminant {d.discriminant()} is not a unit in {r.tag}")
    if not r.is_unit(u):
        raise NotUnit(f"{u} is not a unit in {r.tag}")
    t, n = r.norm(d.t), r.norm(d.n)
    u = r.norm(u)

    def lmul(a, b):
        return (a[0] * b[0] + a[1] * b[1] * n, a[0] * b[1] + a[1] * b[0] + a[1] * b[1] * t)

    def sigma(a):
        return (a[0] + a[1] * t, -a[1])

    # basis element k = (y-power alpha, S-power i): 0=(0,0) 1=(1,0) 2=(0,1) 3=(1,1)
    pieces = [((1, 0), 0), ((0, 1), 0), ((1, 0), 1), ((0, 1), 1)]
    table = []
    for la, i in pieces:
        row = []
        for lb, j in pieces:
            lb2 = sigma(lb) if i else lb
            c = lmul(la, lb2)
            k = i + j
            if k == 2:
                c = (c[0] * u, c[1] * u)
                k = 0
            row.append({2 * k: c[0], 2 * k + 1: c[1]})
        table.append(row)
    return GradedAlgebra(GradedModule(r, Z2, (0, 0, 1, 1)), table, [1, 0, 0, 0],
                         names=["1", "y", "S", "yS"])


def half_quaternion(r: CoeffRing, u) -> GradedAlgebra:
    """R[x]/(x^2 - u) with x odd."""
    if not r.two_invertible:
        raise TwoNotInvertible(f"2 is not a unit in {r.tag}")
    if not r.is_unit(u):
        raise NotUnit(f"{u} is not a unit in {r.tag}")
    table = [[{0: 1}, {1: 1}], [{1: 1}, {0: u}]]
    return GradedAlgebra(GradedModule(r, Z2, (0, 1)), table, [1, 0], names=["1", "x"])


# ----------------------------------------------------------------------------
# arithmetic profiles
# ----------------------------------------------------------------------------

def square_class_bit(c: int, p: int) -> int:
    """0 if c is a nonzero square mod an odd prime p, else 1."""
    c %= p
    if c == 0:
        raise NotUnit("0 has no square class")
    return 0 if pow(c, (p - 1) // 2, p) == 1 else 1


def smallest_nonsquare(p: int) -> int:
    return next(c for c in range(2, p) if square_class_bit(c, p))


@dataclass(frozen=True)
class RingArithmeticProfile:
    name: str
    ring: CoeffRing
    br: FinAbGroup
    h1_basis: tuple[str, ...]
    h1_labels: dict = field(compare=False)
    minus_one: tuple[int, ...]
    citations: tuple[str, ...]
    unit_class: Callable = field(compare=False, repr=False)
    datum_class: Callable = field(compare=False, repr=False)
    residue_of: str | None = None

    @property
    def two_invertible(self) -> bool:
        return self.ring.two_invertible

    @property
    def h1et2(self) -> FinAbGroup:
        return FinAbGroup((2,) * len(self.h1_basis))

    def h1_label(self, h: Sequence[int]) -> str:
        return self.h1_labels.get(tuple(h), "?")

    def h1_elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product((0, 1), repeat=len(self.h1_basis)))

    def to_json(self) -> dict:
        return {"name": self.name, "ring": self.ring.tag, "br": str(self.br),
                "h1et2": str(self.h1et2), "two_invertible": self.two_invertible,
                "citations": list(self.citations)}


def _fp_unit_class(p):
    def f(c):
        if p == 2:
            if c % 2 == 0:
                raise NotUnit("0 is not a unit")
            return (0,)
        return (square_class_bit(int(CoeffRing.prime_field(p).norm(c)), p),)
    return f


def _fp_datum_class(p):
    R = CoeffRing.prime_field(p)

    def f(d: QuadraticDatum):
        t, n = R.norm(d.t), R.norm(d.n)
        if not R.is_unit(t * t + 4 * n):
            raise NotSeparable("discriminant is not a unit")
        if p == 2:
            roots = [y for y in range(2) if (y * y - t * y - n) % 2 == 0]
            return (0,) if roots else (1,)
        return (square_class_bit(t * t + 4 * n, p),)
    return f


RESIDUE_CITATIONS = (
    "Br(F_q) = 0 and H^1(F_q, Z/2) = Z/2 (finite-field arithmetic)",
)


def field_profile(p: int) -> RingArithmeticProfile:
    if not isprime(p):
        raise UnsupportedRing(f"F_{p}: only prime fields are supported")
    if p == 2:
        labels = {(0,): "split", (1,): "y^2 = y + 1"}
        minus_one = (0,)
    else:
        ns = smallest_nonsquare(p)
        labels = {(0,): "1", (1,): str(ns)}
        minus_one = (square_class_bit(-1, p),)
    return RingArithmeticProfile(
        name=f"fq:{p}", ring=CoeffRing.prime_field(p), br=FinAbGroup(()),
        h1_basis=("nonsplit",), h1_labels=labels, minus_one=minus_one,
        citations=RESIDUE_CITATIONS, unit_class=_fp_unit_class(p), datum_class=_fp_datum_class(p))


def _z_unit_class(c):
    if c not in (1, -1):
        raise NotUnit(f"{c} is not a unit of Z")
    return ()


def _z_datum_class(d: QuadraticDatum):
    if d.discriminant() not in (1, -1):
        raise NotSeparable("discriminant is not a unit of Z")
    return ()


def _zinv2_unit_class(c):
    q = Fraction(c)
    if q == 0:
        raise NotUnit("0 is not a unit")
    num, den = abs(q.numerator), q.denominator
    k = 0
    for x, s in ((num, 1), (den, -1)):
        while x % 2 == 0:
            x //= 2
            k += s
        if x != 1:
            raise NotUnit(f"{c} is not a unit of Z[1/2]")
    return (int(q < 0), k % 2)


def _zinv2_datum_class(d: QuadraticDatum):
    disc = Fraction(d.discriminant())
    return _zinv2_unit_class(disc)


def integer_profile() -> RingArithmeticProfile:
    return RingArithmeticProfile(
        name="z", ring=CoeffRing.integers(), br=FinAbGroup(()), h1_basis=(),
        h1_labels={(): "1"}, minus_one=(),
        citations=("Br(Z) = 0; Z has no nontrivial unramified quadratic extension; "
                   "BW(Z) is trivial",),
        unit_class=_z_unit_class, datum_class=_z_datum_class)


def zinv2_profile() -> RingArithmeticProfile:
    return RingArithmeticProfile(
        name="z_inv2", ring=CoeffRing.localized([2]), br=FinAbGroup((2,)),
        h1_basis=("-1", "2"),
        h1_labels={(0, 0): "1", (1, 0): "-1", (0, 1): "2", (1, 1): "-2"},
        minus_one=(1, 0),
        citations=("Br(Z[1/2]) = Z/2, generated by the Hamilton quaternions",
                   "H^1_et(Z[1/2], Z/2) = Z/2 x Z/2, spanned by the classes of -1 and 2",
                   "BW(Z[1/2]) = Z/8 x Z/2, of order 16"),
        unit_class=_zinv2_unit_class, datum_class=_zinv2_datum_class)


def get_profile(name: str) -> RingArithmeticProfile:
    """Profiles: ``z``, ``z_inv2``, ``fq:<p>``, ``henselian:<p>``."""
    key = name.strip().lower()
    if key in ("z", "integers"):
        return integer_profile()
    if key in ("z_inv2", "z[1/2]"):
        return zinv2_profile()
    for prefix in ("fq:", "f", "henselian:"):
        if key.startswith(prefix):
            try:
                q = int(key[len(prefix):])
            except ValueError:
                break
            prof = field_profile(q)
            if prefix == "henselian:":
                return RingArithmeticProfile(
                    name=key, ring=prof.ring, br=prof.br, h1_basis=prof.h1_basis,
                    h1_labels=prof.h1_labels, minus_one=prof.minus_one,
                    citations=prof.citations + (
                        "Henselian local ring: extension of scalars to the residue field "
                        "is an isomorphism on Br and H^1_et",),
                    unit_class=prof.unit_class, datum_class=prof.datum_class,
                    residue_of=key)
            return prof
    raise UnsupportedRing(f"no arithmetic profile for {name!r}")


# ----------------------------------------------------------------------------
# classes and the group law
# ----------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class BWClass:
    type_bit: int
    h: tuple[int, ...]
    brauer_bit: int = 0

    @property
    def q2(self) -> tuple[int, tuple[int, ...]]:
        return (self.type_bit, self.h)

    def invariants(self, profile: RingArithmeticProfile) -> WallInvariants:
        return WallInvariants(self.type_bit, Q2Class(self.type_bit, self.h, profile.h1_label(self.h)),
                              "trivial" if not self.brauer_bit else "nontrivial")

    def to_json(self, profile: RingArithmeticProfile | None = None) -> dict:
        out = {"type_bit": self.type_bit, "h": list(self.h), "brauer_bit": self.brauer_bit}
        if profile is not None:
            out["quad_label"] = profile.h1_label(self.h)
        return out


def identity_class(profile: RingArithmeticProfile) -> BWClass:
    return BWClass(0, (0,) * len(profile.h1_basis), 0)


def check_class(x: BWClass, profile: RingArithmeticProfile) -> None:
    if x.type_bit not in (0, 1) or x.brauer_bit not in (0, 1):
        raise IllegalClass(f"{x} has non-binary entries")
    if len(x.h) != len(profile.h1_basis) or any(b not in (0, 1) for b in x.h):
        raise IllegalClass(f"{x} does not match H^1 of {profile.name}")
    if x.type_bit and not profile.two_invertible:
        raise IllegalClass(f"odd type needs 2 invertible in {profile.ring.tag}")
    if x.brauer_bit and profile.br.is_trivial():
        raise IllegalClass(f"Br({profile.ring.tag}) is trivial")


def q2_multiply(x: tuple, y: tuple, profile: RingArithmeticProfile) -> tuple:
    e1, h1 = x
    e2, h2 = y
    m = profile.minus_one
    h = tuple((a + b + e1 * e2 * c) % 2 for a, b, c in zip(h1, h2, m))
    return ((e1 + e2) % 2, h)


def _zinv2_decode(a: int, b: int) -> BWClass:
    # g = half(1), h = quaternion(1, y^2 = 2); g^4 is the Hamilton class (cited).
    a %= 8
    b %= 2
    e = a % 2
    half = (a // 2) % 2
    h = ((half * 1) % 2, b)
    return BWClass(e, h, int(a >= 4))


def _zinv2_encode_table() -> dict:
    return {_zinv2_decode(a, b): (a, b) for a in range(8) for b in range(2)}


def bw_multiply(x: BWClass, y: BWClass, profile: RingArithmeticProfile) -> BWClass:
    check_class(x, profile)
    check_class(y, profile)
    if profile.name == "z_inv2":
        enc = _zinv2_encode_table()
        a1, b1 = enc[x]
        a2, b2 = enc[y]
        return _zinv2_decode(a1 + a2, b1 + b2)
    e, h = q2_multiply(x.q2, y.q2, profile)
    return BWClass(e, h, 0)


def bw_power(x: BWClass, k: int, profile: RingArithmeticProfile) -> BWClass:
    out = identity_class(profile)
    for _ in range(k):
        out = bw_multiply(out, x, profile)
    return out


def class_order(x: BWClass, profile: RingArithmeticProfile) -> int:
    e = identity_class(profile)
    y = x
    k = 1
    while y != e:
        y = bw_multiply(y, x, profile)
        k += 1
    return k


def bw_class_of(a: GradedAlgebra) -> BWClass:
    if a.coeff.kind != "Fp":
        raise UnsupportedCoeff("bw_class_of needs prime-field coefficients")
    _, inv = morita_reduce_field(a)
    return BWClass(inv.type_bit, inv.quad_class.h, 0)


def basic_representative(inv: WallInvariants, r: CoeffRing) -> GradedAlgebra:
    p = r.modulus
    h = inv.quad_class.h
    if inv.type_bit == 0:
        if not any(h):
            return trivial_algebra(r)
        if p == 2:
            return quaternion_algebra(r, 1, QuadraticDatum.artin_schreier())
        return quaternion_algebra(r, 1, QuadraticDatum.y2_equals(smallest_nonsquare(p)))
    c = 1 if not any(h) else smallest_nonsquare(p)
    return half_quaternion(r, c)


def class_of_generator(kind: str, params: dict, profile: RingArithmeticProfile) -> BWClass:
    """Class of a named generator algebra from its parameters (via the profile)."""
    nb = len(profile.h1_basis)
    if kind == "trivial":
        return BWClass(0, (0,) * nb)
    if kind == "half":
        return BWClass(1, tuple(profile.unit_class(params["u"])))
    if kind == "quaternion":
        d = QuadraticDatum(params.get("t", 0), params["n"])
        return BWClass(0, tuple(profile.datum_class(d)))
    raise InvalidInput(f"unknown generator kind {kind!r}")


# ----------------------------------------------------------------------------
# groups
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    name: str
    kind: str
    params: dict
    cls: BWClass
    order: int

    def algebra(self, r: CoeffRing) -> GradedAlgebra:
        if self.kind == "half":
            return half_quaternion(r, self.params["u"])
        if self.kind == "quaternion":
            return quaternion_algebra(r, self.params.get("u", 1),
                                      QuadraticDatum(self.params.get("t", 0), self.params["n"]))
        return trivial_algebra(r)


def _group_from_law(elements, op, identity) -> FinAbGroup:
    """Invariant factors of a finite abelian group given by its law."""
    def order(x):
        k, y = 1, x
        while y != identity:
            y = op(y, x)
            k += 1
        return k

    n = len(elements)
    orders = {x: order(x) for x in elements}
    factors = []
    from sympy import factorint
    for p, e in sorted(factorint(n).items()):
        # number of elements killed by p^k, for k = 0..e
        counts = [sum(1 for x in elements if (p ** k) % orders[x] == 0) for k in range(e + 1)]
        ranks = []  # number of cyclic factors of order >= p^k
        for k in range(1, e + 1):
            ranks.append(round(_log(counts[k] // counts[k - 1], p)))
        for k in range(1, e + 1):
            nxt = ranks[k] if k < len(ranks) else 0
            factors += [p ** k] * (ranks[k - 1] - nxt)
    return FinAbGroup.from_orders(factors)


def _log(x: int, p: int) -> int:
    k = 0
    while x > 1:
        x //= p
        k += 1
    return k


@dataclass(frozen=True)
class BWGroup:
    profile: RingArithmeticProfile
    carrier: FinAbGroup
    generators: tuple[Generator, ...]
    provenance: str

    def decode(self, coords: Sequence[int]) -> BWClass:
        coords = self.carrier.reduce(coords)
        out = identity_class(self.profile)
        for c, g in zip(coords, self.generators):
            out = bw_multiply(out, bw_power(g.cls, c, self.profile), self.profile)
        return out

    def encode(self, x: BWClass) -> tuple[int, ...]:
        check_class(x, self.profile)
        for coords in self.carrier.elements():
            if self.decode(coords) == x:
                return coords
        raise IllegalClass(f"{x} is not in BW({self.profile.ring.tag})")

    def elements(self) -> list[BWClass]:
        return [self.decode(c) for c in self.carrier.elements()]

    @property
    def order(self) -> int:
        return self.carrier.order

    def to_json(self) -> dict:
        return {
            "ring": self.profile.name,
            "group": str(self.carrier),
            "invariant_factors": list(self.carrier.invariant_factors),
            "order": self.order,
            "provenance": self.provenance,
            "generators": [{"name": g.name, "kind": g.kind, "params": _jsonable(g.params),
                            "order": g.order, "class": g.cls.to_json(self.profile)}
                           for g in self.generators],
            "citations": list(self.profile.citations),
        }


def _jsonable(params: dict) -> dict:
    return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in params.items()}


def all_classes(profile: RingArithmeticProfile) -> list[BWClass]:
    es = (0, 1) if profile.two_invertible else (0,)
    bs = (0, 1) if not profile.br.is_trivial() else (0,)
    return [BWClass(e, h, b) for e in es for h in profile.h1_elements() for b in bs]


def q2_group(profile: RingArithmeticProfile) -> tuple[FinAbGroup, list[Q2Class]]:
    es = (0, 1) if profile.two_invertible else (0,)
    elems = [(e, h) for e in es for h in profile.h1_elements()]
    ident = (0, (0,) * len(profile.h1_basis))
    group = _group_from_law(elems, lambda x, y: q2_multiply(x, y, profile), ident)
    return group, [Q2Class(e, h, profile.h1_label(h)) for e, h in elems]


def _generator_specs(profile: RingArithmeticProfile):
    r = profile.ring
    if profile.name == "z":
        return []
    if profile.name == "z_inv2":
        # listed in the canonical order of the carrier Z/2 + Z/8
        return [("h", "quaternion", {"u": 1, "t": 0, "n": 2}), ("g", "half", {"u": 1})]
    p = r.modulus
    if p == 2:
        return [("q", "quaternion", {"u": 1, "t": 1, "n": 1})]
    if p % 4 == 3:
        return [("g", "half", {"u": 1})]
    return [("g", "half", {"u": 1}), ("q", "quaternion", {"u": 1, "t": 0, "n": smallest_nonsquare(p)})]


def bw_group(profile: RingArithmeticProfile | str) -> BWGroup:
    if isinstance(profile, str):
        profile = get_profile(profile)
    gens = []
    for name, kind, params in _generator_specs(profile):
        cls = class_of_generator(kind, params, profile)
        gens.append((name, kind, params, cls))
    elems = all_classes(profile)
    ident = identity_class(profile)
    carrier = _group_from_law(elems, lambda x, y: bw_multiply(x, y, profile), ident)
    gen_objs = tuple(Generator(n, k, p, c, class_order(c, profile)) for n, k, p, c in gens)
    provenance = "cited" if profile.name == "z_inv2" else "computed"
    if tuple(g.order for g in gen_objs) != carrier.invariant_factors:
        raise IllegalClass(f"generator orders do not match BW({profile.ring.tag}) = {carrier}")
    group = BWGroup(profile, carrier, gen_objs, provenance)
    if sorted(group.elements()) != sorted(elems):
        raise IllegalClass(f"generators do not span BW({profile.ring.tag})")
    return group


def reduce_class_mod_p(x: BWClass, source: RingArithmeticProfile, p: int) -> BWClass:
    """Image of a class under R -> F_p, using the unit representatives of H^1."""
    target = field_profile(p)
    if source.name != "z_inv2":
        raise UnsupportedRing("reduction is implemented from Z[1/2]")
    reps = [-1, 2]
    h = [0]
    for bit, rep in zip(x.h, reps):
        if bit:
            h[0] ^= target.unit_class(rep)[0]
    return BWClass(x.type_bit, tuple(h), 0)


def summary_table(fields: Sequence[int] = (2, 3, 5, 7)) -> list[dict]:
    names = ["z", "z_inv2"] + [f"fq:{p}" for p in fields]
    rows = []
    for name in names:
        prof = get_profile(name)
        g = bw_group(prof)
        q2, _ = q2_group(prof)
        rows.append({"ring": prof.ring.tag, "profile": name, "Br": str(prof.br),
                     "H1": str(prof.h1et2), "Q2": str(q2), "BW": str(g.carrier),
                     "order": g.order, "provenance": g.provenance})
    return rows


def generator_algebras_verified(group: BWGroup) -> list[tuple[str, bool]]:
    out = []
    for g in group.generators:
        out.append((g.name, is_azumaya(g.algebra(group.profile.ring))))
    return out
