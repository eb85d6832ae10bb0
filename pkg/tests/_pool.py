"""Small graded algebras used by the property tests."""
import random

from brauerkit.brauerwall import QuadraticDatum, half_quaternion, quaternion_algebra
from brauerkit.exactalg import CoeffRing
from brauerkit.graded import (Grading, GradedModule, end_algebra, product_algebra, trivial_algebra,
                              truncated_polynomial)

SEED = 1729


def pool(p: int):
    r = CoeffRing.prime_field(p)
    out = [
        ("k", trivial_algebra(r)),
        ("k[y]/y^2 even", truncated_polynomial(r, 2, 0)),
        ("k[y]/y^3 even", truncated_polynomial(r, 3, 0)),
        ("exterior", truncated_polynomial(r, 2, 1)),
        ("k x k", product_algebra(r, 2)),
        ("End(0,1)", end_algebra(GradedModule(r, Grading(), (0, 1)))),
        ("End(0,0)", end_algebra(GradedModule(r, Grading(), (0, 0)))),
    ]
    if p != 2:
        out += [("half(1)", half_quaternion(r, 1)), ("half(-1)", half_quaternion(r, -1)),
                ("quaternion(1,y^2=-1)", quaternion_algebra(r, 1, QuadraticDatum.y2_equals(-1)))]
    else:
        out.append(("quaternion AS", quaternion_algebra(r, 1, QuadraticDatum.artin_schreier())))
    return out


def random_pairs(count: int, primes=(2, 3, 5, 7)):
    rng = random.Random(SEED)
    pools = {p: pool(p) for p in primes}
    pairs = []
    for _ in range(count):
        p = rng.choice(primes)
        a, b = rng.choice(pools[p]), rng.choice(pools[p])
        if a[1].rank * b[1].rank > 16:
            b = pools[p][0]
        pairs.append((p, a, b))
    return pairs


def random_basis_change(a, rng: random.Random):
    """Same algebra in a random homogeneous basis; returns (algebra, map to a)."""
    from sympy import Matrix

    from brauerkit.graded import GradedMap, algebra_from_table

    p = a.coeff.modulus
    n = a.rank
    while True:
        P = [[0] * n for _ in range(n)]
        for g in a.module.degree_support():
            idx = a.module.indices_in_degree(g)
            for i in idx:
                for j in idx:
                    P[i][j] = rng.randrange(p)
        M = Matrix(P)
        if M.det() % p:
            break
    Pinv = M.inv_mod(p)
    cols = [[P[r][c] for r in range(n)] for c in range(n)]

    def to_new(v):
        return [int(sum(Pinv[r, k] * v[k] for k in range(n)) % p) for r in range(n)]

    table = [[{k: c for k, c in enumerate(to_new(a.mul(cols[i], cols[j]))) if c}
              for j in range(n)] for i in range(n)]
    b = algebra_from_table(a.coeff, a.degrees, table, to_new(a.unit), a.grading)
    return b, GradedMap.from_images(b.module, a.module, cols)


def random_algebras(count: int, primes=(2, 3, 5, 7)):
    """Pairs of (name, scrambled algebra, map to the original, original)."""
    rng = random.Random(SEED + 1)
    out = []
    for p, (na, a), (nb, b) in random_pairs(count, primes):
        out.append((p, (na, *random_basis_change(a, rng), a), (nb, *random_basis_change(b, rng), b)))
    return out

