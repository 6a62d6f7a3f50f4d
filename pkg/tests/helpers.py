"""Shared fixtures data and small brute-force oracles for the test suite."""
import itertools
import random

from fibercone.field import QQ
from fibercone.poly import base_ring, presentation_ring

R2 = base_ring(["x", "y"], QQ)
X5 = presentation_ring(5, QQ)

CM_GENS = ["x^7 + x^4*y^2 + y^12", "x^5*y + x^2*y^6", "x^7", "x^2*y^6", "y^12"]
CM_Q = (0, 1)
CM_KERNEL = ["X3^2 - X1*X3", "X3*X4", "X3*X5", "X4*X5 - X2*X5", "X5^2 - X1*X5",
             "X4^3 + X2^2*X4 - 2*X2*X4^2"]

NC_GENS = ["x^5", "x^4*y", "x^3*y^3", "x*y^4", "y^5"]
NC_Q = (0, 4)
NC_A_LISTED = ["X2*X3", "X2*X4 - X1*X5", "X3^2", "X3*X4", "X2^4 - X1^3*X4", "X4^4 - X2*X5^3"]
NC_KERNEL_EXTRA = ["X1*X3", "X3*X5", "X1^2*X4^2 - X2^3*X5", "X1*X4^3 - X2^2*X5^2"]


def polys(texts, ring):
    return [ring.parse(t) for t in texts]


def socle_of_monomials(mins, cap=40):
    """Least s with every degree-s monomial in the 2-variable monomial ideal."""
    for s in range(1, cap):
        if all(any(a >= m[0] and s - a >= m[1] for m in mins) for a in range(s + 1)):
            return s
    return None


def random_monomial_ideal(rng: random.Random, smax: int = 5, ring=R2):
    """A random m-primary monomial ideal of K[x, y] with socle bound <= smax.

    Staircase shape: pure powers at both ends and a random descending chain of
    corners in between, so both complete intersections and long staircases
    turn up.
    """
    while True:
        a0, b0 = rng.randint(1, smax), rng.randint(1, smax)
        k = rng.randint(1, min(a0, b0))
        xs = sorted(rng.sample(range(1, a0), min(k - 1, a0 - 1)), reverse=True) if a0 > 1 else []
        ys = sorted(rng.sample(range(1, b0), min(len(xs), b0 - 1))) if b0 > 1 else []
        k = min(len(xs), len(ys))
        mins = [(a0, 0)] + list(zip(xs[:k], ys[:k])) + [(0, b0)]
        s = socle_of_monomials(mins)
        if s is not None and s <= smax:
            return [ring.monomial(m) for m in mins]


def random_artinian_exponents(rng: random.Random, max_vars: int = 4, max_deg: int = 6):
    """Exponent vectors of an Artinian monomial ideal: pure powers plus extras."""
    n = rng.randint(1, max_vars)
    gens = [tuple(rng.randint(1, max_deg) if j == i else 0 for j in range(n)) for i in range(n)]
    for _ in range(rng.randint(0, 5)):
        deg = rng.randint(1, max_deg)
        e = [0] * n
        for _ in range(deg):
            e[rng.randrange(n)] += 1
        gens.append(tuple(e))
    return n, gens


def brute_force_colength(n, gens):
    """Count monomials below the pure powers not divisible by any generator."""
    box = [min(g[i] for g in gens if g[i] and sum(g) == g[i]) for i in range(n)]
    count = 0
    for e in itertools.product(*(range(b) for b in box)):
        if not any(all(e[i] >= g[i] for i in range(n)) for g in gens):
            count += 1
    return count
