"""Square-free parts and the f(n) = p * f(H) * a(n)^2 decomposition."""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass

from .engine import base_forest_count, forest_count, q_at_minus_one
from .errors import FactorizationTimeout, StructureViolation
from .model import FoliationSpec

TRIAL_LIMIT = 10**6
RHO_BUDGET = 2_000_000

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24 with these bases."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, budget: int, rng: random.Random) -> tuple[int, int]:
    """One Pollard-Brent attempt; returns (factor or n, steps used)."""
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    steps = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        steps += r
        r *= 2
        if steps > budget:
            return n, steps
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g, steps


def factorize(n: int, budget: int = RHO_BUDGET) -> Counter:
    """Prime factorization: trial division up to 10^6, then Pollard-Brent.

    ``budget`` bounds the total number of rho iterations.
    """
    if n < 1:
        raise ValueError("can only factor positive integers")
    factors: Counter = Counter()
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] += 1
            n //= p
    # wheel 6k +- 1
    p = 7
    step = 4
    while p <= TRIAL_LIMIT and p * p <= n:
        while n % p == 0:
            factors[p] += 1
            n //= p
        p += step
        step = 6 - step
    if n == 1:
        return factors
    rng = random.Random(n)
    spent = 0
    stack = [n]
    while stack:
        x = stack.pop()
        if x == 1:
            continue
        if x < TRIAL_LIMIT**2 or is_probable_prime(x):
            factors[x] += 1
            continue
        root = math.isqrt(x)
        if root * root == x:
            stack += [root, root]
            continue
        while True:
            d, used = _brent(x, budget - spent, rng)
            spent += used
            if 1 < d < x:
                stack += [d, x // d]
                break
            if spent >= budget:
                raise FactorizationTimeout(f"could not factor {x} within {budget} steps")
    return factors


def squarefree_part(n: int, budget: int = RHO_BUDGET) -> int:
    """Product of the primes dividing n to an odd power."""
    if n < 1:
        raise ValueError("square-free part needs a positive integer")
    out = 1
    for p, e in factorize(n, budget).items():
        if e % 2:
            out *= p
    return out


def integer_sqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class ArithmeticReport:
    n: int
    f_n: int
    f_base: int
    q_minus_one: int
    square_free_p: int
    a_n: int
    parity: str
    verified: bool


def verify_arithmetic_structure(spec: FoliationSpec, n: int) -> ArithmeticReport:
    """Extract a(n) from f(n) = f(H) a(n)^2 (n odd) or p f(H) a(n)^2 (n even).

    Raises StructureViolation if the quotient is not an integer, or not a
    (p times a) perfect square.
    """
    f_n = forest_count(spec, n).f_n
    f_base = base_forest_count(spec)
    qm1 = q_at_minus_one(spec)
    p = squarefree_part(qm1)
    parity = "odd" if n % 2 else "even"
    multiplier = f_base if parity == "odd" else p * f_base
    quotient, rem = divmod(f_n, multiplier)
    if rem:
        raise StructureViolation(f"f({n}) = {f_n} is not divisible by {multiplier}")
    a_n = integer_sqrt_exact(quotient)
    if a_n is None:
        raise StructureViolation(f"f({n}) / {multiplier} = {quotient} is not a perfect square")
    if multiplier * a_n * a_n != f_n:
        raise StructureViolation(f"reconstruction of f({n}) failed")
    return ArithmeticReport(n, f_n, f_base, qm1, p, a_n, parity, True)
