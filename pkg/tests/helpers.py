"""Seeded instance generators shared across the suite.

Everything here uses explicit random.Random seeds so the sampled suites
are frozen: reruns exercise the identical instances.
"""
import random

from starcone import FiberInstance, block_instance


def random_exponents(rng: random.Random, nvars: int, degree: int) -> list:
    """A random composition of `degree` into `nvars` nonnegative parts."""
    cuts = sorted(rng.randint(0, degree) for _ in range(nvars - 1))
    parts = []
    prev = 0
    for c in cuts + [degree]:
        parts.append(c - prev)
        prev = c
    return parts


def monomial_text(names, exponents) -> str:
    factors = []
    for name, e in zip(names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def random_monomials(rng: random.Random, names, count: int, min_deg: int, max_deg: int) -> list:
    out = []
    for _ in range(count):
        d = rng.randint(min_deg, max_deg)
        out.append(monomial_text(names, random_exponents(rng, len(names), d)))
    return out


def random_suite_instance(rng: random.Random, max_vars=3, max_gens=4, max_deg=4) -> FiberInstance:
    """One two-block instance with I', J' random inside the block squares.

    Generators have degree >= 2 in their own block, hence automatically lie
    in the square of the block ideal.
    """
    m = rng.randint(1, max_vars)
    n = rng.randint(1, max_vars)
    xs = [f"x{i+1}" for i in range(m)] if m > 1 else ["x"]
    ys = [f"y{j+1}" for j in range(n)] if n > 1 else ["y"]
    ip = random_monomials(rng, xs, rng.randint(1, max_gens), 2, max_deg)
    jp = random_monomials(rng, ys, rng.randint(1, max_gens), 2, max_deg)
    return block_instance(m, n, ip, jp)


def suite_instances(count=20, seed=20260819, **kw) -> list:
    rng = random.Random(seed)
    return [random_suite_instance(rng, **kw) for _ in range(count)]


def small_instances(count=5, seed=77) -> list:
    """Small enough for degreewise homology certification."""
    rng = random.Random(seed)
    return [
        random_suite_instance(rng, max_vars=2, max_gens=2, max_deg=3)
        for _ in range(count)
    ]
