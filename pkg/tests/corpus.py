"""Seeded random monomial instances shared by the acceptance and property tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

from fgrade_kernel.groebner import Ideal
from fgrade_kernel.modules import FPModule
from fgrade_kernel.ring import polynomial_ring

R3 = polynomial_ring("x,y,z")
CORPUS_SEED = 20261014
CORPUS_SIZE = 240


@dataclass
class Instance:
    a: Ideal
    b: Ideal
    M: FPModule
    label: str


def random_monomial(rng, R, max_exp=2, allow_one=False):
    while True:
        exp = tuple(rng.randint(0, max_exp) for _ in range(R.nvars))
        if allow_one or any(exp):
            return R.monomial(exp)


def random_pure_powers(rng, R, max_gens=3, max_exp=2):
    idx = rng.sample(range(R.nvars), rng.randint(1, min(max_gens, R.nvars)))
    return [R.monomial([rng.randint(1, max_exp) if j == i else 0 for j in range(R.nvars)]) for i in idx]


def random_monomial_ideal(rng, R, max_gens=3, max_exp=2):
    # half the time use powers of distinct variables, which gives larger grades
    if rng.random() < 0.5:
        return Ideal(R, random_pure_powers(rng, R, max_gens, max_exp))
    return Ideal(R, [random_monomial(rng, R, max_exp) for _ in range(rng.randint(1, max_gens))])


def random_cyclic(rng, R):
    # zero relations gives the free module R
    gens = [random_monomial(rng, R) for _ in range(rng.choice((0, 0, 1, 2)))]
    return FPModule.cyclic(R, gens), gens


def random_instance(rng, R=R3) -> Instance:
    a = random_monomial_ideal(rng, R)
    b = random_monomial_ideal(rng, R)
    parts = [random_cyclic(rng, R) for _ in range(rng.randint(1, 2))]
    M = parts[0][0]
    for P, _ in parts[1:]:
        M = M + P
    label = f"a={a} b={b} M=" + " ++ ".join(f"R/{Ideal(R, g)}" if g else "R" for _, g in parts)
    return Instance(a, b, M, label)


def corpus(n=CORPUS_SIZE, seed=CORPUS_SEED) -> list:
    rng = random.Random(seed)
    return [random_instance(rng) for _ in range(n)]
