"""Brute-force reference implementations used to cross-check the engine.

Nothing here touches the Groebner engine: polynomials are plain dicts and
monomial ideals are lists of exponent tuples.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product


def grevlex_gt(u, v) -> bool:
    """Textbook grevlex: higher degree wins; on ties the last nonzero entry of u - v is negative."""
    if sum(u) != sum(v):
        return sum(u) > sum(v)
    diff = [a - b for a, b in zip(u, v)]
    for d in reversed(diff):
        if d:
            return d < 0
    return False


def lex_gt(u, v) -> bool:
    for a, b in zip(u, v):
        if a != b:
            return a > b
    return False


def monomials_of_degree(n, d):
    return [e for e in product(range(d + 1), repeat=n) if sum(e) == d]


def dict_mul(f: dict, g: dict) -> dict:
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + Fraction(c1) * c2
    return {e: c for e, c in out.items() if c != 0}


def dict_add(f: dict, g: dict) -> dict:
    out = dict(f)
    for e, c in g.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c != 0}


def divides(u, v) -> bool:
    return all(a <= b for a, b in zip(u, v))


def in_monomial_ideal(exp, gens) -> bool:
    return any(divides(g, exp) for g in gens)


def variable_primes(n):
    for k in range(n + 1):
        yield from combinations(range(n), k)


def prime_contains(p, gens) -> bool:
    """The prime generated by variables ``p`` contains every monomial in ``gens``."""
    return all(any(g[i] > 0 for i in p) for g in gens)


def minimal_primes(gens, n):
    """Minimal variable-subset primes over a monomial ideal, by exhaustive search."""
    over = [set(p) for p in variable_primes(n) if prime_contains(p, gens)]
    return sorted(tuple(sorted(p)) for p in over if not any(q < p for q in over))


def monomial_dim(gens, n):
    """dim K[x]/(gens) as the largest set of variables avoiding every generator; None for the unit ideal."""
    if any(not any(g) for g in gens):
        return None
    best = -1
    for k in range(n + 1):
        for S in combinations(range(n), k):
            # the monomials supported in S survive iff no generator lives in S
            if not any(all(g[i] == 0 or i in S for i in range(n)) for g in gens):
                best = max(best, k)
    return best


def monomial_intersection(g1, g2):
    lcms = {tuple(max(a, b) for a, b in zip(u, v)) for u in g1 for v in g2}
    return minimalize(lcms)


def monomial_colon(gens, m):
    return minimalize({tuple(max(a - b, 0) for a, b in zip(g, m)) for g in gens})


def minimalize(gens):
    gens = set(gens)
    return sorted(g for g in gens if not any(h != g and divides(h, g) for h in gens))


def rank(rows) -> int:
    """Rank of a matrix over QQ by Fraction Gaussian elimination."""
    rows = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def syzygy_space_dim(row, n, max_deg) -> int:
    """Dimension over QQ of ``{(p_1..p_k) : sum p_i row_i = 0, deg p_i <= max_deg}``.

    ``row`` is a list of polynomial dicts; the count comes from the nullity
    of the coefficient map, no Groebner bases involved.
    """
    mons = [e for d in range(max_deg + 1) for e in monomials_of_degree(n, d)]
    unknowns = [(i, e) for i in range(len(row)) for e in mons]
    images = [dict_mul({e: 1}, row[i]) for i, e in unknowns]
    targets = sorted({t for im in images for t in im})
    cols = [[im.get(t, 0) for t in targets] for im in images]
    return len(unknowns) - rank(cols)
