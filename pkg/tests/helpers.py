"""Builders shared by the test modules."""

from __future__ import annotations

import itertools
import json

from gammawald.fincat import FinCat, FinPermCat
from gammawald.specfile import fixture_text, parse_spec

CORPUS = ("C2", "X1", "Z3")


def perm_name(p: tuple[int, ...]) -> str:
    return f"s{len(p)}_" + "".join(map(str, p))


def symmetric_groupoid(n_max: int = 4) -> tuple[FinPermCat, dict]:
    """Skeletal finite sets of size <= n_max with bijections, tensor = disjoint sum.

    The tensor is partial (sizes must add up to at most ``n_max``).  Morphisms
    are named after the permutation ``p`` they induce, ``x -> p[x]``, so a
    perm_iso can be read off as an honest permutation of points.
    """
    objects = [str(n) for n in range(n_max + 1)]
    perms = {n: list(itertools.permutations(range(n))) for n in range(n_max + 1)}
    morphisms = [(perm_name(p), str(n), str(n)) for n in perms for p in perms[n] if p != tuple(range(n))]

    def mname(p):
        return f"id_{len(p)}" if p == tuple(range(len(p))) else perm_name(p)

    compose = []
    for n in perms:
        for g in perms[n]:
            for f in perms[n]:
                if g == tuple(range(n)) or f == tuple(range(n)):
                    continue
                compose.append((mname(g), mname(f), mname(tuple(g[f[x]] for x in range(n)))))
    cat = FinCat.from_names(objects, morphisms, compose, name=f"Sigma<={n_max}")
    by_perm = {p: cat.mor(mname(p)) for n in perms for p in perms[n]}
    tobj, tmor, sym = {}, {}, {}
    for a in range(n_max + 1):
        for b in range(n_max + 1 - a):
            tobj[(a, b)] = a + b
            sym[(a, b)] = by_perm[tuple(x + b if x < a else x - a for x in range(a + b))]
            for f in perms[a]:
                for g in perms[b]:
                    tmor[(by_perm[f], by_perm[g])] = by_perm[f + tuple(a + y for y in g)]
    pcat = FinPermCat(cat, 0, tobj, tmor, sym, partial=True)
    return pcat, by_perm


def block_permutation(sizes, sigma) -> tuple[int, ...]:
    """Point permutation moving block p (of ``sizes[p]`` points) to slot ``sigma[p]``."""
    order = sorted(range(len(sizes)), key=lambda p: sigma[p])
    start, pos = {}, 0
    for p in order:
        start[p] = pos
        pos += sizes[p]
    out = []
    for p, k in enumerate(sizes):
        out.extend(start[p] + r for r in range(k))
    return tuple(out)


def fixture_dict(name: str) -> dict:
    return json.loads(fixture_text(name))


def spec_of(d: dict):
    return parse_spec(json.dumps(d))
