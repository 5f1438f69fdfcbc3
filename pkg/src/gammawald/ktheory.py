"""K0 on both sides of the comparison, integer Smith normal form, nerve homology.

All arithmetic is on Python integers; nothing here touches floating point.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass

from .errors import BudgetExceeded, GammaWaldError, OutOfWindow
from .fincat import FinCat, FinPermCat
from .report import Report

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class AbGroupInvariants:
    """Z^rank plus Z/d for each invariant factor, with d1 | d2 | ... and each d >= 2."""

    rank: int = 0
    factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0 or any(d < 2 for d in self.factors):
            raise ValueError("rank must be >= 0 and factors >= 2")
        for a, b in itertools.pairwise(self.factors):
            if b % a:
                raise ValueError(f"factors {self.factors} do not form a divisibility chain")

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.factors]
        if self.rank:
            parts.insert(0, "Z" if self.rank == 1 else f"Z^{self.rank}")
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "factors": list(self.factors), "group": str(self)}


def groups_isomorphic(a: AbGroupInvariants, b: AbGroupInvariants) -> bool:
    return a.rank == b.rank and a.factors == b.factors


# -- Smith normal form ------------------------------------------------------


@dataclass(frozen=True)
class SNF:
    """Non-zero diagonal entries ``d1 | d2 | ...`` (units included) and their count."""

    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.diagonal)


class OracleLog:
    """Counts the gcd-of-minors cross-checks run inside :func:`smith_normal_form`."""

    def __init__(self):
        self.checked = 0
        self.agreed = 0

    def reset(self):
        self.checked = self.agreed = 0


ORACLE_LOG = OracleLog()
MINOR_CHECK_SIZE = 4


def smith_normal_form(M: Sequence[Sequence[int]], check_minors: bool = True) -> SNF:
    """Diagonalize ``M`` by unimodular row and column operations.

    Matrices with at most four rows and columns are cross-checked against
    the determinantal divisors; a mismatch raises ``AssertionError``.
    """
    A = [list(map(int, row)) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < rows and t < cols:
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(A[i][j])
                if v and (best is None or v < best):
                    best, pivot = v, (i, j)
                    if v == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        i, j = pivot
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    ri, rt = A[i], A[t]
                    for k in range(t, cols):
                        ri[k] -= q * rt[k]
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    dirty = True
            if not dirty:
                # pivot must divide the rest of the block
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                ri, rt = A[bad[0]], A[t]
                for k in range(t, cols):
                    rt[k] += ri[k]
                continue
            # move the smallest non-zero remainder into the pivot slot
            best = None
            for i in range(t, rows):
                v = abs(A[i][t])
                if v and (best is None or v < best[0]):
                    best = (v, i, t)
            for j in range(t, cols):
                v = abs(A[t][j])
                if v and v < best[0]:
                    best = (v, t, j)
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    out = SNF(tuple(diag))
    if check_minors and rows <= MINOR_CHECK_SIZE and cols <= MINOR_CHECK_SIZE:
        ORACLE_LOG.checked += 1
        expected = determinantal_diagonal(M)
        assert expected == out.diagonal, f"SNF {out.diagonal} disagrees with minors {expected}"
        ORACLE_LOG.agreed += 1
    return out


def _det(M: Sequence[Sequence[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for a, b in itertools.combinations(range(n), 2):
            if perm[a] > perm[b]:
                sign = -sign
        total += sign * math.prod(M[i][perm[i]] for i in range(n))
    return total


def determinantal_diagonal(M: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors from gcds of k x k minors (small matrices only)."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, _det([[M[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        divisors.append(g)
    return tuple(divisors[k] // divisors[k - 1] for k in range(1, len(divisors)))


def cokernel(relations: Sequence[Sequence[int]], generators: int) -> AbGroupInvariants:
    """``Z^generators`` modulo the row span of ``relations``."""
    rows = [r for r in relations if any(r)]
    if not rows:
        return AbGroupInvariants(generators, ())
    snf = smith_normal_form(rows)
    return AbGroupInvariants(generators - snf.rank, tuple(d for d in snf.diagonal if d > 1))


# -- monoids ----------------------------------------------------------------


@dataclass(frozen=True)
class FinCommMonoid:
    elements: tuple[Hashable, ...]
    table: tuple[tuple[int, ...], ...]
    unit: int

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def violations(self) -> list[str]:
        n = len(self.elements)
        out = []
        for a in range(n):
            if self.op(self.unit, a) != a or self.op(a, self.unit) != a:
                out.append(f"unit law at {self.elements[a]}")
            for b in range(n):
                if self.op(a, b) != self.op(b, a):
                    out.append(f"commutativity at ({self.elements[a]}, {self.elements[b]})")
                for c in range(n):
                    if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)):
                        out.append(f"associativity at {(self.elements[a], self.elements[b], self.elements[c])}")
        return out


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for a in range(len(self.parent)):
            groups.setdefault(self.find(a), []).append(a)
        return [groups[k] for k in sorted(groups)]


def components(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    uf = _UnionFind(n)
    for a, b in edges:
        uf.union(a, b)
    return uf.classes()


def pi0_monoid(pcat: FinPermCat, report: Report | None = None) -> FinCommMonoid:
    """Connected components of C under morphism zigzags, added by the tensor.

    Well-definedness (every pair of representatives lands in one component)
    is checked and filed in ``report`` when given; a violation raises.
    """
    c = pcat.base
    classes = components(len(c.obj_names), ((c.src[f], c.tgt[f]) for f in c.morphisms))
    where = {o: k for k, cls in enumerate(classes) for o in cls}
    n = len(classes)
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            landed = {where[pcat.tensor(x, y)] for x in classes[a] for y in classes[b]}
            ok = len(landed) == 1
            if report is not None:
                report.record("pi0.well_defined", ok, f"({a}, {b})", sorted(landed))
            if not ok:
                raise GammaWaldError(f"tensor not well defined on components {a}, {b}")
            table[a][b] = landed.pop()
    names = tuple("{" + ",".join(c.obj_names[o] for o in cls) + "}" for cls in classes)
    return FinCommMonoid(names, tuple(map(tuple, table)), where[pcat.unit])


def grothendieck_group(m: FinCommMonoid) -> AbGroupInvariants:
    """Free abelian group on the elements modulo [a] + [b] - [ab] and [unit]."""
    n = len(m.elements)
    rels = []
    for a in range(n):
        for b in range(a, n):
            row = [0] * n
            row[a] += 1
            row[b] += 1
            row[m.op(a, b)] -= 1
            rels.append(row)
    row = [0] * n
    row[m.unit] = 1
    rels.append(row)
    return cokernel(_dedupe(rels), n)


def grothendieck_pairs(m: FinCommMonoid) -> AbGroupInvariants:
    """Independent route: pairs (a, b) modulo a + d + k = c + b + k, then count orders.

    The group of a finite monoid is finite, so it is determined by how many
    elements are killed by each prime power.
    """
    n = len(m.elements)
    pairs = [(a, b) for a in range(n) for b in range(n)]
    index = {p: k for k, p in enumerate(pairs)}
    uf = _UnionFind(len(pairs))
    for (a, b), (c, d) in itertools.combinations(pairs, 2):
        lhs, rhs = m.op(a, d), m.op(c, b)
        if any(m.op(lhs, k) == m.op(rhs, k) for k in range(n)):
            uf.union(index[(a, b)], index[(c, d)])
    classes = uf.classes()
    cls_of = {p: uf.find(index[p]) for p in pairs}
    reps = [pairs[cls[0]] for cls in classes]
    zero = cls_of[(m.unit, m.unit)]

    def add(x, y):
        return cls_of[(m.op(x[0], y[0]), m.op(x[1], y[1]))]

    rep_of = {uf.find(cls[0]): pairs[cls[0]] for cls in classes}

    def times(k, x):
        acc = (m.unit, m.unit)
        for _ in range(k):
            acc = rep_of[add(acc, x)]
        return cls_of[acc]

    order = len(classes)
    return finite_group_invariants(order, lambda k, x: times(k, x) == zero, reps)


def finite_group_invariants(order: int, kills, elements) -> AbGroupInvariants:
    """Invariant factors of a finite abelian group from ``#{x : k x = 0}``.

    ``kills(k, x)`` tells whether ``k x = 0``.
    """
    primary: dict[int, list[int]] = {}
    for p in _primes(order):
        # at_least[k-1] = number of cyclic p-factors of order >= p^k
        at_least = []
        prev = 1
        k = 1
        while True:
            c = sum(1 for x in elements if kills(p**k, x))
            r = _log_exact(c // prev, p)
            if r == 0:
                break
            at_least.append(r)
            prev = c
            k += 1
        exps = []
        for k, r in enumerate(at_least, start=1):
            nxt = at_least[k] if k < len(at_least) else 0
            exps.extend([k] * (r - nxt))
        primary[p] = sorted(exps)
    width = max((len(v) for v in primary.values()), default=0)
    factors = [1] * width
    for p, exps in primary.items():
        padded = [0] * (width - len(exps)) + exps
        for k, e in enumerate(padded):
            factors[k] *= p**e
    return AbGroupInvariants(0, tuple(d for d in factors if d > 1))


def _log_exact(n: int, p: int) -> int:
    r = 0
    while n > 1:
        if n % p:
            raise ArithmeticError("element count is not a prime power ratio")
        n //= p
        r += 1
    return r


def _primes(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def k0_segal(pcat: FinPermCat) -> AbGroupInvariants:
    return grothendieck_group(pi0_monoid(pcat))


def _dedupe(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    seen = set()
    out = []
    for r in rows:
        key = tuple(r)
        if any(key) and key not in seen:
            seen.add(key)
            out.append(list(r))
    return out


def k0_relations(view, budget: int | None = None) -> tuple[list[list[int]], dict]:
    """Relation matrix of K0 of ``view`` and counters of what went in.

    Generators are the objects of the view.  Relations: [zero] = 0,
    [B] = [A] + [B/A] for every cofibration with an in-window cofiber, and
    [A] = [B] for every weak equivalence.
    """
    objs = list(view.objects)
    idx = {a: k for k, a in enumerate(objs)}
    n = len(objs)
    rows = []
    stats = {"generators": n, "cofibrations": 0, "weak_equivalences": 0, "skipped": 0}
    z = [0] * n
    z[idx[view.zero]] = 1
    rows.append(z)
    for a in objs:
        for b in objs:
            for f in view.cofibrations(a, b):
                try:
                    q, _, _ = view.pushout(f, view.to_zero(a))
                except OutOfWindow:
                    stats["skipped"] += 1
                    continue
                r = [0] * n
                r[idx[b]] += 1
                r[idx[a]] -= 1
                r[idx[q]] -= 1
                rows.append(r)
                stats["cofibrations"] += 1
            for w in view.weak_equivalences(a, b):
                r = [0] * n
                r[idx[a]] += 1
                r[idx[b]] -= 1
                rows.append(r)
                stats["weak_equivalences"] += 1
            if budget is not None and len(rows) > budget:
                raise BudgetExceeded(f"more than {budget} K0 relations")
    rows = _dedupe(rows)
    stats["distinct_relations"] = len(rows)
    return rows, stats


def k0_waldhausen(view, budget: int | None = None) -> AbGroupInvariants:
    rows, _ = k0_relations(view, budget)
    return cokernel(rows, len(view.objects))


# -- nerve homology -----------------------------------------------------------


def nerve_simplices(cat: FinCat, n: int, budget: int | None = None) -> list[tuple[int, ...]]:
    """Strings ``(f1, ..., fn)`` of composable non-identity morphisms; objects when n = 0."""
    if n == 0:
        return [(o,) for o in cat.objects]
    ids = set(cat.ident)
    arrows = [f for f in cat.morphisms if f not in ids]
    out_of: dict[int, list[int]] = {}
    for f in arrows:
        out_of.setdefault(cat.src[f], []).append(f)
    level = [(f,) for f in arrows]
    for _ in range(n - 1):
        level = [s + (g,) for s in level for g in out_of.get(cat.tgt[s[-1]], ())]
        if budget is not None and len(level) > budget:
            raise BudgetExceeded(f"more than {budget} nerve simplices")
    return level


def _faces(cat: FinCat, s: tuple[int, ...], n: int) -> list[tuple[int, tuple[int, ...] | None]]:
    """(sign, face) pairs; ``None`` marks a degenerate face."""
    if n == 1:
        (f,) = s
        return [(1, (cat.tgt[f],)), (-1, (cat.src[f],))]
    ids = set(cat.ident)
    out = [(1, s[1:])]
    for i in range(1, n):
        h = cat.compose(s[i], s[i - 1])
        face = None if h in ids else s[: i - 1] + (h,) + s[i + 1 :]
        out.append(((-1) ** i, face))
    out.append(((-1) ** n, s[:-1]))
    return out


def nerve_chain_complex(cat: FinCat, maxdim: int, budget: int | None = None) -> list[IntMatrix]:
    """Boundary matrices ``d_1 ... d_maxdim`` of the normalized nerve chains.

    ``d_n`` has one row per (n-1)-simplex and one column per n-simplex.
    """
    simp = [nerve_simplices(cat, n, budget) for n in range(maxdim + 1)]
    index = [{s: k for k, s in enumerate(level)} for level in simp]
    mats = []
    for n in range(1, maxdim + 1):
        M = [[0] * len(simp[n]) for _ in simp[n - 1]]
        for col, s in enumerate(simp[n]):
            for sign, face in _faces(cat, s, n):
                if face is not None:
                    M[index[n - 1][face]][col] += sign
        mats.append(M)
    for lo, hi in itertools.pairwise(mats):
        assert not any(any(row) for row in _matmul(lo, hi)), "boundary of a boundary is non-zero"
    return mats


def _matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    if not A or not B or not B[0]:
        return []
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def chain_ranks(cat: FinCat, maxdim: int, budget: int | None = None) -> list[int]:
    return [len(nerve_simplices(cat, n, budget)) for n in range(maxdim + 1)]


def homology(cat: FinCat, maxdim: int, budget: int | None = None) -> list[AbGroupInvariants]:
    """``H_0 ... H_{maxdim-1}`` of the nerve."""
    mats = nerve_chain_complex(cat, maxdim, budget)
    dims = chain_ranks(cat, maxdim, budget)
    snfs = [_snf_or_zero(M) for M in mats]
    out = []
    for n in range(maxdim):
        rank_out = snfs[n - 1].rank if n >= 1 else 0
        incoming = snfs[n]
        free = dims[n] - rank_out - incoming.rank
        out.append(AbGroupInvariants(free, tuple(d for d in incoming.diagonal if d > 1)))
    return out


def _snf_or_zero(M: IntMatrix) -> SNF:
    if not M or not M[0] or not any(any(r) for r in M):
        return SNF(())
    return smith_normal_form(M)
