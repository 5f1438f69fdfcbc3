"""Independent oracles for the derived values pinned in the test suite.

Nothing here imports ``gammawald``.  The fixtures are read as raw JSON and
every quantity is computed by a different route than the package takes:

* window sizes by the counting formula sum over phi of prod |Hom_C|;
* K0 of the Segal side as the minimal ideal of the finite monoid, which is
  a group isomorphic to the Grothendieck group;
* K0 of Gamma windows from existence-only relations fed to sympy's Smith
  normal form;
* H0 of the nerve of C_+ by breadth-first search.

Run ``python tools/oracles.py`` to regenerate ``tests/oracle_values.json``.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from pathlib import Path

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "src" / "gammawald" / "fixtures"
OUT = ROOT / "tests" / "oracle_values.json"
CORPUS = ("C2", "X1", "Z3")


class Raw:
    """Tables straight from a fixture file, keyed by names."""

    def __init__(self, name: str):
        d = json.loads((FIXTURES / f"{name}.json").read_text())
        self.objects = list(d["objects"])
        self.unit = d["unit"]
        self.src = {f"id_{o}": o for o in self.objects}
        self.tgt = dict(self.src)
        for m in d["morphisms"]:
            self.src[m["name"]] = m["src"]
            self.tgt[m["name"]] = m["tgt"]
        self.comp = {(g, f): h for g, f, h in d["compose"]}
        for m in self.src:
            self.comp[(f"id_{self.tgt[m]}", m)] = m
            self.comp[(m, f"id_{self.src[m]}")] = m
        self.tobj = {(a, b): c for a, b, c in d["tensor_obj"]}

    def hom(self, a: str, b: str) -> list[str]:
        return [m for m in self.src if self.src[m] == a and self.tgt[m] == b]

    def tensor(self, objs) -> str | None:
        acc = self.unit
        for o in objs:
            acc = self.tobj.get((acc, o))
            if acc is None:
                return None
        return acc

    def is_iso(self, f: str) -> bool:
        a, b = self.src[f], self.tgt[f]
        return any(
            self.comp.get((g, f)) == f"id_{a}" and self.comp.get((f, g)) == f"id_{b}" for g in self.hom(b, a)
        )


def tuples(raw: Raw, L: int):
    return [t for n in range(L + 1) for t in itertools.product(raw.objects, repeat=n)]


def block_homs(raw: Raw, a: str, B, block) -> int:
    t = raw.tensor([B[j] for j in block])
    return 0 if t is None else len(raw.hom(a, t))


def hom_count(raw: Raw, A, B) -> int:
    """Every phi: [a] -> 2^[b]; empty blocks carry no component."""
    per = []
    for a in A:
        total = 1
        for r in range(1, len(B) + 1):
            for block in itertools.combinations(range(len(B)), r):
                total += block_homs(raw, a, B, block)
        per.append(total)
    return math.prod(per)


def surjections(b: int, a: int):
    for s in itertools.product(range(a), repeat=b):
        if len(set(s)) == a:
            yield s


def we_count(raw: Raw, A, B) -> int:
    if not A:
        return int(not B)
    total = 0
    for s in surjections(len(B), len(A)):
        blocks = [[j for j in range(len(B)) if s[j] == i] for i in range(len(A))]
        total += math.prod(block_homs(raw, A[i], B, blocks[i]) for i in range(len(A)))
    return total


def iso_count(raw: Raw, a: str, b: str) -> int:
    return sum(1 for f in raw.hom(a, b) if raw.is_iso(f))


def cof_count(raw: Raw, A, B) -> int:
    return sum(
        math.prod(iso_count(raw, A[i], B[j]) for i, j in enumerate(inj))
        for inj in itertools.permutations(range(len(B)), len(A))
    )


def window_stats(raw: Raw, L: int) -> dict:
    objs = tuples(raw, L)
    return {
        "objects": len(objs),
        "morphisms": sum(hom_count(raw, A, B) for A in objs for B in objs),
        "weak_equivalences": sum(we_count(raw, A, B) for A in objs for B in objs),
        "cofibrations": sum(cof_count(raw, A, B) for A in objs for B in objs),
    }


def components(raw: Raw) -> dict[str, int]:
    label: dict[str, int] = {}
    for start in raw.objects:
        if start in label:
            continue
        label[start] = len(set(label.values()))
        queue = deque([start])
        while queue:
            o = queue.popleft()
            for m in raw.src:
                for a, b in ((raw.src[m], raw.tgt[m]), (raw.tgt[m], raw.src[m])):
                    if a == o and b not in label:
                        label[b] = label[start]
                        queue.append(b)
    return label


def invariants_from_group(elements, op, unit) -> dict:
    """Invariant factors of a finite abelian group from p-power torsion counts."""
    n = len(elements)

    def power(x, k):
        acc = unit
        for _ in range(k):
            acc = op(acc, x)
        return acc

    factors: list[int] = []
    p = 2
    rest = n
    per_prime = {}
    while rest > 1:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            # |{x : p^k x = 0}| = p^(sum_i min(k, e_i)) determines the partition e_i
            logs = []
            for k in range(e + 1):
                c = sum(1 for x in elements if power(x, p**k) == unit)
                logs.append(round(math.log(c, p)))
            parts = []
            for k in range(1, e + 1):
                at_least = logs[k] - logs[k - 1]
                parts.append(at_least)
            exps = []
            for k in range(e, 0, -1):
                more = parts[k - 1] - (parts[k] if k < e else 0)
                exps += [k] * more
            per_prime[p] = sorted(exps, reverse=True)
        p += 1
    width = max((len(v) for v in per_prime.values()), default=0)
    for i in range(width):
        d = 1
        for q, exps in per_prime.items():
            if i < len(exps):
                d *= q ** exps[i]
        factors.append(d)
    return {"rank": 0, "factors": sorted(factors)}


def k0_segal_minimal_ideal(raw: Raw) -> dict:
    """A finite commutative monoid's Grothendieck group is its minimal ideal eM."""
    label = components(raw)
    classes = sorted(set(label.values()))
    rep = {c: next(o for o in raw.objects if label[o] == c) for c in classes}

    def op(x, y):
        return label[raw.tobj[(rep[x], rep[y])]]

    idem = [x for x in classes if op(x, x) == x]
    e = min(idem, key=lambda x: len({op(x, y) for y in classes}))
    ideal = sorted({op(e, y) for y in classes})
    return invariants_from_group(ideal, op, e)


def snf_invariants(rows: list[list[int]], n: int) -> dict:
    if not rows:
        return {"rank": n, "factors": []}
    S = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]
    return {"rank": n - len(diag), "factors": sorted(d for d in diag if d > 1)}


def k0_window(raw: Raw, L: int) -> dict:
    """Relations depend only on which cofibrations and weak equivalences exist."""
    objs = tuples(raw, L)
    idx = {A: k for k, A in enumerate(objs)}
    n = len(objs)
    rows = []
    z = [0] * n
    z[idx[()]] = 1
    rows.append(z)
    for A in objs:
        for B in objs:
            for inj in itertools.permutations(range(len(B)), len(A)):
                if all(iso_count(raw, A[i], B[j]) for i, j in enumerate(inj)):
                    Q = tuple(B[j] for j in range(len(B)) if j not in inj)
                    r = [0] * n
                    r[idx[B]] += 1
                    r[idx[A]] -= 1
                    r[idx[Q]] -= 1
                    rows.append(r)
            if A != B and we_count(raw, A, B):
                r = [0] * n
                r[idx[A]] += 1
                r[idx[B]] -= 1
                rows.append(r)
    return snf_invariants(rows, n)


def main() -> None:
    out: dict = {"windows": {}, "k0_segal": {}, "k0_waldhausen": {}, "h0_plus_rank": {}, "pi0_size": {}}
    for name in CORPUS:
        raw = Raw(name)
        out["windows"][name] = {str(L): window_stats(raw, L) for L in range(4)}
        out["k0_segal"][name] = k0_segal_minimal_ideal(raw)
        out["k0_waldhausen"][name] = {str(L): k0_window(raw, L) for L in (2, 3)}
        out["pi0_size"][name] = len(set(components(raw).values()))
        out["h0_plus_rank"][name] = out["pi0_size"][name] + 1
    out["snf"] = {
        "[[2,0],[0,3]]": snf_invariants([[2, 0], [0, 3]], 2),
        "[[2,4,4],[-6,6,12],[10,-4,-16]]": snf_invariants([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], 3),
    }
    OUT.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")
    print(json.dumps(out, indent=1, sort_keys=True))


if __name__ == "__main__":
    main()
