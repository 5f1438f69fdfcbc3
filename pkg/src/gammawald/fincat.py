"""Finite categories and strict permutative structures given by explicit tables.

Objects and morphisms are ints indexing the name tables of their category.
Identities are always present and are named ``id_<object>``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence

from . import kernel
from .errors import (
    AmbiguousMediatingMorphism,
    CompositionError,
    NoMediatingMorphism,
    SpecError,
)
from .report import Report

ObjId = int
MorId = int


class FinCat:
    """A finite category with a (partial) composition table.

    ``comp`` maps ``(g, f)`` to ``g o f``.  Entries for composites involving an
    identity are filled in when absent, so an explicit (wrong) entry survives
    and is caught by :func:`validate_category`.
    """

    def __init__(
        self,
        obj_names: Sequence[str],
        mor_names: Sequence[str],
        src: Sequence[ObjId],
        tgt: Sequence[ObjId],
        ident: Sequence[MorId],
        comp: Mapping[tuple[MorId, MorId], MorId],
        name: str = "",
    ):
        self.name = name
        self.obj_names = tuple(obj_names)
        self.mor_names = tuple(mor_names)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.ident = tuple(ident)
        n_obj, n_mor = len(self.obj_names), len(self.mor_names)
        if len(self.src) != n_mor or len(self.tgt) != n_mor or len(self.ident) != n_obj:
            raise SpecError("table lengths disagree")
        for m in range(n_mor):
            if not (0 <= self.src[m] < n_obj and 0 <= self.tgt[m] < n_obj):
                raise SpecError(f"morphism {m} has out-of-range endpoints", "morphisms")
        for o, i in enumerate(self.ident):
            if not 0 <= i < n_mor:
                raise SpecError(f"identity of object {o} out of range", "identity")
        table = {}
        for (g, f), h in comp.items():
            if not all(0 <= x < n_mor for x in (g, f, h)):
                raise SpecError(f"composition entry {(g, f, h)} out of range", "compose")
            table[(g, f)] = h
        ids = set(self.ident)
        for f in range(n_mor):
            table.setdefault((self.ident[self.tgt[f]], f), f)
            table.setdefault((f, self.ident[self.src[f]]), f)
        self.comp = table
        self.is_identity = tuple(m in ids for m in range(n_mor))
        self._obj_index = {n: i for i, n in enumerate(self.obj_names)}
        self._mor_index = {n: i for i, n in enumerate(self.mor_names)}
        homs: dict[tuple[ObjId, ObjId], list[MorId]] = {}
        for m in range(n_mor):
            homs.setdefault((self.src[m], self.tgt[m]), []).append(m)
        self._homs = {k: tuple(v) for k, v in homs.items()}
        self._inverse: dict[MorId, MorId | None] = {}

    @classmethod
    def from_names(
        cls,
        objects: Sequence[str],
        morphisms: Iterable[tuple[str, str, str]],
        compose: Iterable[tuple[str, str, str]] = (),
        name: str = "",
    ) -> FinCat:
        """Build from names; ``compose`` holds triples ``(g, f, g o f)``."""
        objects = list(objects)
        if len(set(objects)) != len(objects):
            raise SpecError("duplicate object name", "objects")
        obj_ix = {o: i for i, o in enumerate(objects)}
        mor_names = [f"id_{o}" for o in objects]
        src = list(range(len(objects)))
        tgt = list(range(len(objects)))
        ident = list(range(len(objects)))
        for k, (mname, s, t) in enumerate(morphisms):
            if mname in mor_names:
                raise SpecError(f"duplicate morphism name {mname!r}", f"morphisms[{k}]")
            for end in (s, t):
                if end not in obj_ix:
                    raise SpecError(f"unknown object {end!r}", f"morphisms[{k}]")
            mor_names.append(mname)
            src.append(obj_ix[s])
            tgt.append(obj_ix[t])
        mor_ix = {m: i for i, m in enumerate(mor_names)}
        comp = {}
        for k, entry in enumerate(compose):
            for x in entry:
                if x not in mor_ix:
                    raise SpecError(f"unknown morphism {x!r}", f"compose[{k}]")
            g, f, h = (mor_ix[x] for x in entry)
            if (g, f) in comp:
                raise SpecError(f"duplicate entry for {entry[0]} o {entry[1]}", f"compose[{k}]")
            comp[(g, f)] = h
        return cls(objects, mor_names, src, tgt, ident, comp, name=name)

    @property
    def objects(self) -> range:
        return range(len(self.obj_names))

    @property
    def morphisms(self) -> range:
        return range(len(self.mor_names))

    def obj(self, name: str) -> ObjId:
        return self._obj_index[name]

    def mor(self, name: str) -> MorId:
        return self._mor_index[name]

    def hom(self, a: ObjId, b: ObjId) -> tuple[MorId, ...]:
        return self._homs.get((a, b), ())

    def compose(self, g: MorId, f: MorId) -> MorId:
        return compose(self, g, f)

    def describe_mor(self, m: MorId) -> str:
        return (
            f"{self.mor_names[m]}: {self.obj_names[self.src[m]]} -> {self.obj_names[self.tgt[m]]}"
        )

    def __repr__(self) -> str:
        return f"FinCat({self.name or '?'}: {len(self.obj_names)} objects, {len(self.mor_names)} morphisms)"


class FinFunctor:
    """Object and morphism maps between finite categories."""

    def __init__(self, domain: FinCat, codomain: FinCat, on_obj: Sequence[ObjId], on_mor: Sequence[MorId]):
        self.domain, self.codomain = domain, codomain
        self.on_obj = tuple(on_obj)
        self.on_mor = tuple(on_mor)

    def validate(self) -> Report:
        rep = Report("functor")
        D, C = self.domain, self.codomain
        for m in D.morphisms:
            fm = self.on_mor[m]
            ok = C.src[fm] == self.on_obj[D.src[m]] and C.tgt[fm] == self.on_obj[D.tgt[m]]
            rep.record("functor.typing", ok, D.mor_names[m])
        for o in D.objects:
            rep.record("functor.identity", self.on_mor[D.ident[o]] == C.ident[self.on_obj[o]], D.obj_names[o])
        for (g, f), h in D.comp.items():
            try:
                ok = C.comp.get((self.on_mor[g], self.on_mor[f])) == self.on_mor[h]
            except IndexError:
                ok = False
            rep.record("functor.composition", ok, f"{D.mor_names[g]} o {D.mor_names[f]}")
        return rep


def compose(cat: FinCat, g: MorId, f: MorId) -> MorId:
    """Table lookup of ``g o f``; raises :class:`CompositionError` if not composable."""
    if cat.tgt[f] != cat.src[g]:
        raise CompositionError(
            f"{cat.mor_names[g]} o {cat.mor_names[f]}: target of "
            f"{cat.mor_names[f]} is not the source of {cat.mor_names[g]}"
        )
    try:
        return cat.comp[(g, f)]
    except KeyError:
        raise CompositionError(f"missing entry {cat.mor_names[g]} o {cat.mor_names[f]}") from None


def validate_category(cat: FinCat) -> Report:
    """Check typing, totality, identity laws and associativity exhaustively."""
    rep = Report("validate_category")
    names = cat.mor_names
    for o in cat.objects:
        i = cat.ident[o]
        rep.record("identity.typing", cat.src[i] == o and cat.tgt[i] == o, cat.obj_names[o])
    for (g, f), h in sorted(cat.comp.items()):
        inst = f"{names[g]} o {names[f]} = {names[h]}"
        if not rep.record("composition.composable", cat.tgt[f] == cat.src[g], inst):
            continue
        rep.record("composition.typing", cat.src[h] == cat.src[f] and cat.tgt[h] == cat.tgt[g], inst)
    for f in cat.morphisms:
        for g in cat.morphisms:
            if cat.src[g] == cat.tgt[f]:
                rep.record("composition.total", (g, f) in cat.comp, f"{names[g]} o {names[f]}")
    for f in cat.morphisms:
        left = cat.comp.get((cat.ident[cat.tgt[f]], f))
        right = cat.comp.get((f, cat.ident[cat.src[f]]))
        rep.record("identity.left", left == f, names[f], None if left is None else names[left])
        rep.record("identity.right", right == f, names[f], None if right is None else names[right])
    for f in cat.morphisms:
        for g in cat.morphisms:
            if cat.src[g] != cat.tgt[f] or (g, f) not in cat.comp:
                continue
            gf = cat.comp[(g, f)]
            for h in cat.morphisms:
                if cat.src[h] != cat.tgt[g] or (h, g) not in cat.comp:
                    continue
                hg = cat.comp[(h, g)]
                a = cat.comp.get((h, gf))
                b = cat.comp.get((hg, f))
                inst = f"({names[h]}, {names[g]}, {names[f]})"
                rep.record(
                    "associativity",
                    a is not None and a == b,
                    inst,
                    [None if a is None else names[a], None if b is None else names[b]],
                )
    return rep


def is_iso(cat: FinCat, f: MorId) -> bool:
    return inverse(cat, f) is not None


def inverse(cat: FinCat, f: MorId) -> MorId | None:
    """Two-sided inverse of ``f`` found by search of the reverse hom-set."""
    if f in cat._inverse:
        return cat._inverse[f]
    a, b = cat.src[f], cat.tgt[f]
    found = None
    for g in cat.hom(b, a):
        if cat.comp.get((g, f)) == cat.ident[a] and cat.comp.get((f, g)) == cat.ident[b]:
            found = g
            break
    cat._inverse[f] = found
    return found


def mediating_morphism(
    cat: FinCat,
    source: ObjId,
    target: ObjId,
    constraints: Sequence[tuple[MorId, MorId]],
) -> MorId:
    """The unique ``u: source -> target`` with ``u o leg == value`` for each constraint.

    Exhaustive over the hom-set.  Raises :class:`NoMediatingMorphism` or
    :class:`AmbiguousMediatingMorphism`.
    """
    for leg, value in constraints:
        if cat.tgt[leg] != source or cat.src[value] != cat.src[leg] or cat.tgt[value] != target:
            raise CompositionError(
                f"cocone constraint ({cat.mor_names[leg]}, {cat.mor_names[value]}) is ill-typed"
            )
    hits = [
        u
        for u in cat.hom(source, target)
        if all(cat.comp.get((u, leg)) == value for leg, value in constraints)
    ]
    if not hits:
        raise NoMediatingMorphism(
            f"no morphism {cat.obj_names[source]} -> {cat.obj_names[target]} fits the cocone"
        )
    if len(hits) > 1:
        raise AmbiguousMediatingMorphism(
            f"{len(hits)} morphisms {cat.obj_names[source]} -> {cat.obj_names[target]} fit the cocone",
            hits,
        )
    return hits[0]


class FinPermCat:
    """A finite strict permutative category.

    Tables map pairs to ids.  ``partial=True`` allows undefined tensor entries
    (used for finite windows of categories that are not closed under tensor);
    checks then skip instances that touch an undefined entry.
    """

    def __init__(
        self,
        base: FinCat,
        unit: ObjId,
        tensor_obj: Mapping[tuple[ObjId, ObjId], ObjId],
        tensor_mor: Mapping[tuple[MorId, MorId], MorId],
        symmetry: Mapping[tuple[ObjId, ObjId], MorId],
        partial: bool = False,
    ):
        self.base = base
        self.unit = unit
        self.partial = partial
        self.tensor_obj = dict(tensor_obj)
        tm = dict(tensor_mor)
        for (a, b), ab in self.tensor_obj.items():
            tm.setdefault((base.ident[a], base.ident[b]), base.ident[ab])
        self.tensor_mor = tm
        self.symmetry = dict(symmetry)
        self._tables: dict[str, object] = {}

    @property
    def name(self) -> str:
        return self.base.name

    def tensor(self, a: ObjId, b: ObjId) -> ObjId | None:
        return self.tensor_obj.get((a, b))

    def tensor_m(self, f: MorId, g: MorId) -> MorId | None:
        return self.tensor_mor.get((f, g))

    def beta(self, a: ObjId, b: ObjId) -> MorId | None:
        return self.symmetry.get((a, b))

    def tables(self, backend=None):
        """Integer tables for the selected kernel backend (cached)."""
        k = kernel.get_backend(backend)
        t = self._tables.get(k.BACKEND)
        if t is None:
            c = self.base
            n_obj, n_mor = len(c.obj_names), len(c.mor_names)
            comp = [[-1] * n_mor for _ in range(n_mor)]
            for (g, f), h in c.comp.items():
                if c.tgt[f] == c.src[g]:
                    comp[g][f] = h
            tobj = [[-1] * n_obj for _ in range(n_obj)]
            for (a, b), ab in self.tensor_obj.items():
                tobj[a][b] = ab
            tmor = [[-1] * n_mor for _ in range(n_mor)]
            for (f, g), fg in self.tensor_mor.items():
                tmor[f][g] = fg
            sym = [[-1] * n_obj for _ in range(n_obj)]
            for (a, b), s in self.symmetry.items():
                sym[a][b] = s
            t = k.Tables(comp, tobj, tmor, sym, c.ident, self.unit, c.src, c.tgt)
            self._tables[k.BACKEND] = t
        return t

    def __repr__(self) -> str:
        return f"FinPermCat({self.base!r}, unit={self.base.obj_names[self.unit]})"


def validate_permutative(pcat: FinPermCat) -> Report:
    """Check every strict permutative axiom exhaustively, with witnesses."""
    rep = Report("validate_permutative")
    c = pcat.base
    on, mn = c.obj_names, c.mor_names
    T, Tm, B = pcat.tensor_obj, pcat.tensor_mor, pcat.symmetry
    e = pcat.unit
    objs = list(c.objects)
    mors = list(c.morphisms)

    def nm(m):
        return None if m is None else mn[m]

    def comp(g, f):
        if g is None or f is None or c.tgt[f] != c.src[g]:
            return None
        return c.comp.get((g, f))

    # totality and typing
    for a in objs:
        for b in objs:
            ab = T.get((a, b))
            if ab is None:
                if pcat.partial:
                    rep.skip("tensor_obj.total")
                else:
                    rep.record("tensor_obj.total", False, f"{on[a]} (x) {on[b]}")
            else:
                rep.record("tensor_obj.total", True)
    for f in mors:
        for g in mors:
            fg = Tm.get((f, g))
            s, t = T.get((c.src[f], c.src[g])), T.get((c.tgt[f], c.tgt[g]))
            if fg is None:
                if pcat.partial or s is None or t is None:
                    rep.skip("tensor_mor.total")
                else:
                    rep.record("tensor_mor.total", False, f"{mn[f]} (x) {mn[g]}")
                continue
            rep.record(
                "tensor_mor.typing",
                c.src[fg] == s and c.tgt[fg] == t,
                f"{mn[f]} (x) {mn[g]} = {mn[fg]}",
            )
    for a in objs:
        for b in objs:
            s = B.get((a, b))
            ab, ba = T.get((a, b)), T.get((b, a))
            if s is None:
                if pcat.partial or ab is None:
                    rep.skip("symmetry.total")
                else:
                    rep.record("symmetry.total", False, f"beta({on[a]}, {on[b]})")
                continue
            rep.record(
                "symmetry.typing",
                c.src[s] == ab and c.tgt[s] == ba,
                f"beta({on[a]}, {on[b]}) = {mn[s]}",
            )

    # strict unit
    for a in objs:
        rep.record("unit.objects", T.get((e, a)) == a and T.get((a, e)) == a, on[a])
        for x, y in ((B.get((a, e)), "beta(a,e)"), (B.get((e, a)), "beta(e,a)")):
            rep.record("unit.symmetry", x == c.ident[a], f"{y} at {on[a]}", nm(x))
    ie = c.ident[e]
    for f in mors:
        rep.record("unit.morphisms", Tm.get((ie, f)) == f and Tm.get((f, ie)) == f, mn[f])

    # strict associativity
    for a, b, d in itertools.product(objs, repeat=3):
        ab, bd = T.get((a, b)), T.get((b, d))
        if ab is None or bd is None:
            rep.skip("associativity.objects")
            continue
        x, y = T.get((ab, d)), T.get((a, bd))
        if x is None or y is None:
            rep.skip("associativity.objects")
            continue
        rep.record("associativity.objects", x == y, f"({on[a]}, {on[b]}, {on[d]})", [on[x], on[y]])
    for f, g, h in itertools.product(mors, repeat=3):
        fg, gh = Tm.get((f, g)), Tm.get((g, h))
        x = None if fg is None else Tm.get((fg, h))
        y = None if gh is None else Tm.get((f, gh))
        if x is None or y is None:
            rep.skip("associativity.morphisms")
            continue
        rep.record("associativity.morphisms", x == y, f"({mn[f]}, {mn[g]}, {mn[h]})", [mn[x], mn[y]])

    # functoriality of the tensor
    for a in objs:
        for b in objs:
            ab = T.get((a, b))
            if ab is None:
                continue
            x = Tm.get((c.ident[a], c.ident[b]))
            rep.record("functor.identity", x == c.ident[ab], f"id_{on[a]} (x) id_{on[b]}", nm(x))
    pairs = [(g, f) for (g, f) in c.comp if c.tgt[f] == c.src[g]]
    pairs.sort()
    for (f2, f1) in pairs:
        for (g2, g1) in pairs:
            lhs = Tm.get((c.comp[(f2, f1)], c.comp[(g2, g1)]))
            rhs = comp(Tm.get((f2, g2)), Tm.get((f1, g1)))
            if lhs is None or rhs is None:
                if pcat.partial:
                    rep.skip("functor.interchange")
                    continue
            rep.record(
                "functor.interchange",
                lhs is not None and lhs == rhs,
                f"({mn[f2]} o {mn[f1]}) (x) ({mn[g2]} o {mn[g1]})",
                [nm(lhs), nm(rhs)],
            )

    # symmetry: involution, naturality, hexagon
    for a in objs:
        for b in objs:
            s, s2 = B.get((a, b)), B.get((b, a))
            ab = T.get((a, b))
            if s is None or s2 is None or ab is None:
                rep.skip("symmetry.involution")
                continue
            x = comp(s2, s)
            rep.record("symmetry.involution", x == c.ident[ab], f"beta({on[b]},{on[a]}) o beta({on[a]},{on[b]})", nm(x))
    for f in mors:
        for g in mors:
            a, a2, b, b2 = c.src[f], c.tgt[f], c.src[g], c.tgt[g]
            lhs = comp(B.get((a2, b2)), Tm.get((f, g)))
            rhs = comp(Tm.get((g, f)), B.get((a, b)))
            if lhs is None and rhs is None and pcat.partial:
                rep.skip("symmetry.naturality")
                continue
            rep.record("symmetry.naturality", lhs is not None and lhs == rhs, f"({mn[f]}, {mn[g]})", [nm(lhs), nm(rhs)])
    for a, b, d in itertools.product(objs, repeat=3):
        bd = T.get((b, d))
        lhs = None if bd is None else B.get((a, bd))
        bab = B.get((a, b))
        l1 = None if bab is None else Tm.get((bab, c.ident[d]))
        bad = B.get((a, d))
        l2 = None if bad is None else Tm.get((c.ident[b], bad))
        rhs = comp(l2, l1)
        if (lhs is None or rhs is None) and pcat.partial:
            rep.skip("symmetry.hexagon")
            continue
        rep.record("symmetry.hexagon", lhs is not None and lhs == rhs, f"({on[a]}, {on[b]}, {on[d]})", [nm(lhs), nm(rhs)])
    return rep


def tensor_power(pcat: FinPermCat, objs: Sequence[ObjId]) -> ObjId:
    """T^n(c_1, ..., c_n) as a left fold; the empty product is the unit."""
    return kernel.get_backend().tensor_objs(pcat.tables(), list(objs))


def tensor_power_right(pcat: FinPermCat, objs: Sequence[ObjId]) -> ObjId:
    acc = pcat.unit
    for o in reversed(objs):
        acc = pcat.tensor_obj[(o, acc)]
    return acc


def tensor_mor_power(pcat: FinPermCat, mors: Sequence[MorId]) -> MorId:
    """T^n on morphisms; the empty product is ``id_e``."""
    return kernel.get_backend().tensor_mors(pcat.tables(), list(mors))


def _check_permutation(sigma: Sequence[int]) -> None:
    if sorted(sigma) != list(range(len(sigma))):
        raise ValueError(f"{tuple(sigma)} is not a permutation of range({len(sigma)})")


def perm_iso(pcat: FinPermCat, objs: Sequence[ObjId], sigma: Sequence[int]) -> MorId:
    """Canonical isomorphism T(c_0..c_{n-1}) -> T(c_{sigma^-1(0)}, ..., c_{sigma^-1(n-1)}).

    ``sigma[p]`` is the position entry ``p`` moves to (0-based).  Built from
    adjacent symmetries id (x) beta (x) id, chosen by bubble sort.
    """
    if len(sigma) != len(objs):
        raise ValueError("permutation and object sequence differ in length")
    _check_permutation(sigma)
    return kernel.get_backend().perm_iso(pcat.tables(), list(objs), list(sigma))


def perm_iso_from_word(pcat: FinPermCat, objs: Sequence[ObjId], word: Sequence[int]) -> MorId:
    """Compose the adjacent swaps at positions ``word`` (applied left to right)."""
    n = len(objs)
    for k in word:
        if not 0 <= k < n - 1:
            raise ValueError(f"transposition position {k} out of range for length {n}")
    return kernel.get_backend().perm_word(pcat.tables(), list(objs), list(word))


def permute(seq: Sequence, sigma: Sequence[int]) -> tuple:
    """Reorder ``seq`` so entry ``p`` lands at position ``sigma[p]``."""
    out = [None] * len(seq)
    for p, q in enumerate(sigma):
        out[q] = seq[p]
    return tuple(out)
