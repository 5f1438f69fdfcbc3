"""The category Gamma(C) of a permutative category C.

Objects are tuples of objects of C.  A morphism ``A -> B`` assigns to each
position ``i`` of ``A`` a subset ``phi[i]`` of the positions of ``B`` and, when
that subset is non-empty, a morphism ``A_i -> T(B_phi[i])`` of C.

Index sets are 0-based.  ``phi`` is stored as bitmasks (bit ``j`` set when
``j`` is in the subset) and ``comps[i]`` is ``-1`` exactly when ``phi[i]`` is
empty.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from . import kernel
from .errors import BudgetExceeded, OutOfWindow, PreconditionError, SpecError
from .fincat import FinPermCat, inverse, is_iso

GammaObj = tuple[int, ...]


def to_mask(indices: Sequence[int]) -> int:
    m = 0
    for j in indices:
        m |= 1 << j
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    return tuple(j for j in range(mask.bit_length()) if mask >> j & 1)


@dataclass(frozen=True, slots=True)
class GammaMor:
    src: GammaObj
    tgt: GammaObj
    phi: tuple[int, ...]
    comps: tuple[int, ...]

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(from_mask(m) for m in self.phi)

    def describe(self, pcat: FinPermCat) -> str:
        on, mn = pcat.base.obj_names, pcat.base.mor_names
        parts = []
        for i, (m, c) in enumerate(zip(self.phi, self.comps)):
            blk = "{" + ",".join(str(j + 1) for j in from_mask(m)) + "}"
            parts.append(f"{i + 1}->{blk}" + (f":{mn[c]}" if c >= 0 else ""))
        return f"({','.join(on[o] for o in self.src)}) -> ({','.join(on[o] for o in self.tgt)}) [{' '.join(parts)}]"


def show_obj(pcat: FinPermCat, A: GammaObj) -> str:
    return "(" + ",".join(pcat.base.obj_names[o] for o in A) + ")"


def make_mor(
    pcat: FinPermCat,
    src: Sequence[int],
    tgt: Sequence[int],
    blocks: Sequence[Sequence[int]],
    comps: Sequence[int | None],
) -> GammaMor:
    """Build a morphism from 0-based blocks; ``None`` marks an absent component."""
    m = GammaMor(
        tuple(src),
        tuple(tgt),
        tuple(to_mask(b) for b in blocks),
        tuple(-1 if c is None else c for c in comps),
    )
    check_mor(pcat, m)
    return m


def check_mor(pcat: FinPermCat, m: GammaMor) -> None:
    """Raise :class:`SpecError` unless ``m`` is a well-typed morphism of Gamma(C)."""
    c = pcat.base
    if len(m.phi) != len(m.src) or len(m.comps) != len(m.src):
        raise SpecError("phi and components must have one entry per source position")
    full = (1 << len(m.tgt)) - 1
    for i, (mask, f) in enumerate(zip(m.phi, m.comps)):
        if mask & ~full:
            raise SpecError(f"phi({i}) leaves the target index set")
        if mask == 0:
            if f != -1:
                raise SpecError(f"component {i} given for an empty block")
            continue
        if not 0 <= f < len(c.mor_names):
            raise SpecError(f"component {i} missing")
        want = kernel.get_backend().tensor_objs(pcat.tables(), [m.tgt[j] for j in from_mask(mask)])
        if c.src[f] != m.src[i] or c.tgt[f] != want:
            raise SpecError(f"component {i} ({c.mor_names[f]}) has the wrong type")


def gamma_identity(pcat: FinPermCat, A: GammaObj) -> GammaMor:
    ident = pcat.base.ident
    return GammaMor(tuple(A), tuple(A), tuple(1 << i for i in range(len(A))), tuple(ident[a] for a in A))


def gamma_compose(pcat: FinPermCat, second: GammaMor, first: GammaMor, backend=None) -> GammaMor:
    """``second o first``.

    Component i is sigma o T(g_j1, ..., g_jp) o f_i, where sigma sorts the
    concatenated psi-blocks into target order.  Raises
    :class:`~gammawald.errors.OverlappingComposite` when two psi-blocks inside
    one phi(i) meet, and :class:`~gammawald.errors.UntypedComposite` when an
    empty psi-block cannot be dropped.
    """
    if first.tgt != second.src:
        raise PreconditionError("target of first morphism is not the source of second")
    k = kernel.get_backend(backend)
    phi, comps = k.gamma_compose(
        pcat.tables(backend), first.tgt, second.tgt, first.phi, first.comps, second.phi, second.comps
    )
    return GammaMor(first.src, second.tgt, phi, comps)


def is_weak_equivalence(m: GammaMor) -> bool:
    """The blocks phi(i) are non-empty, pairwise disjoint and cover the target."""
    seen = 0
    for mask in m.phi:
        if mask == 0 or seen & mask:
            return False
        seen |= mask
    return seen == (1 << len(m.tgt)) - 1


def is_cofibration(pcat: FinPermCat, m: GammaMor) -> bool:
    """Injective singleton blocks with isomorphism components."""
    seen = 0
    for mask, f in zip(m.phi, m.comps):
        if mask == 0 or mask & (mask - 1) or seen & mask:
            return False
        seen |= mask
        if not is_iso(pcat.base, f):
            return False
    return True


def zero_map_from(pcat: FinPermCat, B: GammaObj) -> GammaMor:
    return GammaMor((), tuple(B), (), ())


def zero_map_to(pcat: FinPermCat, A: GammaObj) -> GammaMor:
    return GammaMor(tuple(A), (), (0,) * len(A), (-1,) * len(A))


def inclusion(pcat: FinPermCat, A: GammaObj, D: GammaObj, offset: int) -> GammaMor:
    """Factor inclusion of ``A`` into ``D`` at positions ``offset, offset+1, ...``."""
    ident = pcat.base.ident
    return GammaMor(tuple(A), tuple(D), tuple(1 << (offset + i) for i in range(len(A))), tuple(ident[a] for a in A))


def wedge(pcat: FinPermCat, A: GammaObj, B: GammaObj) -> tuple[GammaObj, GammaMor, GammaMor]:
    """Concatenation with its two factor inclusions."""
    D = tuple(A) + tuple(B)
    return D, inclusion(pcat, A, D, 0), inclusion(pcat, B, D, len(A))


def wedge_mor(f: GammaMor, g: GammaMor) -> GammaMor:
    """``f v g``: concatenate sources and targets, shifting ``g``'s blocks."""
    shift = len(f.tgt)
    return GammaMor(f.src + g.src, f.tgt + g.tgt, f.phi + tuple(m << shift for m in g.phi), f.comps + g.comps)


@dataclass(frozen=True)
class Pushout:
    obj: GammaObj
    into_c: GammaMor
    into_b: GammaMor


def _require_cofibration(pcat: FinPermCat, cof: GammaMor) -> None:
    if not is_cofibration(pcat, cof):
        raise PreconditionError("left leg is not a cofibration")


def pushout_along_cofibration(pcat: FinPermCat, cof: GammaMor, m: GammaMor) -> Pushout:
    """Pushout of ``C <-m- A >-cof-> B``.

    The pushout object lists ``C`` first, then the entries of ``B`` outside
    the image of ``cof`` in increasing order.
    """
    if cof.src != m.src:
        raise PreconditionError("span legs have different sources")
    _require_cofibration(pcat, cof)
    c = pcat.base
    B, C = cof.tgt, m.tgt
    image = 0
    for mask in cof.phi:
        image |= mask
    rest = [j for j in range(len(B)) if not image >> j & 1]
    D = tuple(C) + tuple(B[j] for j in rest)
    into_c = inclusion(pcat, C, D, 0)
    beta = [0] * len(B)
    k = [-1] * len(B)
    for r, j in enumerate(rest):
        beta[j] = 1 << (len(C) + r)
        k[j] = c.ident[B[j]]
    for i, mask in enumerate(cof.phi):
        j = mask.bit_length() - 1
        beta[j] = m.phi[i]
        if m.phi[i]:
            k[j] = c.compose(m.comps[i], inverse(c, cof.comps[i]))
    return Pushout(D, into_c, GammaMor(tuple(B), D, tuple(beta), tuple(k)))


def pushout_mediating(
    pcat: FinPermCat,
    cof: GammaMor,
    m: GammaMor,
    from_c: GammaMor,
    from_b: GammaMor,
    po: Pushout | None = None,
) -> GammaMor:
    """The unique map out of the pushout of (cof, m) restricting to the cocone.

    The cocone ``from_c: C -> E``, ``from_b: B -> E`` must satisfy
    ``from_c o m == from_b o cof``.
    """
    if from_c.src != m.tgt or from_b.src != cof.tgt or from_c.tgt != from_b.tgt:
        raise PreconditionError("cocone legs are not typed over the span")
    if gamma_compose(pcat, from_c, m) != gamma_compose(pcat, from_b, cof):
        raise PreconditionError("cocone does not commute with the span")
    if po is None:
        po = pushout_along_cofibration(pcat, cof, m)
    image = 0
    for mask in cof.phi:
        image |= mask
    rest = [j for j in range(len(cof.tgt)) if not image >> j & 1]
    omega = list(from_c.phi) + [from_b.phi[j] for j in rest]
    q = list(from_c.comps) + [from_b.comps[j] for j in rest]
    u = GammaMor(po.obj, from_c.tgt, tuple(omega), tuple(q))
    if gamma_compose(pcat, u, po.into_c) != from_c or gamma_compose(pcat, u, po.into_b) != from_b:
        raise PreconditionError("mediating map does not restrict to the cocone")
    return u


def copair(pcat: FinPermCat, A: GammaObj, B: GammaObj, f: GammaMor, g: GammaMor) -> GammaMor:
    """The map ``A v B -> E`` restricting to ``f`` and ``g`` (pushout over the zero object)."""
    return pushout_mediating(pcat, zero_map_from(pcat, B), zero_map_from(pcat, A), f, g)


def cofiber(pcat: FinPermCat, cof: GammaMor) -> tuple[GammaObj, GammaMor]:
    """``B/A`` and the quotient map ``B -> B/A``."""
    po = pushout_along_cofibration(pcat, cof, zero_map_to(pcat, cof.src))
    return po.obj, po.into_b


def splitting_equivalence(pcat: FinPermCat, cof: GammaMor) -> GammaMor:
    """Weak equivalence ``A v B/A -> B`` that restricts to ``cof`` on ``A``.

    Each entry of ``A`` goes to its image under ``cof`` through f_i; each
    entry of the cofiber goes to its own position by the identity.
    """
    _require_cofibration(pcat, cof)
    ident = pcat.base.ident
    B = cof.tgt
    image = 0
    for mask in cof.phi:
        image |= mask
    rest = [j for j in range(len(B)) if not image >> j & 1]
    src = tuple(cof.src) + tuple(B[j] for j in rest)
    phi = tuple(cof.phi) + tuple(1 << j for j in rest)
    comps = tuple(cof.comps) + tuple(ident[B[j]] for j in rest)
    return GammaMor(src, tuple(B), phi, comps)


@dataclass(frozen=True)
class GluingDiagram:
    """``C <-top_m- A >-top_cof-> B`` over ``C' <- A' >-> B'`` with verticals."""

    top_cof: GammaMor
    top_m: GammaMor
    bot_cof: GammaMor
    bot_m: GammaMor
    v_a: GammaMor
    v_b: GammaMor
    v_c: GammaMor


def gluing_map(pcat: FinPermCat, d: GluingDiagram) -> GammaMor:
    """Induced map between the two pushouts; checks the diagram's preconditions."""
    for name, cof in (("top", d.top_cof), ("bottom", d.bot_cof)):
        if not is_cofibration(pcat, cof):
            raise PreconditionError(f"{name} left leg is not a cofibration")
    for name, v in (("A", d.v_a), ("B", d.v_b), ("C", d.v_c)):
        if not is_weak_equivalence(v):
            raise PreconditionError(f"vertical at {name} is not a weak equivalence")
    if gamma_compose(pcat, d.v_b, d.top_cof) != gamma_compose(pcat, d.bot_cof, d.v_a):
        raise PreconditionError("cofibration square does not commute")
    if gamma_compose(pcat, d.v_c, d.top_m) != gamma_compose(pcat, d.bot_m, d.v_a):
        raise PreconditionError("second square does not commute")
    bottom = pushout_along_cofibration(pcat, d.bot_cof, d.bot_m)
    from_c = gamma_compose(pcat, bottom.into_c, d.v_c)
    from_b = gamma_compose(pcat, bottom.into_b, d.v_b)
    return pushout_mediating(pcat, d.top_cof, d.top_m, from_c, from_b)


def check_gluing_instance(pcat: FinPermCat, d: GluingDiagram) -> bool:
    return is_weak_equivalence(gluing_map(pcat, d))


# -- truncated enumeration -------------------------------------------------


class TruncatedGammaView:
    """All objects of length <= L and all morphisms between them.

    Hom-sets are generated lazily and cached; :attr:`morphism_count` is fixed
    at construction so the budget is enforced before anything is enumerated.
    """

    def __init__(self, pcat: FinPermCat, max_len: int, budget: int | None = None):
        if max_len < 0:
            raise ValueError("max_len must be >= 0")
        self.pcat = pcat
        self.max_len = max_len
        c = pcat.base
        self.objects: tuple[GammaObj, ...] = tuple(
            tup for n in range(max_len + 1) for tup in itertools.product(c.objects, repeat=n)
        )
        self._index = {A: k for k, A in enumerate(self.objects)}
        self._options: dict[tuple[int, GammaObj], tuple[tuple[int, int], ...]] = {}
        self._homs: dict[tuple[GammaObj, GammaObj], tuple[GammaMor, ...]] = {}
        self._we: dict[tuple[GammaObj, GammaObj], tuple[GammaMor, ...]] = {}
        self._cof: dict[tuple[GammaObj, GammaObj], tuple[GammaMor, ...]] = {}
        total = 0
        for A in self.objects:
            for B in self.objects:
                total += self.hom_size(A, B)
                if budget is not None and total > budget:
                    raise BudgetExceeded(
                        f"Gamma window with max length {max_len} has more than {budget} morphisms"
                    )
        self.morphism_count = total

    def __contains__(self, A) -> bool:
        return tuple(A) in self._index

    def index(self, A: GammaObj) -> int:
        return self._index[A]

    def _component_options(self, a: int, B: GammaObj) -> tuple[tuple[int, int], ...]:
        """(mask, component) choices for one source entry ``a``."""
        key = (a, B)
        opts = self._options.get(key)
        if opts is None:
            t = self.pcat.tables()
            k = kernel.get_backend()
            out = [(0, -1)]
            for mask in range(1, 1 << len(B)):
                try:
                    target = k.tensor_objs(t, [B[j] for j in from_mask(mask)])
                except OutOfWindow:
                    # partial tensor: no component can land in an undefined product
                    continue
                out.extend((mask, f) for f in self.pcat.base.hom(a, target))
            opts = tuple(out)
            self._options[key] = opts
        return opts

    def hom_size(self, A: GammaObj, B: GammaObj) -> int:
        return math.prod(len(self._component_options(a, B)) for a in A)

    def hom(self, A: GammaObj, B: GammaObj) -> tuple[GammaMor, ...]:
        key = (A, B)
        out = self._homs.get(key)
        if out is None:
            A, B = tuple(A), tuple(B)
            out = tuple(
                GammaMor(A, B, tuple(o[0] for o in choice), tuple(o[1] for o in choice))
                for choice in itertools.product(*(self._component_options(a, B) for a in A))
            )
            self._homs[key] = out
        return out

    def morphisms(self) -> Iterator[GammaMor]:
        for A in self.objects:
            for B in self.objects:
                yield from self.hom(A, B)

    def random_morphism(self, A: GammaObj, B: GammaObj, rng: random.Random) -> GammaMor:
        """Uniform sample from ``hom(A, B)``."""
        choice = [rng.choice(self._component_options(a, B)) for a in A]
        return GammaMor(tuple(A), tuple(B), tuple(o[0] for o in choice), tuple(o[1] for o in choice))

    def weak_equivalences(self, A: GammaObj, B: GammaObj) -> tuple[GammaMor, ...]:
        """Weak equivalences ``A -> B``, built from surjections of positions."""
        key = (A, B)
        out = self._we.get(key)
        if out is None:
            c = self.pcat.base
            t = self.pcat.tables()
            k = kernel.get_backend()
            a, b = len(A), len(B)
            found = []
            if a == 0:
                if b == 0:
                    found.append(GammaMor((), (), (), ()))
            else:
                for s in itertools.product(range(a), repeat=b):
                    if len(set(s)) != a:
                        continue
                    masks = [0] * a
                    for j, i in enumerate(s):
                        masks[i] |= 1 << j
                    try:
                        homs = [c.hom(A[i], k.tensor_objs(t, [B[j] for j in from_mask(masks[i])])) for i in range(a)]
                    except OutOfWindow:
                        continue
                    for comps in itertools.product(*homs):
                        found.append(GammaMor(tuple(A), tuple(B), tuple(masks), tuple(comps)))
            out = tuple(sorted(found, key=_mor_key))
            self._we[key] = out
        return out

    def cofibrations(self, A: GammaObj, B: GammaObj) -> tuple[GammaMor, ...]:
        """Cofibrations ``A >-> B``, built from injections of positions."""
        key = (A, B)
        out = self._cof.get(key)
        if out is None:
            c = self.pcat.base
            found = []
            for inj in itertools.permutations(range(len(B)), len(A)):
                isos = [[f for f in c.hom(A[i], B[j]) if is_iso(c, f)] for i, j in enumerate(inj)]
                for comps in itertools.product(*isos):
                    found.append(GammaMor(tuple(A), tuple(B), tuple(1 << j for j in inj), tuple(comps)))
            out = tuple(sorted(found, key=_mor_key))
            self._cof[key] = out
        return out

    def all_weak_equivalences(self) -> Iterator[GammaMor]:
        for A in self.objects:
            for B in self.objects:
                yield from self.weak_equivalences(A, B)

    def all_cofibrations(self) -> Iterator[GammaMor]:
        for A in self.objects:
            for B in self.objects:
                yield from self.cofibrations(A, B)


def _mor_key(m: GammaMor):
    return (m.phi, m.comps)


def enumerate_truncated(pcat: FinPermCat, max_len: int, budget: int | None = None) -> TruncatedGammaView:
    return TruncatedGammaView(pcat, max_len, budget)
