"""Pure-Python kernel: table-driven tensor folds, permutation isomorphisms
and the component formula of composition in Gamma(C).

Mirrors ``_ckernel.pyx`` exactly; the two are checked against each other in
the test suite.  All ids are ints and ``-1`` marks an undefined entry.
"""

from .errors import CompositionError, OutOfWindow, OverlappingComposite, UntypedComposite

BACKEND = "python"


class Tables:
    """Integer tables of a (possibly partial) permutative category."""

    def __init__(self, comp, tobj, tmor, sym, ident, unit, src, tgt):
        self.comp = [list(r) for r in comp]
        self.tobj = [list(r) for r in tobj]
        self.tmor = [list(r) for r in tmor]
        self.sym = [list(r) for r in sym]
        self.ident = list(ident)
        self.unit = unit
        self.src = list(src)
        self.tgt = list(tgt)
        self._perm_cache = {}


def bits(mask):
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def compose(t, g, f):
    h = t.comp[g][f]
    if h < 0:
        raise CompositionError(f"no composite for ({g}, {f})")
    return h


def tensor_objs(t, objs):
    acc = t.unit
    for o in objs:
        acc = t.tobj[acc][o]
        if acc < 0:
            raise OutOfWindow(f"tensor of objects {tuple(objs)} undefined")
    return acc


def tensor_mors(t, mors):
    acc = t.ident[t.unit]
    for m in mors:
        acc = t.tmor[acc][m]
        if acc < 0:
            raise OutOfWindow(f"tensor of morphisms {tuple(mors)} undefined")
    return acc


def adjacent_swap(t, objs, k):
    """id_T(objs[:k]) (x) beta(objs[k], objs[k+1]) (x) id_T(objs[k+2:])."""
    pre = t.ident[tensor_objs(t, objs[:k])]
    post = t.ident[tensor_objs(t, objs[k + 2:])]
    b = t.sym[objs[k]][objs[k + 1]]
    if b < 0:
        raise OutOfWindow(f"symmetry ({objs[k]}, {objs[k + 1]}) undefined")
    m = t.tmor[pre][b]
    if m < 0:
        raise OutOfWindow("tensor with symmetry undefined")
    m = t.tmor[m][post]
    if m < 0:
        raise OutOfWindow("tensor with symmetry undefined")
    return m


def perm_word(t, objs, word):
    """Compose adjacent transpositions at the positions listed in ``word``."""
    cur = list(objs)
    acc = t.ident[tensor_objs(t, cur)]
    for k in word:
        acc = compose(t, adjacent_swap(t, cur, k), acc)
        cur[k], cur[k + 1] = cur[k + 1], cur[k]
    return acc


def perm_iso(t, objs, targets):
    """Canonical iso moving entry p of ``objs`` to position ``targets[p]``.

    Bubble sort on the target positions; each swap contributes one
    ``adjacent_swap``.
    """
    key = (tuple(objs), tuple(targets))
    hit = t._perm_cache.get(key)
    if hit is not None:
        return hit
    cur = list(objs)
    pos = list(targets)
    acc = t.ident[tensor_objs(t, cur)]
    n = len(cur)
    swapped = True
    while swapped:
        swapped = False
        for k in range(n - 1):
            if pos[k] > pos[k + 1]:
                acc = compose(t, adjacent_swap(t, cur, k), acc)
                cur[k], cur[k + 1] = cur[k + 1], cur[k]
                pos[k], pos[k + 1] = pos[k + 1], pos[k]
                swapped = True
    t._perm_cache[key] = acc
    return acc


def gamma_compose(t, b_objs, c_objs, f_phi, f_comps, g_phi, g_comps):
    """Compose (psi, g) after (phi, f); returns (phi', comps')."""
    out_phi = []
    out_comps = []
    for i, mask in enumerate(f_phi):
        union = 0
        js = bits(mask)
        for j in js:
            m = g_phi[j]
            if union & m:
                for j0 in js:
                    if g_phi[j0] & m:
                        raise OverlappingComposite(i, j0, j)
            union |= m
        out_phi.append(union)
        if union == 0:
            out_comps.append(-1)
            continue
        mors = []
        order = []
        for j in js:
            m = g_phi[j]
            if m == 0:
                # a factor sent nowhere has no component; only the unit can be dropped
                if b_objs[j] != t.unit:
                    raise UntypedComposite(i, j)
                continue
            mors.append(g_comps[j])
            order.extend(bits(m))
        h = compose(t, tensor_mors(t, mors), f_comps[i])
        if any(order[p] > order[p + 1] for p in range(len(order) - 1)):
            ranked = sorted(order)
            targets = [ranked.index(k) for k in order]
            h = compose(t, perm_iso(t, [c_objs[k] for k in order], targets), h)
        out_comps.append(h)
    return tuple(out_phi), tuple(out_comps)
