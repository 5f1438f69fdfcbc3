# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernel``: same functions, same errors, same results."""

import numpy as np

from .errors import CompositionError, OutOfWindow, OverlappingComposite, UntypedComposite

BACKEND = "compiled"

cdef enum:
    MAXN = 64


cdef class Tables:
    cdef readonly object arrays
    cdef long long[:, ::1] comp
    cdef long long[:, ::1] tobj
    cdef long long[:, ::1] tmor
    cdef long long[:, ::1] sym
    cdef long long[::1] ident
    cdef readonly long long unit
    cdef dict perm_cache

    def __init__(self, comp, tobj, tmor, sym, ident, unit, src, tgt):
        arrs = {
            "comp": np.ascontiguousarray(np.array(comp, dtype=np.int64).reshape(len(comp), -1)),
            "tobj": np.ascontiguousarray(np.array(tobj, dtype=np.int64).reshape(len(tobj), -1)),
            "tmor": np.ascontiguousarray(np.array(tmor, dtype=np.int64).reshape(len(tmor), -1)),
            "sym": np.ascontiguousarray(np.array(sym, dtype=np.int64).reshape(len(sym), -1)),
            "ident": np.ascontiguousarray(np.array(ident, dtype=np.int64)),
        }
        self.arrays = arrs
        self.comp = arrs["comp"]
        self.tobj = arrs["tobj"]
        self.tmor = arrs["tmor"]
        self.sym = arrs["sym"]
        self.ident = arrs["ident"]
        self.unit = unit
        self.perm_cache = {}


cdef inline long long _compose(Tables t, long long g, long long f) except -2:
    cdef long long h = t.comp[g, f]
    if h < 0:
        raise CompositionError(f"no composite for ({g}, {f})")
    return h


cdef long long _tensor_objs(Tables t, long long* objs, int lo, int hi) except -2:
    cdef long long acc = t.unit
    cdef int k
    for k in range(lo, hi):
        acc = t.tobj[acc, objs[k]]
        if acc < 0:
            raise OutOfWindow("tensor of objects undefined")
    return acc


cdef long long _tensor_mors(Tables t, long long* mors, int n) except -2:
    cdef long long acc = t.ident[t.unit]
    cdef int k
    for k in range(n):
        acc = t.tmor[acc, mors[k]]
        if acc < 0:
            raise OutOfWindow("tensor of morphisms undefined")
    return acc


cdef long long _adjacent_swap(Tables t, long long* objs, int n, int k) except -2:
    cdef long long pre = t.ident[_tensor_objs(t, objs, 0, k)]
    cdef long long post = t.ident[_tensor_objs(t, objs, k + 2, n)]
    cdef long long b = t.sym[objs[k], objs[k + 1]]
    if b < 0:
        raise OutOfWindow("symmetry undefined")
    cdef long long m = t.tmor[pre, b]
    if m < 0:
        raise OutOfWindow("tensor with symmetry undefined")
    m = t.tmor[m, post]
    if m < 0:
        raise OutOfWindow("tensor with symmetry undefined")
    return m


cdef int _load(object seq, long long* buf) except -1:
    cdef int n = len(seq)
    cdef int k
    if n > MAXN:
        raise ValueError("sequence longer than 64")
    for k in range(n):
        buf[k] = seq[k]
    return n


def bits(mask):
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def compose(Tables t, long long g, long long f):
    return _compose(t, g, f)


def tensor_objs(Tables t, objs):
    cdef long long buf[MAXN]
    cdef int n = _load(objs, buf)
    return _tensor_objs(t, buf, 0, n)


def tensor_mors(Tables t, mors):
    cdef long long buf[MAXN]
    cdef int n = _load(mors, buf)
    return _tensor_mors(t, buf, n)


def adjacent_swap(Tables t, objs, int k):
    cdef long long buf[MAXN]
    cdef int n = _load(objs, buf)
    return _adjacent_swap(t, buf, n, k)


def perm_word(Tables t, objs, word):
    cdef long long cur[MAXN]
    cdef int n = _load(objs, cur)
    cdef long long acc = t.ident[_tensor_objs(t, cur, 0, n)]
    cdef long long tmp
    cdef int k
    for k in word:
        acc = _compose(t, _adjacent_swap(t, cur, n, k), acc)
        tmp = cur[k]
        cur[k] = cur[k + 1]
        cur[k + 1] = tmp
    return acc


cdef long long _perm_iso(Tables t, long long* objs, long long* targets, int n) except -2:
    cdef long long cur[MAXN]
    cdef long long pos[MAXN]
    cdef int k
    cdef long long tmp
    cdef bint swapped = True
    for k in range(n):
        cur[k] = objs[k]
        pos[k] = targets[k]
    cdef long long acc = t.ident[_tensor_objs(t, cur, 0, n)]
    while swapped:
        swapped = False
        for k in range(n - 1):
            if pos[k] > pos[k + 1]:
                acc = _compose(t, _adjacent_swap(t, cur, n, k), acc)
                tmp = cur[k]; cur[k] = cur[k + 1]; cur[k + 1] = tmp
                tmp = pos[k]; pos[k] = pos[k + 1]; pos[k + 1] = tmp
                swapped = True
    return acc


cdef long long _perm_iso_cached(Tables t, long long* objs, long long* targets, int n) except -2:
    key = (tuple([objs[k] for k in range(n)]), tuple([targets[k] for k in range(n)]))
    hit = t.perm_cache.get(key)
    if hit is not None:
        return hit
    cdef long long r = _perm_iso(t, objs, targets, n)
    t.perm_cache[key] = r
    return r


def perm_iso(Tables t, objs, targets):
    cdef long long o[MAXN]
    cdef long long p[MAXN]
    cdef int n = _load(objs, o)
    _load(targets, p)
    return _perm_iso_cached(t, o, p, n)


def gamma_compose(Tables t, b_objs, c_objs, f_phi, f_comps, g_phi, g_comps):
    cdef long long bo[MAXN]
    cdef long long co[MAXN]
    cdef unsigned long long gp[MAXN]
    cdef long long gc[MAXN]
    cdef long long mors[MAXN]
    cdef long long order[MAXN]
    cdef long long perm_objs[MAXN]
    cdef long long targets[MAXN]
    cdef int nb = _load(b_objs, bo)
    _load(c_objs, co)
    cdef int j, j0, i, na = len(f_phi), nm, no, p, q, r
    cdef unsigned long long mask, m, union, rem
    cdef long long h
    cdef bint unsorted
    for j in range(nb):
        gp[j] = g_phi[j]
        gc[j] = g_comps[j]
    out_phi = [0] * na
    out_comps = [-1] * na
    for i in range(na):
        mask = f_phi[i]
        union = 0
        rem = mask
        j = 0
        while rem:
            if rem & 1:
                m = gp[j]
                if union & m:
                    for j0 in range(nb):
                        if (mask >> j0) & 1 and gp[j0] & m:
                            raise OverlappingComposite(i, j0, j)
                union |= m
            rem >>= 1
            j += 1
        out_phi[i] = union
        if union == 0:
            continue
        nm = 0
        no = 0
        rem = mask
        j = 0
        while rem:
            if rem & 1:
                m = gp[j]
                if m == 0:
                    if bo[j] != t.unit:
                        raise UntypedComposite(i, j)
                else:
                    mors[nm] = gc[j]
                    nm += 1
                    p = 0
                    while m:
                        if m & 1:
                            order[no] = p
                            no += 1
                        m >>= 1
                        p += 1
            rem >>= 1
            j += 1
        h = _compose(t, _tensor_mors(t, mors, nm), f_comps[i])
        unsorted = False
        for p in range(no - 1):
            if order[p] > order[p + 1]:
                unsorted = True
                break
        if unsorted:
            for p in range(no):
                r = 0
                for q in range(no):
                    if order[q] < order[p]:
                        r += 1
                targets[p] = r
                perm_objs[p] = co[order[p]]
            h = _compose(t, _perm_iso_cached(t, perm_objs, targets, no), h)
        out_comps[i] = h
    return tuple(out_phi), tuple(out_comps)
