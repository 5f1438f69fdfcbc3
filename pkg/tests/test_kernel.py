import itertools
import os
import random
import subprocess
import sys

import pytest

from gammawald import kernel
from gammawald.errors import CompositionError, OutOfWindow
from gammawald.gamma import enumerate_truncated, gamma_compose

from helpers import CORPUS, symmetric_groupoid

needs_compiled = pytest.mark.skipif(not kernel.compiled_available(), reason="compiled kernel not built")


def run(backend, fn, *args):
    try:
        return fn(kernel.get_backend(backend), *args)
    except (CompositionError, OutOfWindow) as exc:
        return type(exc)
    except Exception as exc:  # composite errors carry witnesses
        return (type(exc), getattr(exc, "i", None), getattr(exc, "j", None), getattr(exc, "j2", None))


def both(fn, *args):
    return run("python", fn, *args), run("compiled", fn, *args)


def test_default_backend_is_reported():
    assert kernel.BACKEND in ("python", "compiled")
    assert kernel.get_backend("python").BACKEND == "python"
    with pytest.raises(ValueError):
        kernel.get_backend("fortran")


def test_environment_variable_forces_fallback():
    env = dict(os.environ, GAMMAWALD_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import gammawald.kernel as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@needs_compiled
@pytest.mark.parametrize("name", CORPUS)
def test_gamma_compose_parity(pcats, name):
    p = pcats[name]
    win = enumerate_truncated(p, 2)
    rng = random.Random(5)
    for _ in range(3000):
        A, B, C = (rng.choice(win.objects) for _ in range(3))
        if not win.hom_size(A, B) or not win.hom_size(B, C):
            continue
        f, g = win.random_morphism(A, B, rng), win.random_morphism(B, C, rng)

        def go(k, f=f, g=g):
            return k.gamma_compose(p.tables(k.BACKEND), f.tgt, g.tgt, f.phi, f.comps, g.phi, g.comps)

        py, c = both(go)
        assert py == c


@needs_compiled
def test_gamma_compose_parity_with_symmetries():
    g, _ = symmetric_groupoid(4)
    win = enumerate_truncated(g, 3)
    rng = random.Random(6)
    objs = [A for A in win.objects if sum(A) <= 4]
    for _ in range(3000):
        A, B, C = (rng.choice(objs) for _ in range(3))
        if not win.hom_size(A, B) or not win.hom_size(B, C):
            continue
        f, h = win.random_morphism(A, B, rng), win.random_morphism(B, C, rng)
        try:
            py = gamma_compose(g, h, f, backend="python")
        except Exception as exc:
            py = type(exc)
        try:
            c = gamma_compose(g, h, f, backend="compiled")
        except Exception as exc:
            c = type(exc)
        assert py == c


@needs_compiled
def test_perm_iso_and_words_parity():
    g, _ = symmetric_groupoid(4)
    for n in range(5):
        for sizes in itertools.product(range(5), repeat=n):
            if sum(sizes) > 4:
                continue
            for sigma in itertools.permutations(range(n)):
                py, c = both(lambda k: k.perm_iso(g.tables(k.BACKEND), list(sizes), list(sigma)))
                assert py == c
            for word in itertools.product(range(max(n - 1, 0)), repeat=min(n, 3)):
                py, c = both(lambda k: k.perm_word(g.tables(k.BACKEND), list(sizes), list(word)))
                assert py == c


@needs_compiled
@pytest.mark.parametrize("name", CORPUS)
def test_tensor_parity(pcats, name):
    p = pcats[name]
    objs = list(p.base.objects)
    mors = list(p.base.morphisms)
    for n in range(5):
        for seq in itertools.product(objs, repeat=n):
            assert len(set(both(lambda k: k.tensor_objs(p.tables(k.BACKEND), list(seq))))) == 1
        for seq in itertools.product(mors, repeat=min(n, 3)):
            assert len(set(both(lambda k: k.tensor_mors(p.tables(k.BACKEND), list(seq))))) == 1
    for g_, f_ in itertools.product(mors, repeat=2):
        assert len(set(both(lambda k: k.compose(p.tables(k.BACKEND), g_, f_)))) == 1


@needs_compiled
def test_partial_tensor_errors_agree():
    g, _ = symmetric_groupoid(3)
    py, c = both(lambda k: k.tensor_objs(g.tables(k.BACKEND), [2, 2]))
    assert py == c == OutOfWindow
