import random

import pytest

from gammawald import gamma as G
from gammawald import wald
from gammawald.errors import OutOfWindow, PreconditionError
from gammawald.fincat import FinCat
from gammawald.wald import FinWaldView, MutatedView, check_waldhausen_axioms, check_weakly_split, is_pushout

from helpers import CORPUS


def trivial_view() -> FinWaldView:
    cat = FinCat.from_names(["0"], [])
    return FinWaldView(cat, 0, [], [], {})


def test_trivial_view_passes():
    rep = check_waldhausen_axioms(trivial_view())
    assert rep.ok
    assert rep.counts["zero"]["checked"] == 1


def test_length_zero_window_has_one_object(pcats):
    v = wald.gamma_as_wald(pcats["C2"], 0)
    assert list(v.objects) == [()]
    assert check_waldhausen_axioms(v).ok


@pytest.mark.parametrize("name", CORPUS)
def test_gamma_windows_satisfy_the_axioms(views, name):
    rep = check_waldhausen_axioms(views(name, 2))
    assert rep.ok, rep.findings[:5]
    for key in ("i.mode", "iii.mode"):
        assert rep.notes[key] == "exhaustive"
    for reasons in rep.notes.get("skips", {}).values():
        assert all(r.startswith("out_of_window:length=") for r in reasons)


def test_pushout_of_identity_is_trivial(views, pcats):
    v = views("X1", 2)
    A = v.objects[3]
    i = v.identity(A)
    D, into_c, into_b = v.pushout(i, i)
    assert D == A
    assert is_pushout(v, i, i, D, into_c, into_b)


def test_pushout_needs_a_cofibration(views, pcats):
    v = views("X1", 1)
    x = pcats["X1"].base.obj("x")
    t = pcats["X1"].base.mor("t")
    m = G.GammaMor((x,), (x,), (1,), (t,))
    with pytest.raises(PreconditionError):
        v.pushout(m, m)


def test_out_of_window_pushout_carries_length(views, pcats):
    v = views("C2", 1)
    x = pcats["C2"].base.obj("x")
    f = v.zero_to((x,))
    with pytest.raises(OutOfWindow) as err:
        v.pushout(f, v.zero_to((x,)))
    assert err.value.length == 2


# -- mutation tests: a broken presentation must be caught ----------------------


def _injective_singletons(m) -> bool:
    return all(bin(b).count("1") == 1 for b in m.phi) and len(set(m.phi)) == len(m.phi)


def test_dropping_the_iso_condition_on_cofibrations_is_caught(views):
    # t: x -> x is not invertible in X1; accepting it breaks (iii) and (iv)
    rep = check_waldhausen_axioms(MutatedView(views("X1", 2), is_cof=_injective_singletons), budget=3000)
    assert not rep.ok
    assert {"iii.pushout", "iv.gluing"} <= {f.kind for f in rep.findings}


def test_same_predicate_on_a_groupoid_is_not_a_mutation(views):
    # every morphism of C2 is invertible, so the condition was vacuous there
    rep = check_waldhausen_axioms(MutatedView(views("C2", 2), is_cof=_injective_singletons), budget=3000)
    assert rep.ok


@pytest.mark.parametrize(
    "mutation, expected",
    [
        ("cof_identities", {"i.isomorphism", "iii.cofibration"}),
        ("cof_everything", {"iii.pushout", "iv.gluing", "subcategory.cof.closed"}),
        ("we_identities", {"i.isomorphism"}),
        ("we_everything", {"subcategory.we.closed"}),
    ],
)
@pytest.mark.parametrize("name", ("C2", "X1"))
def test_predicate_mutations_are_caught(views, pcats, name, mutation, expected):
    p = pcats[name]

    def is_identity(m):
        return m == G.gamma_identity(p, m.src)

    kw = {
        "cof_identities": {"is_cof": lambda m: is_identity(m) or not m.src},
        "cof_everything": {"is_cof": lambda m: True},
        "we_identities": {"is_we": is_identity},
        "we_everything": {"is_we": lambda m: True},
    }[mutation]
    rep = check_waldhausen_axioms(MutatedView(views(name, 2), **kw), budget=3000)
    assert expected <= {f.kind for f in rep.findings}


def test_wrong_pushout_oracle_is_caught(views):
    base = views("X1", 2)

    def naive(cof, m):
        # glue nothing: the wedge of the two targets
        D, inl, inr = base.wedge(base.tgt(m), base.tgt(cof))
        return D, inl, inr

    rep = check_waldhausen_axioms(MutatedView(base, pushout=naive), budget=3000)
    assert "iii.pushout" in {f.kind for f in rep.findings}


# -- weakly split -------------------------------------------------------------


@pytest.mark.parametrize("name", CORPUS)
def test_every_cofibration_is_weakly_split(views, name):
    rep = check_weakly_split(views(name, 2))
    assert rep.ok
    assert rep.counts["split.rel_A"]["checked"] == rep.counts["split.weak_equivalence"]["checked"] > 0


# -- pointed sets --------------------------------------------------------------


def test_pointed_sets_satisfy_the_axioms(pointed):
    rep = check_waldhausen_axioms(pointed)
    assert rep.ok, rep.findings[:5]


def test_pointed_sets_wedge_and_copair(pointed):
    c = pointed.cat
    p1, p2 = c.obj("P1"), c.obj("P2")
    assert p1 == pointed.zero
    w, inl, inr = pointed.wedge(p2, p2)
    assert (c.obj_names[w], c.mor_names[inl], c.mor_names[inr]) == ("P3", "m23_1", "m23_2")
    fold = pointed.copair(p2, p2, c.ident[p2], c.ident[p2])
    assert c.src[fold] == c.obj("P3") and c.tgt[fold] == p2
    assert pointed.wedge(p2, p1) == (p2, c.ident[p2], pointed.zero_to(p2))


def test_pointed_sets_missing_wedge_is_out_of_window(pointed):
    c = pointed.cat
    with pytest.raises(OutOfWindow):
        pointed.wedge(c.obj("P3"), c.obj("P3"))


def test_sampled_mode_is_seeded(views):
    v = views("X1", 2)
    a = check_waldhausen_axioms(v, budget=200, seed=4)
    b = check_waldhausen_axioms(v, budget=200, seed=4)
    assert a.to_json() == b.to_json()
    assert a.notes["iii.mode"] == "sampled"


def test_random_morphisms_lie_in_the_window(views):
    v = views("Z3", 2)
    rng = random.Random(1)
    for _ in range(200):
        A, B = rng.choice(v.objects), rng.choice(v.objects)
        if v.hom_size(A, B):
            m = v.random_morphism(A, B, rng)
            assert m in v.hom(A, B)
