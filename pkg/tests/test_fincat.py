import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammawald.errors import AmbiguousMediatingMorphism, CompositionError, NoMediatingMorphism, SpecError
from gammawald.fincat import (
    FinCat,
    compose,
    is_iso,
    mediating_morphism,
    perm_iso,
    perm_iso_from_word,
    permute,
    tensor_mor_power,
    tensor_power,
    tensor_power_right,
    validate_category,
    validate_permutative,
)
from gammawald.specfile import build_category, build_permutative, load_fixture

from helpers import CORPUS, block_permutation, fixture_dict, spec_of, symmetric_groupoid


def test_one_object_category_is_valid():
    cat = FinCat.from_names(["e"], [])
    assert validate_category(cat).ok


def test_x1_is_a_valid_category(pcats):
    rep = validate_category(pcats["X1"].base)
    assert rep.ok
    assert rep.counts["associativity"]["checked"] == 1 + 2**3  # one triple at e, eight at x


def test_x1_with_involutive_t_is_a_category_but_not_permutative():
    # t o t = id_x makes End(x) = Z/2, which is a category.  Interchange fails:
    # (t o id) (x) (id o t) = t (x) t = t, but (t (x) id) o (id (x) t) = t o t = id_x.
    d = fixture_dict("X1")
    d["compose"] = [["t", "t", "id_x"]]
    spec = spec_of(d)
    assert validate_category(build_category(spec)).ok
    rep = validate_permutative(build_permutative(spec))
    assert not rep.ok
    assert {f.kind for f in rep.findings} == {"functor.interchange"}


def test_broken_associativity_is_reported():
    cat = FinCat.from_names(
        ["a"],
        [("p", "a", "a"), ("q", "a", "a")],
        [("p", "p", "q"), ("p", "q", "q"), ("q", "p", "p"), ("q", "q", "q")],
    )
    # (p o p) o p = q o p = p, while p o (p o p) = p o q = q
    rep = validate_category(cat)
    assert not rep.ok
    assert all(f.kind == "associativity" for f in rep.findings)


def test_compose_examples(pcats):
    c = pcats["X1"].base
    t, idx, ide = c.mor("t"), c.mor("id_x"), c.mor("id_e")
    assert compose(c, idx, t) == t
    assert compose(c, t, t) == t
    with pytest.raises(CompositionError):
        compose(c, t, ide)


@pytest.mark.parametrize("name", CORPUS + ("C2_plus", "X1_plus", "Z3_plus"))
def test_corpus_is_permutative(name):
    assert validate_permutative(build_permutative(load_fixture(name))).ok


def test_non_involutive_symmetry_is_reported():
    # give e an idempotent endomorphism s and use it as beta(x, x): x (x) x = e
    d = fixture_dict("C2")
    d["morphisms"] = [{"name": "s", "src": "e", "tgt": "e"}]
    d["compose"] = [["s", "s", "s"]]
    d["tensor_mor"] = [
        ["s", "s", "s"], ["s", "id_e", "s"], ["id_e", "s", "s"], ["s", "id_x", "id_x"], ["id_x", "s", "id_x"]
    ]
    d["symmetry"] = [["e", "e", "id_e"], ["e", "x", "id_x"], ["x", "e", "id_x"], ["x", "x", "s"]]
    rep = validate_permutative(build_permutative(spec_of(d)))
    assert "symmetry.involution" in {f.kind for f in rep.findings}


def _mutations(d: dict):
    """Every single-entry change of a composition or tensor table entry."""
    mors = [f"id_{o}" for o in d["objects"]] + [m["name"] for m in d["morphisms"]]
    for table, pool in (("compose", mors), ("tensor_obj", d["objects"]), ("tensor_mor", mors), ("symmetry", mors)):
        for k, entry in enumerate(d[table]):
            for alt in pool:
                if alt == entry[2]:
                    continue
                e = {**d, table: [list(x) for x in d[table]]}
                e[table][k][2] = alt
                yield f"{table}[{k}] -> {alt}", e


@pytest.mark.parametrize("name", CORPUS)
def test_every_single_entry_mutation_is_detected(name):
    missed = []
    total = 0
    for label, d in _mutations(fixture_dict(name)):
        total += 1
        try:
            spec = spec_of(d)
            cat = build_category(spec)
            rep = validate_category(cat)
            if rep.ok:
                rep = validate_permutative(build_permutative(spec))
        except SpecError:
            continue
        if rep.ok:
            missed.append(label)
    assert total > 0
    assert missed == []


def test_tensor_power_examples(pcats):
    c2 = pcats["C2"]
    e, x = c2.base.obj("e"), c2.base.obj("x")
    assert tensor_power(c2, []) == e
    assert tensor_power(c2, [x]) == x
    assert tensor_power(c2, [x, x]) == e


def test_tensor_mor_power_examples(pcats):
    x1 = pcats["X1"]
    c = x1.base
    t, idx = c.mor("t"), c.mor("id_x")
    assert tensor_mor_power(x1, []) == c.ident[x1.unit]
    assert tensor_mor_power(x1, [t]) == t
    assert tensor_mor_power(x1, [t, idx]) == t


def test_perm_iso_examples(pcats):
    c2 = pcats["C2"]
    x = c2.base.obj("x")
    assert perm_iso(c2, [x, x], [0, 1]) == c2.base.ident[c2.unit]
    assert perm_iso(c2, [x, x], [1, 0]) == c2.beta(x, x) == c2.base.ident[c2.unit]


def test_perm_iso_three_cycle_two_decompositions():
    g, by_perm = symmetric_groupoid(3)
    objs = [1, 1, 1]
    # two words for the same 3-cycle
    a = perm_iso_from_word(g, objs, [0, 1])
    b = perm_iso_from_word(g, objs, [1, 0, 1, 0])
    assert a == b
    assert a != g.base.ident[3]


def test_is_iso_examples(pcats):
    x1, c2 = pcats["X1"].base, pcats["C2"]
    assert is_iso(x1, x1.mor("id_x"))
    assert not is_iso(x1, x1.mor("t"))
    x = c2.base.obj("x")
    assert is_iso(c2.base, c2.beta(x, x))


def test_mediating_fold_in_pointed_sets():
    cat = build_category(load_fixture("pointed_sets"))
    p1, p2, p3 = cat.obj("P1"), cat.obj("P2"), cat.obj("P3")
    ip = cat.ident[p1]
    assert mediating_morphism(cat, p1, p1, [(ip, ip)]) == ip
    inl, inr, idp2 = cat.mor("m23_1"), cat.mor("m23_2"), cat.ident[p2]
    fold = mediating_morphism(cat, p3, p2, [(inl, idp2), (inr, idp2)])
    assert cat.mor_names[fold] == "m32_11"


def test_mediating_not_found_and_not_unique():
    cat = FinCat.from_names(["a", "b"], [("f", "a", "b"), ("g", "a", "b")])
    a, b = cat.obj("a"), cat.obj("b")
    with pytest.raises(NoMediatingMorphism):
        mediating_morphism(cat, b, a, [])
    with pytest.raises(AmbiguousMediatingMorphism) as err:
        mediating_morphism(cat, a, b, [])
    assert len(err.value.candidates) == 2


SIGMA4, BY_PERM = symmetric_groupoid(4)
NAMED = {v: k for k, v in BY_PERM.items()}


def _compositions(n: int):
    """Ordered block sizes summing to at most 4 with ``n`` blocks."""
    return [s for s in itertools.product(range(5), repeat=n) if sum(s) <= 4]


def test_perm_iso_matches_block_permutation_exhaustively():
    checked = 0
    for n in range(5):
        for sizes in _compositions(n):
            for sigma in itertools.permutations(range(n)):
                m = perm_iso(SIGMA4, list(sizes), list(sigma))
                assert NAMED[m] == block_permutation(sizes, sigma), (sizes, sigma)
                checked += 1
    assert checked > 1000


def _words(n: int, max_len: int):
    for k in range(max_len + 1):
        yield from itertools.product(range(n - 1), repeat=k)


def _apply_word(n, word):
    pos = list(range(n))  # pos[p] = where entry p currently sits
    at = list(range(n))  # at[q] = entry currently at q
    for k in word:
        at[k], at[k + 1] = at[k + 1], at[k]
    for q, p in enumerate(at):
        pos[p] = q
    return tuple(pos)


def test_perm_iso_decomposition_independent_up_to_length_4():
    # all words of length <= 6 in adjacent swaps, for every block-size pattern
    for n in range(2, 5):
        words = list(_words(n, 6))
        for sizes in _compositions(n):
            by_sigma = {}
            for w in words:
                m = perm_iso_from_word(SIGMA4, list(sizes), list(w))
                by_sigma.setdefault(_apply_word(n, w), set()).add(m)
            assert len(by_sigma) == len(list(itertools.permutations(range(n))))
            for sigma, ms in by_sigma.items():
                assert ms == {perm_iso(SIGMA4, list(sizes), list(sigma))}, (sizes, sigma)


def test_perm_iso_functorial_up_to_length_4():
    c = SIGMA4.base
    for n in range(5):
        for sizes in _compositions(n):
            for s1 in itertools.permutations(range(n)):
                mid = permute(sizes, s1)
                first = perm_iso(SIGMA4, list(sizes), list(s1))
                for s2 in itertools.permutations(range(n)):
                    both = tuple(s2[s1[p]] for p in range(n))
                    second = perm_iso(SIGMA4, list(mid), list(s2))
                    assert c.comp[(second, first)] == perm_iso(SIGMA4, list(sizes), list(both))


@pytest.mark.parametrize("name", CORPUS)
def test_bracketing_invariance_up_to_length_4(pcats, name):
    p = pcats[name]
    for n in range(5):
        for objs in itertools.product(p.base.objects, repeat=n):
            assert tensor_power(p, objs) == tensor_power_right(p, objs)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=6), st.sampled_from(CORPUS))
def test_bracketing_invariance_longer_sequences(pcats, objs, name):
    p = pcats[name]
    objs = [o % len(p.base.obj_names) for o in objs]
    assert tensor_power(p, objs) == tensor_power_right(p, objs)


@settings(max_examples=200, deadline=None)
@given(st.permutations(range(4)), st.permutations(range(4)))
def test_perm_iso_composition_property(s1, s2):
    sizes = (1, 1, 1, 1)
    first = perm_iso(SIGMA4, list(sizes), list(s1))
    second = perm_iso(SIGMA4, list(permute(sizes, s1)), list(s2))
    both = [s2[s1[p]] for p in range(4)]
    assert SIGMA4.base.comp[(second, first)] == perm_iso(SIGMA4, list(sizes), both)
