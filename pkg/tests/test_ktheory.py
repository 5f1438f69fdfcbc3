import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from gammawald import compare, ktheory, wald
from gammawald.cli import window_components
from gammawald.errors import BudgetExceeded
from gammawald.fincat import FinCat
from gammawald.ktheory import (
    AbGroupInvariants,
    FinCommMonoid,
    cokernel,
    determinantal_diagonal,
    grothendieck_group,
    grothendieck_pairs,
    groups_isomorphic,
    homology,
    k0_segal,
    k0_waldhausen,
    nerve_chain_complex,
    pi0_monoid,
    smith_normal_form,
)

from helpers import CORPUS

ORACLE = json.loads((Path(__file__).parent / "oracle_values.json").read_text())


def inv(d: dict) -> AbGroupInvariants:
    return AbGroupInvariants(d["rank"], tuple(d["factors"]))


# -- Smith normal form ----------------------------------------------------------


@pytest.mark.parametrize("key", sorted(ORACLE["snf"]))
def test_snf_against_frozen_values(key):
    M = json.loads(key)
    got = cokernel(M, len(M[0]))
    assert got == inv(ORACLE["snf"][key])


def test_snf_examples():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).diagonal == (2, 6, 12)
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == ()
    assert smith_normal_form([[6]]).diagonal == (6,)
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal == (1, 6)
    assert cokernel([], 3) == AbGroupInvariants(3)


def _sympy_diagonal(M):
    S = sympy_snf(Matrix(M), domain=ZZ)
    return tuple(abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0)


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_snf_agrees_with_sympy(M):
    assert smith_normal_form(M).diagonal == _sympy_diagonal(M)


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_snf_is_a_divisibility_chain(M):
    d = smith_normal_form(M).diagonal
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


def test_minor_cross_checks_are_logged():
    ktheory.ORACLE_LOG.reset()
    rng = random.Random(3)
    for _ in range(50):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        assert smith_normal_form(M).diagonal == determinantal_diagonal(M)
    assert ktheory.ORACLE_LOG.checked == ktheory.ORACLE_LOG.agreed > 0


def test_large_matrices_skip_the_minor_check():
    ktheory.ORACLE_LOG.reset()
    smith_normal_form([[1] * 5] * 5)
    assert ktheory.ORACLE_LOG.checked == 0


# -- groups -------------------------------------------------------------------


def test_group_invariants_validation_and_printing():
    assert str(AbGroupInvariants()) == "0"
    assert str(AbGroupInvariants(2, (2, 6))) == "Z^2 + Z/2 + Z/6"
    with pytest.raises(ValueError):
        AbGroupInvariants(0, (2, 3))
    with pytest.raises(ValueError):
        AbGroupInvariants(0, (1,))


def test_groups_isomorphic_examples():
    assert groups_isomorphic(AbGroupInvariants(0, (6,)), AbGroupInvariants(0, (6,)))
    assert not groups_isomorphic(AbGroupInvariants(0, (6,)), AbGroupInvariants(0, (2, 2)))
    assert not groups_isomorphic(AbGroupInvariants(1), AbGroupInvariants(0))


def cyclic(n: int) -> FinCommMonoid:
    return FinCommMonoid(tuple(range(n)), tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0)


def test_grothendieck_group_examples():
    assert grothendieck_group(cyclic(4)) == AbGroupInvariants(0, (4,))
    # {0, 1} under max: 1 absorbs, so the group is trivial
    absorbing = FinCommMonoid((0, 1), ((0, 1), (1, 1)), 0)
    assert grothendieck_group(absorbing) == AbGroupInvariants()
    assert grothendieck_pairs(absorbing) == AbGroupInvariants()


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(0, 4))
def test_both_routes_agree_on_truncated_cyclic_monoids(n, tail):
    # elements 0..tail+n-1 with a + b folded into the cycle tail..tail+n-1
    size = tail + n

    def fold(k):
        return k if k < size else tail + (k - tail) % n

    table = tuple(tuple(fold(a + b) for b in range(size)) for a in range(size))
    m = FinCommMonoid(tuple(range(size)), table, 0)
    assert m.violations() == []
    assert grothendieck_group(m) == grothendieck_pairs(m) == AbGroupInvariants(0, (n,))


@pytest.mark.parametrize("name", CORPUS)
def test_pi0_and_k0_segal(pcats, name):
    m = pi0_monoid(pcats[name])
    assert len(m.elements) == ORACLE["pi0_size"][name]
    assert m.violations() == []
    want = inv(ORACLE["k0_segal"][name])
    assert grothendieck_group(m) == want
    assert grothendieck_pairs(m) == want
    assert k0_segal(compare.plus_category(pcats[name])) == want


def test_concrete_k0_values(pcats):
    assert str(k0_segal(pcats["C2"])) == "Z/2"
    assert str(k0_segal(pcats["X1"])) == "0"
    assert str(k0_segal(pcats["Z3"])) == "Z/3"


@pytest.mark.parametrize("name", CORPUS)
@pytest.mark.parametrize("L", (2, 3))
def test_k0_waldhausen_matches_oracle_and_segal(pcats, views, name, L):
    got = k0_waldhausen(views(name, L))
    assert got == inv(ORACLE["k0_waldhausen"][name][str(L)])
    assert groups_isomorphic(got, k0_segal(pcats[name]))


def test_k0_of_pointed_sets(pointed):
    # [P2] generates; P3 = P2 v P2 and every cofiber of P2 >-> P3 is P2
    assert k0_waldhausen(pointed) == AbGroupInvariants(1)


def test_relation_budget_is_enforced(views):
    with pytest.raises(BudgetExceeded):
        k0_waldhausen(views("Z3", 2), budget=5)


# -- nerve homology ---------------------------------------------------------------


def test_one_object_category_homology():
    h = homology(FinCat.from_names(["e"], []), 3)
    assert h == [AbGroupInvariants(1), AbGroupInvariants(), AbGroupInvariants()]


@pytest.mark.parametrize("name", CORPUS)
def test_h0_counts_components(pcats, name):
    p = pcats[name]
    assert homology(p.base, 2)[0] == AbGroupInvariants(ORACLE["pi0_size"][name])
    plus = compare.plus_category(p)
    assert homology(plus.base, 2)[0] == AbGroupInvariants(ORACLE["h0_plus_rank"][name])


def test_c2_homology(pcats):
    assert homology(pcats["C2"].base, 2)[0] == AbGroupInvariants(2)
    assert homology(compare.plus_category(pcats["C2"]).base, 2)[0] == AbGroupInvariants(3)


def test_nerve_of_an_idempotent():
    # one object with e o e = e: a contractible classifying space
    cat = FinCat.from_names(["a"], [("e", "a", "a")], [("e", "e", "e")])
    h = homology(cat, 4)
    assert h[0] == AbGroupInvariants(1)
    assert all(g == AbGroupInvariants() for g in h[1:])


def test_nerve_of_z2_has_two_torsion():
    cat = FinCat.from_names(["a"], [("g", "a", "a")], [("g", "g", "id_a")])
    h = homology(cat, 3)
    assert h[1] == AbGroupInvariants(0, (2,))


@pytest.mark.parametrize("name", CORPUS)
def test_boundary_of_boundary_vanishes(pcats, name):
    mats = nerve_chain_complex(compare.plus_category(pcats[name]).base, 3)
    for lo, hi in zip(mats, mats[1:]):
        for i in range(len(lo)):
            for j in range(len(hi[0]) if hi else 0):
                assert sum(lo[i][k] * hi[k][j] for k in range(len(hi))) == 0


def test_window_components_match_h0(pcats):
    for name in CORPUS:
        plus = compare.plus_category(pcats[name])
        h0 = homology(plus.base, 1)[0]
        assert window_components(wald.gamma_as_wald(pcats[name], 2)) == h0.rank
