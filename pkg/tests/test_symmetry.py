import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from epwb.errors import SpecError
from epwb.module import annihilator
from epwb.symmetry import (
    Automorphism,
    MonomialTransformation,
    apply_monomial,
    aut_group,
    is_automorphism,
    lemma1_equivalence_check,
    orbits,
    subgroup_closure,
    trivial_group,
)

from conftest import TEST_MODULES, make
from oracles import automorphisms_by_permutation


@pytest.mark.parametrize("name,order", [
    ("Z4", 2), ("F2^2", 6), ("Z8", 4), ("M21F2", 1), ("M2F2", 6), ("M23F2", 168),
])
def test_aut_orders(name, order):
    assert aut_group(make(name)).order == order


@pytest.mark.parametrize("name", ["Z4", "F2^2", "Z8", "M21F2"])
def test_aut_group_matches_permutation_oracle(name):
    A = make(name)
    oracle = automorphisms_by_permutation(A.add.tolist(), A.act.tolist(), A.zero)
    assert [tuple(g) for g in aut_group(A).images.tolist()] == oracle


@pytest.mark.parametrize("name", sorted(TEST_MODULES))
def test_group_axioms(name):
    A = make(name)
    G = aut_group(A)
    rows = {tuple(g) for g in G.images.tolist()}
    assert tuple(range(A.order)) in rows
    for g in G.images:
        assert is_automorphism(A, g)
        assert tuple(Automorphism(tuple(g)).inverse) in rows
    if G.order <= 24:
        for g in G.images:
            for h in G.images:
                assert tuple(h[g]) in rows
    # canonical order
    assert [tuple(g) for g in G.images.tolist()] == sorted(rows)


@pytest.mark.parametrize("name", sorted(TEST_MODULES))
def test_automorphisms_preserve_annihilators(name):
    A = make(name)
    for g in aut_group(A).images:
        for a in range(A.order):
            assert annihilator(A, int(g[a])) == annihilator(A, a)


def test_zero_module_group():
    from epwb.module import build_module
    from epwb.ring import build_ring
    Z = build_module(build_ring({"kind": "zn", "n": 4}),
                     {"kind": "power", "base": {"kind": "regular"}, "n": 0})
    assert aut_group(Z).order == 1


def test_subgroup_closure():
    Z4 = make("Z4")
    assert subgroup_closure(Z4, []).order == 1
    assert subgroup_closure(Z4, [[0, 3, 2, 1]]).order == 2
    F = make("F2^2")
    # (0,1) -> (1,0) -> (1,1) -> (0,1): a 3-cycle on the nonzero vectors
    assert subgroup_closure(F, [[0, 2, 3, 1]]).order == 3
    with pytest.raises(SpecError):
        subgroup_closure(Z4, [[0, 2, 1, 3]])


def test_orbits():
    Z4 = make("Z4")
    assert orbits(Z4, aut_group(Z4)).partition() == [(0,), (1, 3), (2,)]
    assert orbits(Z4, trivial_group(Z4)).partition() == [(0,), (1,), (2,), (3,)]
    F = make("F2^2")
    assert orbits(F, aut_group(F)).partition() == [(0,), (1, 2, 3)]


@pytest.mark.parametrize("name", ["Z4", "F2^2", "Z8", "M2F2", "Z2xZ8"])
def test_orbit_relation_is_equivalence(name):
    A = make(name)
    G = aut_group(A)
    rel = np.zeros((A.order, A.order), dtype=bool)
    for g in G.images:
        rel[np.arange(A.order), g] = True
    assert rel.diagonal().all()
    assert (rel == rel.T).all()
    assert ((rel.astype(int) @ rel.astype(int) > 0) <= rel).all()
    idx = orbits(A, G)
    for a in range(A.order):
        for b in range(A.order):
            assert rel[a, b] == (idx.orbit_of[a] == idx.orbit_of[b])
        assert idx.representative(a) == min(idx.members(idx.orbit_of[a]))


def test_lemma1_partitions():
    for name in ("Z4", "Z8", "M21F2", "M2F2"):
        r = lemma1_equivalence_check(make(name))
        assert r["pseudo_injective"] and r["equal"]
    r = lemma1_equivalence_check(make("Z2xZ8"))
    assert not r["pseudo_injective"]
    assert not r["equal"] and r["orbits_refine_rho"]


def test_apply_monomial_examples():
    ident = MonomialTransformation.identity(3, 4)
    assert apply_monomial(ident, (1, 2, 3)) == (1, 2, 3)
    swap = MonomialTransformation((1, 0), ((0, 1, 2, 3),) * 2)
    assert apply_monomial(swap, (1, 2)) == (2, 1)
    triple = MonomialTransformation((0,), ((0, 3, 2, 1),))
    assert apply_monomial(triple, (2,)) == (2,)
    assert apply_monomial(triple, (1,)) == (3,)
    with pytest.raises(ValueError):
        apply_monomial(swap, (1, 2, 3))


def test_monomial_validation():
    with pytest.raises(SpecError):
        MonomialTransformation((0, 0), ((0, 1),) * 2)
    with pytest.raises(SpecError):
        MonomialTransformation((0, 1), ((0, 1),))


def test_sigma_convention():
    # coordinate i of the image reads coordinate sigma(i) of the input
    T = MonomialTransformation((2, 0, 1), ((0, 1, 2, 3),) * 3)
    assert apply_monomial(T, (10 % 4, 1, 2)) == (2, 2, 1)


@st.composite
def monomials(draw, name):
    A = make(name)
    G = aut_group(A)
    n = draw(st.integers(1, 4))
    sigma = tuple(draw(st.permutations(range(n))))
    taus = tuple(tuple(G.images[draw(st.integers(0, G.order - 1))].tolist()) for _ in range(n))
    return A, MonomialTransformation(sigma, taus)


@settings(max_examples=60, deadline=None)
@given(data=st.data(), name=st.sampled_from(["Z4", "F2^2", "Z8", "M2F2"]))
def test_composition_and_inverse(data, name):
    A, T1 = data.draw(monomials(name))
    n = T1.n
    G = aut_group(A)
    taus = tuple(tuple(G.images[data.draw(st.integers(0, G.order - 1))].tolist())
                 for _ in range(n))
    T2 = MonomialTransformation(tuple(data.draw(st.permutations(range(n)))), taus)
    x = tuple(data.draw(st.lists(st.integers(0, A.order - 1), min_size=n, max_size=n)))
    assert apply_monomial(T2, apply_monomial(T1, x)) == apply_monomial(T1.then(T2), x)
    assert apply_monomial(T1.inverse(), apply_monomial(T1, x)) == x
    assert T1.then(T2).in_group(G) and T1.inverse().in_group(G)
    digits = np.array([x])
    assert tuple(T1.apply_digits(digits)[0]) == apply_monomial(T1, x)


@settings(max_examples=40, deadline=None)
@given(name=st.sampled_from(["Z4", "F2^2", "Z8"]), data=st.data())
def test_automorphism_composition(name, data):
    A = make(name)
    G = aut_group(A)
    i = data.draw(st.integers(0, G.order - 1))
    j = data.draw(st.integers(0, G.order - 1))
    s, t = Automorphism(tuple(G.images[i])), Automorphism(tuple(G.images[j]))
    st_ = s.then(t)
    assert is_automorphism(A, st_.images)
    for a in range(A.order):
        assert st_(a) == t(s(a))
        assert s.inverse[s(a)] == a
