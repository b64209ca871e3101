import numpy as np
import pytest

from epwb.errors import AxiomError, NotChainRingError, SpecError
from epwb.ring import (
    build_ring,
    chain_levels,
    check_ring_axioms,
    galois_field_tables,
    idempotent_generator,
    is_chain_ring,
    is_simple_artinian,
    jacobson_radical,
    left_ideals,
    matrix_digits,
    parse_ring_spec,
)

from oracles import additive_rank_bound, all_closed_subsets


def ring(**kw):
    return build_ring(kw)


def test_zn4_construction():
    R = ring(kind="zn", n=4)
    assert R.order == 4
    assert R.one == 1 and R.zero == 0


def test_matrix_ring_order_and_unit():
    R = ring(kind="matrix", m=2, q=2)
    assert R.order == 16
    # identity matrix [[1,0],[0,1]] read row-major as a base-2 numeral
    assert R.one == 0b1001
    check_ring_axioms(R.add, R.mul, R.zero, R.one)


@pytest.mark.parametrize("q", [2, 3, 4, 8, 9])
def test_galois_fields_satisfy_axioms(q):
    add, mul = galois_field_tables(q)
    check_ring_axioms(add, mul, 0, 1)
    # every nonzero element invertible
    assert all((mul[a] == 1).any() for a in range(1, q))


def test_chain_ring_construction():
    R = ring(kind="chain", p=2, e=3)
    assert R.order == 8
    assert is_chain_ring(R)
    assert len(left_ideals(R)) == 4


def test_non_associative_tables_rejected():
    add = ring(kind="zn", n=3).add.tolist()
    # (2*0)*2 = 2 but 2*(0*2) = 0
    mul = [[0, 0, 2], [0, 1, 2], [0, 2, 0]]
    with pytest.raises(AxiomError) as err:
        build_ring({"kind": "tables", "add": add, "mul": mul, "zero": 0, "one": 1})
    assert "associativity" in str(err.value)


@pytest.mark.parametrize("spec", [
    {"kind": "gf", "q": 6},
    {"kind": "matrix", "m": 2, "q": 10},
    {"kind": "zn", "n": 1},
    {"kind": "chain", "p": 4, "e": 2},
    {"kind": "zn"},
    {"kind": "zn", "n": 4, "extra": 1},
    {"kind": "quaternion"},
    "not json",
])
def test_invalid_specs(spec):
    with pytest.raises(SpecError):
        build_ring(spec)


def test_spec_from_json_string():
    assert parse_ring_spec('{"kind": "zn", "n": 5}') == {"kind": "zn", "n": 5}


def test_order_limit():
    with pytest.raises(SpecError):
        ring(kind="matrix", m=3, q=2)


@pytest.mark.parametrize("spec,count", [
    ({"kind": "zn", "n": 4}, 3),
    ({"kind": "matrix", "m": 2, "q": 2}, 5),
    ({"kind": "zn", "n": 2}, 2),
    ({"kind": "zn", "n": 8}, 4),
    ({"kind": "zn", "n": 6}, 4),
    ({"kind": "gf", "q": 4}, 2),
    ({"kind": "chain", "p": 3, "e": 2}, 3),
])
def test_left_ideals_match_closure_oracle(spec, count):
    R = build_ring(spec)
    add, mul = R.add.tolist(), R.mul.tolist()
    oracle = all_closed_subsets(add, mul, R.zero, additive_rank_bound(R.order))
    got = left_ideals(R)
    assert len(got) == count
    assert {frozenset(I.elements) for I in got} == oracle
    assert [I.sort_key() for I in got] == sorted(I.sort_key() for I in got)


def test_jacobson_radical():
    assert jacobson_radical(ring(kind="zn", n=4)).elements == (0, 2)
    assert jacobson_radical(ring(kind="zn", n=2)).elements == (0,)
    assert jacobson_radical(ring(kind="zn", n=8)).elements == (0, 2, 4, 6)
    assert jacobson_radical(ring(kind="matrix", m=2, q=2)).elements == (0,)


def test_chain_detection():
    assert is_chain_ring(ring(kind="zn", n=4))
    assert not is_chain_ring(ring(kind="matrix", m=2, q=2))
    assert is_chain_ring(ring(kind="zn", n=2))
    assert not is_chain_ring(ring(kind="zn", n=6))


def test_chain_levels():
    lv = chain_levels(ring(kind="zn", n=4))
    assert [(I.elements, x) for I, x in lv] == [((0, 1, 2, 3), 1), ((0, 2), 2), ((0,), 0)]
    lv = chain_levels(ring(kind="zn", n=2))
    assert [(I.elements, x) for I, x in lv] == [((0, 1), 1), ((0,), 0)]
    lv = chain_levels(ring(kind="zn", n=8))
    assert len(lv) == 4 and [x for _, x in lv] == [1, 2, 4, 0]


def test_chain_levels_rejects_non_chain():
    with pytest.raises(NotChainRingError) as err:
        chain_levels(ring(kind="matrix", m=2, q=2))
    first, second = err.value.first, err.value.second
    assert not (first <= second or second <= first)


def test_idempotent_generators():
    R = ring(kind="matrix", m=2, q=2)
    ent = matrix_digits(2, 2, 2)
    first_col = R.ideal([i for i in range(16) if ent[i][0][1] == 0 and ent[i][1][1] == 0])
    e = idempotent_generator(R, first_col)
    assert ent[e].tolist() == [[1, 0], [0, 0]]
    assert idempotent_generator(R, R.whole) == R.one
    Z4 = ring(kind="zn", n=4)
    assert idempotent_generator(Z4, Z4.ideal([0, 2])) is None
    assert idempotent_generator(Z4, Z4.whole) == 1


def test_every_matrix_ideal_has_idempotent_generator():
    R = ring(kind="matrix", m=2, q=2)
    for I in left_ideals(R):
        e = idempotent_generator(R, I)
        assert e is not None
        assert R.mul[e, e] == e and R.left_multiples(e) == I


def test_simple_artinian():
    assert is_simple_artinian(ring(kind="matrix", m=2, q=2))
    assert is_simple_artinian(ring(kind="gf", q=4))
    assert not is_simple_artinian(ring(kind="zn", n=4))
    assert not is_simple_artinian(ring(kind="zn", n=6))


def test_tables_are_read_only():
    R = ring(kind="zn", n=4)
    with pytest.raises(ValueError):
        R.add[0, 0] = 1
    assert isinstance(R.neg, np.ndarray) and R.add[1, R.neg[1]] == 0
