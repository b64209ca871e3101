import numpy as np
import pytest

from epwb.codes import Ambient, IsometryWitness, span_code
from epwb.symmetry import aut_group, orbits, trivial_group
from epwb.weights import (
    WeightContext,
    aw_profile,
    hamming,
    profile_preserved,
    swc_profile,
)

from conftest import make


def test_hamming():
    assert hamming((0, 0, 0)) == 0
    assert hamming((1, 0, 3)) == 2


def test_swc_examples():
    A = make("Z4")
    idx = orbits(A, aut_group(A))
    p = swc_profile((1, 3, 2, 0), idx)
    assert p.as_dict() == {1: 2, 2: 1, 0: 1}
    assert swc_profile((0, 0, 0), idx).as_dict() == {0: 3}
    t = swc_profile((1, 3, 3, 0), orbits(A, trivial_group(A)))
    assert t.as_dict() == {0: 1, 1: 1, 3: 2}


def test_aw_examples():
    A = make("Z4")
    p = aw_profile((1, 3, 2, 0), A)
    assert p.as_dict() == {(0,): 2, (0, 2): 1, (0, 1, 2, 3): 1}
    assert aw_profile((0, 0), A).as_dict() == {(0, 1, 2, 3): 2}
    F = make("F2^2")
    # e1 = (1,0) is index 2, e2 = (0,1) is index 1
    assert aw_profile((2, 1), F).as_dict() == {(0,): 2}


def test_profile_json():
    A = make("Z4")
    ctx = WeightContext(A, "aw")
    assert ctx.profile((2, 0)).to_json() == {
        "kind": "aw", "counts": [{"ideal": [0, 2], "n": 1}, {"ideal": [0, 1, 2, 3], "n": 1}]}
    assert WeightContext(A, "hamming").profile((2, 0)).to_json() == {"kind": "hamming",
                                                                   "weight": 1}
    assert WeightContext(A, "swc").profile((3, 0)).to_json() == {
        "kind": "swc", "counts": [{"orbit": 0, "n": 1}, {"orbit": 1, "n": 1}]}


def test_unknown_kind():
    with pytest.raises(ValueError):
        WeightContext(make("Z4"), "lee")


@pytest.mark.parametrize("kind", ["hamming", "swc", "aw"])
@pytest.mark.parametrize("name", ["Z4", "F2^2", "M2F2", "Z2xZ8"])
def test_profile_ids_agree_with_profiles(kind, name):
    A = make(name)
    ctx = WeightContext(A, kind, aut_group(A))
    amb = Ambient(A, 2)
    digits = amb.digits(np.arange(amb.size))
    ids = ctx.profile_ids(digits)
    profiles = [ctx.profile(tuple(int(v) for v in row)) for row in digits]
    for i in range(len(digits)):
        for j in range(0, len(digits), 7):
            assert (ids[i] == ids[j]) == (profiles[i] == profiles[j])


def _map_on_full_code(A, images):
    C = span_code(A, 1, [(a,) for a in range(A.order)])
    img = C.local(np.asarray(images)[C.words])
    return IsometryWitness(C, C, img)


def test_profile_preserved_examples():
    A = make("Z4")
    ctx = WeightContext(A, "hamming")
    ident = _map_on_full_code(A, [0, 1, 2, 3])
    for kind in ("hamming", "swc", "aw"):
        assert profile_preserved(ident, kind, ctx)
    doubling = _map_on_full_code(A, [0, 2, 0, 2])
    assert not profile_preserved(doubling, "hamming", ctx)
    unit = _map_on_full_code(A, [0, 3, 2, 1])
    for kind in ("hamming", "swc", "aw"):
        assert profile_preserved(unit, kind, ctx)
