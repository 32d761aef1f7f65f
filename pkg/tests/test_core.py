import pytest

from lieforge.core import (
    ActionNotDerivation,
    BasisLabel,
    LabelError,
    LieAlgebra,
    center,
    derived_series,
    direct_sum,
    from_json_bytes,
    is_centerless,
    is_nilpotent,
    is_perfect,
    lower_central_series,
    permute_basis,
    quasi_cyclic_check,
    semidirect_product,
    to_json_bytes,
    verify_jacobi,
    weight_vectors,
)
from lieforge.linalg import QQ


def sl2():
    labels = [
        BasisLabel("sl2", "e", level=0),
        BasisLabel("sl2", "h", level=0),
        BasisLabel("sl2", "f", level=0),
    ]
    table = {(0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2}}
    return LieAlgebra(labels, table)


def heisenberg3():
    labels = [
        BasisLabel("v", 1, level=1),
        BasisLabel("v", 2, level=1),
        BasisLabel("w", 1, level=2),
    ]
    return LieAlgebra(labels, {(0, 1): {2: 1}})


def test_label_round_trip():
    for l in [
        BasisLabel("x", 3, level=4, copy=2),
        BasisLabel("sl2", "h", level=0),
        BasisLabel("c", 0, level=2),
    ]:
        assert BasisLabel.parse(l.as_str()) == l


def test_label_rejects_numeric_string_index():
    with pytest.raises(LabelError):
        BasisLabel("x", "12")


def test_sl2_is_a_lie_algebra():
    a = sl2()
    rep = verify_jacobi(a)
    assert rep.ok
    assert rep.checked == 1
    assert is_perfect(a)
    assert is_centerless(a)
    assert not is_nilpotent(a)
    assert len(derived_series(a)) == 1


def test_jacobi_failure_detected():
    bad = LieAlgebra(
        [BasisLabel("a", i) for i in range(1, 4)],
        {(0, 1): {2: 1}, (0, 2): {0: 1}},
    )
    rep = verify_jacobi(bad)
    assert not rep.ok
    (i, j, k, res) = rep.failures[0]
    assert (i, j, k) == (0, 1, 2)
    assert res == {2: QQ(1)}


def test_heisenberg_structure():
    h = heisenberg3()
    assert verify_jacobi(h).ok
    assert is_nilpotent(h)
    assert not is_perfect(h)
    assert center(h).dim == 1
    assert lower_central_series(h)[-1].dim == 0
    assert quasi_cyclic_check(h) is None


def test_quasi_cyclic_failure_reports_layer():
    labels = [
        BasisLabel("v", 1, level=1),
        BasisLabel("v", 2, level=1),
        BasisLabel("w", 1, level=2),
        BasisLabel("u", 1, level=3),
    ]
    a = LieAlgebra(labels, {(0, 1): {2: 1}})
    assert quasi_cyclic_check(a) == 3


def test_direct_sum_retags_copies():
    h = heisenberg3()
    s = direct_sum(h, h)
    assert s.dim == 6
    assert s.labels[3].copy == 1
    assert center(s).dim == 2
    assert verify_jacobi(s).ok
    assert s.grading == ((0, 1, 3, 4), (2, 5))


def natural_action():
    # e.v2 = v1, h.v1 = v1, h.v2 = -v2, f.v1 = v2
    return {
        0: {1: {0: 1}},
        1: {0: {0: 1}, 1: {1: -1}},
        2: {0: {1: 1}},
    }


def test_semidirect_product_sl2_on_natural_module():
    v = LieAlgebra([BasisLabel("v", 1, level=1), BasisLabel("v", 2, level=1)], {})
    a = semidirect_product(sl2(), v, natural_action())
    assert a.dim == 5
    assert verify_jacobi(a).ok
    assert a.levi == ((0, 1, 2), (3, 4))
    assert is_centerless(a)
    assert weight_vectors(a) == [
        (QQ(2),),
        (QQ(0),),
        (QQ(-2),),
        (QQ(1),),
        (QQ(-1),),
    ]


def test_semidirect_rejects_non_homomorphism():
    v = LieAlgebra([BasisLabel("v", 1, level=1), BasisLabel("v", 2, level=1)], {})
    bad = natural_action()
    bad[1] = {0: {0: 2}, 1: {1: -2}}
    with pytest.raises(ActionNotDerivation):
        semidirect_product(sl2(), v, bad)


def test_semidirect_rejects_non_derivation():
    h = heisenberg3()
    # scaling only the two generators does not scale the bracket correctly
    action = {0: {0: {0: 1}, 1: {1: 1}}}
    one = LieAlgebra([BasisLabel("t", 1, level=0)], {})
    with pytest.raises(ActionNotDerivation):
        semidirect_product(one, h, action)


def test_semidirect_degrades_to_direct_sum():
    h = heisenberg3()
    s = direct_sum(sl2(), h)
    t = semidirect_product(sl2(), h, {})
    assert to_json_bytes(s) == to_json_bytes(t)


def test_permute_basis_preserves_brackets():
    h = heisenberg3()
    p = permute_basis(h, [2, 0, 1])
    assert verify_jacobi(p).ok
    i = p.index_of(BasisLabel("v", 1, level=1))
    j = p.index_of(BasisLabel("v", 2, level=1))
    k = p.index_of(BasisLabel("w", 1, level=2))
    assert p.bracket({i: QQ(1)}, {j: QQ(1)}) == {k: QQ(1)}


def test_serialization_round_trip_is_byte_identical():
    a = semidirect_product(sl2(), heisenberg3(), {})
    data = to_json_bytes(a)
    b = from_json_bytes(data)
    assert to_json_bytes(b) == data
    assert b.levi == a.levi
    assert b.grading == a.grading


def test_fraction_coefficients_survive_round_trip():
    a = LieAlgebra(
        [BasisLabel("a", 1), BasisLabel("a", 2), BasisLabel("a", 3)],
        {(0, 1): {2: QQ(-7, 3)}},
    )
    b = from_json_bytes(to_json_bytes(a))
    assert b.bracket_basis(0, 1) == {2: QQ(-7, 3)}
