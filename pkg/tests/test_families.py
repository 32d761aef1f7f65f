from fractions import Fraction
from functools import cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieforge.core import (
    BasisLabel,
    center,
    is_centerless,
    is_nilpotent,
    is_perfect,
    quasi_cyclic_check,
    to_json_bytes,
    verify_jacobi,
    weight_vectors,
)
from lieforge.families import (
    BracketComponentSpec,
    EvenN,
    GNParams,
    InvalidParameters,
    JacobiFailure,
    PRESET_NAMES,
    TowerSpec,
    _model_nilradical_unchecked,
    _seeded_completion,
    _slm_nilradical,
    build_direct_sum_family,
    build_gn,
    build_model_nilradical,
    build_sl2_gn,
    build_sl2_heisenberg,
    build_slm_quasicyclic,
    build_three_gen_nilradical,
    build_tower,
    build_transvectant_algebra,
    check_angelopoulos_conditions,
    preset,
    solve_bracket_coefficients,
)
from lieforge.linalg import QQ
from lieforge.sl2 import weights_to_multiplicities


def br(alg, la, lb):
    """Bracket of two labelled basis vectors as a label->value dict."""
    cols = alg.bracket_basis(alg.index_of(la), alg.index_of(lb))
    return {alg.labels[k].as_str(): v for k, v in cols.items()}


def lab(ns, i, level, copy=None):
    return BasisLabel(ns, i, level=level, copy=copy)


@cache
def model5():
    return build_model_nilradical(5)


@cache
def gn511():
    return build_sl2_gn(GNParams(5, 1, 1))


# ---------------------------------------------------------------------------
# model nilradical


def test_model_dimension_and_structure():
    a = model5()
    assert a.dim == 38
    assert verify_jacobi(a).ok
    assert is_nilpotent(a)
    assert quasi_cyclic_check(a) is None
    assert center(a).dim == 18


def test_model_bracket_samples():
    a = model5()
    assert br(a, lab("x", 1, 1), lab("x", 2, 1)) == {"c:2:1:": QQ(1)}
    assert br(a, lab("x", 1, 1), lab("y", 1, 1)) == {"z:2:1:": QQ(1)}
    assert br(a, lab("x", 1, 1), lab("z", 1, 2)) == {"x:3:1:": QQ(1)}
    assert br(a, lab("z", 1, 2), lab("x", 1, 3)) == {"y:5:1:": QQ(-1)}
    assert br(a, lab("z", 2, 2), lab("x", 1, 3)) == {"y:5:2:": QQ(-1)}
    assert br(a, lab("x", 1, 1), lab("x", 1, 4)) == {"x:5:1:": QQ(1)}


def test_model_length_validation():
    with pytest.raises(InvalidParameters):
        build_model_nilradical(4)
    with pytest.raises(EvenN):
        build_model_nilradical(6)
    with pytest.raises(InvalidParameters):
        build_model_nilradical("5")


def test_even_length_fails_jacobi_without_the_gate():
    a = _model_nilradical_unchecked(6)
    rep = verify_jacobi(a, limit_failures=1)
    assert not rep.ok
    i, j, k, res = rep.failures[0]
    assert (i, j, k) == (0, 5, 8)
    assert a.labels[i].as_str() == "x:1:1:"
    assert a.labels[j].as_str() == "z:2:1:"
    assert a.labels[k].as_str() == "x:3:1:"
    assert res == {a.index_of(lab("y", 1, 6)): QQ(1)}


# ---------------------------------------------------------------------------
# three generator nilradical


def test_three_gen_dimension_and_structure():
    a = build_three_gen_nilradical(5)
    assert a.dim == 58
    assert verify_jacobi(a).ok
    assert is_nilpotent(a)
    assert quasi_cyclic_check(a) is None
    assert center(a).dim == 24


def test_three_gen_mirrors_and_corrections():
    a = build_three_gen_nilradical(5)
    assert br(a, lab("y", 1, 1), lab("y", 2, 1)) == {"c:2:1:": QQ(1)}
    assert br(a, lab("y", 1, 1), lab("m", 1, 1)) == {"d:2:1:": QQ(1)}
    assert br(a, lab("z", 1, 2), lab("y", 1, 3)) == {"m:5:1:": QQ(-1)}
    assert br(a, lab("x", 1, 1), lab("y", 1, 4)) == {"m:5:1:": QQ(-1)}
    assert br(a, lab("x", 1, 1), lab("y", 2, 4)) == {"m:5:2:": QQ(-1)}


# ---------------------------------------------------------------------------
# two parameter family


def test_gn_seed_brackets_follow_the_parameter_mean():
    a = build_gn(GNParams(5, 2, 3))
    g = QQ(5, 2)
    assert br(a, lab("x", 1, 1), lab("y", 2, 5)) == {"y:4:1:": g}
    assert br(a, lab("y", 1, 1), lab("x", 2, 5)) == {"y:4:1:": -g}
    assert br(a, lab("z", 1, 2), lab("x", 2, 4)) == {"y:4:1:": QQ(5)}
    assert br(a, lab("z", 1, 2), lab("x", 1, 4)) == {}
    assert br(a, lab("z", 2, 2), lab("x", 1, 4)) == {"y:4:1:": QQ(-10)}


def test_gn_equal_parameters():
    a = build_gn(GNParams(5, 1, 1))
    assert a.dim == 38
    assert quasi_cyclic_check(a) is None
    assert center(a).dim == 6
    assert br(a, lab("x", 1, 1), lab("y", 2, 5)) == {"y:4:1:": QQ(1)}
    assert br(a, lab("z", 1, 2), lab("x", 2, 4)) == {"y:4:1:": QQ(2)}


@settings(max_examples=10, deadline=None)
@given(
    st.fractions(min_value=Fraction(-5), max_value=Fraction(5), max_denominator=6),
    st.fractions(min_value=Fraction(-5), max_value=Fraction(5), max_denominator=6),
)
def test_gn_is_a_lie_algebra_for_any_parameters(a, b):
    alg = build_gn(GNParams(5, a, b))
    s = QQ(a.numerator, a.denominator) + QQ(b.numerator, b.denominator)
    assert br(alg, lab("z", 1, 2), lab("x", 2, 4)) == ({"y:4:1:": s} if s else {})


def test_gn_length_validation():
    with pytest.raises(EvenN):
        GNParams(6, 1, 1)
    with pytest.raises(InvalidParameters):
        GNParams(3, 1, 1)


def test_seeded_completion_matches_the_table_when_parameters_agree():
    assert to_json_bytes(_seeded_completion(GNParams(7, 3, 3))) == to_json_bytes(
        build_gn(GNParams(7, 3, 3))
    )


def test_seeded_completion_is_infeasible_for_distinct_parameters():
    with pytest.raises(JacobiFailure, match="974 equations, 49 families"):
        _seeded_completion(GNParams(5, 2, 3))


# ---------------------------------------------------------------------------
# sl2 extension


def test_sl2_extension_dimension_center_perfection():
    a = gn511()
    assert a.dim == 41
    assert verify_jacobi(a).ok
    assert center(a).dim == 1
    assert is_perfect(a)


def test_sl2_extension_for_generic_parameters():
    a = build_sl2_gn(GNParams(5, QQ(1, 60), QQ(1, 60)))
    b = build_sl2_gn(GNParams(5, 2, 3))
    for alg in (a, b):
        assert alg.dim == 41
        assert center(alg).dim == 1
        assert is_perfect(alg)


def test_sl2_action_samples():
    a = gn511()
    h = lab("sl2", "h1", 0)
    e = lab("sl2", "e12", 0)
    f = lab("sl2", "f12", 0)
    assert br(a, h, lab("x", 1, 1)) == {"x:1:1:": QQ(1)}
    assert br(a, e, lab("x", 1, 1)) == {}
    assert br(a, e, lab("x", 2, 1)) == {"x:1:1:": QQ(1)}
    assert br(a, f, lab("x", 1, 1)) == {"x:1:2:": QQ(1)}


def test_nilradical_module_multiplicities():
    a = gn511()
    wts = weight_vectors(a)
    nil = [int(wts[j][0]) for j in range(3, a.dim)]
    assert weights_to_multiplicities(nil) == {0: 1, 1: 2, 2: 1, 3: 2, 4: 2, 5: 2}


# ---------------------------------------------------------------------------
# sums and towers


def test_direct_sum_of_two_copies():
    a = build_direct_sum_family([GNParams(5, 1, 1)] * 2)
    assert a.dim == 79
    assert center(a).dim == 2
    assert is_perfect(a)


def test_single_summand_is_the_plain_extension():
    a = build_direct_sum_family([GNParams(5, 1, 1)])
    assert to_json_bytes(a) == to_json_bytes(gn511())


def test_direct_sum_requires_matching_lengths():
    with pytest.raises(InvalidParameters):
        build_direct_sum_family([GNParams(5, 1, 1), GNParams(7, 1, 1)])
    with pytest.raises(InvalidParameters):
        build_direct_sum_family([])


def test_tower_dimensions_and_centers():
    p = GNParams(5, 1, 1)
    k2r = build_tower(TowerSpec((p, p), "r"))
    k2l = build_tower(TowerSpec((p, p), "l"))
    k3 = build_tower(TowerSpec((p, p, p), "rr"))
    assert (k2r.dim, k2l.dim, k3.dim) == (79, 79, 117)
    assert (center(k2r).dim, center(k2l).dim, center(k3).dim) == (2, 2, 3)
    for alg in (k2r, k2l, k3):
        assert is_perfect(alg)


def test_tower_orientation_decides_where_cross_products_land():
    p = GNParams(5, 1, 1)
    k2r = build_tower(TowerSpec((p, p), "r"))
    k2l = build_tower(TowerSpec((p, p), "l"))
    a = lab("x", 1, 1, copy=1)
    b = lab("x", 2, 1, copy=2)
    assert br(k2r, a, b) == {"c:2:1:1": QQ(1)}
    assert br(k2l, a, b) == {"c:2:1:2": QQ(1)}


def test_tower_without_cross_terms_is_the_direct_sum():
    p = GNParams(5, 1, 1)
    zc = build_tower(TowerSpec((p, p), "r"), _zero_cross=True)
    assert to_json_bytes(zc) == to_json_bytes(build_direct_sum_family([p, p]))


def test_left_oriented_triple_tower_is_rejected():
    p = GNParams(5, 1, 1)
    with pytest.raises(JacobiFailure):
        build_tower(TowerSpec((p, p, p), "ll"))


def test_tower_spec_validation():
    p = GNParams(5, 1, 1)
    with pytest.raises(InvalidParameters):
        TowerSpec((p,), "")
    with pytest.raises(InvalidParameters):
        TowerSpec((p, p), "x")
    with pytest.raises(InvalidParameters):
        TowerSpec((p, p), "rr")
    with pytest.raises(InvalidParameters):
        TowerSpec((p, GNParams(7, 1, 1)), "r")


# ---------------------------------------------------------------------------
# higher rank


def test_slm_nilradical_structure():
    a = _slm_nilradical(3, 5)
    assert a.dim == 104
    assert verify_jacobi(a).ok
    assert is_nilpotent(a)
    assert quasi_cyclic_check(a) is None


def test_slm_nilradical_product_signs():
    a = _slm_nilradical(3, 5)
    assert br(a, lab("z", 1, 2), lab("x", 1, 3)) == {"y:5:1:": QQ(-1)}
    assert br(a, lab("y", 1, 1), lab("x", 1, 4)) == {"y:5:1:": QQ(1)}
    assert br(a, lab("x", 1, 1), lab("x", 1, 4)) == {"x:5:1:": QQ(1)}
    assert br(a, lab("x", 1, 1), lab("z", 1, 2)) == {"x:3:1:": QQ(1)}


def test_slm_extension():
    a = build_slm_quasicyclic(3, 5)
    assert a.dim == 112
    assert is_perfect(a)
    assert center(a).dim == 0
    assert a.labels[8].as_str() == "x:1:1:"
    assert a.labels[12].as_str() == "y:1:2:"
    assert a.bracket_basis(8, 12) == {15: QQ(1)}
    assert a.labels[15].as_str() == "z:2:2:"


def test_slm_validation():
    with pytest.raises(InvalidParameters):
        build_slm_quasicyclic(1, 5)
    with pytest.raises(EvenN):
        build_slm_quasicyclic(3, 6)


# ---------------------------------------------------------------------------
# heisenberg extension


def test_heisenberg_extensions():
    a = build_sl2_heisenberg(1)
    b = build_sl2_heisenberg(2)
    assert (a.dim, b.dim) == (6, 8)
    assert center(a).dim == 1
    assert center(b).dim == 1
    assert br(b, lab("v", 1, 1), lab("v", 4, 1)) == {"c:2:1:": QQ(1)}
    assert br(b, lab("v", 2, 1), lab("v", 3, 1)) == {"c:2:1:": QQ(-1, 3)}
    with pytest.raises(InvalidParameters):
        build_sl2_heisenberg(0)


# ---------------------------------------------------------------------------
# weighted components


def test_solver_accepts_a_trivially_consistent_component():
    got = solve_bracket_coefficients([1, 0], [BracketComponentSpec(1, 1, 2, 1, None)])
    assert got == (QQ(1),)


def test_solver_reports_an_infeasible_pair():
    comps = [
        BracketComponentSpec(1, 1, 2, 1, None),
        BracketComponentSpec(2, 2, 1, 1, None),
    ]
    assert solve_bracket_coefficients([2, 2], comps) is None


def test_transvectant_build_requires_coefficients():
    with pytest.raises(InvalidParameters):
        build_transvectant_algebra([1, 0], [BracketComponentSpec(1, 1, 2, 1, None)])


def test_alternating_square_conditions():
    good = check_angelopoulos_conditions([4, 6, 8, 10])
    assert good.ok
    assert good.witnesses == ()
    bad = check_angelopoulos_conditions([4, 6, 8, 11])
    assert not bad.ok
    assert "weight 11 missing from the alternating square of 8" in bad.witnesses


# ---------------------------------------------------------------------------
# presets


@pytest.mark.parametrize(
    "name,kwargs,dim,perfect,centerless",
    [
        ("angelopoulos_35", {}, 35, True, True),
        ("example_4_2a", dict(m=4, n=5, r=(0, 2)), 48, True, True),
        ("example_4_2b", dict(m=4, n=4, r=(0,)), 45, True, True),
        ("example_4_4", {}, 53, False, True),
        ("theorem_4_5", dict(n=6), 33, False, True),
        ("example_4_7", {}, 29, False, True),
        ("theorem_4_7", dict(n=6), 31, True, False),
    ],
)
def test_preset_catalogue(name, kwargs, dim, perfect, centerless):
    a = preset(name, **kwargs)
    assert a.dim == dim
    assert verify_jacobi(a).ok
    assert is_perfect(a) is perfect
    assert is_centerless(a) is centerless


def test_preset_names_are_registered():
    assert len(PRESET_NAMES) == 7
    assert "angelopoulos_35" in PRESET_NAMES


def test_preset_validation():
    with pytest.raises(InvalidParameters):
        preset("no_such_family")
    with pytest.raises(InvalidParameters):
        preset("example_4_2a", m=4, n=5, r=(0, 1))
    with pytest.raises(InvalidParameters):
        preset("example_4_2a", m=4, n=5, r=(0,))
    with pytest.raises(InvalidParameters):
        preset("example_4_2a", m=6, n=5, r=(0, 2))
    with pytest.raises(InvalidParameters):
        preset("theorem_4_5", n=6, r=(4, 5, 9))
