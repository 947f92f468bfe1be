"""Tests for labels, segments, parameters, and the duality calculus."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from periodlab import (
    AParameter,
    ASummand,
    CuspidalLabel,
    Segment,
    SelfDualityType,
    WDParameter,
    arthur_to_l,
    builtin_catalog,
    dimension,
    dual_segment,
    is_tempered,
    labels_equal,
    multiplicities,
    segment_self_duality,
    segments_equivalent,
    sl2_duality_sign,
)
from periodlab.errors import CatalogError, CatalogMismatchError, ConsistencyError

CAT = builtin_catalog()


def seg(name, k=1, twist=0):
    return Segment(CAT.label(name), k, Fraction(twist))


# -- labels ------------------------------------------------------------


def test_label_defaults_self_dual():
    lab = CuspidalLabel("tau", 2, SelfDualityType.SYMPLECTIC)
    assert lab.dual_name == "tau"
    assert lab.is_self_dual
    assert lab.unitary


def test_label_rejects_bad_names_and_dims():
    with pytest.raises(ConsistencyError):
        CuspidalLabel("2tau", 1, SelfDualityType.ORTHOGONAL)
    with pytest.raises(ConsistencyError):
        CuspidalLabel("St", 1, SelfDualityType.ORTHOGONAL)
    with pytest.raises(ConsistencyError):
        CuspidalLabel("tau", 0, SelfDualityType.ORTHOGONAL)


def test_label_symplectic_needs_even_dim():
    with pytest.raises(ConsistencyError):
        CuspidalLabel("tau", 3, SelfDualityType.SYMPLECTIC)


def test_label_duality_declarations_must_be_coherent():
    with pytest.raises(ConsistencyError):
        CuspidalLabel("tau", 1, SelfDualityType.NOT_SELF_DUAL)
    with pytest.raises(ConsistencyError):
        CuspidalLabel("tau", 1, SelfDualityType.ORTHOGONAL, dual_name="other")
    lab = CuspidalLabel("tau", 1, SelfDualityType.NOT_SELF_DUAL,
                        dual_name="taubar")
    assert not lab.is_self_dual


def test_labels_equal_flags_name_collisions():
    a = CuspidalLabel("tau", 2, SelfDualityType.SYMPLECTIC)
    b = CuspidalLabel("tau", 2, SelfDualityType.ORTHOGONAL)
    assert labels_equal(a, a)
    assert not labels_equal(a, CAT.label("q8"))
    with pytest.raises(CatalogMismatchError):
        labels_equal(a, b)


def test_sign_round_trip():
    for t in SelfDualityType:
        assert SelfDualityType.from_sign(t.sign) is t
    with pytest.raises(ValueError):
        SelfDualityType.from_sign(2)


# -- segments and parameters --------------------------------------------


def test_segment_dim_and_twist_coercion():
    s = Segment(CAT.label("q8"), 3, Fraction(1, 2))
    assert s.dim == 6
    assert s.twist == Fraction(1, 2)
    assert Segment(CAT.label("q8"), 2, 1).twist == Fraction(1)


def test_segment_rejects_float_twists_and_bad_k():
    with pytest.raises(TypeError):
        Segment(CAT.label("q8"), 1, 0.5)
    with pytest.raises(ValueError):
        Segment(CAT.label("q8"), 0)


def test_parameter_canonical_order():
    p = WDParameter.of([seg("q8", 3), seg("trivial"), seg("q8b")])
    names = [(s.cuspidal.name, s.k) for s in p.segments]
    assert names == [("trivial", 1), ("q8b", 1), ("q8", 3)]
    assert p.dim == 9
    assert dimension(p) == 9


def test_parameter_order_breaks_ties_by_twist():
    p = WDParameter.of([seg("chi3", 1, Fraction(1, 2)),
                        seg("chi3", 1, Fraction(-1, 2))])
    assert [s.twist for s in p.segments] == [Fraction(-1, 2), Fraction(1, 2)]


def test_segments_equivalent():
    assert segments_equivalent(seg("q8", 2), seg("q8", 2))
    assert not segments_equivalent(seg("q8", 2), seg("q8", 3))
    assert not segments_equivalent(seg("q8", 2), seg("q8", 2, Fraction(1)))
    assert not segments_equivalent(seg("q8", 2), seg("q8b", 2))


# -- duality -------------------------------------------------------------


def test_sl2_duality_sign_alternates():
    assert [sl2_duality_sign(k) for k in range(1, 7)] == [1, -1, 1, -1, 1, -1]


def test_dual_segment_self_dual():
    d = dual_segment(seg("q8", 2, Fraction(1, 2)))
    assert d.cuspidal.name == "q8"
    assert d.k == 2
    assert d.twist == Fraction(-1, 2)


def test_dual_segment_needs_catalog_for_nsd_labels():
    s = seg("chi3", 2)
    with pytest.raises(CatalogError):
        dual_segment(s)
    d = dual_segment(s, CAT)
    assert d.cuspidal.name == "chi3bar"
    assert d.k == 2


def test_segment_self_duality_table():
    sd = SelfDualityType
    cases = [
        ("q8", 1, sd.SYMPLECTIC),    # symplectic x odd-k symmetric
        ("q8", 2, sd.ORTHOGONAL),    # symplectic x even-k skew
        ("trivial", 1, sd.ORTHOGONAL),
        ("trivial", 2, sd.SYMPLECTIC),
        ("s3", 3, sd.ORTHOGONAL),
        ("s3", 4, sd.SYMPLECTIC),
        ("chi3", 1, sd.NOT_SELF_DUAL),
        ("chi3", 2, sd.NOT_SELF_DUAL),
    ]
    for name, k, want in cases:
        assert segment_self_duality(seg(name, k)) is want, (name, k)


def test_twist_kills_self_duality():
    assert segment_self_duality(
        seg("q8", 1, Fraction(1, 3))) is SelfDualityType.NOT_SELF_DUAL


def test_is_tempered():
    assert is_tempered(WDParameter.of([seg("q8"), seg("s3", 2)]))
    assert not is_tempered(WDParameter.of([seg("q8", 1, Fraction(1, 2))]))
    assert is_tempered(WDParameter.of([]))


# -- multiplicities -------------------------------------------------------


def test_multiplicities_groups_equal_segments():
    p = WDParameter.of([seg("q8"), seg("q8"), seg("q8", 3), seg("trivial", 2)])
    table = {(s.cuspidal.name, s.k): m for s, m in multiplicities(p)}
    assert table == {("q8", 1): 2, ("q8", 3): 1, ("trivial", 2): 1}


def test_multiplicities_separates_twists():
    p = WDParameter.of([seg("q8", 1, Fraction(1, 2)), seg("q8", 1)])
    assert sorted(m for _, m in multiplicities(p)) == [1, 1]


# -- the Arthur layer ------------------------------------------------------


def test_asummand_requires_positive_multiplicities():
    with pytest.raises(ValueError):
        ASummand(CAT.label("q8"), 0, 1)
    with pytest.raises(ValueError):
        ASummand(CAT.label("q8"), 1, 0)


def test_arthur_to_l_twist_ladder():
    a = AParameter.of([ASummand(CAT.label("q8"), 1, 3)])
    p = arthur_to_l(a)
    assert sorted(s.twist for s in p.segments) == [-1, 0, 1]
    assert all(s.k == 1 for s in p.segments)
    assert p.dim == a.dim == 6


def test_arthur_to_l_half_integral_twists():
    a = AParameter.of([ASummand(CAT.label("s3"), 2, 2)])
    p = arthur_to_l(a)
    assert sorted(s.twist for s in p.segments) == [
        Fraction(-1, 2), Fraction(1, 2)]
    assert all(s.k == 2 for s in p.segments)


def test_arthur_trivial_factor_is_identity_on_segments():
    a = AParameter.of([ASummand(CAT.label("q8"), 3, 1),
                       ASummand(CAT.label("trivial"), 1, 1)])
    p = arthur_to_l(a)
    assert p == WDParameter.of([seg("q8", 3), seg("trivial")])
    assert is_tempered(p)


label_names = st.sampled_from(sorted(CAT.entries))


@given(st.lists(
    st.builds(lambda n, b, a: ASummand(CAT.label(n), b, a),
              label_names, st.integers(1, 4), st.integers(1, 4)),
    min_size=1, max_size=4))
def test_arthur_to_l_preserves_dimension(summands):
    a = AParameter.of(summands)
    assert arthur_to_l(a).dim == a.dim


@given(st.lists(
    st.builds(lambda n, k, t: Segment(CAT.label(n), k, t),
              label_names, st.integers(1, 3),
              st.fractions(min_value=-2, max_value=2, max_denominator=2)),
    min_size=0, max_size=5))
def test_parameter_order_is_canonical(segments):
    p = WDParameter.of(segments)
    q = WDParameter.of(reversed(p.segments))
    assert p == q
    assert p.dim == sum(s.dim for s in segments)
