import random
from fractions import Fraction

import pytest
from brute import layer_cohomology

from lix import fixtures
from lix.ainfty import (
    bar_differential,
    bar_differential_parts,
    build_ainfty,
    check_morphism,
    def_complex,
    gauge_transport,
    hom_from_linear,
    intrinsic_formality_check,
    is_infinity_morphism,
    is_infinity_quasi_iso,
    twist_by_map,
)
from lix.errors import NotAMorphism, NotTransferredStructure, StasheffViolation, TruncationMismatch, WrongDegree
from lix.graded import LinearMap, build_space, filtration_weight
from lix.linfty import check_filtration_compatibility, check_relations, curvature_filtration, twist
from lix.specseq import page


def test_stasheff_validation():
    assert fixtures.dual_numbers().ops
    m = fixtures.massey_m3()
    assert "cut off by the truncation" in m.report.describe()
    sp = build_space([("x", 1, 1), ("u", -1, 1), ("v", 0, 1)])
    with pytest.raises(StasheffViolation) as exc:
        build_ainfty(sp, {("u",): {"v": 1}, ("v",): {"x": 1}}, 3)
    assert exc.value.weight == 0 and exc.value.word == ("u",)
    with pytest.raises(StasheffViolation):
        build_ainfty(fixtures.truncated_poly().space, {("x", "x"): {"y": 1}, ("x", "y"): {"z": 1}, ("y", "x"): {"z": 1}}, 3)


def test_degrees_of_operations():
    with pytest.raises(WrongDegree):
        build_ainfty(build_space([("x", 0, 1)]), {("x", "x"): {"x": 1}}, 2)


@pytest.mark.parametrize("name", ["dual_numbers", "truncated_poly", "exact_m3", "massey_m3", "contractible_pair"])
def test_bar_differential_squares_to_zero(name):
    A = getattr(fixtures, name)()
    D = bar_differential(A)
    assert D.compose(D).is_zero()
    d1, d2 = bar_differential_parts(A)
    sp = D.source
    for b in sp.ids:
        x = sp.vector(b)
        assert d1(x) + d2(x) == D(x)
        assert all(sp[t].weight == sp[b].weight for t in d1(x).coeffs)
        assert all(sp[t].weight < sp[b].weight for t in d2(x).coeffs)


def test_d1_vanishes_for_minimal_algebras():
    d1, _ = bar_differential_parts(fixtures.exact_m3())
    assert d1.is_zero()


def test_def_complex_shape():
    A = fixtures.dual_numbers()
    dc = def_complex(A, A, 3)
    assert len(dc.space) == 2 * (2 + 4 + 8 + 16)
    assert all(b.weight == len(dc.key_of[b.id][0]) for b in dc.space.basis)
    assert check_filtration_compatibility(dc.algebra).ok
    with pytest.raises(TruncationMismatch):
        def_complex(A, fixtures.dual_numbers(2), 3)


@pytest.mark.parametrize("src,tgt", [("dual_numbers", "dual_numbers"), ("truncated_poly", "truncated_poly"),
                                     ("contractible_pair", "contractible_pair"), ("massey_m3", "trivial_products")])
def test_def_complex_relations(src, tgt):
    dc = def_complex(getattr(fixtures, src)(2), getattr(fixtures, tgt)(2), 2)
    assert check_relations(dc.algebra, 3).ok


def test_def_complex_relations_with_higher_target_operations():
    T = fixtures.exact_m3(2)
    assert any(len(w) == 3 for w in T.ops)
    assert check_relations(def_complex(T, T, 2).algebra, 3).ok


def test_hom_from_linear_degree():
    A = fixtures.truncated_poly()
    dc = def_complex(A, A, 2)
    f = LinearMap(A.space, A.space, {"x": A.space.vector("y")}, 1)
    with pytest.raises(WrongDegree):
        hom_from_linear(dc, f)


def _scale(A, lam):
    sp = A.space
    return LinearMap(sp, sp, {"one": sp.vector("one"), "x": lam * sp.vector("x")}, 0)


def test_strict_morphisms_are_mc():
    A = fixtures.dual_numbers()
    dc = def_complex(A, A, 3)
    for lam in (0, 1, Fraction(-3, 2)):
        F = hom_from_linear(dc, _scale(A, lam))
        assert is_infinity_morphism(A, A, F, 3, dc)
    sp = A.space
    swap = LinearMap(sp, sp, {"one": sp.vector("x"), "x": sp.vector("one")}, 0)
    rep = check_morphism(dc, hom_from_linear(dc, swap))
    assert not rep.mc and not rep.commutes
    assert filtration_weight(rep.defect) == 2  # the failure sits in weight 1


def test_mc_and_commutation_agree_on_random_elements():
    rng = random.Random(2)
    T, H = fixtures.exact_m3(), fixtures.truncated_poly()
    dc = def_complex(T, H, 3)
    deg0 = [b.id for b in dc.space.basis if b.degree == 0 and b.weight > 1]
    base = dc.identity()
    for _ in range(25):
        pick = rng.sample(deg0, rng.randint(0, 3))
        F = base + dc.space.element({b: rng.choice([-1, 1, 2]) for b in pick})
        rep = check_morphism(dc, F)
        assert rep.mc == rep.commutes
    good = base + dc.element(fixtures.EXACT_GAUGE)
    assert is_infinity_morphism(T, H, good, 3, dc)


def test_twist_by_identity():
    T, H = fixtures.exact_m3(), fixtures.truncated_poly()
    dc, D = twist_by_map(T, H, LinearMap(H.space, H.space, {a: H.space.vector(a) for a in H.space.ids}, 0), 3)
    assert curvature_filtration(D) >= 3
    mu1 = D.differential()
    for b in D.space.basis:
        assert filtration_weight(mu1(D.space.vector(b.id))) >= b.weight + 1


def test_low_pages_match_strict_complex():
    T, H = fixtures.exact_m3(), fixtures.truncated_poly()
    dcT = def_complex(T, H, 3)
    D = twist(dcT.algebra, dcT.identity())
    dcH = def_complex(H, H, 3)
    strict = twist(dcH.algebra, dcH.identity())
    assert not strict.curvature
    layers = dcT.weight_layer_dims()
    for p in range(1, 5):
        for n in sorted({b.degree for b in D.space.basis}):
            assert page(D, 1, p, n - p).dim == layers.get((p - 1, n), 0)
            assert page(D, 2, p, n - p).dim == layer_cohomology(strict, p, n)


def test_quasi_isomorphisms():
    B = fixtures.contractible_pair()
    A = build_ainfty(build_space([("x", 0, 1)]), {}, 3)
    dc = def_complex(A, B, 3)
    F = dc.element({("x",): {"x": 1}})
    assert is_infinity_quasi_iso(A, B, F, 3, dc)
    zero = build_ainfty(build_space([]), {}, 3)
    two = build_ainfty(build_space([("u", -1, 1), ("v", 0, 1)]), {("u",): {"v": 1}}, 3)
    assert is_infinity_quasi_iso(zero, two, def_complex(zero, two, 3).space.zero(), 3)
    # a linear map that is not a morphism
    D = fixtures.dual_numbers()
    dcD = def_complex(D, D, 3)
    sp = D.space
    with pytest.raises(NotAMorphism):
        is_infinity_quasi_iso(D, D, hom_from_linear(dcD, LinearMap(sp, sp, {"one": sp.vector("x"), "x": sp.vector("one")}, 0)), 3, dcD)
    # the zero map is a morphism but not a quasi-isomorphism
    assert not is_infinity_quasi_iso(A, B, dc.space.zero(), 3, dc)


def test_formality_verdicts():
    D = fixtures.dual_numbers()
    res = intrinsic_formality_check(D, D, 3)
    assert res.formal and not res.certificate.steps
    res = intrinsic_formality_check(fixtures.trivial_products(), fixtures.massey_m3(), 3)
    assert not res.formal and res.obstruction_weight == 2 and not res.vanishing
    res = intrinsic_formality_check(fixtures.truncated_poly(), fixtures.exact_m3(), 3)
    assert res.formal and len(res.certificate.steps) == 1
    assert set(res.complex.by_weight(res.certificate.alpha)) == {1}
    assert filtration_weight(res.certificate.alpha) == 2
    assert res.morphism == res.complex.identity() + res.complex.element(fixtures.EXACT_GAUGE)


def test_formality_input_checks():
    H = fixtures.truncated_poly()
    with pytest.raises(NotTransferredStructure):
        intrinsic_formality_check(H, fixtures.dual_numbers(), 3)
    other = gauge_transport(H, {})
    other.ops[("x", "x")] = 2 * other.ops[("x", "x")]
    with pytest.raises(NotTransferredStructure):
        intrinsic_formality_check(H, other, 3)
