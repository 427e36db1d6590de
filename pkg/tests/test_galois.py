"""Hopf-Galois extensions: the Galois and translation maps, relative cyclic
objects, the slot-product comparison, base change, and graded folding."""

import pytest
from hypothesis import given, settings, strategies as st

from hopfcyclic.crossed import adjoint
from hopfcyclic.cyclic import hc_connes
from hopfcyclic.galois import (
    AlgebraData,
    ComoduleAlgebra,
    _pair_product,
    ab_crossed_module,
    base_from_vectors,
    burghelea_graded,
    coinvariants,
    comodule_from_hopf,
    crossed_product,
    galois_check,
    lambda_iso,
    regular_bimodule,
    relative_cyclic,
    separable_base_change,
    strongly_graded,
    trace_map,
    twisted_group_algebra,
    um_actions,
    underlying_algebra,
    unit_base,
    verify_algebra,
    verify_bimodule,
    verify_comodule_algebra,
)
from hopfcyclic.hopf import FiniteGroup, group_algebra
from hopfcyclic.linalg import QQ, SparseMatrix


@pytest.fixture(scope="module")
def kz2():
    return group_algebra(FiniteGroup.cyclic(2), QQ)


@pytest.fixture(scope="module")
def kz3():
    return group_algebra(FiniteGroup.cyclic(3), QQ)


@pytest.fixture(scope="module")
def kz4():
    return group_algebra(FiniteGroup.cyclic(4), QQ)


def trivial_coaction_comodule(h, name):
    one = h.field.one
    co = SparseMatrix(
        h.dim * h.dim, h.dim, h.field,
        {j: {j * h.dim + u: c for u, c in h.unit.items()} for j in range(h.dim)},
    )
    return ComoduleAlgebra(h, h.basis, h.mult, h.unit, co, name=name)


# ---------------------------------------------------------------------------
# algebras, comodule algebras, bimodules
# ---------------------------------------------------------------------------


def test_verify_algebra_accepts_group_algebra(kz3):
    assert verify_algebra(underlying_algebra(kz3)).ok


def test_verify_algebra_reports_witness_triple():
    # x*x = e while x*e = 0: associativity fails on (x, x, e)
    mult = SparseMatrix(2, 4, QQ, {0: {0: QQ.one}, 3: {0: QQ.one}})
    a = AlgebraData(QQ, ("e", "x"), mult, {0: QQ.one}, name="bad")
    rep = verify_algebra(a)
    assert not rep.ok
    failed = {r.name for r in rep.failures}
    assert failed  # at least associativity or a unit law pinpointed


def test_comodule_from_hopf_certifies_axioms(kz3):
    ca = comodule_from_hopf(kz3)
    assert verify_comodule_algebra(ca).ok
    assert ca.coact_pairs(1) == [((1, 1), QQ.one)]


def test_trivial_coaction_is_a_comodule_algebra(kz2):
    assert verify_comodule_algebra(trivial_coaction_comodule(kz2, "t")).ok


def test_regular_bimodule_axioms(kz3):
    assert verify_bimodule(regular_bimodule(underlying_algebra(kz3))).ok


def test_broken_bimodule_is_detected(kz2):
    a = underlying_algebra(kz2)
    m = regular_bimodule(a)
    m.right = SparseMatrix(2, 4, QQ, {k: {0: QQ.one} for k in range(4)})
    assert not verify_bimodule(m).ok


# ---------------------------------------------------------------------------
# strong gradings and crossed products
# ---------------------------------------------------------------------------


def test_parity_grading_of_s3(s3_graded, s3_group):
    assert s3_graded.dim == 6
    assert len(s3_graded.grading[0]) == 3 and len(s3_graded.grading[1]) == 3
    assert all(
        s3_graded.degree_of[i] == (1 if s3_group.element_order(i) == 2 else 0)
        for i in range(6)
    )


def test_non_strong_grading_is_rejected():
    # upper-triangular 2x2 matrices: the off-diagonal square is zero
    mult = SparseMatrix(
        3, 9, QQ,
        {0: {0: QQ.one}, 2: {2: QQ.one}, 4: {1: QQ.one}, 7: {2: QQ.one}},
    )
    ut = AlgebraData(QQ, ("e11", "e22", "e12"), mult, {0: QQ.one, 1: QQ.one})
    with pytest.raises(ValueError, match="not strong"):
        strongly_graded(FiniteGroup.cyclic(2), ut, {0: [0, 1], 1: [2]})


def test_grading_must_cover_and_respect_degrees(kz2):
    alg = underlying_algebra(kz2)
    z2 = FiniteGroup.cyclic(2)
    with pytest.raises(ValueError, match="cover"):
        strongly_graded(z2, alg, {0: [0], 1: []})
    with pytest.raises(ValueError, match="unit"):
        strongly_graded(z2, alg, {0: [1], 1: [0]})


def test_group_algebra_is_strongly_graded_by_its_group(kz4):
    alg = underlying_algebra(kz4)
    z4 = FiniteGroup.cyclic(4)
    ca = strongly_graded(z4, alg, {x: [x] for x in range(4)})
    assert coinvariants(ca).dim == 1


def test_crossed_product_with_sign_action(kz2):
    sign = SparseMatrix(2, 2, QQ, {0: {0: QQ.one}, 1: {1: -QQ.one}})
    cp = crossed_product(
        underlying_algebra(kz2),
        FiniteGroup.cyclic(2),
        action={0: SparseMatrix.identity(2, QQ), 1: sign},
    )
    assert cp.dim == 4
    g = galois_check(cp)
    assert g.base.dim == 2


def test_trivial_crossed_product_is_the_group_algebra(kz2):
    cp = crossed_product(underlying_algebra(kz2), FiniteGroup.cyclic(2))
    v4 = group_algebra(
        FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2)), QQ
    )
    # same structure constants after matching the basis order (i, x) <-> (x, i)
    perm = {x * 2 + i: i * 2 + x for x in range(2) for i in range(2)}
    for p in range(4):
        for q in range(4):
            got = {perm[k]: c for k, c in cp.mult.cols.get(p * 4 + q, {}).items()}
            want = dict(v4.mult.cols.get(perm[p] * 4 + perm[q], {}))
            assert got == want


def test_twisted_klein_is_galois_over_the_scalars(klein_twisted):
    g = galois_check(klein_twisted)
    assert g.base.dim == 1
    assert g.balanced.dim == 16


def test_non_cocycle_twist_is_rejected():
    z3 = FiniteGroup.cyclic(3)
    bad = {(x, y): QQ.one for x in range(3) for y in range(3)}
    bad[(2, 1)] = QQ.coerce(2)
    with pytest.raises(ValueError, match="associative"):
        twisted_group_algebra(z3, bad)


# ---------------------------------------------------------------------------
# coinvariants, the Galois map, the translation map
# ---------------------------------------------------------------------------


def test_coinvariants_of_comultiplication_are_scalars(kz3):
    base = coinvariants(comodule_from_hopf(kz3))
    assert base.dim == 1
    assert base.space.contains(dict(kz3.unit))


def test_coinvariants_of_parity_grading_are_the_even_span(s3_graded):
    base = coinvariants(s3_graded)
    assert base.dim == 3
    for i in s3_graded.grading[0]:
        assert base.space.contains({i: QQ.one})


def test_translation_map_of_group_algebra_is_inverse_tensor_element(kz4):
    g = galois_check(comodule_from_hopf(kz4))
    z4 = FiniteGroup.cyclic(4)
    for t in range(4):
        assert g.kappa_pairs(t) == [((z4.inv(t), t), QQ.one)]


def test_s3_extension_certificate(s3_galois):
    assert s3_galois.base.dim == 3
    assert s3_galois.balanced.dim == 12  # = dim A * dim H
    assert s3_galois.report.ok


def test_trivial_coaction_is_not_galois(kz2):
    ca = trivial_coaction_comodule(kz2, "kZ2triv")
    with pytest.raises(ValueError, match="defect"):
        galois_check(ca)


@settings(deadline=None, max_examples=20)
@given(data=st.data())
def test_balanced_pair_product_is_associative(data):
    h = group_algebra(FiniteGroup.cyclic(3), QQ)
    ca = comodule_from_hopf(h)
    dim = ca.dim * ca.dim
    pick = st.dictionaries(
        st.integers(0, dim - 1), st.integers(-3, 3).map(QQ.coerce), max_size=4
    )
    u, v, w = (data.draw(pick) for _ in range(3))
    lhs = _pair_product(ca, _pair_product(ca, u, v), w)
    rhs = _pair_product(ca, u, _pair_product(ca, v, w))
    assert lhs == rhs


# ---------------------------------------------------------------------------
# transported actions and the commutator-quotient crossed module
# ---------------------------------------------------------------------------


def test_um_actions_dimensions_for_s3(s3_galois, s3_graded):
    um = um_actions(s3_galois, regular_bimodule(s3_graded))
    assert um.invariants.dim == 4
    assert um.quotient.dim == 4
    assert um.report.ok


def test_um_actions_checks_equivariance_of_morphisms(s3_galois, s3_graded):
    ident = SparseMatrix.identity(6, QQ)
    um = um_actions(s3_galois, regular_bimodule(s3_graded), morphisms=[ident])
    assert um.report.ok


def test_ab_crossed_module_over_scalars_is_the_conjugation_module(kz3):
    g = galois_check(comodule_from_hopf(kz3))
    mbar = ab_crossed_module(g)
    adm = adjoint(kz3)
    assert mbar.action == adm.action and mbar.coaction == adm.coaction


def test_ab_crossed_module_of_s3_extension(s3_galois):
    mbar = ab_crossed_module(s3_galois)
    assert mbar.dim == 4


# ---------------------------------------------------------------------------
# relative cyclic objects
# ---------------------------------------------------------------------------


def test_relative_object_over_scalars_is_free(kz3):
    ca = comodule_from_hopf(kz3)
    z = relative_cyclic(ca, unit_base(ca), max_degree=3)
    assert [z.dim(n) for n in range(4)] == [3, 9, 27, 81]
    assert not z.simplicial_only


def test_relative_object_cyclic_operator_rotates(kz2):
    ca = comodule_from_hopf(kz2)
    z = relative_cyclic(ca, unit_base(ca), max_degree=2)
    t2 = z.cyclic(2)
    # degree-2 carrier is free on (m, a1, a2); rotation sends a2 to the front
    tup = lambda m, a1, a2: (m * 2 + a1) * 2 + a2
    for m in range(2):
        for a1 in range(2):
            for a2 in range(2):
                assert t2.column(tup(m, a1, a2)) == {tup(a2, m, a1): QQ.one}


def test_relative_object_dims_for_s3(s3_lambda):
    z = s3_lambda.relative
    assert [z.dim(n) for n in range(4)] == [4, 8, 16, 32]


def test_relative_object_with_general_coefficients_is_simplicial(kz2):
    ca = comodule_from_hopf(kz2)
    z = relative_cyclic(ca, unit_base(ca), m=regular_bimodule(ca), max_degree=2)
    assert z.simplicial_only
    with pytest.raises(ValueError, match="cyclic operator"):
        z.cyclic(1)


def test_relative_hc_of_group_algebra_counts_classes(kz3):
    ca = comodule_from_hopf(kz3)
    z = relative_cyclic(ca, unit_base(ca), max_degree=4)
    assert hc_connes(z, 0, 3) == [3, 0, 3, 0]


# ---------------------------------------------------------------------------
# the slot-product comparison
# ---------------------------------------------------------------------------


def test_lambda_iso_for_kz3_over_scalars(kz3):
    g = galois_check(comodule_from_hopf(kz3))
    lc = lambda_iso(g, max_degree=3)
    assert lc.report.ok
    assert lc.hc_relative == lc.hc_hopf == [3, 0, 3, 0]


def test_lambda_iso_for_s3_extension(s3_lambda):
    assert s3_lambda.report.ok
    assert s3_lambda.hc_relative == [3, 0, 3, 0]
    assert s3_lambda.hc_hopf == [3, 0, 3, 0]
    assert s3_lambda.coefficients.dim == 4


def test_lambda_iso_with_explicit_coefficients_is_simplicial(kz2):
    g = galois_check(comodule_from_hopf(kz2))
    lc = lambda_iso(g, m=regular_bimodule(g.ca), max_degree=2)
    assert lc.report.ok
    assert lc.hc_relative is None and lc.hc_hopf is None
    assert lc.relative.simplicial_only


def test_lambda_matrices_intertwine_boundaries(s3_lambda):
    z, tgt = s3_lambda.relative, s3_lambda.hopf_side
    for n in (1, 2, 3):
        assert (
            tgt.boundary(n) @ s3_lambda.matrices[n]
            == s3_lambda.matrices[n - 1] @ z.boundary(n)
        )


# ---------------------------------------------------------------------------
# separable base change
# ---------------------------------------------------------------------------


def test_base_change_kz4_over_kz2(kz4):
    ca = comodule_from_hopf(kz4)
    mid = base_from_vectors(ca, [{0: QQ.one}, {2: QQ.one}], name="kZ2")
    bc = separable_base_change(ca, mid, unit_base(ca), high=3)
    assert bc.ok
    assert bc.quasi_iso.ok
    assert bc.hc_source == bc.hc_target == [4, 0, 4, 0]
    # the separability element of kZ2 inside: (1 (x) 1 + g^2 (x) g^2) / 2
    assert bc.separability_element == {0: QQ.coerce("1/2"), 3: QQ.coerce("1/2")}


def test_base_change_to_itself_is_the_identity(kz2):
    ca = comodule_from_hopf(kz2)
    mid = base_from_vectors(ca, [{0: QQ.one}, {1: QQ.one}], name="all")
    bc = separable_base_change(ca, mid, mid, high=2)
    assert bc.ok


def test_non_separable_base_is_rejected():
    # k[x]/(x^2) is not separable over the scalars
    mult = SparseMatrix(2, 4, QQ, {0: {0: QQ.one}, 1: {1: QQ.one}, 2: {1: QQ.one}})
    a = AlgebraData(QQ, ("1", "x"), mult, {0: QQ.one}, name="dual numbers")
    assert verify_algebra(a).ok
    whole = base_from_vectors(a, [{0: QQ.one}, {1: QQ.one}], name="itself")
    with pytest.raises(ValueError, match="not separable"):
        separable_base_change(a, whole, unit_base(a), high=1)


# ---------------------------------------------------------------------------
# graded class folding
# ---------------------------------------------------------------------------


def test_graded_folding_for_s3_extension(s3_galois):
    gf = burghelea_graded(s3_galois, 0, 3)
    assert gf.report.ok
    assert gf.direct == gf.folded == [3, 0, 3, 0]
    assert gf.per_class["1"] == [2, 0, 0, 0]  # Z/2-coinvariants of the even span
    assert gf.per_class["g"] == [1, 0, 0, 0]  # one transposition class


def test_graded_folding_for_twisted_klein(klein_twisted):
    g = galois_check(klein_twisted)
    gf = burghelea_graded(g, 0, 4)
    assert gf.report.ok
    assert gf.direct == gf.folded == [1, 0, 1, 0, 1]
    # every nonidentity component is killed by the sign of the twist
    nontrivial = [k for k, v in gf.per_class.items() if any(v)]
    assert nontrivial == ["(1,1)"]


def test_graded_folding_of_group_algebra_by_itself(kz3):
    alg = underlying_algebra(kz3)
    z3 = FiniteGroup.cyclic(3)
    ca = strongly_graded(z3, alg, {x: [x] for x in range(3)})
    gf = burghelea_graded(galois_check(ca), 0, 3)
    assert gf.direct == gf.folded == [3, 0, 3, 0]
    assert len(gf.per_class) == 3


def test_folding_requires_a_group_grading(kz3):
    g = galois_check(comodule_from_hopf(kz3))
    with pytest.raises(ValueError, match="group grading"):
        burghelea_graded(g, 0, 2)


# ---------------------------------------------------------------------------
# traces
# ---------------------------------------------------------------------------


def test_identity_trace_matches_the_comparison(kz3):
    ca = comodule_from_hopf(kz3)
    tc = trace_map(ca, adjoint(kz3), SparseMatrix.identity(3, QQ), max_degree=2)
    assert tc.report.ok
    g = galois_check(ca)
    lc = lambda_iso(g, max_degree=2, compare_hc=False)
    assert all(tc.matrices[n] == lc.matrices[n] for n in range(3))


def test_zero_trace_induces_the_zero_morphism(kz2):
    ca = comodule_from_hopf(kz2)
    tc = trace_map(ca, adjoint(kz2), SparseMatrix.zero(2, 2, QQ), max_degree=2)
    assert tc.report.ok
    assert all(not tc.matrices[n].cols for n in range(3))


def test_non_colinear_trace_is_rejected(kz2):
    swap = SparseMatrix(2, 2, QQ, {0: {1: QQ.one}, 1: {0: QQ.one}})
    with pytest.raises(ValueError, match="comodule map"):
        trace_map(comodule_from_hopf(kz2), adjoint(kz2), swap, max_degree=1)
