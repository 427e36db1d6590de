"""Crossed coefficient modules: axioms, constructors, induction and
restriction, the group-algebra decomposition, and the coinvariants
filtration."""

import pytest

from hopfcyclic.crossed import (
    CrossedModule,
    adjoint,
    associated_graded,
    coadjoint,
    coinvariants_filtration,
    crossed_from_json,
    crossed_to_json,
    decompose_group_case,
    from_yetter_drinfeld,
    gh_functor,
    hg_functor,
    induce,
    modular_pair_module,
    one_dimensional,
    restrict,
    trivial_module,
    u_map,
    verify_crossed,
    verify_modular,
)
from hopfcyclic.hopf import (
    FiniteGroup,
    group_algebra,
    group_subalgebra,
)
from hopfcyclic.linalg import QQ, SparseMatrix


@pytest.fixture(scope="module")
def kz2():
    return group_algebra(FiniteGroup.cyclic(2))


@pytest.fixture(scope="module")
def kz3():
    return group_algebra(FiniteGroup.cyclic(3))


@pytest.fixture(scope="module")
def kz4():
    return group_algebra(FiniteGroup.cyclic(4))


@pytest.fixture(scope="module")
def ks3():
    return group_algebra(FiniteGroup.symmetric(3))


def sign_character(h, parity):
    return {i: QQ.coerce(1 if parity(i) == 0 else -1) for i in range(h.dim)}


def test_adjoint_is_modular(kz2, ks3):
    for h in (kz2, ks3):
        m = adjoint(h)
        rep = verify_modular(m)
        assert rep.ok, rep.failures


def test_coadjoint_is_modular(kz3):
    m = coadjoint(kz3)
    assert verify_modular(m).ok


def test_trivial_module(ks3):
    m = trivial_module(ks3)
    assert m.dim == 1
    assert verify_modular(m).ok


def test_adjoint_action_is_conjugation(ks3):
    m = adjoint(ks3)
    g = ks3.group
    for i in range(6):
        for j in range(6):
            expected = g.mul(g.mul(i, j), g.inv(i))
            assert m.act_pairs(i, j) == [(expected, QQ.one)]


def test_sign_module_modular_with_trivial_coaction(kz2):
    chi = sign_character(kz2, lambda i: i)
    m = one_dimensional(kz2, chi, name="k_sign")
    assert verify_modular(m).ok


def test_sign_module_grouplike_coaction_breaks_modularity(kz2):
    chi = sign_character(kz2, lambda i: i)
    m = one_dimensional(kz2, chi, coaction_grouplike=1, name="k_sign_g")
    assert verify_crossed(m).ok
    rep = verify_modular(m)
    assert not rep.ok
    assert any("modularity" in c.name for c in rep.failures)
    assert u_map(m).to_dense()[0][0] == -1


def test_non_character_rejected(kz2):
    with pytest.raises(ValueError, match="character"):
        one_dimensional(kz2, {0: QQ.coerce(1), 1: QQ.coerce(2)})


def test_u_map_identity_on_adjoint(kz4):
    m = adjoint(kz4)
    assert u_map(m) == SparseMatrix.identity(4, QQ)


def test_modular_pair_central_sigma(kz4):
    module, rep = modular_pair_module(kz4, sigma=1)
    assert rep.ok
    assert module.in_involution
    assert verify_modular(module).ok


def test_modular_pair_noncentral_sigma(ks3):
    # a transposition is not central in S3: the pair is not in involution
    # and the coefficients fail the crossed axioms, in agreement
    sigma = next(i for i in range(6) if ks3.group.element_order(i) == 2)
    module, rep = modular_pair_module(ks3, sigma=sigma)
    assert rep.ok  # the equivalence itself holds
    assert not module.in_involution
    assert not verify_modular(module).ok


def test_modular_pair_identity_sigma(ks3):
    module, rep = modular_pair_module(ks3, sigma=ks3.group.identity)
    assert rep.ok and module.in_involution
    assert verify_modular(module).ok


def test_yetter_drinfeld_conversion(ks3):
    # conjugation action with the comultiplication as left coaction
    g = ks3.group
    d = 6
    act_cols = {}
    for i in range(d):
        for j in range(d):
            act_cols[i * d + j] = {g.conjugate(i, j): QQ.one}
    action = SparseMatrix(d, d * d, QQ, act_cols)
    yd_co = SparseMatrix(d * d, d, QQ, {j: {j * d + j: QQ.one} for j in range(d)})
    m = from_yetter_drinfeld(ks3, d, action, yd_co)
    assert verify_modular(m).ok
    # the converted coaction is x -> x (x) x^{-1}
    for j in range(d):
        assert m.coact_pairs(j) == [((j, g.inv(j)), QQ.one)]


def test_yetter_drinfeld_rejects_bad_input(kz2):
    action = kz2.mult  # left regular action
    yd_co = SparseMatrix(4, 2, QQ, {j: {j * 2 + j: QQ.one} for j in range(2)})
    with pytest.raises(ValueError, match="Yetter-Drinfeld"):
        from_yetter_drinfeld(kz2, 2, action, yd_co)


def test_induce_dimension_and_modularity(kz4):
    sub = group_subalgebra(kz4, [0, 2])
    n = adjoint(sub.sub)
    ind = induce(sub, kz4, n)
    assert ind.dim == 4
    assert verify_modular(ind).ok


def test_induce_from_trivial_subgroup(ks3):
    sub = group_subalgebra(ks3, [0])
    n = trivial_module(sub.sub)
    ind = induce(sub, ks3, n)
    assert ind.dim == 6
    assert verify_crossed(ind).ok


def test_restrict_to_whole_algebra_is_identity(kz4):
    sub = group_subalgebra(kz4, [0, 1, 2, 3])
    m = adjoint(kz4)
    res = restrict(sub, kz4, m)
    assert res.dim == m.dim
    assert verify_crossed(res).ok


def test_restrict_adjoint_to_subgroup(kz4):
    sub = group_subalgebra(kz4, [0, 2])
    m = adjoint(kz4)
    res = restrict(sub, kz4, m)
    assert res.dim == 2
    assert verify_modular(res).ok


def test_decompose_adjoint_s3(ks3):
    m = adjoint(ks3)
    dec = decompose_group_case(m)
    assert dec.report.ok, dec.report.failures
    assert dec.modular
    # one-dimensional component at every group element
    assert sorted(dec.components) == list(range(6))
    assert all(c.dim == 1 for c in dec.components.values())
    # induced blocks have sizes 1, 3, 2 over the transversal
    sizes = [dec.induced[x].dim for x in dec.induced]
    assert sorted(sizes) == [1, 2, 3]


def test_decompose_reports_nonmodularity(kz2):
    chi = sign_character(kz2, lambda i: i)
    m = one_dimensional(kz2, chi, coaction_grouplike=1)
    dec = decompose_group_case(m)
    assert dec.report.ok  # the decomposition itself is fine
    assert not dec.modular


def test_stable_envelope_of_trivial_module_is_adjoint(kz2):
    counit_action = SparseMatrix(1, 2, QQ, {i: {0: QQ.one} for i in range(2)})
    hg = hg_functor(kz2, 1, counit_action)
    ad = adjoint(kz2)
    assert hg.dim == 2
    assert hg.action == ad.action
    assert hg.coaction == ad.coaction


def test_coinvariant_envelope_of_trivial_comodule_is_coadjoint(kz2):
    triv_co = SparseMatrix(2, 1, QQ, {0: {0: QQ.one}})
    gh = gh_functor(kz2, 1, triv_co)
    co = coadjoint(kz2)
    assert gh.dim == 2
    assert gh.action == co.action
    assert gh.coaction == co.coaction


def test_filtration_trivial_coaction_exhausts_at_zero(ks3):
    m = trivial_module(ks3)
    filt = coinvariants_filtration(m)
    assert filt.exhaustive
    assert filt.stabilized_at == 0
    assert [s.dim for s in filt.steps] == [1]


def test_filtration_adjoint_not_exhaustive(kz2):
    m = adjoint(kz2)
    filt = coinvariants_filtration(m)
    assert not filt.exhaustive
    assert filt.stabilized_at == 0
    assert filt.steps[0].dim == 1
    assert filt.steps[0].contains({0: QQ.one})


def test_filtration_detects_unstable_step(kz2):
    # g swaps the two basis vectors but only m0 is coinvariant
    action = SparseMatrix(
        2, 4, QQ,
        {0: {0: QQ.one}, 1: {1: QQ.one}, 2: {1: QQ.one}, 3: {0: QQ.one}},
    )
    coaction = SparseMatrix(4, 2, QQ, {0: {0: QQ.one}, 1: {3: QQ.one}})
    m = CrossedModule(kz2, 2, action, coaction)
    with pytest.raises(ValueError, match="not stable"):
        coinvariants_filtration(m)


def test_associated_graded_of_trivial_coaction(ks3):
    t = trivial_module(ks3)
    filt = coinvariants_filtration(t)
    graded = associated_graded(t, filt)
    assert len(graded) == 1
    assert graded[0].dim == 1
    assert verify_crossed(graded[0]).ok


def test_crossed_json_roundtrip(kz3):
    m = adjoint(kz3)
    doc = crossed_to_json(m)
    m2 = crossed_from_json(kz3, doc)
    assert m2.action == m.action
    assert m2.coaction == m.coaction
    assert m2.basis == m.basis
