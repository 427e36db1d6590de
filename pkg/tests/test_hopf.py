"""Hopf algebra structure tensors, groups, subalgebras and quotients."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcyclic.hopf import (
    FiniteGroup,
    HopfAlgebra,
    TensorIndex,
    conjugacy_data,
    diagonal_power,
    group_algebra,
    group_from_json,
    group_subalgebra,
    group_to_json,
    hopf_from_json,
    hopf_module_phi,
    hopf_to_json,
    op_cop,
    quotient_by_normal,
    verify_hopf,
)
from hopfcyclic.linalg import QQ, SparseMatrix


# -- groups -------------------------------------------------------------------


def test_cyclic_group():
    g = FiniteGroup.cyclic(4)
    assert g.order == 4 and g.identity == 0
    assert g.mul(3, 2) == 1 and g.inv(3) == 1
    assert g.is_abelian()


def test_symmetric_and_dihedral():
    s3 = FiniteGroup.symmetric(3)
    assert s3.order == 6 and not s3.is_abelian()
    d4 = FiniteGroup.dihedral(4)
    assert d4.order == 8 and not d4.is_abelian()
    v4 = FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))
    assert v4.order == 4 and all(v4.element_order(x) <= 2 for x in range(4))


def test_bad_table_rejected():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [1, 1]])  # 1*1 = 1 kills inverses/associativity


def test_conjugacy_data_s3():
    s3 = FiniteGroup.symmetric(3)
    data = conjugacy_data(s3)
    sizes = sorted(len(c) for c in data.classes)
    assert sizes == [1, 2, 3]
    for x in data.transversal:
        cd = data.centralizers[x]
        # |class| * |centralizer| = |G|
        cls_size = next(len(c) for c in data.classes if x in c)
        assert cls_size * cd.group.order == s3.order
        assert cd.quotient.order == cd.group.order // s3.element_order(x)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=4), st.data())
def test_tensor_index_round_trip(dims, data):
    ti = TensorIndex(dims)
    idx = data.draw(st.integers(0, ti.size - 1))
    assert ti.flatten(ti.unflatten(idx)) == idx


# -- Hopf axioms --------------------------------------------------------------


@pytest.mark.parametrize(
    "group",
    [
        FiniteGroup.cyclic(2),
        FiniteGroup.cyclic(3),
        FiniteGroup.cyclic(4),
        FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2)),
        FiniteGroup.symmetric(3),
        FiniteGroup.dihedral(4),
    ],
)
def test_group_algebras_satisfy_axioms(group):
    h = group_algebra(group)
    rep = verify_hopf(h)
    assert rep.ok, rep.failures


def test_broken_antipode_reported_with_witness():
    h = group_algebra(FiniteGroup.cyclic(3))
    bad = HopfAlgebra(
        h.field,
        h.basis,
        h.mult,
        h.unit,
        h.comult,
        h.counit,
        SparseMatrix.identity(3, QQ),  # identity is not the antipode of kZ/3
        name="broken",
    )
    rep = verify_hopf(bad)
    assert not rep.ok
    names = {c.name for c in rep.failures}
    assert "left antipode identity" in names
    assert any(c.witness for c in rep.failures)


def test_cocommutativity_detection():
    assert group_algebra(FiniteGroup.cyclic(3)).is_cocommutative()
    assert group_algebra(FiniteGroup.symmetric(3)).is_cocommutative()


def test_grouplike_detection():
    h = group_algebra(FiniteGroup.cyclic(3))
    assert all(h.is_grouplike(i) for i in range(3))


def test_sweedler_group_algebra_is_diagonal():
    h = group_algebra(FiniteGroup.cyclic(3))
    assert h.sweedler(1, 3) == [((1, 1, 1), QQ.one)]


def test_op_cop_of_group_algebra():
    h = group_algebra(FiniteGroup.symmetric(3))
    hoc = op_cop(h)
    # e_i *_op e_j = e_j e_i
    assert hoc.mult_pairs(1, 2) == h.mult_pairs(2, 1)


# -- module structure and straightening ---------------------------------------


def test_diagonal_power_group_algebra():
    h = group_algebra(FiniteGroup.cyclic(2))
    act = diagonal_power(h, 1)  # on H (x) H
    # (g, 1) . g = (g*g, 1*g) = (1, g): flat index of (g,1)=2 acting by g=1
    col = act.column(2 * 2 + 1)
    assert col == {1: QQ.one}


def test_hopf_module_phi_group_algebra():
    h = group_algebra(FiniteGroup.cyclic(3))
    phi, phi_inv = hopf_module_phi(h, 1)
    # phi(x, g) = (x g, g): basis (1, 2) -> (1*2, 2) = (0, 2)? 1+2=0 mod 3
    src = 1 * 3 + 2
    assert phi.column(src) == {0 * 3 + 2: QQ.one}


# -- subalgebras and quotients -------------------------------------------------


def test_quotient_of_z4_by_z2():
    h = group_algebra(FiniteGroup.cyclic(4))
    sub = group_subalgebra(h, [0, 2])
    quot, proj = quotient_by_normal(h, sub)
    assert quot.dim == 2
    assert verify_hopf(quot).ok
    # projection identifies g^2 with 1
    assert proj.column(0) == proj.column(2)


def test_quotient_of_s3_by_a3():
    h = group_algebra(FiniteGroup.symmetric(3))
    g = h.group
    a3 = [i for i in range(6) if g.labels[i] in ("e", "(123)", "(132)")]
    sub = group_subalgebra(h, a3)
    quot, proj = quotient_by_normal(h, sub)
    assert quot.dim == 2


def test_non_normal_subalgebra_rejected():
    h = group_algebra(FiniteGroup.symmetric(3))
    g = h.group
    t = next(i for i in range(6) if g.labels[i] == "(12)")
    sub = group_subalgebra(h, [g.identity, t])
    with pytest.raises(ValueError, match="not normal"):
        quotient_by_normal(h, sub)


# -- JSON ----------------------------------------------------------------------


def test_hopf_json_round_trip():
    h = group_algebra(FiniteGroup.dihedral(4))
    doc = hopf_to_json(h)
    h2 = hopf_from_json(doc)
    assert h2.mult == h.mult
    assert h2.comult == h.comult
    assert h2.antipode == h.antipode
    assert h2.unit == h.unit and h2.counit == h.counit


def test_group_json_round_trip():
    g = FiniteGroup.symmetric(3)
    g2 = group_from_json(group_to_json(g))
    assert g2.table == g.table and g2.labels == g.labels


def test_fractional_coefficients_accepted():
    doc = hopf_to_json(group_algebra(FiniteGroup.cyclic(2)))
    doc["mult"][0][3] = "1/1"
    h = hopf_from_json(doc)
    assert h.mult.entry(0, 0) == Fraction(1)
