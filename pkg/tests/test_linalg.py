"""Exact linear algebra: frozen examples plus randomized structural laws."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfcyclic.linalg import (
    QQ,
    Bicomplex,
    ChainComplex,
    LinAlgError,
    PrimeField,
    QuotientSpace,
    SparseMatrix,
    Subspace,
    TruncationError,
    WellDefinednessError,
    flip_matrix,
    homology_dims,
    int_det,
    invert,
    mat_mul_int,
    quasi_iso_check,
    rank,
    rank_kernel,
    smith_normal_form,
    solve,
    solve_matrix,
    total_complex,
)

GF5 = PrimeField(5)


def dense(rows, field=QQ):
    return SparseMatrix.from_rows_dense(rows, field)


small_mats = st.lists(
    st.lists(st.integers(-6, 6), min_size=1, max_size=5),
    min_size=1,
    max_size=5,
).filter(lambda rows: len({len(r) for r in rows}) == 1)


# -- frozen elimination examples -------------------------------------------


def test_rank_kernel_frozen_example():
    m = dense([[1, 2], [2, 4]])
    r, kernel = rank_kernel(m)
    assert r == 1
    assert kernel == [{0: Fraction(2), 1: Fraction(-1)}]


def test_identity_and_zero_rank():
    assert rank(SparseMatrix.identity(4, QQ)) == 4
    assert rank(SparseMatrix.zero(3, 5, QQ)) == 0
    r, kernel = rank_kernel(SparseMatrix.zero(3, 2, QQ))
    assert r == 0 and len(kernel) == 2


def test_snf_frozen_examples():
    u, d, v = smith_normal_form([[2, 0], [0, 3]])
    assert [d[0][0], d[1][1]] == [1, 6]
    u, d, v = smith_normal_form([[0, 1], [-1, 0]])
    assert [d[0][0], d[1][1]] == [1, 1]


def test_snf_transforms_multiply_back():
    m = [[4, 6, 2], [2, 8, 10]]
    u, d, v = smith_normal_form(m)
    assert mat_mul_int(mat_mul_int(u, m), v) == d
    assert abs(int_det(u)) == 1 and abs(int_det(v)) == 1


# -- randomized structural laws --------------------------------------------


@settings(max_examples=60, deadline=None)
@given(small_mats)
def test_rank_plus_kernel_dim_is_ncols(rows):
    m = dense(rows)
    r, kernel = rank_kernel(m)
    assert r + len(kernel) == m.ncols
    for v in kernel:
        assert not m.apply(v)


@settings(max_examples=40, deadline=None)
@given(small_mats)
def test_rank_equals_transpose_rank(rows):
    m = dense(rows)
    assert rank(m) == rank(m.transpose())


@settings(max_examples=40, deadline=None)
@given(small_mats)
def test_gf5_rank_never_exceeds_rational_rank(rows):
    mq = dense(rows)
    mp = dense(rows, GF5)
    assert rank(mp) <= rank(mq)


@settings(max_examples=40, deadline=None)
@given(small_mats)
def test_snf_random(rows):
    u, d, v = smith_normal_form(rows)
    assert mat_mul_int(mat_mul_int(u, rows), v) == d
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    for a, b in zip(diag, diag[1:]):
        if a:
            assert b % a == 0
        else:
            assert b == 0
    assert abs(int_det(u)) == 1 and abs(int_det(v)) == 1


@settings(max_examples=40, deadline=None)
@given(small_mats, st.integers(0, 4))
def test_solve_consistency(rows, col_seed):
    m = dense(rows)
    # right-hand side guaranteed consistent: an actual column combination
    x0 = {j: Fraction((j + col_seed) % 3 - 1) for j in range(m.ncols)}
    b = m.apply(x0)
    x = solve(m, b)
    assert x is not None
    assert m.apply(x) == b


def test_solve_inconsistent_returns_none():
    m = dense([[1, 0], [1, 0]])
    assert solve(m, {0: Fraction(1), 1: Fraction(2)}) is None


def test_invert_round_trip():
    m = dense([[2, 1], [1, 1]])
    inv = invert(m)
    assert m @ inv == SparseMatrix.identity(2, QQ)
    with pytest.raises(LinAlgError):
        invert(dense([[1, 2], [2, 4]]))


def test_matmul_and_kron_shapes():
    a = dense([[1, 2], [0, 1]])
    b = dense([[1], [3]])
    assert (a @ b).to_dense() == [[Fraction(7)], [Fraction(3)]]
    k = a.kron(b)
    assert (k.nrows, k.ncols) == (4, 2)
    f = flip_matrix(2, 3, QQ)
    assert f @ f.transpose() == SparseMatrix.identity(6, QQ)


# -- subspaces and quotients -------------------------------------------------


def test_quotient_projection_section():
    # relator e0 - e1 in k^3: quotient has dim 2
    q = QuotientSpace(3, QQ, [{0: Fraction(1), 1: Fraction(-1)}])
    assert q.dim == 2
    for k in range(q.dim):
        assert q.project_vec(q.section_vec(k)) == {k: Fraction(1)}
    assert q.project_vec({0: Fraction(1)}) == q.project_vec({1: Fraction(1)})
    assert not q.project_vec({0: Fraction(2), 1: Fraction(-2)})


def test_quotient_induced_operator_well_definedness():
    # swap of e0,e1 descends over the relator e0-e1; the map killing e1 does not
    q = QuotientSpace(2, QQ, [{0: Fraction(1), 1: Fraction(-1)}])
    swap = SparseMatrix.permutation([1, 0], QQ)
    ind = q.induced_matrix(swap)
    assert ind == SparseMatrix.identity(1, QQ)
    bad = dense([[1, 0], [0, 0]])
    with pytest.raises(WellDefinednessError):
        q.induced_matrix(bad)


def test_subspace_membership_and_coords():
    s = Subspace(3, QQ, [{0: Fraction(1), 1: Fraction(1)}, {2: Fraction(2)}])
    assert s.dim == 2
    assert s.contains({0: Fraction(3), 1: Fraction(3), 2: Fraction(1)})
    assert not s.contains({0: Fraction(1)})
    c = s.coords({0: Fraction(2), 1: Fraction(2)})
    assert c is not None


# -- complexes ---------------------------------------------------------------


def _two_term_complex():
    # 0 <- k <- k^2, boundary (1, 0): H_0 = 0? no: rank 1 => H_0 = 1-1 = 0, H_1 needs deg 2
    d1 = dense([[1, 0]])
    return ChainComplex([1, 2], [d1], QQ)


def test_homology_dims_and_truncation():
    c = _two_term_complex()
    assert homology_dims(c, 0, 0) == [0]
    with pytest.raises(TruncationError):
        homology_dims(c, 0, 1)


def test_boundary_square_varified():
    d1 = dense([[1]])
    d2 = dense([[1]])
    with pytest.raises(LinAlgError):
        ChainComplex([1, 1, 1], [d1, d2], QQ)


def test_total_complex_of_anticommuting_square():
    # square of copies of k with identity maps and one sign flip; padded by
    # zero cells so the truncation through total degree 1 is complete
    one = dense([[1]])
    cells = {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1, (2, 0): 0, (0, 2): 0}
    horiz = {(1, 0): one, (1, 1): one}
    vert = {(0, 1): one, (1, 1): one.scale(Fraction(-1))}
    b = Bicomplex(cells, horiz, vert, QQ)
    tot = total_complex(b, 1)
    assert tot.dims == [1, 2, 1]
    assert homology_dims(tot, 0, 1) == [0, 0]
    with pytest.raises(TruncationError):
        total_complex(b, 2)


def test_bicomplex_rejects_commuting_square():
    one = dense([[1]])
    cells = {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    horiz = {(1, 0): one, (1, 1): one}
    vert = {(0, 1): one, (1, 1): one}
    with pytest.raises(LinAlgError):
        Bicomplex(cells, horiz, vert, QQ)


def test_quasi_iso_identity_map():
    c = _two_term_complex()
    f = {0: SparseMatrix.identity(1, QQ), 1: SparseMatrix.identity(2, QQ)}
    rep = quasi_iso_check(f, c, c, 0, 0)
    assert rep.ok and rep.degrees[0].iso


def test_quasi_iso_detects_non_iso():
    # C: 0 <- k (only degree 0); D: same; zero map should fail at H_0 when H_0 != 0
    c = ChainComplex([1, 1], [SparseMatrix.zero(1, 1, QQ)], QQ)
    f = {0: SparseMatrix.zero(1, 1, QQ), 1: SparseMatrix.zero(1, 1, QQ)}
    rep = quasi_iso_check(f, c, c, 0, 0)
    assert not rep.ok


def test_solve_matrix_multiple_rhs():
    m = dense([[1, 1], [0, 1]])
    rhs = dense([[1, 0], [0, 1]])
    x = solve_matrix(m, rhs)
    assert m @ x == rhs
