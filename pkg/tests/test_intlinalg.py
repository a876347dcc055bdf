import random
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from cptate import (
    CompositeNotZero,
    DimensionMismatch,
    FgAbGroup,
    IntMatrix,
    MatrixDoesNotDescend,
    NotUnimodular,
    cokernel,
    det,
    free_abelian,
    from_invariants,
    induced_subquotient,
    inverse_unimodular,
    kernel,
    lattice_basis,
    lattice_member,
    snf,
)

matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-20, 20), min_size=n, max_size=n),
            min_size=m, max_size=m,
        ).map(IntMatrix.from_rows)
    )
)


# -- IntMatrix basics --------------------------------------------------------


def test_matrix_construction_and_access():
    a = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert (a.rows, a.cols) == (2, 3)
    assert a.at(1, 2) == 6
    assert a.row(0) == (1, 2, 3)
    assert a.col(2) == (3, 6)
    assert a.transpose().to_rows() == [[1, 4], [2, 5], [3, 6]]
    b = IntMatrix.from_columns([[1, 4], [2, 5], [3, 6]], 2)
    assert a == b


def test_matrix_arithmetic():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    b = IntMatrix.from_rows([[0, 1], [1, 0]])
    assert (a @ b).to_rows() == [[2, 1], [4, 3]]
    assert (a + b - b) == a
    assert (-a).at(0, 0) == -1
    assert (2 * a).at(1, 1) == 8
    assert a.power(0) == IntMatrix.identity(2)
    assert a.power(3) == a @ a @ a
    assert a.apply((1, 0)) == (1, 3)
    assert a.hstack(b).cols == 4


def test_matrix_shape_errors():
    a = IntMatrix.from_rows([[1, 2]])
    b = IntMatrix.from_rows([[1, 2]])
    with pytest.raises(DimensionMismatch):
        a @ b
    with pytest.raises(DimensionMismatch):
        a + IntMatrix.identity(3)
    with pytest.raises(DimensionMismatch):
        IntMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(TypeError):
        IntMatrix.from_rows([[1, 2.5]])
    with pytest.raises(TypeError):
        IntMatrix.from_rows([[1, True]])


def test_block_diag_and_diagonal():
    d = IntMatrix.diagonal([2, 3], rows=3, cols=2)
    assert d.to_rows() == [[2, 0], [0, 3], [0, 0]]
    b = IntMatrix.block_diag([IntMatrix.identity(1), 2 * IntMatrix.identity(2)])
    assert b.main_diagonal() == (1, 2, 2)


# -- Smith normal form -------------------------------------------------------


def check_snf_contract(a):
    dec = snf(a)
    assert dec.u @ a @ dec.v == dec.s
    assert dec.u @ dec.u_inv == IntMatrix.identity(a.rows)
    assert dec.v @ dec.v_inv == IntMatrix.identity(a.cols)
    diag = dec.diagonal
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        assert (x == 0 and y == 0) or (x != 0 and y % x == 0)
    for i in range(dec.s.rows):
        for j in range(dec.s.cols):
            if i != j:
                assert dec.s.at(i, j) == 0
    return dec


@settings(max_examples=120, deadline=None)
@given(matrices)
def test_snf_properties(a):
    check_snf_contract(a)


@settings(max_examples=60, deadline=None)
@given(matrices.filter(lambda a: a.rows == a.cols))
def test_snf_preserves_absolute_determinant(a):
    dec = snf(a)
    prod = 1
    for x in dec.diagonal:
        prod *= x
    assert prod == abs(det(a))


def test_snf_known_small_cases():
    assert snf(IntMatrix.diagonal([2, 3])).diagonal == (1, 6)
    assert snf(IntMatrix.zeros(2, 3)).diagonal == (0, 0)
    assert snf(IntMatrix.identity(4)).diagonal == (1, 1, 1, 1)
    a = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    dec = check_snf_contract(a)
    # gcd of entries is 2; total determinant magnitude fixes the chain
    assert dec.diagonal[0] == 2
    prod = 1
    for x in dec.diagonal:
        prod *= x
    assert prod == abs(det(a))


def _minor_gcd(a, k):
    g = 0
    for rows in combinations(range(a.rows), k):
        for cols in combinations(range(a.cols), k):
            sub = IntMatrix.from_rows([[a.at(i, j) for j in cols] for i in rows])
            g = gcd(g, det(sub))
    return g


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3),
                min_size=3, max_size=3).map(IntMatrix.from_rows))
def test_snf_matches_minor_gcds(a):
    # d1 * ... * dk equals the gcd of all k x k minors
    diag = snf(a).diagonal
    assert diag[0] == _minor_gcd(a, 1)
    assert diag[0] * diag[1] == _minor_gcd(a, 2)
    assert diag[0] * diag[1] * diag[2] == abs(det(a))


# -- determinants and inverses -----------------------------------------------


def _det_by_expansion(a):
    n = a.rows
    if n == 1:
        return a.at(0, 0)
    total = 0
    for j in range(n):
        sub = IntMatrix.from_rows(
            [[a.at(i, jj) for jj in range(n) if jj != j] for i in range(1, n)])
        total += (-1) ** j * a.at(0, j) * _det_by_expansion(sub)
    return total


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                       min_size=n, max_size=n).map(IntMatrix.from_rows)))
def test_det_matches_cofactor_expansion(a):
    assert det(a) == _det_by_expansion(a)


def test_inverse_unimodular():
    rng = random.Random(7)
    for _ in range(25):
        m = rng.randint(1, 5)
        rows = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        for _ in range(10):
            i, j = rng.randrange(m), rng.randrange(m)
            if i != j:
                k = rng.choice((-2, -1, 1, 2))
                rows[j] = [a + k * b for a, b in zip(rows[j], rows[i])]
        w = IntMatrix.from_rows(rows)
        assert w @ inverse_unimodular(w) == IntMatrix.identity(m)
    with pytest.raises(NotUnimodular):
        inverse_unimodular(IntMatrix.diagonal([2, 1]))
    with pytest.raises(NotUnimodular):
        inverse_unimodular(IntMatrix.from_rows([[1, 0]]))


# -- lattices ----------------------------------------------------------------


def test_lattice_member_known():
    a = IntMatrix.from_columns([[2, 0], [0, 3]], 2)
    x = lattice_member(a, (4, -3))
    assert x is not None and a.apply(x) == (4, -3)
    assert lattice_member(a, (1, 0)) is None
    assert lattice_member(a, (0, 0)) == (0, 0)


@settings(max_examples=60, deadline=None)
@given(matrices, st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_lattice_member_roundtrip(a, coeffs):
    coeffs = (coeffs * a.cols)[: a.cols]
    b = a.apply(coeffs)
    x = lattice_member(a, b)
    assert x is not None and a.apply(x) == b


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_columns_annihilated(a):
    k = kernel(a)
    assert (a @ k).is_zero()
    # completeness: rank(a) + kernel dimension = number of columns
    assert snf(k).rank == a.cols - snf(a).rank


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_lattice_basis_spans_same_lattice(a):
    b = lattice_basis(a)
    assert b.cols == snf(a).rank
    for j in range(a.cols):
        assert lattice_member(b, a.col(j)) is not None
    for j in range(b.cols):
        assert lattice_member(a, b.col(j)) is not None


# -- finitely generated abelian groups ---------------------------------------


def test_cokernel_known():
    assert cokernel(IntMatrix.diagonal([2, 3])).invariant_factors == (6,)
    g = cokernel(IntMatrix.from_columns([[2, 0], [0, 3]], 2))
    assert g.invariant_factors == (6,) and g.free_rank == 0
    assert cokernel(IntMatrix.zeros(3, 0)) == free_abelian(3)
    assert str(from_invariants((2, 6), free_rank=1)) == "Z x Z/2 x Z/6"
    assert str(free_abelian(0)) == "0"


def test_group_invariants_validation():
    with pytest.raises(ValueError):
        FgAbGroup((2, 3), 0, ambient_rank=2, relations=IntMatrix.zeros(2, 0))
    # unit factors normalize away rather than erroring
    assert from_invariants((1, 2)) == from_invariants((2,))
    g = from_invariants((2, 4, 4))
    assert g.p_rank(2) == 3 and g.p_rank(3) == 0
    assert g.order == 32
    assert not g.p_part_elementary(2)
    assert from_invariants((2, 2)).p_part_elementary(2)
    assert from_invariants((6,)).p_part_elementary(3)


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_cokernel_presentation_invariance(a):
    rng = random.Random(sum(abs(e) for e in a.entries) + a.rows)
    rows = [[1 if i == j else 0 for j in range(a.rows)] for i in range(a.rows)]
    for _ in range(8):
        i, j = rng.randrange(a.rows), rng.randrange(a.rows)
        if i != j:
            k = rng.choice((-1, 1))
            rows[j] = [x + k * y for x, y in zip(rows[j], rows[i])]
    w = IntMatrix.from_rows(rows)
    assert cokernel(w @ a) == cokernel(a)
    # appending a column already in the lattice changes nothing
    extra = a.apply([1] * a.cols)
    widened = a.hstack(IntMatrix.from_columns([extra], a.rows))
    assert cokernel(widened) == cokernel(a)


def test_formal_order_of_infinite_group():
    assert free_abelian(2).order is None
    assert from_invariants((4,)).order == 4


# -- induced subquotients ----------------------------------------------------


def test_subquotient_kernel_of_doubling_mod_four():
    g = from_invariants((4, 4))
    two = 2 * IntMatrix.identity(2)
    h = induced_subquotient(g, two, IntMatrix.zeros(2, 2))
    assert h.invariant_factors == (2, 2) and h.free_rank == 0


def test_subquotient_whole_group_and_trivial():
    g = from_invariants((4, 4))
    zero = IntMatrix.zeros(2, 2)
    whole = induced_subquotient(g, zero, zero)
    assert whole == g
    ident = IntMatrix.identity(2)
    with pytest.raises(CompositeNotZero):
        induced_subquotient(g, ident, ident)
    # ker(identity) mod image zero is the trivial group
    nothing = induced_subquotient(g, ident, zero)
    assert nothing.is_trivial


def test_subquotient_free_case():
    g = free_abelian(2)
    # x = y line inside Z^2, quotient by the image of (x, y) -> (x+y, x+y)
    ker_of = IntMatrix.from_rows([[1, -1], [0, 0]])
    im_of = IntMatrix.from_rows([[1, 1], [1, 1]])
    h = induced_subquotient(g, ker_of, im_of)
    assert h.is_trivial

    # same kernel, image doubled: quotient is Z/2
    h2 = induced_subquotient(g, ker_of, 2 * im_of)
    assert h2.invariant_factors == (2,) and h2.free_rank == 0


def test_subquotient_validates_descent():
    g = from_invariants((2,), free_rank=1)  # ambient rank 2, relation (2, 0)
    swap = IntMatrix.from_rows([[0, 1], [1, 0]])
    with pytest.raises(MatrixDoesNotDescend):
        induced_subquotient(g, swap, IntMatrix.zeros(2, 2))
