from itertools import product

from hypothesis import given, strategies as st

from ncomplex.intmat import (
    ColumnEchelon,
    IntMatrix,
    hermite_basis,
    integer_kernel,
    smith_diagonal,
    smith_normal_form,
    solve_in_span,
    unimodular_inverse,
)

M = IntMatrix.from_rows


@st.composite
def matrices(draw, max_dim=4, bound=20):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    vals = draw(st.lists(st.integers(-bound, bound), min_size=r * c, max_size=r * c))
    return IntMatrix(r, c, vals)


def in_lattice_brute(A, b, box=6):
    return any(A.apply(x) == tuple(b) for x in product(range(-box, box + 1), repeat=A.cols))


def test_snf_identity():
    U, D, V = smith_normal_form(IntMatrix.identity(2))
    assert D == U == V == IntMatrix.identity(2)


def test_snf_zero():
    U, D, V = smith_normal_form(IntMatrix.zeros(2, 3))
    assert D == IntMatrix.zeros(2, 3)
    assert U == IntMatrix.identity(2) and V == IntMatrix.identity(3)


def test_snf_2468():
    A = M([[2, 4], [6, 8]])
    U, D, V = smith_normal_form(A)
    assert D == M([[2, 0], [0, 4]])
    assert U @ A @ V == D
    assert abs(U.det()) == abs(V.det()) == 1
    # |coker| is |det| for a square nonsingular matrix
    assert abs(A.det()) == 8 == D[0, 0] * D[1, 1]


@given(matrices())
def test_snf_properties(A):
    U, D, V = smith_normal_form(A)
    assert U @ A @ V == D
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    diag = [D[i, i] for i in range(min(D.shape))]
    assert all(D[i, j] == 0 for i in range(D.rows) for j in range(D.cols) if i != j)
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert diag[:len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert smith_normal_form(A) == (U, D, V)  # deterministic


def test_hermite_examples():
    assert hermite_basis(IntMatrix.identity(3)) == IntMatrix.identity(3)
    assert hermite_basis(M([[2], [4]])) == M([[2], [4]])
    assert hermite_basis(M([[6, 4]])) == M([[2]])


@given(matrices())
def test_hermite_spans_same_lattice(A):
    H = hermite_basis(A)
    assert H.rows == A.rows
    assert H.cols == ColumnEchelon(A).rank
    assert all(solve_in_span(A, c) is not None for c in H.columns())
    assert all(solve_in_span(H, c) is not None for c in A.columns())


def test_solve_examples():
    assert solve_in_span(M([[2]]), [6]) == (3,)
    assert solve_in_span(M([[2]]), [3]) is None
    assert solve_in_span(M([[2, 0], [0, 4]]), [2, 8]) == (1, 2)


@given(matrices(max_dim=3, bound=6), st.lists(st.integers(-12, 12), min_size=3, max_size=3))
def test_solve_against_search(A, b):
    b = b[:A.rows]
    x = solve_in_span(A, b)
    if x is not None:
        assert A.apply(x) == tuple(b)
    elif A.cols <= 2:
        assert not in_lattice_brute(A, b)


@given(matrices())
def test_integer_kernel(A):
    K = integer_kernel(A)
    assert (A @ K).is_zero()
    assert K.cols == A.cols - ColumnEchelon(A).rank


def test_smith_diagonal_and_inverse():
    assert smith_diagonal(M([[6, 4]])) == [2]
    U = M([[2, 1], [1, 1]])
    assert U @ unimodular_inverse(U) == IntMatrix.identity(2)
