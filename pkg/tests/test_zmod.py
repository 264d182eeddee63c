import itertools
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arithcs.zmod import (
    MatZn,
    ModRing,
    ModuleOverZn,
    annihilator,
    diagonalize_mod,
    hermite_basis,
    hermite_coordinates,
    howell_form,
    lattice_basis,
    lattice_coordinates,
    left_kernel,
    right_kernel,
    row_space_contains,
    smith_normal_form,
    solve_linear,
    unit_lift,
)


def brute_row_space(mat: MatZn) -> set[tuple[int, ...]]:
    """All Z/n combinations of the rows, by exhaustive enumeration."""
    n = mat.modulus
    space = set()
    for coeffs in itertools.product(range(n), repeat=mat.rows):
        v = np.zeros(mat.cols, dtype=np.int64)
        for c, row in zip(coeffs, mat.a):
            v = (v + c * row) % n
        space.add(tuple(int(x) for x in v))
    return space


def exact_det(mat) -> Fraction:
    a = [[Fraction(int(x)) for x in row] for row in np.asarray(mat)]
    size = len(a)
    det = Fraction(1)
    for k in range(size):
        pivot = next((i for i in range(k, size) if a[i][k]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, size):
            f = a[i][k] / a[k][k]
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def test_ring_validation():
    assert ModRing(6).reduce(-1) == 5
    with pytest.raises(ValueError):
        ModRing(1)
    with pytest.raises(ValueError):
        ModRing(1 << 17)


def test_module_orders_must_divide():
    m = ModuleOverZn(4, (2, 4))
    assert m.rank == 2
    assert list(m.reduce([3, 5])) == [1, 1]
    with pytest.raises(ValueError):
        ModuleOverZn(4, (3,))


@pytest.mark.parametrize("a,n", [(0, 6), (2, 4), (3, 6), (4, 6), (10, 12), (8, 12)])
def test_unit_lift(a, n):
    u = unit_lift(a, n)
    assert gcd(u, n) == 1
    assert (u * a) % n == gcd(a % n, n) % n if a % n else True


def test_annihilator():
    assert annihilator(2, 4) == 2
    assert annihilator(3, 4) == 0  # unit
    assert annihilator(0, 6) == 1


def test_howell_zero_matrix_over_z6():
    h, u = howell_form(MatZn([[0]], 6))
    assert h.rows == 0  # zero row space
    assert brute_row_space(MatZn([[0]], 6)) == {(0,)}


def test_howell_identity_is_fixed():
    m = MatZn.identity(2, 4)
    h, u = howell_form(m)
    assert h == m
    assert u @ m == h


def test_howell_two_mod_four():
    # row space of [[2]] over Z/4 is {0, 2}
    m = MatZn([[2]], 4)
    h, u = howell_form(m)
    assert h == MatZn([[2]], 4)
    assert brute_row_space(m) == {(0,), (2,)}


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_howell_preserves_row_space_exhaustive(n):
    rng = np.random.default_rng(n)
    for _ in range(25):
        rows, cols = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        m = MatZn(rng.integers(0, n, size=(rows, cols)), n)
        h, u = howell_form(m)
        assert (u.a @ m.a % n == h.a).all()
        assert brute_row_space(m) == brute_row_space(h)


@pytest.mark.parametrize("n", [4, 6])
def test_howell_is_canonical_for_equal_row_spaces(n):
    rng = np.random.default_rng(10 * n)
    for _ in range(25):
        m = MatZn(rng.integers(0, n, size=(3, 3)), n)
        h1, _ = howell_form(m)
        # mix rows by a random invertible combination plus a shuffle
        shuffled = m.a[rng.permutation(3)]
        extra = np.vstack([shuffled, (shuffled[0] + shuffled[1]) % n])
        h2, _ = howell_form(MatZn(extra, n))
        assert h1 == h2


def test_solve_identity():
    sol = solve_linear(MatZn.identity(3, 5), [1, 2, 3])
    assert sol is not None
    assert list(sol.particular) == [1, 2, 3]
    assert sol.kernel_basis.shape[0] == 0


def test_solve_two_x_equals_one_mod_four_has_no_solution():
    assert solve_linear(MatZn([[2]], 4), [1]) is None
    # oracle: enumerate all four candidates
    assert all((2 * x) % 4 != 1 for x in range(4))


def test_solve_two_x_equals_two_mod_four():
    sol = solve_linear(MatZn([[2]], 4), [2])
    assert sol is not None
    assert list(sol.particular) == [1]
    assert {tuple(r) for r in sol.kernel_basis} == {(2,)}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_solve_matches_exhaustive_search(n):
    rng = np.random.default_rng(n + 100)
    for _ in range(40):
        rows, cols = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        a = MatZn(rng.integers(0, n, size=(rows, cols)), n)
        b = rng.integers(0, n, size=rows)
        all_solutions = {
            x
            for x in itertools.product(range(n), repeat=cols)
            if ((a.a @ np.array(x)) % n == b % n).all()
        }
        sol = solve_linear(a, b)
        if sol is None:
            assert not all_solutions
            continue
        assert tuple(sol.particular) in all_solutions
        # particular + span(kernel) covers every solution
        spanned = {
            tuple((sol.particular + v) % n)
            for v in brute_vectors(sol.kernel_basis, n, cols)
        }
        assert spanned == all_solutions


def brute_vectors(rows: np.ndarray, n: int, width: int) -> set:
    out = set()
    for coeffs in itertools.product(range(n), repeat=rows.shape[0]):
        v = np.zeros(width, dtype=np.int64)
        for c, row in zip(coeffs, rows):
            v = (v + c * row) % n
        out.add(tuple(v))
    return out


def test_kernels_annihilate():
    m = MatZn([[2, 0], [0, 3]], 6)
    k = left_kernel(m)
    assert (k.a @ m.a % 6 == 0).all()
    rk = right_kernel(m)
    assert (m.a @ rk.a.T % 6 == 0).all()


def test_row_space_membership():
    m = MatZn([[2, 0], [0, 2]], 4)
    assert row_space_contains(m, [2, 2])
    assert not row_space_contains(m, [1, 0])


@given(
    n=st.sampled_from([2, 3, 4, 5, 6]),
    rows=st.integers(1, 3),
    cols=st.integers(1, 3),
    data=st.data(),
)
@settings(max_examples=60, deadline=None)
def test_howell_row_space_property(n, rows, cols, data):
    entries = data.draw(
        st.lists(st.integers(0, n - 1), min_size=rows * cols, max_size=rows * cols)
    )
    m = MatZn(np.array(entries).reshape(rows, cols), n)
    h, u = howell_form(m)
    assert (u.a @ m.a % n == h.a).all()
    assert brute_row_space(m) == brute_row_space(h)


def test_smith_zero_and_identity():
    u, d, v = smith_normal_form(np.zeros((2, 2), dtype=int))
    assert (d == 0).all()
    u, d, v = smith_normal_form(np.eye(3, dtype=int))
    assert (d == np.eye(3, dtype=int)).all()


def test_smith_diag_two_three():
    m = np.array([[2, 0], [0, 3]])
    u, d, v = smith_normal_form(m)
    assert (u @ m @ v == d).all()
    assert [d[0, 0], d[1, 1]] == [1, 6]


@pytest.mark.parametrize("seed", range(8))
def test_smith_properties_random(seed):
    rng = np.random.default_rng(seed)
    m = rng.integers(-6, 7, size=(int(rng.integers(1, 5)), int(rng.integers(1, 5))))
    u, d, v = smith_normal_form(m)
    assert (u @ m @ v == d).all()
    diag = [int(d[i, i]) for i in range(min(d.shape))]
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        if a and b:
            assert b % a == 0
        if a == 0:
            assert b == 0
    assert abs(exact_det(u)) == 1
    assert abs(exact_det(v)) == 1


def brute_span_with_n(rows, w, n) -> set:
    gens = [tuple(int(x) % n for x in r) for r in rows]
    span = set()
    for coeffs in itertools.product(range(n), repeat=len(gens)):
        v = np.zeros(w, dtype=np.int64)
        for c, g in zip(coeffs, gens):
            v = (v + c * np.array(g)) % n
        span.add(tuple(int(x) for x in v))
    return span


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_diagonalize_mod_matches_enumeration(n):
    rng = np.random.default_rng(50 + n)
    for _ in range(30):
        w = int(rng.integers(1, 4))
        rows = rng.integers(0, n, size=(int(rng.integers(0, 4)), w))
        factors, v, vinv = diagonalize_mod(rows, n)
        span = brute_span_with_n(rows, w, n)
        size = 1
        for f in factors:
            size *= f
        assert size == n**w // len(span)
        nontrivial = [f for f in factors if f > 1]
        assert all(b % a == 0 for a, b in zip(nontrivial, nontrivial[1:]))
        assert ((v @ vinv) % n == np.eye(w, dtype=np.int64) % n).all()
        for x in itertools.product(range(n), repeat=w):
            moved = (np.array(x) @ v) % n
            via = all(moved[j] % factors[j] == 0 for j in range(w))
            assert via == (tuple(np.array(x) % n) in span)


@pytest.mark.parametrize("n", [2, 4, 9])
def test_lattice_basis_and_coordinates(n):
    rng = np.random.default_rng(70 + n)
    for _ in range(20):
        w = int(rng.integers(1, 4))
        rows = rng.integers(0, n, size=(int(rng.integers(0, 3)), w))
        basis = lattice_basis(rows, w, n)
        # triangular with pivots dividing n
        for j in range(w):
            assert n % int(basis[j, j] % n or n) == 0
            assert not basis[j, :j].any()
        span = brute_span_with_n(rows, w, n)  # nZ^w reduces away mod n
        for x in itertools.product(range(n), repeat=w):
            try:
                c = lattice_coordinates(basis, np.array([x]), n)[0]
                assert tuple((c @ basis) % n) == x
                member = True
            except ValueError:
                member = False
            assert member == (x in span)


def test_hermite_solve_roundtrip():
    rows = [[2, 1, 0], [0, 3, 1], [4, 0, 0], [0, 4, 0], [0, 0, 4]]
    basis = hermite_basis(rows, 3)
    assert len(basis) == 3
    for vec in rows:
        c = hermite_coordinates(basis, vec)
        rebuilt = [0, 0, 0]
        for ci, row in zip(c, basis):
            rebuilt = [x + ci * y for x, y in zip(rebuilt, row)]
        assert rebuilt == vec
    # first coordinates of the lattice are all even, so [1, 0, 0] is outside
    with pytest.raises(ValueError):
        hermite_coordinates(basis, [1, 0, 0])
