"""Exact linear algebra over Z/n.

Everything downstream (cocycle membership, trivialization solving, cohomology
group structure) reduces to three primitives implemented here: the Howell
normal form of a matrix over Z/n, linear solving with complete kernels, and
the Smith normal form of an integer matrix.  Howell form is used instead of
a lifted Smith form wherever membership in a row space has to be decided,
because Z/n is not a field and Howell form is the unique canonical row form
for Z/n-row spaces.  All arithmetic is exact; there is no floating point in
this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

MAX_MODULUS = 1 << 16


def _check_modulus(n: int) -> int:
    n = int(n)
    if not 2 <= n <= MAX_MODULUS:
        raise ValueError(f"modulus must be in [2, {MAX_MODULUS}], got {n}")
    return n


@dataclass(frozen=True)
class ModRing:
    """The ring Z/n, n >= 2.  Representatives always live in [0, n)."""

    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "modulus", _check_modulus(self.modulus))

    def reduce(self, a):
        return np.asarray(a, dtype=np.int64) % self.modulus

    def units(self) -> list[int]:
        n = self.modulus
        return [u for u in range(1, n) if gcd(u, n) == 1]


@dataclass(frozen=True)
class ModuleOverZn:
    """A finite Z/n-module presented as Z/n_1 x ... x Z/n_r with n_i | n.

    Elements are integer vectors of length r with the i-th entry reduced
    mod ``orders[i]``.
    """

    modulus: int
    orders: tuple[int, ...]

    def __post_init__(self):
        n = _check_modulus(self.modulus)
        object.__setattr__(self, "modulus", n)
        orders = tuple(int(d) for d in self.orders)
        if not orders:
            raise ValueError("module needs at least one cyclic factor")
        for d in orders:
            if d < 1 or n % d != 0:
                raise ValueError(f"cyclic order {d} does not divide modulus {n}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    def reduce(self, values):
        v = np.asarray(values, dtype=np.int64)
        return v % np.asarray(self.orders, dtype=np.int64)

    def zero(self) -> np.ndarray:
        return np.zeros(self.rank, dtype=np.int64)

    def elements(self):
        """All elements, lexicographically.  Only for brute-force checks."""
        out = np.indices(self.orders).reshape(self.rank, -1).T
        return [row.copy() for row in out]

    @classmethod
    def cyclic(cls, n: int) -> "ModuleOverZn":
        return cls(n, (n,))


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class MatZn:
    """A rows x cols matrix with entries in Z/n, immutable after creation."""

    __slots__ = ("modulus", "a")

    def __init__(self, entries, modulus: int):
        n = _check_modulus(modulus)
        a = np.atleast_2d(np.asarray(entries, dtype=np.int64)) % n
        if a.ndim != 2:
            raise ValueError("matrix entries must be two-dimensional")
        self.modulus = n
        self.a = _freeze(a)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def transpose(self) -> "MatZn":
        return MatZn(self.a.T, self.modulus)

    def __matmul__(self, other: "MatZn") -> "MatZn":
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        return MatZn(self.a @ other.a, self.modulus)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatZn)
            and self.modulus == other.modulus
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self):
        return hash((self.modulus, self.a.shape, self.a.tobytes()))

    def __repr__(self):
        return f"MatZn({self.a.tolist()}, mod {self.modulus})"

    @classmethod
    def identity(cls, size: int, modulus: int) -> "MatZn":
        return cls(np.eye(size, dtype=np.int64), modulus)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def unit_lift(a: int, n: int) -> int:
    """A unit u of Z/n with u*a == gcd(a, n) mod n."""
    a %= n
    if a == 0:
        return 1
    g = gcd(a, n)
    b, m = a // g, n // g
    u = pow(b, -1, m) if m > 1 else 1
    # some lift u + k*m, 0 <= k < g, is coprime to n
    while gcd(u, n) != 1:
        u += m
    assert u < n
    return u


def annihilator(a: int, n: int) -> int:
    """Generator of {x : x*a == 0 mod n}; zero when a is a unit."""
    return (n // gcd(a % n, n)) % n


def _howell_rows(mat: np.ndarray, n: int):
    """Howell form of the row space of ``mat`` over Z/n.

    Returns (h, u, k): h is the Howell form without zero rows, u @ mat == h,
    and the rows of k generate the left kernel {x : x @ mat == 0}.
    """
    nrows, ncols = mat.shape
    rows = [mat[i].astype(np.int64) % n for i in range(nrows)]
    trans = [np.eye(1, nrows, i, dtype=np.int64).ravel() for i in range(nrows)]
    r = 0
    for c in range(ncols):
        pivot = next((j for j in range(r, len(rows)) if rows[j][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            trans[r], trans[pivot] = trans[pivot], trans[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                a, b = int(rows[r][c]), int(rows[i][c])
                if b % a == 0:
                    q = b // a
                    rows[i] = (rows[i] - q * rows[r]) % n
                    trans[i] = (trans[i] - q * trans[r]) % n
                else:
                    g, x, y = _xgcd(a, b)
                    rows[r], rows[i] = (
                        (x * rows[r] + y * rows[i]) % n,
                        ((-(b // g)) * rows[r] + (a // g) * rows[i]) % n,
                    )
                    trans[r], trans[i] = (
                        (x * trans[r] + y * trans[i]) % n,
                        ((-(b // g)) * trans[r] + (a // g) * trans[i]) % n,
                    )
        u = unit_lift(int(rows[r][c]), n)
        if u != 1:
            rows[r] = (u * rows[r]) % n
            trans[r] = (u * trans[r]) % n
        p = int(rows[r][c])
        for i in range(r):
            q = int(rows[i][c]) // p
            if q:
                rows[i] = (rows[i] - q * rows[r]) % n
                trans[i] = (trans[i] - q * trans[r]) % n
        t = annihilator(p, n)
        if t:
            rows.append((t * rows[r]) % n)
            trans.append((t * trans[r]) % n)
        r += 1
    h = np.array(rows[:r], dtype=np.int64).reshape(r, ncols)
    u = np.array(trans[:r], dtype=np.int64).reshape(r, nrows)
    kernel = [t for row, t in zip(rows[r:], trans[r:]) if t.any()]
    k = np.array(kernel, dtype=np.int64).reshape(len(kernel), nrows)
    return h, u, k


def howell_form(m: MatZn) -> tuple[MatZn, MatZn]:
    """Canonical Howell form of m's row space, with transform @ m == canonical.

    The form is unique for a given row space; zero rows are dropped, so the
    zero space has a 0 x cols form.
    """
    h, u, _ = _howell_rows(m.a, m.modulus)
    return MatZn(h, m.modulus), MatZn(u, m.modulus)


def left_kernel(m: MatZn) -> MatZn:
    """Rows generating {x : x @ m == 0} over Z/n."""
    _, _, k = _howell_rows(m.a, m.modulus)
    return MatZn(k, m.modulus)


def right_kernel(m: MatZn) -> MatZn:
    """Rows generating {x : m @ x == 0} over Z/n."""
    return left_kernel(m.transpose())


def row_space_contains(m: MatZn, vec) -> bool:
    h, _, _ = _howell_rows(m.a, m.modulus)
    return _reduce_against(h, np.asarray(vec, dtype=np.int64) % m.modulus, m.modulus)[1]


def _reduce_against(h: np.ndarray, vec: np.ndarray, n: int):
    """Back-reduce vec by a Howell form; returns (coefficients, fully_reduced)."""
    res = vec.copy()
    coeff = np.zeros(h.shape[0], dtype=np.int64)
    for i in range(h.shape[0]):
        j = int(np.flatnonzero(h[i])[0])
        p = int(h[i][j])
        if res[j] % p:
            return coeff, False
        q = int(res[j]) // p
        coeff[i] = q
        if q:
            res = (res - q * h[i]) % n
    return coeff, not res.any()


@dataclass(frozen=True)
class LinearSolution:
    """Solution set of a @ x == b: one particular x plus kernel generators."""

    particular: np.ndarray
    kernel_basis: np.ndarray


def solve_linear(a: MatZn, b) -> LinearSolution | None:
    """Solve a @ x == b over Z/n; None means no solution exists.

    The particular solution is the deterministic canonical one produced by
    back-reduction against the Howell form of a's column space (leftmost
    pivot, smallest representative).  kernel_basis rows generate the full
    right kernel of a, so the solution set is particular + span(kernel).
    """
    n = a.modulus
    b = np.asarray(b, dtype=np.int64).ravel() % n
    if b.shape[0] != a.rows:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    h, u, k = _howell_rows(a.a.T, n)
    coeff, ok = _reduce_against(h, b, n)
    if not ok:
        return None
    x = coeff @ u % n if h.shape[0] else np.zeros(a.cols, dtype=np.int64)
    return LinearSolution(particular=x, kernel_basis=k)


# ---------------------------------------------------------------------------
# Lattices that contain n*Z^w.  For these, every generator entry can be
# reduced mod n at any time (adding multiples of the n*e_j generators), so
# basis extraction, membership coordinates, and Smith-style diagonalization
# all run vectorized with entries in [0, n).


def lattice_basis(rows: np.ndarray | list, width: int, n: int) -> np.ndarray:
    """Triangular Z-basis of span(rows) + n*Z^width, entries in [0, n].

    Rows with a Howell pivot supply the basis row for their pivot column;
    pivotless columns fall back to n*e_j.  Pivots divide n.
    """
    arr = np.asarray(rows, dtype=np.int64).reshape(-1, width) % n
    h, _, _ = _howell_rows(arr, n)
    basis = np.diag(np.full(width, n, dtype=np.int64))
    for row in h:
        j = int(np.flatnonzero(row)[0])
        basis[j] = row
    return basis


def lattice_coordinates(basis: np.ndarray, vecs: np.ndarray, n: int) -> np.ndarray:
    """Coordinates (mod n) of each row of vecs in a triangular lattice basis.

    Valid whenever the lattice contains n*Z^width, so coordinates only ever
    matter mod n downstream.  Raises ValueError if some vector lies outside
    the lattice.
    """
    width = basis.shape[0]
    res = np.asarray(vecs, dtype=np.int64).reshape(-1, width) % n
    coords = np.zeros_like(res)
    for j in range(width):
        p = int(basis[j, j]) % n or n
        rem = res[:, j] % p
        if rem.any():
            raise ValueError("vector is not in the lattice")
        q = res[:, j] // p
        coords[:, j] = q % n
        nz = np.flatnonzero(q)
        if nz.size:
            res[nz] = (res[nz] - q[nz, None] * basis[j][None, :]) % n
    return coords


def diagonalize_mod(mat: np.ndarray | list, n: int) -> tuple[list[int], np.ndarray, np.ndarray]:
    """Invariant factors of Z^w / (rowspan(mat) + n*Z^w) with transforms.

    Returns (factors, v, w) where factors[j] | factors[j+1], all dividing n,
    the column transform v satisfies: x is in the lattice iff (x @ v)[j] == 0
    mod factors[j] for all j, and w = v^{-1} mod n recovers preimages.
    Everything is computed with entries reduced mod n, which is harmless
    because the lattice contains n*Z^w.
    """
    a = np.atleast_2d(np.asarray(mat, dtype=np.int64)) % n
    a = a[a.any(axis=1)]
    width = int(np.atleast_2d(np.asarray(mat)).shape[1])
    if a.size == 0:
        a = a.reshape(0, width)
    m = a.shape[0]
    v = np.eye(width, dtype=np.int64)
    w = np.eye(width, dtype=np.int64)

    def clear_column(k):
        while True:
            col = a[k + 1 :, k]
            nz = np.flatnonzero(col)
            if nz.size == 0:
                return
            p = int(a[k, k])
            multiples = nz[col[nz] % p == 0]
            if multiples.size:
                rows = multiples + k + 1
                q = a[rows, k] // p
                a[rows] = (a[rows] - q[:, None] * a[k][None, :]) % n
                continue
            i = int(nz[0]) + k + 1
            g, x, y = _xgcd(p, int(a[i, k]))
            rk = (x * a[k] + y * a[i]) % n
            ri = ((-(int(a[i, k]) // g)) * a[k] + (p // g) * a[i]) % n
            a[k], a[i] = rk, ri

    def clear_row(k):
        while True:
            row = a[k, k + 1 :]
            nz = np.flatnonzero(row)
            if nz.size == 0:
                return
            p = int(a[k, k])
            multiples = nz[row[nz] % p == 0]
            if multiples.size:
                cols = multiples + k + 1
                q = a[k, cols] // p
                a[:, cols] = (a[:, cols] - a[:, k][:, None] * q[None, :]) % n
                v[:, cols] = (v[:, cols] - v[:, k][:, None] * q[None, :]) % n
                # inverse transform: row k of w picks up q_j times each row j
                w[k] = (w[k] + q @ w[cols]) % n
                continue
            j = int(nz[0]) + k + 1
            b = int(a[k, j])
            g, x, y = _xgcd(p, b)
            z, t = -(b // g), p // g
            # cols (k, j) <- (x*k + y*j, z*k + t*j); det x*t - y*z == 1
            ck, cj = (x * a[:, k] + y * a[:, j]) % n, (z * a[:, k] + t * a[:, j]) % n
            a[:, k], a[:, j] = ck, cj
            vk, vj = (x * v[:, k] + y * v[:, j]) % n, (z * v[:, k] + t * v[:, j]) % n
            v[:, k], v[:, j] = vk, vj
            wk, wj = (t * w[k] - z * w[j]) % n, (-y * w[k] + x * w[j]) % n
            w[k], w[j] = wk, wj

    for k in range(min(m, width)):
        while True:
            sub = a[k:, k:]
            nz = np.argwhere(sub)
            if nz.size == 0:
                break
            vals = sub[nz[:, 0], nz[:, 1]]
            best = int(np.lexsort((nz[:, 1], nz[:, 0], vals))[0])
            i, j = int(nz[best, 0]) + k, int(nz[best, 1]) + k
            if i != k:
                a[[k, i]] = a[[i, k]]
            if j != k:
                a[:, [k, j]] = a[:, [j, k]]
                v[:, [k, j]] = v[:, [j, k]]
                w[[k, j]] = w[[j, k]]
            clear_column(k)
            if a[k, k + 1 :].any():
                clear_row(k)
                continue
            if a[k + 1 :, k].any():
                continue
            p = int(a[k, k])
            rem = a[k + 1 :, k + 1 :] % p
            bad = np.argwhere(rem)
            if bad.size == 0:
                break
            a[k] = (a[k] + a[int(bad[0, 0]) + k + 1]) % n
    from math import gcd as _g

    factors = [_g(int(a[j, j]) if j < min(m, width) else 0, n) for j in range(width)]
    return factors, v % n, w % n


# ---------------------------------------------------------------------------
# Integer lattice routines (Hermite and Smith forms).  These run on Python
# ints so intermediate values can never overflow.


def _py_matrix(mat) -> list[list[int]]:
    if isinstance(mat, MatZn):
        mat = mat.a
    a = np.atleast_2d(np.asarray(mat))
    return [[int(x) for x in row] for row in a]


def hermite_basis(rows: list[list[int]], width: int) -> list[list[int]]:
    """Row-style Hermite basis of the lattice spanned by ``rows`` in Z^width.

    Requires the lattice to have full rank (callers include n*I, so it does).
    Output is upper triangular with positive diagonal pivots and entries
    above each pivot reduced into [0, pivot).
    """
    work = [list(r) for r in rows if any(r)]
    r = 0
    for c in range(width):
        pivot = next((j for j in range(r, len(work)) if work[j][c]), None)
        if pivot is None:
            raise ValueError("lattice does not have full rank")
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(r + 1, len(work)):
            if work[i][c]:
                a, b = work[r][c], work[i][c]
                if b % a == 0:
                    q = b // a
                    work[i] = [x - q * y for x, y in zip(work[i], work[r])]
                else:
                    g, x, y = _xgcd(a, b)
                    work[r], work[i] = (
                        [x * p + y * q for p, q in zip(work[r], work[i])],
                        [(-(b // g)) * p + (a // g) * q for p, q in zip(work[r], work[i])],
                    )
        if work[r][c] < 0:
            work[r] = [-x for x in work[r]]
        p = work[r][c]
        for i in range(r):
            q = work[i][c] // p
            if q:
                work[i] = [x - q * y for x, y in zip(work[i], work[r])]
        r += 1
    return [row for row in work[:r]]


def hermite_coordinates(basis: list[list[int]], vec: list[int]) -> list[int]:
    """Integer coefficients c with c @ basis == vec; raises if vec is outside."""
    res = list(vec)
    coeff = []
    for i, row in enumerate(basis):
        p = row[i]
        if res[i] % p:
            raise ValueError("vector is not in the lattice")
        q = res[i] // p
        coeff.append(q)
        if q:
            res = [x - q * y for x, y in zip(res, row)]
    if any(res):
        raise ValueError("vector is not in the lattice")
    return coeff


def _smith(mat) -> tuple[list, list, list, list]:
    """Smith normal form with transforms; also returns V^{-1}.

    U @ mat @ V == D with D diagonal, d_i | d_{i+1}, and U, V unimodular.
    """
    A = _py_matrix(mat)
    m, ncols = len(A), len(A[0])
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    W = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # V^{-1}

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        W[i], W[j] = W[j], W[i]

    def combine_rows(i, j, x, y, z, w):
        # rows (i, j) <- (x*i + y*j, z*i + w*j), det(x w - y z) == 1
        A[i], A[j] = (
            [x * p + y * q for p, q in zip(A[i], A[j])],
            [z * p + w * q for p, q in zip(A[i], A[j])],
        )
        U[i], U[j] = (
            [x * p + y * q for p, q in zip(U[i], U[j])],
            [z * p + w * q for p, q in zip(U[i], U[j])],
        )

    def combine_cols(i, j, x, y, z, w):
        # cols (i, j) <- (x*i + y*j, z*i + w*j); W gets the inverse row op
        for row in A:
            row[i], row[j] = x * row[i] + y * row[j], z * row[i] + w * row[j]
        for row in V:
            row[i], row[j] = x * row[i] + y * row[j], z * row[i] + w * row[j]
        # inverse of [[x, z], [y, w]] acting on rows i, j of W
        W[i], W[j] = (
            [w * p - z * q for p, q in zip(W[i], W[j])],
            [-y * p + x * q for p, q in zip(W[i], W[j])],
        )

    def add_row(dst, src, q):
        A[dst] = [p + q * s for p, s in zip(A[dst], A[src])]
        U[dst] = [p + q * s for p, s in zip(U[dst], U[src])]

    for k in range(min(m, ncols)):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, ncols):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != k:
                swap_rows(k, best[0])
            if best[1] != k:
                swap_cols(k, best[1])
            for i in range(k + 1, m):
                if A[i][k]:
                    a, b = A[k][k], A[i][k]
                    if b % a == 0:
                        add_row(i, k, -(b // a))
                    else:
                        g, x, y = _xgcd(a, b)
                        combine_rows(k, i, x, y, -(b // g), a // g)
            if any(A[k][j] for j in range(k + 1, ncols)):
                for j in range(k + 1, ncols):
                    if A[k][j]:
                        a, b = A[k][k], A[k][j]
                        if b % a == 0:
                            combine_cols(k, j, 1, 0, -(b // a), 1)
                        else:
                            g, x, y = _xgcd(a, b)
                            combine_cols(k, j, x, y, -(b // g), a // g)
                continue  # column may be dirty again
            if any(A[i][k] for i in range(k + 1, m)):
                continue
            d = A[k][k]
            culprit = None
            for i in range(k + 1, m):
                for j in range(k + 1, ncols):
                    if A[i][j] % d:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            add_row(k, culprit, 1)
        if A[k][k] < 0:
            A[k] = [-x for x in A[k]]
            U[k] = [-x for x in U[k]]
    D = [[A[i][j] if i == j else 0 for j in range(ncols)] for i in range(m)]
    return U, D, V, W


def smith_normal_form(mat) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form of an integer matrix: U @ mat @ V == D.

    D is diagonal with d_i | d_{i+1} and U, V are unimodular (det +-1).
    Computed in exact integer arithmetic.
    """
    U, D, V, _ = _smith(mat)
    return (
        np.array(U, dtype=np.int64),
        np.array(D, dtype=np.int64),
        np.array(V, dtype=np.int64),
    )
