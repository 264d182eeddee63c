"""Inhomogeneous cochain complexes C^i(G, M) with dense lexicographic tables.

A degree-i cochain stores one module value per tuple (g_1, ..., g_i), flattened
in lexicographic order with g_1 most significant.  The differential is the
signed one:

    df(g_1, ..., g_{i+1}) = g_1 f(g_2, ..., g_{i+1})
        + sum_{k=1}^{i} (-1)^k f(g_1, ..., g_k g_{k+1}, ..., g_{i+1})
        + (-1)^{i+1} f(g_1, ..., g_i)

Some sources print the middle sum without its alternating signs; without them
d(df) = 0 fails for odd moduli, so the signed convention is the one used
throughout this package.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup, GModuleAction, GroupHom
from .zmod import (
    left_kernel,
    MatZn,
    diagonalize_mod,
    lattice_basis,
    lattice_coordinates,
    right_kernel,
    solve_linear,
    _freeze,
)

DEFAULT_DEGREE_CAP = 4


class DegreeBoundError(ValueError):
    """Raised when an operation would exceed the configured degree cap."""


@functools.lru_cache(maxsize=None)
def _digits(m: int, i: int) -> tuple[np.ndarray, ...]:
    """Digit arrays of all m-ary tuples of length i, lexicographic order."""
    count = m**i
    ar = np.arange(count, dtype=np.int64)
    return tuple((ar // m ** (i - 1 - j)) % m for j in range(i))


def _encode(parts, m: int, count: int) -> np.ndarray:
    """Flat index of tuples given per-position digit arrays (or constants)."""
    idx = np.zeros(count, dtype=np.int64)
    for p in parts:
        idx = idx * m + p
    return idx


def decode_index(idx: int, m: int, i: int) -> tuple[int, ...]:
    out = []
    for j in range(i):
        out.append((idx // m ** (i - 1 - j)) % m)
    return tuple(out)


class Cochain:
    """A map G^i -> M as a dense (|G|^i, rank M) table, immutable."""

    __slots__ = ("coeffs", "degree", "values")

    def __init__(self, coeffs: GModuleAction, degree: int, values):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        m = coeffs.group.order
        r = coeffs.module.rank
        vals = coeffs.module.reduce(np.asarray(values, dtype=np.int64)).reshape(m**degree, r)
        self.coeffs = coeffs
        self.degree = degree
        self.values = _freeze(vals)

    @property
    def group(self) -> FiniteGroup:
        return self.coeffs.group

    @property
    def module(self):
        return self.coeffs.module

    def __call__(self, *args) -> np.ndarray:
        if len(args) != self.degree:
            raise ValueError(f"expected {self.degree} arguments")
        idx = 0
        for g in args:
            idx = idx * self.group.order + int(g)
        return self.values[idx]

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.coeffs == other.coeffs
            and self.degree == other.degree
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self):
        return hash((self.coeffs, self.degree, self.values.tobytes()))

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        return Cochain(self.coeffs, self.degree, self.values + other.values)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        return Cochain(self.coeffs, self.degree, self.values - other.values)

    def __neg__(self) -> "Cochain":
        return Cochain(self.coeffs, self.degree, -self.values)

    def __rmul__(self, scalar: int) -> "Cochain":
        return Cochain(self.coeffs, self.degree, int(scalar) * self.values)

    def _check_compatible(self, other: "Cochain"):
        if self.coeffs != other.coeffs or self.degree != other.degree:
            raise ValueError("cochains live in different groups")

    def is_zero(self) -> bool:
        return not self.values.any()

    def __repr__(self):
        return f"Cochain(degree={self.degree}, group_order={self.group.order})"

    @classmethod
    def zero(cls, coeffs: GModuleAction, degree: int) -> "Cochain":
        m, r = coeffs.group.order, coeffs.module.rank
        return cls(coeffs, degree, np.zeros((m**degree, r), dtype=np.int64))

    @classmethod
    def from_function(cls, coeffs: GModuleAction, degree: int, fn) -> "Cochain":
        m, r = coeffs.group.order, coeffs.module.rank
        vals = np.zeros((m**degree, r), dtype=np.int64)
        for idx in range(m**degree):
            vals[idx] = np.asarray(fn(*decode_index(idx, m, degree)), dtype=np.int64).reshape(r)
        return cls(coeffs, degree, vals)

    @classmethod
    def random(cls, coeffs: GModuleAction, degree: int, rng: np.random.Generator) -> "Cochain":
        m, r = coeffs.group.order, coeffs.module.rank
        highs = np.asarray(coeffs.module.orders, dtype=np.int64)
        vals = rng.integers(0, highs[None, :], size=(m**degree, r), dtype=np.int64, endpoint=False)
        return cls(coeffs, degree, vals)


def _act_batch(coeffs: GModuleAction, gs: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Apply action(gs[t]) to values[t] for all t at once."""
    if coeffs.is_trivial():
        return values
    mats = coeffs.matrices[gs]
    return np.einsum("nuv,nv->nu", mats, values)


def differential(f: Cochain, *, degree_cap: int = DEFAULT_DEGREE_CAP) -> Cochain:
    """The signed inhomogeneous differential; d(df) == 0 always.

    Raising ``degree_cap`` past 4 is allowed but tables grow as |G|^degree.
    """
    i = f.degree
    if i + 1 > degree_cap:
        raise DegreeBoundError(f"differential output degree {i + 1} exceeds cap {degree_cap}")
    m = f.group.order
    r = f.module.rank
    count = m ** (i + 1)
    digits = _digits(m, i + 1)
    mul = f.group.mul
    acc = _act_batch(f.coeffs, digits[0], f.values[_encode(digits[1:], m, count)]).astype(np.int64)
    for k in range(1, i + 1):
        merged = mul[digits[k - 1], digits[k]]
        parts = list(digits[: k - 1]) + [merged] + list(digits[k + 1 :])
        acc += (-1) ** k * f.values[_encode(parts, m, count)]
    acc += (-1) ** (i + 1) * f.values[_encode(digits[:i], m, count)]
    return Cochain(f.coeffs, i + 1, acc)


def pullback(rho: GroupHom, f: Cochain) -> Cochain:
    """(rho* f)(g_1, ..., g_i) = f(rho g_1, ..., rho g_i), with the induced action."""
    if rho.cod != f.group:
        raise ValueError("pullback target group does not match the cochain's group")
    induced = GModuleAction(rho.dom, f.module, f.coeffs.matrices[rho.map])
    m_dom = rho.dom.order
    m_cod = f.group.order
    i = f.degree
    count = m_dom**i
    digits = _digits(m_dom, i)
    mapped = [rho.map[d] for d in digits]
    idx = np.zeros(count, dtype=np.int64)
    for p in mapped:
        idx = idx * m_cod + p
    return Cochain(induced, i, f.values[idx])


# ---------------------------------------------------------------------------
# The differential as an explicit matrix, and solving d x = target.


@functools.lru_cache(maxsize=None)
def differential_matrix(coeffs: GModuleAction, i: int) -> np.ndarray:
    """Matrix of d: C^i -> C^{i+1} on flattened coordinates, entries in [0, n)."""
    m = coeffs.group.order
    r = coeffs.module.rank
    n = coeffs.modulus
    rows = m ** (i + 1) * r
    cols = m**i * r
    out = np.zeros((rows, cols), dtype=np.int64)
    count = m ** (i + 1)
    digits = _digits(m, i + 1)
    tuples = np.arange(count, dtype=np.int64)
    first = _encode(digits[1:], m, count)
    if coeffs.is_trivial():
        for u in range(r):
            np.add.at(out, (tuples * r + u, first * r + u), 1)
    else:
        mats = coeffs.matrices[digits[0]]
        for u in range(r):
            for v in range(r):
                np.add.at(out, (tuples * r + u, first * r + v), mats[:, u, v])
    mul = coeffs.group.mul
    for k in range(1, i + 1):
        merged = mul[digits[k - 1], digits[k]]
        parts = list(digits[: k - 1]) + [merged] + list(digits[k + 1 :])
        idx = _encode(parts, m, count)
        for u in range(r):
            np.add.at(out, (tuples * r + u, idx * r + u), (-1) ** k)
    last = _encode(digits[:i], m, count)
    for u in range(r):
        np.add.at(out, (tuples * r + u, last * r + u), (-1) ** (i + 1))
    return _freeze(out % n)


def _row_scales(coeffs: GModuleAction, degree: int) -> np.ndarray:
    """Scale factor n / order(coordinate) for each flattened coordinate of C^degree."""
    n = coeffs.modulus
    m = coeffs.group.order
    per = np.array([n // d for d in coeffs.module.orders], dtype=np.int64)
    return np.tile(per, m**degree)


@functools.lru_cache(maxsize=None)
def _scaled_differential(coeffs: GModuleAction, i: int) -> MatZn:
    """d as a Z/n matrix whose kernel/image encode the mixed-order module exactly.

    Row s is multiplied by n / order(s), so congruence mod n in each row is
    congruence mod the coordinate's cyclic order.
    """
    d = differential_matrix(coeffs, i)
    scales = _row_scales(coeffs, i + 1)
    return MatZn(d * scales[:, None], coeffs.modulus)


def solve_differential(
    coeffs: GModuleAction,
    degree: int,
    target: Cochain,
    *,
    column_order: np.ndarray | None = None,
) -> Cochain | None:
    """Solve d x = target for x in C^degree; None when no solution exists.

    The returned solution is the canonical one under leftmost-pivot solving;
    ``column_order`` permutes the unknowns first (used to confirm that
    downstream invariants do not depend on the solver's variable order).
    """
    if target.degree != degree + 1:
        raise ValueError("target degree must be degree + 1")
    a = _scaled_differential(coeffs, degree)
    b = (target.values.reshape(-1) * _row_scales(coeffs, degree + 1)) % coeffs.modulus
    if column_order is not None:
        perm = np.asarray(column_order, dtype=np.int64)
        sol = solve_linear(MatZn(a.a[:, perm], coeffs.modulus), b)
        if sol is None:
            return None
        x = np.zeros(a.cols, dtype=np.int64)
        x[perm] = sol.particular
    else:
        sol = solve_linear(a, b)
        if sol is None:
            return None
        x = sol.particular
    return Cochain(coeffs, degree, x)


# ---------------------------------------------------------------------------
# Classification of cochains and cohomology groups.


@dataclass(frozen=True)
class NonCocycle:
    """df != 0; the witness is the first tuple where it fails."""

    witness: tuple[int, ...]


@dataclass(frozen=True)
class Coboundary:
    """f = d(preimage); the preimage is the canonical solver output.

    ``preimage`` is None only in degree 0, where B^0 = 0.
    """

    preimage: Cochain | None


@dataclass(frozen=True)
class NontrivialClass:
    """Coordinates of [f] in the invariant-factor decomposition of H^i."""

    coordinates: tuple[int, ...]


Classification = NonCocycle | Coboundary | NontrivialClass


def classify(f: Cochain, *, degree_cap: int = DEFAULT_DEGREE_CAP) -> Classification:
    """Total classification of a cochain: non-cocycle, coboundary, or class."""
    df = differential(f, degree_cap=degree_cap)
    if not df.is_zero():
        flat = int(np.flatnonzero(df.values.any(axis=1))[0])
        return NonCocycle(decode_index(flat, f.group.order, f.degree + 1))
    if f.degree == 0:
        if f.is_zero():
            return Coboundary(None)
        return NontrivialClass(cohomology(f.coeffs, 0).coordinates(f))
    pre = solve_differential(f.coeffs, f.degree - 1, f)
    if pre is not None:
        return Coboundary(pre)
    return NontrivialClass(cohomology(f.coeffs, f.degree).coordinates(f))


class CohomologyGroup:
    """H^i(G, M) with invariant factors, generating cocycles, and coordinates.

    Coordinates are computed through a fixed Hermite basis of the cocycle
    lattice followed by the Smith transform of the coboundary relations, so
    they are zero exactly on coboundaries and the published generators map to
    the standard basis vectors.
    """

    def __init__(self, coeffs, degree, invariant_factors, generators, basis, v_rows, diag, kept):
        self.coeffs = coeffs
        self.degree = degree
        self.invariant_factors = invariant_factors
        self.generators = generators
        self._basis = basis    # Hermite basis of the cocycle lattice (python ints)
        self._v_rows = v_rows  # the V transform of the Smith form of the relations
        self._diag = diag
        self._kept = kept

    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def coordinates(self, f: Cochain) -> tuple[int, ...]:
        """Coordinates of a cocycle in the ⊕ Z/d_j decomposition."""
        if f.coeffs != self.coeffs or f.degree != self.degree:
            raise ValueError("cochain does not live in this cohomology group")
        n = self.coeffs.modulus
        try:
            c = lattice_coordinates(self._basis, f.values.reshape(1, -1), n)[0]
        except ValueError:
            raise ValueError("not a cocycle") from None
        moved = (c @ self._v_rows) % n
        return tuple(int(moved[j]) % self._diag[j] for j in self._kept)

    def __repr__(self):
        return f"CohomologyGroup(degree={self.degree}, invariant_factors={self.invariant_factors})"


@functools.lru_cache(maxsize=None)
def cohomology(coeffs: GModuleAction, degree: int, *, degree_cap: int = DEFAULT_DEGREE_CAP) -> CohomologyGroup:
    """Compute H^degree(G, M) = ker d / im d by canonical forms.

    Kernel generators come from the Howell-form right kernel over Z/n; the
    quotient structure comes from the Smith normal form of the coboundary
    lattice written in a Hermite basis of the cocycle lattice.
    """
    if degree + 1 > degree_cap:
        raise DegreeBoundError(f"cohomology in degree {degree} needs d up to {degree + 1} > cap {degree_cap}")
    n = coeffs.modulus
    m = coeffs.group.order
    r = coeffs.module.rank
    width = m**degree * r
    orders = np.array([coeffs.module.orders[t % r] for t in range(width)], dtype=np.int64)

    # Z-basis of the cocycle lattice (the lattice contains n*Z^width, which
    # keeps all entries reduced mod n throughout)
    kernel = right_kernel(_scaled_differential(coeffs, degree))
    basis = lattice_basis(kernel.a, width, n)

    # coboundary lattice generators in basis coordinates: columns of the
    # previous differential plus the coordinate relations m_t e_t; the
    # n*Z^width part contributes through the mod-n kernel of the basis
    # (coefficient vectors c with c @ basis == 0 mod n)
    if degree > 0:
        dmat = differential_matrix(coeffs, degree - 1)
        b_rows = np.vstack([dmat.T % n, np.diag(orders) % n])
    else:
        b_rows = np.diag(orders) % n
    nker = left_kernel(MatZn(basis, n)).a.reshape(-1, width)
    cmat = np.vstack([lattice_coordinates(basis, b_rows, n), nker])
    diag, v, w = diagonalize_mod(cmat, n)
    kept = [j for j in range(width) if diag[j] > 1]
    invariant_factors = tuple(diag[j] for j in kept)

    gen_vecs = (w[kept] @ basis) % n if kept else np.zeros((0, width), dtype=np.int64)
    generators = tuple(
        Cochain(coeffs, degree, vec.reshape(m**degree, r)) for vec in gen_vecs
    )

    return CohomologyGroup(
        coeffs,
        degree,
        invariant_factors,
        generators,
        basis,
        v,
        diag,
        kept,
    )


def normalized_representative(f: Cochain) -> Cochain:
    """A cohomologous cochain vanishing whenever some argument is the identity.

    Never applied implicitly; cochains in this package are not assumed
    normalized.  Works for cocycles (where the normalized subcomplex is
    quasi-isomorphic); raises ValueError if no normalized representative
    exists in f + B.
    """
    i = f.degree
    if i == 0:
        return f
    m = f.group.order
    r = f.module.rank
    degenerate = [
        idx for idx in range(m**i) if 0 in decode_index(idx, m, i)
    ]
    a = _scaled_differential(f.coeffs, i - 1)
    sel = np.array([t for idx in degenerate for t in range(idx * r, idx * r + r)], dtype=np.int64)
    b = (f.values.reshape(-1) * _row_scales(f.coeffs, i)) % f.coeffs.modulus
    sol = solve_linear(MatZn(a.a[sel], f.coeffs.modulus), b[sel])
    if sol is None:
        raise ValueError("no normalized representative in the coboundary class")
    return f - differential(Cochain(f.coeffs, i - 1, sol.particular))
