"""Finite groups given by multiplication tables, homomorphisms, and module actions.

Groups are presented by full tables with element 0 always the identity, so
that every downstream table (cochain values, differentials, serialized data)
indexes elements deterministically.  Profinite Galois groups are modelled by
finite quotients supplied as data; nothing here knows about number fields.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .zmod import ModuleOverZn, _freeze


class NotAGroupError(ValueError):
    """Raised with a witness when a table fails the group axioms."""


class NotAHomError(ValueError):
    """Raised with a witness pair when a map fails the homomorphism law."""


class FiniteGroup:
    """A finite group of order m: an m x m table of element indices.

    Index 0 is the identity.  Immutable and hashable; two groups are equal
    exactly when their tables are.
    """

    __slots__ = ("mul", "inverse", "order")

    def __init__(self, mul: np.ndarray, inverse: np.ndarray):
        self.mul = _freeze(mul)
        self.inverse = _freeze(inverse)
        self.order = mul.shape[0]

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.mul, other.mul)

    def __hash__(self):
        return hash(self.mul.tobytes())

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def op(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.op(x, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def is_subgroup(self, subset) -> bool:
        s = sorted(set(int(x) for x in subset))
        if not s or s[0] != 0 or any(not 0 <= x < self.order for x in s):
            return False
        inside = set(s)
        return all(self.op(a, b) in inside for a in s for b in s) and all(
            self.inv(a) in inside for a in s
        )

    def is_normal(self, subset) -> bool:
        if not self.is_subgroup(subset):
            return False
        inside = set(int(x) for x in subset)
        return all(
            self.op(self.op(g, h), self.inv(g)) in inside
            for g in self.elements()
            for h in inside
        )

    def quotient_by(self, subset) -> tuple["FiniteGroup", "GroupHom"]:
        """Quotient by a normal subgroup; cosets ordered by minimal element."""
        if not self.is_normal(subset):
            raise NotAGroupError(f"subset {sorted(subset)} is not a normal subgroup")
        inside = sorted(set(int(x) for x in subset))
        seen: dict[int, int] = {}
        cosets: list[tuple[int, ...]] = []
        for g in self.elements():
            if g in seen:
                continue
            coset = tuple(sorted(self.op(g, h) for h in inside))
            for x in coset:
                seen[x] = len(cosets)
            cosets.append(coset)
        cosets_sorted = sorted(cosets)  # identity coset contains 0, so it stays first
        relabel = {old: new for new, old in enumerate(sorted(range(len(cosets)), key=lambda i: cosets[i]))}
        proj = np.array([relabel[seen[g]] for g in self.elements()], dtype=np.int64)
        k = len(cosets)
        mul = np.zeros((k, k), dtype=np.int64)
        for c, coset in enumerate(cosets_sorted):
            for d, coset2 in enumerate(cosets_sorted):
                mul[c, d] = proj[self.op(coset[0], coset2[0])]
        quot = make_group(mul)
        return quot, GroupHom(self, quot, proj)


def make_group(mul_table) -> FiniteGroup:
    """Validate a multiplication table and build the group.

    Index 0 must be a two-sided identity, every element needs a two-sided
    inverse, and the table must be associative.  Failures raise NotAGroupError
    carrying a witness.
    """
    mul = np.asarray(mul_table, dtype=np.int64)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
        raise NotAGroupError("multiplication table must be square")
    m = mul.shape[0]
    if m == 0:
        raise NotAGroupError("empty table")
    if mul.min() < 0 or mul.max() >= m:
        raise NotAGroupError("table entries out of range")
    idx = np.arange(m)
    if not (np.array_equal(mul[0], idx) and np.array_equal(mul[:, 0], idx)):
        bad = int(np.flatnonzero((mul[0] != idx) | (mul[:, 0] != idx))[0])
        raise NotAGroupError(f"element 0 is not a two-sided identity (witness {bad})")
    inverse = np.full(m, -1, dtype=np.int64)
    for a in range(m):
        hits = np.flatnonzero(mul[a] == 0)
        for b in hits:
            if mul[b, a] == 0:
                inverse[a] = b
                break
        if inverse[a] < 0:
            raise NotAGroupError(f"element {a} has no two-sided inverse")
    left = mul[mul, :]          # left[a, b, c] = (a*b)*c
    right = mul[:, mul]         # right[a, b, c] = a*(b*c)
    if not np.array_equal(left, right):
        a, b, c = (int(x) for x in np.argwhere(left != right)[0])
        raise NotAGroupError(f"associativity fails at witness ({a}, {b}, {c})")
    return FiniteGroup(mul.copy(), inverse)


class GroupHom:
    """A homomorphism dom -> cod stored as a length-|dom| table of cod indices."""

    __slots__ = ("dom", "cod", "map")

    def __init__(self, dom: FiniteGroup, cod: FiniteGroup, mapping: np.ndarray):
        self.dom = dom
        self.cod = cod
        self.map = _freeze(np.asarray(mapping, dtype=np.int64).copy())

    def __call__(self, g: int) -> int:
        return int(self.map[g])

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.dom == other.dom
            and self.cod == other.cod
            and np.array_equal(self.map, other.map)
        )

    def __hash__(self):
        return hash((self.dom, self.cod, self.map.tobytes()))

    def __repr__(self):
        return f"GroupHom({self.map.tolist()})"

    def is_injective(self) -> bool:
        return len(set(self.map.tolist())) == self.dom.order

    def is_trivial(self) -> bool:
        return not self.map.any()

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self after inner: dom(inner) -> cod(self)."""
        if inner.cod != self.dom:
            raise NotAHomError("composition domains do not match")
        return GroupHom(inner.dom, self.cod, self.map[inner.map])


def make_hom(dom: FiniteGroup, cod: FiniteGroup, mapping) -> GroupHom:
    """Validate mapping(g*h) == mapping(g)*mapping(h) on all pairs."""
    mp = np.asarray(mapping, dtype=np.int64)
    if mp.shape != (dom.order,):
        raise NotAHomError("map table has the wrong length")
    if mp.min() < 0 or mp.max() >= cod.order:
        raise NotAHomError("map entries out of range")
    if mp[0] != 0:
        raise NotAHomError("identity is not sent to identity (witness (0, 0))")
    lhs = mp[dom.mul]
    rhs = cod.mul[np.ix_(mp, mp)]
    if not np.array_equal(lhs, rhs):
        g, h = (int(x) for x in np.argwhere(lhs != rhs)[0])
        raise NotAHomError(f"homomorphism law fails at witness pair ({g}, {h})")
    return GroupHom(dom, cod, mp)


def trivial_hom(dom: FiniteGroup, cod: FiniteGroup) -> GroupHom:
    return GroupHom(dom, cod, np.zeros(dom.order, dtype=np.int64))


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, np.arange(g.order, dtype=np.int64))


def conjugation_hom(g: FiniteGroup, a: int) -> GroupHom:
    """The inner automorphism x -> a x a^{-1}."""
    if not 0 <= a < g.order:
        raise NotAHomError(f"element {a} out of range")
    cmap = g.mul[a][g.mul[:, g.inv(a)]]
    return GroupHom(g, g, cmap)


def inclusion_hom(sub_elements, g: FiniteGroup) -> GroupHom:
    """Embed the abstract group on ``sub_elements`` (a subgroup of g) into g."""
    elems = sorted(set(int(x) for x in sub_elements))
    if not g.is_subgroup(elems):
        raise NotAGroupError(f"{elems} is not a subgroup")
    pos = {e: i for i, e in enumerate(elems)}
    mul = np.array([[pos[g.op(a, b)] for b in elems] for a in elems], dtype=np.int64)
    sub = make_group(mul)
    return make_hom(sub, g, elems)


# ---------------------------------------------------------------------------
# Stock groups.  Element 0 is the identity in every construction.


def cyclic(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return make_group((idx[:, None] + idx[None, :]) % n)


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Pairs (x, y) encoded as x * |b| + y."""
    ob = b.order
    mul = np.zeros((a.order * ob, a.order * ob), dtype=np.int64)
    for x1 in a.elements():
        for y1 in b.elements():
            row = a.mul[x1][:, None] * ob + b.mul[y1][None, :]
            mul[x1 * ob + y1] = row.reshape(-1)
    return make_group(mul)


def klein_four() -> FiniteGroup:
    return direct_product(cyclic(2), cyclic(2))


def symmetric3() -> FiniteGroup:
    """S3 as permutations of {0,1,2} in lexicographic order, composed left-first:
    (p*q)(x) = p(q(x))."""
    perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    pos = {p: i for i, p in enumerate(perms)}
    mul = [
        [pos[tuple(p[q[x]] for x in range(3))] for q in perms]
        for p in perms
    ]
    return make_group(mul)


def s3_sign_hom(s3: FiniteGroup, target: FiniteGroup) -> GroupHom:
    """The sign character of symmetric3() into cyclic(2)."""
    return make_hom(s3, target, [0, 1, 1, 0, 0, 1])


def dihedral4() -> FiniteGroup:
    """D4, order 8: r^i s^a encoded as a*4 + i, with s r s = r^{-1}."""
    def code(i, a):
        return a * 4 + i

    mul = np.zeros((8, 8), dtype=np.int64)
    for i in range(4):
        for a in range(2):
            for j in range(4):
                for b in range(2):
                    # (r^i s^a)(r^j s^b) = r^{i + (-1)^a j} s^{a+b}
                    k = (i + (j if a == 0 else -j)) % 4
                    mul[code(i, a), code(j, b)] = code(k, (a + b) % 2)
    return make_group(mul)


def quaternion8() -> FiniteGroup:
    """Q8 with elements 1, i, j, k, -1, -i, -j, -k in that order."""
    basis_mul = {  # (b1, b2) -> (sign, basis) for b in {1, i, j, k} = {0, 1, 2, 3}
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    mul = np.zeros((8, 8), dtype=np.int64)
    for x in range(8):
        for y in range(8):
            sx, bx = (1 if x < 4 else -1), x % 4
            sy, by = (1 if y < 4 else -1), y % 4
            s, b = basis_mul[(bx, by)]
            s *= sx * sy
            mul[x, y] = b if s == 1 else b + 4
    return make_group(mul)


# ---------------------------------------------------------------------------
# Module actions.


@dataclass(frozen=True)
class GModuleAction:
    """A left action of a group on a ModuleOverZn by automorphisms.

    ``matrices[g]`` is the r x r integer matrix of the automorphism action(g);
    entry (u, v) is a homomorphism Z/orders[v] -> Z/orders[u], so it must
    kill orders[v] modulo orders[u].
    """

    group: FiniteGroup
    module: ModuleOverZn
    matrices: np.ndarray

    def __post_init__(self):
        mats = np.asarray(self.matrices, dtype=np.int64).copy()
        r = self.module.rank
        if mats.shape != (self.group.order, r, r):
            raise ValueError("need one r x r matrix per group element")
        orders = np.asarray(self.module.orders, dtype=np.int64)
        mats %= orders[None, :, None]  # reduce each row mod its target order
        if not np.array_equal(mats[0] % orders[:, None], np.eye(r, dtype=np.int64) % orders[:, None]):
            raise ValueError("action of the identity must be the identity map")
        # well-defined on each cyclic factor
        if ((mats * orders[None, None, :]) % orders[None, :, None]).any():
            raise ValueError("action matrix does not respect the cyclic orders")
        # action(g*h) == action(g) action(h)
        comp = np.einsum("guv,hvw->ghuw", mats, mats) % orders[None, None, :, None]
        table = mats[self.group.mul]
        if not np.array_equal(comp, table):
            g, h = (int(x) for x in np.argwhere((comp != table).any(axis=(2, 3)))[0])
            raise ValueError(f"action is not multiplicative at witness pair ({g}, {h})")
        # invertibility: action(g) action(g^{-1}) == id
        inv_comp = np.einsum("guv,gvw->guw", mats, mats[self.group.inverse])
        if (inv_comp % orders[None, :, None] != np.eye(r, dtype=np.int64)[None] % orders[None, :, None]).any():
            raise ValueError("some action matrix is not invertible")
        object.__setattr__(self, "matrices", _freeze(mats))

    @property
    def modulus(self) -> int:
        return self.module.modulus

    def is_trivial(self) -> bool:
        eye = np.eye(self.module.rank, dtype=np.int64)
        orders = np.asarray(self.module.orders, dtype=np.int64)
        return bool((self.matrices == eye[None] % orders[:, None]).all())

    def apply(self, g: int, values) -> np.ndarray:
        v = np.asarray(values, dtype=np.int64)
        return self.module.reduce(v @ self.matrices[g].T)

    def __eq__(self, other):
        return (
            isinstance(other, GModuleAction)
            and self.group == other.group
            and self.module == other.module
            and np.array_equal(self.matrices, other.matrices)
        )

    def __hash__(self):
        return hash((self.group, self.module, self.matrices.tobytes()))

    @classmethod
    def trivial(cls, group: FiniteGroup, module: ModuleOverZn) -> "GModuleAction":
        eye = np.eye(module.rank, dtype=np.int64)
        return cls(group, module, np.broadcast_to(eye, (group.order, module.rank, module.rank)))

    @classmethod
    def by_units(cls, group: FiniteGroup, module: ModuleOverZn, units) -> "GModuleAction":
        """Scalar action: element g acts as multiplication by units[g]."""
        units = np.asarray(units, dtype=np.int64)
        eye = np.eye(module.rank, dtype=np.int64)
        return cls(group, module, units[:, None, None] * eye[None])

    @classmethod
    def by_character(cls, hom: GroupHom, module: ModuleOverZn, unit: int) -> "GModuleAction":
        """g acts as multiplication by unit**hom(g); hom targets a cyclic group."""
        exps = hom.map
        units = np.array([pow(int(unit), int(e), module.modulus) for e in exps])
        return cls(hom.dom, module, units[:, None, None] * np.eye(module.rank, dtype=np.int64)[None])


def negation_action(group: FiniteGroup, module: ModuleOverZn, index2_hom: GroupHom) -> GModuleAction:
    """Nontrivial action through a surjection onto Z/2: g acts by (-1)^hom(g)."""
    return GModuleAction.by_character(index2_hom, module, module.modulus - 1)
