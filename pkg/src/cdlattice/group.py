"""Finite groups as multiplication tables.

Elements are the integers ``0..n-1`` with the identity pinned at 0.  Subsets
of a group are :class:`ElementSet` values: a Python ``int`` used as a bitset
over element indices, plus its population count.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ClosureExceedsCap, InvalidPermutation, NotAGroup, NotNormal

DEFAULT_ORDER_CAP = 512


def default_order_cap() -> int:
    return int(os.environ.get("CDLATTICE_ORDER_CAP", DEFAULT_ORDER_CAP))


# ---------------------------------------------------------------------------
# bitsets


@dataclass(frozen=True, order=False)
class ElementSet:
    """A set of element indices stored as an integer bitset."""

    bits: int
    order: int = field(default=-1, compare=False)

    def __post_init__(self):
        if self.order < 0:
            object.__setattr__(self, "order", self.bits.bit_count())

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "ElementSet":
        bits = 0
        for i in indices:
            bits |= 1 << int(i)
        return cls(bits)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "ElementSet":
        packed = np.packbits(np.asarray(mask, dtype=bool), bitorder="little")
        return cls(int.from_bytes(packed.tobytes(), "little"))

    def mask(self, n: int) -> np.ndarray:
        raw = np.frombuffer(self.bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[:n].astype(bool)

    @cached_property
    def index_array(self) -> np.ndarray:
        return np.flatnonzero(self.mask(self.bits.bit_length()))

    def indices(self) -> list[int]:
        return self.index_array.tolist()

    def __contains__(self, x: int) -> bool:
        return (self.bits >> x) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return self.order

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.bits & other.bits)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.bits | other.bits)

    def issubset(self, other: "ElementSet") -> bool:
        return self.bits & other.bits == self.bits

    def sort_key(self) -> tuple:
        return (self.order, tuple(self.indices()))

    def __repr__(self) -> str:
        return f"ElementSet({self.indices()})"


# ---------------------------------------------------------------------------
# the group table


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A validated finite group.

    Build instances with :func:`from_cayley_table`, :func:`from_generators`
    or the constructors in :mod:`cdlattice.catalog`; the raw constructor does
    no checking.
    """

    mul: np.ndarray
    inv: np.ndarray

    @property
    def n(self) -> int:
        return self.mul.shape[0]

    order = n

    identity = 0

    def __eq__(self, other):
        return isinstance(other, GroupTable) and np.array_equal(self.mul, other.mul)

    def __hash__(self):
        return hash(self.mul.tobytes())

    def __repr__(self):
        return f"<GroupTable order={self.n}>"

    @cached_property
    def everything(self) -> ElementSet:
        return ElementSet((1 << self.n) - 1, self.n)

    @cached_property
    def trivial(self) -> ElementSet:
        return ElementSet(1, 1)

    @cached_property
    def commute_bits(self) -> tuple[int, ...]:
        """``commute_bits[x]`` is the bitset of elements commuting with ``x``."""
        comm = self.mul == self.mul.T
        packed = np.packbits(comm, axis=1, bitorder="little")
        return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.ones(self.n, dtype=np.int64)
        power = np.arange(self.n)
        done = power == 0
        k = 1
        while not done.all():
            power = self.mul[power, np.arange(self.n)]
            k += 1
            hit = (power == 0) & ~done
            orders[hit] = k
            done |= hit
        return orders

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.mul.tolist()

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, picked greedily by element index."""
        gens: list[int] = []
        current = self.trivial
        for x in range(1, self.n):
            if x not in current:
                gens.append(x)
                current = _closure(self, gens)
                if current.order == self.n:
                    break
        return tuple(gens)

    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    def conj_map(self, g: int) -> np.ndarray:
        """Array sending x to g x g^-1."""
        return self.mul[self.mul[g], self.inv[g]]


def _tables_from_mul(mul: np.ndarray) -> GroupTable:
    mul = np.ascontiguousarray(mul, dtype=np.int32)
    inv = np.argmin(mul, axis=1).astype(np.int32)  # the column holding 0
    return GroupTable(mul, inv)


def from_cayley_table(table) -> GroupTable:
    """Validate a multiplication table and wrap it as a :class:`GroupTable`.

    Raises :class:`NotAGroup` naming the first failing axiom, checked in the
    order: shape, range, identity, latin, inverse, associativity.
    """
    mul = np.asarray(table)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise NotAGroup("shape", mul.shape, f"table must be a non-empty square, got shape {mul.shape}")
    n = mul.shape[0]
    if not np.issubdtype(mul.dtype, np.integer):
        raise NotAGroup("range", (), "table entries must be integers")
    bad = np.argwhere((mul < 0) | (mul >= n))
    if bad.size:
        a, b = bad[0]
        raise NotAGroup("range", (int(a), int(b)), f"entry at {tuple(bad[0])} outside 0..{n - 1}")
    ar = np.arange(n)
    for x in range(n):
        if mul[0, x] != x or mul[x, 0] != x:
            raise NotAGroup("identity", (x,), f"index 0 is not a two-sided identity at element {x}")
    sorted_rows = np.sort(mul, axis=1)
    rows_bad = np.nonzero((sorted_rows != ar).any(axis=1))[0]
    if rows_bad.size:
        raise NotAGroup("latin", (int(rows_bad[0]),), f"row {rows_bad[0]} is not a permutation")
    sorted_cols = np.sort(mul, axis=0)
    cols_bad = np.nonzero((sorted_cols != ar[:, None]).any(axis=0))[0]
    if cols_bad.size:
        raise NotAGroup("latin", (int(cols_bad[0]),), f"column {cols_bad[0]} is not a permutation")
    group = _tables_from_mul(mul)
    left = mul[ar, group.inv]
    right = mul[group.inv, ar]
    bad = np.nonzero((left != 0) | (right != 0))[0]
    if bad.size:
        raise NotAGroup("inverse", (int(bad[0]),), f"element {bad[0]} has no two-sided inverse")
    m = group.mul
    for a in range(n):
        lhs = m[m[a]]  # (ab)c indexed [b, c]
        rhs = m[a][m]  # a(bc) indexed [b, c]
        diff = np.argwhere(lhs != rhs)
        if diff.size:
            b, c = diff[0]
            raise NotAGroup("associativity", (a, int(b), int(c)))
    return group


# ---------------------------------------------------------------------------
# permutation groups


def _as_perm(gen, degree: int) -> tuple[int, ...]:
    from .perms import parse_cycles

    if isinstance(gen, str):
        images = parse_cycles(gen, degree)
    else:
        images = tuple(int(x) for x in gen)
    if len(images) != degree or sorted(images) != list(range(1, degree + 1)):
        raise InvalidPermutation(f"{gen!r} is not a bijection on 1..{degree}")
    return tuple(x - 1 for x in images)


def permutation_closure(degree: int, generators: Sequence, cap: int | None = None) -> list[tuple[int, ...]]:
    """All elements of the permutation group generated, sorted by image tuple.

    Generators are 1-based image sequences or cycle-notation strings.
    Products compose right to left: ``(x*y)(i) = x(y(i))``.
    """
    if degree < 1:
        raise InvalidPermutation("degree must be positive")
    cap = default_order_cap() if cap is None else cap
    gens = [_as_perm(g, degree) for g in generators]
    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(x[i] for i in g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise ClosureExceedsCap(f"generated group exceeds order cap {cap}")
        frontier = nxt
    return sorted(seen)


def from_generators(degree: int, generators: Sequence, cap: int | None = None) -> GroupTable:
    elements = permutation_closure(degree, generators, cap)
    perms = np.array(elements, dtype=np.int32).reshape(len(elements), degree)
    index = {p.tobytes(): i for i, p in enumerate(perms)}
    n = len(elements)
    mul = np.empty((n, n), dtype=np.int32)
    for x in range(n):
        composed = perms[x][perms]  # row y holds x(y(i))
        mul[x] = [index[row.tobytes()] for row in composed]
    return from_cayley_table(mul)


# ---------------------------------------------------------------------------
# subgroups and friends


def _closure(G: GroupTable, gens: Sequence[int], start: ElementSet | None = None) -> ElementSet:
    """Smallest subgroup containing ``gens``.

    ``start``, if given, must be a subgroup generated by a subset of ``gens``;
    the search then resumes from it instead of from the identity.
    """
    start = G.trivial if start is None else start
    mask = start.mask(G.n)
    gens_arr = np.unique(np.asarray(list(gens), dtype=np.int64))
    frontier = np.nonzero(mask)[0]
    while frontier.size and gens_arr.size:
        prod = G.mul[np.ix_(frontier, gens_arr)].ravel()
        new = np.unique(prod[~mask[prod]])
        mask[new] = True
        frontier = new
    return ElementSet.from_mask(mask)


def extend_subgroup(G: GroupTable, H: ElementSet, gens: Sequence[int]) -> ElementSet:
    """``<H, gens>`` for a subgroup H, as a union of right cosets of H.

    Right multiplication by any element permutes the right cosets of H, so a
    breadth-first search over coset representatives, stepping by the
    generators of H and ``gens``, visits exactly the cosets inside the
    generated subgroup.  ``gens`` must contain a generating set of H.
    """
    mask = H.mask(G.n)
    h_idx = H.index_array
    rows = G.rows
    reps = [0]
    i = 0
    while i < len(reps):
        row = rows[reps[i]]
        i += 1
        for s in gens:
            y = row[s]
            if not mask[y]:
                mask[G.mul[h_idx, y]] = True
                reps.append(y)
    return ElementSet.from_mask(mask)


def generated_subgroup(G: GroupTable, seed: ElementSet) -> ElementSet:
    if seed.order == 0:
        raise ValueError("seed must be non-empty")
    return _closure(G, seed.indices())


def centralizer(G: GroupTable, S: ElementSet) -> ElementSet:
    bits = G.everything.bits
    cb = G.commute_bits
    for s in S.indices():
        bits &= cb[s]
    return ElementSet(bits)


def center(G: GroupTable) -> ElementSet:
    return centralizer(G, G.everything)


def conjugate_subgroup(G: GroupTable, H: ElementSet, g: int) -> ElementSet:
    """``g H g^-1``."""
    mask = np.zeros(G.n, dtype=bool)
    mask[G.conj_map(g)[H.index_array]] = True
    return ElementSet.from_mask(mask)


def is_normal(G: GroupTable, H: ElementSet) -> bool:
    return normality_witness(G, H) is None


def normality_witness(G: GroupTable, H: ElementSet) -> int | None:
    for g in G.generators:
        if conjugate_subgroup(G, H, g).bits != H.bits:
            return g
    return None


def set_product(G: GroupTable, H: ElementSet, K: ElementSet) -> ElementSet:
    prod = G.mul[H.index_array[:, None], K.index_array[None, :]]
    mask = np.zeros(G.n, dtype=bool)
    mask[prod.ravel()] = True
    return ElementSet.from_mask(mask)


def is_abelian_set(G: GroupTable, H: ElementSet) -> bool:
    return H.issubset(centralizer(G, H))


def direct_product(G: GroupTable, H: GroupTable, cap: int | None = None) -> GroupTable:
    """Componentwise product; the pair (g, h) gets index ``g * |H| + h``."""
    cap = default_order_cap() if cap is None else cap
    n = G.n * H.n
    if n > cap:
        raise ClosureExceedsCap(f"direct product of order {n} exceeds cap {cap}")
    g = np.arange(n) // H.n
    h = np.arange(n) % H.n
    mul = G.mul[np.ix_(g, g)] * H.n + H.mul[np.ix_(h, h)]
    return from_cayley_table(mul)


def quotient(G: GroupTable, N: ElementSet) -> GroupTable:
    """``G/N`` with each coset represented by its smallest element index."""
    witness = normality_witness(G, N)
    if witness is not None:
        raise NotNormal(witness)
    n_idx = np.array(N.indices())
    coset_rep = np.full(G.n, -1, dtype=np.int64)
    reps = []
    for x in range(G.n):
        if coset_rep[x] < 0:
            members = G.mul[x, n_idx]
            coset_rep[members] = len(reps)
            reps.append(x)
    reps = np.array(reps)
    mul = coset_rep[G.mul[np.ix_(reps, reps)]]
    return from_cayley_table(mul)


def induced_subgroup(G: GroupTable, H: ElementSet) -> tuple[GroupTable, np.ndarray]:
    """The subgroup H as a group in its own right.

    Returns the table and the array mapping new indices back to G's indices
    (ascending, so the identity stays at 0).
    """
    idx = np.array(H.indices())
    local = np.full(G.n, -1, dtype=np.int64)
    local[idx] = np.arange(idx.size)
    mul = local[G.mul[np.ix_(idx, idx)]]
    if (mul < 0).any():
        raise ValueError("element set is not closed under multiplication")
    return from_cayley_table(mul), idx


# ---------------------------------------------------------------------------
# structure


def factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def commutator_subgroup(G: GroupTable, H: ElementSet) -> ElementSet:
    idx = np.array(H.indices())
    sub = G.mul[np.ix_(idx, idx)]
    inv = G.inv[idx]
    # [a, b] = a^-1 b^-1 a b
    comm = G.mul[G.mul[np.ix_(inv, inv)], sub]
    return generated_subgroup(G, ElementSet.from_indices(np.unique(comm)))


def upper_central_series(G: GroupTable) -> list[ElementSet]:
    """Z_0 = 1 < Z_1 = Z(G) < ... until it stabilises."""
    series = [G.trivial]
    while True:
        Z = series[-1]
        # x is in the next term iff [x, g] in Z for all g
        mask = np.ones(G.n, dtype=bool)
        zmask = Z.mask(G.n)
        for g in G.generators:
            comm = G.mul[G.mul[G.inv, G.inv[g]], G.mul[:, g]]
            mask &= zmask[comm]
        nxt = ElementSet.from_mask(mask)
        if nxt.bits == Z.bits:
            return series
        series.append(nxt)


def is_p_group(G: GroupTable) -> int | None:
    sig = factorize(G.n)
    return sig[0][0] if len(sig) == 1 else None


def structure_flags(G: GroupTable) -> dict:
    sig = factorize(G.n)
    derived = G.everything
    while True:
        nxt = commutator_subgroup(G, derived)
        if nxt.bits == derived.bits:
            break
        derived = nxt
    return {
        "is_abelian": G.is_abelian(),
        "prime_signature": sig,
        "is_p_group": sig[0][0] if len(sig) == 1 else None,
        "is_solvable": derived.order == 1,
        "is_nilpotent": upper_central_series(G)[-1].order == G.n,
    }


def is_zm_group(G: GroupTable) -> bool:
    """True iff every Sylow subgroup is cyclic.

    A Sylow p-subgroup of order p^a is cyclic iff G has an element of order
    p^a (all Sylow p-subgroups are conjugate).
    """
    orders = set(G.element_orders.tolist())
    return all(p**a in orders for p, a in factorize(G.n))
