"""The subgroup lattice L(G).

Enumeration closes the set of cyclic subgroups under joins with cyclic
subgroups, using a worklist keyed by bitset.  This is complete since every
subgroup is the join of the cyclic subgroups it contains.

Order-theoretic queries work on bitsets *over lattice positions*: for each
element ``g`` we keep the set of subgroups containing ``g``, and the set of
subgroups above ``H`` is the intersection of those sets over a generating
set of ``H``.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import LatticeExceedsCap, NotComparable
from .group import ElementSet, GroupTable, conjugate_subgroup, extend_subgroup, generated_subgroup

DEFAULT_SUBGROUP_CAP = 250_000


def default_subgroup_cap() -> int:
    return int(os.environ.get("CDLATTICE_SUBGROUP_CAP", DEFAULT_SUBGROUP_CAP))


def iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(eq=False)
class Lattice:
    group: GroupTable
    subgroups: list[ElementSet]
    gens: list[tuple[int, ...]]
    index_of: dict[int, int] = field(repr=False)

    def __len__(self):
        return len(self.subgroups)

    def __getitem__(self, i: int) -> ElementSet:
        return self.subgroups[i]

    def __repr__(self):
        return f"<Lattice of {len(self)} subgroups of a group of order {self.group.n}>"

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.subgroups) - 1

    def index(self, H: ElementSet) -> int:
        try:
            return self.index_of[H.bits]
        except KeyError:
            raise KeyError(f"{H!r} is not a subgroup in this lattice") from None

    def _pos(self, H) -> int:
        return H if isinstance(H, (int, np.integer)) else self.index(H)

    @cached_property
    def orders(self) -> np.ndarray:
        return np.array([H.order for H in self.subgroups], dtype=np.int64)

    @cached_property
    def member_bits(self) -> tuple[int, ...]:
        """``member_bits[g]``: positions of the subgroups containing element g."""
        n = self.group.n
        incidence = np.zeros((n, len(self.subgroups)), dtype=bool)
        for j, H in enumerate(self.subgroups):
            incidence[:, j] = H.mask(n)
        packed = np.packbits(incidence, axis=1, bitorder="little")
        return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)

    @cached_property
    def _up(self) -> list[int]:
        full = (1 << len(self.subgroups)) - 1
        mb = self.member_bits
        out = []
        for g in self.gens:
            acc = full
            for x in g:
                acc &= mb[x]
            out.append(acc)
        return out

    def up(self, H) -> int:
        """Positions of subgroups containing H (H included), as a bitset."""
        return self._up[self._pos(H)]

    def strict_up(self, H) -> int:
        i = self._pos(H)
        return self._up[i] & ~(1 << i)

    def down(self, K) -> int:
        """Positions of subgroups contained in K (K included), as a bitset."""
        Kset = self.subgroups[self._pos(K)]
        outside = 0
        mb = self.member_bits
        for g in range(self.group.n):
            if g not in Kset:
                outside |= mb[g]
        return ((1 << len(self.subgroups)) - 1) & ~outside

    @cached_property
    def upper_covers(self) -> list[int]:
        """``upper_covers[i]``: positions of the subgroups covering position i."""
        out = []
        for i in range(len(self.subgroups)):
            above = self._up[i] & ~(1 << i)
            reach = 0
            covers = 0
            # positions ascend with order, so a cover is met before anything above it
            for j in iter_bits(above):
                if not (reach >> j) & 1:
                    covers |= 1 << j
                    reach |= self._up[j] & ~(1 << j)
            out.append(covers)
        return out

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        """All pairs (i, j) with subgroup i maximal in subgroup j."""
        return [(i, j) for i, c in enumerate(self.upper_covers) for j in iter_bits(c)]


def cyclic_subgroups(G: GroupTable) -> list[tuple[int, ElementSet]]:
    """Distinct cyclic subgroups with the smallest generating element of each."""
    seen: dict[int, int] = {}
    out = []
    for x in range(G.n):
        powers = [0]
        y = x
        while y != 0:
            powers.append(y)
            y = int(G.mul[y, x])
        C = ElementSet.from_indices(powers)
        if C.bits not in seen:
            seen[C.bits] = x
            out.append((x, C))
    return out


def enumerate_subgroups(G: GroupTable, cap: int | None = None) -> Lattice:
    cap = default_subgroup_cap() if cap is None else cap
    cyclics = [(x, C) for x, C in cyclic_subgroups(G) if x != 0]
    found: dict[int, tuple[ElementSet, tuple[int, ...]]] = {1: (G.trivial, ())}
    queue: deque[int] = deque()

    def add(H: ElementSet, gens: tuple[int, ...]):
        if H.bits not in found:
            found[H.bits] = (H, gens)
            queue.append(H.bits)
            if len(found) > cap:
                raise LatticeExceedsCap(f"more than {cap} subgroups")

    for x, C in cyclics:
        add(C, (x,))
    while queue:
        H, gens = found[queue.popleft()]
        if H.order == G.n:
            continue
        h_idx = H.index_array
        # <H, x> depends only on the cosets Hx and xH
        covered = H.mask(G.n)
        for x, _ in cyclics:
            if covered[x]:
                continue
            covered[G.mul[h_idx, x]] = True
            covered[G.mul[x, h_idx]] = True
            add(extend_subgroup(G, H, gens + (x,)), gens + (x,))

    ordered = sorted(found.values(), key=lambda item: item[0].sort_key())
    subgroups = [H for H, _ in ordered]
    gens = [g for _, g in ordered]
    return Lattice(G, subgroups, gens, {H.bits: i for i, H in enumerate(subgroups)})


def _check_lt(L: Lattice, H: ElementSet, K: ElementSet):
    if not H.issubset(K) or H.bits == K.bits:
        raise NotComparable(f"{H!r} is not a proper subgroup of {K!r}")


def open_interval(L: Lattice, H: ElementSet, K: ElementSet) -> list[ElementSet]:
    """All X in L with H < X < K (linear scan with a divisibility prefilter)."""
    _check_lt(L, H, K)
    out = []
    for X in L.subgroups:
        if X.order <= H.order or X.order >= K.order:
            continue
        if X.order % H.order or K.order % X.order:
            continue
        if H.issubset(X) and X.issubset(K):
            out.append(X)
    return out


def is_maximal_in(L: Lattice, H: ElementSet, K: ElementSet) -> bool:
    return not open_interval(L, H, K)


def normal_subgroups(G: GroupTable, L: Lattice) -> list[ElementSet]:
    gens = G.generators
    return [H for H in L.subgroups if all(conjugate_subgroup(G, H, g).bits == H.bits for g in gens)]


def meet(L: Lattice, H: ElementSet, K: ElementSet) -> ElementSet:
    return L.subgroups[L.index(H & K)]


def join(G: GroupTable, L: Lattice, H: ElementSet, K: ElementSet) -> ElementSet:
    if H.issubset(K):
        return K
    if K.issubset(H):
        return H
    gi, gk = L.gens[L.index(H)], L.gens[L.index(K)]
    return L.subgroups[L.index(extend_subgroup(G, H, gi + gk))]


def join_of_sets(G: GroupTable, H: ElementSet, K: ElementSet) -> ElementSet:
    return generated_subgroup(G, H | K)
