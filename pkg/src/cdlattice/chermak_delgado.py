"""Chermak-Delgado measure, the lattice CD(G), and its structural checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .errors import InternalInvariantError
from .group import (
    ElementSet,
    GroupTable,
    center,
    centralizer,
    conjugate_subgroup,
    extend_subgroup,
    induced_subgroup,
    is_abelian_set,
    normality_witness,
    set_product,
)
from .lattice import Lattice, enumerate_subgroups


def cd_measure(G: GroupTable, H: ElementSet) -> int:
    """``|H| * |C_G(H)|``."""
    return H.order * centralizer(G, H).order


@dataclass(frozen=True)
class CDResult:
    m_star: int
    members: tuple[int, ...]
    min_member: int
    max_member: int
    measure_of: tuple[int, ...]
    centralizer_of: tuple[int, ...] = field(repr=False)

    def __contains__(self, i: int) -> bool:
        return i in self.member_set

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    @property
    def image(self) -> list[int]:
        return sorted(set(self.measure_of))


def centralizer_indices(G: GroupTable, L: Lattice) -> tuple[int, ...]:
    """Lattice position of C_G(H) for every H, via a generating set of H."""
    full = G.everything.bits
    cb = G.commute_bits
    out = []
    for gens in L.gens:
        bits = full
        for x in gens:
            bits &= cb[x]
        out.append(L.index_of[bits])
    return tuple(out)


def cd_lattice(G: GroupTable, L: Lattice) -> CDResult:
    cents = centralizer_indices(G, L)
    measures = tuple(H.order * L.subgroups[c].order for H, c in zip(L.subgroups, cents))
    m_star = max(measures)
    members = tuple(i for i, m in enumerate(measures) if m == m_star)
    meet_bits = G.everything.bits
    join_bits = 0
    for i in members:
        meet_bits &= L.subgroups[i].bits
        join_bits |= L.subgroups[i].bits
    lo = L.index_of.get(meet_bits)
    if lo is None or lo not in members:
        raise InternalInvariantError("CD(G) has no least member")
    hi = next((i for i in members if join_bits & ~L.subgroups[i].bits == 0), None)
    if hi is None:
        raise InternalInvariantError("CD(G) has no greatest member")
    return CDResult(m_star, members, lo, hi, measures, cents)


def measure_image(G: GroupTable, L: Lattice) -> list[int]:
    cents = centralizer_indices(G, L)
    return sorted({H.order * L.subgroups[c].order for H, c in zip(L.subgroups, cents)})


# ---------------------------------------------------------------------------
# property checks


@dataclass
class PropertyCheck:
    id: str
    description: str
    passed: bool = True
    checked: int = 0
    witness: dict | None = None

    def fail(self, **witness):
        if self.passed:
            self.passed = False
            self.witness = witness


@dataclass
class PropertyReport:
    checks: list[PropertyCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[PropertyCheck]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, pid: str) -> PropertyCheck:
        for c in self.checks:
            if c.id == pid:
                return c
        raise KeyError(pid)


DESCRIPTIONS = {
    "P1": "m(H) <= m(C(H)) for all H; equality forces C(C(H)) = H",
    "P2": "H in CD implies C(H) in CD and C(C(H)) = H",
    "P3": "the greatest member M is normal and CD(M) = CD(G)",
    "P4": "the least member is normal, abelian and contains Z(G)",
    "P5": "CD is closed under meet and join, and HK = KH = <H, K> for members",
    "P6": "CD is closed under conjugation",
    "P7": "the modular law holds in CD",
    "P8": "H -> C(H) is an order-reversing involution on CD",
    "P9": "if 1 is in CD then no member has prime order",
    "P10": "Z(G) lies in every member",
}


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def verify_cd_properties(G: GroupTable, L: Lattice, cd: CDResult) -> PropertyReport:
    checks = {pid: PropertyCheck(pid, text) for pid, text in DESCRIPTIONS.items()}
    subs = L.subgroups
    cent = cd.centralizer_of
    meas = cd.measure_of
    members = cd.members
    member_set = set(members)
    Z = center(G)

    c = checks["P1"]
    for i in range(len(subs)):
        c.checked += 1
        ci = cent[i]
        if meas[i] > meas[ci]:
            c.fail(subgroup=i, measure=meas[i], centralizer=ci, centralizer_measure=meas[ci])
        elif meas[i] == meas[ci] and cent[ci] != i:
            c.fail(subgroup=i, double_centralizer=cent[ci])

    c = checks["P2"]
    for i in members:
        c.checked += 1
        if cent[i] not in member_set:
            c.fail(subgroup=i, centralizer=cent[i], detail="centralizer not in CD")
        elif cent[cent[i]] != i:
            c.fail(subgroup=i, double_centralizer=cent[cent[i]])

    c = checks["P3"]
    top = subs[cd.max_member]
    w = normality_witness(G, top)
    c.checked += 1
    if w is not None:
        c.fail(subgroup=cd.max_member, conjugator=w, detail="greatest member not normal")
    else:
        inner = sorted(_cd_of_subgroup(G, L, top))
        outer = sorted(subs[i].bits for i in members)
        if inner != outer:
            diff = sorted(set(inner) ^ set(outer))
            c.fail(subgroup=cd.max_member, detail="CD(M) differs from CD(G)",
                   elements=ElementSet(diff[0]).indices())

    c = checks["P4"]
    bottom = subs[cd.min_member]
    c.checked += 1
    w = normality_witness(G, bottom)
    if w is not None:
        c.fail(subgroup=cd.min_member, conjugator=w, detail="least member not normal")
    elif not is_abelian_set(G, bottom):
        c.fail(subgroup=cd.min_member, detail="least member not abelian")
    elif not Z.issubset(bottom):
        c.fail(subgroup=cd.min_member, detail="least member misses Z(G)")

    joins: dict[tuple[int, int], int] = {}

    def join_pos(i, j):
        key = (min(i, j), max(i, j))
        if key not in joins:
            if subs[i].issubset(subs[j]):
                joins[key] = j
            elif subs[j].issubset(subs[i]):
                joins[key] = i
            else:
                joins[key] = L.index_of[extend_subgroup(G, subs[i], L.gens[i] + L.gens[j]).bits]
        return joins[key]

    def meet_pos(i, j):
        return L.index_of[subs[i].bits & subs[j].bits]

    c = checks["P5"]
    for a, i in enumerate(members):
        for j in members[a:]:
            c.checked += 1
            m, jn = meet_pos(i, j), join_pos(i, j)
            if m not in member_set:
                c.fail(subgroups=[i, j], meet=m, detail="meet not in CD")
                continue
            if jn not in member_set:
                c.fail(subgroups=[i, j], join=jn, detail="join not in CD")
                continue
            hk = set_product(G, subs[i], subs[j])
            kh = set_product(G, subs[j], subs[i])
            if hk.bits != kh.bits or hk.bits != subs[jn].bits:
                c.fail(subgroups=[i, j], detail="HK, KH and <H, K> differ")

    c = checks["P6"]
    for i in members:
        for g in G.generators:
            c.checked += 1
            conj = conjugate_subgroup(G, subs[i], g)
            if L.index_of.get(conj.bits) not in member_set:
                c.fail(subgroup=i, conjugator=g)

    c = checks["P7"]
    if checks["P5"].passed:
        _check_modular(c, L, members, join_pos, meet_pos)
    else:
        for x, y, z in product(members, repeat=3):
            if not subs[x].issubset(subs[z]):
                continue
            c.checked += 1
            lhs = join_pos(x, meet_pos(y, z))
            rhs = meet_pos(join_pos(x, y), z)
            if lhs != rhs:
                c.fail(subgroups=[x, y, z], lhs=lhs, rhs=rhs)

    c = checks["P8"]
    for i in members:
        c.checked += 1
        if cent[i] not in member_set or cent[cent[i]] != i:
            c.fail(subgroup=i, detail="not an involution on CD")
        for j in members:
            if subs[i].issubset(subs[j]) and not subs[cent[j]].issubset(subs[cent[i]]):
                c.fail(subgroups=[i, j], detail="not order-reversing")

    c = checks["P9"]
    if L.bottom in member_set:
        for i in members:
            c.checked += 1
            if _is_prime(subs[i].order):
                c.fail(subgroup=i, order=subs[i].order)

    c = checks["P10"]
    for i in members:
        c.checked += 1
        if not Z.issubset(subs[i]):
            c.fail(subgroup=i)

    return PropertyReport([checks[pid] for pid in DESCRIPTIONS])


def _check_modular(c: PropertyCheck, L: Lattice, members, join_pos, meet_pos) -> None:
    """Modular law over all member triples with X <= Z, using member-indexed tables.

    Only valid once CD is known to be closed under meet and join.
    """
    k = len(members)
    pos = {m: a for a, m in enumerate(members)}
    J = np.empty((k, k), dtype=np.int64)
    M = np.empty((k, k), dtype=np.int64)
    for a, x in enumerate(members):
        for b, y in enumerate(members):
            J[a, b] = pos[join_pos(x, y)]
            M[a, b] = pos[meet_pos(x, y)]
    below = J == np.arange(k)[None, :]  # below[x, z]: X <= Z
    for a in range(k):
        zs = np.nonzero(below[a])[0]
        if not zs.size:
            continue
        lhs = J[a][M[:, zs]]  # [y, z]
        rhs = M[J[a][:, None], zs[None, :]]
        c.checked += lhs.size
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            y, z = bad[0]
            c.fail(subgroups=[members[a], members[y], members[zs[z]]],
                   lhs=members[lhs[y, z]], rhs=members[rhs[y, z]])


def _cd_of_subgroup(G: GroupTable, L: Lattice, M: ElementSet) -> list[int]:
    """CD(M) computed inside M as a group of its own, as bitsets over G."""
    if M.order == G.n:
        # the induced table of G is G itself, element for element
        sub, back, lattice = G, None, L
    else:
        sub, back = induced_subgroup(G, M)
        lattice = enumerate_subgroups(sub)
    res = cd_lattice(sub, lattice)
    out = []
    for i in res.members:
        local = lattice.subgroups[i]
        out.append(local.bits if back is None else ElementSet.from_indices(back[local.indices()]).bits)
    return out
