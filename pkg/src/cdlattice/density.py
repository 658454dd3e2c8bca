"""Dense CD-subgroups: the verdict, and checks of the two classification results.

G has dense CD-subgroups when every pair H < K with H not maximal in K has
some member of CD(G) strictly between them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chermak_delgado import CDResult, cd_lattice
from .errors import PreconditionUnmet
from .group import GroupTable, center, factorize, is_normal, is_zm_group
from .lattice import Lattice, enumerate_subgroups, iter_bits, open_interval

DEFAULT_WITNESS_CAP = 100


@dataclass
class DensityVerdict:
    dense: bool
    failures: list[tuple[int, int]]
    pairs_checked: int
    total_failures: int
    witness_cap: int = DEFAULT_WITNESS_CAP


def is_dense_cd(G: GroupTable, L: Lattice, cd: CDResult, witness_cap: int = DEFAULT_WITNESS_CAP) -> DensityVerdict:
    """Exhaustive scan of all pairs H < K.

    For each H, with U(X) the set of subgroups strictly above X:
    ``non-maximal K = union of U(C) over the covers C of H`` and
    ``K reachable through CD = union of U(X) over members X in U(H)``.
    Failures are the first set minus the second.
    """
    member_bits = 0
    for i in cd.members:
        member_bits |= 1 << i
    covers = L.upper_covers
    strict = [L.strict_up(i) for i in range(len(L))]
    failures: list[tuple[int, int]] = []
    total = 0
    pairs = 0
    for i in range(len(L)):
        above = strict[i]
        pairs += above.bit_count()
        nonmax = 0
        for c in iter_bits(covers[i]):
            nonmax |= strict[c]
        via_cd = 0
        for x in iter_bits(above & member_bits):
            via_cd |= strict[x]
        bad = nonmax & ~via_cd
        if bad:
            total += bad.bit_count()
            if len(failures) < witness_cap:
                for k in iter_bits(bad):
                    failures.append((i, k))
                    if len(failures) >= witness_cap:
                        break
    return DensityVerdict(total == 0, failures, pairs, total, witness_cap)


def revalidate_failure(L: Lattice, cd: CDResult, pair: tuple[int, int]) -> bool:
    """Independent re-check of a failure pair by linear interval scan."""
    h, k = pair
    H, K = L.subgroups[h], L.subgroups[k]
    if not H.issubset(K) or H.bits == K.bits:
        return False
    between = open_interval(L, H, K)
    if not between:
        return False
    return not any(L.index(X) in cd for X in between)


def center_avoiding_failure(G: GroupTable, L: Lattice, cd: CDResult) -> tuple[int, int] | None:
    """A failing pair (1, K) with |K| = p^2 and K meeting Z(G) trivially, if any."""
    p = factorize(G.n)[0][0] if G.n > 1 else None
    if p is None:
        return None
    Z = center(G)
    for k, K in enumerate(L.subgroups):
        if K.order == p * p and (K & Z).order == 1 and revalidate_failure(L, cd, (0, k)):
            return (0, k)
    return None


# ---------------------------------------------------------------------------
# classification claims


@dataclass
class Claim:
    name: str
    passed: bool
    measured: dict
    witnesses: list = field(default_factory=list)


@dataclass
class TheoremReport:
    title: str
    claims: list[Claim]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)


def check_dense_p_group(G: GroupTable, L: Lattice, cd: CDResult, verdict: DensityVerdict) -> TheoremReport:
    """Claims about a dense p-group of order p^n, n >= 2.

    (a) |Z(G)| = p and m* = p^(n+1); (b) every subgroup of order p^2 contains
    Z(G), and the normal ones lie in CD(G); (c) the measure takes exactly the
    values p^n and p^(n+1).
    """
    sig = factorize(G.n)
    if len(sig) != 1 or sig[0][1] < 2:
        raise PreconditionUnmet(f"needs a p-group of order at least p^2, got order {G.n}")
    if not verdict.dense:
        raise PreconditionUnmet("needs a group with dense CD-subgroups")
    p, n = sig[0]
    Z = center(G)

    a = Claim("center_and_max_measure", Z.order == p and cd.m_star == p ** (n + 1),
              {"center_order": Z.order, "m_star": cd.m_star, "expected_m_star": p ** (n + 1)})

    order_p2 = [i for i, H in enumerate(L.subgroups) if H.order == p * p]
    missing = [i for i in order_p2 if not Z.issubset(L.subgroups[i])]
    normal_idx = [i for i in order_p2 if is_normal(G, L.subgroups[i])]
    outside = [i for i in normal_idx if i not in cd]
    b = Claim("order_p2_subgroups", not missing and not outside,
              {"order_p2_subgroups": len(order_p2), "normal_order_p2": len(normal_idx)},
              [{"subgroup": i, "detail": "misses Z(G)"} for i in missing]
              + [{"subgroup": i, "detail": "normal but not in CD"} for i in outside])

    image = cd.image
    expected = [p**n, p ** (n + 1)]
    c = Claim("measure_image", image == expected, {"image": image, "expected": expected})
    return TheoremReport("dense p-group", [a, b, c])


@dataclass
class DensityRecord:
    order: int
    prime_signature: list[tuple[int, int]]
    is_abelian: bool
    dense: bool
    cd_size: int
    m_star: int
    label: str | None = None


def classify_density(G: GroupTable, label: str | None = None) -> DensityRecord:
    L = enumerate_subgroups(G)
    cd = cd_lattice(G, L)
    verdict = is_dense_cd(G, L, cd, witness_cap=0)
    return DensityRecord(G.n, factorize(G.n), G.is_abelian(), verdict.dense, len(cd.members), cd.m_star, label)


def is_nonabelian_pq(record: DensityRecord) -> bool:
    sig = record.prime_signature
    return not record.is_abelian and len(sig) == 2 and all(e == 1 for _, e in sig)


def check_pq_classification(records: list[DensityRecord]) -> TheoremReport:
    """For groups with at least two prime divisors: dense iff nonabelian of order pq."""
    for r in records:
        if len(r.prime_signature) < 2:
            raise PreconditionUnmet(f"record {r.label or r.order} has fewer than two prime divisors")
    bad = [r for r in records if r.dense != is_nonabelian_pq(r)]
    claim = Claim("dense_iff_nonabelian_pq", not bad,
                  {"groups": len(records), "dense": sum(r.dense for r in records)},
                  [{"label": r.label, "order": r.order, "dense": r.dense} for r in bad])
    return TheoremReport("dense iff nonabelian of order pq", [claim])


def verify_zm_chain(G: GroupTable, cd: CDResult) -> bool:
    """For a group with all Sylow subgroups cyclic, CD(G) is a single subgroup."""
    if not is_zm_group(G):
        raise PreconditionUnmet("not a ZM-group: some Sylow subgroup is not cyclic")
    return len(cd.members) == 1
