"""
Which extraspecial groups are dense?
====================================

A group has dense CD-subgroups when every gap H < K that is not a single
step up the lattice has a CD member strictly inside it.  Here we compare the
extraspecial groups of order 27, 32 and 243.
"""

from cdlattice import build, cd_lattice, enumerate_subgroups, is_dense_cd
from cdlattice.density import center_avoiding_failure

specs = ["ES(3, '+')", "ES(3, '-')", "ES32('+')", "ES32('-')"]

for spec in specs:
    G = build(spec)
    L = enumerate_subgroups(G)
    cd = cd_lattice(G, L)
    v = is_dense_cd(G, L, cd)
    print(f"{spec:12s} |L| = {len(L):4d}  m* = {cd.m_star:5d}  image = {cd.image}  dense = {v.dense}")

# Order 32 splits: one type is dense, the other fails.  Show a failing pair.
G = build("ES32('+')")
L = enumerate_subgroups(G)
cd = cd_lattice(G, L)
h, k = is_dense_cd(G, L, cd, witness_cap=1).failures[0]
print("ES32('+') gap with no member inside:", L.subgroups[h].indices(), "<", L.subgroups[k].indices())

# At order 3^5 both types fail, and the failure comes from a subgroup of
# order 9 that meets the center trivially.  This takes a few seconds.
for sign in "+-":
    G = build(f"ES(3, 2, '{sign}')")
    L = enumerate_subgroups(G)
    cd = cd_lattice(G, L)
    _, k = center_avoiding_failure(G, L, cd)
    print(f"ES(3, 2, '{sign}'): {len(L)} subgroups, witness K of order {L.subgroups[k].order}")
