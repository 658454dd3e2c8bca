"""
Measuring subgroups of S3 and D8
================================

Every subgroup H of a finite group G gets the number |H| * |C_G(H)|.  The
subgroups where that number peaks form the Chermak-Delgado lattice.  This
walks through the computation for the two smallest nonabelian groups.
"""

import numpy as np

from cdlattice import build, cd_lattice, enumerate_subgroups, verify_cd_properties

# A group is just its multiplication table; element 0 is the identity.
G = build("S(3)")
print(G.mul)

# All six subgroups, smallest first.
L = enumerate_subgroups(G)
for i, H in enumerate(L.subgroups):
    print(i, H.indices())

# Measures, one per subgroup.  The rotation subgroup A3 is its own
# centralizer, so it scores 3 * 3 = 9 and nothing beats it.
cd = cd_lattice(G, L)
print("measures:", cd.measure_of)
print("m* =", cd.m_star, " members:", [L.subgroups[i].indices() for i in cd.members])

# For D8 the top value is shared by five subgroups: the center, the three
# subgroups of order 4, and the whole group.
D = build("D(8)")
LD = enumerate_subgroups(D)
cdD = cd_lattice(D, LD)
orders = np.array([LD.subgroups[i].order for i in cdD.members])
print("D8 members by order:", orders, " m* =", cdD.m_star)

# The structural facts about the lattice can all be re-checked directly.
report = verify_cd_properties(D, LD, cdD)
for check in report.checks:
    print(f"{check.id:>4}  {'ok' if check.passed else 'FAIL'}  {check.description}")
