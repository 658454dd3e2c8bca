"""
Surveying the built-in corpus
=============================

The corpus is a list of group expressions: cyclic and abelian groups,
dihedral, dicyclic, symmetric and alternating groups, metacyclic groups, the
nonabelian groups of order pq, and a few direct products.  Running the whole
pipeline over it gives a table of density verdicts.
"""

from collections import Counter

from cdlattice.cli import run_survey

doc = run_survey(60)
records = doc["records"]
print(doc["group_count"], "groups;", doc["corpus"])

# Groups with at least two prime divisors: the dense ones should be exactly
# the nonabelian groups of order pq.
mixed = [r for r in records if len(r["prime_signature"]) >= 2]
print(len(mixed), "have two or more primes; the dense ones:", doc["pq_classification"]["dense"])
print("check passed:", doc["pq_classification"]["passed"])

# Prime-power orders: which are dense?
print("dense p-groups:", doc["dense_p_groups"]["groups"])

# How big do CD lattices get?
sizes = Counter(r["cd_size"] for r in records)
for size, count in sorted(sizes.items()):
    print(f"|CD| = {size:3d}: {count} groups")
