"""Blowing fat vertices up into cliques, and checking structure on all small graphs."""

from hofflat import enumerate_graphs, family_ht, limit_table, verify_corpus

# h(2): the expanded graphs approach lambda_min = -2 from above
rows = limit_table(family_ht(2), 64)
for r in rows[:4] + rows[-2:]:
    print(f"n = {r.n:3d}  lambda_min = {r.lambda_min_gamma_n:.9f}  gap = {r.gap:.3e}")

# every fat, indecomposable, (-3)-saturated graph on at most 4 + 4 vertices
corpus = list(enumerate_graphs(4, 4, ("fat", "indecomposable", "saturated")))
report = verify_corpus(corpus)
print()
print(report.summary())
