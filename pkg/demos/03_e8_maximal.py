"""A 57-vertex graph whose reduced lattice is E8, and why nothing can be added."""

import time

from hofflat import classify_reduced_lattice, family_me8, min_eig_at_least, verify_me8_maximality
from hofflat.representation import find_standard_embedding, reduced_gram

t0 = time.perf_counter()
h, rep = family_me8()
print(f"{h.slim_count} slim vertices, {h.fat_count} fat vertices")
print("lambda_min >= -3:", min_eig_at_least(h, 3))
print("lattice:", classify_reduced_lattice(h))
print("embeds in a standard lattice:", find_standard_embedding(reduced_gram(h, 3)) is not None)

report = verify_me8_maximality(h, rep)
print()
print("alpha vertex:", report.alpha)
print("every V - {gamma} still spans E8:", set(report.sublattices.values()) == {(8, 1)})
print("minimal norm of the dual:", report.dual_min_norm)
print("  -> no fat vertex can be attached:", report.fat_attachment_impossible)
print(f"roots orthogonal to alpha ruled out: {report.orthogonal_resolved}/{report.orthogonal_roots}")
print(f"level-one roots already present: {report.level_one_in_v}/{report.level_one_total}")
print("  -> no slim vertex can be attached:", report.slim_attachment_impossible)
print(f"({time.perf_counter() - t0:.1f}s)")
