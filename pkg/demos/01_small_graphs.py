"""Small Hoffman graphs: eigenvalues, special graphs and the reduced lattice."""

import numpy as np

from hofflat import (
    classify_reduced_lattice,
    family_a3tilde,
    family_ht,
    is_saturated,
    lambda_min,
    min_eig_at_least,
    special_graphs,
)
from hofflat.dynkin import recognize_shape
from hofflat.representation import reduced_gram

# one slim vertex with t fat neighbours has smallest eigenvalue -t
for t in (1, 2, 3):
    h = family_ht(t)
    print(f"h({t}): lambda_min = {lambda_min(h):+.6f}, exact >= -{t}: {min_eig_at_least(h, t)}")

# only h(3) is saturated: a fourth fat vertex would push lambda_min below -3
print("saturated:", [bool(is_saturated(family_ht(t))) for t in (1, 2, 3)])
print("witness for h(1):", is_saturated(family_ht(1)).witness)

h = family_a3tilde()
print()
print(h)
g = reduced_gram(h, 3).entries
print("reduced Gram of norm 3 (rank", np.linalg.matrix_rank(g), ")")
print(g)

s = special_graphs(h)
print("minus edges:", s.minus)
print("plus edges: ", s.plus)
print("minus shape:", recognize_shape(s.graph("minus")))
print("lattice:    ", classify_reduced_lattice(h))
