"""The A_n family: an explicit integral representation and saturation."""

import numpy as np

from hofflat import family_a5, family_an, is_saturated, special_graphs
from hofflat.dynkin import recognize_shape
from hofflat.graph import are_isomorphic
from hofflat.representation import reduced_gram

ns = (2, 3, 2)
h, psi = family_an(ns)
print(f"parameters {ns}: {h.slim_count} slim, {h.fat_count} fat")

# psi lives in Z^l with vectors of norm 1 at the block ends and norm 2 inside
for name in psi.names:
    print(f"  psi({name}) = {psi.vectors[name]}")

ok = np.array_equal(psi.gram(), reduced_gram(h, 3).entries)
print("psi Gram equals B + 3I:", ok)

s = special_graphs(h)
print("minus shape:", recognize_shape(s.graph("minus")))
print("plus edges: ", s.plus)
print("(-3)-saturated:", bool(is_saturated(h)))

# two graphs from (1,2,1) with identical special graphs that are not isomorphic
h0, h1 = family_a5()
for tag, g in (("H0", h0), ("H1", h1)):
    sg = special_graphs(g)
    print(f"{tag}: minus {recognize_shape(sg.graph('minus'))}, plus {sg.plus}, saturated {bool(is_saturated(g))}")
print("H0 isomorphic to H1:", are_isomorphic(h0, h1))
