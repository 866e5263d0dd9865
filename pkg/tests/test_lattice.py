from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hofflat.decomposition import indecomposable_components
from hofflat.errors import EigenvalueTooSmall, EmptyRepresentation, NotFat, NotIndecomposable
from hofflat.families import family_a3tilde, family_an, family_ht, family_me8
from hofflat.graph import attach_fat, disjoint_union, rename, slim_graph
from hofflat.lattice import (
    LatticeClass,
    LatticeInvariants,
    classify_reduced_lattice,
    classify_with_embedding,
    dual_gram,
    e8_inner_products,
    e8_root_system,
    gram_invariants,
    integer_row_basis,
    lattice_invariants,
    recognize,
    shortest_vector_norm,
)
from hofflat.representation import VectorRep
from hofflat.spectra import min_eig_at_least


def test_e8_root_system():
    roots = e8_root_system().roots
    assert len(roots) == 240
    assert len(set(roots)) == 240
    assert set(roots) == {tuple(-x for x in r) for r in roots}
    assert all(sum(x * x for x in r) == 8 for r in roots)
    ip = e8_inner_products()
    assert set(np.unique(ip).tolist()) == {-8, -4, 0, 4, 8}
    assert list(roots) == sorted(roots)
    for a in range(0, 240, 37):
        assert int((ip[a] == 4).sum()) == 56
        assert int((ip[a] == 0).sum()) == 126


def test_e8_roots_are_all_norm_two_vectors_of_the_lattice():
    # E8 = D8 plus the half-integral coset with even coordinate sum; in doubled
    # coordinates these are the vectors below of norm 8
    found = set()
    for v in product(range(-2, 3), repeat=8):
        if sum(x * x for x in v) != 8:
            continue
        if all(x % 2 == 0 for x in v) and sum(v) % 4 == 0:
            found.add(v)
        elif all(x % 2 for x in v) and sum(v) % 4 == 0:
            found.add(v)
    assert found == set(e8_root_system().roots)


def _basis_rank(rows):
    return np.linalg.matrix_rank(np.array(rows, dtype=float)) if rows else 0


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=7))
def test_integer_row_basis_spans_same_lattice(gens):
    basis = integer_row_basis(gens)
    assert len(basis) == _basis_rank(gens)
    if not basis:
        return
    b = np.array(basis, dtype=float)
    # each generator is an integer combination of the basis and vice versa
    for g in gens:
        coef, *_ = np.linalg.lstsq(b.T, np.array(g, dtype=float), rcond=None)
        assert np.allclose(coef, np.round(coef)) and np.allclose(b.T @ np.round(coef), g)
    # covolumes agree: the basis Gram determinant equals the gcd of maximal minors squared
    r = len(basis)
    from itertools import combinations
    from math import gcd

    gm = np.array(gens, dtype=np.int64)
    g_all = 0
    for rows in combinations(range(len(gens)), r):
        for cols in combinations(range(4), r):
            g_all = gcd(g_all, abs(round(np.linalg.det(gm[np.ix_(rows, cols)].astype(float)))))
    gb = 0
    bm = np.array(basis, dtype=np.int64)
    for cols in combinations(range(4), r):
        gb = gcd(gb, abs(round(np.linalg.det(bm[:, cols].astype(float)))))
    assert g_all == gb


def brute_force_min_norm(gram, radius=3):
    n = len(gram)
    g = np.array(gram, dtype=object)
    best = None
    for x in product(range(-radius, radius + 1), repeat=n):
        if any(x):
            v = np.array(x, dtype=object)
            val = v @ g @ v
            if best is None or val < best:
                best = val
    return best


@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_shortest_vector_matches_brute_force(n, seed):
    rng = np.random.default_rng(seed)
    while True:
        b = rng.integers(-2, 3, size=(n, n))
        if round(abs(np.linalg.det(b))) != 0:
            break
    # small random bases keep the shortest vector's coordinates inside the box
    gram = (b @ b.T).tolist()
    got = shortest_vector_norm(gram)
    assert got == brute_force_min_norm(gram, radius=6 if n <= 3 else 4)


def test_shortest_vector_rational_and_errors():
    assert shortest_vector_norm([[Fraction(1, 2), 0], [0, 3]]) == Fraction(1, 2)
    assert shortest_vector_norm([]) is None
    with pytest.raises(ValueError):
        shortest_vector_norm([[1, 1], [1, 1]])


def a_gens(n):
    return [[0] * i + [1, -1] + [0] * (n - 1 - i) for i in range(n)]


@pytest.mark.parametrize("n", range(1, 9))
def test_invariant_table_a(n):
    inv = lattice_invariants(VectorRep("Standard", {f"g{i}": tuple(r) for i, r in enumerate(a_gens(n))}))
    assert tuple(inv) == (n, n + 1, 2)
    assert recognize(inv) == LatticeClass("A", n, n, n + 1, 2)


@pytest.mark.parametrize("n", range(4, 9))
def test_invariant_table_d(n):
    gens = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        gens[i][i], gens[i][i + 1] = 1, -1
    gens[n - 1][n - 2], gens[n - 1][n - 1] = 1, 1
    inv = lattice_invariants(VectorRep("Standard", {f"g{i}": tuple(r) for i, r in enumerate(gens)}))
    assert tuple(inv) == (n, 4, 2)
    assert recognize(inv).kind == "D"


def test_d3_is_reported_as_a3():
    gens = [(1, -1, 0), (0, 1, -1), (0, 1, 1)]
    inv = lattice_invariants(VectorRep("Standard", {str(i): g for i, g in enumerate(gens)}))
    assert tuple(inv) == (3, 4, 2)
    assert str(recognize(inv)) == "A3"


def e_subsystem(rank):
    """Simple roots of E8 in doubled coordinates; the first ``rank`` give E6, E7, E8."""
    simple = [
        (1, -1, -1, -1, -1, -1, -1, 1),
        (2, 2, 0, 0, 0, 0, 0, 0),
        (-2, 2, 0, 0, 0, 0, 0, 0),
        (0, -2, 2, 0, 0, 0, 0, 0),
        (0, 0, -2, 2, 0, 0, 0, 0),
        (0, 0, 0, -2, 2, 0, 0, 0),
        (0, 0, 0, 0, -2, 2, 0, 0),
        (0, 0, 0, 0, 0, -2, 2, 0),
    ]
    return simple[:rank]


@pytest.mark.parametrize("rank, disc", [(6, 3), (7, 2), (8, 1)])
def test_invariant_table_e(rank, disc):
    gens = e_subsystem(rank)
    g = np.array(gens) @ np.array(gens).T // 4
    # Cartan matrix of E_rank: 2 on the diagonal, a tree of -1's with one branch point
    assert (np.diag(g) == 2).all() and set(np.unique(g).tolist()) <= {-1, 0, 2}
    inv = lattice_invariants(VectorRep("E8Doubled", {str(i): r for i, r in enumerate(gens)}, 4))
    assert tuple(inv) == (rank, disc, 2)
    assert recognize(inv, e8=True) == LatticeClass("E", rank, rank, disc, 2)
    assert recognize(inv).kind != "E"


def test_full_e8_from_all_roots():
    inv = lattice_invariants(VectorRep("E8Doubled", {str(i): r for i, r in enumerate(e8_root_system().roots)}, 4))
    assert tuple(inv) == (8, 1, 2)


def test_lattice_invariants_examples():
    a2 = VectorRep("Standard", {"a": (1, -1, 0), "b": (0, 1, -1)})
    assert tuple(lattice_invariants(a2)) == (2, 3, 2)
    _, psi = family_an((1,))
    assert tuple(lattice_invariants(psi))[0] == 1
    with pytest.raises(EmptyRepresentation):
        lattice_invariants(VectorRep("Standard", {}))
    zero = VectorRep("Standard", {"a": (0, 0)})
    assert tuple(lattice_invariants(zero)) == (0, 1, None)


def test_gram_invariants_and_dual():
    cartan_a2 = [[2, -1], [-1, 2]]
    assert gram_invariants(cartan_a2) == LatticeInvariants(2, 3, 2)
    dual = dual_gram(cartan_a2)
    assert dual == [[Fraction(2, 3), Fraction(1, 3)], [Fraction(1, 3), Fraction(2, 3)]]
    assert gram_invariants(dual).min_norm == Fraction(2, 3)


def test_classify_examples():
    cls, rep = classify_with_embedding(family_a3tilde())
    assert cls == LatticeClass("Standard", 1, 1, 1, 1) and str(cls) == "Z^1"
    assert rep.kind == "Standard"
    assert classify_reduced_lattice(family_ht(3)).kind == "H3"
    assert classify_reduced_lattice(family_ht(1)) == LatticeClass("A", 1, 1, 2, 2)
    assert classify_reduced_lattice(family_ht(2)).kind == "Standard"
    h, _ = family_an((1, 2, 1))
    assert classify_reduced_lattice(h).kind == "Standard"


def test_classify_me8():
    h, _ = family_me8()
    cls, rep = classify_with_embedding(h)
    assert cls == LatticeClass("E", 8, 8, 1, 2)
    assert rep.kind == "E8Doubled"


def test_classify_errors():
    with pytest.raises(NotFat):
        classify_reduced_lattice(slim_graph(2, [(0, 1)]))
    two = disjoint_union(family_ht(1), rename(family_ht(1), {"x": "y", "f1": "g"}))
    with pytest.raises(NotIndecomposable):
        classify_reduced_lattice(two)
    h4 = attach_fat(family_ht(3), ["x"])
    with pytest.raises(EigenvalueTooSmall):
        classify_reduced_lattice(h4)


def test_classify_json():
    assert classify_reduced_lattice(family_a3tilde()).dumps() == (
        '{"kind": "Standard", "n": 1, "rank": 1, "discriminant": 1, "min_norm": 1}'
    )


def test_mixed_norm_exclusion_on_small_graphs():
    # norm-1 vectors in a standard embedding force the Standard class
    from strategies import random_graph

    rng = np.random.default_rng(11)
    seen = 0
    for _ in range(400):
        h = random_graph(rng, int(rng.integers(1, 5)), int(rng.integers(1, 4)), fat=True)
        if not min_eig_at_least(h, 3) or len(indecomposable_components(h)) != 1:
            continue
        cls, rep = classify_with_embedding(h)
        assert cls.kind != "Unknown"
        if rep is not None and rep.kind == "Standard" and cls.kind != "H3":
            if any(sum(x * x for x in v) == 1 for v in rep.vectors.values()):
                assert cls.kind == "Standard" and cls.min_norm == 1
                seen += 1
    assert seen > 0
