"""Acceptance suite: eight end-to-end criteria, each with a time budget.

Every criterion is a list of named checks.  A criterion passes when all of
its checks hold and it finishes inside its budget.  One PASS/FAIL line per
criterion is printed at the end of the pytest run, and also when this file
is executed directly (``python3 tests/test_acceptance.py``).
"""

from __future__ import annotations

import math
import sys
import time
from itertools import combinations

import numpy as np
import pytest

from hofflat.decomposition import indecomposable_components, is_indecomposable, is_sum, special_graphs
from hofflat.dynkin import DynkinShape, recognize_shape
from hofflat.exact import det_bareiss, is_psd
from hofflat.families import an_breakpoints, family_a3tilde, family_a5, family_an, family_ht, family_me8
from hofflat.graph import HoffmanGraph, are_isomorphic, attach_fat, to_raw, validate
from hofflat.lattice import LatticeClass, classify_with_embedding, lattice_invariants
from hofflat.enumeration import enumerate_graphs, verify_corpus
from hofflat.representation import build_representation, find_standard_embedding, reduced_gram, representation_gram
from hofflat.saturation import is_saturated, verify_me8_maximality
from hofflat.spectra import (
    b_matrix,
    collapse_clique_representation,
    collapsed_norm,
    expand_fat_to_cliques,
    lambda_min,
    limit_table,
    min_eig_at_least,
)

RESULTS: dict[int, str] = {}


class Checks:
    def __init__(self):
        self.items: list[tuple[str, bool]] = []

    def __call__(self, label: str, ok) -> None:
        self.items.append((label, bool(ok)))

    @property
    def failed(self) -> list[str]:
        return [label for label, ok in self.items if not ok]


def run_criterion(number: int, title: str, budget: float, body) -> tuple[bool, str]:
    checks = Checks()
    start = time.perf_counter()
    try:
        body(checks)
    except Exception as exc:  # reported as a failed check, not a crash
        checks(f"raised {type(exc).__name__}: {exc}", False)
    elapsed = time.perf_counter() - start
    checks(f"runtime {elapsed:.2f}s < {budget:g}s", elapsed < budget)
    ok = not checks.failed
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({elapsed:.2f}s, {len(checks.items)} checks)"
    if not ok:
        line += "; failed: " + "; ".join(checks.failed)
    RESULTS[number] = line
    return ok, line


def _exact_lambda_is(h: HoffmanGraph, t: int) -> tuple[bool, bool]:
    """``B + tI`` is PSD and singular, so ``lambda_min = -t`` exactly."""
    g = b_matrix(h) + t * np.eye(h.slim_count, dtype=np.int64)
    return is_psd(g), det_bareiss(g) == 0


# ---------------------------------------------------------------------------


def criterion_1(c: Checks) -> None:
    for t in (1, 2, 3):
        h = family_ht(t)
        c(f"t={t}: B+{t}I is PSD", min_eig_at_least(h, t))
        c(f"t={t}: B+{t - 1}I is not PSD", not min_eig_at_least(h, t - 1))
        psd, singular = _exact_lambda_is(h, t)
        c(f"t={t}: B+{t}I singular", psd and singular)
        c(f"t={t}: float lambda_min within 1e-9", abs(lambda_min(h) + t) < 1e-9)


def criterion_2(c: Checks) -> None:
    h = family_a3tilde()
    c("validate passes", validate(to_raw(h)) == h)
    psd, singular = _exact_lambda_is(h, 3)
    c("B+3I PSD", psd)
    c("B+3I singular", singular)
    cls, _ = classify_with_embedding(h)
    c("lattice Standard(1)", cls.kind == "Standard" and cls.n == 1)
    s = special_graphs(h)
    c("minus shape ATilde(3)", recognize_shape(s.graph("minus")) == DynkinShape("ATilde", 3))
    c("plus edges {0,2},{1,3}", s.plus_edges == {frozenset(("0", "2")), frozenset(("1", "3"))})
    c("is_saturated(3)", bool(is_saturated(h, 3)))
    rejected = 0
    for k in range(1, 5):
        for sub in combinations(h.slim_names, k):
            rejected += not min_eig_at_least(attach_fat(h, sub), 3)
    c(f"all 15 attachments rejected ({rejected})", rejected == 15)


def an_parameter_tuples(max_k: int, max_mk: int) -> list[tuple[int, ...]]:
    out = []
    for k in range(1, max_k + 1):
        stack = [()]
        while stack:
            p = stack.pop()
            if len(p) == k:
                if sum(p) <= max_mk:
                    out.append(p)
                continue
            lo = 2 if 0 < len(p) < k - 1 else 1
            for x in range(lo, max_mk - sum(p) + 1):
                stack.append(p + (x,))
    return sorted(out, key=lambda p: (len(p), p))


def criterion_3(c: Checks) -> None:
    tuples = an_parameter_tuples(3, 6)
    gram_bad, minus_bad, plus_bad, sat_bad = [], [], [], []
    for ns in tuples:
        h, psi = family_an(ns)
        m = an_breakpoints(ns)
        k = len(ns)
        if not np.array_equal(psi.gram(), reduced_gram(h, 3).entries):
            gram_bad.append(ns)
        s = special_graphs(h)
        if recognize_shape(s.graph("minus")) != DynkinShape("A", m[k] + 1):
            minus_bad.append(ns)
        want_plus = {frozenset((f"v{m[j] - 1}", f"v{m[j] + 1}")) for j in range(2, k)}
        if s.plus_edges != want_plus:
            plus_bad.append(ns)
        if not is_saturated(h, 3):
            sat_bad.append(ns)
    c(f"{len(tuples)} tuples with k <= 3 and m_k <= 6", len(tuples) > 0)
    c(f"psi Gram equals reduced Gram (bad: {gram_bad})", not gram_bad)
    c(f"minus graph is A(m_k+1) (bad: {minus_bad})", not minus_bad)
    c(f"plus edges are {{v_(m_j-1), v_(m_j+1)}} for 1<j<k (bad: {len(plus_bad)} tuples, e.g. {plus_bad[:3]})", not plus_bad)
    c(f"(-3)-saturated (bad: {sat_bad})", not sat_bad)


def criterion_4(c: Checks) -> None:
    h0, h1 = family_a5()
    for tag, h in (("H0", h0), ("H1", h1)):
        c(f"{tag} fat", h.is_fat)
        c(f"{tag} indecomposable", is_indecomposable(h))
        c(f"{tag} (-3)-saturated", min_eig_at_least(h, 3) and bool(is_saturated(h, 3)))
        s = special_graphs(h)
        c(f"{tag} minus shape A(5)", recognize_shape(s.graph("minus")) == DynkinShape("A", 5))
        c(f"{tag} plus edges", s.plus_edges == {frozenset(("v0", "v2")), frozenset(("v2", "v4"))})


def criterion_5(c: Checks) -> None:
    h, rep = family_me8()
    c("57 slim, 29 fat", (h.slim_count, h.fat_count) == (57, 29))
    c("exact lambda_min >= -3", min_eig_at_least(h, 3))
    c("indecomposable", is_indecomposable(h))
    cls, found = classify_with_embedding(h)
    c("class E(8), rank 8, discriminant 1, min norm 2", cls == LatticeClass("E", 8, 8, 1, 2))
    c("defining embedding has the same invariants", tuple(lattice_invariants(rep)) == (8, 1, 2))
    report = verify_me8_maximality(h, rep)
    c("verdict (a) confirmed", report.fat_attachment_impossible)
    c("verdict (b) confirmed", report.slim_attachment_impossible)
    c("no standard embedding", find_standard_embedding(reduced_gram(h, 3)) is None)


def _random_graph(rng, s, f, slim_prefix, fat_prefix, fat=True) -> HoffmanGraph:
    adj = np.triu(rng.random((s, s)) < 0.5, 1)
    adj = adj | adj.T
    inc = rng.random((s, f)) < 0.5
    for j in range(f):
        if not inc[:, j].any():
            inc[rng.integers(s), j] = True
    if fat and f:
        for i in range(s):
            if not inc[i].any():
                inc[i, rng.integers(f)] = True
    return HoffmanGraph.from_matrices(
        [f"{slim_prefix}{i}" for i in range(s)], [f"{fat_prefix}{j}" for j in range(f)], adj, inc
    )


def collapse_gap(h0: HoffmanGraph, f: str, k3: int) -> float:
    """Blow ``f`` up into a ``k3``-clique, represent, collapse, compare with the prediction."""
    g = expand_fat_to_cliques(h0, [(f, k3)])
    m = max(2, math.ceil(-lambda_min(g) - 1e-9))
    phi = build_representation(g, m)
    new = [x for x in g.slim_names if x not in h0.slim_names]
    v2 = h0.slim_neighbors(f)
    v1 = [x for x in h0.slim_names if x not in v2] + list(g.fat_names)
    width = phi.vectors.shape[1]
    rows = lambda names: np.array([phi[x] for x in names]).reshape(len(names), width)
    d = collapse_clique_representation(rows(v1), rows(v2), rows(new), m)
    predicted = representation_gram(h0, collapsed_norm(m, len(v2), k3))
    order = [(h0.slim_names + h0.fat_names).index(x) for x in v1 + v2 + [f]]
    return float(np.abs(d @ d.T - predicted[np.ix_(order, order)]).max())


def criterion_6(c: Checks) -> None:
    rows = limit_table(family_ht(1), 32)
    c("h1: all 32 gaps < 1e-9", len(rows) == 32 and all(abs(r.gap) < 1e-9 for r in rows))
    rows = limit_table(family_ht(2), 64)
    gaps = [r.gap for r in rows]
    c("h2: gaps nonnegative", all(g >= -1e-12 for g in gaps))
    c("h2: gaps non-increasing", all(b <= a + 1e-12 for a, b in zip(gaps, gaps[1:])))
    c(f"h2: gap(64) = {gaps[-1]:.4g} < 0.1", gaps[-1] < 0.1)
    rng = np.random.default_rng(2024)
    worst, done = 0.0, 0
    while done < 20:
        h0 = _random_graph(rng, int(rng.integers(1, 6)), int(rng.integers(1, 4)), "s", "f", fat=False)
        f = h0.fat_names[int(rng.integers(h0.fat_count))]
        worst = max(worst, collapse_gap(h0, f, int(rng.integers(1, 5))))
        done += 1
    c(f"collapse identity on 20 instances, worst {worst:.2e} < 1e-9", worst < 1e-9)


def criterion_7(c: Checks) -> None:
    corpus = list(enumerate_graphs(4, 4, ("fat", "indecomposable", "saturated")))
    report = verify_corpus(corpus)
    c(f"corpus of {len(corpus)} graphs is non-empty", len(corpus) > 0)
    for name in report.checked:
        c(f"{name} exercised ({report.checked[name]})", report.checked[name] > 0)
    c(f"zero violations ({len(report.violations)})", report.ok)


def random_sum(rng) -> tuple[HoffmanGraph, HoffmanGraph, HoffmanGraph]:
    """Build ``H = H1 + H2`` directly from the definition of a sum.

    Optionally one fat vertex is shared; slim vertices from different parts
    are adjacent exactly when they share that fat vertex.
    """
    h1 = _random_graph(rng, int(rng.integers(1, 5)), int(rng.integers(0, 3)), "a", "p", fat=bool(rng.integers(2)))
    h2 = _random_graph(rng, int(rng.integers(1, 5)), int(rng.integers(0, 3)), "b", "q", fat=bool(rng.integers(2)))
    fat2 = list(h2.fat_names)
    if h1.fat_count and h2.fat_count and rng.integers(2):
        fat2[0] = h1.fat_names[0]
    s1, s2 = h1.slim_count, h2.slim_count
    slim = list(h1.slim_names) + list(h2.slim_names)
    fat = list(h1.fat_names) + [x for x in fat2 if x not in h1.fat_names]
    adj = np.zeros((s1 + s2, s1 + s2), dtype=bool)
    adj[:s1, :s1] = h1.slim_adj
    adj[s1:, s1:] = h2.slim_adj
    inc = np.zeros((s1 + s2, len(fat)), dtype=bool)
    inc[:s1, : h1.fat_count] = h1.slim_fat
    for j, name in enumerate(fat2):
        inc[s1:, fat.index(name)] |= h2.slim_fat[:, j]
    common = inc[:s1].astype(int) @ inc[s1:].astype(int).T
    assert common.max(initial=0) <= 1
    adj[:s1, s1:] = common == 1
    adj[s1:, :s1] = adj[:s1, s1:].T
    h = HoffmanGraph.from_matrices(slim, fat, adj, inc)
    part2 = HoffmanGraph.from_matrices(h2.slim_names, fat2, h2.slim_adj, h2.slim_fat)
    return h, h1, part2


def _same_multiset(xs, ys) -> bool:
    ys = list(ys)
    for x in xs:
        hit = next((i for i, y in enumerate(ys) if are_isomorphic(x, y)), None)
        if hit is None:
            return False
        ys.pop(hit)
    return not ys


def criterion_8(c: Checks) -> None:
    rng = np.random.default_rng(8)
    split = comps = psd = lam = 0
    shared = 0
    for _ in range(100):
        h, h1, h2 = random_sum(rng)
        shared += bool(set(h1.fat_names) & set(h2.fat_names))
        split += is_sum(h, h1.slim_names, h2.slim_names)
        comps += _same_multiset(
            indecomposable_components(h), indecomposable_components(h1) + indecomposable_components(h2)
        )
        psd += all(
            min_eig_at_least(h, m) == (min_eig_at_least(h1, m) and min_eig_at_least(h2, m)) for m in (1, 2, 3)
        )
        lam += abs(lambda_min(h) - min(lambda_min(h1), lambda_min(h2))) < 1e-9
    c(f"100 sums built ({shared} share a fat vertex)", shared > 0)
    c(f"is_sum detects the split ({split}/100)", split == 100)
    c(f"components recovered up to isomorphism ({comps}/100)", comps == 100)
    c(f"PSD test agrees for m in 1,2,3 ({psd}/100)", psd == 100)
    c(f"lambda_min is the minimum over the parts ({lam}/100)", lam == 100)


CRITERIA = [
    (1, "h(t) eigenvalues", 1.0, criterion_1),
    (2, "A3-tilde example", 1.0, criterion_2),
    (3, "A_n family, k <= 3, m_k <= 6", 30.0, criterion_3),
    (4, "A5 pair", 5.0, criterion_4),
    (5, "E8 maximal graph", 600.0, criterion_5),
    (6, "clique limit and collapse", 120.0, criterion_6),
    (7, "corpus verification (4 slim, 4 fat)", 600.0, criterion_7),
    (8, "decomposition laws", 60.0, criterion_8),
]


@pytest.mark.parametrize("number, title, budget, body", CRITERIA, ids=[f"criterion_{n}" for n, *_ in CRITERIA])
def test_criterion(number, title, budget, body):
    ok, line = run_criterion(number, title, budget, body)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*args)[1] for args in CRITERIA]
    print("\n".join(results))
    sys.exit(0 if all(r.startswith("PASS") for r in results) else 1)
