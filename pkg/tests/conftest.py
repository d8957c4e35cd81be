"""Shared oracles and strategies.

The oracles here deliberately avoid the package's own algorithms: min cuts by
exhaustive assignment, cone membership by Fourier-Motzkin elimination and
extreme rays by brute force over subsets of tight constraints (via sympy).
"""

from __future__ import annotations

import itertools
import os
from fractions import Fraction

import pytest
import sympy
from hypothesis import strategies as st

from entcone.hypergraph import Hyperedge, HypergraphModel, cut_cost

LONG = os.environ.get("ENTCONE_LONG", "") not in ("", "0")


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", help="run the long certificate checks")


def pytest_configure(config):
    global LONG
    if config.getoption("--long", default=False):
        LONG = True
        os.environ["ENTCONE_LONG"] = "1"


def pytest_collection_modifyitems(config, items):
    if LONG:
        return
    skip = pytest.mark.skip(reason="long check; pass --long or set ENTCONE_LONG=1")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


# -- oracles ----------------------------------------------------------------------


def naive_min_cut_cost(H: HypergraphModel, parties) -> Fraction:
    parties = set(parties)
    inside = {v for v, p in H.boundary.items() if p in parties}
    internal = H.internal
    best = None
    for bits in itertools.product((False, True), repeat=len(internal)):
        c = cut_cost(H, inside | {v for v, b in zip(internal, bits) if b})
        best = c if best is None or c < best else best
    return best


def fm_member(q, rays) -> bool:
    """Is ``q`` a nonnegative combination of ``rays``?  Fourier-Motzkin on the weights.

    Equalities ``R^T lam = q`` are used to substitute variables away first;
    variables they do not touch are eliminated from the inequalities
    ``lam >= 0`` pairwise.
    """
    m = len(rays)
    eqs = [([Fraction(r[d]) for r in rays], Fraction(q[d])) for d in range(len(q))]
    # rows (a, b) meaning a . lam >= b
    ineqs = [([Fraction(int(k == j)) for k in range(m)], Fraction(0)) for j in range(m)]
    for j in range(m):
        piv = next((e for e in eqs if e[0][j] != 0), None)
        if piv is not None:
            eqs.remove(piv)
            pa, pb = piv

            def sub(row):
                a, b = row
                t = a[j] / pa[j]
                return [x - t * y for x, y in zip(a, pa)], b - t * pb

            eqs = [sub(e) for e in eqs]
            ineqs = [sub(r) for r in ineqs]
            continue
        pos = [r for r in ineqs if r[0][j] > 0]
        neg = [r for r in ineqs if r[0][j] < 0]
        rest = [r for r in ineqs if r[0][j] == 0]
        for (ap, bp), (an, bn) in itertools.product(pos, neg):
            s, t = -an[j], ap[j]
            rest.append(([s * x + t * y for x, y in zip(ap, an)], s * bp + t * bn))
        ineqs = rest
    return all(b == 0 for _, b in eqs) and all(b <= 0 for _, b in ineqs)


def brute_force_rays(functionals, D: int) -> set[tuple[int, ...]]:
    """Extreme rays of ``{x : f.x >= 0}`` from every (D-1)-subset of constraints."""
    out = set()
    coeffs = [list(f) for f in functionals]
    for sub in itertools.combinations(range(len(coeffs)), D - 1):
        M = sympy.Matrix([coeffs[i] for i in sub])
        ns = M.nullspace()
        if len(ns) != 1:
            continue
        v = ns[0]
        den = sympy.ilcm(*[x.q for x in v])
        v = [int(x * den) for x in v]
        g = 0
        for x in v:
            g = sympy.igcd(g, x)
        v = [x // g for x in v]
        for cand in (v, [-x for x in v]):
            if all(sum(a * b for a, b in zip(c, cand)) >= 0 for c in coeffs):
                out.add(tuple(cand))
    return out


def sympy_rank(rows) -> int:
    return sympy.Matrix(rows).rank() if rows else 0


# -- strategies --------------------------------------------------------------------


@st.composite
def models(draw, max_n: int = 4, max_internal: int = 4, n=None):
    """Random valid hypergraph models with one or two boundary vertices per party."""
    if n is None:
        n = draw(st.integers(1, max_n))
    boundary = {}
    for p in range(n + 1):
        for k in range(draw(st.integers(1, 2))):
            boundary[f"b{p}_{k}"] = p
    internal = [f"u{i}" for i in range(draw(st.integers(0, max_internal)))]
    vertices = list(boundary) + internal
    n_edges = draw(st.integers(0, 7))
    edges, seen = [], set()
    for _ in range(n_edges):
        vs = draw(st.lists(st.sampled_from(vertices), min_size=2, max_size=4, unique=True))
        if frozenset(vs) in seen:
            continue
        seen.add(frozenset(vs))
        w = draw(st.sampled_from([Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2)]))
        edges.append(Hyperedge(tuple(vs), w))
    return HypergraphModel(n, tuple(vertices), boundary, tuple(edges))


@st.composite
def surjections(draw, n_from: int, n_to: int):
    from entcone.coarse import CoarseMap

    base = list(range(n_to + 1)) + [draw(st.integers(0, n_to)) for _ in range(n_from - n_to)]
    perm = draw(st.permutations(base))
    return CoarseMap(n_from, n_to, tuple(perm))


@st.composite
def entropy_vectors(draw, n: int, max_value: int = 6):
    from entcone.entrospace import EntropyVector

    comp = draw(
        st.lists(st.integers(0, max_value), min_size=(1 << n) - 1, max_size=(1 << n) - 1)
    )
    return EntropyVector(n, tuple(comp))


def size_lex_labels(n: int) -> list[str]:
    """Subset labels of ``{1..N}`` ordered by size, then lexicographically."""
    subsets = []
    for k in range(1, n + 1):
        subsets += ["".join(map(str, c)) for c in itertools.combinations(range(1, n + 1), k)]
    return subsets


def vector_from_tuple(n: int, values):
    """Build a vector from components listed as (S_1, S_2, ..., S_12, ..., S_1..N)."""
    from entcone.entrospace import EntropyVector, index_of_label

    comp = [None] * ((1 << n) - 1)
    for label, x in zip(size_lex_labels(n), values, strict=True):
        comp[index_of_label(label, n) - 1] = x
    return EntropyVector(n, tuple(comp))
