"""Hypergraph models and their min-cut entropy vectors.

A model has named vertices, some of which are boundary vertices labeled by
parties ``0..N``, and positively weighted hyperedges.  The entropy of a set of
parties ``I`` is the cheapest cut containing exactly the boundary vertices
labeled by ``I``; a hyperedge is paid for when it has vertices on both sides.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .coarse import CoarseMap
from .entrospace import EntropyVector, PartySet, full_mask, parties_of_index
from .errors import (
    DimensionMismatch,
    InvalidCoarseMap,
    ModelInvalid,
    ParseError,
    PartyOutOfRange,
    UnknownFixture,
)


@dataclass(frozen=True)
class Hyperedge:
    vertices: tuple[str, ...]
    weight: Fraction

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "weight", Fraction(self.weight))


@dataclass(frozen=True, eq=True)
class HypergraphModel:
    n: int
    vertices: tuple[str, ...]
    boundary: Mapping[str, int]
    hyperedges: tuple[Hyperedge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "boundary", dict(self.boundary))
        object.__setattr__(
            self,
            "hyperedges",
            tuple(e if isinstance(e, Hyperedge) else Hyperedge(*e) for e in self.hyperedges),
        )

    @property
    def internal(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if v not in self.boundary)

    def edges_of_weight(self, w) -> list[Hyperedge]:
        return [e for e in self.hyperedges if e.weight == Fraction(w)]


@dataclass(frozen=True)
class CutWitness:
    subset: PartySet
    cut: tuple[str, ...]
    cost: Fraction


def validate(H: HypergraphModel) -> list[str]:
    """Every way in which ``H`` fails to be a valid model (empty when valid)."""
    problems = []
    names = set(H.vertices)
    if len(names) != len(H.vertices):
        problems.append("duplicate vertex names")
    for v, p in H.boundary.items():
        if v not in names:
            problems.append(f"boundary vertex {v!r} is not a vertex")
        if not isinstance(p, int) or not 0 <= p <= H.n:
            problems.append(f"boundary vertex {v!r} labeled {p!r} outside 0..{H.n}")
    missing = set(range(H.n + 1)) - set(H.boundary.values())
    if missing:
        problems.append(f"boundary map not surjective: parties {sorted(missing)} unassigned")
    seen = set()
    for e in H.hyperedges:
        vs = frozenset(e.vertices)
        if len(vs) != len(e.vertices):
            problems.append(f"hyperedge {e.vertices} repeats a vertex")
        if len(vs) < 2:
            problems.append(f"hyperedge {e.vertices} has fewer than 2 distinct vertices")
        unknown = vs - names
        if unknown:
            problems.append(f"hyperedge {e.vertices} uses unknown vertices {sorted(unknown)}")
        if e.weight <= 0:
            problems.append(f"hyperedge {e.vertices} has nonpositive weight {e.weight}")
        if vs in seen:
            problems.append(f"repeated hyperedge {sorted(vs)}")
        seen.add(vs)
    return problems


def check(H: HypergraphModel) -> None:
    problems = validate(H)
    if problems:
        raise ModelInvalid(problems)


class _Compiled:
    """Bitmask view of a validated model for fast cut evaluation."""

    def __init__(self, H: HypergraphModel):
        check(H)
        self.n = H.n
        self.names = H.vertices
        pos = {v: i for i, v in enumerate(H.vertices)}
        self.party_mask = [0] * (H.n + 1)
        for v, p in H.boundary.items():
            self.party_mask[p] |= 1 << pos[v]
        self.internal = [pos[v] for v in H.vertices if v not in H.boundary]
        edges = [(sum(1 << pos[v] for v in e.vertices), e.weight) for e in H.hyperedges]
        edges.sort(key=lambda t: -t[1])
        self.edges = edges
        self.all = (1 << len(H.vertices)) - 1

    def forced(self, index: int) -> int:
        mask = 0
        for p in parties_of_index(index):
            mask |= self.party_mask[p]
        return mask

    def min_cut(self, index: int) -> tuple[int, Fraction]:
        base = self.forced(index)
        best_cost = None
        best_key = None
        best_set = 0
        internal = self.internal
        for choice in range(1 << len(internal)):
            X = base
            for b, v in enumerate(internal):
                if choice >> b & 1:
                    X |= 1 << v
            notX = self.all ^ X
            cost = Fraction(0)
            pruned = False
            for em, w in self.edges:
                if em & X and em & notX:
                    cost += w
                    if best_cost is not None and cost > best_cost:
                        pruned = True
                        break
            if pruned:
                continue
            if best_cost is None or cost < best_cost:
                best_cost, best_set, best_key = cost, X, _lex_key(X)
            elif cost == best_cost:
                key = _lex_key(X)
                if key < best_key:
                    best_set, best_key = X, key
        return best_set, best_cost


def _lex_key(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def _as_index(I, n: int) -> int:
    if isinstance(I, PartySet):
        if I.n != n:
            raise DimensionMismatch(f"subset of 1..{I.n} for an N={n} model")
        index = I.mask
    else:
        mask = full_mask(I, n)
        if mask & 1:
            raise PartyOutOfRange("min_cut takes subsets of 1..N")
        index = mask >> 1
    if index == 0:
        raise PartyOutOfRange("min_cut needs a nonempty subset")
    return index


def min_cut(H: HypergraphModel, I: PartySet | Iterable[int]) -> CutWitness:
    """Cheapest ``I``-cut; ties go to the lexicographically smallest vertex-position tuple."""
    comp = _Compiled(H)
    index = _as_index(I, H.n)
    cut, cost = comp.min_cut(index)
    return CutWitness(PartySet(H.n, index), tuple(H.vertices[i] for i in _lex_key(cut)), cost)


def entropy_vector(H: HypergraphModel) -> EntropyVector:
    comp = _Compiled(H)
    return EntropyVector(H.n, tuple(comp.min_cut(i)[1] for i in range(1, 1 << H.n)))


def cut_cost(H: HypergraphModel, cut: Iterable[str]) -> Fraction:
    inside = set(cut)
    return sum(
        (e.weight for e in H.hyperedges if inside & set(e.vertices) and set(e.vertices) - inside),
        Fraction(0),
    )


def relabel(H: HypergraphModel, f: CoarseMap) -> HypergraphModel:
    """Same hypergraph with every boundary label ``p`` replaced by ``f(p)``."""
    if f.n_from != H.n:
        raise InvalidCoarseMap(f"map from 0..{f.n_from} applied to an N={H.n} model")
    return HypergraphModel(
        f.n_to, H.vertices, {v: f(p) for v, p in H.boundary.items()}, H.hyperedges
    )


def disjoint_union(*models: HypergraphModel) -> HypergraphModel:
    ns = {m.n for m in models}
    if len(ns) != 1:
        raise DimensionMismatch(f"cannot join models over N={sorted(ns)}")
    vertices, boundary, edges = [], {}, []
    for k, m in enumerate(models):
        ren = {v: f"g{k}.{v}" for v in m.vertices}
        vertices += [ren[v] for v in m.vertices]
        boundary.update({ren[v]: p for v, p in m.boundary.items()})
        edges += [Hyperedge(tuple(ren[v] for v in e.vertices), e.weight) for e in m.hyperedges]
    return HypergraphModel(ns.pop(), tuple(vertices), boundary, tuple(edges))


def star_model(n: int, parties: Iterable[int], weight=1) -> HypergraphModel:
    """One hyperedge over boundary vertices of the given parties; other parties dangle."""
    parties = sorted(set(parties))
    vertices = tuple(f"b{p}" for p in range(n + 1))
    boundary = {f"b{p}": p for p in range(n + 1)}
    return HypergraphModel(n, vertices, boundary, (Hyperedge(tuple(f"b{p}" for p in parties), weight),))


# -- built-in fixtures --------------------------------------------------------


def _model(n, internal, edges) -> HypergraphModel:
    boundary = {f"b{p}": p for p in range(1, n + 1)}
    boundary["b0"] = 0
    vertices = tuple(boundary) + tuple(internal)
    return HypergraphModel(n, vertices, boundary, tuple(Hyperedge(tuple(vs), w) for vs, w in edges))


def fig1() -> HypergraphModel:
    """Six parties: three internal vertices each holding two parties, one weight-2 hyperedge.

    The hyperedge joins the three internal vertices and the purifier vertex.
    """
    internal = ("u1", "u2", "u3")
    edges = [
        (("u1", "b1"), 1), (("u1", "b2"), 1),
        (("u2", "b3"), 1), (("u2", "b4"), 1),
        (("u3", "b5"), 1), (("u3", "b6"), 1),
        (("u1", "u2", "u3", "b0"), 2),
    ]
    return _model(6, internal, edges)


def fig2() -> HypergraphModel:
    """Nine parties: a ring of five internal vertices, each holding two parties.

    The pairs are (1,2), (3,4), (5,6), (7,8), (9,0); a single weight-2
    hyperedge joins the five internal vertices.
    """
    internal = ("u1", "u2", "u3", "u4", "u5")
    pairs = [(1, 2), (3, 4), (5, 6), (7, 8), (9, 0)]
    edges = []
    for u, (a, b) in zip(internal, pairs):
        edges += [((u, f"b{a}"), 1), ((u, f"b{b}"), 1)]
    edges.append((internal, 2))
    return _model(9, internal, edges)


def fig3() -> HypergraphModel:
    """Eight parties: five internal vertices (top, right, bottom, left, center).

    Weight-2 edges attach parties 3 and 4 to the top vertex, 0 to the bottom
    one and 7, 8 to the center; weight-1 edges attach 5, 6 to the right and
    1, 2 to the left vertex.  The two weight-2 hyperedges are
    {top, left, bottom, center} and {top, right, bottom, center}; this is the
    membership for which the entropy vector is an extreme ray of the 8-party
    subadditivity cone and its coarse graining is extreme in the 4-party
    stabilizer cone.
    """
    internal = ("top", "right", "bottom", "left", "center")
    edges = [
        (("top", "b3"), 2), (("top", "b4"), 2),
        (("right", "b5"), 1), (("right", "b6"), 1),
        (("left", "b2"), 1), (("left", "b1"), 1),
        (("bottom", "b0"), 2),
        (("center", "b7"), 2), (("center", "b8"), 2),
        (("top", "left", "bottom", "center"), 2),
        (("top", "right", "bottom", "center"), 2),
    ]
    return _model(8, internal, edges)


FIXTURES = {"fig1": fig1, "fig2": fig2, "fig3": fig3}


def fixture(name: str) -> HypergraphModel:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise UnknownFixture(f"no fixture {name!r}; known: {', '.join(FIXTURES)}") from None


# -- file format --------------------------------------------------------------


def _fmt_weight(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def to_dict(H: HypergraphModel) -> dict:
    return {
        "n": H.n,
        "vertices": list(H.vertices),
        "boundary": {v: H.boundary[v] for v in H.vertices if v in H.boundary},
        "hyperedges": [
            {"vertices": list(e.vertices), "weight": _fmt_weight(e.weight)} for e in H.hyperedges
        ],
    }


def serialize(H: HypergraphModel) -> str:
    return json.dumps(to_dict(H), indent=2) + "\n"


def from_dict(d: dict) -> HypergraphModel:
    try:
        edges = []
        for e in d["hyperedges"]:
            w = e["weight"]
            if not isinstance(w, (str, int)) or isinstance(w, bool):
                raise ParseError(f"weight {w!r} must be an integer or a 'p/q' string")
            edges.append(Hyperedge(tuple(e["vertices"]), Fraction(w)))
        boundary = {str(k): int(v) for k, v in d["boundary"].items()}
        return HypergraphModel(int(d["n"]), tuple(d["vertices"]), boundary, tuple(edges))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed hypergraph: {exc}") from None


def parse(text: str) -> HypergraphModel:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"hypergraph file is not valid JSON: {exc}") from None
    if not isinstance(d, dict):
        raise ParseError("hypergraph file must hold an object")
    return from_dict(d)

