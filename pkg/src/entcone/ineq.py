"""Instances of SA, SSA and Ingleton's inequality over parties ``0..N``.

Every instance is generated on subsets of ``{0..N}`` and folded into the
``2**N - 1`` coordinates with the purifier complement rule, so for example
weak monotonicity appears as an SSA instance touching the purifier.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .entrospace import (
    EntropyVector,
    PartyPermutation,
    canon_index,
    index_image_table,
    index_of_label,
    parties_of_mask,
    subset_label,
)
from .errors import DimensionMismatch, ParseError, UnsupportedPartyCount

FAMILIES = ("sa", "ssa", "ingleton", "poly", "lambda4")


@dataclass(frozen=True)
class LinearFunctional:
    """The inequality ``coeff . S >= 0``; ``coeff[i - 1]`` multiplies ``S`` at storage index ``i``."""

    n: int
    coeff: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coeff", tuple(int(c) for c in self.coeff))
        if len(self.coeff) != (1 << self.n) - 1:
            raise DimensionMismatch(f"N={self.n} functional needs {(1 << self.n) - 1} coefficients")

    @property
    def key(self) -> tuple[int, ...]:
        """Coefficient vector divided by its gcd, used for deduplication."""
        g = 0
        for c in self.coeff:
            g = gcd(g, c)
        return self.coeff if g in (0, 1) else tuple(c // g for c in self.coeff)

    def is_zero(self) -> bool:
        return not any(self.coeff)

    def support(self) -> list[tuple[int, int]]:
        return [(i + 1, c) for i, c in enumerate(self.coeff) if c]

    def __str__(self):
        return format_functional(self)


@dataclass(frozen=True)
class InstanceSet:
    n: int
    family: str
    functionals: tuple[LinearFunctional, ...]

    def __len__(self):
        return len(self.functionals)

    def __iter__(self):
        return iter(self.functionals)

    def __getitem__(self, i):
        return self.functionals[i]

    def keys(self) -> set[tuple[int, ...]]:
        return {f.key for f in self.functionals}


def _term_mask_label(mask: int) -> str:
    return "".join(str(p) for p in parties_of_mask(mask)) or "-"


def _functional(n: int, terms: Iterable[tuple[int, int]], label: str) -> LinearFunctional:
    coeff = [0] * ((1 << n) - 1)
    for sign, mask in terms:
        idx = canon_index(mask, n)
        if idx:
            coeff[idx - 1] += sign
    return LinearFunctional(n, tuple(coeff), label)


def dedup(functionals: Iterable[LinearFunctional]) -> list[LinearFunctional]:
    """Drop zero functionals and repeats of an already-seen gcd-normalized vector."""
    seen = set()
    out = []
    for f in functionals:
        if f.is_zero():
            continue
        k = f.key
        if k not in seen:
            seen.add(k)
            out.append(f)
    return out


def _assignments(n: int, slots: int):
    """Yield tuples of ``slots`` pairwise-disjoint full masks over ``0..n`` (possibly empty)."""
    for labels in itertools.product(range(slots + 1), repeat=n + 1):
        masks = [0] * slots
        for party, s in enumerate(labels):
            if s:
                masks[s - 1] |= 1 << party
        yield masks


def sa_pairs(n: int) -> list[tuple[int, int]]:
    """Unordered pairs of disjoint nonempty subsets of ``0..n`` as full masks."""
    pairs = []
    for I, J in _assignments(n, 2):
        if I and J and (I & -I) < (J & -J):
            pairs.append((I, J))
    return pairs


def sa_instances(n: int) -> InstanceSet:
    if n < 1:
        raise UnsupportedPartyCount(f"N must be >= 1, got {n}")
    out = []
    for I, J in sa_pairs(n):
        label = f"SA({_term_mask_label(I)},{_term_mask_label(J)})"
        out.append(_functional(n, [(1, I), (1, J), (-1, I | J)], label))
    return InstanceSet(n, "sa", tuple(dedup(out)))


def ssa_instances(n: int) -> InstanceSet:
    if n < 1:
        raise UnsupportedPartyCount(f"N must be >= 1, got {n}")
    out = []
    for A, B, C in _assignments(n, 3):
        if not (A and B and C) or (A & -A) > (C & -C):
            continue
        label = f"SSA({_term_mask_label(A)},{_term_mask_label(B)},{_term_mask_label(C)})"
        terms = [(1, A | B), (1, B | C), (-1, B), (-1, A | B | C)]
        out.append(_functional(n, terms, label))
    return InstanceSet(n, "ssa", tuple(dedup(out)))


def ingleton_tuples(n: int) -> list[tuple[int, int, int, int]]:
    """Ordered role assignments ``(a, b, c, d)`` with ``a < b`` and ``c < d``."""
    parties = range(n + 1)
    out = []
    for quad in itertools.combinations(parties, 4):
        for ab in itertools.combinations(quad, 2):
            cd = tuple(p for p in quad if p not in ab)
            out.append(ab + cd)
    return out


def ingleton_functional(n: int, a: int, b: int, c: int, d: int) -> LinearFunctional:
    A, B, C, Dm = (1 << a), (1 << b), (1 << c), (1 << d)
    plus = [A | C, B | C, A | Dm, B | Dm, A | B]
    minus = [A | B | C, A | B | Dm, C | Dm, A, B]
    terms = [(1, m) for m in plus] + [(-1, m) for m in minus]
    return _functional(n, terms, f"ING({a},{b};{c},{d})")


def ingleton_instances(n: int) -> InstanceSet:
    if n < 3:
        raise UnsupportedPartyCount(f"Ingleton needs four parties in 0..N, so N >= 3; got {n}")
    out = [ingleton_functional(n, *t) for t in ingleton_tuples(n)]
    return InstanceSet(n, "ingleton", tuple(dedup(out)))


def union(*sets: InstanceSet, family: str = "union") -> InstanceSet:
    ns = {s.n for s in sets}
    if len(ns) != 1:
        raise DimensionMismatch(f"cannot union instance sets over N={sorted(ns)}")
    funcs = dedup(f for s in sets for f in s)
    return InstanceSet(ns.pop(), family, tuple(funcs))


def family_instances(family: str, n: int) -> InstanceSet:
    """Generator union selected by name: sa, ssa, ingleton, poly (SA+SSA), lambda4 (+Ingleton)."""
    if family == "sa":
        return sa_instances(n)
    if family == "ssa":
        return ssa_instances(n)
    if family == "ingleton":
        return ingleton_instances(n)
    if family == "poly":
        return union(sa_instances(n), ssa_instances(n), family="poly")
    if family == "lambda4":
        return union(sa_instances(n), ssa_instances(n), ingleton_instances(n), family="lambda4")
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def evaluate(f: LinearFunctional, v: EntropyVector) -> Fraction:
    if f.n != v.n:
        raise DimensionMismatch(f"N={f.n} functional evaluated on N={v.n} vector")
    return sum((c * x for c, x in zip(f.coeff, v.comp) if c), Fraction(0))


def saturated_set(v: EntropyVector, S: InstanceSet | Sequence[LinearFunctional]) -> tuple[list[int], list[int]]:
    """Indices of instances with value zero, and of those with negative value."""
    zero, neg = [], []
    for i, f in enumerate(S):
        val = evaluate(f, v)
        if val == 0:
            zero.append(i)
        elif val < 0:
            neg.append(i)
    return zero, neg


def permute_functional(f: LinearFunctional, perm: PartyPermutation) -> LinearFunctional:
    """Transport ``f`` so that ``permute(f) . permute(v) == f . v``."""
    if perm.n != f.n:
        raise DimensionMismatch(f"permutation of 0..{perm.n} applied to N={f.n} functional")
    table = index_image_table(perm)
    coeff = [0] * len(f.coeff)
    for i, c in enumerate(f.coeff, start=1):
        if c:
            coeff[table[i] - 1] += c
    return LinearFunctional(f.n, tuple(coeff), f.label)


# -- text format --------------------------------------------------------------


def format_functional(f: LinearFunctional) -> str:
    parts = []
    for idx, c in f.support():
        term = f"{abs(c)}*S_{subset_label(idx)}"
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return f"{f.label or 'F'}: {' '.join(parts) or '0'}"


def parse_functional(line: str, n: int) -> LinearFunctional:
    label, sep, body = line.partition(":")
    if not sep:
        raise ParseError(f"expected '<label>: <terms>', got {line!r}")
    coeff = [0] * ((1 << n) - 1)
    tokens = body.replace("-", " - ").replace("+", " + ").split()
    sign = 1
    for tok in tokens:
        if tok in "+-":
            sign = 1 if tok == "+" else -1
            continue
        if tok == "0":
            continue
        c, star, sub = tok.partition("*S_")
        if not star:
            raise ParseError(f"bad term {tok!r} in {line!r}")
        try:
            c = int(c)
        except ValueError:
            raise ParseError(f"bad coefficient in {tok!r}") from None
        coeff[index_of_label(sub, n) - 1] += sign * c
        sign = 1
    return LinearFunctional(n, tuple(coeff), label.strip())


def format_instances(S: InstanceSet | Sequence[LinearFunctional]) -> str:
    return "".join(format_functional(f) + "\n" for f in S)


def parse_instances(text: str, n: int, family: str = "file") -> InstanceSet:
    funcs = [
        parse_functional(ln, n)
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    return InstanceSet(n, family, tuple(funcs))

