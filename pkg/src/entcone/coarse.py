"""Coarse grainings of parties and the induced map on entropy vectors.

A coarse graining is a surjection ``f`` from parties ``0..N'`` onto ``0..N``.
The coarse-grained entropy of ``I`` is the fine-grained entropy of the
preimage of ``I``, looked up through its complement when the preimage holds
the fine-grained purifier.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .entrospace import EntropyVector, canon_index, full_set
from .errors import DimensionMismatch, InvalidArity, LengthMismatch, NotSurjective, PartyOutOfRange


@dataclass(frozen=True)
class CoarseMap:
    """Surjection ``images[l'] = f(l')`` from ``0..n_from`` onto ``0..n_to``."""

    n_from: int
    n_to: int
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if self.n_from < self.n_to:
            raise InvalidArity(f"cannot coarse grain {self.n_from} parties into {self.n_to}")
        if len(images) != self.n_from + 1:
            raise LengthMismatch(f"need {self.n_from + 1} images, got {len(images)}")
        for x in images:
            if not 0 <= x <= self.n_to:
                raise PartyOutOfRange(f"image {x} outside 0..{self.n_to}")
        missing = set(range(self.n_to + 1)) - set(images)
        if missing:
            raise NotSurjective(f"parties {sorted(missing)} have empty preimage")

    @classmethod
    def identity(cls, n: int) -> "CoarseMap":
        return cls(n, n, tuple(range(n + 1)))

    def __call__(self, party: int) -> int:
        return self.images[party]

    def preimage_mask(self, mask: int) -> int:
        """Full mask over ``0..n_from`` of the preimage of a full mask over ``0..n_to``."""
        out = 0
        for l, img in enumerate(self.images):
            if mask >> img & 1:
                out |= 1 << l
        return out

    def then(self, g: "CoarseMap") -> "CoarseMap":
        """The composite ``g ∘ self``."""
        if g.n_from != self.n_to:
            raise DimensionMismatch(f"cannot follow a map onto 0..{self.n_to} by one from 0..{g.n_from}")
        return CoarseMap(self.n_from, g.n_to, tuple(g.images[x] for x in self.images))

    def __str__(self):
        return ",".join(str(x) for x in self.images)


def parse_map(text: str, n_from: int | None = None, n_to: int | None = None) -> CoarseMap:
    """Parse ``"0,1,1,2,2,3,3"``; party counts default to what the list implies."""
    try:
        images = tuple(int(x) for x in text.replace(" ", "").strip("{}").split(","))
    except ValueError:
        raise LengthMismatch(f"bad coarse-graining map {text!r}") from None
    if n_from is None:
        n_from = len(images) - 1
    if n_to is None:
        n_to = max(images)
    return CoarseMap(n_from, n_to, images)


def _pullback_table(f: CoarseMap) -> list[int]:
    # table[i] = fine storage index whose entropy gives coarse index i
    return [0] + [canon_index(f.preimage_mask(i << 1), f.n_from) for i in range(1, 1 << f.n_to)]


def pullback(f: CoarseMap, v: EntropyVector) -> EntropyVector:
    """Entropy vector of the same state after merging parties according to ``f``."""
    if v.n != f.n_from:
        raise DimensionMismatch(f"map from 0..{f.n_from} applied to an N={v.n} vector")
    table = _pullback_table(f)
    zero = Fraction(0)
    return EntropyVector(f.n_to, tuple(v.comp[j - 1] if j else zero for j in table[1:]))


def pullback_ray(f: CoarseMap, ray: tuple[int, ...]) -> tuple[int, ...]:
    table = _pullback_table(f)
    return tuple(ray[j - 1] if j else 0 for j in table[1:])


def enumerate_surjections(n_from: int, n_to: int) -> Iterator[CoarseMap]:
    """Every surjection ``0..n_from -> 0..n_to``, in lexicographic order of images."""
    if n_from < n_to:
        raise InvalidArity(f"no surjection from {n_from + 1} parties onto {n_to + 1}")
    target = full_set(n_to)
    for images in itertools.product(range(n_to + 1), repeat=n_from + 1):
        mask = 0
        for x in images:
            mask |= 1 << x
        if mask == target:
            yield CoarseMap(n_from, n_to, images)


def enumerate_partitions(n_from: int, n_to: int) -> Iterator[CoarseMap]:
    """One surjection per orbit under relabeling of the coarse parties.

    These are the set partitions of ``0..n_from`` into ``n_to + 1`` blocks,
    labeled by order of first appearance (restricted growth strings).
    Pulling back along them and then closing under party permutations gives
    the same generator set as the exhaustive enumeration.
    """
    if n_from < n_to:
        raise InvalidArity(f"no surjection from {n_from + 1} parties onto {n_to + 1}")
    k = n_to + 1
    size = n_from + 1

    def grow(prefix: list[int], used: int):
        pos = len(prefix)
        if pos == size:
            if used == k:
                yield CoarseMap(n_from, n_to, tuple(prefix))
            return
        if k - used > size - pos:
            return
        for x in range(min(used + 1, k)):
            prefix.append(x)
            yield from grow(prefix, max(used, x + 1))
            prefix.pop()

    yield from grow([], 0)


def tensor_pad(v: EntropyVector, n_to: int) -> EntropyVector:
    """Append ``n_to - N`` parties in a pure product state.

    ``S_K`` of the padded vector is the entropy of ``K`` restricted to the
    original parties; the new parties contribute nothing.
    """
    if n_to <= v.n:
        raise InvalidArity(f"padding needs more parties than N={v.n}, got {n_to}")
    low = (1 << v.n) - 1
    zero = Fraction(0)
    comp = []
    for i in range(1, 1 << n_to):
        j = i & low
        comp.append(v.comp[j - 1] if j else zero)
    return EntropyVector(n_to, tuple(comp))


def purifier_collapse(n_from: int, n_to: int) -> CoarseMap:
    """Map keeping parties ``0..n_to`` and merging the rest into the purifier."""
    return CoarseMap(n_from, n_to, tuple(l if l <= n_to else 0 for l in range(n_from + 1)))


def build_delta(rays, n_to: int, reduced: bool = False, prune: bool = False):
    """Generators of the cone of all coarse grainings of ``rays`` down to ``n_to`` parties.

    ``rays`` is a :class:`~entcone.cone.VRepCone` over ``N'`` parties.  With
    ``reduced=True`` one surjection per coarse relabeling orbit is used and the
    result is closed under party permutations afterwards.  ``prune=True``
    drops generators lying in the cone of the remaining ones.
    """
    from .cone import VRepCone, is_minimal, orbit_expand
    from .exactla import conic_membership

    n_from = rays.n
    if n_from < n_to:
        raise InvalidArity(f"cannot coarse grain {n_from} parties into {n_to}")
    maps = enumerate_partitions(n_from, n_to) if reduced else enumerate_surjections(n_from, n_to)
    out = set()
    for f in maps:
        table = _pullback_table(f)
        for r in rays.rays:
            out.add(tuple(r[j - 1] if j else 0 for j in table[1:]))
    V = VRepCone(n_to, tuple(out))
    if reduced:
        V = orbit_expand(V)
    if prune and not is_minimal(V):
        kept = list(V.rays)
        i = 0
        while i < len(kept):
            others = kept[:i] + kept[i + 1 :]
            if others and conic_membership(kept[i], others).member:
                kept.pop(i)
            else:
                i += 1
        V = VRepCone(n_to, tuple(kept))
    return V
