"""Entropy space: subset indexing, entropy vectors and party permutations.

Parties are ``0..N`` with 0 the purifier.  Two bitmask conventions are used:

* a *storage index* for a subset ``I`` of ``{1..N}`` sets bit ``l-1`` for each
  party ``l``; indices ``1..2**N - 1`` address the entries of an entropy vector;
* a *full mask* for a subset of ``{0..N}`` sets bit ``l`` for party ``l``.

A full mask without the purifier bit is turned into a storage index by a right
shift.  A full mask containing the purifier is first replaced by its
complement, which carries the same entropy for a pure global state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import (
    DimensionMismatch,
    IndexOfEmptySet,
    InvalidPermutation,
    NegativeCoefficient,
    ParseError,
    PartyOutOfRange,
)

Rational = Fraction
MAX_PARTIES = 9


def full_set(n: int) -> int:
    """Full mask of all parties ``0..n``."""
    return (1 << (n + 1)) - 1


def full_mask(parties: Iterable[int], n: int) -> int:
    mask = 0
    for p in parties:
        if not 0 <= p <= n:
            raise PartyOutOfRange(f"party {p} outside 0..{n}")
        mask |= 1 << p
    return mask


def canon_index(mask: int, n: int) -> int:
    """Storage index of the canonical representative of a full mask (0 = empty)."""
    if mask & 1:
        mask = full_set(n) ^ mask
    return mask >> 1


def parties_of_index(index: int) -> tuple[int, ...]:
    return tuple(l + 1 for l in range(index.bit_length()) if index >> l & 1)


def parties_of_mask(mask: int) -> tuple[int, ...]:
    return tuple(l for l in range(mask.bit_length()) if mask >> l & 1)


def subset_label(index: int) -> str:
    """Sorted party digits, e.g. index 5 -> ``"13"``."""
    return "".join(str(p) for p in parties_of_index(index))


def index_of_label(label: str, n: int) -> int:
    try:
        parties = [int(ch) for ch in label]
    except ValueError:
        raise ParseError(f"bad subset label {label!r}") from None
    if not parties:
        raise IndexOfEmptySet("empty subset label")
    return subset_index(parties, n)


@dataclass(frozen=True)
class PartySet:
    """A subset of ``{1..N}`` stored as a storage-index bitmask."""

    n: int
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise PartyOutOfRange(f"mask {self.mask:b} has parties outside 1..{self.n}")

    @classmethod
    def of(cls, parties: Iterable[int], n: int) -> "PartySet":
        mask = full_mask(parties, n)
        if mask & 1:
            raise PartyOutOfRange("the purifier cannot be stored in a PartySet")
        return cls(n, mask >> 1)

    @property
    def parties(self) -> tuple[int, ...]:
        return parties_of_index(self.mask)

    def __bool__(self):
        return self.mask != 0

    def __len__(self):
        return bin(self.mask).count("1")


SubsetLike = Union[PartySet, Iterable[int]]


def subset_index(K: SubsetLike, n: int | None = None) -> int:
    """Storage index ``sum(2**(l-1))`` of a nonempty subset of ``{1..N}``."""
    if isinstance(K, PartySet):
        index = K.mask
    else:
        parties = list(K)
        if n is None:
            n = max(parties, default=0)
        mask = full_mask(parties, n)
        if mask & 1:
            raise PartyOutOfRange("subset_index takes subsets of 1..N; canonicalize first")
        index = mask >> 1
    if index == 0:
        raise IndexOfEmptySet("the empty set has no storage index")
    return index


def canonicalize(K: Iterable[int], n: int) -> PartySet:
    """Replace a subset of ``{0..N}`` containing the purifier by its complement."""
    return PartySet(n, canon_index(full_mask(K, n), n))


@dataclass(frozen=True)
class EntropyVector:
    """Entropies ``S_I`` for the ``2**N - 1`` nonempty subsets of ``{1..N}``.

    ``comp[i - 1]`` holds the entropy of the subset with storage index ``i``.
    """

    n: int
    comp: tuple[Fraction, ...]

    def __post_init__(self):
        if not 1 <= self.n:
            raise PartyOutOfRange(f"party count must be >= 1, got {self.n}")
        comp = tuple(Fraction(x) for x in self.comp)
        if len(comp) != (1 << self.n) - 1:
            raise DimensionMismatch(
                f"N={self.n} needs {(1 << self.n) - 1} components, got {len(comp)}"
            )
        object.__setattr__(self, "comp", comp)

    @classmethod
    def zeros(cls, n: int) -> "EntropyVector":
        return cls(n, (Fraction(0),) * ((1 << n) - 1))

    @property
    def dim(self) -> int:
        return len(self.comp)

    def at_mask(self, mask: int) -> Fraction:
        """Entropy of the subset of ``{0..N}`` given as a full mask."""
        index = canon_index(mask, self.n)
        return self.comp[index - 1] if index else Fraction(0)

    def __getitem__(self, K: SubsetLike) -> Fraction:
        return entropy_of(self, K)

    def __add__(self, other: "EntropyVector") -> "EntropyVector":
        if not isinstance(other, EntropyVector):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch(f"cannot add N={self.n} and N={other.n} vectors")
        return EntropyVector(self.n, tuple(a + b for a, b in zip(self.comp, other.comp)))

    def __mul__(self, scalar) -> "EntropyVector":
        s = Fraction(scalar)
        return EntropyVector(self.n, tuple(s * a for a in self.comp))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.comp)

    def __str__(self):
        return "(" + ",".join(_fmt_rational(x) for x in self.comp) + ")"


def entropy_of(v: EntropyVector, K: SubsetLike) -> Fraction:
    """Entropy of any subset of ``{0..N}``, using the complement rule for the purifier."""
    if isinstance(K, PartySet):
        if K.n != v.n:
            raise DimensionMismatch(f"subset for N={K.n} used on N={v.n} vector")
        return v.comp[K.mask - 1] if K.mask else Fraction(0)
    return v.at_mask(full_mask(K, v.n))


@dataclass(frozen=True)
class PartyPermutation:
    """A bijection of ``{0..N}``; ``images[l]`` is the image of party ``l``."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.n + 1 or sorted(images) != list(range(self.n + 1)):
            raise InvalidPermutation(f"{images} is not a permutation of 0..{self.n}")

    @classmethod
    def identity(cls, n: int) -> "PartyPermutation":
        return cls(n, tuple(range(n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "PartyPermutation":
        images = list(range(n + 1))
        images[a], images[b] = images[b], images[a]
        return cls(n, tuple(images))

    def __call__(self, party: int) -> int:
        return self.images[party]

    def compose(self, other: "PartyPermutation") -> "PartyPermutation":
        """``self ∘ other``: apply ``other`` first."""
        return PartyPermutation(self.n, tuple(self.images[i] for i in other.images))

    def inverse(self) -> "PartyPermutation":
        inv = [0] * (self.n + 1)
        for l, img in enumerate(self.images):
            inv[img] = l
        return PartyPermutation(self.n, tuple(inv))

    def map_mask(self, mask: int) -> int:
        out = 0
        for l, img in enumerate(self.images):
            if mask >> l & 1:
                out |= 1 << img
        return out


@lru_cache(maxsize=4096)
def _index_image_table(images: tuple[int, ...]) -> tuple[int, ...]:
    # table[i] = canonical storage index of perm(I) for storage index i
    perm = PartyPermutation(len(images) - 1, images)
    n = perm.n
    return (0,) + tuple(canon_index(perm.map_mask(i << 1), n) for i in range(1, 1 << n))


def index_image_table(perm: PartyPermutation) -> tuple[int, ...]:
    return _index_image_table(perm.images)


def apply_permutation(v: EntropyVector, perm: PartyPermutation) -> EntropyVector:
    """Relabel parties: the result satisfies ``r[perm(K)] = v[K]``."""
    if perm.n != v.n:
        raise DimensionMismatch(f"permutation of 0..{perm.n} applied to N={v.n} vector")
    table = index_image_table(perm)
    out = [Fraction(0)] * v.dim
    for i, x in enumerate(v.comp, start=1):
        out[table[i] - 1] = x
    return EntropyVector(v.n, tuple(out))


def conic_combine(
    terms: Sequence[tuple[Fraction | int, EntropyVector]], n: int | None = None
) -> EntropyVector:
    """Componentwise ``sum(coef * v)`` with nonnegative coefficients."""
    if not terms:
        if n is None:
            raise DimensionMismatch("empty combination needs an explicit party count")
        return EntropyVector.zeros(n)
    n = terms[0][1].n if n is None else n
    acc = [Fraction(0)] * ((1 << n) - 1)
    for coef, v in terms:
        coef = Fraction(coef)
        if coef < 0:
            raise NegativeCoefficient(f"coefficient {coef} < 0")
        if v.n != n:
            raise DimensionMismatch(f"mixed party counts {n} and {v.n}")
        for i, x in enumerate(v.comp):
            acc[i] += coef * x
    return EntropyVector(n, tuple(acc))


# -- text format --------------------------------------------------------------


def _fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_vector(v: EntropyVector) -> str:
    lines = [f"N {v.n}"]
    for i, x in enumerate(v.comp, start=1):
        lines.append(f"{subset_label(i)}: {_fmt_rational(x)}")
    return "\n".join(lines) + "\n"


def _parse_header(line: str, tag: str) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != tag:
        raise ParseError(f"expected '{tag} <n>' header, got {line!r}")
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(f"bad party count in {line!r}") from None
    if not 1 <= n <= MAX_PARTIES:
        raise ParseError(f"party count {n} outside 1..{MAX_PARTIES}")
    return n


def parse_vector(text: str) -> EntropyVector:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty entropy-vector file")
    n = _parse_header(lines[0], "N")
    comp: list[Fraction | None] = [None] * ((1 << n) - 1)
    for ln in lines[1:]:
        label, sep, value = ln.partition(":")
        if not sep:
            raise ParseError(f"expected '<subset>: <value>', got {ln!r}")
        index = index_of_label(label.strip().strip('"'), n)
        if comp[index - 1] is not None:
            raise ParseError(f"subset {label.strip()} listed twice")
        try:
            comp[index - 1] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational {value.strip()!r}") from None
    missing = [subset_label(i + 1) for i, x in enumerate(comp) if x is None]
    if missing:
        raise ParseError(f"missing components for subsets {', '.join(missing)}")
    return EntropyVector(n, tuple(comp))
