"""Closed-form entropy vectors of Bell pairs, GHZ states and the four-party AME state."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .entrospace import EntropyVector, PartyPermutation, full_set
from .errors import InvalidStateSpec


@dataclass(frozen=True)
class StateSpec:
    """``kind`` is ``"bell"``, ``"ghz"`` or ``"ame4"``; ``parties`` are drawn from ``0..n``."""

    kind: str
    n: int
    parties: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parties", tuple(sorted(self.parties)))
        if self.n < 1:
            raise InvalidStateSpec(f"party count must be >= 1, got {self.n}")
        if any(not 0 <= p <= self.n for p in self.parties):
            raise InvalidStateSpec(f"parties {self.parties} outside 0..{self.n}")
        if len(set(self.parties)) != len(self.parties):
            raise InvalidStateSpec(f"repeated party in {self.parties}")
        if self.kind == "bell":
            if len(self.parties) != 2:
                raise InvalidStateSpec("a Bell pair needs two distinct parties")
        elif self.kind == "ghz":
            if len(self.parties) < 2:
                raise InvalidStateSpec("a GHZ state needs at least two parties")
        elif self.kind == "ame4":
            if self.n != 3:
                raise InvalidStateSpec("the four-party AME state lives on N=3 (with purifier)")
            if self.parties not in ((), (0, 1, 2, 3)):
                raise InvalidStateSpec("ame4 takes no party list")
        else:
            raise InvalidStateSpec(f"unknown state kind {self.kind!r}")

    @classmethod
    def bell(cls, a: int, b: int, n: int) -> "StateSpec":
        return cls("bell", n, (a, b))

    @classmethod
    def ghz(cls, parties, n: int) -> "StateSpec":
        return cls("ghz", n, tuple(parties))

    @classmethod
    def ame4(cls) -> "StateSpec":
        return cls("ame4", 3)

    def permuted(self, perm: PartyPermutation) -> "StateSpec":
        if self.kind == "ame4":
            return self
        return StateSpec(self.kind, self.n, tuple(perm(p) for p in self.parties))


def state_vector(s: StateSpec) -> EntropyVector:
    n = s.n
    support = sum(1 << p for p in s.parties)
    comp = []
    for i in range(1, 1 << n):
        K = i << 1  # full mask without the purifier
        if s.kind in ("bell", "ghz"):
            # a K split of the support is symmetric under complementing K
            hit = K & support
            comp.append(Fraction(1 if hit and hit != support else 0))
        else:
            size = bin(K & full_set(n)).count("1")
            comp.append(Fraction(min(size, 4 - size)))
    return EntropyVector(n, tuple(comp))


def bell(a: int, b: int, n: int) -> EntropyVector:
    return state_vector(StateSpec.bell(a, b, n))


def ghz(parties, n: int) -> EntropyVector:
    return state_vector(StateSpec.ghz(parties, n))


def ame4() -> EntropyVector:
    return state_vector(StateSpec.ame4())


def all_bells(n: int) -> list[EntropyVector]:
    return [bell(a, b, n) for a in range(n + 1) for b in range(a + 1, n + 1)]


def erq4_trivial_rays(lambda_rays=None):
    """Extreme rays of the four-party stabilizer cone that are also extreme in the 4-party SAC.

    ``lambda_rays`` may pass a precomputed V-representation of the stabilizer
    cone to skip the enumeration.
    """
    from .cone import HRepCone, VRepCone, double_description, is_extreme_ray
    from .ineq import family_instances, sa_instances

    if lambda_rays is None:
        lambda_rays = double_description(HRepCone.of(family_instances("lambda4", 4)))
    sac = HRepCone.of(sa_instances(4))
    keep = [r for r in lambda_rays.rays if is_extreme_ray(r, sac).extreme]
    return VRepCone(4, tuple(keep))
