"""Polyhedral cones in entropy space.

H-representations are lists of :class:`~entcone.ineq.LinearFunctional`;
V-representations are sorted tuples of primitive integer rays.  Conversion
goes through an incremental double description with a combinatorial
adjacency test, and every comparison between cones returns something that
can be rechecked without rerunning the search.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .entrospace import EntropyVector, PartyPermutation, index_image_table
from .exactla import ConicCertificate, conic_membership, primitive, rank, rank_mod_p
from .errors import DimensionMismatch, NonPointedCone, ZeroVector
from .ineq import InstanceSet, LinearFunctional

log = logging.getLogger(__name__)

Ray = tuple[int, ...]


@dataclass(frozen=True)
class HRepCone:
    """The cone ``{S : f . S >= 0 for every functional f}``."""

    n: int
    functionals: tuple[LinearFunctional, ...]

    def __post_init__(self):
        object.__setattr__(self, "functionals", tuple(self.functionals))
        for f in self.functionals:
            if f.n != self.n:
                raise DimensionMismatch(f"N={f.n} functional in an N={self.n} cone")

    @classmethod
    def of(cls, instances: InstanceSet) -> "HRepCone":
        return cls(instances.n, instances.functionals)

    @property
    def D(self) -> int:
        return (1 << self.n) - 1

    def __len__(self):
        return len(self.functionals)


def canonical_ray(vec: Sequence[int | Fraction]) -> Ray:
    """Primitive integer representative of the ray through ``vec``."""
    return primitive(vec)


def ray_of(v: EntropyVector) -> Ray:
    return canonical_ray(v.comp)


def vector_of(ray: Sequence[int], n: int) -> EntropyVector:
    return EntropyVector(n, tuple(Fraction(x) for x in ray))


@dataclass(frozen=True)
class VRepCone:
    """Cone generated by primitive integer rays, stored sorted and deduplicated."""

    n: int
    rays: tuple[Ray, ...]

    def __post_init__(self):
        D = (1 << self.n) - 1
        canon = set()
        for r in self.rays:
            if len(r) != D:
                raise DimensionMismatch(f"ray of length {len(r)} in an N={self.n} cone")
            c = canonical_ray(r)
            if any(c):
                canon.add(c)
        object.__setattr__(self, "rays", tuple(sorted(canon)))

    @classmethod
    def of_vectors(cls, vectors: Iterable[EntropyVector], n: int | None = None) -> "VRepCone":
        vectors = list(vectors)
        if n is None:
            if not vectors:
                raise DimensionMismatch("empty ray list needs an explicit party count")
            n = vectors[0].n
        for v in vectors:
            if v.n != n:
                raise DimensionMismatch(f"N={v.n} vector in an N={n} cone")
        return cls(n, tuple(ray_of(v) for v in vectors))

    @property
    def D(self) -> int:
        return (1 << self.n) - 1

    def __len__(self):
        return len(self.rays)

    def __iter__(self):
        return iter(self.rays)

    def vectors(self) -> list[EntropyVector]:
        return [vector_of(r, self.n) for r in self.rays]

    def __or__(self, other: "VRepCone") -> "VRepCone":
        _same_n(self.n, other.n)
        return VRepCone(self.n, self.rays + other.rays)


def _same_n(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatch(f"cones over N={a} and N={b} are not comparable")


# -- double description ---------------------------------------------------------


def _dotint(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b) if x)


def _prim(vec: list[int]) -> list[int]:
    g = 0
    for x in vec:
        if x:
            g = gcd(g, x)
            if g == 1:
                return vec
    return vec if g in (0, 1) else [x // g for x in vec]


def _matrix(rows: Sequence[Sequence[int]]) -> np.ndarray:
    big = max((abs(x) for r in rows for x in r), default=0)
    return np.array(rows, dtype=np.int64 if big < 1 << 24 else object)


def _cut_counts(A: np.ndarray, rays: list[list[int]]) -> np.ndarray:
    R = _matrix(rays)
    if A.dtype != R.dtype:
        A, R = A.astype(object), R.astype(object)
    return ((A @ R.T) < 0).sum(axis=1)


def double_description(H: HRepCone, order: str = "maxcut") -> VRepCone:
    """Extreme rays of a pointed cone given by inequalities.

    Constraints are added one at a time.  While the running cone still has
    a lineality space, a constraint that is not orthogonal to it consumes one
    lineality direction.  Otherwise rays are split by sign and each adjacent
    positive/negative pair contributes the ray on the new hyperplane; two rays
    are adjacent when no third ray saturates every constraint they both
    saturate.

    ``order="maxcut"`` picks next the constraint cutting off the most current
    rays; ``order="given"`` keeps the input order.  The output is sorted and
    does not depend on the order.
    """
    D = H.D
    rows = [list(f.coeff) for f in H.functionals]
    if not rows:
        raise ValueError("double description needs at least one inequality")
    A = _matrix(rows)
    lin: list[list[int]] = [[int(i == k) for i in range(D)] for k in range(D)]
    rays: list[list[int]] = []
    sats: list[int] = []
    remaining = list(range(len(rows)))

    while remaining:
        pick = None
        if lin:
            for pos, k in enumerate(remaining):
                if any(_dotint(rows[k], l) for l in lin):
                    pick = pos
                    break
        if pick is None:
            if order == "maxcut" and rays and len(remaining) > 1:
                counts = _cut_counts(A[remaining], rays)
                pick = int(np.argmax(counts))
            else:
                pick = 0
        k = remaining.pop(pick)
        a = rows[k]
        bit = 1 << k

        vals = [_dotint(a, l) for l in lin]
        j = next((i for i, x in enumerate(vals) if x), None)
        if j is not None:
            l = lin.pop(j)
            al = vals.pop(j)
            if al < 0:
                l, al = [-x for x in l], -al
            lin = [_prim([al * x - v * y for x, y in zip(lp, l)]) for lp, v in zip(lin, vals)]
            new_rays = []
            for r in rays:
                ar = _dotint(a, r)
                new_rays.append(_prim([al * x - ar * y for x, y in zip(r, l)]) if ar else r)
            rays = new_rays
            sats = [s | bit for s in sats]
            # every constraint handled so far is orthogonal to l
            processed = sum(1 << i for i in range(len(rows)) if i not in remaining and i != k)
            rays.append(l)
            sats.append(processed)
            continue

        vals = [_dotint(a, r) for r in rays]
        pos = [i for i, x in enumerate(vals) if x > 0]
        neg = [i for i, x in enumerate(vals) if x < 0]
        zer = [i for i, x in enumerate(vals) if x == 0]
        if not neg:
            for i in zer:
                sats[i] |= bit
            continue
        need = D - len(lin) - 2
        new_rays, new_sats = [], []
        for p in pos:
            sp = sats[p]
            for q in neg:
                common = sp & sats[q]
                if need > 0 and bin(common).count("1") < need:
                    continue
                hits = 0
                for s in sats:
                    if s & common == common:
                        hits += 1
                        if hits > 2:
                            break
                if hits > 2:
                    continue
                vp, vq = vals[p], -vals[q]
                rp, rq = rays[p], rays[q]
                new_rays.append(_prim([vp * y + vq * x for x, y in zip(rp, rq)]))
                new_sats.append(common | bit)
        keep = pos + zer
        rays = [rays[i] for i in keep] + new_rays
        sats = [sats[i] | (bit if vals[i] == 0 else 0) for i in keep] + new_sats
        log.debug("dd: constraint %d, %d rays, %d remaining", k, len(rays), len(remaining))

    if lin:
        raise NonPointedCone(f"cone contains a {len(lin)}-dimensional linear subspace")
    return VRepCone(H.n, tuple(tuple(r) for r in rays))


# -- extremality -----------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalityCertificate:
    """Why a vector is, or is not, on an extreme ray of an H-cone.

    ``basis`` lists saturated instances whose rows are linearly independent;
    for an extreme ray it has ``D - 1`` entries and ``rank`` of those rows
    alone reproduces the certified rank.
    """

    verdict: str
    saturated: tuple[int, ...]
    rank: int
    violated: tuple[int, ...]
    D: int
    basis: tuple[int, ...] = field(default=(), compare=False)

    @property
    def extreme(self) -> bool:
        return self.verdict == "extreme"


def saturation(v: EntropyVector | Sequence, H: HRepCone) -> tuple[list[int], list[int]]:
    vals = _evaluate_all(v, H)
    zero = [i for i, x in enumerate(vals) if x == 0]
    neg = [i for i, x in enumerate(vals) if x < 0]
    return zero, neg


def _evaluate_all(v: EntropyVector | Sequence, H: HRepCone) -> list:
    if isinstance(v, EntropyVector):
        if v.n != H.n:
            raise DimensionMismatch(f"N={v.n} vector against an N={H.n} cone")
        comp = v.comp
    else:
        comp = tuple(v)
        if len(comp) != H.D:
            raise DimensionMismatch(f"vector of length {len(comp)} against D={H.D}")
    ints = canonical_ray(comp)
    A = _matrix([f.coeff for f in H.functionals])
    x = _matrix([ints])[0]
    if A.dtype != x.dtype:
        A, x = A.astype(object), x.astype(object)
    return list(A @ x) if len(A) else []


def is_extreme_ray(v: EntropyVector | Sequence, H: HRepCone) -> ExtremalityCertificate:
    """Certify whether ``v`` spans an extreme ray of ``H``.

    The rank of the saturated rows is at most ``D - 1`` because ``v`` itself
    is a nonzero kernel vector.  A set of saturated rows independent modulo a
    prime is found first; exact fraction-free elimination on just those rows
    then confirms the lower bound.  When the modular search falls short the
    full saturated matrix is eliminated exactly.
    """
    comp = v.comp if isinstance(v, EntropyVector) else tuple(v)
    if not any(comp):
        raise ZeroVector("the zero vector spans no ray")
    D = H.D
    zero, neg = saturation(v, H)
    rows = [H.functionals[i].coeff for i in zero]
    rp, piv = rank_mod_p(rows, D) if rows else (0, [])
    basis = tuple(zero[i] for i in piv)
    if rp == D - 1 and rank([H.functionals[i].coeff for i in basis], D) == D - 1:
        r = D - 1
    else:
        r = rank(rows, D) if rows else 0
        if r != rp:
            basis = ()
    if neg:
        verdict = "outside"
    elif r == D - 1:
        verdict = "extreme"
    else:
        verdict = "not-extreme"
    return ExtremalityCertificate(verdict, tuple(zero), r, tuple(neg), D, basis)


def recheck_extremality(cert: ExtremalityCertificate, v: EntropyVector, H: HRepCone) -> bool:
    """Independently re-verify a certificate from its recorded index sets."""
    zero, neg = saturation(v, H)
    if tuple(zero) != cert.saturated or tuple(neg) != cert.violated:
        return False
    rows = [H.functionals[i].coeff for i in (cert.basis or cert.saturated)]
    if cert.basis and not set(cert.basis) <= set(cert.saturated):
        return False
    r = rank(rows, H.D) if rows else 0
    if cert.basis and r != len(cert.basis):
        return False
    if r != cert.rank:
        return False
    expected = "outside" if neg else ("extreme" if r == H.D - 1 else "not-extreme")
    return expected == cert.verdict


# -- containment -------------------------------------------------------------------


def contains(A: VRepCone, B: HRepCone) -> tuple[bool, tuple[int, int] | None]:
    """Whether every ray of ``A`` satisfies every inequality of ``B``.

    On failure the witness is ``(ray index, functional index)``.
    """
    _same_n(A.n, B.n)
    if not A.rays or not B.functionals:
        return True, None
    M = _matrix([f.coeff for f in B.functionals])
    R = _matrix(list(A.rays))
    if M.dtype != R.dtype:
        M, R = M.astype(object), R.astype(object)
    vals = R @ M.T
    bad = np.argwhere(vals < 0)
    if len(bad):
        i, j = bad[0]
        return False, (int(i), int(j))
    return True, None


def hull_contains(
    A: VRepCone, B: VRepCone, workers: int = 1
) -> tuple[bool, list[ConicCertificate]]:
    """Whether every ray of ``A`` lies in ``cone(B)``, with one certificate per ray of ``A``."""
    _same_n(A.n, B.n)
    if workers > 1 and len(A.rays) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as ex:
            certs = list(ex.map(conic_membership, A.rays, itertools.repeat(B.rays)))
    else:
        certs = [conic_membership(r, B.rays) for r in A.rays]
    return all(c.member for c in certs), certs


def equal(A: VRepCone, B: VRepCone, workers: int = 1) -> bool:
    return hull_contains(A, B, workers)[0] and hull_contains(B, A, workers)[0]


def compare(A: VRepCone, B: VRepCone, workers: int = 1) -> tuple[str, dict]:
    """One of ``equal``, ``A<B``, ``B<A``, ``incomparable``, with uncovered rays as witnesses."""
    ab, cab = hull_contains(A, B, workers)
    ba, cba = hull_contains(B, A, workers)
    witnesses = {
        "A_not_in_B": [(A.rays[i], c) for i, c in enumerate(cab) if not c.member],
        "B_not_in_A": [(B.rays[i], c) for i, c in enumerate(cba) if not c.member],
    }
    if ab and ba:
        return "equal", witnesses
    if ab:
        return "A<B", witnesses
    if ba:
        return "B<A", witnesses
    return "incomparable", witnesses


# -- party permutations on rays ----------------------------------------------------


def permutations(n: int) -> list[PartyPermutation]:
    return [PartyPermutation(n, p) for p in itertools.permutations(range(n + 1))]


def permute_ray(ray: Sequence[int], perm: PartyPermutation) -> Ray:
    table = index_image_table(perm)
    out = [0] * len(ray)
    for i, x in enumerate(ray, start=1):
        out[table[i] - 1] = x
    return tuple(out)


def _tables(n: int) -> list[tuple[int, ...]]:
    return [index_image_table(p) for p in permutations(n)]


def _images(ray: Ray, tables: list[tuple[int, ...]]) -> set[Ray]:
    out = set()
    for t in tables:
        img = [0] * len(ray)
        for i, x in enumerate(ray, start=1):
            img[t[i] - 1] = x
        out.add(tuple(img))
    return out


def orbit_expand(V: VRepCone) -> VRepCone:
    """Close the ray set under all permutations of parties ``0..N``."""
    tables = _tables(V.n)
    rays = set()
    for r in V.rays:
        if r not in rays:
            rays |= _images(r, tables)
    return VRepCone(V.n, tuple(rays))


def orbits(V: VRepCone) -> list[list[Ray]]:
    """Partition the rays of ``V`` into permutation orbits, each sorted, ordered by first ray."""
    tables = _tables(V.n)
    seen: dict[Ray, int] = {}
    groups: list[list[Ray]] = []
    for r in V.rays:
        if r in seen:
            groups[seen[r]].append(r)
            continue
        gid = len(groups)
        groups.append([r])
        for img in _images(r, tables):
            seen.setdefault(img, gid)
    return groups


def orbit_count(V: VRepCone) -> int:
    return len(orbits(V))


def orbit_representative(ray: Ray, n: int) -> Ray:
    return min(_images(tuple(ray), _tables(n)))


def is_minimal(V: VRepCone) -> bool:
    """No ray of ``V`` lies in the cone of the others."""
    for i, r in enumerate(V.rays):
        others = V.rays[:i] + V.rays[i + 1 :]
        if others and conic_membership(r, others).member:
            return False
    return True


# -- text format ------------------------------------------------------------------


def format_vrep(V: VRepCone) -> str:
    lines = ["VREP", f"N {V.n}"]
    lines += [" ".join(str(x) for x in r) for r in V.rays]
    return "\n".join(lines) + "\n"


def format_hrep(H: HRepCone) -> str:
    from .ineq import format_functional

    lines = ["HREP", f"N {H.n}"] + [format_functional(f) for f in H.functionals]
    return "\n".join(lines) + "\n"


def parse_cone(text: str) -> HRepCone | VRepCone:
    from .entrospace import _parse_header
    from .errors import ParseError
    from .ineq import parse_functional

    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 2 or lines[0] not in ("HREP", "VREP"):
        raise ParseError("cone file must start with 'HREP' or 'VREP' and an 'N <n>' line")
    n = _parse_header(lines[1], "N")
    if lines[0] == "HREP":
        return HRepCone(n, tuple(parse_functional(ln, n) for ln in lines[2:]))
    rays = []
    for ln in lines[2:]:
        try:
            rays.append(tuple(int(x) for x in ln.replace(",", " ").split()))
        except ValueError:
            raise ParseError(f"bad ray line {ln!r}") from None
    return VRepCone(n, tuple(rays))
