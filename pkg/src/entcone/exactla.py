"""Exact linear algebra over the rationals.

Rank by fraction-free elimination, a fast modular rank used as a rigorous
lower bound, and conic membership by a phase-1 simplex with Bland's rule that
returns a self-checking certificate either way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch

Matrix = Sequence[Sequence["int | Fraction"]]

MODULUS = 2_147_483_647  # 2**31 - 1; products of residues fit in int64


def integer_row(row: Sequence[int | Fraction]) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    fr = [Fraction(x) for x in row]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    return [int(x * den) for x in fr]


def primitive(vec: Sequence[int | Fraction]) -> tuple[int, ...]:
    """Integer multiple of ``vec`` with gcd 1 (direction preserved)."""
    ints = integer_row(vec)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def _ncols(M: Matrix, cols: int | None) -> int:
    if cols is not None:
        for row in M:
            if len(row) != cols:
                raise DimensionMismatch(f"row of length {len(row)} in a {cols}-column matrix")
        return cols
    widths = {len(row) for row in M}
    if len(widths) > 1:
        raise DimensionMismatch(f"ragged matrix with row lengths {sorted(widths)}")
    return widths.pop() if widths else 0


def rank(M: Matrix, cols: int | None = None) -> int:
    """Exact rank via Bareiss fraction-free elimination."""
    ncols = _ncols(M, cols)
    rows = [integer_row(r) for r in M if any(r)]
    if not rows or ncols == 0:
        return 0
    A = np.empty((len(rows), ncols), dtype=object)
    A[:, :] = rows
    nrows = len(rows)
    r = 0
    prev = 1
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, col] != 0)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        piv = A[r, col]
        if r + 1 < nrows and col + 1 < ncols:
            lower = A[r + 1 :, col + 1 :]
            A[r + 1 :, col + 1 :] = (
                piv * lower - np.outer(A[r + 1 :, col], A[r, col + 1 :])
            ) // prev
        A[r + 1 :, col] = 0
        prev = piv
        r += 1
    return r


def nullspace_dim(M: Matrix, cols: int | None = None) -> int:
    return _ncols(M, cols) - rank(M, cols)


def rank_mod_p(M: Matrix, cols: int | None = None, p: int = MODULUS) -> tuple[int, list[int]]:
    """Rank of ``M`` reduced modulo the prime ``p``, with the pivot row indices.

    Any nonzero minor modulo ``p`` is a nonzero integer minor, so the result is
    a rigorous lower bound on the rational rank.  Pivot rows refer to the input
    order.
    """
    ncols = _ncols(M, cols)
    if not M or ncols == 0:
        return 0, []
    A = np.array([integer_row(r) for r in M], dtype=object) % p
    A = A.astype(np.int64)
    order = np.arange(A.shape[0])
    nrows = A.shape[0]
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, col])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
            order[[r, k]] = order[[k, r]]
        inv = pow(int(A[r, col]), -1, p)
        A[r] = (A[r] * inv) % p
        below = A[r + 1 :, col].copy()
        hit = np.flatnonzero(below)
        if hit.size:
            rows = r + 1 + hit
            A[rows] = (A[rows] - (below[hit, None] * A[r][None, :]) % p) % p
        r += 1
    return r, sorted(int(i) for i in order[:r])


# -- conic membership -----------------------------------------------------------


@dataclass(frozen=True)
class ConicCertificate:
    """Outcome of a conic-membership query.

    For a member, ``coefficients`` lists ``(ray index, weight)`` pairs with
    positive weights (omitted rays have weight zero).  For a nonmember,
    ``separating`` is an integer functional that is nonnegative on every ray
    and negative on the query.
    """

    kind: str
    coefficients: tuple[tuple[int, Fraction], ...] = ()
    separating: tuple[int, ...] | None = None
    pivots: int = field(default=0, compare=False)

    @property
    def member(self) -> bool:
        return self.kind == "member"

    def dense(self, m: int) -> list[Fraction]:
        out = [Fraction(0)] * m
        for i, c in self.coefficients:
            out[i] = c
        return out


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def verify_certificate(cert: ConicCertificate, q: Sequence, rays: Sequence[Sequence]) -> bool:
    """Recheck a certificate from scratch, independently of the solver."""
    q = [Fraction(x) for x in q]
    if cert.kind == "member":
        acc = [Fraction(0)] * len(q)
        for i, c in cert.coefficients:
            if c < 0 or not 0 <= i < len(rays):
                return False
            for k, x in enumerate(rays[i]):
                acc[k] += c * x
        return acc == q
    if cert.kind == "nonmember" and cert.separating is not None:
        y = cert.separating
        if len(y) != len(q):
            return False
        return all(_dot(y, r) >= 0 for r in rays) and _dot(y, q) < 0
    return False


def _check_dims(q: Sequence, rays: Sequence[Sequence]) -> int:
    D = len(q)
    for r in rays:
        if len(r) != D:
            raise DimensionMismatch(f"ray of length {len(r)} against query of length {D}")
    return D


def _positive_multiple(q: list[Fraction], r: Sequence) -> Fraction | None:
    ratio = None
    for x, y in zip(q, r):
        if y == 0:
            if x != 0:
                return None
            continue
        t = x / Fraction(y)
        if ratio is None:
            ratio = t
        elif t != ratio:
            return None
    if ratio is None or ratio <= 0:
        return None
    return ratio


def conic_membership(q: Sequence, rays: Sequence[Sequence]) -> ConicCertificate:
    """Decide exactly whether ``q`` lies in the cone generated by ``rays``.

    Solves the phase-1 problem ``min sum(a)`` subject to ``R lam + a = q`` with
    ``lam, a >= 0`` (rows sign-flipped so the right-hand side is nonnegative)
    using Bland's rule.  A positive optimum yields a Farkas functional read
    off the reduced costs of the artificial columns.
    """
    D = _check_dims(q, rays)
    q = [Fraction(x) for x in q]
    m = len(rays)
    if not any(q):
        return ConicCertificate("member")
    for i, r in enumerate(rays):
        t = _positive_multiple(q, r)
        if t is not None:
            return ConicCertificate("member", ((i, t),))

    sign = [1 if x >= 0 else -1 for x in q]
    # tableau rows: columns 0..m-1 are rays, m..m+D-1 artificials
    T = []
    for i in range(D):
        row = [Fraction(sign[i] * r[i]) for r in rays] + [Fraction(0)] * D
        row[m + i] = Fraction(1)
        T.append(row)
    b = [sign[i] * q[i] for i in range(D)]
    basis = [m + i for i in range(D)]
    ncol = m + D
    rc = [-sum(T[i][j] for i in range(D)) for j in range(m)] + [Fraction(0)] * D
    pivots = 0

    while True:
        obj = sum(b[i] for i in range(D) if basis[i] >= m)
        if obj == 0:
            break
        enter = next((j for j in range(ncol) if rc[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(D):
            a = T[i][enter]
            if a > 0:
                ratio = b[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded cannot happen in phase 1 (objective >= 0)
            raise ArithmeticError("phase-1 simplex reported an unbounded direction")
        prow = T[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [x / piv for x in prow]
            T[leave] = prow
            b[leave] /= piv
        nzcols = [j for j in range(ncol) if prow[j]]
        for i in range(D):
            if i == leave:
                continue
            f = T[i][enter]
            if f:
                row = T[i]
                for j in nzcols:
                    row[j] -= f * prow[j]
                b[i] -= f * b[leave]
        f = rc[enter]
        for j in nzcols:
            rc[j] -= f * prow[j]
        basis[leave] = enter
        pivots += 1

    if obj == 0:
        coefs = tuple(
            sorted((basis[i], b[i]) for i in range(D) if basis[i] < m and b[i] != 0)
        )
        return ConicCertificate("member", coefs, pivots=pivots)

    y = [1 - rc[m + i] for i in range(D)]
    z = primitive([-sign[i] * y[i] for i in range(D)])
    cert = ConicCertificate("nonmember", separating=z, pivots=pivots)
    if not verify_certificate(cert, q, rays):
        raise ArithmeticError("Farkas certificate failed verification")
    return cert

