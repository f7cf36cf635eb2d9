"""Exact integer linear algebra on small matrices.

Everything here works on plain Python ints, so no intermediate value can
overflow. Matrices are lists (or tuples) of rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

Vector = tuple[int, ...]
IntMatrix = Sequence[Sequence[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _check_rect(m: IntMatrix) -> int:
    ncols = len(m[0]) if m else 0
    for row in m:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    return ncols


def hnf_with_transform(m: IntMatrix, ncols: Optional[int] = None):
    """Row-style Hermite normal form with the unimodular transform.

    Returns ``(h, u, rank)`` with ``u @ m == h``.  The first ``rank`` rows of
    ``h`` are in echelon form with positive pivots and entries above each
    pivot reduced into ``[0, pivot)``; the remaining rows are zero and the
    matching rows of ``u`` span the left kernel of ``m``.
    """
    if ncols is None:
        ncols = _check_rect(m)
    a = [list(row) for row in m]
    nrows = len(a)
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            bi = a[i][col]
            if bi == 0:
                continue
            ar = a[r][col]
            g, x, y = xgcd(ar, bi)
            p, q = ar // g, bi // g
            # [[x, y], [-q, p]] has determinant 1
            row_r, row_i = a[r], a[i]
            a[r] = [x * s + y * t for s, t in zip(row_r, row_i)]
            a[i] = [p * t - q * s for s, t in zip(row_r, row_i)]
            ur, ui = u[r], u[i]
            u[r] = [x * s + y * t for s, t in zip(ur, ui)]
            u[i] = [p * t - q * s for s, t in zip(ur, ui)]
        piv = a[r][col]
        if piv == 0:
            continue
        if piv < 0:
            a[r] = [-s for s in a[r]]
            u[r] = [-s for s in u[r]]
            piv = -piv
        for k in range(r):
            f = a[k][col] // piv
            if f:
                a[k] = [s - f * t for s, t in zip(a[k], a[r])]
                u[k] = [s - f * t for s, t in zip(u[k], u[r])]
        r += 1
    return a, u, r


def hnf(m: IntMatrix) -> tuple[list[list[int]], int]:
    """Row-style Hermite normal form of ``m`` and its rank."""
    h, _, rank = hnf_with_transform(m)
    return h, rank


def integer_solution(vecs: Sequence[Sequence[int]], w: Sequence[int]):
    """Solve ``sum(c[i] * vecs[i]) == w`` over the integers.

    Returns ``(c0, kernel)`` where ``c0`` is one integer solution and every
    other solution is ``c0`` plus an integer combination of ``kernel`` rows;
    ``None`` if there is no integer solution.
    """
    n = len(w)
    if not vecs:
        return ([], []) if not any(w) else None
    h, u, rank = hnf_with_transform(vecs, n)
    y = []
    rest = list(w)
    col = 0
    for i in range(rank):
        while h[i][col] == 0:
            if rest[col]:
                return None
            col += 1
        q, rem = divmod(rest[col], h[i][col])
        if rem:
            return None
        y.append(q)
        rest = [s - q * t for s, t in zip(rest, h[i])]
        col += 1
    if any(rest):
        return None
    c0 = [sum(yi * u[i][j] for i, yi in enumerate(y)) for j in range(len(vecs))]
    return c0, [list(row) for row in u[rank:]]


@dataclass(frozen=True)
class Lattice:
    """A subgroup of Z^n stored by its canonical HNF basis."""

    ambient_dim: int
    basis: tuple[Vector, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, vec) -> bool:
        return integer_solution(self.basis, vec) is not None


def lattice_of(vectors: Sequence[Sequence[int]], ambient_dim: Optional[int] = None) -> Lattice:
    """The lattice generated by ``vectors``, in canonical form."""
    vectors = [tuple(int(x) for x in v) for v in vectors]
    if ambient_dim is None:
        if not vectors:
            raise ValueError("ambient_dim required for an empty generating set")
        ambient_dim = len(vectors[0])
    for v in vectors:
        if len(v) != ambient_dim:
            raise ValueError(f"vector {v} is not of dimension {ambient_dim}")
    if not vectors:
        return Lattice(ambient_dim, ())
    h, _, rank = hnf_with_transform(vectors, ambient_dim)
    return Lattice(ambient_dim, tuple(tuple(row) for row in h[:rank]))


def lattice_intersect(l1: Lattice, l2: Lattice) -> Lattice:
    """Intersection of two lattices via the kernel of the stacked bases."""
    if l1.ambient_dim != l2.ambient_dim:
        raise ValueError("lattices live in different ambient spaces")
    n = l1.ambient_dim
    if not l1.basis or not l2.basis:
        return Lattice(n, ())
    stacked = [list(b) for b in l1.basis] + [[-x for x in b] for b in l2.basis]
    _, u, rank = hnf_with_transform(stacked, n)
    r1 = len(l1.basis)
    images = []
    for row in u[rank:]:
        x = row[:r1]
        images.append(tuple(sum(xi * b[j] for xi, b in zip(x, l1.basis)) for j in range(n)))
    return lattice_of(images, n)


def cyclic_generator(l: Lattice) -> Optional[Vector]:
    """Generator of a rank-one lattice (first nonzero entry positive)."""
    if l.rank != 1:
        return None
    w = l.basis[0]
    lead = next(x for x in w if x)
    return w if lead > 0 else tuple(-x for x in w)


def rank_of(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return hnf_with_transform(vectors, len(vectors[0]))[2]


def bareiss_det(m: IntMatrix) -> int:
    """Determinant by fraction-free elimination."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def gcd_max_minors(m: IntMatrix) -> int:
    """gcd of all rows x rows minors of a wide matrix (0 if all vanish)."""
    nrows = len(m)
    ncols = _check_rect(m)
    if nrows > ncols:
        raise ValueError("gcd_max_minors needs rows <= cols")
    g = 0
    for cols in combinations(range(ncols), nrows):
        g = gcd(g, bareiss_det([[row[j] for j in cols] for row in m]))
        if g == 1:
            break
    return g


def solve_linear_congruences(pairs, modulus: int) -> Optional[tuple[int, int]]:
    """Lexicographically smallest (x, y) mod ``modulus`` solving every
    ``cx*x + cy*y = rhs (mod modulus)`` in ``pairs``, by exhaustive scan."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    pairs = list(pairs)
    for x in range(modulus):
        for y in range(modulus):
            if all((cx * x + cy * y - rhs) % modulus == 0 for cx, cy, rhs in pairs):
                return x, y
    return None


def _coefficient_bound(w: Sequence[int], t: Sequence[int]) -> int:
    return min(wj // tj for wj, tj in zip(w, t) if tj > 0)


def _lexmin_member(w: list[int], vecs: list[Vector]) -> Optional[list[int]]:
    sol = integer_solution(vecs, w)
    if sol is None:
        return None
    c0, kernel = sol
    if not kernel:
        return c0 if all(c >= 0 for c in c0) else None
    if len(kernel) == 1:
        # one free parameter z: c = c0 + z*k, bounded on both sides since
        # a kernel vector of nonnegative generators has mixed signs
        k = kernel[0]
        lo = hi = None
        for ci, ki in zip(c0, k):
            if ki > 0:
                b = -(ci // ki)
                lo = b if lo is None else max(lo, b)
            elif ki < 0:
                b = ci // -ki
                hi = b if hi is None else min(hi, b)
            elif ci < 0:
                return None
        if lo is None or hi is None or lo > hi:
            return None
        lead = next(ki for ki in k if ki)
        z = lo if lead > 0 else hi
        return [ci + z * ki for ci, ki in zip(c0, k)]
    first = vecs[0]
    bound = _coefficient_bound(w, first)
    step = 0
    for row in kernel:
        step = gcd(step, row[0])
    if step == 0:
        candidates = [c0[0]] if 0 <= c0[0] <= bound else []
    else:
        candidates = range(c0[0] % step, bound + 1, step)
    for val in candidates:
        rest = [wj - val * tj for wj, tj in zip(w, first)]
        sub = _lexmin_member(rest, vecs[1:])
        if sub is not None:
            return [val] + sub
    return None


def semigroup_member(w: Sequence[int], t: Sequence[Sequence[int]]) -> Optional[list[int]]:
    """Nonnegative integers c with ``sum(c[i] * t[i]) == w``, or None.

    The answer is the lexicographically smallest such coefficient list in the
    given order of ``t``. Exact: the integer solution set is parametrised by
    a kernel basis and the nonnegative part is searched with per-coordinate
    bounds ``min_j floor(w_j / t_j)``, so ``None`` proves non-membership.
    """
    w = [int(x) for x in w]
    vecs = [tuple(int(x) for x in v) for v in t]
    if any(x < 0 for x in w):
        raise ValueError(f"target {tuple(w)} has a negative entry")
    for v in vecs:
        if len(v) != len(w):
            raise ValueError(f"generator {v} has wrong dimension")
        if any(x < 0 for x in v):
            raise ValueError(f"generator {v} has a negative entry")
        if not any(v):
            raise ValueError("zero generator")
    if not vecs:
        return [] if not any(w) else None
    return _lexmin_member(w, vecs)


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n >= 1`` in increasing order."""
    if n < 1:
        raise ValueError("prime_factors needs a positive integer")
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def valuation(n: int, p: int) -> int:
    """Exponent of ``p`` in ``n != 0``."""
    if n == 0:
        raise ValueError("valuation of zero")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k
