"""Brute-force checks over small finite fields.

Elements of GF(p^m) are encoded as integers 0..p^m-1 whose base-p digits are
the coefficients (lowest degree first) of a polynomial reduced modulo the
field's modulus. Nothing computed here feeds the arithmetical-rank verdicts;
an empty excess over a few fields is evidence, never proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .intlat import is_prime, prime_factors
from .model import Binomial, Variety, in_ideal

FIELD_CAP = 2**20
SCAN_CAP = 2**24


class CapExceeded(ValueError):
    """A requested enumeration is larger than the hard size caps."""


# polynomials over F_p: lists of ints, lowest degree first, no trailing zeros

def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _polymod(f, g, p):
    f = _trim(list(f))
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        shift = len(f) - len(g)
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        _trim(f)
    return f


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f) / 2."""
    m = len(f) - 1
    if m < 1:
        return False
    for deg in range(1, m // 2 + 1):
        for coeffs in product(range(p), repeat=deg):
            if not _polymod(f, list(coeffs) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree m (low degree first)."""
    for coeffs in product(range(p), repeat=m):
        f = list(coeffs) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int = 1
    modulus: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise ValueError("extension degree must be >= 1")
        if self.p**self.m > FIELD_CAP:
            raise CapExceeded(f"GF({self.p}^{self.m}) exceeds the field cap {FIELD_CAP}")
        if self.modulus is None:
            object.__setattr__(self, "modulus", canonical_modulus(self.p, self.m))
        mod = tuple(self.modulus)
        if len(mod) != self.m + 1 or mod[-1] != 1 or not is_irreducible(mod, self.p):
            raise ValueError(f"{mod} is not a monic irreducible of degree {self.m}")
        object.__setattr__(self, "modulus", mod)

    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def name(self) -> str:
        return f"GF({self.order})"


class GF:
    """Log/antilog tables for one finite field."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p, self.m, self.q = spec.p, spec.m, spec.order
        self.mod = list(spec.modulus)
        q = self.q
        gen = self._primitive_element()
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self.mul(x, gen)
        self.exp, self.log = exp, log

    def digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.m):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def encode(self, coeffs) -> int:
        x = 0
        for c in reversed(list(coeffs)[: self.m] + [0] * (self.m - len(coeffs))):
            x = x * self.p + c % self.p
        return x

    def add(self, x: int, y: int) -> int:
        return self.encode([(s + t) % self.p for s, t in zip(self.digits(x), self.digits(y))])

    def mul(self, x: int, y: int) -> int:
        f, g = self.digits(x), self.digits(y)
        prod = [0] * (2 * self.m)
        for i, fi in enumerate(f):
            if fi:
                for j, gj in enumerate(g):
                    prod[i + j] = (prod[i + j] + fi * gj) % self.p
        return self.encode(_polymod(prod, self.mod, self.p))

    def pow(self, x: int, k: int) -> int:
        out = 1
        while k:
            if k & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            k >>= 1
        return out

    def _primitive_element(self) -> int:
        if self.q == 2:
            return 1
        rs = prime_factors(self.q - 1)
        for g in range(2, self.q):
            if all(self.pow(g, (self.q - 1) // r) != 1 for r in rs):
                return g
        raise AssertionError("multiplicative group is not cyclic?")

    def monomial_values(self, exps: Sequence[int], cols: Sequence[np.ndarray]) -> np.ndarray:
        """Evaluate prod cols[j]^exps[j] elementwise."""
        size = len(cols[0]) if cols else 1
        acc = np.zeros(size, dtype=np.int64)
        zero = np.zeros(size, dtype=bool)
        for k, col in zip(exps, cols):
            if k:
                zero |= col == 0
                acc += k * self.log[col]
        out = self.exp[acc % (self.q - 1)]
        out[zero] = 0
        return out


@lru_cache(maxsize=None)
def _field(spec: FieldSpec) -> GF:
    return GF(spec)


@lru_cache(maxsize=None)
def _subfield_map(base: FieldSpec, ext: int) -> tuple[GF, np.ndarray]:
    """The degree-``ext`` extension of ``base`` and, for each of its elements,
    the base-field code (-1 if the element is not in the base field)."""
    big = _field(FieldSpec(base.p, base.m * ext))
    small = _field(base)
    if ext == 1:
        return big, np.arange(big.q, dtype=np.int64)
    # a root of the base modulus fixes the embedding
    alpha = None
    for z in range(big.q):
        acc = 0
        for c in reversed(base.modulus):
            acc = big.add(big.mul(acc, z), c % big.p)
        if acc == 0:
            alpha = z
            break
    assert alpha is not None
    back = np.full(big.q, -1, dtype=np.int64)
    powers = [big.pow(alpha, i) for i in range(base.m)]
    for code in range(small.q):
        img = 0
        for c, pw in zip(small.digits(code), powers):
            for _ in range(c):
                img = big.add(img, pw)
        back[img] = code
    return big, back


@dataclass(frozen=True)
class PointSet:
    ambient_dim: int
    points: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, ambient_dim: int, rows) -> "PointSet":
        return cls(ambient_dim, tuple(sorted(set(map(tuple, rows)))))

    def __len__(self):
        return len(self.points)

    def __contains__(self, pt):
        return tuple(pt) in set(self.points)

    def as_set(self) -> set:
        return set(self.points)


def _grid_chunks(q: int, k: int):
    """All of F_q^k as k columns, chunked over the first coordinate."""
    if k == 0:
        yield []
        return
    if k == 1:
        yield [np.arange(q, dtype=np.int64)]
        return
    rest = np.indices((q,) * (k - 1)).reshape(k - 1, -1).astype(np.int64)
    for first in range(q):
        yield [np.full(rest.shape[1], first, dtype=np.int64)] + list(rest)


def image_points(v: Variety, base: FieldSpec, ext_max: int = 1) -> PointSet:
    """Base-field points of the parametrisation with parameters from
    GF(q^e), e = 1..ext_max."""
    if ext_max < 1:
        raise ValueError("ext_max must be >= 1")
    n = v.n
    if (base.order**ext_max) ** n > SCAN_CAP or base.order**ext_max > FIELD_CAP:
        raise CapExceeded(f"{n} parameters over GF({base.order}^{ext_max}) exceed the scan cap {SCAN_CAP}")
    found = set()
    exps = [tuple(v.dvec[i] if j == i else 0 for j in range(n)) for i in range(n)] + [v.a, v.b]
    for e in range(1, ext_max + 1):
        big, back = _subfield_map(base, e)
        for cols in _grid_chunks(big.q, n):
            coords = [back[big.monomial_values(ex, cols)] for ex in exps]
            stacked = np.stack(coords, axis=1)
            keep = stacked[(stacked >= 0).all(axis=1)]
            if len(keep):
                found.update(map(tuple, np.unique(keep, axis=0).tolist()))
    return PointSet.from_rows(n + 2, found)


def zero_set(polys: Sequence[Binomial], base: FieldSpec, ambient: int) -> PointSet:
    """All points of GF(q)^ambient where every binomial vanishes."""
    for f in polys:
        if f.nvars != ambient:
            raise ValueError(f"{f} has {f.nvars} variables, expected {ambient}")
    if base.order**ambient > SCAN_CAP:
        raise CapExceeded(f"GF({base.order})^{ambient} exceeds the scan cap {SCAN_CAP}")
    fld = _field(base)
    rows = []
    for cols in _grid_chunks(fld.q, ambient):
        mask = np.ones(len(cols[0]), dtype=bool)
        for f in polys:
            mask &= fld.monomial_values(f.plus, cols) == fld.monomial_values(f.minus, cols)
        if mask.any():
            rows.extend(np.stack(cols, axis=1)[mask].tolist())
    return PointSet.from_rows(ambient, rows)


def containment_check(v: Variety, polys: Sequence[Binomial]) -> bool:
    """Exact: every binomial encodes a relation, so V lies in their zero set."""
    return all(in_ideal(f, v) for f in polys)


@dataclass
class EqualityReport:
    field: str
    modulus: list[int]
    ext_max: int
    image_count: int
    zero_count: int
    excess: list[list[int]] = field(default_factory=list)
    missing: list[list[int]] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.missing:
            return "containment violated"
        if self.excess:
            return "possible strict containment"
        return "no excess points"

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "modulus": list(self.modulus),
            "ext_max": self.ext_max,
            "image_count": self.image_count,
            "zero_count": self.zero_count,
            "excess": [list(x) for x in self.excess],
            "missing": [list(x) for x in self.missing],
            "status": self.status,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "EqualityReport":
        return cls(obj["field"], list(obj["modulus"]), obj["ext_max"], obj["image_count"],
                   obj["zero_count"], [list(x) for x in obj["excess"]], [list(x) for x in obj["missing"]])


def equality_experiment(v: Variety, polys: Sequence[Binomial], base: FieldSpec, ext_max: int = 1) -> EqualityReport:
    image = image_points(v, base, ext_max)
    zeros = zero_set(polys, base, v.nvars)
    zs, im = zeros.as_set(), image.as_set()
    return EqualityReport(
        field=base.name,
        modulus=list(base.modulus),
        ext_max=ext_max,
        image_count=len(image),
        zero_count=len(zeros),
        excess=[list(x) for x in sorted(zs - im)],
        missing=[list(x) for x in sorted(im - zs)],
    )
