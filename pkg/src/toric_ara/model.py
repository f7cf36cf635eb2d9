"""Varieties, generator sets and binomials.

A variety of codimension 2 in K^(n+2) is given by the monomial parametrisation

    x_i = u_i^(d_i),   y_1 = prod u_i^(a_i),   y_2 = prod u_i^(b_i)

with either all d_i equal (``uniform``) or the three-parameter pattern
``a_2 = b_1 = 0`` (``mixed3``).
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from math import gcd
from typing import Literal, Sequence

from .intlat import Lattice, lattice_of, rank_of

Shape = Literal["uniform", "mixed3"]


class VarietyError(ValueError):
    """Exponent data violating one of the variety invariants."""

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


def _ints(xs) -> tuple[int, ...]:
    out = []
    for x in xs:
        if isinstance(x, bool) or int(x) != x:
            raise TypeError(f"expected an integer, got {x!r}")
        out.append(int(x))
    return tuple(out)


@dataclass(frozen=True)
class Variety:
    shape: Shape
    dvec: tuple[int, ...]
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dvec", _ints(self.dvec))
        object.__setattr__(self, "a", _ints(self.a))
        object.__setattr__(self, "b", _ints(self.b))
        n = len(self.dvec)
        if n < 1:
            raise VarietyError("dimension", "need at least one parameter")
        if len(self.a) != n or len(self.b) != n:
            raise VarietyError("dimension", f"a and b must have length {n}")
        if any(d < 1 for d in self.dvec):
            raise VarietyError("positive-degree", f"degrees must be positive, got {self.dvec}")
        for i, (ai, bi) in enumerate(zip(self.a, self.b)):
            if ai < 0 or bi < 0:
                raise VarietyError("nonnegative-exponents", f"a[{i}]={ai}, b[{i}]={bi}")
            if ai == 0 and bi == 0:
                raise VarietyError("support", f"a[{i}] and b[{i}] are both zero")
        if not any(self.a) or not any(self.b):
            raise VarietyError("nonzero-exponents", "a and b must both be nonzero vectors")
        if self.shape == "uniform":
            if len(set(self.dvec)) != 1:
                raise VarietyError("uniform-degree", f"uniform shape needs equal degrees, got {self.dvec}")
        elif self.shape == "mixed3":
            self._check_mixed3()
        else:
            raise VarietyError("shape", f"unknown shape {self.shape!r}")

    def _check_mixed3(self):
        if len(self.dvec) != 3:
            raise VarietyError("mixed3-pattern", "mixed3 shape has exactly three parameters")
        (d1, d2, d3), (a1, a2, a3), (b1, b2, b3) = self.dvec, self.a, self.b
        if a2 != 0 or b1 != 0:
            raise VarietyError("mixed3-pattern", "mixed3 shape needs a2 = 0 and b1 = 0")
        if min(a1, a3, b2, b3) < 1:
            raise VarietyError("mixed3-pattern", "a1, a3, b2, b3 must be positive")
        if gcd(d1, a1) != 1:
            raise VarietyError("mixed3-gcd", f"gcd(d1, a1) = {gcd(d1, a1)} != 1")
        if gcd(d2, b2) != 1:
            raise VarietyError("mixed3-gcd", f"gcd(d2, b2) = {gcd(d2, b2)} != 1")
        if gcd(d3, a3, b3) != 1:
            raise VarietyError("mixed3-gcd", f"gcd(d3, a3, b3) = {gcd(d3, a3, b3)} != 1")

    @classmethod
    def uniform(cls, d: int, a: Sequence[int], b: Sequence[int]) -> "Variety":
        return cls("uniform", (d,) * len(a), tuple(a), tuple(b))

    @classmethod
    def mixed3(cls, dvec: Sequence[int], a: Sequence[int], b: Sequence[int]) -> "Variety":
        return cls("mixed3", tuple(dvec), tuple(a), tuple(b))

    @property
    def n(self) -> int:
        return len(self.dvec)

    @property
    def d(self) -> int:
        if self.shape != "uniform":
            raise AttributeError("only uniform varieties have a single degree d")
        return self.dvec[0]

    @property
    def nvars(self) -> int:
        return self.n + 2

    def is_normalized(self) -> bool:
        if self.shape == "mixed3":
            return True
        return gcd(self.d, *self.a, *self.b) == 1

    def to_json(self) -> dict:
        if self.shape == "uniform":
            return {"kind": "uniform", "d": self.d, "a": list(self.a), "b": list(self.b)}
        return {"kind": "mixed3", "d": list(self.dvec), "a": list(self.a), "b": list(self.b)}


def normalize(v: Variety) -> Variety:
    """Divide d, a, b by their common gcd (mixed3 data is already reduced)."""
    if v.shape != "uniform":
        return v
    g = gcd(v.d, *v.a, *v.b)
    if g == 1:
        return v
    return Variety.uniform(v.d // g, [x // g for x in v.a], [x // g for x in v.b])


@dataclass(frozen=True)
class SemigroupSet:
    ambient_dim: int
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vecs = tuple(_ints(v) for v in self.vectors)
        for v in vecs:
            if len(v) != self.ambient_dim:
                raise ValueError(f"{v} is not of dimension {self.ambient_dim}")
            if not any(v) or min(v) < 0:
                raise ValueError(f"{v} is not a nonzero vector of N^{self.ambient_dim}")
        object.__setattr__(self, "vectors", vecs)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    def lattice(self) -> Lattice:
        return lattice_of(self.vectors, self.ambient_dim)

    def rank(self) -> int:
        return rank_of(self.vectors)

    def is_independent(self) -> bool:
        return self.rank() == len(self.vectors)

    def subset(self, indices) -> "SemigroupSet":
        return SemigroupSet(self.ambient_dim, tuple(self.vectors[i] for i in indices))


def generator_set(v: Variety) -> SemigroupSet:
    """The n + 2 vectors d_1 e_1, ..., d_n e_n, a, b, in that order."""
    n = v.n
    vecs = [tuple(v.dvec[i] if j == i else 0 for j in range(n)) for i in range(n)]
    vecs += [v.a, v.b]
    return SemigroupSet(n, tuple(vecs))


_TERM = re.compile(r"^([xy])(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class Binomial:
    """plus - minus, exponents over x_1..x_n, y_1, y_2."""

    plus: tuple[int, ...]
    minus: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "plus", _ints(self.plus))
        object.__setattr__(self, "minus", _ints(self.minus))
        if len(self.plus) != len(self.minus) or len(self.plus) < 3:
            raise ValueError("exponent vectors must share a length >= 3")
        if min(self.plus + self.minus) < 0:
            raise ValueError("exponents must be nonnegative")
        if self.plus == self.minus:
            raise ValueError("a binomial needs two distinct monomials")

    @property
    def nvars(self) -> int:
        return len(self.plus)

    def negated(self) -> "Binomial":
        return Binomial(self.minus, self.plus)

    def same_up_to_sign(self, other: "Binomial") -> bool:
        return (self.plus, self.minus) in ((other.plus, other.minus), (other.minus, other.plus))

    def canonical(self) -> "Binomial":
        """Orientation with the heavier y-part first."""
        def key(e):
            return (e[-2] + e[-1], e[-2], e[-1], e)
        return self if key(self.plus) >= key(self.minus) else self.negated()

    @staticmethod
    def monomial_str(e: Sequence[int]) -> str:
        n = len(e) - 2
        names = [f"x{i + 1}" for i in range(n)] + ["y1", "y2"]
        parts = [nm if k == 1 else f"{nm}^{k}" for nm, k in zip(names, e) if k]
        return "*".join(parts) if parts else "1"

    def __str__(self):
        return f"{self.monomial_str(self.plus)} - {self.monomial_str(self.minus)}"

    @classmethod
    def parse(cls, text: str, n: int) -> "Binomial":
        """Parse ``"y1^4 - x1^8*x3"`` over x1..xn, y1, y2."""
        sides = text.replace(" ", "").split("-")
        if len(sides) != 2:
            raise ValueError(f"not a binomial of the form M - N: {text!r}")
        return cls(_parse_monomial(sides[0], n), _parse_monomial(sides[1], n))

    def to_json(self) -> dict:
        return {"plus": list(self.plus), "minus": list(self.minus), "text": str(self)}


def _parse_monomial(text: str, n: int) -> tuple[int, ...]:
    e = [0] * (n + 2)
    if text == "1":
        return tuple(e)
    for factor in text.split("*"):
        m = _TERM.match(factor)
        if not m:
            raise ValueError(f"bad factor {factor!r}")
        var, idx, k = m.group(1), int(m.group(2)), int(m.group(3) or 1)
        if var == "x" and 1 <= idx <= n:
            pos = idx - 1
        elif var == "y" and idx in (1, 2):
            pos = n + idx - 1
        else:
            raise ValueError(f"unknown variable {var}{idx}")
        e[pos] += k
    return tuple(e)


def weight(e: Sequence[int], v: Variety) -> tuple[int, ...]:
    """Image of an exponent vector in Z^n: sum of e_k times the k-th vector of T."""
    n = v.n
    return tuple(e[i] * v.dvec[i] + e[n] * v.a[i] + e[n + 1] * v.b[i] for i in range(n))


def in_ideal(f: Binomial, v: Variety) -> bool:
    """Whether ``f`` vanishes on the variety, i.e. encodes a relation of T."""
    if f.nvars != v.nvars:
        raise ValueError(f"binomial has {f.nvars} variables, variety needs {v.nvars}")
    return weight(f.plus, v) == weight(f.minus, v)


def _monomials(nvars: int, bound: int):
    if nvars == 0:
        yield ()
        return
    for k in range(bound + 1):
        for rest in _monomials(nvars - 1, bound - k):
            yield (k,) + rest


def enumerate_ideal_binomials(v: Variety, degree_bound: int) -> list[Binomial]:
    """All binomials of the ideal whose monomials have degree <= bound and
    disjoint supports, up to sign, in a fixed order."""
    if degree_bound < 1:
        raise ValueError("degree_bound must be >= 1")
    groups = defaultdict(list)
    for e in _monomials(v.nvars, degree_bound):
        groups[weight(e, v)].append(e)
    found = []
    for mons in groups.values():
        for i, e in enumerate(mons):
            for f in mons[i + 1:]:
                if all(not (x and y) for x, y in zip(e, f)):
                    found.append(Binomial(e, f).canonical())
    found.sort(key=lambda g: (sum(g.plus), g.plus, sum(g.minus), g.minus))
    return found
