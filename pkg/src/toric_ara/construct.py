"""The three binomials cutting out any codimension-2 variety of uniform degree."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from .gluing import ConstructionError
from .intlat import gcd_max_minors
from .model import Binomial, Variety, in_ideal


@dataclass(frozen=True)
class TripleResult:
    f1: Binomial
    f2: Binomial
    f3: Binomial
    dprime: int
    dsecond: int
    g1: int
    g2: int
    e: int
    delta: int

    @property
    def binomials(self) -> list[Binomial]:
        return [self.f1, self.f2, self.f3]

    def to_json(self) -> dict:
        return {
            "f1": self.f1.to_json(),
            "f2": self.f2.to_json(),
            "f3": self.f3.to_json(),
            "dprime": self.dprime,
            "dsecond": self.dsecond,
            "g1": self.g1,
            "g2": self.g2,
            "e": self.e,
            "delta": self.delta,
        }


def build_A_matrices(v: Variety) -> tuple[list[list[int]], list[list[int]]]:
    """A1 = [d*I | a] and A2 = [d*I | a | b], as lists of rows."""
    if v.shape != "uniform":
        raise ConstructionError("Theorem 2.5", "variety is not of uniform degree")
    n, d = v.n, v.d
    a1 = [[d if j == i else 0 for j in range(n)] + [v.a[i]] for i in range(n)]
    a2 = [row + [v.b[i]] for i, row in enumerate(a1)]
    return a1, a2


def _delta_order(bound: int):
    yield 0
    for k in range(1, bound + 1):
        yield k
        yield -k


def almost_sci_triple(v: Variety, delta_bound: Optional[int] = None) -> TripleResult:
    """F1, F2, F3 = M - N*y2^e with e = g1/g2, M, N monomials in x and y1.

    M and N come from the first delta (in the order 0, 1, -1, 2, ...) with
    delta*a = e*b (mod d); the x-exponents are the positive and negative parts
    of (delta*a - e*b)/d.
    """
    if v.shape != "uniform":
        raise ConstructionError("Theorem 2.5", "variety is not of uniform degree")
    if not v.is_normalized():
        raise ConstructionError("Theorem 2.5", "variety is not normalized")
    n, d = v.n, v.d
    ga, gb = gcd(d, *v.a), gcd(d, *v.b)
    dprime, dsecond = d // ga, d // gb
    zeros = (0,) * n
    f1 = Binomial(zeros + (dprime, 0), tuple(x // ga for x in v.a) + (0, 0))
    f2 = Binomial(zeros + (0, dsecond), tuple(x // gb for x in v.b) + (0, 0))

    a1, a2 = build_A_matrices(v)
    g1, g2 = gcd_max_minors(a1), gcd_max_minors(a2)
    assert g1 > 0 and g1 % g2 == 0, (g1, g2)
    e = g1 // g2

    if delta_bound is None:
        delta_bound = d * (n + 2)
    for delta in _delta_order(delta_bound):
        diff = [delta * ai - e * bi for ai, bi in zip(v.a, v.b)]
        if any(x % d for x in diff):
            continue
        shift = [x // d for x in diff]
        # delta*a + d*shift^- = d*shift^+ + e*b
        xm = tuple(max(-s, 0) for s in shift)
        xn = tuple(max(s, 0) for s in shift)
        m_exp = xm + (max(delta, 0), 0)
        n_exp = xn + (max(-delta, 0), e)
        f3 = Binomial(m_exp, n_exp)
        assert in_ideal(f3, v), f3
        break
    else:
        raise ConstructionError(
            "Theorem 2.5", f"construction bound exhausted (|delta| <= {delta_bound})")
    for f in (f1, f2):
        assert in_ideal(f, v), f
    return TripleResult(f1, f2, f3, dprime, dsecond, g1, g2, e, delta)
