"""p-gluing certificates and the characteristic-p defining pairs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Optional

from .intlat import (
    cyclic_generator,
    is_prime,
    lattice_intersect,
    lattice_of,
    prime_factors,
    semigroup_member,
    valuation,
)
from .model import Binomial, SemigroupSet, Variety, in_ideal

DEFAULT_KMAX = 16


class ConstructionError(ValueError):
    """A construction was requested outside the hypotheses of its rule."""

    def __init__(self, rule: str, message: str):
        super().__init__(f"{message}; {rule} inapplicable")
        self.rule = rule


class BoundExhausted(LookupError):
    """The intersection is cyclic but no k <= k_max gives both memberships."""

    def __init__(self, w, k_max: int):
        super().__init__(f"no certificate found (k <= {k_max}) for w = {tuple(w)}")
        self.w = tuple(w)
        self.k_max = k_max


@dataclass(frozen=True)
class GluingCertificate:
    t1: SemigroupSet
    t2: SemigroupSet
    w: tuple[int, ...]
    k: int
    p: int
    coeffs1: tuple[int, ...]
    coeffs2: tuple[int, ...]

    @property
    def target(self) -> tuple[int, ...]:
        """p^k * w (exact also for negative k)."""
        return _scale(self.w, self.p, self.k)

    def to_json(self) -> dict:
        return {
            "t1": [list(v) for v in self.t1],
            "t2": [list(v) for v in self.t2],
            "w": list(self.w),
            "k": self.k,
            "coeffs1": list(self.coeffs1),
            "coeffs2": list(self.coeffs2),
        }


@dataclass(frozen=True)
class GluingTree:
    """Either a free leaf (``certificate is None``) or a glued node."""

    vectors: SemigroupSet
    prime: int
    certificate: Optional[GluingCertificate] = None
    left: Optional["GluingTree"] = None
    right: Optional["GluingTree"] = None

    @property
    def is_free(self) -> bool:
        return self.certificate is None

    def to_json(self) -> dict:
        out = {"prime": self.prime, "vectors": [list(v) for v in self.vectors]}
        if self.is_free:
            out["free"] = True
            return out
        out.update(self.certificate.to_json())
        out["free"] = False
        out["left"] = self.left.to_json()
        out["right"] = self.right.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "GluingTree":
        p = obj["prime"]
        vecs = [tuple(v) for v in obj["vectors"]]
        ss = SemigroupSet(len(vecs[0]), tuple(vecs))
        if obj["free"]:
            return cls(ss, p)
        left, right = cls.from_json(obj["left"]), cls.from_json(obj["right"])
        cert = GluingCertificate(
            left.vectors, right.vectors, tuple(obj["w"]), obj["k"], p,
            tuple(obj["coeffs1"]), tuple(obj["coeffs2"]),
        )
        return cls(ss, p, cert, left, right)

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        if self.is_free:
            return f"{pad}free {[tuple(v) for v in self.vectors]}"
        c = self.certificate
        lines = [
            f"{pad}glued: w = {c.w}, k = {c.k}, {c.p}^{c.k} w = {c.target}",
            f"{pad}  T1 = {list(c.t1)} coeffs {c.coeffs1}",
            f"{pad}  T2 = {list(c.t2)} coeffs {c.coeffs2}",
            self.left.render(indent + 1),
            self.right.render(indent + 1),
        ]
        return "\n".join(lines)


def _scale(w, p: int, k: int) -> tuple[int, ...]:
    if k >= 0:
        return tuple(x * p**k for x in w)
    q = p ** (-k)
    if any(x % q for x in w):
        raise ValueError(f"{p}^{k} * {tuple(w)} is not integral")
    return tuple(x // q for x in w)


def _attempt(t1: SemigroupSet, t2: SemigroupSet, p: int, k_max: int):
    """Return (certificate or None, reason) with reason in
    {"glued", "rank", "sign", "bound"}."""
    inter = lattice_intersect(t1.lattice(), t2.lattice())
    w = cyclic_generator(inter)
    if w is None:
        return None, "rank"
    # only one of +w, -w can lie in N^n
    if min(w) < 0:
        w = tuple(-x for x in w)
        if min(w) < 0:
            return None, "sign"
    k_min = -valuation(gcd(*w), p)
    for k in range(k_min, k_max + 1):
        target = _scale(w, p, k)
        c1 = semigroup_member(target, t1.vectors)
        if c1 is None:
            continue
        c2 = semigroup_member(target, t2.vectors)
        if c2 is None:
            continue
        return GluingCertificate(t1, t2, w, k, p, tuple(c1), tuple(c2)), "glued"
    return None, "bound"


def check_p_gluing(t1: SemigroupSet, t2: SemigroupSet, p: int, k_max: int = DEFAULT_KMAX):
    """Certificate that T1 u T2 is a p-gluing, or None.

    Returns None when the intersection of the two lattices is not cyclic (or
    its generator has mixed signs, which rules out every k); raises
    ``BoundExhausted`` when only the k <= k_max scan failed.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not len(t1) or not len(t2):
        raise ValueError("both parts of a split must be nonempty")
    cert, reason = _attempt(t1, t2, p, k_max)
    if reason == "bound":
        w = cyclic_generator(lattice_intersect(t1.lattice(), t2.lattice()))
        raise BoundExhausted(w, k_max)
    return cert


def _splits(m: int):
    """Unordered splits (t1, t2): t1 size ascending, then membership mask
    ascending; each unordered pair appears once."""
    for size in range(1, m // 2 + 1):
        combos = list(combinations(range(m), size))
        if 2 * size == m:
            combos = [c for c in combos if 0 not in c]
        combos.sort(key=lambda c: tuple(int(i in c) for i in range(m)))
        for c in combos:
            yield c, tuple(i for i in range(m) if i not in c)


def completely_p_glued(t: SemigroupSet, p: int, k_max: int = DEFAULT_KMAX) -> Optional[GluingTree]:
    """First certificate tree (in canonical split order) showing that N T is
    completely p-glued or free; None if none is found with k <= k_max."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not len(t):
        raise ValueError("empty generator set")
    dim = t.ambient_dim

    @lru_cache(maxsize=None)
    def search(vecs: tuple) -> Optional[GluingTree]:
        ss = SemigroupSet(dim, vecs)
        if ss.is_independent():
            return GluingTree(ss, p)
        for i1, i2 in _splits(len(vecs)):
            s1, s2 = ss.subset(i1), ss.subset(i2)
            cert, _ = _attempt(s1, s2, p, k_max)
            if cert is None:
                continue
            left = search(s1.vectors)
            if left is None:
                continue
            right = search(s2.vectors)
            if right is None:
                continue
            return GluingTree(ss, p, cert, left, right)
        return None

    return search(t.vectors)


def validate_certificate(c: GluingCertificate) -> bool:
    """Re-check a certificate from scratch."""
    if not any(c.w):
        return False
    inter = lattice_intersect(lattice_of(c.t1.vectors, c.t1.ambient_dim),
                              lattice_of(c.t2.vectors, c.t2.ambient_dim))
    if inter != lattice_of([c.w]):
        return False
    target = c.target
    for vecs, coeffs in ((c.t1, c.coeffs1), (c.t2, c.coeffs2)):
        if len(coeffs) != len(vecs) or min(coeffs, default=0) < 0:
            return False
        total = tuple(sum(ci * v[j] for ci, v in zip(coeffs, vecs)) for j in range(len(target)))
        if total != target:
            return False
    return True


def validate_tree(tree: GluingTree) -> bool:
    if tree.is_free:
        return tree.vectors.is_independent()
    c = tree.certificate
    if sorted(c.t1.vectors + c.t2.vectors) != sorted(tree.vectors.vectors):
        return False
    if c.t1 != tree.left.vectors or c.t2 != tree.right.vectors:
        return False
    if c.p != tree.prime:
        return False
    return validate_certificate(c) and validate_tree(tree.left) and validate_tree(tree.right)


def prime_power(d: int) -> Optional[tuple[int, int]]:
    """(p, r) with d = p^r and r >= 1, or None (also None for d = 1)."""
    fs = prime_factors(d)
    if len(fs) != 1:
        return None
    return fs[0], valuation(d, fs[0])


def _rescale_exponents(xs, p: int, shift: int, which: str):
    if shift >= 0:
        return [x * p**shift for x in xs]
    q = p ** (-shift)
    if any(x % q for x in xs):
        raise ConstructionError("Proposition 1.3", f"{which} exponents not divisible by {q}")
    return [x // q for x in xs]


def stci_pair_prime_power(v: Variety, h: Optional[int] = None, k: Optional[int] = None,
                          p: Optional[int] = None) -> tuple[Binomial, Binomial]:
    """The two binomials y1^(p^h) - x^a', y2^(p^k) - x^b' for d = p^r."""
    if v.shape != "uniform":
        raise ConstructionError("Proposition 1.3", "variety is not of uniform degree")
    d = v.d
    if d == 1:
        r = 0
        if p is None:
            if h or k:
                raise ConstructionError("Proposition 1.3", "d = 1 needs an explicit prime for h, k > 0")
            p = 2
    else:
        pr = prime_power(d)
        if pr is None:
            raise ConstructionError("Proposition 1.3", f"d = {d} not a prime power")
        if p is not None and p != pr[0]:
            raise ConstructionError("Proposition 1.3", f"d = {d} is not a power of {p}")
        p, r = pr
    h = r if h is None else h
    k = r if k is None else k
    if h < 0 or k < 0:
        raise ConstructionError("Proposition 1.3", "h and k must be nonnegative")
    ap = _rescale_exponents(v.a, p, h - r, "a")
    bp = _rescale_exponents(v.b, p, k - r, "b")
    n = v.n
    f1 = Binomial(tuple([0] * n + [p**h, 0]), tuple(ap + [0, 0]))
    f2 = Binomial(tuple([0] * n + [0, p**k]), tuple(bp + [0, 0]))
    assert in_ideal(f1, v) and in_ideal(f2, v)
    return f1, f2


def example35_parameters(v: Variety) -> tuple[int, int, int]:
    """Read (p, q, c) off a mixed3 variety with d2 = q, d3 = pq, a3 = cq."""
    if v.shape != "mixed3":
        raise ConstructionError("Example 3.5", "variety is not of mixed3 shape")
    (d1, d2, d3), (a1, _, a3), (_, b2, b3) = v.dvec, v.a, v.b
    q = d2
    if not is_prime(q) or d3 % q or a3 % q:
        raise ConstructionError("Example 3.5", "pattern mismatch (need d2 = q prime, q | d3, q | a3)")
    return d3 // q, q, a3 // q


def stci_pair_example35(v: Variety, p: Optional[int] = None, q: Optional[int] = None,
                        c: Optional[int] = None) -> tuple[Binomial, Binomial]:
    """y1^(d1 p) - x1^(a1 p) x3^(d1 c) and y2^(pq) - x2^(b2 p) x3^(b3)."""
    rule = "Example 3.5"
    ip, iq, ic = example35_parameters(v)
    p = ip if p is None else p
    q = iq if q is None else q
    c = ic if c is None else c
    (d1, d2, d3), (a1, _, a3), (_, b2, b3) = v.dvec, v.a, v.b
    if not (is_prime(p) and is_prime(q)) or p == q:
        raise ConstructionError(rule, f"need distinct primes, got p = {p}, q = {q}")
    if (d2, d3, a3) != (q, p * q, c * q) or c < 1:
        raise ConstructionError(rule, "pattern mismatch (need d2 = q, d3 = pq, a3 = cq)")
    if d1 % p == 0 or c % p == 0:
        raise ConstructionError(rule, "p must divide neither d1 nor c")
    if b2 % q == 0 or b3 % p == 0 or b3 % q == 0:
        raise ConstructionError(rule, "q must not divide b2; p, q must not divide b3")
    f1 = Binomial((0, 0, 0, d1 * p, 0), (a1 * p, 0, d1 * c, 0, 0))
    f2 = Binomial((0, 0, 0, 0, p * q), (0, b2 * p, b3, 0, 0))
    assert in_ideal(f1, v) and in_ideal(f2, v)
    return f1, f2
