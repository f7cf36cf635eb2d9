"""Arithmetic conditions on the exponents and the per-characteristic verdict."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import gcd
from typing import Mapping, Optional

from .gluing import (
    DEFAULT_KMAX,
    GluingTree,
    completely_p_glued,
    prime_power,
    stci_pair_prime_power,
)
from .intlat import prime_factors, solve_linear_congruences
from .model import Binomial, Variety, generator_set, in_ideal, normalize

OTHER = "other"


class InconsistencyError(RuntimeError):
    """Two rules claim different exact values at one characteristic."""


@dataclass(frozen=True)
class ConditionReport:
    """Verdicts for (A)-(D) (uniform shape) or (I)-(II) (mixed3 shape).

    Indices are 1-based. A condition holds iff its witness is present, except
    B, which holds iff ``b_failures`` is empty.
    """

    shape: str
    a_witness: Optional[tuple[int, int]] = None
    b_failures: tuple[int, ...] = ()
    c_witness: Optional[tuple[str, int]] = None
    d_witness: Optional[int] = None
    i_solution: Optional[tuple[int, int]] = None
    ii_holds: Optional[bool] = None
    d3prime: Optional[int] = None

    @property
    def verdicts(self) -> dict[str, bool]:
        if self.shape == "uniform":
            return {
                "A": self.a_witness is not None,
                "B": not self.b_failures,
                "C": self.c_witness is not None,
                "D": self.d_witness is not None,
            }
        return {"I": self.i_solution is not None, "II": bool(self.ii_holds)}

    def all_hold(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> dict:
        if self.shape == "uniform":
            conds = {
                "a": {"holds": self.a_witness is not None, "witness": _lst(self.a_witness)},
                "b": {"holds": not self.b_failures, "failing": list(self.b_failures)},
                "c": {"holds": self.c_witness is not None,
                      "direction": self.c_witness[0] if self.c_witness else None,
                      "mu": self.c_witness[1] if self.c_witness else None},
                "d": {"holds": self.d_witness is not None, "witness": self.d_witness},
            }
        else:
            conds = {
                "i": {"holds": self.i_solution is not None, "solution": _lst(self.i_solution)},
                "ii": {"holds": bool(self.ii_holds), "d3prime": self.d3prime},
            }
        return {"shape": self.shape, "conditions": conds}

    @classmethod
    def from_json(cls, obj: dict) -> "ConditionReport":
        c = obj["conditions"]
        if obj["shape"] == "uniform":
            cw = c["c"]
            return cls(
                "uniform",
                a_witness=_tup(c["a"]["witness"]),
                b_failures=tuple(c["b"]["failing"]),
                c_witness=(cw["direction"], cw["mu"]) if cw["holds"] else None,
                d_witness=c["d"]["witness"],
            )
        return cls("mixed3", i_solution=_tup(c["i"]["solution"]),
                   ii_holds=c["ii"]["holds"], d3prime=c["ii"]["d3prime"])

    def render(self) -> str:
        lines = []
        if self.shape == "uniform":
            v = self.verdicts
            lines.append(f"(A) {_yn(v['A'])}" + (f"  i={self.a_witness[0]}, j={self.a_witness[1]}" if v["A"] else ""))
            lines.append(f"(B) {_yn(v['B'])}" + (f"  failing i: {list(self.b_failures)}" if not v["B"] else ""))
            lines.append(f"(C) {_yn(v['C'])}" + (f"  {self.c_witness[0]} (mod d), mu={self.c_witness[1]}" if v["C"] else ""))
            lines.append(f"(D) {_yn(v['D'])}" + (f"  i={self.d_witness}" if v["D"] else ""))
        else:
            sol = self.i_solution
            lines.append(f"(I) {_yn(sol is not None)}" + (f"  (x, y) = {sol}" if sol else ""))
            lines.append(f"(II) {_yn(bool(self.ii_holds))}  d3' = {self.d3prime}")
        return "\n".join(lines)


def _lst(t):
    return list(t) if t is not None else None


def _tup(x):
    return tuple(x) if x is not None else None


def _yn(b: bool) -> str:
    return "holds" if b else "fails"


def _proportional(x, y, d: int) -> Optional[int]:
    for mu in range(d):
        if all((xi - mu * yi) % d == 0 for xi, yi in zip(x, y)):
            return mu
    return None


def check_conditions_ABCD(v: Variety) -> ConditionReport:
    if v.shape != "uniform":
        raise ValueError("conditions (A)-(D) concern the uniform shape")
    d, a, b = v.d, v.a, v.b
    n = v.n
    i = next((k for k in range(n) if a[k] == 0 and b[k] != 0), None)
    j = next((k for k in range(n) if a[k] != 0 and b[k] == 0), None)
    a_w = (i + 1, j + 1) if i is not None and j is not None else None

    fails = []
    for k in range(n):
        ok = (a[k] % d == 0) == (b[k] % d == 0)
        ok = ok and (a[k] % d == 0 or gcd(d, a[k]) == 1)
        ok = ok and (b[k] % d == 0 or gcd(d, b[k]) == 1)
        if not ok:
            fails.append(k + 1)

    mu = _proportional(a, b, d)
    if mu is not None:
        c_w = ("a=mu*b", mu)
    else:
        mu = _proportional(b, a, d)
        c_w = ("b=mu*a", mu) if mu is not None else None

    dw = next((k + 1 for k in range(n) if gcd(d, a[k]) == 1), None)
    return ConditionReport("uniform", a_witness=a_w, b_failures=tuple(fails),
                           c_witness=c_w, d_witness=dw)


def congruence_system(v: Variety) -> list[tuple[int, int, int]]:
    """The four congruences in (x, y) modulo d2 as (coeff_x, coeff_y, rhs)."""
    (d1, _, d3), (a1, _, a3), (_, b2, b3) = v.dvec, v.a, v.b
    return [(a1, a3, 0), (d1, 0, 0), (0, d3, 0), (0, b3, -b2)]


def d3_prime(v: Variety) -> int:
    d3, a3 = v.dvec[2], v.a[2]
    return d3 // gcd(d3, a3)


def check_conditions_I_II(v: Variety) -> ConditionReport:
    if v.shape != "mixed3":
        raise ValueError("conditions (I)-(II) concern the mixed3 shape")
    sol = solve_linear_congruences(congruence_system(v), v.dvec[1])
    d3p = d3_prime(v)
    return ConditionReport("mixed3", i_solution=sol,
                           ii_holds=gcd(d3p, v.dvec[0]) == 1, d3prime=d3p)


def check_conditions(v: Variety) -> ConditionReport:
    return check_conditions_ABCD(v) if v.shape == "uniform" else check_conditions_I_II(v)


@dataclass
class AraEntry:
    lower: int = 2
    upper: int = 3
    rules: list[str] = field(default_factory=list)
    binomials: list[Binomial] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "rules": list(self.rules),
            "binomials": [f.to_json() for f in self.binomials],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AraEntry":
        fs = [Binomial(tuple(f["plus"]), tuple(f["minus"])) for f in obj["binomials"]]
        return cls(obj["lower"], obj["upper"], list(obj["rules"]), fs)


@dataclass
class AraReport:
    """Bounds on the arithmetical rank keyed by characteristic: "0", a prime
    as a decimal string, or "other" for every prime not named."""

    entries: dict[str, AraEntry]

    def entry(self, char: int) -> AraEntry:
        return self.entries.get(str(char), self.entries[OTHER])

    def to_json(self) -> dict:
        return {"entries": {k: e.to_json() for k, e in self.entries.items()},
                "summary": self.summary()}

    @classmethod
    def from_json(cls, obj: dict) -> "AraReport":
        return cls({k: AraEntry.from_json(e) for k, e in obj["entries"].items()})

    def __eq__(self, other):
        return isinstance(other, AraReport) and self.to_json() == other.to_json()

    def summary(self) -> str:
        es = self.entries
        if all(e.exact and e.lower == 3 for e in es.values()):
            return "ara V=3 over every field"
        if all(e.exact and e.lower == 2 for e in es.values()):
            return "ara V=2 over every field"
        twos = [k for k, e in es.items() if e.exact and e.lower == 2]
        rest_three = all(e.exact and e.lower == 3 for k, e in es.items() if k not in twos)
        if len(twos) == 1 and twos[0] not in ("0", OTHER) and rest_three:
            return f"ara V=2 iff char K={twos[0]}; ara V=3 otherwise"
        return "; ".join(f"char {k}: " + (f"ara V={e.lower}" if e.exact else f"{e.lower} <= ara V <= {e.upper}")
                         for k, e in es.items())

    def render(self) -> str:
        lines = []
        for k, e in self.entries.items():
            label = "char 0" if k == "0" else ("all other primes" if k == OTHER else f"char {k}")
            val = f"ara = {e.lower}" if e.exact else f"{e.lower} <= ara <= {e.upper}"
            lines.append(f"{label}: {val}")
            for r in e.rules:
                lines.append(f"    - {r}")
            for f in e.binomials:
                lines.append(f"    defined by {f}")
        lines.append(self.summary())
        return "\n".join(lines)


def tree_binomials(tree: GluingTree, v: Variety) -> list[Binomial]:
    """One binomial per glued node: p^k w written over T1 and over T2.

    Positions in T are tracked down the tree so that repeated vectors (say
    a = b) keep their own variables.
    """
    t = generator_set(v).vectors
    out = []

    def take(part, pool):
        pos, rest = [], list(pool)
        for vec in part:
            j = next(j for j in rest if t[j] == vec)
            rest.remove(j)
            pos.append(j)
        return pos, rest

    def walk(node: GluingTree, positions: list[int]):
        if node.is_free:
            return
        c = node.certificate
        pos1, rest = take(c.t1, positions)
        pos2, _ = take(c.t2, rest)
        sides = []
        for pos, coeffs in ((pos1, c.coeffs1), (pos2, c.coeffs2)):
            e = [0] * v.nvars
            for j, ci in zip(pos, coeffs):
                e[j] += ci
            sides.append(tuple(e))
        out.append(Binomial(sides[0], sides[1]))
        walk(node.left, pos1)
        walk(node.right, pos2)

    walk(tree, list(range(len(t))))
    return out


def tree_exponents(tree: GluingTree) -> list[int]:
    if tree.is_free:
        return []
    return [tree.certificate.k] + tree_exponents(tree.left) + tree_exponents(tree.right)


def named_primes(v: Variety) -> list[int]:
    """Primes the rules single out: divisors of d, or of d3' for mixed3."""
    return prime_factors(v.d if v.shape == "uniform" else d3_prime(v))


def classify(v: Variety, gluing_evidence: Optional[Mapping[int, Optional[GluingTree]]] = None,
             conditions: Optional[ConditionReport] = None) -> AraReport:
    """Combine every applicable rule into bounds per characteristic.

    Absent certificates never tighten anything; a rule claiming 2 and a rule
    claiming 3 at one characteristic raise ``InconsistencyError``.
    """
    v = normalize(v)
    evidence = dict(gluing_evidence or {})
    cond = conditions if conditions is not None else check_conditions(v)
    primes = sorted(set(named_primes(v)) | set(evidence))
    keys = ["0"] + [str(p) for p in primes] + [OTHER]
    entries = {k: AraEntry(rules=["codimension 2 (ara V >= 2)", "Theorem 2.5 (ara V <= 3)"]) for k in keys}
    claims: dict[str, set[int]] = {k: set() for k in keys}
    positive = [k for k in keys if k != "0"]

    def claim(where, value: int, rule: str, binomials=()):
        for k in where:
            claims[k].add(value)
            entries[k].rules.append(rule)
            if value == 2 and binomials and not entries[k].binomials:
                entries[k].binomials = list(binomials)

    if all(d == 1 for d in v.dvec):
        pair = [Binomial((0,) * v.n + (1, 0), v.a + (0, 0)), Binomial((0,) * v.n + (0, 1), v.b + (0, 0))]
        claim(keys, 2, "Proposition 1.3 (r=0): complete intersection", pair)

    if v.shape == "uniform":
        sa = {i for i, x in enumerate(v.a) if x}
        sb = {i for i, x in enumerate(v.b) if x}
        if sa <= sb or sb <= sa:
            claim(positive, 2, "Proposition 1.2 (supp a and supp b nested): completely p-glued for all p")
        pr = prime_power(v.d)
        if pr is not None:
            claim([str(pr[0])], 2, f"Proposition 1.3 (d={pr[0]}^{pr[1]}): completely {pr[0]}-glued",
                  stci_pair_prime_power(v))

    for p, tree in evidence.items():
        if tree is None:
            continue
        claim([str(p)], 2, f"Theorem 1.1 (completely {p}-glued certificate)", tree_binomials(tree, v))
        if all(k == 0 for k in tree_exponents(tree)):
            # memberships without p-powers do not depend on the characteristic
            claim(keys, 2, "gluing with k=0 throughout: complete intersection on binomials in every characteristic",
                  tree_binomials(tree, v))

    if v.shape == "uniform" and v.d > 1 and cond.all_hold():
        ps = prime_factors(v.d)
        for p in ps:
            claim([k for k in keys if k != str(p)], 3,
                  f"Theorem 2.4 / Corollary 2.6(i) (p={p}): not an STCI for char K != {p}")
        if len(ps) == 1:
            claim([str(ps[0])], 2, f"Corollary 2.6(ii) (d={v.d}={ps[0]}^r): ara V=2 for char K={ps[0]}",
                  stci_pair_prime_power(v))
        else:
            claim(keys, 3, f"Corollary 2.7 (d={v.d} has distinct prime divisors {ps[0]}, {ps[1]})")

    if v.shape == "mixed3" and cond.all_hold():
        ps = [p for p in prime_factors(d3_prime(v)) if v.b[2] % p]
        for p in ps:
            claim([k for k in keys if k != str(p)], 3,
                  f"Theorem 3.4 (p={p} divides d3'={d3_prime(v)}, not b3): ara V=3 for char K != {p}")
        if len(ps) >= 2:
            claim(keys, 3, f"Theorem 3.4 (two primes {ps[0]}, {ps[1]} divide d3', not b3): ara V=3 over every field")

    for k in keys:
        vals = claims[k]
        if len(vals) > 1:
            raise InconsistencyError(f"char {k}: rules claim both 2 and 3: {entries[k].rules}")
        if vals:
            val = vals.pop()
            entries[k].lower = entries[k].upper = val
        if not entries[k].exact:
            entries[k].binomials = []
    for e in entries.values():
        for f in e.binomials:
            assert in_ideal(f, v), f
    return AraReport(entries)


def default_kmax() -> int:
    raw = os.environ.get("TORIC_ARA_KMAX")
    return int(raw) if raw else DEFAULT_KMAX


def gluing_evidence(v: Variety, k_max: Optional[int] = None, primes=None) -> dict[int, Optional[GluingTree]]:
    v = normalize(v)
    k_max = default_kmax() if k_max is None else k_max
    primes = named_primes(v) if primes is None else primes
    t = generator_set(v)
    return {p: completely_p_glued(t, p, k_max) for p in primes}


def analyze(v: Variety, k_max: Optional[int] = None):
    """Normalize, check conditions, search gluings, classify."""
    v = normalize(v)
    cond = check_conditions(v)
    evidence = gluing_evidence(v, k_max)
    return cond, evidence, classify(v, evidence, cond)
