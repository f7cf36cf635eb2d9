from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EX14, EX35
from toric_ara.construct import almost_sci_triple
from toric_ara.gluing import stci_pair_example35, stci_pair_prime_power
from toric_ara.model import Binomial, Variety
from toric_ara.verify import (
    GF,
    CapExceeded,
    EqualityReport,
    FieldSpec,
    canonical_modulus,
    containment_check,
    equality_experiment,
    image_points,
    is_irreducible,
    zero_set,
)


def test_canonical_moduli():
    assert canonical_modulus(2, 2) == (1, 1, 1)
    assert canonical_modulus(3, 2) == (1, 0, 1)
    assert canonical_modulus(2, 3) == (1, 1, 0, 1) or canonical_modulus(2, 3) == (1, 0, 1, 1)
    assert is_irreducible(canonical_modulus(2, 3), 2)
    assert not is_irreducible((1, 0, 1), 2)  # x^2 + 1 = (x + 1)^2


def test_fieldspec_rejections():
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))
    with pytest.raises(CapExceeded):
        FieldSpec(2, 21)


@pytest.mark.parametrize("p, m", [(2, 1), (2, 2), (2, 3), (3, 2), (5, 1), (7, 1)])
def test_field_axioms(p, m):
    f = GF(FieldSpec(p, m))
    q = f.q
    elems = range(q)
    for x, y in product(elems, repeat=2):
        assert f.mul(x, y) == f.mul(y, x)
        if x and y:
            assert f.exp[(f.log[x] + f.log[y]) % (q - 1)] == f.mul(x, y)
        else:
            assert f.mul(x, y) == 0
        for z in (1, q - 1):
            assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
    for x in range(1, q):
        assert f.pow(x, q - 1) == 1
    assert sorted(f.exp.tolist()) == list(range(1, q))


def test_image_identity_parametrisation():
    v = Variety.uniform(1, (1,), (1,))
    pts = image_points(v, FieldSpec(3))
    assert pts.as_set() == {(t, t, t) for t in range(3)}


def test_image_ex14_small():
    pts = image_points(EX14, FieldSpec(2))
    assert (1, 1, 1, 1, 1) in pts and (0, 0, 0, 0, 0) in pts


def test_image_monotone_in_extension():
    small = image_points(EX14, FieldSpec(2), 1).as_set()
    big = image_points(EX14, FieldSpec(2), 2).as_set()
    assert small <= big


def test_zero_set_trivial():
    # y1 - x1 with n = 1: variables (x1, y1, y2)
    f = Binomial.parse("y1 - x1", 1)
    assert zero_set([f], FieldSpec(2), 3).as_set() == {(t, t, s) for t in range(2) for s in range(2)}
    assert len(zero_set([], FieldSpec(3), 2)) == 9


def test_zero_set_cap():
    with pytest.raises(CapExceeded):
        zero_set([], FieldSpec(17), 6)


def test_containment_examples():
    assert containment_check(EX14, almost_sci_triple(EX14).binomials)
    assert containment_check(EX35, stci_pair_example35(EX35))
    assert not containment_check(EX14, [Binomial.parse("x1 - 1", 3)])


@pytest.mark.parametrize("p, m", [(2, 1), (2, 2)])
def test_ex14_pair_no_excess_char2(p, m):
    rep = equality_experiment(EX14, stci_pair_prime_power(EX14), FieldSpec(p, m), ext_max=3)
    assert rep.excess == [] and rep.missing == []
    assert rep.status == "no excess points"


def test_ex14_pair_char3_is_diagnostic_only():
    rep = equality_experiment(EX14, stci_pair_prime_power(EX14), FieldSpec(3), ext_max=1)
    assert rep.missing == []
    assert rep.status in ("possible strict containment", "no excess points")


def test_report_json_roundtrip():
    rep = equality_experiment(EX14, stci_pair_prime_power(EX14), FieldSpec(3), ext_max=1)
    assert EqualityReport.from_json(rep.to_json()) == rep


def test_triple_over_gf4():
    rep = equality_experiment(EX14, almost_sci_triple(EX14).binomials, FieldSpec(2, 2), ext_max=2)
    assert rep.missing == [] and rep.excess == []


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4))
                                   .filter(lambda t: t != (0, 0)), min_size=2, max_size=2),
       st.sampled_from([2, 3]))
def test_image_inside_zero_set_of_relations(d, pairs, p):
    a, b = [x for x, _ in pairs], [y for _, y in pairs]
    if not any(a) or not any(b):
        return
    v = Variety.uniform(d, a, b)
    rep = equality_experiment(v, almost_sci_triple(v).binomials if v.is_normalized() else [], FieldSpec(p), 1)
    assert rep.missing == []


@pytest.mark.parametrize("p, m", [(2, 1), (2, 2)])
def test_ex35_pair_no_excess_char2(p, m):
    # cube roots over GF(4) live in GF(64): degree-3 parameters are needed
    rep = equality_experiment(EX35, stci_pair_example35(EX35), FieldSpec(p, m), ext_max=3)
    assert rep.excess == [] and rep.missing == []
