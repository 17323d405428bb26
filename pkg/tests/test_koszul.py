import random

import pytest
from hypothesis import given

from cdgacalc.cdga import extend_leibniz, random_element
from cdgacalc.exactfield import GF, QQ
from cdgacalc.gradedalg import TruncationError
from cdgacalc.koszul import (KoszulComplexSpec, closedness_probe, koszul_d_squared,
                             h4_complex, tor_dimensions)
from helpers import counted, seeds

FIELDS = [QQ, GF(2), GF(3), GF(5)]


def dual_numbers(F, truncation=9):
    """Tate resolution of k over k[z]/(z^2); acyclic in positive total degree."""
    return KoszulComplexSpec(F, [("z", 2)], ["z^2"],
                             [("alpha", -1, 2), ("gamma", -2, 4)],
                             {"alpha": "z", "gamma": "z*alpha"}, truncation, ext_floor=-8)


def regular_sequence(F):
    return KoszulComplexSpec(F, [("r", 2), ("s", 2)], [],
                             [("a", -1, 2), ("b", -1, 2)], {"a": "r", "b": "s"}, 7)


@pytest.mark.parametrize("F", FIELDS)
def test_tate_resolution_is_acyclic(F):
    spec = dual_numbers(F)
    assert koszul_d_squared(spec) is None
    rep = tor_dimensions(spec, 8)
    assert rep.totals == [1] + [0] * 8


@pytest.mark.parametrize("F", FIELDS)
def test_regular_sequence_is_acyclic(F):
    assert tor_dimensions(regular_sequence(F), 6).totals == [1, 0, 0, 0, 0, 0, 0]


def test_repeated_element_leaves_an_exterior_class():
    spec = KoszulComplexSpec(QQ, [("z", 2)], [], [("a", -1, 2), ("b", -1, 2)],
                             {"a": "z", "b": "z"}, 5)
    rep = tor_dimensions(spec, 4)
    assert rep.totals == [1, 1, 0, 0, 0]
    assert rep.bidegree[(-1, 2)] == 1
    (u,) = rep.representatives[(-1, 2)]
    assert u == spec.parse("b - a") or u == spec.parse("a - b")


def test_h4_complex_squares_to_zero():
    for F in FIELDS:
        assert koszul_d_squared(h4_complex(F)) is None


def test_h4_complex_tor():
    rep = tor_dimensions(h4_complex(QQ, 9), 8)
    assert rep.totals == [1, 0, 2, 1, 1, 1, 1, 1, 1]
    (u,) = [r for (p, q), rs in rep.representatives.items() if p + q == 4 for r in rs]
    assert str(u) == "r*s"


def test_euler_characteristic_per_internal_degree():
    rep = tor_dimensions(h4_complex(QQ, 9), 8)
    for q in range(0, 9, 2):
        chains, homology = rep.euler(q)
        assert chains == homology


def test_closedness_probes():
    spec = h4_complex(QQ)
    assert closedness_probe(spec, ["delta", "alpha*beta", "alpha*gamma"]).dim == 0
    probe = closedness_probe(spec, ["alpha*r", "alpha*s"])
    assert probe.dim == 1
    (u,) = probe.elements
    assert u == spec.parse("r*alpha - s*alpha") or u == spec.parse("s*alpha - r*alpha")
    assert closedness_probe(spec, []).dim == 0


def test_probe_rejects_mixed_input():
    spec = h4_complex(QQ)
    with pytest.raises(ValueError, match="total degree"):
        closedness_probe(spec, ["alpha", "z"])
    with pytest.raises(ValueError, match="homogeneous"):
        closedness_probe(spec, ["r*z + beta"])
    with pytest.raises(ValueError, match="bihomogeneous"):
        closedness_probe(spec, ["z*r + delta"])


def test_mutated_differential_is_caught():
    spec = h4_complex(QQ).with_differential(
        {"alpha": "z", "beta": "r^2", "gamma": "s^2", "delta": "alpha*r^2"})
    witness, value = koszul_d_squared(spec)
    assert witness == "delta"
    assert value == spec.normal_form(spec.parse("z*r^2"))


def test_zero_differential_gives_the_whole_complex():
    spec = KoszulComplexSpec(QQ, [("z", 2)], [], [("a", -1, 2)], {}, 5)
    assert tor_dimensions(spec, 4).totals == [1, 1, 1, 1, 1]


def test_bidegree_validation():
    with pytest.raises(ValueError, match="external degree -2"):
        KoszulComplexSpec(QQ, [("z", 2)], [], [("a", -1, 2), ("c", -3, 8)],
                          {"a": "z", "c": "z^3"}, 7)
    with pytest.raises(ValueError, match="negative"):
        KoszulComplexSpec(QQ, [("z", 2)], [], [("a", 0, 2)], {}, 6)
    with pytest.raises(ValueError, match="ring generators"):
        KoszulComplexSpec(QQ, [("z", 2)], ["z*a"], [("a", -1, 2)], {}, 6)


def test_truncation_limits():
    with pytest.raises(TruncationError):
        tor_dimensions(h4_complex(QQ, 6), 6)
    shallow = KoszulComplexSpec(QQ, [("z", 2)], ["z^2"], [("alpha", -1, 2), ("gamma", -2, 4)],
                                {"alpha": "z", "gamma": "z*alpha"}, 9, ext_floor=-2)
    with pytest.raises(TruncationError, match="floor"):
        tor_dimensions(shallow, 8)


# --- properties ------------------------------------------------------------------

@pytest.mark.property
@given(seed=seeds)
@counted
def test_koszul_d_squared_random(seed):
    rng = random.Random(seed)
    F = rng.choice(FIELDS)
    spec = h4_complex(F) if rng.random() < 0.6 else dual_numbers(F, 8)
    n = rng.randint(0, spec.truncation - 2)
    u = random_element(spec.alg, n, rng)
    assert not spec.normal_form(extend_leibniz(spec.d, extend_leibniz(spec.d, u)))


@pytest.mark.property
@given(seed=seeds)
@counted
def test_koszul_d_respects_the_ideal(seed):
    # d(I) is contained in I, so d is well defined on the quotient
    rng = random.Random(seed)
    F = rng.choice(FIELDS)
    spec = h4_complex(F)
    n = rng.randint(0, 3)
    u = random_element(spec.alg, n, rng)
    w = spec.parse("z*r - z*s") * u
    assert not spec.normal_form(extend_leibniz(spec.d, w))
