# -*- coding: utf-8 -*-
import random
from math import gcd

import pytest

from common import ConsistencyFault, InvalidInput, NotApplicable
from modules.classifier import (
    FamilyWitness,
    SurgeryClass,
    SurgeryKind,
    classify,
    exceptional_slopes,
    family_instance,
    family_slope,
    instances_with_denominator,
    iter_family_witnesses,
    match_small_sfs,
    match_toroidal,
    validate_witness,
    witness_cf,
)
from modules.notation import CanonicalLink, Slope, cf_to_slope, mirror_link


def L(p, q):
    return CanonicalLink(Slope(p, q))


def R(n, d=1):
    return Slope(n, d)


@pytest.mark.parametrize("link_txt, r, kind, grafo, familia", [
    ("[2,3,-2]", 0, SurgeryKind.TOROIDAL, True, "T2a"),
    ("[4,1,4]", -4, SurgeryKind.TOROIDAL, True, "T2b"),
    ("[6,3,6]", -6, SurgeryKind.TOROIDAL, False, "T2c"),
    ("[3,-3]", -1, SurgeryKind.SMALL_SEIFERT, None, "S3c"),
    ("[3,5]", 2, SurgeryKind.SMALL_SEIFERT, None, "S3a"),
    ("[5,3]", -3, SurgeryKind.SMALL_SEIFERT, None, "S3b"),
    ("[5,7]", 1, SurgeryKind.SMALL_SEIFERT, None, "S3d"),
    ("5/24", -5, SurgeryKind.SMALL_SEIFERT, None, "S3d"),
])
def test_golden_classifications(link, link_txt, r, kind, grafo, familia):
    c = classify(link(link_txt), R(r))
    assert (c.kind, c.graph_manifold, c.family) == (kind, grafo, familia)


def test_golden_witness_parameters(link):
    c = classify(link("[6,3,6]"), R(-6))
    assert c.witness == FamilyWitness("T2c", 3, 3, 3)
    assert c.to_dict() == {
        "kind": "toroidal",
        "graph_manifold": False,
        "family": "T2c",
        "witness": {"w": 3, "v": 3, "u": 3, "mirrored": False},
    }


def test_hyperbolic_outcomes(link):
    assert classify(link("[2,3,-2]"), R(7)) == SurgeryClass.hyperbolic()
    assert classify(link("[2,3,-2]"), R(1, 2)).kind is SurgeryKind.HYPERBOLIC
    assert classify(link("5/12"), R(-7, 3)).to_dict() == {"kind": "hyperbolic"}


def test_not_applicable_queries(link):
    with pytest.raises(NotApplicable) as e:
        classify(link("1/2"), R(3))
    assert e.value.reason == "not_hyperbolic"
    with pytest.raises(NotApplicable) as e:
        classify(L(1, 6), R(0))
    assert e.value.reason == "not_hyperbolic"
    with pytest.raises(NotApplicable) as e:
        classify(L(3, 8), Slope(1, 0))
    assert e.value.reason == "meridian_slope"


def test_mirrored_match():
    c = classify(L(5, 8), R(1))
    assert c.family == "S3c"
    assert c.witness.mirrored is True
    assert c.to_dict()["witness"] == {"mirrored": True}


def test_equivalent_representatives_classify_alike():
    # 3/10 e 7/10 são equivalentes (3 * 7 = 21 = 1 mod 10)
    for n in range(-8, 9):
        assert classify(L(3, 10), R(n)).signature() == classify(L(7, 10), R(n)).signature()


def test_matchers_reject_non_integer_slopes():
    assert match_toroidal(L(5, 12), R(1, 2)) is None
    assert match_small_sfs(L(3, 8), R(-1, 3)) is None


def test_matchers_directly():
    assert match_toroidal(L(5, 12), R(0)) == FamilyWitness("T2a", 1, 3, -1)
    assert match_small_sfs(L(5, 16), R(2)) == FamilyWitness("S3a", u=2)
    assert match_small_sfs(L(5, 12), R(0)) is None


@pytest.mark.parametrize("witness, link_esperado, r", [
    (FamilyWitness("T2a", 1, 3, -1), L(5, 12), 0),
    (FamilyWitness("T2a", 1, 3, -1, mirrored=True), L(7, 12), 0),
    (FamilyWitness("T2b", 2, 1, 2), L(5, 24), -4),
    (FamilyWitness("T2c", 3, 3, 3), L(19, 120), -6),
    (FamilyWitness("S3a", u=2), L(5, 16), 2),
    (FamilyWitness("S3b", w=2), L(3, 16), -3),
    (FamilyWitness("S3c"), L(3, 8), -1),
    (FamilyWitness("S3d", w=2, u=3), L(7, 36), 1),
    (FamilyWitness("S3d", w=2, u=3, mirrored=True), L(29, 36), -1),
])
def test_family_instance(witness, link_esperado, r):
    assert family_instance(witness) == (link_esperado, R(r))


def test_witness_cf_and_slope():
    assert witness_cf(FamilyWitness("T2c", 3, 3, 3)).entries == (6, 3, 6)
    assert witness_cf(FamilyWitness("S3b", w=1)).entries == (3, 3)
    assert witness_cf(FamilyWitness("S3c")).entries == (3, -3)
    assert family_slope(FamilyWitness("S3d", w=4, u=-2)) == -6


@pytest.mark.parametrize("witness, razao", [
    (FamilyWitness("T2a", 1, 1, -1), "bad_parameters"),
    (FamilyWitness("T2a", 2, 3, -1), "bad_parameters"),
    (FamilyWitness("T2b", 2, 2, 2), "bad_parameters"),
    (FamilyWitness("T2c", 2, 1, 2), "bad_parameters"),
    (FamilyWitness("T2c", 1, 2, 2), "bad_parameters"),
    (FamilyWitness("S3a", u=0), "bad_parameters"),
    (FamilyWitness("S3a", u=-1), "bad_parameters"),
    (FamilyWitness("S3a", w=1, u=2), "bad_parameters"),
    (FamilyWitness("S3b", w=0), "bad_parameters"),
    (FamilyWitness("S3d", w=0, u=2), "bad_parameters"),
    (FamilyWitness("S3d", w=1, u=-1), "bad_parameters"),
    (FamilyWitness("X9"), "bad_family"),
])
def test_validate_witness_rejects(witness, razao):
    with pytest.raises(InvalidInput) as e:
        validate_witness(witness)
    assert e.value.reason == razao


def test_no_constraint_gap_over_small_parameters():
    # toda testemunha válida reconstrói um enlace hiperbólico de denominador par
    total = 0
    for witness in iter_family_witnesses(10):
        try:
            link, r = family_instance(witness)
        except ConsistencyFault as e:  # pragma: no cover
            pytest.fail(f"{witness}: {e.message}")
        assert link.q % 2 == 0 and link.hyperbolic and r.is_integer
        total += 1
    assert total > 0


def test_iter_family_witnesses_denominator_pruning_is_exact():
    dentro = {w for w in iter_family_witnesses(20, max_q=40)}
    for w in iter_family_witnesses(20):
        if cf_to_slope(witness_cf(w)).q <= 40:
            assert w in dentro


def test_instances_with_denominator():
    familias = {w.family for w, link, r in instances_with_denominator(8, 8)}
    assert familias == {"T2a", "T2b", "S3a", "S3c", "S3d"}
    assert all(link.q == 8 for _, link, _ in instances_with_denominator(8, 8))


def test_exceptional_slopes_whitehead_link():
    pares = exceptional_slopes(L(3, 8))
    assert [r.p for r, _ in pares] == [-4, -3, -2, -1, 0]
    assert [c.family for _, c in pares] == ["T2b", "S3d", "S3a", "S3c", "T2a"]
    assert pares[0][1].witness == FamilyWitness("T2b", 2, -1, 2)


def test_exceptional_slopes_shared_link():
    # [4,1,4], [6,-1,6] e [5,-5] valem 5/24
    pares = {r.p: c for r, c in exceptional_slopes(L(5, 24))}
    assert pares[-4].family == "T2b" and pares[-4].graph_manifold
    assert pares[-5].family == "S3d"
    assert pares[-6].witness == FamilyWitness("T2b", 3, -1, 3)


def test_exceptional_slopes_requires_hyperbolic_link():
    with pytest.raises(NotApplicable):
        exceptional_slopes(L(1, 4))


def test_family_instance_parameter_errors():
    assert family_instance(FamilyWitness("S3d", w=1, u=1)) == (L(3, 10), R(0))
    with pytest.raises(InvalidInput) as e:
        family_instance(FamilyWitness("S3d", w=1, u=0))
    assert e.value.reason == "bad_parameters"


def test_explicit_zero_param_bound_is_not_the_default():
    assert match_toroidal(L(5, 12), R(0)) == FamilyWitness("T2a", 1, 3, -1)
    assert match_toroidal(L(5, 12), R(0), param_bound=0) is None
    assert classify(L(5, 12), R(0), param_bound=0).kind is SurgeryKind.HYPERBOLIC
    assert match_small_sfs(L(7, 36), R(1), param_bound=0) is None
    assert exceptional_slopes(L(3, 8), param_bound=0) == [(R(-1), classify(L(3, 8), R(-1)))]


def _espelho_preserva(link, r):
    c = classify(link, r)
    m = classify(mirror_link(link), -r)
    return (c.kind, c.graph_manifold) == (m.kind, m.graph_manifold)


@pytest.mark.slow
def test_mirror_covariance_on_family_instances():
    for witness in iter_family_witnesses(8):
        link, r = family_instance(witness)
        assert _espelho_preserva(link, r), witness


def test_mirror_covariance_on_random_hyperbolic_pairs():
    rng = random.Random(20240)
    vistos = 0
    while vistos < 100:
        q = rng.randrange(4, 201, 2)
        p = rng.randrange(1, q)
        if gcd(p, q) != 1 or p in (1, q - 1):
            continue
        r = Slope.of(rng.randint(-60, 60), rng.choice((1, 1, 1, 2, 3, 5)))
        link = L(p, q)
        if classify(link, r).kind is not SurgeryKind.HYPERBOLIC:
            continue
        assert _espelho_preserva(link, r), (link, r)
        vistos += 1
