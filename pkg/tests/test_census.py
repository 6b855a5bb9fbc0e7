# -*- coding: utf-8 -*-
import openpyxl
import pytest

from common import ConsistencyFault, InvalidInput, NotApplicable, xlsx_save
from modules.census import (
    CensusEntry,
    agreement_sweep,
    brute_force_classify,
    census_frame,
    check_disjointness,
    check_expansion_lengths,
    enumerate_census,
    note_identity_check,
    same_outcome,
)
from modules.classifier import SurgeryKind, classify
from modules.notation import CanonicalLink, Slope, cf_to_slope, inverse_link, mirror_link


def L(p, q):
    return CanonicalLink(Slope(p, q))


def R(n):
    return Slope(n, 1)


def _pares(entries):
    return [(str(e.link), e.slope.p) for e in entries]


def test_census_up_to_eight():
    entries = enumerate_census(8)
    assert _pares(entries) == [("3/8", n) for n in (-4, -3, -2, -1, 0)] + [("5/8", n) for n in (0, 1, 2, 3, 4)]


def test_census_up_to_twelve():
    entries = enumerate_census(12)
    assert len(entries) == 17
    assert _pares(entries)[10:] == [("3/10", n) for n in (-2, -1, 0, 1, 2)] + [("5/12", 0), ("7/12", 0)]
    toro = [e for e in entries if str(e.link) == "5/12"][0]
    assert toro.surgery.kind is SurgeryKind.TOROIDAL and toro.surgery.graph_manifold


def test_census_contains_both_outcomes_on_shared_link(small_census):
    classes = {e.slope.p: e.surgery for e in small_census if str(e.link) == "5/24"}
    assert classes[-4].kind is SurgeryKind.TOROIDAL and classes[-4].graph_manifold
    assert classes[-5].kind is SurgeryKind.SMALL_SEIFERT


def test_census_invariants(small_census):
    chaves = set()
    for e in small_census:
        assert e.surgery.kind is not SurgeryKind.HYPERBOLIC
        assert e.link.p <= inverse_link(e.link).p
        assert classify(e.link, e.slope) == e.surgery
        espelho = classify(mirror_link(e.link), -e.slope)
        assert espelho.signature() == e.surgery.signature()
        chaves.add((e.link, e.slope))
    assert len(chaves) == len(small_census)
    assert small_census == sorted(small_census, key=CensusEntry.sort_key)


def test_census_is_stable_when_bounds_double(small_census):
    assert enumerate_census(24, param_bound=48) == small_census


def test_census_parallel_matches_serial(small_census):
    assert enumerate_census(24, workers=2) == small_census


@pytest.mark.parametrize("max_q", [6, 9, 0])
def test_census_rejects_bad_bounds(max_q):
    with pytest.raises(InvalidInput) as e:
        enumerate_census(max_q)
    assert e.value.reason == "bad_bound"


def test_census_entry_document():
    e = enumerate_census(12)[-1]
    assert e.to_dict() == {
        "input": {"link": "7/12", "slope": "0/1"},
        "canonical_link": "7/12",
        "hyperbolic_link": True,
        "classification": {
            "kind": "toroidal",
            "graph_manifold": True,
            "family": "T2a",
            "witness": {"w": 1, "v": -3, "u": -1, "mirrored": False},
        },
    }


def test_census_frame_and_xlsx_export(tmp_path):
    df = census_frame(enumerate_census(12))
    assert list(df.columns) == ["q", "p", "link", "slope", "kind", "graph_manifold", "family", "witness"]
    assert len(df) == 17
    destino = tmp_path / "saida" / "censo.xlsx"
    xlsx_save(df, str(destino), sheet_name="censo_q12")
    wb = openpyxl.load_workbook(destino)
    assert wb.sheetnames == ["censo_q12"]
    assert wb["censo_q12"].max_row == 18


@pytest.mark.parametrize("bound", [2, 6, 10])
def test_families_are_disjoint(bound):
    ok, report = check_disjointness(bound)
    assert ok, report.to_dict()
    assert report.instances > 0
    assert not report.constraint_gaps


def test_disjointness_detects_seeded_collision():
    ok, report = check_disjointness(6, injected=[("S3d", L(5, 12), R(0))])
    assert not ok
    assert {"link": "5/12", "slope": "0/1", "families": ["S3d", "T2a"]} in report.collisions


def test_disjointness_bound():
    with pytest.raises(InvalidInput):
        check_disjointness(1)


@pytest.mark.parametrize("link, r, widen, kind, familia", [
    (L(5, 12), 0, 3, SurgeryKind.TOROIDAL, "T2a"),
    (L(5, 12), 7, 3, SurgeryKind.HYPERBOLIC, None),
    (L(3, 8), -4, 1, SurgeryKind.TOROIDAL, "T2b"),
    (L(5, 8), 1, 2, SurgeryKind.SMALL_SEIFERT, "S3c"),
    (L(19, 120), -6, 2, SurgeryKind.TOROIDAL, "T2c"),
])
def test_brute_force_examples(link, r, widen, kind, familia):
    c = brute_force_classify(link, R(r), widen)
    assert (c.kind, c.family) == (kind, familia)


def test_brute_force_contract():
    assert brute_force_classify(L(5, 12), Slope(1, 2), 2).kind is SurgeryKind.HYPERBOLIC
    with pytest.raises(NotApplicable):
        brute_force_classify(L(1, 2), R(0), 2)
    with pytest.raises(InvalidInput):
        brute_force_classify(L(5, 12), R(0), 0)


def test_oracle_agrees_with_classify_small():
    assert agreement_sweep(30, 12) == []


@pytest.mark.slow
def test_oracle_agrees_with_classify_full():
    assert agreement_sweep(60, 30) == []


def test_same_outcome_ignores_mirror_side():
    a = classify(L(3, 8), R(0))
    b = brute_force_classify(L(3, 8), R(0), 2)
    assert same_outcome(a, b)
    assert not same_outcome(a, classify(L(3, 8), R(-1)))


def test_note_identity_examples():
    assert cf_to_slope((4, 1, 4)) == Slope(5, 24) == cf_to_slope((5, -5))
    assert cf_to_slope((4, 1, -4)) == Slope(3, 16) == cf_to_slope((5, 3))


@pytest.mark.parametrize("bound", [2, 20])
def test_note_identity_check(bound):
    ok, report = note_identity_check(bound)
    assert ok and not report.failures
    assert report.checked == (2 * bound) ** 2


def test_note_identity_bound():
    with pytest.raises(InvalidInput):
        note_identity_check(1)


def test_expansion_lengths():
    ok, report = check_expansion_lengths(24)
    assert ok, report.offenders
    assert report.small_seifert_checked > 0
    assert report.toroidal_checked > 0


def test_consistency_fault_is_internal():
    assert ConsistencyFault("ambiguous_match", "x").exit_code == 4
