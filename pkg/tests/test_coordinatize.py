"""Frame-pinned isomorphisms onto the concrete model."""

import itertools

import pytest

from helpers import mutate_doc
from projline.candidate import CandidateTable, from_model
from projline.coordinatize import (
    CandidateIso,
    CoordinatizationError,
    Frame,
    coordinatize,
    verify_iso,
    verify_uniqueness,
)


def test_frame_validation():
    with pytest.raises(CoordinatizationError):
        Frame("a", "a", "b")
    t = from_model(3)
    with pytest.raises(CoordinatizationError):
        coordinatize(t, Frame("0:1", "1:0", "9:9"))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_standard_frame_gives_identity(p):
    t = from_model(p)
    iso = coordinatize(t, Frame("0:1", "1:0", "1:1"))
    assert iso.verified
    assert all(k == v for k, v in iso.object_map.items())
    assert all(k == v for k, v in iso.scalar_map.items())
    assert verify_iso(t, iso).passed


@pytest.mark.parametrize("p", [2, 3, 5])
def test_every_frame_coordinatizes(p):
    t = from_model(p)
    for f in itertools.permutations(t.objects, 3):
        iso = coordinatize(t, Frame(*f))
        assert iso.verified
        assert iso.object_map[f[0]] == "0:1"
        assert iso.object_map[f[1]] == "1:0"
        assert iso.object_map[f[2]] == "1:1"


def test_frame_images_and_export():
    t = from_model(5)
    iso = coordinatize(t, Frame("1:1", "3:1", "1:0"))
    doc = iso.to_doc()
    assert doc["verified"] is True
    assert doc["base"] == "1:1"
    assert doc["objects"]["1:1"] == "0:1"
    assert doc["objects"]["3:1"] == "1:0"
    assert doc["objects"]["1:0"] == "1:1"
    assert sorted(doc["scalars"]) == sorted(t.scalars["1:1"])


def test_default_frame_is_first_three_objects():
    t = from_model(3)
    iso = coordinatize(t)
    assert iso.object_map["0:1"] == "0:1"
    assert iso.object_map["1:1"] == "1:0"
    assert iso.object_map["2:1"] == "1:1"


def test_verify_iso_rejects_malformed_maps():
    t = from_model(3)
    iso = coordinatize(t)
    broken = dict(iso.object_map)
    broken[t.objects[0]] = broken[t.objects[1]]  # not a bijection
    with pytest.raises(CoordinatizationError):
        verify_iso(t, CandidateIso(iso.base_object, broken, iso.scalar_map))
    with pytest.raises(CoordinatizationError):
        verify_iso(t, CandidateIso("9:9", iso.object_map, iso.scalar_map))
    bad_scalars = {k: "1" for k in iso.scalar_map}
    with pytest.raises(CoordinatizationError):
        verify_iso(t, CandidateIso(iso.base_object, iso.object_map, bad_scalars))


def test_swapping_two_objects_breaks_functoriality():
    t = from_model(5)
    good = coordinatize(t, Frame("0:1", "1:0", "1:1"))
    om = dict(good.object_map)
    om["2:1"], om["3:1"] = om["3:1"], om["2:1"]
    report = verify_iso(t, CandidateIso(good.base_object, om, dict(good.scalar_map)))
    assert not report.passed
    fun = report.check("functorial")
    assert fun.status == "fail"
    kinds = {w.split("(")[0] for w in fun.witnesses}
    assert kinds & {"functoriality", "label-compatibility"}


def test_scalar_map_must_match_structure():
    t = from_model(5)
    good = coordinatize(t, Frame("0:1", "1:0", "1:1"))
    sm = dict(good.scalar_map)
    sm["2"], sm["3"] = sm["3"], sm["2"]
    report = verify_iso(t, CandidateIso(good.base_object, good.object_map, sm))
    assert report.check("scalar-map").status == "fail"
    assert report.check("scalar-map").witnesses


@pytest.mark.parametrize("p,count", [(2, 1), (3, 1), (5, 6), (7, 120)])
def test_uniqueness_candidate_counts(p, count):
    t = from_model(p)
    report, found = verify_uniqueness(t)
    assert report.status == "pass"
    assert report.checked == count
    assert found == coordinatize(t).object_map


def test_uniqueness_with_rotated_frame():
    t = from_model(5)
    frame = Frame("4:1", "0:1", "1:0")
    report, found = verify_uniqueness(t, frame)
    assert report.status == "pass"
    assert found == coordinatize(t, frame).object_map


def test_object_count_must_fit_a_prime_model():
    # five objects would need a field of order four
    objects = ["a", "b", "c", "d", "e"]
    scalars = {o: ["1", "2", "3"] for o in objects}
    identities = {o: "1" for o in objects}
    t = CandidateTable._bare(objects, scalars, identities)
    with pytest.raises(CoordinatizationError, match="not prime"):
        coordinatize(t)


def test_mutated_table_fails_coordinatization():
    doc = mutate_doc(from_model(5).to_doc(), "field")
    t = CandidateTable.from_doc(doc)
    with pytest.raises(CoordinatizationError):
        coordinatize(t)
