import json

import pytest

from knotquivers import knotdb
from knotquivers.knotdb import SpecialFormData, UnknownKnotError, ValidationError, get_knot


def test_registry_matches_golden(golden):
    assert sorted(golden) == sorted(knotdb.knot_names())
    for name, ref in golden.items():
        d = get_knot(name).to_dict()
        for key in ("C", "n", "a", "q", "l", "r"):
            assert d[key] == ref[key], (name, key)


def test_registry_size():
    assert len(knotdb.knot_names()) >= 25


@pytest.mark.parametrize("family,p", sorted(knotdb.FAMILY_INSTANCES))
def test_family_generators_reproduce_instances(family, p):
    gen = knotdb.torus_2_strand(p) if family == "torus" else knotdb.twist_knot(p)
    assert knotdb.same_data(gen, get_knot(knotdb.FAMILY_INSTANCES[(family, p)]))


def test_family_instances_cover_required_ranges():
    torus = {p for f, p in knotdb.FAMILY_INSTANCES if f == "torus"}
    assert {1, 2, 3, 4} <= torus
    even = {p for f, p in knotdb.FAMILY_INSTANCES if f == "twist" and p % 2 == 0}
    odd = {p for f, p in knotdb.FAMILY_INSTANCES if f == "twist" and p % 2 == 1}
    assert len(even) >= 4 and len(odd) >= 4


@pytest.mark.parametrize(
    "alias,target",
    [("T2_5", "5_1"), ("T(2,7)", "7_1"), ("t2_9", "9_1"), ("TK_6", "6_1"), ("TK5", "5_2"), ("6_3", "6_3_optB")],
)
def test_lookup_forms(alias, target):
    assert knotdb.same_data(get_knot(alias), get_knot(target))


def test_lookup_is_case_insensitive():
    assert get_knot("6_3_OPTB").name == "6_3_optB"


@pytest.mark.parametrize("bad", ["11_1", "T2_4", "T(2,1)", "", "knot"])
def test_unknown_knots(bad):
    with pytest.raises(UnknownKnotError):
        get_knot(bad)


def test_json_round_trip(tmp_path):
    for name in knotdb.knot_names():
        data = get_knot(name)
        path = tmp_path / f"{name}.json"
        knotdb.save_json(data, path)
        back = knotdb.load_json(path)
        assert back == data


def _base():
    return dict(name="x", C=[[0, 1], [1, 3]], n=[1, 1], a=[1, 2], q=[-1, 0], l=[0, 0], r=[0, 1])


@pytest.mark.parametrize(
    "patch",
    [
        {"C": [[0, 1], [2, 3]]},
        {"C": [[0, 1, 0], [1, 3, 0]]},
        {"n": [1]},
        {"n": [0, 1]},
        {"l": [-1, 0]},
        {"r": [0, 2]},
        {"blocks": [{"coeff": [1], "shift": [0, 0]}]},
        {"blocks": [{"coeff": [0, 1], "shift": [0, -1]}]},
    ],
)
def test_validation_errors(patch):
    d = _base()
    d.update(patch)
    with pytest.raises(ValidationError):
        SpecialFormData.from_dict(d)


def test_from_dict_rejects_unknown_and_missing_keys():
    d = _base()
    d["extra"] = 1
    with pytest.raises(ValidationError):
        SpecialFormData.from_dict(d)
    d = _base()
    del d["q"]
    with pytest.raises(ValidationError):
        SpecialFormData.from_dict(d)


def test_load_json_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ValidationError):
        knotdb.load_json(bad)
    bad.write_text(json.dumps([1, 2]))
    with pytest.raises(ValidationError):
        knotdb.load_json(bad)


def test_default_positive_block():
    data = get_knot("3_1")
    (block,) = data.positive_blocks()
    assert block.coeff == data.r and block.shift == (0, 0)
    assert get_knot("6_3_optB").blocks is not None


def test_crossing_number():
    assert knotdb.crossing_number("10_152") == 10
    assert knotdb.crossing_number("T2_5") is None


def test_corrected_6_3_option():
    fixed = knotdb.corrected_knot("6_3_optA")
    listed = get_knot("6_3_optA")
    assert (fixed.l[4], fixed.r[4]) == (listed.r[4], listed.l[4])
    with pytest.raises(UnknownKnotError):
        knotdb.corrected_knot("3_1")
