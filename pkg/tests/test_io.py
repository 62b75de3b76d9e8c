import json
from fractions import Fraction

import pytest
from hypothesis import given

from nsleak import io
from nsleak.errors import InputError
from nsleak.stochastic import RationalDist, StochasticChannel
from nsleak.uv import AttributeMap, Channel, channel_from_relation
from nsleak.values import LeakageValue

from strategies import relations

COR1 = {
    "variables": ["X", "Y"],
    "alphabets": {"X": ["x1", "x2", "x3"], "Y": ["y1", "y2"]},
    "tuples": [["x1", "y1"], ["x2", "y1"], ["x3", "y2"]],
}


def test_relation_file_example(tmp_path, cor1):
    p = tmp_path / "rel.json"
    p.write_text(json.dumps(COR1))
    assert io.load_relation(p) == cor1


@given(relations())
def test_relation_round_trip(rel):
    assert io.relation_from_obj(io.relation_to_obj(rel)) == rel


def test_channel_round_trip(cor1):
    k = channel_from_relation(cor1, "X", "Y")
    obj = io.channel_to_obj(k)
    assert obj == {"from": "X", "to": "Y", "map": {"x1": ["y1"], "x2": ["y1"], "x3": ["y2"]}}
    assert io.channel_from_obj(obj) == k


def test_dist_round_trip(cor1):
    obj = {"weights": {"x1|y1": "1/3", "x2|y1": "1/3", "x3|y2": "1/3"}}
    d = io.dist_from_obj(obj, cor1)
    assert d == RationalDist.uniform(cor1)
    assert io.dist_from_obj(io.dist_to_obj(d), cor1) == d


def test_stochastic_channel_round_trip():
    ch = StochasticChannel("X", "Y", {"a": {"0": Fraction(3, 4), "1": Fraction(1, 4)}})
    obj = io.stochastic_channel_to_obj(ch)
    assert obj["map"]["a"] == {"0": "3/4", "1": "1/4"}
    assert io.stochastic_channel_from_obj(obj) == ch


def test_attribute_round_trip():
    g = AttributeMap.from_dict({"x1": "x1", "x2": "x2", "x3": "__ustar"})
    obj = io.attribute_to_obj(g, LeakageValue(3))
    back, achieved = io.attribute_from_obj(obj)
    assert back == g and achieved == LeakageValue(3)


@pytest.mark.parametrize(
    "obj,where",
    [
        ({**COR1, "extra": 1}, "unknown key"),
        ({"variables": ["X", "Y"]}, "missing key"),
        ({**COR1, "tuples": [["x1", "y1"], ["x9", "y1"]]}, "tuples[1][0]"),
        ({**COR1, "tuples": [["x1"]]}, "tuples[0]"),
        ({**COR1, "tuples": []}, "tuples"),
        ({**COR1, "variables": ["X", "X"]}, "variables"),
        ({**COR1, "alphabets": {"X": ["x1", "x1"], "Y": ["y1"]}}, "alphabets.X"),
        ({**COR1, "tuples": [["x1", 3]]}, "tuples[0][1]"),
    ],
)
def test_relation_schema_errors(obj, where):
    with pytest.raises(io.SchemaError) as exc:
        io.relation_from_obj(obj)
    assert where in str(exc.value)


def test_dist_schema_errors(cor1):
    with pytest.raises(io.SchemaError, match="weights.x1\\|y2"):
        io.dist_from_obj({"weights": {"x1|y2": "1"}}, cor1)
    with pytest.raises(io.SchemaError, match="strings"):
        io.dist_from_obj({"weights": {"x1|y1": 1}}, cor1)
    with pytest.raises(io.SchemaError, match="weights"):
        io.dist_from_obj({"weights": {"x1|y1": "1/2"}}, cor1)


def test_channel_schema_errors():
    with pytest.raises(io.SchemaError, match="map.x1"):
        io.channel_from_obj({"from": "X", "to": "Y", "map": {"x1": []}})
    with pytest.raises(io.SchemaError, match="unknown"):
        io.channel_from_obj({"from": "X", "to": "Y", "map": {"x1": ["y"]}, "note": ""})


def test_bad_json_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"variables": ["X",\n  }')
    with pytest.raises(io.SchemaError) as exc:
        io.read_json(p)
    assert f"{p}:2:" in str(exc.value)


def test_load_prefixes_path(tmp_path):
    p = tmp_path / "rel.json"
    p.write_text(json.dumps({**COR1, "oops": True}))
    with pytest.raises(io.SchemaError) as exc:
        io.load_relation(p)
    assert str(p) in str(exc.value)


def test_missing_file():
    with pytest.raises(InputError):
        io.read_json("/nonexistent/rel.json")


def test_duplicate_tuples_counted(tmp_path):
    obj = {**COR1, "tuples": COR1["tuples"] + [["x1", "y1"]]}
    rel = io.relation_from_obj(obj)
    assert rel.duplicates == 1 and len(rel) == 3


def test_channel_roundtrip_through_file(tmp_path):
    k = Channel("X", "Y", {"é": ["ü"], "a": ["b", "c"]})
    p = tmp_path / "k.json"
    io.write_json(io.channel_to_obj(k), p)
    assert io.load_channel(p) == k
