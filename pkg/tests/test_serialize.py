import json
import math
from dataclasses import dataclass

import numpy as np
from hypothesis import given, strategies as st

from hb_lab.serialize import csv_text, dumps, round_float, to_jsonable, write_text


def test_round_float():
    assert round_float(1 / 3) == 0.333333333333
    assert round_float(math.nan) is None and round_float(math.inf) is None
    assert round_float(-0.0) == 0.0


def test_complex_and_arrays():
    assert to_jsonable(np.array([1 + 2j, 3])) == [[1.0, 2.0], [3.0, 0.0]]
    assert to_jsonable({"a": np.float64(0.1), 2: True}) == {"a": 0.1, "2": True}


@dataclass
class _Point:
    x: float
    label: str


def test_dataclass_fields_in_order():
    assert json.loads(dumps(_Point(0.5, "p"))) == {"x": 0.5, "label": "p"}
    assert dumps({"b": 1, "a": 2}).index('"b"') < dumps({"b": 1, "a": 2}).index('"a"')


def test_csv_format():
    text = csv_text(("k", "value", "flag"), [(0, 1 / 3, True), (1, math.nan, False), (2, "a,b", None)])
    assert text.split("\r\n") == ["k,value,flag", "0,0.333333333333,true", "1,,false", '2,"a,b",', ""]


def test_write_text(tmp_path):
    path = tmp_path / "out.json"
    write_text(dumps({"x": 1}), str(path))
    assert path.read_bytes() == b'{\n  "x": 1\n}\n'


@given(st.floats(allow_nan=True, allow_infinity=True))
def test_dumps_is_deterministic_and_strict(x):
    doc = {"x": x, "z": complex(x, -x) if math.isfinite(x) else 0j}
    assert dumps(doc) == dumps(doc)
    json.loads(dumps(doc))
