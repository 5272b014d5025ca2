import json
from fractions import Fraction as F

import pytest
from hypothesis import given

from gdff import io
from gdff.complex import slack_reports
from gdff.families import make_phi_s_delta
from gdff.pwl import PwlFunction
from strategies import pwl_functions


@given(pwl_functions(equal_tails=False))
def test_function_round_trip_is_exact(f):
    assert io.loads(io.dumps(f)) == f


def test_file_layout(tmp_path):
    f = make_phi_s_delta(2, F(1, 8))
    path = tmp_path / "phi.json"
    io.write_function(f, path)
    data = json.loads(path.read_text())
    assert data["breakpoints"] == ["-1/8", "0/1", "1/8", "7/8", "1/1", "9/8"]
    assert data["left_tail_slope"] == "2/1"
    assert "anchor" not in data
    assert io.read_function(path) == f


def test_linear_functions_keep_their_offset():
    g = PwlFunction.linear(F(1, 2), F(3, 5))
    assert json.loads(io.dumps(g))["anchor"] == "3/5"
    assert io.loads(io.dumps(g)) == g


@pytest.mark.parametrize("text", ["[]", "{", '{"breakpoints": []}',
                                  '{"breakpoints": ["x"], "values": ["0"], "left_tail_slope": "0", "right_tail_slope": "0"}'])
def test_malformed_files(text):
    with pytest.raises(ValueError):
        io.loads(text)


def test_slack_csv_round_trip():
    reports = slack_reports(make_phi_s_delta(2, F(1, 8)))
    rows = io.parse_slack_csv(io.format_slack_csv(reports))
    assert rows == [(r.vertex.x, r.vertex.y, r.slack) for r in reports]
    with pytest.raises(ValueError):
        io.parse_slack_csv("1,2\n")


def test_rows():
    coeffs, b = io.parse_row("2/5 3/10 | 1")
    assert coeffs == [F(2, 5), F(3, 10)] and b == 1
    assert io.format_row(coeffs, b) == "2/5 3/10 | 1/1"
    for bad in ("1 2", "| 1", "1 | 2 | 3"):
        with pytest.raises(ValueError):
            io.parse_row(bad)
