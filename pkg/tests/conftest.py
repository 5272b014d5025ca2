from __future__ import annotations

import os
import sys
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from gdff.families import make_bj1, make_linear, make_phi_s_delta  # noqa: E402
from gdff.pwl import PwlFunction  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def _corpus():
    bj = {C: make_bj1(C) for C in (F(3, 2), F(7, 3), F(5, 2), F(9, 4), F(5, 4))}
    return {
        "identity": PwlFunction.identity(),
        "zero": make_linear(0),
        "half_x": make_linear(F(1, 2)),
        **{f"bj1_{C}": f for C, f in bj.items()},
        "mix_bj1": (bj[F(3, 2)] + bj[F(7, 3)]) / 2,
        "phi_2_1/8": make_phi_s_delta(2, F(1, 8)),
        "phi_3_1/5": make_phi_s_delta(3, F(1, 5)),
        "phi_3/2_1/10": make_phi_s_delta(F(3, 2), F(1, 10)),
        "mix_phi_bj": (make_phi_s_delta(3, F(1, 6)) + bj[F(3, 2)]) / 2,
        # non-maximal members
        "bj1_shifted": bj[F(3, 2)] + F(1, 10),
        "two_x": PwlFunction.linear(2),
        "neg_bj1": -bj[F(3, 2)],
        "bump": PwlFunction.from_points([(0, 0), (F(1, 2), 1), (1, 0)], 0, 0),
        "sawtooth": PwlFunction.from_points([(-1, -1), (0, 0), (F(1, 3), F(1, 2)), (1, 1)], 1, 1),
    }


CORPUS = _corpus()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    def record(number: int, ok: bool, text: str):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}"
        print(line)
        _ACCEPTANCE_LINES.append(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
