import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CORPUS
from gdff.classify import check_maximal
from gdff.cuts import (GeneratedCut, IPRow, check_gdff_inequality_on_samples, generate_cut, in_Yeq1,
                       in_Yle1, pairing, random_row, sample_Yeq1, sample_Yle1, verify_cut_bruteforce)
from gdff.families import make_bj1, make_linear, make_phi_s_delta
from gdff.pwl import PwlFunction
from oracles import lattice_points

ID = PwlFunction.identity()
PHI = make_phi_s_delta(2, F(1, 8))
ROW = IPRow((F(2, 5), F(3, 10)), F(1))


def test_generate_cut_examples():
    cut = generate_cut(ID, ROW)
    assert cut.coefficients == ROW.coefficients and cut.rhs == ROW.rhs
    cut = generate_cut(PHI, ROW)
    assert cut.coefficients == (F(11, 30), F(7, 30)) and cut.rhs == 1
    zero = generate_cut(make_linear(0), ROW)
    assert zero.coefficients == (0, 0) and zero.rhs == 0
    with pytest.raises(ValueError):
        generate_cut(CORPUS["bump"], ROW)


def test_row_validation():
    with pytest.raises(ValueError):
        IPRow((), F(1))


def test_verify_examples():
    cut = generate_cut(PHI, ROW)
    assert verify_cut_bruteforce(cut, ROW, 4).ok
    assert cut.lhs((1, 2)) == F(25, 30)
    assert verify_cut_bruteforce(generate_cut(ID, ROW), ROW, 4).ok


def test_verify_preconditions():
    cut = generate_cut(PHI, ROW)
    with pytest.raises(ValueError):
        verify_cut_bruteforce(cut, ROW, 0)
    with pytest.raises(ValueError):
        verify_cut_bruteforce(cut, ROW, 2)
    neg = IPRow((F(-1, 2), F(1, 2)), F(1))
    with pytest.raises(ValueError):
        verify_cut_bruteforce(generate_cut(ID, neg), neg, 4)


def test_corrupted_cut_on_tight_row_is_caught():
    row = IPRow((F(1, 2), F(1, 3)), F(1))
    cut = generate_cut(PHI, row)
    bad = GeneratedCut(cut.coefficients, cut.rhs - F(1, 10))
    res = verify_cut_bruteforce(bad, row, 10)
    assert not res.ok and bad.lhs(res.witness) > bad.rhs
    assert sum(a * x for a, x in zip(row.coefficients, res.witness)) <= row.rhs


@given(st.integers(0, 10_000), st.sampled_from(["phi_2_1/8", "bj1_7/3", "mix_bj1", "half_x"]))
def test_verification_agrees_with_naive_enumeration(seed, name):
    row = random_row(random.Random(seed))
    phi = CORPUS[name]
    cut = generate_cut(phi, row)
    box = int(row.rhs / min(row.coefficients)) + 1
    naive = all(cut.lhs(x) <= cut.rhs for x in lattice_points(row.coefficients, row.rhs, box))
    assert verify_cut_bruteforce(cut, row, box).ok == naive is True


def test_model_membership_examples():
    assert in_Yle1({}) and not in_Yeq1({})
    y = {F(-1): 2}
    assert in_Yle1(y)
    assert pairing(lambda r: -r, y) == 2
    assert in_Yeq1({F(1, 2): 2})


def test_samples_are_feasible_and_deterministic():
    le = sample_Yle1(5, 200)
    assert le[0] == {} and all(in_Yle1(y) for y in le)
    assert le == sample_Yle1(5, 200)
    eq = sample_Yeq1(5, 200)
    assert all(in_Yeq1(y) for y in eq)


def test_inequality_on_samples():
    bj = make_bj1(F(3, 2))
    assert check_gdff_inequality_on_samples(bj, sample_Yle1(1, 2000)).ok
    res = check_gdff_inequality_on_samples(PwlFunction.linear(2), [{F(1, 2): 2}])
    assert not res.ok and res.witness == {F(1, 2): 2}
    assert check_gdff_inequality_on_samples(PwlFunction.linear(2), [{}]).ok


@pytest.mark.parametrize("name", [n for n in sorted(CORPUS) if check_maximal(CORPUS[n]).ok])
def test_Yle1_inequalities_hold_on_Yeq1(name):
    assert check_gdff_inequality_on_samples(CORPUS[name], sample_Yeq1(2, 300)).ok
