"""Cross-module invariants on randomly generated pwl functions."""

import random
from fractions import Fraction as F

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gdff.classify import (check_extreme_2slope, check_maximal, check_restricted_maximal,
                           check_strongly_maximal, falsify_validity)
from gdff.convert import cgf_to_gdff, gdff_to_cgf, max_admissible_lambda
from gdff.cuts import generate_cut, pairing, random_row, sample_Yle1, verify_cut_bruteforce
from gdff.families import make_bj1, make_phi_s_delta
from gdff.pwl import PwlFunction, affine_combine
from strategies import pwl_functions

ID = PwlFunction.identity()

maximal_inputs = st.one_of(
    st.builds(make_bj1, st.builds(F, st.integers(8, 40), st.sampled_from([2, 3, 4, 5, 7]))),
    st.builds(lambda s, k: make_phi_s_delta(s, min((s - 1) / (2 * s), F(1, 3)) * F(k, 10)),
              st.sampled_from([F(3, 2), F(2), F(4)]), st.integers(1, 9)),
)


@settings(max_examples=80)
@given(pwl_functions(min_size=1, max_size=5))
def test_ladder_is_monotone_on_random_functions(f):
    e, s = check_extreme_2slope(f).ok, check_strongly_maximal(f).ok
    r, m = check_restricted_maximal(f).ok, check_maximal(f).ok
    assert not e or s or f == ID
    assert not s or r
    assert not r or m


@given(st.lists(maximal_inputs, min_size=1, max_size=3), st.data())
def test_convex_combinations_stay_restricted_maximal(fns, data):
    weights = [F(data.draw(st.integers(1, 5))) for _ in fns]
    total = sum(weights)
    mix = affine_combine([w / total for w in weights], fns)
    assert check_restricted_maximal(mix).ok
    assert falsify_validity(mix, trials=200, seed=data.draw(st.integers(0, 99))) is None


@given(pwl_functions(), st.builds(F, st.integers(1, 9), st.just(10)))
def test_conversion_round_trip_on_random_functions(f, lam):
    pi = gdff_to_cgf(f, lam)
    assume(lam <= max_admissible_lambda(pi))
    assert cgf_to_gdff(gdff_to_cgf(f, lam), lam) == f


@settings(max_examples=30)
@given(maximal_inputs, st.integers(0, 10_000))
def test_cuts_from_maximal_functions_are_valid(phi, seed):
    row = random_row(random.Random(seed))
    box = int(row.rhs / min(row.coefficients)) + 1
    assert verify_cut_bruteforce(generate_cut(phi, row), row, box).ok


@settings(max_examples=20)
@given(maximal_inputs, st.integers(0, 1000))
def test_sampled_Yle1_points_satisfy_the_gdff_inequality(phi, seed):
    assert all(pairing(phi, y) <= 1 for y in sample_Yle1(seed, 50))
