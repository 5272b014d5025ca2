from fractions import Fraction

from hypothesis import strategies as st

from gdff.pwl import PwlFunction

small_rationals = st.builds(Fraction, st.integers(-24, 24), st.sampled_from([1, 2, 3, 4, 6, 8]))
unit_rationals = st.builds(Fraction, st.integers(1, 11), st.just(12))


@st.composite
def pwl_functions(draw, min_size=0, max_size=5, equal_tails=True):
    xs = sorted(set(draw(st.lists(small_rationals, min_size=min_size, max_size=max_size))))
    ys = [draw(small_rationals) for _ in xs]
    left = draw(small_rationals)
    right = left if equal_tails or not xs else draw(small_rationals)
    if not xs:
        return PwlFunction.linear(left, draw(small_rationals))
    return PwlFunction(tuple(xs), tuple(ys), left, right)
