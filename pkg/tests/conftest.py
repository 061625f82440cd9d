from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


def rationals(max_num=10**6, max_den=10**4, nonzero=False):
    nums = st.integers(-max_num, max_num)
    if nonzero:
        nums = nums.filter(bool)
    return st.builds(Fraction, nums, st.integers(1, max_den))


def smooth_rationals(max_num=10**9):
    """Rationals whose denominators have only the primes 2, 3 and 5."""
    dens = st.builds(lambda a, b, c: 2**a * 3**b * 5**c,
                     st.integers(0, 12), st.integers(0, 8), st.integers(0, 6))
    return st.builds(Fraction, st.integers(-max_num, max_num), dens)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n][1])
