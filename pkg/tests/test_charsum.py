import itertools

import pytest

from common.charsum import (QUAD_KEYS, abc_sums, check_generic_c, eta_profile, jacobsthal_quadratic,
                            jacobsthal_quadratic_brute, pair_counts_S, pair_counts_S_predicted, pair_counts_T,
                            pair_counts_T_closed, quad_counts, quad_counts_closed, quad_counts_predicted,
                            quartic_reduction_check)
from common.errors import InvalidInput, UnsupportedCase
from common.ffield import eta_two_rule, make_field

FIELDS = [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3)]
ETA1_FIELDS = [(5, 1), (13, 1), (3, 2), (17, 1), (5, 2)]
TYPO_KEYS = [(-1, 1, 1, -1), (-1, 1, -1, 1)]

def generic_cs(f):
    return [c for c in f.elements() if c not in (0, 1, f.minus_one)]


@pytest.mark.parametrize('p, n', [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_jacobsthal_closed_form(p, n):
    f = make_field(p, n)
    for a2, a1, a0 in itertools.product(range(1, f.q), f.elements(), f.elements()):
        assert jacobsthal_quadratic(f, a2, a1, a0) == jacobsthal_quadratic_brute(f, a2, a1, a0)


@pytest.mark.slow
@pytest.mark.parametrize('p, n', [(11, 1), (13, 1), (5, 2), (3, 3), (7, 2)])
def test_jacobsthal_closed_form_exhaustive(p, n):
    f = make_field(p, n)
    for a2, a1, a0 in itertools.product(range(1, f.q), f.elements(), f.elements()):
        assert jacobsthal_quadratic(f, a2, a1, a0) == jacobsthal_quadratic_brute(f, a2, a1, a0)


def test_jacobsthal_zero_leading_coefficient():
    with pytest.raises(InvalidInput):
        jacobsthal_quadratic(make_field(5, 1), 0, 1, 1)


@pytest.mark.parametrize('p, n', FIELDS)
def test_pair_counts_S(p, n):
    f = make_field(p, n)
    enumerated = pair_counts_S(f)
    assert enumerated == pair_counts_S_predicted(f, 'proof')
    assert enumerated.total() == f.q - 2


def test_pair_counts_S_opening_convention_differs_when_minus_one_is_not_square():
    f = make_field(7, 1)
    assert pair_counts_S_predicted(f, 'opening') != pair_counts_S(f)
    assert pair_counts_S_predicted(f, 'opening')[(1, -1)] == 2
    assert pair_counts_S(f)[(-1, 1)] == 2


@pytest.mark.parametrize('p, n', FIELDS)
def test_pair_counts_T(p, n):
    f = make_field(p, n)
    assert pair_counts_T(f) == pair_counts_T_closed(f)


def test_check_generic_c():
    f = make_field(7, 1)
    for c in (0, 1, 6):
        with pytest.raises(InvalidInput):
            check_generic_c(f, c)
    check_generic_c(f, 3)


@pytest.mark.parametrize('p, n, c, C', [(5, 1, 2, 1), (3, 2, 3, 5)])
def test_abc_sums_point_values(p, n, c, C):
    f = make_field(p, n)
    s = abc_sums(f, c)
    assert s.C == C
    assert quartic_reduction_check(f, c, s) == C + 1


@pytest.mark.parametrize('p, n', FIELDS)
def test_quad_counts_predicted(p, n):
    f = make_field(p, n)
    for c in generic_cs(f):
        enumerated = quad_counts(f, c)
        assert enumerated.total() == f.q - 4
        assert quad_counts_predicted(f, c, abc_sums(f, c)) == enumerated


@pytest.mark.parametrize('p, n', ETA1_FIELDS)
def test_quad_counts_printed_forms(p, n):
    f = make_field(p, n)
    for c in generic_cs(f):
        enumerated = quad_counts(f, c)
        printed = quad_counts_closed(f, c, abc_sums(f, c))
        for key in QUAD_KEYS:
            if key not in TYPO_KEYS:
                assert printed[key] == enumerated[key], (c, key)


@pytest.mark.parametrize('p, n', ETA1_FIELDS)
def test_quad_counts_printed_forms_with_vanishing_factor(p, n):
    f = make_field(p, n)
    for c in generic_cs(f):
        e = eta_profile(f, c)
        s = abc_sums(f, c)
        printed = quad_counts_closed(f, c, s)
        enumerated = quad_counts(f, c)
        for key in TYPO_KEYS:
            assert printed[key] * 16 == f.q + 2 + s.C
            if e.one_minus_c == e.one_plus_c:
                assert printed[key] == enumerated[key]


def test_quad_counts_printed_forms_disagree_somewhere():
    f = make_field(13, 1)
    disagreements = 0
    for c in generic_cs(f):
        printed = quad_counts_closed(f, c, abc_sums(f, c))
        enumerated = quad_counts(f, c)
        disagreements += sum(printed[key] != enumerated[key] for key in TYPO_KEYS)
    assert disagreements > 0


def test_quad_counts_printed_forms_need_minus_one_square():
    f = make_field(7, 1)
    with pytest.raises(UnsupportedCase):
        quad_counts_closed(f, 2, abc_sums(f, 2))


@pytest.mark.slow
@pytest.mark.parametrize('p, n', [(29, 1), (37, 1), (7, 2), (3, 4), (13, 2)])
def test_quad_counts_predicted_exhaustive(p, n):
    f = make_field(p, n)
    for c in generic_cs(f):
        assert quad_counts_predicted(f, c, abc_sums(f, c)) == quad_counts(f, c)


@pytest.mark.parametrize('p, n', FIELDS)
def test_eta_profile(p, n):
    f = make_field(p, n)
    for c in generic_cs(f):
        e = eta_profile(f, c)
        assert e.two == eta_two_rule(p, n)
        assert e.minus_one == (1 if f.q % 4 == 1 else -1)
        assert e.c_square_minus_one == (f.mul(c, c) == f.minus_one)
