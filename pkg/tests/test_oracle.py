import pytest

from common.errors import InvalidInput
from common.ffield import make_field, split_prime_power
from common.oracle import (N4_DIRECT_QMAX, a0_row, c_uniformity, ddt_row, ddt_table, default_exponent, moment_check, n4,
                           n4_closed_cminus1, n4_direct, scaled_row, spectrum_brute)
from common.spectrum import Spectrum

def field_of(q):
    return make_field(*split_prime_power(q))


@pytest.mark.parametrize('p, n, c, expected', [
    (5, 1, 2, {0: 2, 1: 2, 3: 1}),
    (7, 1, 6, {0: 4, 2: 2, 3: 1}),
    (7, 1, 0, {0: 3, 1: 1, 2: 3}),
    (3, 1, 2, {0: 1, 1: 1, 2: 1}),
    (3, 2, 3, {0: 2, 1: 5, 2: 2}),
])
def test_spectrum_brute_point_values(p, n, c, expected):
    f = make_field(p, n)
    assert spectrum_brute(f, default_exponent(f), c) == Spectrum(f.q, expected)


def test_ddt_row_f5():
    row = ddt_row(make_field(5, 1), 3, 2, 1)
    assert row.counts == (1, 3, 1, 0, 0)
    assert row.as_dict() == {0: 1, 1: 3, 2: 1}
    assert row.total() == 5


@pytest.mark.parametrize('q', [5, 7, 9, 25])
def test_scaled_row(q):
    f = field_of(q)
    d = default_exponent(f)
    for c in (0, 2, f.minus_one):
        for a in range(1, f.q):
            assert scaled_row(f, d, c, a) == ddt_row(f, d, c, a)


def test_scaled_row_needs_nonzero_a():
    with pytest.raises(InvalidInput):
        scaled_row(make_field(5, 1), 3, 2, 0)


def test_a0_row():
    f = make_field(7, 1)
    assert a0_row(f, 4, 0).counts == ddt_row(f, 4, 0, 0).counts
    with pytest.raises(InvalidInput):
        a0_row(f, 4, 1)


def test_ddt_table():
    f = make_field(7, 1)
    table = ddt_table(f, 4, 6)
    assert len(table) == 7
    assert all(row.total() == 7 for row in table)
    assert table[1] == ddt_row(f, 4, 6, 1)


def test_negative_exponent():
    with pytest.raises(InvalidInput):
        ddt_row(make_field(5, 1), -1, 2, 1)


def test_c_uniformity():
    f = make_field(5, 1)
    assert c_uniformity(f, 3, 2) == 3
    assert c_uniformity(make_field(7, 1), 4, 6) == 3


@pytest.mark.parametrize('p, n, c, value', [(7, 1, 6, 115), (3, 1, 2, 15)])
def test_n4_point_values(p, n, c, value):
    f = make_field(p, n)
    assert n4(f, default_exponent(f), c) == value


@pytest.mark.parametrize('q', [3, 5, 7, 9])
def test_n4_direct(q):
    f = field_of(q)
    d = default_exponent(f)
    for c in f.elements():
        assert n4_direct(f, d, c) == n4(f, d, c)


def test_n4_direct_limit():
    f = make_field(19, 2)
    assert f.q > N4_DIRECT_QMAX
    with pytest.raises(InvalidInput):
        n4_direct(f, 3, 2)


@pytest.mark.parametrize('q', [3, 5, 7, 9, 11, 13, 25, 27])
def test_n4_closed_cminus1(q):
    f = field_of(q)
    assert n4_closed_cminus1(f) == n4(f, default_exponent(f), f.minus_one)


@pytest.mark.slow
@pytest.mark.parametrize('q', [23, 49, 81, 121, 125, 169, 243, 343])
def test_n4_closed_cminus1_large(q):
    f = field_of(q)
    assert n4_closed_cminus1(f) == n4(f, default_exponent(f), f.minus_one)


def test_moment_check_f7():
    f = make_field(7, 1)
    d = default_exponent(f)
    report = moment_check(spectrum_brute(f, d, 6), n4(f, d, 6), d, f)
    assert report.sum2 == 17
    assert report.expected_sum2 == 17
    assert report.consistent
    assert report.to_json()['gcd_d'] == 2


def test_moment_check_without_n4():
    f = make_field(5, 1)
    report = moment_check(spectrum_brute(f, 3, 2), None, 3, f)
    assert report.consistent and report.expected_sum2 is None
    bad = moment_check(Spectrum(5, {0: 1, 1: 4}), None, 3, f)
    assert not bad.consistent


@pytest.mark.parametrize('q', [3, 5, 7, 9, 11, 13, 25, 27])
def test_moment_identities(q):
    f = field_of(q)
    d = default_exponent(f)
    for c in f.elements():
        if c == 1:
            continue
        assert moment_check(spectrum_brute(f, d, c), n4(f, d, c), d, f).consistent, c


@pytest.mark.slow
@pytest.mark.parametrize('q', [23, 49, 81, 121, 125])
def test_moment_identities_large(q):
    f = field_of(q)
    d = default_exponent(f)
    for c in f.elements():
        if c != 1:
            assert moment_check(spectrum_brute(f, d, c), n4(f, d, c), d, f).consistent, c
