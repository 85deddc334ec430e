import pytest
from sympy import primerange

from common.charsum import abc_sums
from common.curve import (count_points, count_x3_minus_x, cornacchia, hasse_ok, lucas_v, trace_lift,
                          trace_via_subfield, trace_x3_minus_x)
from common.errors import InvalidInput
from common.ffield import make_field, split_prime_power

def curve_cs(f):
    return [c for c in f.elements() if c not in (0, 1, f.minus_one)]


def test_count_points_f5():
    trace = count_points(make_field(5, 1), 2)
    assert (trace.count, trace.t, trace.s) == (8, -2, 2)
    assert trace.to_json() == {'q': 5, 'c2_index': 4, 'count': 8, 't': -2, 's': 2, 'base_field': 5, 'lifted': False}


@pytest.mark.parametrize('c', [0, 1, 4])
def test_count_points_singular(c):
    with pytest.raises(InvalidInput):
        count_points(make_field(5, 1), c)


def test_x3_minus_x_point_values():
    assert count_x3_minus_x(make_field(5, 1)) == 8
    assert count_x3_minus_x(make_field(13, 1)) == 8
    assert count_x3_minus_x(make_field(3, 2)) == 16
    assert trace_x3_minus_x(7) == 0
    assert trace_x3_minus_x(5) == -2


def test_lucas_v():
    assert [lucas_v(1, -1, m) for m in range(6)] == [2, 1, 3, 4, 7, 11]
    assert lucas_v(0, 3, 2) == -6
    with pytest.raises(InvalidInput):
        lucas_v(1, 1, -1)


def test_trace_lift():
    assert trace_lift(0, 3, 2) == -6
    assert trace_lift(-2, 5, 1) == -2
    with pytest.raises(InvalidInput):
        trace_lift(0, 3, 0)
    with pytest.raises(InvalidInput):
        trace_lift(5, 3, 2)


def test_hasse_ok():
    assert hasse_ok(6, 9)
    assert not hasse_ok(7, 9)


@pytest.mark.parametrize('p, a, b', [(5, -1, 2), (13, 3, 2), (17, 1, 4)])
def test_cornacchia_point_values(p, a, b):
    ts = cornacchia(p)
    assert (ts.a, ts.b) == (a, b)


@pytest.mark.parametrize('p', [3, 7, 9, 15])
def test_cornacchia_rejects(p):
    with pytest.raises(InvalidInput):
        cornacchia(p)


def test_cornacchia_all_small_primes():
    for p in primerange(3, 500):
        assert trace_x3_minus_x(p) == p + 1 - count_x3_minus_x(make_field(p, 1)), p
        if p % 4 == 3:
            assert trace_x3_minus_x(p) == 0
            continue
        ts = cornacchia(p)
        assert ts.a ** 2 + ts.b ** 2 == p
        assert ts.b > 0 and ts.b % 2 == 0
        assert (ts.a + ts.b) % 4 == 1
        assert 2 * ts.a == p + 1 - count_x3_minus_x(make_field(p, 1))


@pytest.mark.parametrize('p, n', [(3, 2), (5, 2), (3, 3)])
def test_trace_via_subfield(p, n):
    f = make_field(p, n)
    for c in curve_cs(f):
        lifted = trace_via_subfield(f, c)
        assert lifted.count == count_points(f, c).count


def test_trace_via_subfield_lifts_from_prime_field():
    f = make_field(3, 2)
    lifted = trace_via_subfield(f, f.element([0, 1]))  # c² = -1 appartient à F_3
    assert lifted.lifted and lifted.base_field == 3


@pytest.mark.slow
@pytest.mark.parametrize('p, n', [(7, 2), (3, 4), (11, 2), (5, 3)])
def test_trace_via_subfield_exhaustive(p, n):
    f = make_field(p, n)
    for c in curve_cs(f):
        assert trace_via_subfield(f, c).count == count_points(f, c).count


@pytest.mark.slow
@pytest.mark.parametrize('q', [3, 5, 7, 9, 11, 13, 23, 25, 27, 49, 81, 121, 125, 169, 243, 343])
def test_hasse_and_bridge_exhaustive(q):
    f = make_field(*split_prime_power(q))
    for c in curve_cs(f):
        trace = count_points(f, c)
        assert hasse_ok(trace.t, f.q)
        assert abc_sums(f, c).C == -trace.t - 1
