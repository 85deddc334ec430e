import numpy as np
import pytest

from common.errors import InvalidInput
from common.ffield import (FieldSpec, canonical_modulus, eta_two_rule, is_irreducible, iter_fields, make_field,
                           split_prime_power)


@pytest.mark.parametrize('p, n, modulus', [
    (5, 1, (0, 1)),
    (3, 2, (1, 0, 1)),
    (3, 3, (1, 2, 0, 1)),
])
def test_canonical_modulus(p, n, modulus):
    assert canonical_modulus(p, n) == modulus
    f = make_field(p, n)
    assert f.modulus == modulus
    assert f.q == p ** n


def test_is_irreducible():
    assert is_irreducible([1, 0, 1], 3)
    assert not is_irreducible([2, 0, 1], 3)  # x² - 1
    assert not is_irreducible([0, 1, 1], 5)


@pytest.mark.parametrize('p, n', [(2, 1), (9, 1), (1, 3), (3, 0)])
def test_make_field_rejects_bad_parameters(p, n):
    with pytest.raises(InvalidInput):
        make_field(p, n)


def test_make_field_respects_limit():
    with pytest.raises(InvalidInput):
        make_field(11, 1, limit=10)
    assert make_field(11, 1, limit=11).q == 11


def test_make_field_is_cached():
    assert make_field(7, 2) is make_field(7, 2)


def test_f9_arithmetic():
    f = make_field(3, 2)
    i = f.element([0, 1])
    assert i == 3
    assert f.mul(i, i) == f.minus_one
    assert f.coeffs(f.add(i, 1)) == (1, 1)
    assert f.neg(i) == f.element([0, 2])
    assert f.mul(f.inv(i), i) == 1
    assert f.eta(i) == 1  # tout élément de F_3 est un carré dans F_9
    assert f.subfield_degree(i) == 2
    assert f.subfield_degree(f.minus_one) == 1


def test_element_rejects_bad_coefficients():
    f = make_field(3, 2)
    with pytest.raises(InvalidInput):
        f.element([0, 3])
    with pytest.raises(InvalidInput):
        f.element([1, 1, 1])
    with pytest.raises(InvalidInput):
        f.check(9)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        make_field(5, 1).inv(0)


def test_negative_exponent():
    with pytest.raises(InvalidInput):
        make_field(5, 1).pow(2, -1)


def test_pow_zero_zero():
    assert make_field(5, 1).pow(0, 0) == 1


@pytest.mark.parametrize('p, n', [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (7, 2), (11, 1), (13, 1)])
def test_eta_two_rule(p, n):
    f = make_field(p, n)
    assert f.eta(f.from_int(2)) == eta_two_rule(p, n)


AXIOM_FIELDS = [(3, 1), (5, 1), (7, 1), (11, 1), (3, 2), (5, 2), (7, 2), (3, 3), (3, 4), (11, 2)]

def cayley_tables(f):
    add = np.array([[f.add(a, b) for b in f.elements()] for a in f.elements()])
    mul = np.array([[f.mul(a, b) for b in f.elements()] for a in f.elements()])
    return add, mul


@pytest.mark.parametrize('p, n', AXIOM_FIELDS)
def test_field_axioms(p, n):
    f = make_field(p, n)
    add, mul = cayley_tables(f)
    x = np.arange(f.q)
    a, b, c = x[:, None, None], x[None, :, None], x[None, None, :]
    assert np.array_equal(add[add[a, b], c], add[a, add[b, c]])
    assert np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]])
    assert np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]])
    assert np.array_equal(add, add.T) and np.array_equal(mul, mul.T)
    assert np.array_equal(add[0], x) and np.array_equal(mul[1], x)
    for a in range(1, f.q):
        assert f.mul(a, f.inv(a)) == 1
        assert f.pow(a, f.q - 1) == 1
        assert f.add(a, f.neg(a)) == 0


@pytest.mark.parametrize('p, n', AXIOM_FIELDS)
def test_eta_is_a_character(p, n):
    f = make_field(p, n)
    _, mul = cayley_tables(f)
    eta = np.array([f.eta(a) for a in f.elements()])
    assert eta.sum() == 0
    assert np.array_equal(eta[mul], np.outer(eta, eta))
    assert (f.eta(f.minus_one) == 1) == (f.q % 4 == 1)


@pytest.mark.parametrize('p, n', AXIOM_FIELDS)
def test_tables_agree_with_scalar_arithmetic(p, n):
    f = make_field(p, n)
    add, mul = cayley_tables(f)
    t = f.tables
    x = t.all
    assert np.array_equal(t.add(x[:, None], x[None, :]), add)
    assert np.array_equal(t.mul(x[:, None], x[None, :]), mul)
    assert np.array_equal(t.sub(add, x[None, :]), np.broadcast_to(x[:, None], add.shape))
    assert list(t.power(x, 3)) == [f.pow(b, 3) for b in f.elements()]
    assert list(t.power(x, f.q - 2)) == [f.pow(b, f.q - 2) for b in f.elements()]
    assert list(t.neg(x)) == [f.neg(b) for b in f.elements()]
    assert list(t.eta) == [f.eta(b) for b in f.elements()]


def test_primitive_element_generates():
    f = make_field(5, 2)
    g = f.primitive_element()
    powers = {f.pow(g, k) for k in range(f.q - 1)}
    assert powers == set(range(1, f.q))
    assert np.array_equal(np.sort(f.tables.exp), np.arange(1, f.q))


def test_eta_counts_squares():
    f = make_field(7, 2)
    values = [f.eta(a) for a in f.elements()]
    assert values.count(1) == values.count(-1) == (f.q - 1) // 2


def test_split_prime_power():
    assert split_prime_power(125) == (5, 3)
    assert split_prime_power(7) == (7, 1)
    with pytest.raises(InvalidInput):
        split_prime_power(12)


def test_iter_fields():
    assert [f.q for f in iter_fields([3, 9, 25])] == [3, 9, 25]


def test_to_json():
    assert make_field(3, 2).to_json() == {'p': 3, 'n': 2, 'modulus': [1, 0, 1], 'q': 9}


def test_field_spec_is_frozen():
    f = make_field(3, 1)
    assert isinstance(f, FieldSpec)
    with pytest.raises(Exception):
        f.p = 5
