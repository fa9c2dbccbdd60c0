import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fuzzyecc.field import (
    FieldElement,
    FieldMismatchError,
    InvalidModulusError,
    PrimeField,
    auto_multiplier,
    fuzzy_modmul,
    inv,
    make_field,
    xgcd,
)

P160 = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFF7FFFFFFF
PRIMES = [5, 17, 23, 1009, 65537, 2**61 - 1, P160]


@pytest.mark.parametrize("p", [0, 1, 2, 3, 4, 9, 15, 561, 2**61 + 1, -7])
def test_rejects_bad_moduli(p):
    with pytest.raises(InvalidModulusError):
        make_field(p)


def test_rejects_non_int_modulus():
    with pytest.raises(InvalidModulusError):
        make_field(23.0)


@given(st.integers(min_value=4, max_value=10**6))
def test_primality_agrees_with_sympy(n):
    ok = n % 2 == 1 and sympy.isprime(n)
    if ok:
        assert make_field(n).p == n
    else:
        with pytest.raises(InvalidModulusError):
            make_field(n)


def test_elements_are_canonical():
    F = make_field(23)
    assert F(-1).value == 22
    assert F(23).value == 0
    assert F(5) == 28 and F(5) == F(28)
    assert F.zero == 0 and F.one == 1


def test_mixing_fields_fails():
    with pytest.raises(FieldMismatchError):
        make_field(23)(1) + make_field(29)(1)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        inv(make_field(17)(0))


@given(st.integers(), st.integers())
def test_xgcd_bezout(a, b):
    g, s, t = xgcd(a, b)
    assert s * a + t * b == g
    assert g == sympy.gcd(a, b)


@settings(max_examples=300)
@given(st.sampled_from(PRIMES), st.data())
def test_field_axioms(p, data):
    F = make_field(p)
    x, y, z = (F(data.draw(st.integers(0, p - 1))) for _ in range(3))
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x - x == 0 and x + (-x) == 0
    assert (x * y).value == x.value * y.value % p
    if x:
        assert x * inv(x) == 1
        assert inv(x).value == pow(x.value, -1, p)
        assert x**-1 == inv(x)
        assert y / x * x == y


def test_field_element_needs_field():
    F = make_field(23)
    e = FieldElement(30, F)
    assert int(e) == 7 and hash(e) == hash(F(7))
    assert isinstance(F, PrimeField) and F.byte_length == 1


# -- repeated-subtraction multiply ------------------------------------------


def test_modmul_trace_26_24_17():
    r, tr = fuzzy_modmul(26, 24, make_field(17), t=5)
    assert tr.raw_sum == 29
    assert r.value == 12
    assert [s.term for s in tr.steps] == [-1 * 85, -2 * 85, -4 * 85, 8 * 26, 16 * 26]
    assert [s.bit for s in tr.steps] == [0, 0, 0, 1, 1]
    assert tr.modulus_multiple == 85
    assert tr.reduction_steps == 1


def test_modmul_auto_t():
    assert auto_multiplier(26, 24, 17) == 5
    _, tr = fuzzy_modmul(26, 24, make_field(17))
    assert tr.multiplier_t == 5


def test_trivial_product():
    for p in (5, 17, 1009):
        assert fuzzy_modmul(1, 1, make_field(p))[0] == 1


def test_y_without_zero_bits_uses_t0():
    r, tr = fuzzy_modmul(26, 31, make_field(17))
    assert tr.multiplier_t == 0
    assert tr.raw_sum == 26 * 31
    assert r.value == 26 * 31 % 17


def test_rejects_nonpositive_t():
    with pytest.raises(ValueError):
        fuzzy_modmul(3, 4, make_field(17), t=0)


@settings(max_examples=300)
@given(st.sampled_from(PRIMES), st.data())
def test_modmul_matches_plain_product(p, data):
    x = data.draw(st.integers(0, p - 1))
    y = data.draw(st.integers(0, p - 1))
    t = data.draw(st.none() | st.integers(1, 50))
    r, tr = fuzzy_modmul(x, y, make_field(p), t)
    assert r.value == x * y % p
    # raw sum is X*Y minus the m.t multiples for the zero bits
    zero_weight = sum(1 << s.bit_position for s in tr.steps if not s.bit)
    assert tr.raw_sum == x * y - tr.modulus_multiple * zero_weight
    assert sum(s.term for s in tr.steps) == tr.raw_sum
    assert tr.raw_sum - tr.reduction_steps * p * (1 if tr.raw_sum >= 0 else -1) == r.value


@given(st.integers(1, 1000), st.integers(1, 1000))
def test_auto_t_is_locally_optimal(x, y):
    p = 1009
    t = auto_multiplier(x, y, p)
    zero_weight = (1 << y.bit_length()) - 1 - y
    if zero_weight == 0:
        assert t == 0
        return

    def raw(tt):
        return abs(x * y - p * tt * zero_weight)

    assert t >= 1
    assert raw(t) <= raw(t + 1)
    if t > 1:
        assert raw(t) <= raw(t - 1)
