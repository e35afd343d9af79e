import pytest
from hypothesis import given, strategies as st

from taugraph.algebra import (BackendMismatch, DomainError, Element, canonical, canonicalize, divisors,
                              exact_divide, is_canonical, log2_floor, measure, product)
from taugraph.domains import INTEGERS, QuadraticDomain

from oracles import prime_factorization

nonzero = st.integers(-10_000, 10_000).filter(lambda n: n not in (0, 1, -1))


def test_zero_rejected():
    with pytest.raises(DomainError):
        INTEGERS.element(0)


@given(nonzero)
def test_canonicalize_roundtrip(n):
    x = INTEGERS.element(n)
    c, u = canonicalize(x)
    assert u.is_unit and c * u == x and is_canonical(c)


@given(nonzero)
def test_integer_divisors_match_trial_division(n):
    ds = [d.value for d in divisors(INTEGERS.element(n))]
    expected = sorted(d for d in range(2, abs(n) + 1) if n % d == 0)
    assert ds == expected


def test_divisors_reject_units():
    with pytest.raises(DomainError):
        divisors(INTEGERS.element(-1))


def test_exact_divide():
    assert exact_divide(INTEGERS.element(12), INTEGERS.element(-4)).value == -3
    assert exact_divide(INTEGERS.element(12), INTEGERS.element(5)) is None


def test_mixed_domains_refused():
    a = INTEGERS.element(2)
    b = QuadraticDomain(-5).element((2, 0))
    with pytest.raises(BackendMismatch):
        a * b
    with pytest.raises(BackendMismatch):
        a < b


@given(st.integers(2, 5000))
def test_measure_is_multiplicative(n):
    x = INTEGERS.element(n)
    fs = [INTEGERS.element(p) for p, e in prime_factorization(n).items() for _ in range(e)]
    assert measure(product(fs, INTEGERS)) == measure(x) == n


def test_log2_floor():
    assert [log2_floor(n) for n in (1, 2, 3, 4, 1023, 1024)] == [0, 1, 1, 2, 9, 10]


def test_canonical_is_idempotent_on_quadratic():
    dom = QuadraticDomain(-1)
    for a in range(-4, 5):
        for b in range(-4, 5):
            if (a, b) == (0, 0):
                continue
            x = dom.element((a, b))
            c = canonical(x)
            assert canonical(c) == c
            assert canonical(Element(dom, dom.mul(x.value, (0, 1)))) == c
