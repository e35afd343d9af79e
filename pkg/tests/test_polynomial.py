from fractions import Fraction

from hypothesis import given, strategies as st

from taugraph import polynomial as P

frac = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
coeffs = st.lists(frac, max_size=6)
divisor_coeffs = st.tuples(coeffs, frac.filter(bool)).map(lambda t: t[0] + [t[1]])


@given(coeffs, coeffs)
def test_mul_commutes(a, b):
    assert P.mul(P.poly(a), P.poly(b)) == P.mul(P.poly(b), P.poly(a))


@given(coeffs, divisor_coeffs)
def test_divmod_reconstructs(a, b):
    p, q = P.poly(a), P.poly(b)
    quo, rem = P.divmod_poly(p, q)
    assert P.add(P.mul(quo, q), rem) == p
    assert not rem or P.degree(rem) < P.degree(q)


@given(coeffs, frac)
def test_evaluate_is_ring_map(a, t):
    p = P.poly(a)
    sq = P.mul(p, p)
    assert P.evaluate(sq, t) == P.evaluate(p, t) ** 2


def test_trim_and_degree():
    assert P.poly([1, 2, 0, 0]) == (Fraction(1), Fraction(2))
    assert P.degree(P.monomial(5)) == 5


def test_rational_roots():
    # (2x - 1)(x + 3) x
    p = P.mul(P.mul(P.poly([-1, 2]), P.poly([3, 1])), P.monomial(1))
    assert P.rational_roots(p) == [Fraction(-3), Fraction(0), Fraction(1, 2)]
    assert P.rational_roots(P.poly([1, 0, 1])) == []


def test_monic_and_format():
    p, lc = P.monic(P.poly([0, 0, 0, 0, 0, 0, 0, 0, 1, -1]))
    assert lc == -1
    assert P.format_poly(p) == "x^9 - x^8"
    assert P.format_poly(P.poly([0, 0, Fraction(1, 2)])) == "1/2*x^2"
    assert P.format_poly(P.poly([0, 0, -1, 1])) == "x^3 - x^2"
