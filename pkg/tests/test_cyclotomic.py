import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistcode.cyclotomic import Cyclotomic, cyclotomic_polynomial, parse, zeta
from twistcode.errors import ParseError

CONDUCTORS = [1, 2, 3, 4, 5, 8, 12, 15]


@st.composite
def elements(draw, conductors=CONDUCTORS):
    n = draw(st.sampled_from(conductors))
    terms = draw(st.lists(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(-4, 4)), max_size=4))
    den = draw(st.integers(1, 3))
    return Cyclotomic.from_terms(n, [(k, Fraction(c, den)) for k, c in terms])


def close(a, b):
    return abs(complex(a) - complex(b)) < 1e-9


def test_roots_of_unity_sum_to_zero():
    assert sum((zeta(5, k) for k in range(5)), Cyclotomic.rational(0)) == 0


def test_i_squared():
    assert zeta(4) ** 2 == -1


def test_golden_ratio_value():
    assert abs(complex(zeta(5) + zeta(5, 4)) - (5**0.5 - 1) / 2) < 1e-12


def test_mixed_conductors_meet_in_lcm():
    assert zeta(3) * zeta(5) == zeta(15, 8)


def test_golden_product():
    assert (zeta(5) + zeta(5, 4)) * (zeta(5, 2) + zeta(5, 3)) == -1


def test_equal_values_hash_equal_across_conductors():
    a, b = zeta(15, 5), zeta(3)
    assert a == b and hash(a) == hash(b)
    assert a.minimal().conductor == 3


def test_cyclotomic_polynomial():
    assert cyclotomic_polynomial(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_printer_is_minimal_and_descending():
    assert str(parse("z5^3+z5^2+1")) == "z5^3+z5^2+1"
    assert str(parse("z15^5")) == "z3"
    assert str(Cyclotomic.rational(Fraction(-1, 2))) == "-1/2"


@pytest.mark.parametrize("text", ["3*z5+", "z0", "zq^2", "1/0", "z5^^2", ""])
def test_malformed_literals(text):
    with pytest.raises(ParseError):
        parse(text)


@given(elements(), elements(), elements())
@settings(max_examples=80, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


@given(elements(), elements())
@settings(max_examples=80, deadline=None)
def test_embedding_is_a_homomorphism(a, b):
    assert close(a * b, complex(a) * complex(b))
    assert close(a + b, complex(a) + complex(b))
    assert close(a.conjugate(), complex(a).conjugate())


@given(elements())
@settings(max_examples=60, deadline=None)
def test_inverse(a):
    if a.is_zero():
        return
    assert a * a.inverse() == 1


@given(elements())
@settings(max_examples=60, deadline=None)
def test_parse_round_trip(a):
    assert parse(str(a)) == a


@given(elements(conductors=[5, 15]), elements(conductors=[5, 15]))
@settings(max_examples=40, deadline=None)
def test_galois_is_a_field_automorphism(a, b):
    for k in (2, 7, 11):
        assert (a * b).lift(15).galois(k) == a.lift(15).galois(k) * b.lift(15).galois(k)


def test_galois_matches_numeric_substitution():
    z = zeta(5, 1) + 2 * zeta(5, 3)
    assert abs(complex(z.galois(2)) - (cmath.exp(4j * cmath.pi / 5) + 2 * cmath.exp(12j * cmath.pi / 5))) < 1e-12
