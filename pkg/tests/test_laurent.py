import pytest
from hypothesis import given
from hypothesis import strategies as st

from knotwkb.errors import MalformedInput, PoleAtZero
from knotwkb.laurent import ALPHA, ONE, Z, ZERO, LaurentPoly1H, LaurentPoly2

exps = st.integers(-4, 4)
polys = st.dictionaries(st.tuples(exps, exps), st.integers(-5, 5), max_size=5).map(LaurentPoly2)
z_polys = st.dictionaries(st.tuples(exps, st.integers(0, 4)), st.integers(-5, 5), max_size=5).map(LaurentPoly2)
polys1 = st.dictionaries(exps, st.integers(-5, 5), max_size=5).map(LaurentPoly1H)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + ZERO == p and p * ONE == p
    assert p - p == ZERO


@given(polys, polys)
def test_mirror_is_ring_involution(p, q):
    assert p.mirror().mirror() == p
    assert (p * q).mirror() == p.mirror() * q.mirror()
    assert (p + q).mirror() == p.mirror() + q.mirror()


@given(z_polys, z_polys)
def test_specialization_is_homomorphism(p, q):
    # z -> s - 1/s is not a unit, so only nonnegative z powers map into Z[s, 1/s]
    s = LaurentPoly1H.mono(1, 1)
    a, z = s ** 2, s - s ** -1
    assert (p * q).specialize(a, z) == p.specialize(a, z) * q.specialize(a, z)
    assert (p + q).specialize(a, z) == p.specialize(a, z) + q.specialize(a, z)


@given(polys)
def test_text_and_json_round_trip(p):
    assert LaurentPoly2.parse(p.to_text()) == p
    assert LaurentPoly2.from_json(p.to_json()) == p


@given(polys1, polys1)
def test_exact_division_inverts_multiplication(p, q):
    if not q:
        return
    assert (p * q).exact_div(q) == p


def test_text_format():
    p = -ALPHA ** 4 + 2 * ALPHA ** 2 + ALPHA ** 2 * Z ** 2
    assert p.to_text() == "-a^4 + 2*a^2 + a^2*z^2"
    assert str(ZERO) == "0"
    assert LaurentPoly2.parse("a^-1*z^-1 - a*z^-1") == (ALPHA ** -1 - ALPHA) * Z ** -1


def test_json_order_is_lexicographic():
    p = LaurentPoly2.parse("z + a^-1 + 3*a*z^-2")
    assert p.to_json() == [[1, -1, 0], [1, 0, 1], [3, 1, -2]]


def test_half_integer_rendering():
    s = LaurentPoly1H.mono(1, 1)
    assert (-(s ** 5) - s).to_text() == "-t^(5/2) - t^(1/2)"
    assert (s ** 4 - 1).to_text("s") == "s^4 - 1"


def test_errors():
    with pytest.raises(PoleAtZero):
        (Z ** -1).eval_complex(1, 0)
    with pytest.raises(MalformedInput):
        LaurentPoly2.parse("a^x")
    with pytest.raises(ValueError):
        (ALPHA + 1) ** -1
    with pytest.raises(ArithmeticError):
        LaurentPoly1H.parse("s + 1").exact_div(LaurentPoly1H.parse("s - 1"))


def test_eval_complex():
    assert (ALPHA * Z + 1).eval_complex(2, 3j) == 1 + 6j
