from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from selfcross.forms import AngleForm
from selfcross.positivity import PositivityCertificate, Region, prove_positive, verify_positive

x, y = AngleForm.var(1), AngleForm.var(2)
BOX = Region((x, y, 1 - x, 1 - y))


def test_strictness_carries_through():
    cert = prove_positive(BOX, x + y)
    assert cert is not None and cert.constant == 0
    assert verify_positive(BOX, cert)


def test_constant_margin():
    cert = prove_positive(BOX, 3 - x - y)
    assert cert.constant == 1


def test_negative_somewhere():
    assert prove_positive(BOX, x - y) is None
    assert prove_positive(BOX, Fraction(1, 2) - x) is None


def test_loose_constraints_alone_are_not_enough():
    region = Region((), (x, 1 - x))
    assert prove_positive(region, x) is None
    assert prove_positive(region, x + Fraction(1, 5)) is not None


def test_zero_certificate_rejected():
    cert = PositivityCertificate(AngleForm(), (0, 0, 0, 0), (), Fraction(0))
    assert not verify_positive(BOX, cert)


@given(st.fractions(-3, 3, max_denominator=6), st.fractions(-3, 3, max_denominator=6),
       st.fractions(-3, 3, max_denominator=6))
def test_agrees_with_vertex_values(c0, c1, c2):
    target = c0 + c1 * x + c2 * y
    corners = [target({1: a, 2: b}) for a in (0, 1) for b in (0, 1)]
    # on the open square, positive iff nonnegative at the corners and not zero everywhere
    expected = min(corners) >= 0 and any(v > 0 for v in corners)
    got = prove_positive(BOX, target)
    assert (got is not None) == expected
    if got is not None:
        assert verify_positive(BOX, got)
