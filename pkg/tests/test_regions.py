from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nlbdistill.errors import DegreeError
from nlbdistill.polynomial import DeltaPolynomial as P
from nlbdistill.search import AlgebraicRoot, distillation_region, max_on_unit, real_roots

V = P.of(7, 4)


@pytest.mark.parametrize("vprime, text", [
    (P.of(7, 8, -8), "(0, 1/2)"),
    (P.of(7, 9, -6), "(0, 5/6)"),
    (P.of(7, 9, -10), "(0, 1/2)"),
    (P.of(7, 6, -4), "(0, 1/2)"),
    (P.of(7, 6), "(0, 1]"),
    (P.of(7, 10, -4), "(0, 1]"),
    (P.of(7, -2, 8), "(3/4, 1]"),
    (P.of(7, 4), "∅"),
    (P.of(7, 2), "∅"),
])
def test_known_regions(vprime, text):
    assert str(distillation_region(vprime, V)) == text


def test_double_root_splits_region():
    # (2δ - 1)^2 > 0 everywhere except 1/2
    region = distillation_region(P.of(1, -4, 4), P.of())
    assert str(region) == "(0, 1/2) ∪ (1/2, 1]"
    assert not region.contains(F(1, 2)) and region.contains(F(1, 4))


def test_irrational_endpoint_is_isolated():
    region = distillation_region(P.of(0, 0, 2), P.of(1))  # 2δ² > 1
    (iv,) = region.intervals
    assert isinstance(iv.lo, AlgebraicRoot) and iv.hi == 1 and iv.hi_closed
    assert iv.lo.lo ** 2 * 2 < 1 < iv.lo.hi ** 2 * 2
    assert iv.lo.hi - iv.lo.lo <= F(1, 2 ** 20)


def test_absolute_comparison():
    # V' = -5, V = 4δ - 3: raw never, |V'| > |V| everywhere in (0, 1]
    assert distillation_region(P.of(-5), P.of(-3, 4)).is_empty
    assert str(distillation_region(P.of(-5), P.of(-3, 4), absolute=True)) == "(0, 1]"


def test_degree_limit():
    with pytest.raises(DegreeError):
        distillation_region(P.of(0, 0, 0, 0, 1), V)


def test_real_roots_exact():
    # -(δ - 3/8)(δ - 1) = -δ² + (11/8)δ - 3/8
    assert real_roots(P.of(F(-3, 8), F(11, 8), -1), 0, 1) == [F(3, 8), F(1)]
    # roots at 0 and outside (0, 1] are excluded
    assert real_roots(P.of(0, -2, 1), 0, 1) == []


def test_max_on_unit():
    assert max_on_unit(P.of(0, 8, -8)) == 2  # peak at 1/2
    assert max_on_unit(P.of(0, 6)) == 6


small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@given(small, small, small)
def test_endpoints_are_sign_changes(c0, c1, c2):
    gap = P.of(c0, c1, c2)
    region = distillation_region(gap, P.of())
    eps = F(1, 10 ** 9)
    for iv in region.intervals:
        for end, inside in ((iv.lo, +1), (iv.hi, -1)):
            if isinstance(end, AlgebraicRoot):
                assert gap(end.lo) * gap(end.hi) < 0
                continue
            if end in (0, 1):
                continue
            assert gap(end + inside * eps) > 0 and gap(end) == 0
    # membership agrees with the sign at sampled rationals
    for k in range(1, 41):
        d = F(k, 40)
        in_region = any(
            (d > (iv.lo if isinstance(iv.lo, F) else iv.lo.hi)) and
            (d < (iv.hi if isinstance(iv.hi, F) else iv.hi.lo) or (iv.hi_closed and d == iv.hi))
            for iv in region.intervals
        )
        if in_region:
            assert gap(d) > 0
        elif gap(d) > 0:
            # only possible inside an isolating interval of an algebraic endpoint
            assert any(isinstance(e, AlgebraicRoot) and e.lo <= d <= e.hi
                       for iv in region.intervals for e in (iv.lo, iv.hi))
