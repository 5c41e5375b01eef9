from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import signed_fractions, unit_fractions
from nlbdistill.boxes import (
    InputDomain,
    TripartiteBox,
    class_box,
    correlated_box,
    ghz_box,
    local_vertices,
    noisy_class_box,
    noisy_ghz,
)
from nlbdistill.errors import DegreeError, DomainError, SamplesError, SignalingError
from nlbdistill.inequalities import (
    BellInequality,
    CorrelatorTerm,
    builtin_inequality,
    class2_inequality,
    class41_inequality,
    correlator,
    eval_inequality,
    value_poly_in_delta,
)
from nlbdistill.polynomial import DeltaPolynomial


def test_term_parsing_canonicalises_order():
    t = CorrelatorTerm("CA", (1, 0))
    assert t.parties == "AC" and t.settings == (0, 1)
    assert CorrelatorTerm.parse("A0B1C1") == CorrelatorTerm("ABC", (0, 1, 1))
    with pytest.raises(ValueError):
        CorrelatorTerm.parse("A2")
    with pytest.raises(ValueError):
        CorrelatorTerm("AA", (0, 1))


def test_duplicate_terms_rejected():
    with pytest.raises(ValueError):
        BellInequality.from_pairs([(1, "A0B0"), (2, "B0A0")])


def test_correlators_by_hand():
    t = CorrelatorTerm.parse("A0B0C0")
    assert correlator(ghz_box(), t) == 1
    assert correlator(ghz_box(), CorrelatorTerm.parse("A0B1C1")) == -1
    assert correlator(noisy_ghz(F(1, 2), F(1, 4)), t) == F(1, 2)
    assert correlator(class_box(44), CorrelatorTerm.parse("A0")) == 0


def test_class2_values():
    assert eval_inequality(ghz_box(), class2_inequality()) == 4
    assert eval_inequality(noisy_ghz(F(3, 4), F(1, 4)), class2_inequality()) == 0
    ineq = class2_inequality()
    assert (ineq.lower, ineq.upper) == (-2, 2)


@given(signed_fractions, signed_fractions)
def test_class2_on_noisy_ghz(eps, delta):
    assert eval_inequality(noisy_ghz(eps, delta), class2_inequality()) == eps - 3 * delta


def test_class41_reference_values():
    ineq = class41_inequality()
    assert len(ineq.terms) == 18 and ineq.upper == 7
    for cls in (44, 45, 46):
        assert eval_inequality(class_box(cls), ineq) == 11
    assert eval_inequality(correlated_box(), ineq) == 7


def test_class41_local_bound_holds_on_all_vertices():
    ineq = class41_inequality()
    values = [eval_inequality(v, ineq) for v in local_vertices()]
    assert max(values) == 7


@given(unit_fractions)
def test_class41_on_noisy_class_box(delta):
    assert eval_inequality(noisy_class_box(45, delta), class41_inequality()) == 4 * delta + 7


def test_value_poly_in_delta():
    poly = value_poly_in_delta(lambda d: noisy_class_box(46, d), class41_inequality(), 1)
    assert poly == DeltaPolynomial.of(7, 4)
    again = value_poly_in_delta(lambda d: noisy_class_box(46, d), class41_inequality(), 1, [F(1, 3), F(2, 3)])
    assert again == poly


def test_value_poly_errors():
    with pytest.raises(SamplesError):
        value_poly_in_delta(lambda d: noisy_class_box(46, d), class41_inequality(), 2, [0, 1])
    with pytest.raises(DegreeError):
        value_poly_in_delta(lambda d: noisy_class_box(46, d * d), class41_inequality(), 1, [0, F(1, 2), 1])


def test_even_parity_completion_and_errors():
    # A0 alone completes to 000 and 011; noisy GHZ marginals agree
    assert correlator(noisy_ghz(F(1, 2), F(1, 3)), CorrelatorTerm.parse("A0")) == 0
    with pytest.raises(DomainError):
        correlator(ghz_box(), CorrelatorTerm.parse("A0B0C1"))
    signalling = TripartiteBox.from_function(
        InputDomain.EVEN_PARITY, lambda a, b, c, x, y, z: 1 if (a, b, c) == (y, 0, 0) else 0
    )
    with pytest.raises(SignalingError):
        correlator(signalling, CorrelatorTerm.parse("A0"))


def test_builtin_lookup_and_str():
    assert builtin_inequality("CLASS2") == class2_inequality()
    with pytest.raises(ValueError):
        builtin_inequality("chsh")
    assert str(class2_inequality()) == "-2 <= <A0B0C0> - <A0B1C1> - <A1B0C1> - <A1B1C0> <= 2"
