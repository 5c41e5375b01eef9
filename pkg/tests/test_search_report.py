from collections import defaultdict
from fractions import Fraction as F

import pytest

from nlbdistill.boxes import noisy_ghz
from nlbdistill.errors import DepthMismatchError
from nlbdistill.inequalities import class2_inequality, eval_inequality
from nlbdistill.polynomial import DeltaPolynomial as P
from nlbdistill.search import (
    SearchSpaceSpec,
    WiringMode,
    baseline_poly,
    enumerate_depth2,
    ghz_search_depth2,
    protocol_value_poly,
    search_report,
)
from nlbdistill.wiring import (
    identity_protocol,
    protocol_1,
    protocol_2,
    protocol_3,
    protocol_4,
    protocol_5,
    protocol_ndp,
    wire_with_sink,
)

NON_ADAPTIVE = SearchSpaceSpec(WiringMode.NON_ADAPTIVE)
# Alice and Bob pinned, Carol free: 256 protocols, cheap to check one by one
SMALL = SearchSpaceSpec(WiringMode.ADAPTIVE, stages={"A": (0xC,), "B": (0x8,)}, finals={"A": (0x66,), "B": (0x66,)})


def test_protocol_value_poly_examples():
    assert protocol_value_poly(protocol_3(), 44) == P.of(7, 6)
    assert protocol_value_poly(protocol_4(), 45) == P.of(7, 10, -4)
    for cls in (44, 45, 46):
        assert protocol_value_poly(identity_protocol(2), cls) == P.of(7, 4)
    with pytest.raises(DepthMismatchError):
        protocol_value_poly(protocol_ndp(3), 44)


@pytest.mark.parametrize("protocol", [protocol_1(), protocol_2(), protocol_5()])
@pytest.mark.parametrize("cls", [44, 45, 46])
def test_interpolation_is_sample_invariant(protocol, cls):
    default = protocol_value_poly(protocol, cls)
    assert protocol_value_poly(protocol, cls, samples=[F(1, 3), F(2, 3), 1]) == default


def test_baseline():
    assert baseline_poly(45) == P.of(7, 4)


def test_report_matches_brute_force_grouping():
    groups = defaultdict(list)
    for i, p in enumerate(enumerate_depth2(SMALL)):
        groups[protocol_value_poly(p, 46)].append(i)
    report = search_report(46, SMALL)
    assert report.total == 256
    assert {e.value: (e.index, e.count) for e in report.entries} == {v: (idx[0], len(idx)) for v, idx in groups.items()}


def test_report_ordering_is_by_area_then_gain_then_index():
    report = search_report(45, NON_ADAPTIVE)
    keys = [(-e.region.area, -e.max_gain, e.index) for e in report.entries]
    assert keys == sorted(keys)
    assert sum(e.count for e in report.entries) == NON_ADAPTIVE.size
    assert report.entries[0].value == P.of(7, 10, -4)


def test_non_adaptive_class_46_contains_protocol_1():
    assert P.of(7, 8, -8) in search_report(46, NON_ADAPTIVE).values()


def test_report_is_deterministic_across_thread_counts():
    a = search_report(44, NON_ADAPTIVE, threads=1)
    b = search_report(44, NON_ADAPTIVE, threads=4)
    assert [(e.value, e.index, e.count) for e in a.entries] == [(e.value, e.index, e.count) for e in b.entries]


def test_ghz_search_small_space_by_brute_force():
    eps, delta = F(3, 4), F(1, 4)
    box = noisy_ghz(eps, delta)
    values = [eval_inequality(wire_with_sink(p, [box, box])[0], class2_inequality()) for p in enumerate_depth2(SMALL)]
    result = ghz_search_depth2(eps, delta, SMALL)
    assert result.best == max(values)
    assert result.count == values.count(max(values))
    assert SMALL.index_of(result.best_protocol) == values.index(max(values))


def test_ghz_search_non_adaptive_reaches_local_bound():
    # constant finals are degree-0 parity finals and already give the local value 2
    result = ghz_search_depth2(F(3, 4), F(1, 4), NON_ADAPTIVE)
    assert result.best == 2
    assert result.best >= F(3, 4) ** 2 - 3 * F(1, 4) ** 2
    assert ghz_search_depth2(0, 0, NON_ADAPTIVE).best == 2
    assert ghz_search_depth2(1, -1, NON_ADAPTIVE).best == 4


@pytest.mark.parametrize("eps, delta", [(F(3, 8), F(7, 8)), (F(-3, 4), F(-1)), (F(1), F(-1, 2))])
def test_adaptive_never_beats_non_adaptive(eps, delta):
    na = ghz_search_depth2(eps, delta, NON_ADAPTIVE)
    ad = ghz_search_depth2(eps, delta, SearchSpaceSpec(WiringMode.ADAPTIVE))
    assert ad.best <= na.best
    # at these points the parity protocols beat the local value 2
    assert na.best == max(abs(eps - 3 * delta), abs(eps ** 2 - 3 * delta ** 2)) > 2
