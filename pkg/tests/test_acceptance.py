"""The ten acceptance criteria, each checked exactly (tolerance 0).

Run with pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly: ``python tests/test_acceptance.py``.
"""

import itertools
import random
import sys
import time
from fractions import Fraction as F

import pytest

from nlbdistill.boxes import (
    GHZ_P44_POLY,
    GHZ_P46_POLY,
    GHZ_P46_PRIME_POLY,
    InputDomain,
    box_from_parity_poly,
    class_box,
    correlated_box,
    ghz_box,
    local_vertices,
    mix,
    noisy_class_box,
    noisy_ghz,
    restrict_domain,
    validate,
)
from nlbdistill.fourier import BooleanFunction, nonadaptive_value, parity_bound, spectrum
from nlbdistill.inequalities import class2_inequality, class41_inequality, eval_inequality, value_poly_in_delta
from nlbdistill.polynomial import DeltaPolynomial as P
from nlbdistill.polynomial import interpolate_bivariate
from nlbdistill.search import SearchSpaceSpec, WiringMode, distillation_region, protocol_value_poly, search_report
from nlbdistill.wiring import (
    FinalFunction,
    ParityProtocolParams,
    PartyWiring,
    StageFunction,
    WiringProtocol,
    protocol_1,
    protocol_2,
    protocol_3,
    protocol_4,
    protocol_5,
    protocol_ndp,
    protocol_parity_general,
    wire,
)

RESULTS: dict[int, tuple[bool, str]] = {}

BASELINE = P.of(7, 4)
REFERENCE_POLYS = {
    (1, 44): P.of(7, 8, -8), (1, 45): P.of(7, 8, -8), (1, 46): P.of(7, 8, -8),
    (2, 44): P.of(7, 6, -4), (2, 45): P.of(7, 9, -6), (2, 46): P.of(7, 9, -10),
    (3, 44): P.of(7, 6), (4, 45): P.of(7, 10, -4), (5, 46): P.of(7, -2, 8),
}
PROTOCOLS = {1: protocol_1, 2: protocol_2, 3: protocol_3, 4: protocol_4, 5: protocol_5}
GRID = [F(-1), F(0), F(1)]


def criterion_1():
    ineq = class41_inequality()
    for cls in (44, 45, 46):
        assert eval_inequality(class_box(cls), ineq) == 11, cls
    assert eval_inequality(correlated_box(), ineq) == 7
    for cls in (44, 45, 46):
        assert value_poly_in_delta(lambda d: noisy_class_box(cls, d), ineq, 1) == BASELINE
    return "class41 = 11 on P^44/45/46, 7 on P^c, 4δ+7 on P_δ^N"


def criterion_2():
    ineq = class2_inequality()
    grid = [F(-1, 2), F(1, 3)]
    coeffs = interpolate_bivariate(lambda e, d: eval_inequality(noisy_ghz(e, d), ineq), grid, grid)
    assert coeffs == {(1, 0): 1, (0, 1): -3}, coeffs
    assert eval_inequality(ghz_box(InputDomain.EVEN_PARITY), ineq) == 4
    return "class2 on noisy GHZ = ε - 3δ; 4 on perfect GHZ"


def criterion_3():
    assert restrict_domain(box_from_parity_poly(GHZ_P44_POLY), InputDomain.EVEN_PARITY) == ghz_box()
    half = F(1, 2)
    mixed = mix([(half, box_from_parity_poly(GHZ_P46_POLY)), (half, box_from_parity_poly(GHZ_P46_PRIME_POLY))])
    assert restrict_domain(mixed, InputDomain.EVEN_PARITY) == ghz_box()
    return "P44 restriction and (P46 + P46')/2 both give the GHZ box"


def criterion_4():
    ineq = class2_inequality()
    for n in range(1, 5):
        proto = protocol_ndp(n)
        for e, d in [(F(1, 2), F(1, 4)), (F(-2, 3), F(3, 5)), (F(3, 4), F(-1, 3))]:
            assert wire(proto, [noisy_ghz(e, d)] * n) == noisy_ghz(e ** n, d ** n), (n, e, d)
        nodes = [F(k, n) for k in range(n + 1)]
        coeffs = interpolate_bivariate(lambda e, d: eval_inequality(wire(proto, [noisy_ghz(e, d)] * n), ineq),
                                       nodes, nodes)
        assert coeffs == {(n, 0): 1, (0, n): -3}, (n, coeffs)
    return "NDP_n box has biases ε^n, δ^n and value ε^n - 3δ^n for n = 1..4"


def criterion_5():
    ineq = class2_inequality()
    for bits in itertools.product((0, 1), repeat=4):
        sa, sb, sc, _ = bits
        proto = protocol_parity_general(ParityProtocolParams(*bits))
        coeffs = interpolate_bivariate(lambda e, d: eval_inequality(wire(proto, [noisy_ghz(e, d)] * 2), ineq),
                                       GRID, GRID)
        sign = (-1) ** (sa ^ sb ^ sc)
        assert coeffs == {(2, 0): -sign, (0, 2): 3 * sign}, (bits, coeffs)
    return "all 16 (s_a, s_b, s_c, t) match the sign formula"


def criterion_6():
    for (k, cls), poly in REFERENCE_POLYS.items():
        got = protocol_value_poly(PROTOCOLS[k](), cls)
        assert got == poly, (k, cls, str(got))
    return "protocols 1-5 value polynomials exact"


def criterion_7():
    pairs = [((1, 44), "(0, 1/2)"), ((2, 45), "(0, 5/6)"), ((2, 46), "(0, 1/2)"), ((2, 44), "(0, 1/2)"),
             ((3, 44), "(0, 1]"), ((4, 45), "(0, 1]"), ((5, 46), "(3/4, 1]")]
    for key, expected in pairs:
        region = distillation_region(protocol_value_poly(PROTOCOLS[key[0]](), key[1]), BASELINE)
        assert str(region) == expected, (key, str(region))
        assert all(isinstance(iv.lo, F) and isinstance(iv.hi, F) for iv in region.intervals)
    return "seven distillation regions with exact endpoints"


def _random_triple(rng):
    n = rng.randint(1, 3)
    return n, [BooleanFunction(n, rng.randrange(1 << (1 << n))) for _ in range(3)]


def _brute_force(n, fs, eps, delta):
    proto = WiringProtocol.build(
        n, finals={p: FinalFunction.from_output_table(n, f.table) for p, f in zip("ABC", fs)}
    )
    return eval_inequality(wire(proto, [noisy_ghz(eps, delta)] * n), class2_inequality())


def criterion_8():
    rng = random.Random(8)
    for _ in range(200):
        n, fs = _random_triple(rng)
        eps, delta = F(rng.randint(-12, 12), 12), F(rng.randint(-12, 12), 12)
        assert nonadaptive_value(*fs, eps, delta) == _brute_force(n, fs, eps, delta)
    checked = 0
    while checked < 200:
        n, fs = _random_triple(rng)
        if all(spectrum(f).coefficients[0] for f in fs):
            continue  # the bound is claimed only when the z = 0 term vanishes
        eps, delta = F(rng.randint(-12, 12), 12), F(rng.randint(-12, 12), 12)
        assert abs(nonadaptive_value(*fs, eps, delta)) <= parity_bound(eps, delta, n)
        checked += 1
    return "200 Fourier/brute-force matches; bound holds on 200 zero-mean triples"


def criterion_9():
    t0 = time.perf_counter()
    non_adaptive = search_report(46, SearchSpaceSpec(WiringMode.NON_ADAPTIVE))
    t_na = time.perf_counter() - t0
    assert non_adaptive.total == 262144 and t_na < 10, t_na
    assert P.of(7, 8, -8) in non_adaptive.values()
    t_ad = 0.0
    for cls in (44, 45, 46):
        t0 = time.perf_counter()
        report = search_report(cls, SearchSpaceSpec(WiringMode.ADAPTIVE))
        elapsed = time.perf_counter() - t0
        t_ad = max(t_ad, elapsed)
        assert report.total == 16777216 and elapsed < 600, elapsed
        wanted = {poly for (_, c), poly in REFERENCE_POLYS.items() if c == cls}
        assert wanted <= report.values(), (cls, [str(w) for w in wanted - report.values()])
    return f"all reference polynomials found; non-adaptive {t_na:.1f}s, adaptive max {t_ad:.1f}s per class"


def criterion_10():
    rng = random.Random(10)
    built = [class_box(44), class_box(45), class_box(46), correlated_box(), ghz_box(), ghz_box(InputDomain.FULL),
             noisy_ghz(F(1, 3), F(-1, 5)), noisy_class_box(45, F(2, 9))] + local_vertices()
    for key, poly in REFERENCE_POLYS.items():
        box = noisy_class_box(key[1], F(1, 3))
        built.append(wire(PROTOCOLS[key[0]](), [box, box]))
    for box in built:
        assert validate(box).ok
    pool = [class_box(44), class_box(45), class_box(46), correlated_box()] + local_vertices()
    for _ in range(100):
        depth = rng.choice([2, 2, 3])
        boxes = []
        for _ in range(depth):
            comps = rng.sample(pool, 3)
            w = [rng.randint(1, 9) for _ in comps]
            boxes.append(mix([(F(x, sum(w)), b) for x, b in zip(w, comps)]))
        parts = tuple(
            PartyWiring(tuple(StageFunction(rng.randrange(16)) for _ in range(depth - 1)),
                        FinalFunction(depth, rng.randrange(1 << (1 << (depth + 1)))))
            for _ in range(3)
        )
        assert validate(wire(WiringProtocol(depth, parts), boxes)).ok
    return f"{len(built)} constructed/wired boxes valid; 100 random wirings stay no-signaling"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _run(k):
    try:
        detail = CRITERIA[k - 1]()
    except AssertionError as exc:
        RESULTS[k] = (False, f"assertion failed: {exc}")
        raise
    RESULTS[k] = (True, detail)


@pytest.mark.parametrize("k", range(1, 11), ids=[f"criterion_{k}" for k in range(1, 11)])
def test_acceptance(k):
    _run(k)


if __name__ == "__main__":
    failed = 0
    for k in range(1, 11):
        try:
            _run(k)
        except AssertionError:
            failed += 1
        ok, detail = RESULTS[k]
        print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    sys.exit(1 if failed else 0)
