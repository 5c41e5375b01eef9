"""Depth-2 searches: value polynomials per protocol, ranked distillation reports."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..boxes import noisy_class_box, noisy_ghz
from ..errors import DepthMismatchError
from ..inequalities import (
    BellInequality,
    class2_inequality,
    class41_inequality,
    value_poly_in_delta,
)
from ..polynomial import DeltaPolynomial
from ..rational import to_fraction
from ..wiring import WiringProtocol, wire
from .engine import ValueEngine
from .regions import DistillationRegion, distillation_region, max_on_unit
from .space import SearchSpaceSpec, WiringMode

__all__ = [
    "SAMPLE_POINTS",
    "SearchEntry",
    "SearchReport",
    "GhzSearchResult",
    "protocol_value_poly",
    "baseline_poly",
    "search_report",
    "ghz_search_depth2",
]

SAMPLE_POINTS = (Fraction(0), Fraction(1, 2), Fraction(1))


def protocol_value_poly(protocol: WiringProtocol, class_id, ineq: BellInequality | None = None,
                        samples: Sequence | None = None) -> DeltaPolynomial:
    """Exact ``V'(δ)`` of a depth-2 protocol on two copies of ``P_δ^N``."""
    if protocol.depth != 2:
        raise DepthMismatchError(f"expected a depth-2 protocol, got depth {protocol.depth}")
    ineq = ineq or class41_inequality()
    nodes = list(samples) if samples is not None else list(SAMPLE_POINTS)

    def family(d):
        box = noisy_class_box(class_id, d)
        return wire(protocol, [box, box])

    return value_poly_in_delta(family, ineq, 2, nodes)


def baseline_poly(class_id, ineq: BellInequality | None = None) -> DeltaPolynomial:
    """Single-box value ``V(δ)`` on ``P_δ^N``."""
    return value_poly_in_delta(lambda d: noisy_class_box(class_id, d), ineq or class41_inequality(), 1)


@dataclass(frozen=True)
class SearchEntry:
    """One distinct value polynomial, represented by its lowest-index protocol."""

    protocol: WiringProtocol
    index: int
    value: DeltaPolynomial
    region: DistillationRegion
    max_gain: Fraction
    count: int


@dataclass(frozen=True)
class SearchReport:
    class_id: object
    space: SearchSpaceSpec
    baseline: DeltaPolynomial
    entries: tuple[SearchEntry, ...]
    total: int
    absolute: bool = False
    elapsed: float = 0.0

    def values(self) -> set[DeltaPolynomial]:
        return {e.value for e in self.entries}

    def distilling(self) -> list[SearchEntry]:
        return [e for e in self.entries if not e.region.is_empty]


def _pack(cols: np.ndarray, bounds: Sequence[int]):
    """Injective int64 keys for rows of ``cols``, or None if they would not fit."""
    widths = [2 * b + 1 for b in bounds]
    total = 1
    for w in widths:
        total *= w
    if total >= 2 ** 63:
        return None
    key = np.zeros(cols.shape[1], dtype=np.int64)
    for row, b, w in zip(cols, bounds, widths):
        key = key * w + (row + b)
    return key


def search_report(class_id, space: SearchSpaceSpec | None = None, ineq: BellInequality | None = None,
                  absolute: bool = False, threads: int | None = None) -> SearchReport:
    """Every distinct ``V'`` polynomial of the space, ranked.

    Order: distillation-region area (descending), then the supremum of
    ``V' - V`` on (0, 1] (descending), then the representative's index,
    which is lexicographic order on its encoding.
    """
    start = time.perf_counter()
    space = space or SearchSpaceSpec()
    ineq = ineq or class41_inequality()
    boxes = [noisy_class_box(class_id, d) for d in SAMPLE_POINTS]
    engine = ValueEngine(space, ineq, [(b, b) for b in boxes])
    b0, bh, b1 = engine.bounds
    coef_bounds = [b0, 4 * bh + 3 * b0 + b1, 2 * b1 + 4 * bh + 2 * b0]

    seen: dict = {}
    for first, vals in engine.chunks(threads):
        v0, vh, v1 = vals
        # quadratic through δ = 0, 1/2, 1, all scaled by engine.scale
        cols = np.stack([v0, 4 * vh - 3 * v0 - v1, 2 * v1 - 4 * vh + 2 * v0])
        keys = _pack(cols, coef_bounds)
        if keys is None:
            uniq, idx, counts = np.unique(cols.T, axis=0, return_index=True, return_counts=True)
            uniq = [tuple(map(int, u)) for u in uniq]
        else:
            _, idx, counts = np.unique(keys, return_index=True, return_counts=True)
            uniq = [tuple(int(c) for c in cols[:, i]) for i in idx]
        for key, i, n in zip(uniq, idx, counts):
            if key in seen:
                seen[key][1] += int(n)
            else:
                seen[key] = [first + int(i), int(n)]

    baseline = baseline_poly(class_id, ineq)
    entries = []
    for coeffs, (index, count) in seen.items():
        value = DeltaPolynomial(tuple(Fraction(c, engine.scale) for c in coeffs))
        region = distillation_region(value, baseline, absolute=absolute)
        entries.append(SearchEntry(space.protocol_at(index), index, value, region,
                                   max_on_unit(value - baseline), count))
    entries.sort(key=lambda e: (-e.region.area, -e.max_gain, e.index))
    return SearchReport(class_id, space, baseline, tuple(entries), engine.size, absolute,
                        time.perf_counter() - start)


@dataclass(frozen=True)
class GhzSearchResult:
    eps: Fraction
    delta: Fraction
    space: SearchSpaceSpec
    best: Fraction
    count: int
    protocols: tuple[WiringProtocol, ...]
    total: int

    @property
    def best_protocol(self) -> WiringProtocol:
        return self.protocols[0]


def ghz_search_depth2(eps, delta, space: SearchSpaceSpec | None = None, keep: int = 16,
                      threads: int | None = None) -> GhzSearchResult:
    """Largest class-2 value over the space on two ``noisy_ghz(eps, delta)`` copies.

    Histories that drive box 2 outside the even-parity domain are dropped
    (the permissive sink convention), so every protocol has a value.
    ``protocols`` holds up to ``keep`` maximisers, lowest index first.
    """
    eps, delta = to_fraction(eps), to_fraction(delta)
    space = space or SearchSpaceSpec(WiringMode.NON_ADAPTIVE)
    box = noisy_ghz(eps, delta)
    engine = ValueEngine(space, class2_inequality(), [(box, box)])
    best, count, hits = None, 0, []
    for first, vals in engine.chunks(threads):
        row = vals[0]
        m = int(row.max())
        where = np.flatnonzero(row == m)
        if best is None or m > best:
            best, count, hits = m, 0, []
        if m == best:
            count += len(where)
            hits.extend(first + int(i) for i in where[: max(0, keep - len(hits))])
    return GhzSearchResult(eps, delta, space, Fraction(best, engine.scale), count,
                           tuple(space.protocol_at(i) for i in hits), engine.size)

