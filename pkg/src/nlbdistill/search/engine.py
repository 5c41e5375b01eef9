"""Vectorised exact evaluation of a Bell expression over a depth-2 space.

For a depth-2 protocol the value on boxes ``(P1, P2)`` is

    sum_terms coeff * sum_{o1, v, o2} P1(o1|u) P2(o2|v) * prod_party M_party

where ``u`` is the term's input row, ``v`` the input to box 2, and the
per-party factor ``M[u, o1, v, o2] = [v == stage(u, o1)] * g(u, o1, o2)``
with ``g = (-1)**final`` for parties in the term and ``g = 1`` otherwise.
Each party's wiring is therefore a 32-entry feature vector and the value a
trilinear form ``W`` in the three vectors, independent of the protocol.

``W`` is scaled to integers and contracted with the feature matrices in
float64.  Every partial sum is bounded by ``sum |W|``, which is checked to
stay below 2**53, so the results are exact integers.  Rows of box 2 that lie
outside its domain carry no weight, which is the permissive sink convention
of :func:`nlbdistill.wiring.wire_with_sink`.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from ..boxes import PARTIES, TripartiteBox
from ..errors import DomainError
from ..inequalities import BellInequality
from .space import SearchSpaceSpec

__all__ = ["party_features", "value_tensor", "ValueEngine", "worker_count"]

_EXACT_LIMIT = 2 ** 53
_CHUNK_BUDGET = 1 << 22  # float64 entries per chunk result


def _feature_index(member: int, u: int, o1: int, v: int, o2: int) -> int:
    return member << 4 | u << 3 | o1 << 2 | v << 1 | o2


def party_features(stage_table: int, final_table: int) -> np.ndarray:
    """32-entry feature vector of one party's depth-2 wiring."""
    vec = np.zeros(32)
    for u in (0, 1):
        for o1 in (0, 1):
            v = (stage_table >> (2 * u + o1)) & 1
            for o2 in (0, 1):
                f = (final_table >> (u << 2 | o1 << 1 | o2)) & 1
                vec[_feature_index(1, u, o1, v, o2)] = -1 if f else 1
                vec[_feature_index(0, u, o1, v, o2)] = 1
    return vec


def value_tensor(ineq: BellInequality, box1: TripartiteBox, box2: TripartiteBox) -> dict[tuple[int, int, int], Fraction]:
    """Sparse ``W``: feature-index triple -> exact weight."""
    rows1 = dict(box1.items())
    rows2 = dict(box2.items())
    out: dict[tuple[int, int, int], Fraction] = {}
    for coeff, term in ineq.terms:
        row = next((r for r in term.completions() if r in box1.domain), None)
        if row is None:
            raise DomainError(f"no input row of the {box1.domain.value} domain completes <{term}>")
        member = [int(k in term.indices) for k in range(3)]
        for o1, p1 in enumerate(rows1[row]):
            if not p1:
                continue
            bits1 = (o1 >> 2 & 1, o1 >> 1 & 1, o1 & 1)
            for v, probs2 in rows2.items():
                for o2, p2 in enumerate(probs2):
                    if not p2:
                        continue
                    bits2 = (o2 >> 2 & 1, o2 >> 1 & 1, o2 & 1)
                    key = tuple(
                        _feature_index(member[k], row[k], bits1[k], v[k], bits2[k]) for k in range(3)
                    )
                    out[key] = out.get(key, Fraction(0)) + coeff * p1 * p2
    return {k: w for k, w in out.items() if w}


def worker_count() -> int:
    """Thread count, capped by ``NLB_THREADS`` when set."""
    n = os.cpu_count() or 1
    cap = os.environ.get("NLB_THREADS")
    if cap:
        n = min(n, max(1, int(cap)))
    return n


class ValueEngine:
    """Evaluate ``ineq`` for every protocol of ``space`` on several box pairs.

    ``scale`` is the common denominator: chunk values are integer arrays
    equal to ``scale`` times the exact values.
    """

    def __init__(self, space: SearchSpaceSpec, ineq: BellInequality, box_pairs: Sequence[tuple[TripartiteBox, TripartiteBox]]):
        self.space = space
        self.n_params = len(box_pairs)
        tensors = [value_tensor(ineq, b1, b2) for b1, b2 in box_pairs]
        dens = [w.denominator for t in tensors for w in t.values()]
        self.scale = math.lcm(*dens) if dens else 1
        dense = np.zeros((32, 32, 32, self.n_params))
        self.bounds = []
        for p, t in enumerate(tensors):
            total = 0
            for (i, j, k), w in t.items():
                iw = w.numerator * (self.scale // w.denominator)
                dense[i, j, k, p] = iw
                total += abs(iw)
            if total >= _EXACT_LIMIT:
                raise OverflowError("weights too large for exact float64 evaluation")
            self.bounds.append(total)
        self.features = [
            np.array([party_features(s, f) for s, f in space.party_options(party)])
            for party in PARTIES
        ]
        self.sizes = [len(f) for f in self.features]
        ua = self.features[0]
        self._t1 = (ua @ dense.reshape(32, -1)).reshape(self.sizes[0], 32, 32 * self.n_params)

    @property
    def size(self) -> int:
        return self.sizes[0] * self.sizes[1] * self.sizes[2]

    def _chunk(self, a_lo: int, a_hi: int) -> np.ndarray:
        nb = self.sizes[1]
        t2 = self.features[1] @ self._t1[a_lo:a_hi]  # (ca, nb, 32 * P)
        t2 = t2.reshape(a_hi - a_lo, nb, 32, self.n_params).transpose(0, 1, 3, 2)
        t3 = t2 @ self.features[2].T  # (ca, nb, P, nc)
        vals = t3.transpose(2, 0, 1, 3).reshape(self.n_params, -1)
        return vals.astype(np.int64)

    def chunks(self, threads: int | None = None) -> Iterator[tuple[int, np.ndarray]]:
        """Yield ``(first_index, values)`` with ``values`` of shape ``(P, n)``, in index order."""
        per_a = self.sizes[1] * self.sizes[2] * self.n_params
        step = max(1, _CHUNK_BUDGET // per_a)
        spans = [(lo, min(lo + step, self.sizes[0])) for lo in range(0, self.sizes[0], step)]
        offset = self.sizes[1] * self.sizes[2]
        threads = threads or worker_count()
        if threads <= 1:
            for lo, hi in spans:
                yield lo * offset, self._chunk(lo, hi)
            return
        with ThreadPoolExecutor(max_workers=threads) as pool:
            # map preserves order, so merging stays deterministic
            for (lo, _), vals in zip(spans, pool.map(lambda s: self._chunk(*s), spans)):
                yield lo * offset, vals
