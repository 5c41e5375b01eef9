"""Exact solution sets of ``V'(δ) > V(δ)`` on (0, 1].

Roots of the difference are found exactly: rational roots by the rational
root test, the rest isolated by Sturm sequences into disjoint rational
intervals.  Signs are only ever evaluated at rational points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from ..errors import DegreeError
from ..polynomial import DeltaPolynomial
from ..rational import format_float, format_rational, to_fraction

__all__ = [
    "AlgebraicRoot",
    "Interval",
    "DistillationRegion",
    "real_roots",
    "distillation_region",
    "max_on_unit",
]

MAX_DEGREE = 3
_REFINE_WIDTH = Fraction(1, 2 ** 40)


def _monic(p: DeltaPolynomial) -> DeltaPolynomial:
    lead = p.coeffs[-1]
    return DeltaPolynomial(tuple(c / lead for c in p.coeffs), p.var)


def _gcd(a: DeltaPolynomial, b: DeltaPolynomial) -> DeltaPolynomial:
    while b.coeffs:
        a, b = b, a.divmod(b)[1]
    return _monic(a) if a.coeffs else a


def _squarefree(p: DeltaPolynomial) -> DeltaPolynomial:
    g = _gcd(p, p.derivative())
    return _monic(p.divmod(g)[0]) if g.degree > 0 else _monic(p)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _rational_roots(p: DeltaPolynomial, lo: Fraction, hi: Fraction) -> list[Fraction]:
    """Rational roots in ``(lo, hi]``, ascending."""
    den = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    roots = set()
    if ints[0] == 0 and lo < 0 <= hi:
        roots.add(Fraction(0))
    while ints and ints[0] == 0:
        ints.pop(0)
    if len(ints) > 1:
        for num in _divisors(ints[0]):
            for d in _divisors(ints[-1]):
                for cand in (Fraction(num, d), Fraction(-num, d)):
                    if lo < cand <= hi and p(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def _sturm(p: DeltaPolynomial) -> list[DeltaPolynomial]:
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        rem = seq[-2].divmod(seq[-1])[1]
        if not rem.coeffs:
            break
        seq.append(-rem)
    return seq


def _sign_changes(seq, t: Fraction) -> int:
    signs = [v for v in (q(t) for q in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


@dataclass(frozen=True)
class AlgebraicRoot:
    """The unique root of ``poly`` in the open interval ``(lo, hi)``."""

    poly: DeltaPolynomial
    lo: Fraction
    hi: Fraction

    def refine(self, width: Fraction = _REFINE_WIDTH) -> "AlgebraicRoot":
        lo, hi = self.lo, self.hi
        s_lo = self.poly(lo) > 0
        while hi - lo > width:
            mid = (lo + hi) / 2
            v = self.poly(mid)
            if v == 0:
                return AlgebraicRoot(self.poly, mid - width / 4, mid + width / 4)
            if (v > 0) == s_lo:
                lo = mid
            else:
                hi = mid
        return AlgebraicRoot(self.poly, lo, hi)

    def approx(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.approx())

    def __str__(self) -> str:
        return f"root({self.poly}; {format_rational(self.lo)}, {format_rational(self.hi)})"


Endpoint = Union[Fraction, AlgebraicRoot]


def _value(e: Endpoint) -> Fraction:
    return e if isinstance(e, Fraction) else e.approx()


def _left(e: Endpoint) -> Fraction:
    return e if isinstance(e, Fraction) else e.lo


def _right(e: Endpoint) -> Fraction:
    return e if isinstance(e, Fraction) else e.hi


def real_roots(p: DeltaPolynomial, lo=0, hi=1) -> list[Endpoint]:
    """Distinct real roots of ``p`` in ``(lo, hi]``, exact or isolated, ascending."""
    lo, hi = to_fraction(lo), to_fraction(hi)
    if p.degree < 1:
        return []
    q = _squarefree(p)
    rational = _rational_roots(q, lo, hi)
    rest = q
    for r in rational:
        rest = rest.divmod(DeltaPolynomial((-r, Fraction(1)), p.var))[0]
    found: list[Endpoint] = list(rational)
    if rest.degree >= 1:
        seq = _sturm(rest)
        # rest has no rational roots in (lo, hi], so rational probes are never roots
        stack = [(lo, hi)]
        while stack:
            a, b = stack.pop()
            n = _sign_changes(seq, a) - _sign_changes(seq, b)
            if n == 0:
                continue
            if n == 1:
                root = AlgebraicRoot(rest, a, b)
                # shrink until the interval excludes every rational root
                while any(root.lo <= r <= root.hi for r in rational) or root.hi - root.lo > Fraction(1, 2 ** 20):
                    root = root.refine((root.hi - root.lo) / 2)
                found.append(root)
                continue
            mid = (a + b) / 2
            stack += [(a, mid), (mid, b)]
    return sorted(found, key=_left)


@dataclass(frozen=True)
class Interval:
    lo: Endpoint
    hi: Endpoint
    lo_closed: bool = False
    hi_closed: bool = False

    @property
    def length(self) -> Fraction:
        return _value(self.hi) - _value(self.lo)

    def endpoint_strings(self, floats: bool = False) -> tuple[str, str]:
        def fmt(e):
            if floats:
                return format_float(_value(e))
            return format_rational(e) if isinstance(e, Fraction) else str(e)

        return fmt(self.lo), fmt(self.hi)

    def format(self, floats: bool = False) -> str:
        lo, hi = self.endpoint_strings(floats)
        return f"{'[' if self.lo_closed else '('}{lo}, {hi}{']' if self.hi_closed else ')'}"

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class DistillationRegion:
    """Disjoint, sorted intervals where ``gap > 0`` within (0, 1]."""

    intervals: tuple[Interval, ...]
    gap: DeltaPolynomial = field(default_factory=DeltaPolynomial, compare=False)

    def contains(self, delta) -> bool:
        d = to_fraction(delta)
        return 0 < d <= 1 and self.gap(d) > 0

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def area(self) -> Fraction:
        """Total length; irrational endpoints contribute their isolating midpoints."""
        return sum((iv.length for iv in self.intervals), Fraction(0))

    def format(self, floats: bool = False) -> str:
        return " ∪ ".join(iv.format(floats) for iv in self.intervals) if self.intervals else "∅"

    def __str__(self) -> str:
        return self.format()


def distillation_region(vprime: DeltaPolynomial, v: DeltaPolynomial, absolute: bool = False) -> DistillationRegion:
    """Where ``vprime > v`` on (0, 1]; with ``absolute`` where ``|vprime| > |v|``."""
    for name, p in (("vprime", vprime), ("v", v)):
        if p.degree > MAX_DEGREE:
            raise DegreeError(f"{name} has degree {p.degree}; at most {MAX_DEGREE} is supported")
    gap = (vprime - v) * (vprime + v) if absolute else vprime - v
    if not gap.coeffs:
        return DistillationRegion((), gap)
    zero, one = Fraction(0), Fraction(1)
    roots = real_roots(gap, zero, one)
    inner = [r for r in roots if not (isinstance(r, Fraction) and r == one)]
    cuts: list[Endpoint] = [zero] + inner + [one]
    intervals = []
    for left, right in zip(cuts, cuts[1:]):
        probe = (_right(left) + _left(right)) / 2
        if gap(probe) > 0:
            closed = right == one and gap(one) > 0 if isinstance(right, Fraction) else False
            intervals.append(Interval(left, right, False, closed))
    return DistillationRegion(tuple(intervals), gap)


def max_on_unit(p: DeltaPolynomial) -> Fraction:
    """Supremum of ``p`` on (0, 1]; exact when the maximiser is rational."""
    cands = [p(0), p(1)]
    for r in real_roots(p.derivative(), 0, 1):
        cands.append(p(r) if isinstance(r, Fraction) else p(r.refine().approx()))
    return max(cands)
