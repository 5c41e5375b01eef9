"""Grid data behind the distillation plots, as CSV.

Two targets:

* ``ghz_depth2``: the (ε, δ) square with ``V = ε - 3δ``, the depth-2 value
  ``V' = ε² - 3δ²`` and whether ``V' > V``;
* ``class_protocols``: ``V'(δ)`` of protocols 1-5 on each class next to the
  single-box baseline.

Both are computed by interpolating exact wirings, not from hardcoded formulas.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .boxes import noisy_ghz
from .errors import RangeError
from .inequalities import class2_inequality, eval_inequality
from .polynomial import interpolate_bivariate
from .rational import format_float, format_rational, to_fraction
from .search.report import baseline_poly, protocol_value_poly
from .wiring import named_protocol, protocol_ndp, wire

__all__ = ["CurveTarget", "CurveSpec", "CLASS_CURVE_COLUMNS", "curve_emit", "ghz_value_polys"]


class CurveTarget(enum.Enum):
    GHZ_DEPTH2 = "ghz_depth2"
    CLASS_PROTOCOLS = "class_protocols"

    @classmethod
    def parse(cls, text: str) -> "CurveTarget":
        key = text.strip().lower().replace("-", "_")
        aliases = {"ghzdepth2region": cls.GHZ_DEPTH2, "classprotocolcurves": cls.CLASS_PROTOCOLS}
        if key.replace("_", "") in aliases:
            return aliases[key.replace("_", "")]
        return cls(key)


# (column, protocol name, class)
_CLASS_CURVES = (
    [(f"p1_c{c}", "protocol1", c) for c in (44, 45, 46)]
    + [(f"p2_c{c}", "protocol2", c) for c in (44, 45, 46)]
    + [("p3_c44", "protocol3", 44), ("p4_c45", "protocol4", 45), ("p5_c46", "protocol5", 46)]
)
CLASS_CURVE_COLUMNS = ["delta", "baseline"] + [name for name, _, _ in _CLASS_CURVES]


@dataclass(frozen=True)
class CurveSpec:
    """Grid of ``resolution`` points per axis over the given closed ranges."""

    target: CurveTarget
    resolution: int = 21
    ranges: tuple[tuple[Fraction, Fraction], ...] | None = None

    def __post_init__(self):
        if self.resolution < 2:
            raise RangeError(f"resolution must be at least 2, got {self.resolution}")
        natural = self.natural_ranges()
        ranges = natural if self.ranges is None else tuple(
            (to_fraction(lo), to_fraction(hi)) for lo, hi in self.ranges
        )
        if len(ranges) != len(natural):
            raise RangeError(f"{self.target.value} needs {len(natural)} parameter range(s)")
        for (lo, hi), (nlo, nhi) in zip(ranges, natural):
            if not nlo <= lo < hi <= nhi:
                raise RangeError(
                    f"range [{format_rational(lo)}, {format_rational(hi)}] must be increasing "
                    f"and inside [{format_rational(nlo)}, {format_rational(nhi)}]"
                )
        object.__setattr__(self, "ranges", ranges)

    def natural_ranges(self) -> tuple[tuple[Fraction, Fraction], ...]:
        if self.target is CurveTarget.GHZ_DEPTH2:
            return ((Fraction(-1), Fraction(1)), (Fraction(-1), Fraction(1)))
        return ((Fraction(0), Fraction(1)),)

    def axis(self, k: int) -> list[Fraction]:
        lo, hi = self.ranges[k]
        step = (hi - lo) / (self.resolution - 1)
        return [lo + i * step for i in range(self.resolution)]


def _poly2_to_fn(coeffs: dict):
    return lambda e, d: sum((c * e ** i * d ** j for (i, j), c in coeffs.items()), Fraction(0))


@lru_cache(maxsize=None)
def ghz_value_polys():
    """``(V, V')`` as exact bivariate coefficient maps in (ε, δ), from wirings."""
    grid = [Fraction(-1), Fraction(0), Fraction(1)]
    ineq = class2_inequality()
    v = interpolate_bivariate(lambda e, d: eval_inequality(noisy_ghz(e, d), ineq), grid, grid)
    two = protocol_ndp(2)
    vp = interpolate_bivariate(
        lambda e, d: eval_inequality(wire(two, [noisy_ghz(e, d)] * 2), ineq), grid, grid
    )
    return v, vp


@lru_cache(maxsize=None)
def _class_polys():
    polys = {name: protocol_value_poly(named_protocol(proto), cls) for name, proto, cls in _CLASS_CURVES}
    return baseline_poly(44), polys


def _ghz_rows(spec: CurveSpec, absolute: bool):
    v, vp = (_poly2_to_fn(p) for p in ghz_value_polys())
    for e in spec.axis(0):
        for d in spec.axis(1):
            a, b = v(e, d), vp(e, d)
            distills = abs(b) > abs(a) if absolute else b > a
            yield [e, d, a, b], "true" if distills else "false"


def curve_emit(spec: CurveSpec, floats: bool = False, absolute: bool = False) -> str:
    """CSV text with LF line endings and a fixed column order."""
    fmt = (lambda q: format_float(q)) if floats else format_rational
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if spec.target is CurveTarget.GHZ_DEPTH2:
        writer.writerow(["eps", "delta", "V", "Vprime", "distills"])
        for nums, flag in _ghz_rows(spec, absolute):
            writer.writerow([fmt(q) for q in nums] + [flag])
    else:
        baseline, polys = _class_polys()
        writer.writerow(CLASS_CURVE_COLUMNS)
        for d in spec.axis(0):
            writer.writerow([fmt(d), fmt(baseline(d))] + [fmt(polys[name](d)) for name, _, _ in _CLASS_CURVES])
    return buf.getvalue()
