"""Exact univariate polynomials and Lagrange interpolation over the rationals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import SamplesError
from .rational import format_rational, to_fraction

__all__ = ["DeltaPolynomial", "interpolate", "interpolate_bivariate", "default_nodes"]


def _trim(coeffs) -> tuple[Fraction, ...]:
    c = [to_fraction(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class DeltaPolynomial:
    """Polynomial with exact rational coefficients in ascending degree.

    Trailing zeros are trimmed, so the zero polynomial has ``coeffs == ()``
    and degree -1.  ``var`` only affects printing.
    """

    coeffs: tuple[Fraction, ...] = ()
    var: str = field(default="δ", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def of(cls, *coeffs, var: str = "δ") -> "DeltaPolynomial":
        return cls(tuple(coeffs), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, t) -> Fraction:
        t = to_fraction(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def _lift(self, other) -> "DeltaPolynomial":
        if isinstance(other, DeltaPolynomial):
            return other
        return DeltaPolynomial((to_fraction(other),), self.var)

    def __add__(self, other) -> "DeltaPolynomial":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DeltaPolynomial(tuple(self.coeff(k) + other.coeff(k) for k in range(n)), self.var)

    __radd__ = __add__

    def __neg__(self) -> "DeltaPolynomial":
        return DeltaPolynomial(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other) -> "DeltaPolynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "DeltaPolynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "DeltaPolynomial":
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return DeltaPolynomial((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return DeltaPolynomial(tuple(out), self.var)

    __rmul__ = __mul__

    def derivative(self) -> "DeltaPolynomial":
        return DeltaPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k), self.var)

    def divmod(self, other: "DeltaPolynomial") -> tuple["DeltaPolynomial", "DeltaPolynomial"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.coeffs[-1]
        for k in range(len(quot) - 1, -1, -1):
            q = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = q
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= q * b
        return DeltaPolynomial(tuple(quot), self.var), DeltaPolynomial(tuple(rem), self.var)

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs] or ["0"]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = format_rational(mag)
            else:
                coef = "" if mag == 1 else format_rational(mag)
                if mag.denominator != 1:
                    coef = f"({coef})"
                body = coef + self.var + (f"^{k}" if k > 1 else "")
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"DeltaPolynomial({self})"


def default_nodes(degree: int) -> list[Fraction]:
    """``degree + 1`` equispaced nodes on [0, 1] (just 0 for constants)."""
    if degree <= 0:
        return [Fraction(0)]
    return [Fraction(k, degree) for k in range(degree + 1)]


def interpolate(xs: Sequence, ys: Sequence, var: str = "δ") -> DeltaPolynomial:
    """Exact interpolating polynomial through ``(xs[i], ys[i])`` (Newton form)."""
    xs = [to_fraction(x) for x in xs]
    ys = [to_fraction(y) for y in ys]
    if len(xs) != len(ys):
        raise SamplesError("xs and ys differ in length")
    if len(set(xs)) != len(xs):
        raise SamplesError("interpolation nodes must be distinct")
    if not xs:
        raise SamplesError("need at least one sample")
    # divided differences, in place
    coef = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = DeltaPolynomial((coef[-1],), var)
    for i in range(n - 2, -1, -1):
        poly = poly * DeltaPolynomial((-xs[i], Fraction(1)), var) + coef[i]
    return poly


def interpolate_bivariate(fn: Callable, xs: Iterable, ys: Iterable) -> dict[tuple[int, int], Fraction]:
    """Tensor-product interpolation of ``fn(x, y)`` on the grid ``xs x ys``.

    Returns ``{(i, j): c}`` for the nonzero coefficients of ``x**i * y**j``.
    """
    xs = [to_fraction(x) for x in xs]
    ys = [to_fraction(y) for y in ys]
    in_y = [interpolate(ys, [fn(x, y) for y in ys]) for x in xs]
    out: dict[tuple[int, int], Fraction] = {}
    for j in range(len(ys)):
        across_x = interpolate(xs, [p.coeff(j) for p in in_y])
        for i, c in enumerate(across_x.coeffs):
            if c != 0:
                out[(i, j)] = c
    return out
