"""Fourier analysis of Boolean functions on {0,1}^n, exact over the rationals.

Bit strings are integers whose most significant of ``n`` bits is the first
coordinate, matching the ``a_1 ... a_n`` order of final functions.  The +/-1
view of a function maps output bit ``b`` to ``1 - 2b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ArityError, LengthError, RangeError
from .rational import to_fraction

__all__ = [
    "BooleanFunction",
    "FourierSpectrum",
    "character",
    "spectrum",
    "inverse",
    "nonadaptive_value",
    "parity_bound",
]


def _bits(value, n: int | None = None) -> tuple[int, int]:
    """Accept ``"0101"`` strings, bit sequences, or ``(int, n)`` pairs."""
    if isinstance(value, str):
        if set(value) - {"0", "1"}:
            raise ValueError(f"not a bit string: {value!r}")
        return int(value or "0", 2), len(value)
    if isinstance(value, int):
        if n is None:
            raise ValueError("integer bit strings need an explicit length")
        return value, n
    bits = tuple(value)
    return sum(b << (len(bits) - 1 - i) for i, b in enumerate(bits)), len(bits)


def character(z, a) -> int:
    """``chi_z(a) = (-1)**(z . a)`` for equal-length bit strings."""
    zi, zn = _bits(z)
    ai, an = _bits(a)
    if zn != an:
        raise LengthError(f"bit strings differ in length: {zn} vs {an}")
    return -1 if bin(zi & ai).count("1") & 1 else 1


@dataclass(frozen=True)
class BooleanFunction:
    """``f: {0,1}^n -> {0,1}`` stored as a ``2**n``-bit truth table integer."""

    n: int
    table: int

    def __post_init__(self):
        if self.n < 0:
            raise ArityError("arity must be non-negative")
        if not 0 <= self.table < (1 << (1 << self.n)):
            raise ValueError(f"truth table out of range for n={self.n}")

    @classmethod
    def from_callable(cls, n: int, fn) -> "BooleanFunction":
        table = 0
        for idx in range(1 << n):
            if fn(tuple((idx >> (n - 1 - i)) & 1 for i in range(n))) & 1:
                table |= 1 << idx
        return cls(n, table)

    @classmethod
    def parity(cls, n: int) -> "BooleanFunction":
        return cls.from_callable(n, lambda bits: sum(bits) & 1)

    @classmethod
    def constant(cls, n: int, bit: int = 0) -> "BooleanFunction":
        return cls(n, ((1 << (1 << n)) - 1) if bit else 0)

    @classmethod
    def from_hex(cls, n: int, text: str) -> "BooleanFunction":
        return cls(n, int(text, 16))

    def __call__(self, idx: int) -> int:
        return (self.table >> idx) & 1

    def pm(self, idx: int) -> int:
        return 1 - 2 * self(idx)

    def to_hex(self) -> str:
        return format(self.table, f"0{max(1, (1 << self.n) // 4)}x")


@dataclass(frozen=True)
class FourierSpectrum:
    """``coefficients[z]`` is the coefficient of ``chi_z`` (``z`` as an integer)."""

    n: int
    coefficients: tuple[Fraction, ...]

    def __getitem__(self, z) -> Fraction:
        zi, zn = _bits(z, self.n)
        if zn != self.n:
            raise LengthError(f"expected {self.n} bits, got {zn}")
        return self.coefficients[zi]

    def support(self) -> dict[str, Fraction]:
        return {format(z, f"0{self.n}b") if self.n else "": c for z, c in enumerate(self.coefficients) if c}

    def parseval(self) -> Fraction:
        return sum((c * c for c in self.coefficients), Fraction(0))


def _walsh_hadamard(values: list[int]) -> list[int]:
    v = list(values)
    h = 1
    while h < len(v):
        for i in range(0, len(v), 2 * h):
            for j in range(i, i + h):
                v[j], v[j + h] = v[j] + v[j + h], v[j] - v[j + h]
        h *= 2
    return v


def spectrum(f: BooleanFunction) -> FourierSpectrum:
    """``f_hat(z) = 2**-n * sum_x f(x) chi_z(x)`` for the +/-1 view of ``f``."""
    size = 1 << f.n
    raw = _walsh_hadamard([f.pm(i) for i in range(size)])
    return FourierSpectrum(f.n, tuple(Fraction(r, size) for r in raw))


def inverse(spec: FourierSpectrum) -> BooleanFunction:
    """Rebuild the Boolean function; fails if the spectrum is not of a +/-1 function."""
    size = 1 << spec.n
    common = size  # coefficients have denominator dividing 2**n
    ints = [int(c * common) for c in spec.coefficients]
    if any(Fraction(i, common) != c for i, c in zip(ints, spec.coefficients)):
        raise ValueError("coefficients are not multiples of 2**-n")
    values = _walsh_hadamard(ints)
    table = 0
    for idx, v in enumerate(values):
        val = Fraction(v, common)
        if val == -1:
            table |= 1 << idx
        elif val != 1:
            raise ValueError("spectrum does not describe a +/-1 valued function")
    return BooleanFunction(spec.n, table)


def _bias_correlation(fa, fb, fc, bias: Fraction) -> Fraction:
    """``E[f g h]`` when each box row has three-party bias ``bias``."""
    return sum(
        (a * b * c * bias ** bin(z).count("1")
         for z, (a, b, c) in enumerate(zip(fa.coefficients, fb.coefficients, fc.coefficients))),
        Fraction(0),
    )


def nonadaptive_value(fA: BooleanFunction, fB: BooleanFunction, fC: BooleanFunction, eps, delta) -> Fraction:
    """Class-2 value of the depth-n non-adaptive protocol on noisy GHZ boxes.

    Every box receives the protocol input and each party outputs its final
    function of its own ``n`` box outputs.  The 000 row has bias ``eps`` and
    the three other rows bias ``delta``; the value is
    ``<ABC>_000 - <ABC>_011 - <ABC>_101 - <ABC>_110``.
    """
    if not fA.n == fB.n == fC.n:
        raise ArityError(f"final functions differ in arity: {fA.n}, {fB.n}, {fC.n}")
    eps, delta = to_fraction(eps), to_fraction(delta)
    sa, sb, sc = spectrum(fA), spectrum(fB), spectrum(fC)
    row_000 = _bias_correlation(sa, sb, sc, eps)
    row_other = _bias_correlation(sa, sb, sc, delta)
    return row_000 - 3 * row_other


def parity_bound(eps, delta, n: int) -> Fraction:
    """``max_{1<=k<=n} |eps**k - 3 delta**k|``."""
    if n < 1:
        raise RangeError("n must be at least 1")
    eps, delta = to_fraction(eps), to_fraction(delta)
    return max(abs(eps ** k - 3 * delta ** k) for k in range(1, n + 1))
