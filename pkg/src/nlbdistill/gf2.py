"""Boolean polynomials in three variables over GF(2).

A polynomial is stored as an 8-bit algebraic normal form.  Bit ``m`` of
``anf`` is the coefficient of the monomial whose variable set is encoded by
``m`` with ``x`` as the high bit: ``m = 4*[x] + 2*[y] + [z]``.  Truth tables use
the same convention, bit ``i`` of ``truth_table`` holding ``f(x, y, z)`` for
``i = 4*x + 2*y + z``.  With both indexed by subsets, the ANF and the truth
table are related by the GF(2) Moebius transform, which is its own inverse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = ["GF2Poly3", "MONOMIAL_ORDER", "moebius"]

# presentation order {1, x, y, z, xy, xz, yz, xyz} as subset masks
MONOMIAL_ORDER = (0, 4, 2, 1, 6, 5, 3, 7)
_NAMES = {0: "1", 4: "x", 2: "y", 1: "z", 6: "xy", 5: "xz", 3: "yz", 7: "xyz"}
_VAR_BIT = {"x": 4, "y": 2, "z": 1}


def moebius(bits: int, nvars: int = 3) -> int:
    """GF(2) Moebius (subset-XOR) transform of a ``2**nvars``-bit table."""
    size = 1 << nvars
    t = [(bits >> i) & 1 for i in range(size)]
    step = 1
    while step < size:
        for m in range(size):
            if m & step:
                t[m] ^= t[m ^ step]
        step <<= 1
    return sum(b << i for i, b in enumerate(t))


@dataclass(frozen=True)
class GF2Poly3:
    anf: int = 0

    def __post_init__(self):
        if not 0 <= self.anf < 256:
            raise ValueError(f"ANF mask must lie in [0, 255], got {self.anf}")

    @classmethod
    def from_truth_table(cls, table: int) -> "GF2Poly3":
        if not 0 <= table < 256:
            raise ValueError(f"truth table must lie in [0, 255], got {table}")
        return cls(moebius(table))

    @classmethod
    def from_function(cls, fn) -> "GF2Poly3":
        """Build from any callable ``fn(x, y, z) -> bit``."""
        table = 0
        for i in range(8):
            if fn((i >> 2) & 1, (i >> 1) & 1, i & 1) & 1:
                table |= 1 << i
        return cls.from_truth_table(table)

    @classmethod
    def from_coefficients(cls, coeffs) -> "GF2Poly3":
        """Coefficient bits listed in :data:`MONOMIAL_ORDER`."""
        coeffs = tuple(coeffs)
        if len(coeffs) != 8 or any(c not in (0, 1) for c in coeffs):
            raise ValueError("need exactly 8 coefficient bits")
        return cls(sum(c << m for c, m in zip(coeffs, MONOMIAL_ORDER)))

    @classmethod
    def parse(cls, text: str) -> "GF2Poly3":
        """Parse expressions like ``"xy+yz+xz"``, ``"1^x"`` or ``"xy⊕xz"``."""
        s = text.replace(" ", "").replace("*", "").lower()
        if not s:
            raise ValueError("empty polynomial")
        anf = 0
        for term in re.split(r"[+^⊕]", s):
            if term == "1":
                anf ^= 1
            elif term == "0":
                continue
            elif term and set(term) <= set("xyz"):
                m = 0
                for ch in term:
                    m |= _VAR_BIT[ch]
                anf ^= 1 << m
            else:
                raise ValueError(f"bad monomial {term!r} in {text!r}")
        return cls(anf)

    @property
    def truth_table(self) -> int:
        return moebius(self.anf)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple((self.anf >> m) & 1 for m in MONOMIAL_ORDER)

    @property
    def degree(self) -> int:
        degs = [bin(m).count("1") for m in range(8) if (self.anf >> m) & 1]
        return max(degs, default=-1)

    def __call__(self, x: int, y: int, z: int) -> int:
        return (self.truth_table >> (4 * x + 2 * y + z)) & 1

    def __add__(self, other: "GF2Poly3") -> "GF2Poly3":
        return GF2Poly3(self.anf ^ other.anf)

    __xor__ = __add__

    def __mul__(self, other: "GF2Poly3") -> "GF2Poly3":
        return GF2Poly3.from_truth_table(self.truth_table & other.truth_table)

    def __str__(self) -> str:
        parts = [_NAMES[m] for m in MONOMIAL_ORDER if (self.anf >> m) & 1]
        return "+".join(parts) if parts else "0"
