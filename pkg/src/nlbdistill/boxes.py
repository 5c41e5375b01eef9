"""Tripartite (3,2,2) boxes in exact rational arithmetic.

A box is a conditional table ``P(abc|xyz)``.  Rows are indexed by the input
triple, columns by the output triple in the order 000, 001, ..., 111, so the
column of ``(a, b, c)`` is ``4*a + 2*b + c``.  Two input domains occur: the
full cube and the even-parity inputs 000, 011, 101, 110 on which the GHZ box
lives.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple

from .errors import DomainError, DomainMismatchError, RangeError, WeightsError
from .gf2 import GF2Poly3
from .rational import format_rational, to_fraction

__all__ = [
    "InputDomain",
    "TripartiteBox",
    "LocalVertexParams",
    "ValidationIssue",
    "ValidationReport",
    "CLASS_POLYS",
    "GHZ_P44_POLY",
    "GHZ_P46_POLY",
    "GHZ_P46_PRIME_POLY",
    "OUTPUTS",
    "PARTIES",
    "poly_eval",
    "box_from_parity_poly",
    "class_box",
    "correlated_box",
    "ghz_box",
    "noisy_ghz",
    "noisy_class_box",
    "local_vertex",
    "local_vertices",
    "mix",
    "restrict_domain",
    "validate",
]

PARTIES = ("A", "B", "C")
OUTPUTS = tuple(itertools.product((0, 1), repeat=3))
_ALL_INPUTS = OUTPUTS

# Parity targets of the class representatives; "c" is the correlated box.
CLASS_POLYS = {
    44: GF2Poly3.parse("xyz"),
    45: GF2Poly3.parse("xy+xz"),
    46: GF2Poly3.parse("xy+yz+xz"),
    "c": GF2Poly3(0),
}

# Exponents of the Fourier-form boxes that rebuild the even-parity GHZ box.
GHZ_P46_POLY = GF2Poly3.parse("xy+xz+yz")
GHZ_P46_PRIME_POLY = GF2Poly3.parse("x+y+z+xy+xz+yz")
GHZ_P44_POLY = GF2Poly3.parse("x+y+z+xy+xz+yz+xyz")


class InputDomain(enum.Enum):
    FULL = "full"
    EVEN_PARITY = "even_parity"

    @property
    def rows(self) -> tuple[tuple[int, int, int], ...]:
        if self is InputDomain.FULL:
            return _ALL_INPUTS
        return tuple(r for r in _ALL_INPUTS if (r[0] ^ r[1] ^ r[2]) == 0)

    def __contains__(self, row) -> bool:
        row = tuple(row)
        if len(row) != 3 or any(v not in (0, 1) for v in row):
            return False
        return self is InputDomain.FULL or (row[0] ^ row[1] ^ row[2]) == 0

    def issubset(self, other: "InputDomain") -> bool:
        return all(r in other for r in self.rows)

    @classmethod
    def parse(cls, text: str) -> "InputDomain":
        key = text.strip().lower().replace("-", "_")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown input domain {text!r} (use 'full' or 'even_parity')")


def _row_string(row) -> str:
    return "".join(str(v) for v in row)


@dataclass(frozen=True)
class TripartiteBox:
    """Immutable table of exact probabilities.

    ``table[i]`` is the row for ``domain.rows[i]``.  Construction does not
    check the no-signaling constraints; use :func:`validate` for that.
    """

    domain: InputDomain
    table: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = self.domain.rows
        if len(self.table) != len(rows):
            raise ValueError(f"{self.domain.value} box needs {len(rows)} rows, got {len(self.table)}")
        fixed = []
        for r in self.table:
            r = tuple(to_fraction(p) for p in r)
            if len(r) != 8:
                raise ValueError("each row needs 8 output probabilities")
            fixed.append(r)
        object.__setattr__(self, "table", tuple(fixed))

    @classmethod
    def from_function(cls, domain: InputDomain, fn: Callable[..., object]) -> "TripartiteBox":
        """Tabulate ``fn(a, b, c, x, y, z)`` over the domain."""
        return cls(domain, tuple(
            tuple(to_fraction(fn(a, b, c, *row)) for a, b, c in OUTPUTS) for row in domain.rows
        ))

    @classmethod
    def from_rows(cls, domain: InputDomain, rows: dict) -> "TripartiteBox":
        return cls(domain, tuple(tuple(rows[r]) for r in domain.rows))

    def row(self, x: int, y: int, z: int) -> tuple[Fraction, ...]:
        try:
            return self.table[self.domain.rows.index((x, y, z))]
        except ValueError:
            raise DomainError(f"input {x}{y}{z} is not in the {self.domain.value} domain") from None

    def __getitem__(self, row) -> tuple[Fraction, ...]:
        return self.row(*row)

    def prob(self, a: int, b: int, c: int, x: int, y: int, z: int) -> Fraction:
        return self.row(x, y, z)[4 * a + 2 * b + c]

    def items(self) -> Iterator[tuple[tuple[int, int, int], tuple[Fraction, ...]]]:
        return zip(self.domain.rows, self.table)

    def __str__(self) -> str:
        lines = [f"TripartiteBox({self.domain.value})"]
        for inp, probs in self.items():
            lines.append(f"  {_row_string(inp)}: " + " ".join(format_rational(p) for p in probs))
        return "\n".join(lines)


def poly_eval(poly: GF2Poly3, x: int, y: int, z: int) -> int:
    return poly(x, y, z)


def box_from_parity_poly(poly: GF2Poly3, domain: InputDomain = InputDomain.FULL) -> TripartiteBox:
    """Box with ``a xor b xor c = f(x, y, z)``, uniform over the allowed outputs."""
    quarter = Fraction(1, 4)
    return TripartiteBox.from_function(
        domain, lambda a, b, c, x, y, z: quarter if (a ^ b ^ c) == poly(x, y, z) else 0
    )


def _class_poly(class_id) -> GF2Poly3:
    try:
        return CLASS_POLYS[class_id]
    except KeyError:
        raise ValueError(f"unknown class {class_id!r}; expected 44, 45, 46 or 'c'") from None


def class_box(class_id) -> TripartiteBox:
    """Perfect class representative ``P^N`` (or ``P^c`` for ``"c"``)."""
    return box_from_parity_poly(_class_poly(class_id))


def correlated_box(domain: InputDomain = InputDomain.FULL) -> TripartiteBox:
    return box_from_parity_poly(GF2Poly3(0), domain)


def ghz_box(domain: InputDomain = InputDomain.EVEN_PARITY) -> TripartiteBox:
    """GHZ correlations: even output parity on 000, odd on every other input.

    On the full cube this is the parity box of OR(x, y, z).
    """
    return box_from_parity_poly(GF2Poly3.from_function(lambda x, y, z: x | y | z), domain)


def _check_range(name, value, lo, hi):
    if not lo <= value <= hi:
        raise RangeError(f"{name}={format_rational(value)} outside [{lo}, {hi}]")


def noisy_ghz(eps, delta) -> TripartiteBox:
    """Even-parity GHZ box with bias ``eps`` on input 000 and ``delta`` elsewhere.

    Row entries are ``(1 +/- bias)/8``, the plus sign on even output parity.
    ``noisy_ghz(1, -1)`` is the perfect GHZ box.
    """
    eps, delta = to_fraction(eps), to_fraction(delta)
    _check_range("eps", eps, -1, 1)
    _check_range("delta", delta, -1, 1)

    def entry(a, b, c, x, y, z):
        bias = eps if (x, y, z) == (0, 0, 0) else delta
        sign = 1 if (a ^ b ^ c) == 0 else -1
        return (1 + sign * bias) / 8

    return TripartiteBox.from_function(InputDomain.EVEN_PARITY, entry)


def noisy_class_box(class_id, delta) -> TripartiteBox:
    """Correlated-noise box ``delta * P^N + (1 - delta) * P^c``."""
    delta = to_fraction(delta)
    _check_range("delta", delta, 0, 1)
    return mix([(delta, class_box(class_id)), (1 - delta, correlated_box())])


class LocalVertexParams(NamedTuple):
    """Deterministic strategy ``a = iota*x + kappa``, ``b = mu*y + nu``, ``c = sigma*z + tau``."""

    iota: int
    kappa: int
    mu: int
    nu: int
    sigma: int
    tau: int


def local_vertex(p: LocalVertexParams) -> TripartiteBox:
    p = LocalVertexParams(*p)
    if any(v not in (0, 1) for v in p):
        raise RangeError(f"local vertex parameters must be bits, got {tuple(p)}")

    def entry(a, b, c, x, y, z):
        hit = (a == (p.iota * x) ^ p.kappa and b == (p.mu * y) ^ p.nu and c == (p.sigma * z) ^ p.tau)
        return 1 if hit else 0

    return TripartiteBox.from_function(InputDomain.FULL, entry)


def local_vertices() -> list[TripartiteBox]:
    """All 64 deterministic local boxes, parameters in lexicographic order."""
    return [local_vertex(LocalVertexParams(*bits)) for bits in itertools.product((0, 1), repeat=6)]


def mix(components: Iterable[tuple[object, TripartiteBox]]) -> TripartiteBox:
    """Convex combination ``sum_i w_i * B_i``; weights must be exact and sum to 1."""
    comps = [(to_fraction(w), box) for w, box in components]
    if not comps:
        raise WeightsError("mixture needs at least one component")
    if any(w < 0 for w, _ in comps):
        raise WeightsError("mixture weights must be non-negative")
    total = sum(w for w, _ in comps)
    if total != 1:
        raise WeightsError(f"mixture weights sum to {format_rational(total)}, not 1")
    domain = comps[0][1].domain
    if any(box.domain is not domain for _, box in comps):
        raise DomainMismatchError("all mixture components must share one input domain")
    table = tuple(
        tuple(sum((w * box.table[i][j] for w, box in comps), Fraction(0)) for j in range(8))
        for i in range(len(domain.rows))
    )
    return TripartiteBox(domain, table)


def restrict_domain(box: TripartiteBox, domain: InputDomain) -> TripartiteBox:
    if not domain.issubset(box.domain):
        raise DomainError(f"cannot restrict a {box.domain.value} box to {domain.value}")
    return TripartiteBox(domain, tuple(box.row(*r) for r in domain.rows))


@dataclass(frozen=True)
class ValidationIssue:
    """One failed constraint.

    For no-signaling issues ``party`` names the party (or parties) whose input
    change moved a marginal of the others.
    """

    kind: str
    rows: tuple[str, ...]
    party: str | None = None
    detail: str = ""

    def __str__(self) -> str:
        who = f" party {self.party}" if self.party else ""
        return f"{self.kind}{who} rows {','.join(self.rows)}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def __len__(self) -> int:
        return len(self.issues)

    def __iter__(self):
        return iter(self.issues)

    def kinds(self) -> set[str]:
        return {i.kind for i in self.issues}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(i) for i in self.issues)


def _marginal(row, keep: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {}
    for (abc, p) in zip(OUTPUTS, row):
        key = tuple(abc[k] for k in keep)
        out[key] = out.get(key, Fraction(0)) + p
    return out


def validate(box: TripartiteBox) -> ValidationReport:
    """Check positivity, normalization and no-signaling exactly."""
    issues: list[ValidationIssue] = []
    rows = box.domain.rows
    for inp, probs in box.items():
        neg = [j for j, p in enumerate(probs) if p < 0]
        if neg:
            issues.append(ValidationIssue(
                "POSITIVITY", (_row_string(inp),),
                detail="negative entries at outputs " + ",".join(_row_string(OUTPUTS[j]) for j in neg)))
        total = sum(probs)
        if total != 1:
            issues.append(ValidationIssue(
                "NORMALIZATION", (_row_string(inp),), detail=f"row sums to {format_rational(total)}"))

    if box.domain is InputDomain.FULL:
        # summing out party k's output must not depend on party k's input
        for k, name in enumerate(PARTIES):
            others = tuple(j for j in range(3) if j != k)
            for r in rows:
                if r[k] == 1:
                    continue
                r2 = tuple(1 - v if j == k else v for j, v in enumerate(r))
                if _marginal(box.row(*r), others) != _marginal(box.row(*r2), others):
                    issues.append(ValidationIssue(
                        "NO_SIGNALING", (_row_string(r), _row_string(r2)), party=name,
                        detail=f"marginal of {''.join(PARTIES[j] for j in others)} changes with {name}'s input"))
    else:
        # restricted domain: a party's own marginal may only depend on its own input
        for k, name in enumerate(PARTIES):
            others = "".join(PARTIES[j] for j in range(3) if j != k)
            for bit in (0, 1):
                group = [r for r in rows if r[k] == bit]
                ref = _marginal(box.row(*group[0]), (k,))
                for r in group[1:]:
                    if _marginal(box.row(*r), (k,)) != ref:
                        issues.append(ValidationIssue(
                            "NO_SIGNALING", (_row_string(group[0]), _row_string(r)), party=others,
                            detail=f"marginal of {name} changes with the inputs of {others}"))
    return ValidationReport(tuple(issues))
