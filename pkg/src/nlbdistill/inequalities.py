"""Bell expressions as signed sums of correlators, evaluated exactly."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .boxes import OUTPUTS, PARTIES, TripartiteBox
from .errors import DegreeError, DomainError, SamplesError, SignalingError
from .polynomial import DeltaPolynomial, default_nodes, interpolate
from .rational import format_rational, to_fraction

__all__ = [
    "CorrelatorTerm",
    "BellInequality",
    "correlator",
    "eval_inequality",
    "class2_inequality",
    "class41_inequality",
    "builtin_inequality",
    "value_poly_in_delta",
]

_TERM_RE = re.compile(r"([ABC])([01])")


@dataclass(frozen=True)
class CorrelatorTerm:
    """``<A_x B_y C_z>`` restricted to ``parties`` (a subsequence of "ABC")."""

    parties: str
    settings: tuple[int, ...]

    def __post_init__(self):
        parties = "".join(p for p in PARTIES if p in self.parties)
        if not parties or len(parties) != len(self.parties) or set(self.parties) - set(PARTIES):
            raise ValueError(f"parties must be a non-empty subset of ABC, got {self.parties!r}")
        settings = tuple(int(s) for s in self.settings)
        if len(settings) != len(parties) or any(s not in (0, 1) for s in settings):
            raise ValueError(f"need one input bit per party, got {self.settings!r} for {self.parties!r}")
        # keep settings aligned with canonical party order
        order = sorted(range(len(parties)), key=lambda i: PARTIES.index(self.parties[i]))
        object.__setattr__(self, "parties", parties)
        object.__setattr__(self, "settings", tuple(settings[i] for i in order))

    @classmethod
    def parse(cls, text: str) -> "CorrelatorTerm":
        """Parse the compact form ``"A0B1C1"``."""
        pairs = _TERM_RE.findall(text.replace(" ", ""))
        if "".join(p + s for p, s in pairs) != text.replace(" ", ""):
            raise ValueError(f"bad correlator term {text!r}")
        return cls("".join(p for p, _ in pairs), tuple(int(s) for _, s in pairs))

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(PARTIES.index(p) for p in self.parties)

    def completions(self):
        """All full input rows consistent with the settings, lexicographic."""
        absent = [k for k in range(3) if k not in self.indices]
        for fill in itertools.product((0, 1), repeat=len(absent)):
            row = [0, 0, 0]
            for k, s in zip(self.indices, self.settings):
                row[k] = s
            for k, s in zip(absent, fill):
                row[k] = s
            yield tuple(row)

    def __str__(self) -> str:
        return "".join(f"{p}{s}" for p, s in zip(self.parties, self.settings))


@dataclass(frozen=True)
class BellInequality:
    """``lower <= sum coeff * <term> <= upper``; bounds are stored, not enforced."""

    terms: tuple[tuple[Fraction, CorrelatorTerm], ...]
    upper: Fraction | None = None
    lower: Fraction | None = None
    name: str = ""

    def __post_init__(self):
        terms = tuple((to_fraction(c), t) for c, t in self.terms)
        seen = [t for _, t in terms]
        if len(set(seen)) != len(seen):
            raise ValueError("duplicate correlator term in inequality")
        object.__setattr__(self, "terms", terms)
        if self.upper is not None:
            object.__setattr__(self, "upper", to_fraction(self.upper))
        if self.lower is not None:
            object.__setattr__(self, "lower", to_fraction(self.lower))

    @classmethod
    def from_pairs(cls, pairs, upper=None, lower=None, name="") -> "BellInequality":
        """Build from ``[(coeff, "A0B1C1"), ...]``."""
        return cls(tuple((to_fraction(c), CorrelatorTerm.parse(t)) for c, t in pairs), upper, lower, name)

    def __str__(self) -> str:
        body = ""
        for c, t in self.terms:
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            coef = "" if mag == 1 else format_rational(mag)
            body += f" {sign} {coef}<{t}>"
        body = body.strip()
        if body.startswith("+ "):
            body = body[2:]
        if self.lower is not None:
            body = f"{format_rational(self.lower)} <= {body}"
        if self.upper is not None:
            body = f"{body} <= {format_rational(self.upper)}"
        return body


def _row_correlator(probs, idx: tuple[int, ...]) -> Fraction:
    total = Fraction(0)
    for abc, p in zip(OUTPUTS, probs):
        if p:
            parity = sum(abc[k] for k in idx) & 1
            total += -p if parity else p
    return total


def correlator(box: TripartiteBox, term: CorrelatorTerm) -> Fraction:
    """Exact correlator; absent parties' inputs are filled from the domain.

    The value comes from the lexicographically smallest admissible completion,
    and every other admissible completion must agree with it exactly.
    """
    values = [
        _row_correlator(box.row(*row), term.indices)
        for row in term.completions()
        if row in box.domain
    ]
    if not values:
        raise DomainError(f"no input row of the {box.domain.value} domain completes <{term}>")
    if any(v != values[0] for v in values[1:]):
        raise SignalingError(f"<{term}> depends on the inputs of absent parties")
    return values[0]


def eval_inequality(box: TripartiteBox, ineq: BellInequality) -> Fraction:
    return sum((c * correlator(box, t) for c, t in ineq.terms), Fraction(0))


def class2_inequality() -> BellInequality:
    return BellInequality.from_pairs(
        [(1, "A0B0C0"), (-1, "A0B1C1"), (-1, "A1B0C1"), (-1, "A1B1C0")],
        upper=2, lower=-2, name="class2",
    )


def class41_inequality() -> BellInequality:
    return BellInequality.from_pairs(
        [
            (-1, "A0"), (-1, "B0"), (-1, "C0"),
            (1, "A0B1"), (1, "A1B0"), (-1, "A1B1"),
            (1, "A0C1"), (1, "A1C0"), (-1, "A1C1"),
            (1, "B0C0"),
            (3, "A0B0C0"), (1, "A0B0C1"), (1, "A0B1C0"), (2, "A0B1C1"),
            (4, "A1B0C0"), (-1, "A1B0C1"), (-1, "A1B1C0"), (-2, "A1B1C1"),
        ],
        upper=7, name="class41",
    )


def builtin_inequality(name: str) -> BellInequality:
    table = {"class2": class2_inequality, "class41": class41_inequality}
    try:
        return table[name.lower()]()
    except KeyError:
        raise ValueError(f"unknown built-in inequality {name!r}; choose from {sorted(table)}") from None


def value_poly_in_delta(
    family: Callable[[Fraction], TripartiteBox],
    ineq: BellInequality,
    degree_bound: int,
    samples: Sequence | None = None,
) -> DeltaPolynomial:
    """Interpolate ``delta -> eval_inequality(family(delta), ineq)`` exactly.

    Exact whenever the value is a polynomial of degree at most
    ``degree_bound`` in delta, which holds for mixtures and wirings of boxes
    affine in delta.
    """
    if degree_bound < 0:
        raise SamplesError("degree bound must be non-negative")
    nodes = default_nodes(degree_bound) if samples is None else [to_fraction(s) for s in samples]
    if len(set(nodes)) < degree_bound + 1:
        raise SamplesError(f"need {degree_bound + 1} distinct samples, got {len(set(nodes))}")
    nodes = sorted(set(nodes))
    poly = interpolate(nodes, [eval_inequality(family(d), ineq) for d in nodes])
    if poly.degree > degree_bound:
        raise DegreeError(f"samples fit degree {poly.degree}, above the declared bound {degree_bound}")
    return poly
