"""Depth-2 protocol spaces and their canonical ordering.

A protocol is indexed in mixed radix over the per-party choices
``(stage_A, final_A, stage_B, final_B, stage_C, final_C)``, each choice being a
position in the sorted list of allowed truth tables.  Index order is therefore
lexicographic order on the truth-table encodings, which is the order of
:func:`enumerate_depth2`.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from ..boxes import PARTIES
from ..wiring import FinalFunction, PartyWiring, StageFunction, WiringProtocol

__all__ = [
    "WiringMode",
    "FinalMode",
    "SearchSpaceSpec",
    "NON_ADAPTIVE_STAGES",
    "ADAPTIVE_STAGES",
    "PARITY_FINALS",
    "ALL_FINALS",
    "enumerate_depth2",
]


class WiringMode(enum.Enum):
    NON_ADAPTIVE = "non_adaptive"
    ADAPTIVE = "adaptive"


class FinalMode(enum.Enum):
    PARITY = "parity"
    ALL = "all"


# x, 1+x, 0, 1 as functions of (previous input, previous output)
NON_ADAPTIVE_STAGES = tuple(sorted({
    StageFunction.identity().table,
    StageFunction.negation().table,
    StageFunction.constant(0).table,
    StageFunction.constant(1).table,
}))
ADAPTIVE_STAGES = tuple(range(16))
# degree <= 1 polynomials in (x, a1, a2)
PARITY_FINALS = tuple(sorted({
    FinalFunction.parity(2, const=c0, input_coeff=c1, mask=(c2, c3)).table
    for c0, c1, c2, c3 in itertools.product((0, 1), repeat=4)
}))
ALL_FINALS = tuple(range(256))


@dataclass(frozen=True)
class SearchSpaceSpec:
    """Which depth-2 protocols to enumerate.

    ``stages`` and ``finals`` optionally narrow a party's choices to a subset
    of what the modes allow, as truth-table integers keyed by party name.
    """

    wiring_mode: WiringMode = WiringMode.ADAPTIVE
    final_mode: FinalMode = FinalMode.PARITY
    stages: Mapping[str, tuple[int, ...]] | None = field(default=None, compare=False)
    finals: Mapping[str, tuple[int, ...]] | None = field(default=None, compare=False)

    def __post_init__(self):
        for label, restriction, base in (
            ("stage", self.stages, self._base_stages()),
            ("final", self.finals, self._base_finals()),
        ):
            for party, allowed in (restriction or {}).items():
                if party not in PARTIES:
                    raise ValueError(f"unknown party {party!r}")
                extra = set(allowed) - set(base)
                if extra or not allowed:
                    raise ValueError(f"{label} restriction for {party} is empty or outside the {label} mode: {sorted(extra)}")

    def _base_stages(self) -> tuple[int, ...]:
        return NON_ADAPTIVE_STAGES if self.wiring_mode is WiringMode.NON_ADAPTIVE else ADAPTIVE_STAGES

    def _base_finals(self) -> tuple[int, ...]:
        return PARITY_FINALS if self.final_mode is FinalMode.PARITY else ALL_FINALS

    def stage_tables(self, party: str) -> tuple[int, ...]:
        if self.stages and party in self.stages:
            return tuple(sorted(set(self.stages[party])))
        return self._base_stages()

    def final_tables(self, party: str) -> tuple[int, ...]:
        if self.finals and party in self.finals:
            return tuple(sorted(set(self.finals[party])))
        return self._base_finals()

    def party_size(self, party: str) -> int:
        return len(self.stage_tables(party)) * len(self.final_tables(party))

    @property
    def size(self) -> int:
        out = 1
        for p in PARTIES:
            out *= self.party_size(p)
        return out

    def party_options(self, party: str) -> list[tuple[int, int]]:
        """``(stage_table, final_table)`` pairs in canonical order."""
        return [(s, f) for s in self.stage_tables(party) for f in self.final_tables(party)]

    def split_index(self, index: int) -> tuple[int, int, int]:
        if not 0 <= index < self.size:
            raise IndexError(f"protocol index {index} outside [0, {self.size})")
        nb, nc = self.party_size("B"), self.party_size("C")
        return index // (nb * nc), (index // nc) % nb, index % nc

    def protocol_at(self, index: int) -> WiringProtocol:
        opts = [self.party_options(p) for p in PARTIES]
        parts = tuple(
            PartyWiring((StageFunction(o[k][0]),), FinalFunction(2, o[k][1]))
            for o, k in zip(opts, self.split_index(index))
        )
        return WiringProtocol(2, parts)

    def index_of(self, protocol: WiringProtocol) -> int:
        if protocol.depth != 2:
            raise ValueError("search spaces hold depth-2 protocols only")
        index = 0
        for name, pw in zip(PARTIES, protocol.parties):
            opts = self.party_options(name)
            key = (pw.stages[0].table, pw.final.table)
            try:
                pos = opts.index(key)
            except ValueError:
                raise ValueError(f"party {name} wiring {key} is not in this search space") from None
            index = index * len(opts) + pos
        return index

    def describe(self) -> str:
        return f"{self.wiring_mode.value}+{self.final_mode.value} ({self.size} protocols)"


def enumerate_depth2(space: SearchSpaceSpec) -> Iterator[WiringProtocol]:
    """Yield every protocol of the space once, in canonical index order."""
    parts = [
        [PartyWiring((StageFunction(s),), FinalFunction(2, f)) for s, f in space.party_options(p)]
        for p in PARTIES
    ]
    for pa, pb, pc in itertools.product(*parts):
        yield WiringProtocol(2, (pa, pb, pc))
