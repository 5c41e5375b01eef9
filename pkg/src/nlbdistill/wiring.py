"""Local wirings of several boxes into one, and the named protocols.

Each party feeds its protocol input into box 1.  The input to box ``k`` is a
stage function of that party's input and output at box ``k - 1``, and the
protocol output is a final function of the protocol input and all ``n``
outputs.  Truth tables are plain integers, bit ``i`` holding the value at
input index ``i``:

* stage functions: ``i = 2 * prev_input + prev_output`` (4 bits);
* final functions: ``i = x << n | a_1 << (n - 1) | ... | a_n`` (``2**(n+1)`` bits).

Hex encodings print these integers, so they are little-endian in the index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

from .boxes import PARTIES, InputDomain, TripartiteBox
from .errors import DepthMismatchError, RangeError, RejectedInputError

__all__ = [
    "StageFunction",
    "FinalFunction",
    "PartyWiring",
    "WiringProtocol",
    "ParityProtocolParams",
    "DomainCheck",
    "wire",
    "wire_with_sink",
    "check_domain_preservation",
    "identity_protocol",
    "protocol_ndp",
    "protocol_parity_general",
    "protocol_1",
    "protocol_2",
    "protocol_3",
    "protocol_4",
    "protocol_5",
    "named_protocol",
]


@dataclass(frozen=True, order=True)
class StageFunction:
    """Next box input as a function of (previous box input, previous box output)."""

    table: int

    def __post_init__(self):
        if not 0 <= self.table < 16:
            raise ValueError(f"stage truth table must lie in [0, 15], got {self.table}")

    @classmethod
    def from_callable(cls, fn: Callable[[int, int], int]) -> "StageFunction":
        return cls(sum((fn(x, a) & 1) << (2 * x + a) for x in (0, 1) for a in (0, 1)))

    @classmethod
    def identity(cls) -> "StageFunction":
        return cls.from_callable(lambda x, a: x)

    @classmethod
    def negation(cls) -> "StageFunction":
        return cls.from_callable(lambda x, a: 1 - x)

    @classmethod
    def constant(cls, bit: int) -> "StageFunction":
        return cls.from_callable(lambda x, a: bit)

    def __call__(self, prev_input: int, prev_output: int) -> int:
        return (self.table >> (2 * prev_input + prev_output)) & 1

    @property
    def ignores_output(self) -> bool:
        return all(self(x, 0) == self(x, 1) for x in (0, 1))

    def to_hex(self) -> str:
        return format(self.table, "x")


@dataclass(frozen=True, order=True)
class FinalFunction:
    """Protocol output as a function of (protocol input, a_1, ..., a_n)."""

    n: int
    table: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("final function needs at least one box output")
        if not 0 <= self.table < (1 << (1 << (self.n + 1))):
            raise ValueError(f"final truth table out of range for n={self.n}")

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[int, tuple[int, ...]], int]) -> "FinalFunction":
        table = 0
        for idx in range(1 << (n + 1)):
            x = idx >> n
            outs = tuple((idx >> (n - 1 - i)) & 1 for i in range(n))
            if fn(x, outs) & 1:
                table |= 1 << idx
        return cls(n, table)

    @classmethod
    def parity(cls, n: int, const: int = 0, input_coeff: int = 0, mask: Sequence[int] | None = None) -> "FinalFunction":
        """``const + input_coeff*x + sum of the selected outputs`` over GF(2)."""
        mask = (1,) * n if mask is None else tuple(mask)
        if len(mask) != n:
            raise ValueError("mask needs one bit per box")
        return cls.from_callable(
            n, lambda x, outs: const ^ (input_coeff & x) ^ (sum(m & o for m, o in zip(mask, outs)) & 1)
        )

    @classmethod
    def from_output_table(cls, n: int, table: int) -> "FinalFunction":
        """Input-independent final built from a truth table over the n outputs."""
        return cls(n, table | (table << (1 << n)))

    def __call__(self, x: int, outputs: Sequence[int]) -> int:
        idx = x << self.n
        for i, o in enumerate(outputs):
            idx |= o << (self.n - 1 - i)
        return (self.table >> idx) & 1

    def to_hex(self) -> str:
        width = max(1, (1 << (self.n + 1)) // 4)
        return format(self.table, f"0{width}x")


@dataclass(frozen=True)
class PartyWiring:
    stages: tuple[StageFunction, ...]
    final: FinalFunction


@dataclass(frozen=True)
class WiringProtocol:
    """A depth-``n`` protocol: ``n - 1`` stage functions and one final per party."""

    depth: int
    parties: tuple[PartyWiring, PartyWiring, PartyWiring]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.depth < 1:
            raise RangeError("protocol depth must be at least 1")
        if len(self.parties) != 3:
            raise ValueError("a tripartite protocol needs exactly three party wirings")
        for p in self.parties:
            if len(p.stages) != self.depth - 1 or p.final.n != self.depth:
                raise DepthMismatchError(f"party wiring does not match depth {self.depth}")

    @classmethod
    def build(cls, depth: int, stages: dict | None = None, finals: dict | None = None, name: str = "") -> "WiringProtocol":
        """Per-party stages and finals keyed by "A", "B", "C".

        Missing stages default to the identity, missing finals to the XOR of
        all outputs.
        """
        stages = stages or {}
        finals = finals or {}
        parties = []
        for p in PARTIES:
            st = tuple(stages.get(p, (StageFunction.identity(),) * (depth - 1)))
            fin = finals.get(p, FinalFunction.parity(depth))
            parties.append(PartyWiring(st, fin))
        return cls(depth, tuple(parties), name)

    @property
    def is_non_adaptive(self) -> bool:
        return all(s.ignores_output for p in self.parties for s in p.stages)

    @property
    def encoding(self) -> str:
        """Canonical text form, e.g. ``A:c/66;B:c/66;C:c/66``."""
        return ";".join(
            f"{name}:{','.join(s.to_hex() for s in p.stages)}/{p.final.to_hex()}"
            for name, p in zip(PARTIES, self.parties)
        )

    def sort_key(self) -> tuple:
        return tuple((tuple(s.table for s in p.stages), p.final.table) for p in self.parties)

    def __str__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"{label}[depth {self.depth}] {self.encoding}"


class ParityProtocolParams(NamedTuple):
    s_a: int
    s_b: int
    s_c: int
    t: int


class DomainCheck(NamedTuple):
    ok: bool
    witness: dict | None


def _reachable(stages: Sequence[StageFunction], x: int) -> list[dict[int, tuple[int, ...]]]:
    """Per box, each reachable input value with one output history reaching it."""
    levels = [{x: ()}]
    for st in stages:
        nxt: dict[int, tuple[int, ...]] = {}
        for val, hist in levels[-1].items():
            for out in (0, 1):
                nxt.setdefault(st(val, out), hist + (out,))
        levels.append(nxt)
    return levels


def _first_rejection(protocol: WiringProtocol, domains: Sequence[InputDomain], inputs) -> dict | None:
    for inp in inputs:
        per_party = [_reachable(p.stages, v) for p, v in zip(protocol.parties, inp)]
        for k in range(protocol.depth):
            for combo in itertools.product(*(sorted(lv[k].items()) for lv in per_party)):
                row = tuple(v for v, _ in combo)
                if row not in domains[k]:
                    outputs = [
                        "".join(str(h[j]) for _, h in combo) for j in range(k)
                    ]
                    return {
                        "protocol_input": "".join(map(str, inp)),
                        "box": k + 1,
                        "box_input": "".join(map(str, row)),
                        "outputs": outputs,
                    }
    return None


def check_domain_preservation(protocol: WiringProtocol, domain: InputDomain) -> DomainCheck:
    """Whether every output history keeps every box input inside ``domain``.

    Zero-probability histories count too: the check is structural.
    """
    witness = _first_rejection(protocol, [domain] * protocol.depth, domain.rows)
    return DomainCheck(witness is None, witness)


def _compose(protocol: WiringProtocol, boxes: Sequence[TripartiteBox], permissive: bool):
    n = protocol.depth
    if len(boxes) != n:
        raise DepthMismatchError(f"protocol of depth {n} needs {n} boxes, got {len(boxes)}")
    domain = boxes[0].domain
    if not permissive:
        witness = _first_rejection(protocol, [b.domain for b in boxes], domain.rows)
        if witness is not None:
            raise RejectedInputError(
                f"box {witness['box']} would receive input {witness['box_input']} "
                f"(protocol input {witness['protocol_input']}, outputs {witness['outputs']})",
                witness,
            )
    rows = [dict(b.items()) for b in boxes]
    stage = [[p.stages[k] for p in protocol.parties] for k in range(n - 1)]
    finals = [p.final for p in protocol.parties]
    table, sink = [], {}

    for inp in domain.rows:
        acc = [Fraction(0)] * 8
        lost = [Fraction(0)]

        def step(k, ins, prob, hist):
            if k == n:
                a = finals[0](inp[0], [h >> 2 & 1 for h in hist])
                b = finals[1](inp[1], [h >> 1 & 1 for h in hist])
                c = finals[2](inp[2], [h & 1 for h in hist])
                acc[4 * a + 2 * b + c] += prob
                return
            row = rows[k].get(ins)
            if row is None:
                lost[0] += prob
                return
            for o, q in enumerate(row):
                if not q:
                    continue
                if k + 1 < n:
                    sa, sb, sc = stage[k]
                    nxt = (sa(ins[0], o >> 2 & 1), sb(ins[1], o >> 1 & 1), sc(ins[2], o & 1))
                else:
                    nxt = None
                step(k + 1, nxt, prob * q, hist + (o,))

        step(0, inp, Fraction(1), ())
        table.append(tuple(acc))
        if lost[0]:
            sink["".join(map(str, inp))] = lost[0]
    return TripartiteBox(domain, tuple(table)), sink


def wire(protocol: WiringProtocol, boxes: Sequence[TripartiteBox]) -> TripartiteBox:
    """Exact composed box, enumerating every output history.

    Raises :class:`RejectedInputError` if any history could drive a box
    outside its input domain.
    """
    return _compose(protocol, boxes, permissive=False)[0]


def wire_with_sink(protocol: WiringProtocol, boxes: Sequence[TripartiteBox]) -> tuple[TripartiteBox, dict[str, Fraction]]:
    """Permissive composition: histories hitting a rejected input are dropped.

    Their probability is returned per protocol input in the second element;
    the table rows then sum to one minus that mass, so rejected histories add
    nothing to any correlator.
    """
    return _compose(protocol, boxes, permissive=True)


def identity_protocol(depth: int = 1) -> WiringProtocol:
    """Protocol whose output is box 1's output; later boxes are ignored."""
    final = FinalFunction.parity(depth, mask=(1,) + (0,) * (depth - 1))
    return WiringProtocol.build(depth, finals={p: final for p in PARTIES}, name="identity")


def protocol_ndp(n: int) -> WiringProtocol:
    """Non-adaptive depth-n parity protocol: every box gets the protocol input."""
    if n < 1:
        raise RangeError("NDP depth must be at least 1")
    return WiringProtocol.build(n, name=f"ndp{n}")


def protocol_parity_general(p: ParityProtocolParams) -> WiringProtocol:
    """Depth-2 non-adaptive parity protocol with negation toggles.

    Outputs are ``a = 1+s_a+t+a1+a2``, ``b = s_b+t+b1+b2``,
    ``c = s_c+c1+c2``.  ``t`` flips two parties at once, so it never changes a
    three-party correlator.
    """
    p = ParityProtocolParams(*p)
    if any(v not in (0, 1) for v in p):
        raise RangeError("parity protocol parameters must be bits")
    finals = {
        "A": FinalFunction.parity(2, const=1 ^ p.s_a ^ p.t),
        "B": FinalFunction.parity(2, const=p.s_b ^ p.t),
        "C": FinalFunction.parity(2, const=p.s_c),
    }
    return WiringProtocol.build(2, finals=finals, name="parity({},{},{},{})".format(*p))


def protocol_1() -> WiringProtocol:
    return WiringProtocol.build(2, name="protocol1")


def protocol_2() -> WiringProtocol:
    """Adaptive: Bob feeds ``y * b1`` to box 2."""
    return WiringProtocol.build(2, stages={"B": (StageFunction.from_callable(lambda y, b: y & b),)}, name="protocol2")


def protocol_3() -> WiringProtocol:
    return WiringProtocol.build(2, stages={"B": (StageFunction.negation(),)}, name="protocol3")


def protocol_4() -> WiringProtocol:
    return WiringProtocol.build(2, stages={"B": (StageFunction.constant(0),)}, name="protocol4")


def protocol_5() -> WiringProtocol:
    return WiringProtocol.build(
        2, stages={"A": (StageFunction.negation(),), "B": (StageFunction.constant(0),)}, name="protocol5"
    )


_NAMED = {
    "protocol1": protocol_1,
    "protocol2": protocol_2,
    "protocol3": protocol_3,
    "protocol4": protocol_4,
    "protocol5": protocol_5,
}


def named_protocol(name: str) -> WiringProtocol:
    """Resolve ``protocol1``..``protocol5``, ``ndpN``, ``identityN`` or ``parity:sa,sb,sc,t``."""
    key = name.strip().lower().replace("_", "")
    if key in _NAMED:
        return _NAMED[key]()
    if key.startswith("ndp") and key[3:].isdigit():
        return protocol_ndp(int(key[3:]))
    if key.startswith("identity"):
        rest = key[len("identity"):]
        return identity_protocol(int(rest) if rest else 1)
    if key.startswith("parity:"):
        bits = [int(b) for b in key[len("parity:"):].split(",")]
        if len(bits) != 4:
            raise ValueError("parity protocol needs four bits: sa,sb,sc,t")
        return protocol_parity_general(ParityProtocolParams(*bits))
    raise ValueError(f"unknown protocol {name!r}")
