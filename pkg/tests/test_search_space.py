import pytest
from hypothesis import given
from hypothesis import strategies as st

from nlbdistill.search import (
    NON_ADAPTIVE_STAGES,
    PARITY_FINALS,
    FinalMode,
    SearchSpaceSpec,
    WiringMode,
    enumerate_depth2,
)
from nlbdistill.wiring import protocol_1, protocol_2, protocol_3, protocol_4, protocol_5

NON_ADAPTIVE = SearchSpaceSpec(WiringMode.NON_ADAPTIVE)
ADAPTIVE = SearchSpaceSpec(WiringMode.ADAPTIVE)


def test_stage_and_final_sets():
    assert NON_ADAPTIVE_STAGES == (0x0, 0x3, 0xC, 0xF)
    assert len(PARITY_FINALS) == 16
    # degree <= 1 in (x, a1, a2): closed under xor and containing the 4 basis functions
    basis = {0xFF, 0xF0, 0xCC, 0xAA}
    assert basis <= set(PARITY_FINALS)
    assert all(a ^ b in PARITY_FINALS for a in PARITY_FINALS for b in PARITY_FINALS)


def test_counts():
    assert NON_ADAPTIVE.size == 4 ** 3 * 16 ** 3 == 262144
    assert ADAPTIVE.size == 16 ** 3 * 16 ** 3 == 16777216
    assert SearchSpaceSpec(WiringMode.NON_ADAPTIVE, FinalMode.ALL).size == (4 * 256) ** 3


def test_non_adaptive_stream_is_complete_and_ordered():
    seen = []
    for p in enumerate_depth2(NON_ADAPTIVE):
        seen.append(p.sort_key())
    assert len(seen) == 262144
    assert len(set(seen)) == 262144
    assert seen == sorted(seen)


def test_stream_contains_named_protocols():
    # Bob's stage is free, everything else pinned to protocol 1's choices
    space = SearchSpaceSpec(WiringMode.ADAPTIVE, stages={"A": (0xC,), "C": (0xC,)},
                            finals={"A": (0x66,), "B": (0x66,), "C": (0x66,)})
    encodings = [p.encoding for p in enumerate_depth2(space)]
    assert len(encodings) == 16
    assert protocol_1().encoding in encodings
    assert protocol_2().encoding in encodings
    assert protocol_1().encoding in {p.encoding for p in enumerate_depth2(NON_ADAPTIVE)}


@given(st.integers(0, 16777215))
def test_index_round_trip(i):
    assert ADAPTIVE.index_of(ADAPTIVE.protocol_at(i)) == i


def test_named_protocol_indices_are_consistent():
    for p in (protocol_1(), protocol_2(), protocol_3(), protocol_4(), protocol_5()):
        assert ADAPTIVE.protocol_at(ADAPTIVE.index_of(p)).encoding == p.encoding
    with pytest.raises(ValueError):
        NON_ADAPTIVE.index_of(protocol_2())
    with pytest.raises(IndexError):
        NON_ADAPTIVE.protocol_at(NON_ADAPTIVE.size)


def test_restrictions():
    space = SearchSpaceSpec(WiringMode.ADAPTIVE, stages={"A": (0xC,), "C": (0xC,)}, finals={"B": (0x66,)})
    # A and C: 1 stage x 16 finals, B: 16 stages x 1 final
    assert space.size == 16 ** 3
    assert space.index_of(protocol_2()) >= 0
    assert [p.encoding for p in enumerate_depth2(space)][0] == space.protocol_at(0).encoding
    with pytest.raises(ValueError):
        SearchSpaceSpec(WiringMode.NON_ADAPTIVE, stages={"A": (0x8,)})
    with pytest.raises(ValueError):
        SearchSpaceSpec(finals={"D": (0x66,)})
