"""JSON documents for boxes, inequalities, protocols and search reports.

Numbers are written as canonical rational strings ("3/8", "-1", "0").
Readers accept strings or integers and raise :class:`FormatError` with the
line and column of malformed JSON.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .boxes import OUTPUTS, PARTIES, InputDomain, TripartiteBox
from .errors import FormatError
from .inequalities import BellInequality, CorrelatorTerm
from .rational import format_float, format_rational, to_fraction
from .wiring import FinalFunction, PartyWiring, StageFunction, WiringProtocol

__all__ = [
    "loads",
    "dumps",
    "box_to_dict",
    "box_from_dict",
    "inequality_to_dict",
    "inequality_from_dict",
    "protocol_to_dict",
    "protocol_from_dict",
    "report_to_dict",
    "ghz_result_to_dict",
]

_OUTPUT_LABELS = ["".join(map(str, o)) for o in OUTPUTS]


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _num(value, floats: bool = False):
    return format_float(value) if floats else format_rational(value)


def _parse_num(value, where: str) -> Fraction:
    if isinstance(value, float):
        raise FormatError(f"{where}: numbers must be rational strings or integers, got {value!r}")
    try:
        return to_fraction(value)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def _bits(text, length: int, where: str) -> tuple[int, ...]:
    if not isinstance(text, str) or len(text) != length or set(text) - {"0", "1"}:
        raise FormatError(f"{where}: expected a {length}-bit string, got {text!r}")
    return tuple(int(ch) for ch in text)


def _require(doc, key: str, kind, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise FormatError(f"{where}: missing key {key!r}")
    if not isinstance(doc[key], kind):
        raise FormatError(f"{where}.{key}: unexpected type {type(doc[key]).__name__}")
    return doc[key]


# boxes

def box_to_dict(box: TripartiteBox, floats: bool = False) -> dict:
    return {
        "domain": box.domain.value,
        "outputs": _OUTPUT_LABELS,
        "rows": [
            {"input": "".join(map(str, inp)), "probs": [_num(p, floats) for p in probs]}
            for inp, probs in box.items()
        ],
    }


def box_from_dict(doc: Any) -> TripartiteBox:
    try:
        domain = InputDomain.parse(_require(doc, "domain", str, "box"))
    except ValueError as exc:
        raise FormatError(f"box.domain: {exc}") from None
    if doc.get("outputs", _OUTPUT_LABELS) != _OUTPUT_LABELS:
        raise FormatError("box.outputs: column order must be 000, 001, ..., 111")
    rows = {}
    for i, row in enumerate(_require(doc, "rows", list, "box")):
        where = f"box.rows[{i}]"
        inp = _bits(_require(row, "input", str, where), 3, f"{where}.input")
        probs = _require(row, "probs", list, where)
        if len(probs) != 8:
            raise FormatError(f"{where}.probs: expected 8 entries, got {len(probs)}")
        if inp in rows:
            raise FormatError(f"{where}: duplicate input {row['input']}")
        rows[inp] = [_parse_num(p, f"{where}.probs[{k}]") for k, p in enumerate(probs)]
    if set(rows) != set(domain.rows):
        raise FormatError(f"box.rows: inputs do not match the {domain.value} domain")
    return TripartiteBox.from_rows(domain, rows)


# inequalities

def inequality_to_dict(ineq: BellInequality) -> dict:
    doc: dict = {
        "terms": [
            {"coeff": format_rational(c), "parties": t.parties, "settings": "".join(map(str, t.settings))}
            for c, t in ineq.terms
        ]
    }
    if ineq.upper is not None:
        doc["upper"] = format_rational(ineq.upper)
    if ineq.lower is not None:
        doc["lower"] = format_rational(ineq.lower)
    if ineq.name:
        doc["name"] = ineq.name
    return doc


def inequality_from_dict(doc: Any) -> BellInequality:
    terms = []
    for i, t in enumerate(_require(doc, "terms", list, "inequality")):
        where = f"inequality.terms[{i}]"
        parties = _require(t, "parties", str, where)
        settings = _bits(_require(t, "settings", str, where), len(parties), f"{where}.settings")
        coeff = _parse_num(t.get("coeff"), f"{where}.coeff")
        try:
            terms.append((coeff, CorrelatorTerm(parties, settings)))
        except ValueError as exc:
            raise FormatError(f"{where}: {exc}") from None
    upper = doc.get("upper")
    lower = doc.get("lower")
    try:
        return BellInequality(
            tuple(terms),
            None if upper is None else _parse_num(upper, "inequality.upper"),
            None if lower is None else _parse_num(lower, "inequality.lower"),
            str(doc.get("name", "")),
        )
    except ValueError as exc:
        raise FormatError(f"inequality: {exc}") from None


# protocols

def protocol_to_dict(protocol: WiringProtocol) -> dict:
    doc: dict = {
        "depth": protocol.depth,
        "parties": {
            name: {"stages": [s.to_hex() for s in p.stages], "final": p.final.to_hex()}
            for name, p in zip(PARTIES, protocol.parties)
        },
    }
    if protocol.name:
        doc["name"] = protocol.name
    return doc


def _hex(text, where: str) -> int:
    if not isinstance(text, str):
        raise FormatError(f"{where}: expected a hex string")
    try:
        return int(text, 16)
    except ValueError:
        raise FormatError(f"{where}: not a hex truth table: {text!r}") from None


def protocol_from_dict(doc: Any) -> WiringProtocol:
    depth = _require(doc, "depth", int, "protocol")
    parties_doc = _require(doc, "parties", dict, "protocol")
    parties = []
    for name in PARTIES:
        where = f"protocol.parties.{name}"
        pd = _require(parties_doc, name, dict, "protocol.parties")
        try:
            stages = tuple(StageFunction(_hex(s, f"{where}.stages[{k}]"))
                           for k, s in enumerate(_require(pd, "stages", list, where)))
            final = FinalFunction(depth, _hex(_require(pd, "final", str, where), f"{where}.final"))
        except FormatError:
            raise
        except ValueError as exc:
            raise FormatError(f"{where}: {exc}") from None
        parties.append(PartyWiring(stages, final))
    try:
        return WiringProtocol(depth, tuple(parties), str(doc.get("name", "")))
    except ValueError as exc:
        raise FormatError(f"protocol: {exc}") from None


# search output

def _region_to_list(region, floats: bool) -> list:
    out = []
    for iv in region.intervals:
        lo, hi = iv.endpoint_strings(floats)
        out.append({"lo": lo, "hi": hi, "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed})
    return out


def report_to_dict(report, floats: bool = False) -> dict:
    return {
        "class": str(report.class_id),
        "space": {
            "wiring_mode": report.space.wiring_mode.value,
            "final_mode": report.space.final_mode.value,
            "size": report.total,
        },
        "baseline": report.baseline.to_strings(),
        "comparison": "abs" if report.absolute else "raw",
        "distinct_values": len(report.entries),
        "entries": [
            {
                "rank": k + 1,
                "protocol": e.protocol.encoding,
                "index": e.index,
                "count": e.count,
                "value": e.value.to_strings(),
                "value_text": str(e.value),
                "region": _region_to_list(e.region, floats),
                "region_text": e.region.format(floats),
                "area": _num(e.region.area, floats),
                "max_gain": _num(e.max_gain, floats),
            }
            for k, e in enumerate(report.entries)
        ],
    }


def ghz_result_to_dict(result, floats: bool = False) -> dict:
    return {
        "eps": _num(result.eps, floats),
        "delta": _num(result.delta, floats),
        "space": {
            "wiring_mode": result.space.wiring_mode.value,
            "final_mode": result.space.final_mode.value,
            "size": result.total,
        },
        "best": _num(result.best, floats),
        "maximisers": result.count,
        "protocols": [p.encoding for p in result.protocols],
    }
