"""Exact tripartite non-local boxes: construction, Bell values, wirings and search.

Everything numeric is a ``fractions.Fraction``; the only floating point in the
package is the integer-exact vectorised search engine and optional decimal
rendering of output.
"""

from .boxes import (
    CLASS_POLYS,
    InputDomain,
    LocalVertexParams,
    TripartiteBox,
    ValidationReport,
    box_from_parity_poly,
    class_box,
    correlated_box,
    ghz_box,
    local_vertex,
    local_vertices,
    mix,
    noisy_class_box,
    noisy_ghz,
    poly_eval,
    restrict_domain,
    validate,
)
from .errors import NLBError
from .fourier import BooleanFunction, nonadaptive_value, parity_bound, spectrum
from .gf2 import GF2Poly3
from .inequalities import (
    BellInequality,
    CorrelatorTerm,
    class2_inequality,
    class41_inequality,
    correlator,
    eval_inequality,
    value_poly_in_delta,
)
from .polynomial import DeltaPolynomial, interpolate
from .wiring import (
    FinalFunction,
    ParityProtocolParams,
    StageFunction,
    WiringProtocol,
    check_domain_preservation,
    named_protocol,
    protocol_1,
    protocol_2,
    protocol_3,
    protocol_4,
    protocol_5,
    protocol_ndp,
    protocol_parity_general,
    wire,
    wire_with_sink,
)

__version__ = "0.1.0"

__all__ = [
    "BellInequality",
    "BooleanFunction",
    "box_from_parity_poly",
    "check_domain_preservation",
    "class2_inequality",
    "class41_inequality",
    "class_box",
    "CLASS_POLYS",
    "correlated_box",
    "correlator",
    "CorrelatorTerm",
    "DeltaPolynomial",
    "eval_inequality",
    "FinalFunction",
    "GF2Poly3",
    "ghz_box",
    "InputDomain",
    "interpolate",
    "local_vertex",
    "local_vertices",
    "LocalVertexParams",
    "mix",
    "named_protocol",
    "NLBError",
    "noisy_class_box",
    "noisy_ghz",
    "nonadaptive_value",
    "parity_bound",
    "ParityProtocolParams",
    "poly_eval",
    "protocol_1",
    "protocol_2",
    "protocol_3",
    "protocol_4",
    "protocol_5",
    "protocol_ndp",
    "protocol_parity_general",
    "restrict_domain",
    "spectrum",
    "StageFunction",
    "TripartiteBox",
    "validate",
    "ValidationReport",
    "value_poly_in_delta",
    "wire",
    "wire_with_sink",
    "WiringProtocol",
]
