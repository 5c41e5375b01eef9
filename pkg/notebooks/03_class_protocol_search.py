"""
Protocols for the class 44/45/46 boxes
======================================

The noisy class boxes mix a class representative with the correlated box.
Five depth-2 protocols distill them; here we recover their value
polynomials, the regions where they help, and then search every depth-2
parity protocol for anything better.
"""

from nlbdistill.curves import CurveSpec, CurveTarget, curve_emit
from nlbdistill.search import (
    SearchSpaceSpec,
    WiringMode,
    baseline_poly,
    distillation_region,
    protocol_value_poly,
    search_report,
)
from nlbdistill.wiring import named_protocol

pairs = [("protocol1", 44), ("protocol1", 45), ("protocol1", 46), ("protocol2", 44), ("protocol2", 45),
         ("protocol2", 46), ("protocol3", 44), ("protocol4", 45), ("protocol5", 46)]
v = baseline_poly(44)
print("single box:", v)

# %%
for name, cls in pairs:
    vp = protocol_value_poly(named_protocol(name), cls)
    print(f"{name} on {cls}: {str(vp):18s} distills on {distillation_region(vp, v)}")

# %%
# Adaptive search over all 16.8M parity protocols takes a few seconds per
# class.  Many protocols share a polynomial; the report keeps one each.
for cls in (44, 45, 46):
    report = search_report(cls, SearchSpaceSpec(WiringMode.ADAPTIVE))
    print(f"class {cls}: {len(report.entries)} distinct polynomials, {len(report.distilling())} distill")
    for e in report.entries[:3]:
        print("   ", e.value, e.region, e.protocol.encoding)

# %%
print(curve_emit(CurveSpec(CurveTarget.CLASS_PROTOCOLS, 5)))
