"""
Distilling noisy GHZ boxes
==========================

Wire copies of the noisy GHZ box together and watch the class-2 value.
The non-adaptive parity protocol on n boxes raises both biases to the
n-th power; the Fourier picture explains why parity finals are the only
ones worth considering.
"""

from fractions import Fraction

from nlbdistill import (
    BooleanFunction,
    class2_inequality,
    eval_inequality,
    noisy_ghz,
    nonadaptive_value,
    parity_bound,
    protocol_ndp,
    spectrum,
    wire,
)
from nlbdistill.curves import CurveSpec, CurveTarget, curve_emit
from nlbdistill.search import SearchSpaceSpec, WiringMode, ghz_search_depth2

eps, delta = Fraction(3, 4), Fraction(1, 4)
ineq = class2_inequality()

# %%
# Single box versus NDP_n.
for n in range(1, 5):
    box = wire(protocol_ndp(n), [noisy_ghz(eps, delta)] * n)
    print(n, eval_inequality(box, ineq), eps ** n - 3 * delta ** n)

# %%
# Fourier view: only the all-ones coefficient of a parity survives, so the
# value is eps^n - 3 delta^n.  Majority spreads its weight and does worse.
par = BooleanFunction.parity(3)
maj = BooleanFunction.from_callable(3, lambda b: int(sum(b) >= 2))
print(spectrum(maj).support())
print("parity:", nonadaptive_value(par, par, par, eps, delta))
print("majority:", nonadaptive_value(maj, maj, maj, eps, delta))
print("bound:", parity_bound(eps, delta, 3))

# %%
# Exhaustive depth-2 search.  Constant finals count as parity finals, so
# the local value 2 is always reachable; the question is whether anything
# beats it, and whether adaptivity helps.
for mode in WiringMode:
    result = ghz_search_depth2(eps, delta, SearchSpaceSpec(mode))
    print(mode.value, result.best, result.best_protocol.encoding)

# %%
# Region where two boxes beat one, as CSV (eps, delta, V, V', distills).
print(curve_emit(CurveSpec(CurveTarget.GHZ_DEPTH2, 5)))
