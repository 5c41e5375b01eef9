"""
Boxes, correlators and Bell values
==================================

Build the tripartite boxes used throughout, check that they are valid
no-signaling boxes, and evaluate the two Bell expressions on them.
Everything is exact: probabilities are Fractions.
"""

from fractions import Fraction

from nlbdistill import (
    GF2Poly3,
    InputDomain,
    box_from_parity_poly,
    class2_inequality,
    class41_inequality,
    class_box,
    correlated_box,
    eval_inequality,
    ghz_box,
    local_vertices,
    noisy_class_box,
    noisy_ghz,
    restrict_domain,
    validate,
    value_poly_in_delta,
)

# %%
# The GHZ box lives on the four even-parity inputs.  Rows are inputs,
# columns the outputs 000 ... 111.
ghz = ghz_box()
print(ghz)
print("valid:", validate(ghz).ok)

# %%
# The same box comes out of a full-cube parity box once the odd inputs are
# dropped.  Its parity target is OR(x, y, z), whose GF(2) normal form is
# the full degree-3 polynomial below.
target = GF2Poly3.from_function(lambda x, y, z: x | y | z)
print("OR(x,y,z) =", target)
print(restrict_domain(box_from_parity_poly(target), InputDomain.EVEN_PARITY) == ghz)

# %%
# Class-2 value of the noisy GHZ box is eps - 3 delta.
ineq2 = class2_inequality()
print(ineq2)
for eps, delta in [(1, -1), (Fraction(3, 4), Fraction(1, 4)), (Fraction(1, 2), Fraction(-1, 3))]:
    print(eps, delta, "->", eval_inequality(noisy_ghz(eps, delta), ineq2))

# %%
# The class-41 expression has local bound 7 (check it on all 64 local
# deterministic boxes) and reaches 11 on each class representative.
ineq41 = class41_inequality()
print("local max:", max(eval_inequality(v, ineq41) for v in local_vertices()))
for cls in (44, 45, 46):
    print(cls, eval_inequality(class_box(cls), ineq41))
print("P^c:", eval_inequality(correlated_box(), ineq41))

# %%
# Mixing in the correlated box gives a line in delta.
print(value_poly_in_delta(lambda d: noisy_class_box(45, d), ineq41, 1))
