"""
Grid checks of the bias conditions
==================================

Run the exhaustive checkers on a few weight families and print the item
table. The tanh family is not clean on every item: near the extremes
tanh flattens, so an opinion further out can outweigh a closer one.
"""

import numpy as np

from asymbias import CubicAbs, GridSpec, LinearSymmetric, NegTanhQuadratic, TanhQuadratic
from asymbias.verifier import check_confirmation, check_negativity, check_theorem1

grid = GridSpec(41)


def show(label, report):
    print(f"-- {label}")
    for it in report.items:
        print(f"   {it.item:16s} {it.status:4s} {it.violations:5d} / {it.checked}")


show("tanh-quadratic, confirmation", check_confirmation(TanhQuadratic(0.6, 0.011), grid))
show("linear-symmetric, confirmation", check_confirmation(LinearSymmetric(0.6, 0.5), grid))
show("neg-tanh-quadratic, negativity", check_negativity(NegTanhQuadratic(0.1, 0.05), grid))

rep = check_confirmation(TanhQuadratic(0.6, 0.011), grid)
print(rep.item("7a-1").witnesses[0])

# theorem-style check on the (f, g) pair, in both orientations
f, g = CubicAbs(0.6, 0.1).decomposition()
for orientation in ("as-written", "corrected"):
    show(f"cubic theorem1 {orientation}", check_theorem1(f, g, grid, orientation))

# the cubic passes one orientation yet violates 7a-2 directly
cub = CubicAbs(0.6, 0.1)
print(cub(0.4, 0.2), cub(0.4, 0.6))

f, g = TanhQuadratic(0.6, 0.011).decomposition()
show("tanh theorem1 corrected", check_theorem1(f, g, grid, "corrected"))
