"""
The asymmetric confirmation weight
==================================

Evaluate c(x_i, x_j) = 0.6 - 0.011 (tanh x_i - tanh x_j)^2 on a grid,
look at a few orderings, and export the surface for plotting.
"""

import numpy as np

from asymbias import TanhQuadratic
from asymbias.experiment import surface_csv, write_text

c = TanhQuadratic(0.6, 0.011)

# a neutral individual weighs mirror opinions the same
a = np.linspace(0, 1, 11)
print(np.all(c(0.0, a) == c(0.0, -a)))

# x_i = 0.2: an opinion on the same side can beat a closer one across zero
print(c(0.2, 0.8), c(0.2, -0.4), c(0.2, 0.8) - c(0.2, -0.4))
# ... though a very close opposite opinion still wins
print(c(0.2, -0.1) > c(0.2, 0.8))
# equal distance, further along the positive side weighs more
print(c(0.4, 0.6) - c(0.4, 0.2))

x = np.linspace(-1, 1, 9)
np.set_printoptions(precision=5, suppress=True, linewidth=120)
print(c(x[:, None], x[None, :]))

write_text("out/surface.csv", surface_csv(c, 41))
print("wrote out/surface.csv")
