"""
Why the symmetric models miss the asymmetry
===========================================
"""

from asymbias import HKIndicator, LinearSymmetric
from asymbias.bias import dandekar_coefficient, eval_dandekar_step
from asymbias.verifier import hk_equal_weight_witness

# distance-only weights: 0.5 and -0.3 are both 0.4 away from 0.1
lin = LinearSymmetric(0.6, 0.5)
print(lin(0.1, 0.5), lin(0.1, -0.3))

# bounded confidence: both inside the band, both get the same weight
hk = HKIndicator(-0.5, 0.5)
print(hk(0.1, 0.5), hk(0.1, -0.3))
print(hk_equal_weight_witness(-0.5, 0.5).to_dict())

# narrow band: both fall outside and get weight zero, still equal
print(hk_equal_weight_witness(-0.3, 0.3).to_dict())

# biased assimilation on [0, 1]: a neutral individual weighs both sides alike
for x_j in (0.1, 0.9):
    print(x_j, dandekar_coefficient(1, 1, 2, 0.5, x_j), eval_dandekar_step(1, 1, 2, 0.5, x_j))
