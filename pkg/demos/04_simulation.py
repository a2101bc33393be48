"""
Running the opinion dynamics
============================

A random 30-person network, mixed confirmation and negativity bias, each
person anchored to their own starting opinion.
"""

import numpy as np

from asymbias import ModelConfig, NegTanhQuadratic, TanhQuadratic, run
from asymbias.dynamics import InfeasibleNormalization
from asymbias.experiment import GeneratorSpec, generate_instance, trajectory_csv, write_text

g, x0 = generate_instance(GeneratorSpec(n=30, edge_probability=0.2, weight_range=(0.5, 1.5), seed=2024))

cfg = ModelConfig(
    s=x0,
    beta=0.8,
    conf=TanhQuadratic(0.6, 0.011),
    neg=NegTanhQuadratic(0.1, 0.05),
)
tr = run(cfg, g, x0, K=300, conv_tol=1e-10)
print("converged at step", tr.converged_at)
print("spread before/after:", np.ptp(tr.states[0]), np.ptp(tr.states[-1]))
print("mean before/after:", tr.states[0].mean(), tr.states[-1].mean())
write_text("out/trajectory.csv", trajectory_csv(tr))

# raw weights near 0.6 per edge: strict normalization fails at once
try:
    run(ModelConfig(s=x0, beta=0.8, conf=cfg.conf, neg=cfg.neg, norm_mode="strict"), g, x0, 10)
except InfeasibleNormalization as exc:
    print("strict:", exc)

# the literal reading: neighbours enter only through alpha
lit = run(ModelConfig(s=x0, beta=0.8, conf=TanhQuadratic(0.02, 0.001), neg=NegTanhQuadratic(0.01, 0.0),
                      norm_mode="literal"), g, x0, 5)
a = lit.alphas[0]
print(np.max(np.abs(lit.states[1] - (a * x0 + 1 - a))))

# a shared anchor is a fixed point
flat = np.full(30, -0.25)
print(np.all(run(ModelConfig(s=flat, beta=0.5, conf=cfg.conf, neg=cfg.neg), g, flat, 50).states == -0.25))
