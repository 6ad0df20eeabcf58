"""
Random-coefficient AR(1) and INAR(1) chains
===========================================

Each chain has k components. At every step one Bernoulli(p) coin, shared
by all components, decides whether the chain restarts from the innovation
or carries c times (or c-thinned) the previous value. The aggregate
X = Y_1 + ... + Y_k is then stationary with transform psi^k: exponential
for the gamma family and geometric for the NB family.
"""

import numpy as np

from harrisrsd.processes import ModelConfig, replicate_marginal, simulate

cfg = ModelConfig("gamma", k=2, c=0.7, p=0.1, lam=1.0, T=20, seed=3)
tr = simulate(cfg)
print(tr.to_csv()[:400])

# lag-1 autocorrelation of the aggregate is (1-p) c
long = simulate(ModelConfig("gamma", k=2, c=0.7, p=0.1, T=100_000, seed=3)).X
z = long - long.mean()
print("lag-1 autocorrelation:", np.dot(z[1:], z[:-1]) / np.dot(z, z), " expected", 0.9 * 0.7)

# stationary aggregate snapshot: exponential(1) has mean 1 and variance 1
x = replicate_marginal(ModelConfig("gamma", k=2, c=0.3, p=0.5, T=50, R=50_000, seed=11))
print(f"gamma aggregate at T=50: mean {x.mean():.3f}, var {x.var():.3f}")

# INAR(1) started from zero with the default 200-step burn-in
cfg = ModelConfig("negbin", k=3, c=0.7, p=0.1, lam=2.0, T=50, R=50_000, seed=12, init="zero")
x = replicate_marginal(cfg)
q = 1 / 3
print("NB aggregate P(X=n), n=0..4:", np.round(np.bincount(x, minlength=5)[:5] / x.size, 4))
print("geometric target          :", np.round(q * (1 - q) ** np.arange(5), 4))
