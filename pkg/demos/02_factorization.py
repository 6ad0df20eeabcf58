"""
Splitting a law into SD and HID factors
=======================================

For a law with transform psi the innovation of the random-coefficient
recursion is the SD factor psi / psi(c .) times the scaled HID factor
psi / {p + (1-p) psi^k}^(1/k). For the gamma(1/k, lam) and NB(1/k, lam)
families every factor has a closed form, and the pieces multiply back to
psi.
"""

import numpy as np

from harrisrsd.decompose import (
    FactorizationParams, closed_innovation, gamma_law, harris_stable_scale,
    hid_factor, hrsd_innovation, hrsd_rhs, linnik_check_params, negbin_law,
    sd_factor,
)
from harrisrsd.transforms import cf_eval, pgf_eval, standard_cf_grid, standard_pgf_grid

grid = standard_cf_grid()
s = standard_pgf_grid().array
k, lam, c, p = 2, 1.0, 0.5, 0.3
prm = FactorizationParams(c, p, k)

psi = gamma_law(k, lam)
print("gamma(1/2, 1) with c=0.5, p=0.3")
print("  SD factor at t=1  :", cf_eval(sd_factor(psi, c), grid)[110])
print("  HID factor at t=1 :", cf_eval(hid_factor(psi, p, k), grid)[110],
      "  closed gamma(1/2, 0.3):", (1 - 0.3j) ** -0.5)
res = np.abs(cf_eval(hrsd_rhs(psi, prm), grid) - cf_eval(psi, grid)).max()
print("  factorization residual:", res)
gen = cf_eval(hrsd_innovation(psi, prm), grid)
closed = cf_eval(closed_innovation("gamma", k, lam, c, p), grid)
print("  generic vs closed innovation:", np.abs(gen - closed).max())

nb = negbin_law(k, lam)
res = np.abs(pgf_eval(hrsd_rhs(nb, prm), s) - pgf_eval(nb, s)).max()
print("NB(1/2, 1) factorization residual on [0,1]:", res)

# worst residual over a small lattice
worst = 0.0
for cc in (0.3, 0.7, 1.0):
    for pp in (0.0, 0.2, 0.5):
        for kk in (1, 2, 3):
            f = FactorizationParams(cc, pp, kk)
            g = gamma_law(kk, 1.0)
            worst = max(worst, np.abs(cf_eval(hrsd_rhs(g, f), grid) - cf_eval(g, grid)).max())
print("worst gamma residual over the 27-point lattice:", worst)

# generalized Linnik laws are stable under Harris(a, k) summation with a = c^-alpha
for alpha in (0.5, 1.0, 2.0):
    psi_l, a, rhs = linnik_check_params(alpha, 2, 0.3)
    r = np.abs(cf_eval(rhs, grid) - cf_eval(psi_l, grid)).max()
    print(f"Linnik(alpha={alpha}, k=2): a = {a:.4f}, residual {r:.2e}")
print("a for c=0.5, alpha=1.5:", harris_stable_scale(0.5, 1.5))
