"""
Which gamma laws have a Harris-ID factor?
=========================================

The HID factor of gamma(alpha, 1) is a characteristic function for
alpha <= 1. For larger shapes the Gram-matrix test often exposes the
failure, but a finite grid can miss it, so this is a diagnostic rather than
a proof.
"""

import numpy as np

from harrisrsd.decompose import hid_factor
from harrisrsd.transforms import GammaCF
from harrisrsd.verify import check_psd

grids = {"[-8,8] x32": np.linspace(-8, 8, 32), "[-30,30] x64": np.linspace(-30, 30, 64)}
print(f"{'alpha':>6} {'p':>5} " + " ".join(f"{g:>22}" for g in grids))
for alpha in (0.5, 1.0, 2.0, 4.0, 8.0):
    for p in (0.1, 0.5, 0.9):
        cells = []
        for pts in grids.values():
            r = check_psd(hid_factor(GammaCF(alpha, 1.0), p, 1), pts)
            cells.append(f"{'psd' if r else 'NOT psd':>8} {r.min_eigenvalue:>13.3e}")
        print(f"{alpha:>6} {p:>5} " + " ".join(cells))
