"""
Verification batteries and negative controls
============================================

The verification suites return structured reports. Negative controls show
the checks can fail: the HID factor of a Bernoulli(1/2) PGF has a negative
coefficient, and the indicator of |t| < 1 has a Gram matrix with a negative
eigenvalue.
"""

import math

import numpy as np

from harrisrsd.verify import (
    bernoulli_control, check_pgf_validity, check_psd, extract_pgf_coeffs,
    rectangle_cf, run_suite,
)

for name in ("algebra", "factorization", "negative-controls"):
    rep = run_suite(name, seed=1)
    print(rep.summary().splitlines()[-1])

series = extract_pgf_coeffs(bernoulli_control())
print("Bernoulli HID coefficients:", np.round(series.coefficients[:5], 6))
print("  coefficient 2:", series.coefficients[2], " vs -4/27 =", -4 / 27)
print("  valid PGF?", bool(check_pgf_validity(series)))

r = check_psd(rectangle_cf, [0.0, 0.8, 1.6])
print("rectangle Gram matrix:\n", r.matrix.real)
print("  min eigenvalue:", r.min_eigenvalue, " vs 1 - sqrt(2) =", 1 - math.sqrt(2))
print("  positive semidefinite?", bool(r))

rep = run_suite("samplers", seed=1, n=50_000)
print(rep.summary().splitlines()[-1])
