"""
Transforms as expression trees
==============================

Characteristic functions and PGFs are built as small trees and evaluated on
grids. Fractional powers follow the branch that starts at 1 at the origin,
so a root of a fast-winding transform stays continuous.
"""

import numpy as np

from harrisrsd.transforms import (
    Blend, EvalGrid, GammaCF, HarrisPGF, NegBinPGF, cf_eval, from_json,
    harris_compose, hid_from_id, pgf_eval, standard_cf_grid, to_json,
)

# gamma CF (1 - i t)^-1 at a few points
g = GammaCF(1.0, 1.0)
t = np.array([-2.0, 0.0, 1.0, 3.0])
print("gamma(1,1) CF:", np.round(g(t), 6))

# Harris(2,2) PGF and the Harris composition of a negative binomial
h = HarrisPGF(2.0, 2)
s = np.linspace(0, 1, 5)
print("Harris(2,2) PGF:", np.round(pgf_eval(h, s).real, 6))
comp = harris_compose(NegBinPGF(0.5, 1.0), a=2.0, k=2)
print("Harris-compounded NB(1/2,1):", np.round(pgf_eval(comp, s).real, 6))

# the HID map turns a stable seed into a generalized Linnik law
linnik = hid_from_id(g, 2)
print("HID image of gamma(1,1) with k=2 at t=1:", linnik([1.0])[0])

# branch tracking: {(1 - i t)^-5}^(1/2) sampled at t = 0, 5, 10
# the phase at t = 10 is about 7.4 rad; the principal-branch root flips sign there
fast = Blend(GammaCF(2.5, 1.0), 1.0, 0.0, 2)
grid = EvalGrid((0.0, 5.0, 10.0))
tracked = cf_eval(fast, grid)
exact = (1 - 1j * grid.array) ** -2.5
principal = ((1 - 1j * grid.array) ** -5) ** 0.5
print("tracked  :", np.round(tracked, 8))
print("exact    :", np.round(exact, 8))
print("principal:", np.round(principal, 8))

# trees serialize to JSON and back
text = to_json(comp)
print(text)
back = from_json(text)
assert np.array_equal(pgf_eval(back, s), pgf_eval(comp, s))

# on the standard 201-point grid the anchor value is exactly one
v = cf_eval(Blend(GammaCF(1 / 3, 1.0), 0.5, 0.2, 3), standard_cf_grid())
print("value at t=0:", v[100], " max modulus:", np.abs(v).max())
