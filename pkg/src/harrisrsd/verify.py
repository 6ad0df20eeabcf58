"""Numerical checks: coefficient extraction, validity oracles, identity
residuals and Monte Carlo comparisons, collected into reports.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import decompose as dec
from .processes import ModelConfig, replicate_marginal
from .samplers import RngStream, SamplerSpec, binomial_thin, sample_gamma, sample_negbin
from .transforms import (
    CF, PGF, Blend, ConstantOne, EvalGrid, Expr, GammaCF, HarrisCompose,
    HarrisPGF, LogSeed, NegBinPGF, PoissonPGF, PolynomialPGF, ScaleArg,
    StableSymCF, cf_eval, evaluate, linnik_cf, pgf_eval, standard_cf_grid,
    standard_pgf_grid,
)

__all__ = [
    "CoefficientSeries", "CheckEntry", "VerificationReport", "ValidityResult",
    "PSDResult", "extract_pgf_coeffs", "check_pgf_validity", "check_psd",
    "identity_residual", "empirical_transform", "compare_empirical_cf",
    "run_suite", "SUITES", "MC_CF_GRID", "MC_PGF_GRID", "rectangle_cf",
    "bernoulli_control", "mean_check",
]

NEG_TOL = 1e-9
MASS_TOL = 1e-8
DEFAULT_N = 4096

# grids for Monte Carlo comparisons; coarser than the algebraic ones because
# each point costs a pass over up to 1e6 draws
MC_CF_GRID = standard_cf_grid(41)
MC_PGF_GRID = standard_pgf_grid(21)


# ---------------------------------------------------------------------------
# report types


@dataclass
class CheckEntry:
    name: str
    ref: str
    statistic: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ref": self.ref,
            "statistic": _num(self.statistic),
            "tolerance": _num(self.tolerance),
            "pass": bool(self.passed),
        }

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name}: statistic={self.statistic:.6g} tolerance={self.tolerance:.3g}"


def _num(x):
    x = float(x)
    return x if math.isfinite(x) else str(x)


@dataclass
class VerificationReport:
    suite: str
    seed: int
    entries: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def add(self, entry: CheckEntry) -> CheckEntry:
        self.entries.append(entry)
        return entry

    def sorted_entries(self) -> list:
        return sorted(self.entries, key=lambda e: e.name)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "entries": [e.to_dict() for e in self.sorted_entries()],
            "pass": self.passed,
            "provenance": self.provenance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def summary(self) -> str:
        lines = [e.line() for e in self.sorted_entries()]
        lines.append(f"{'PASS' if self.passed else 'FAIL'}  suite {self.suite} "
                     f"({sum(e.passed for e in self.entries)}/{len(self.entries)} checks)")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# coefficient extraction and validity


@dataclass
class CoefficientSeries:
    """Taylor coefficients of a PGF, ``coefficients[n]`` = P(N = n)."""

    coefficients: np.ndarray
    N: int
    radius: float = 1.0
    neg_tol: float = NEG_TOL
    imag_residual: float = 0.0

    def __len__(self):
        return self.N

    @property
    def mass(self) -> float:
        return float(np.sum(self.coefficients))


def extract_pgf_coeffs(expr: Expr, N: int = DEFAULT_N, radius: float = 1.0) -> CoefficientSeries:
    """Coefficients from values at the scaled ``N``-th roots of unity.

    ``a_n = radius^(-n) / N * sum_j P(radius w^j) w^(-jn)``. The result is
    exact for polynomials of degree below ``N``; otherwise coefficient
    ``n`` picks up the aliased mass ``sum_m a_(n+mN) radius^(mN)``.
    """
    if expr.domain != PGF:
        raise ValueError("coefficient extraction needs a PGF expression")
    if N < 1 or N & (N - 1):
        raise ValueError(f"N must be a power of two, got {N!r}")
    if not 0 < radius <= 1:
        raise ValueError(f"radius must lie in (0, 1], got {radius!r}")
    j = np.arange(N)
    pts = radius * np.exp(2j * np.pi * j / N)
    pts[0] = radius
    vals = pgf_eval(expr, pts)
    raw = np.fft.fft(vals) / N
    raw = raw / radius ** j
    return CoefficientSeries(coefficients=raw.real.copy(), N=N, radius=radius,
                             imag_residual=float(np.max(np.abs(raw.imag))))


@dataclass
class ValidityResult:
    passed: bool
    min_coefficient: float
    argmin: int
    mass: float

    def __bool__(self):
        return self.passed


def check_pgf_validity(series: CoefficientSeries, expected_mass: float = 1.0) -> ValidityResult:
    """Nonnegativity within ``-1e-9`` and total mass within ``1e-8``."""
    c = np.asarray(series.coefficients)
    i = int(np.argmin(c))
    mass = float(c.sum())
    ok = c[i] >= -series.neg_tol and abs(mass - expected_mass) <= MASS_TOL
    return ValidityResult(bool(ok), float(c[i]), i, mass)


@dataclass
class PSDResult:
    passed: bool
    min_eigenvalue: float
    matrix: np.ndarray

    def __bool__(self):
        return self.passed


def check_psd(expr, grid, tol_per_point: float = 1e-8) -> PSDResult:
    """Gram matrix ``M[i, j] = f(t_i - t_j)`` smallest eigenvalue test.

    ``expr`` is a CF tree or a callable on arrays. Only ``f`` at
    ``t_i - t_j`` for ``i > j`` and at 0 is computed; the upper triangle is
    the conjugate transpose, so ``M`` is Hermitian by construction.
    Passing is necessary, not sufficient, for ``f`` to be a CF.
    """
    t = np.asarray(grid.array if isinstance(grid, EvalGrid) else grid, dtype=float)
    n = t.size
    if n == 0 or n > 64:
        raise ValueError("PSD grid must have between 1 and 64 points")
    ii, jj = np.tril_indices(n, -1)
    d = t[ii] - t[jj]
    if isinstance(expr, Expr):
        if expr.domain != CF:
            raise ValueError("check_psd needs a CF")
        vals = evaluate(expr, np.concatenate(([0.0], d)))
    else:
        vals = np.asarray(expr(np.concatenate(([0.0], d))), dtype=complex)
    M = np.zeros((n, n), dtype=complex)
    M[ii, jj] = vals[1:]
    M = M + M.conj().T
    M[np.diag_indices(n)] = vals[0].real
    eig = np.linalg.eigvalsh(M)
    lo = float(eig[0])
    return PSDResult(lo >= -tol_per_point * n, lo, M)


def identity_residual(lhs: Expr, rhs: Expr, grid) -> float:
    """``max |lhs - rhs|`` over the grid with branch-tracked evaluation."""
    if lhs.domain != rhs.domain:
        raise ValueError("identity sides must share a domain")
    return float(np.max(np.abs(evaluate(lhs, grid) - evaluate(rhs, grid))))


# ---------------------------------------------------------------------------
# Monte Carlo comparisons


def _grid_points(grid) -> np.ndarray:
    return np.asarray(grid.array if isinstance(grid, EvalGrid) else grid, dtype=float)


def empirical_transform(samples, grid, domain: str) -> np.ndarray:
    """Empirical CF ``mean exp(i t X)`` or PGF ``mean s^X`` on a grid."""
    x = np.asarray(samples)
    pts = _grid_points(grid)
    out = np.empty(pts.size, dtype=complex)
    if domain == PGF:
        xi = x.astype(np.int64)
        for j, s in enumerate(pts):
            out[j] = np.mean(np.power(s, xi)) if s != 1 else 1.0
        return out
    xf = x.astype(float)
    done = {}
    for j, t in enumerate(pts):
        key = abs(t)
        if key not in done:
            tx = key * xf
            done[key] = complex(np.mean(np.cos(tx)), np.mean(np.sin(tx)))
        out[j] = done[key] if t >= 0 else done[key].conjugate()
    return out


def compare_empirical_cf(samples, expr: Expr, grid, name: str = "empirical",
                         ref: str = "", bands: float = 4.0,
                         min_samples: int = 10_000) -> CheckEntry:
    """Empirical transform against ``expr``; pass iff every deviation < bands/sqrt(n)."""
    x = np.asarray(samples).ravel()
    n = x.size
    if n == 0:
        raise ValueError("empty sample set")
    if n < min_samples:
        raise ValueError(f"need at least {min_samples} samples, got {n}")
    pts = _grid_points(grid)
    emp = empirical_transform(x, pts, expr.domain)
    theo = evaluate(expr, grid)
    dev = np.abs(emp - theo)
    tol = bands / math.sqrt(n)
    stat = float(dev.max())
    return CheckEntry(name, ref or "empirical-transform", stat, tol, stat < tol,
                      details={"points": pts.tolist(), "deviation": dev.tolist(), "n": n})


def mean_check(samples, target: float, name: str, ref: str = "", bands: float = 4.0) -> CheckEntry:
    """Sample mean within ``bands`` standard errors of ``target``."""
    x = np.asarray(samples, dtype=float).ravel()
    se = float(x.std(ddof=1) / math.sqrt(x.size)) if x.size > 1 else 0.0
    dev = abs(float(x.mean()) - target)
    tol = bands * se
    passed = dev <= tol if se > 0 else dev == 0
    return CheckEntry(name, ref or "sample-mean", dev, tol, bool(passed),
                      details={"mean": float(x.mean()), "target": target, "se": se})


# ---------------------------------------------------------------------------
# controls


def rectangle_cf(t):
    """Indicator of ``|t| < 1``; not positive definite."""
    return (np.abs(np.asarray(t, dtype=float)) < 1.0).astype(complex)


def bernoulli_control(p: float = 0.5, k: int = 1) -> Expr:
    """HID factor of the Bernoulli(1/2) PGF, which is not Harris-ID."""
    return dec.hid_factor(PolynomialPGF((0.5, 0.5)), p, k)


# ---------------------------------------------------------------------------
# suites

LATTICE_C = (0.3, 0.7, 1.0)
LATTICE_P = (0.0, 0.2, 0.5)
LATTICE_K = (1, 2, 3)


def _entry(report, name, ref, stat, tol, passed=None, **details):
    if passed is None:
        passed = stat < tol
    return report.add(CheckEntry(name, ref, float(stat), float(tol), bool(passed), details))


def _algebra(report: VerificationReport, **_):
    cfg = standard_cf_grid()
    pgg = standard_pgf_grid()
    cf_atoms = {
        "gamma(0.5,1)": GammaCF(0.5, 1.0),
        "gamma(2,0.7)": GammaCF(2.0, 0.7),
        "stable(0.7)": StableSymCF(0.7),
        "stable(2)": StableSymCF(2.0),
        "linnik(1.5,2)": linnik_cf(1.5, 2),
        "one": ConstantOne(CF),
    }
    pgf_atoms = {
        "negbin(0.5,1)": NegBinPGF(0.5, 1.0),
        "poisson(2)": PoissonPGF(2.0),
        "harris(3,2)": HarrisPGF(3.0, 2),
        "harris(2,1)": HarrisPGF(2.0, 1),
        "one": ConstantOne(PGF),
    }
    composites = {}
    for k in (1, 2, 3):
        prm = dec.FactorizationParams(0.7, 0.2, k)
        g = dec.gamma_law(k, 1.0)
        composites[f"gamma-innovation(k={k})"] = dec.hrsd_innovation(g, prm)
        composites[f"gamma-blend(k={k})"] = Blend(g, 0.3, 0.5, k)
        nb = dec.negbin_law(k, 1.0)
        composites[f"negbin-innovation(k={k})"] = dec.hrsd_innovation(nb, prm)

    for label, e in {**cf_atoms, **pgf_atoms, **composites}.items():
        grid = cfg if e.domain == CF else pgg
        v = evaluate(e, grid)
        anchor = v[np.argmin(np.abs(grid.array - grid.anchor))]
        _entry(report, f"algebra/anchor/{label}", "normalization", abs(anchor - 1), 1e-15,
               passed=anchor == 1)
        _entry(report, f"algebra/modulus/{label}", "modulus-bound",
               max(0.0, float(np.max(np.abs(v))) - 1.0), 1e-9,
               passed=np.max(np.abs(v)) <= 1 + 1e-9)
        if e.domain == PGF:
            ring = np.concatenate([r * np.exp(2j * np.pi * np.arange(256) / 256)
                                   for r in (1.0, 0.5)])
            w = np.abs(pgf_eval(e, ring))
            _entry(report, f"algebra/disk-modulus/{label}", "modulus-bound",
                   max(0.0, float(w.max()) - 1.0), 1e-9, passed=w.max() <= 1 + 1e-9)
        if e.domain == CF:
            _entry(report, f"algebra/hermitian/{label}", "hermitian-symmetry",
                   np.max(np.abs(v - v[::-1].conj())), 1e-12)
            fine = cf_eval(e, cfg.refined())[::2]
            _entry(report, f"algebra/branch-refinement/{label}", "grid-independence",
                   np.max(np.abs(fine - v)), 1e-9)

    # worked values
    _entry(report, "algebra/value/gamma(1,1)@1", "gamma-cf",
           abs(evaluate(GammaCF(1, 1), [1.0])[0] - (0.5 + 0.5j)), 1e-15)
    _entry(report, "algebra/value/linnik(2,1)@1", "hid-seed-map",
           abs(evaluate(linnik_cf(2.0, 1), [1.0])[0] - 0.5), 1e-15)
    _entry(report, "algebra/value/harris(3,2)@0.5", "harris-pgf",
           abs(evaluate(HarrisPGF(3, 2), [0.5])[0] - 0.5 / math.sqrt(2.5)), 1e-15)
    _entry(report, "algebra/value/harris(2,1)@0.5", "harris-pgf",
           abs(evaluate(HarrisPGF(2, 1), [0.5])[0] - 1 / 3), 1e-15)
    _entry(report, "algebra/value/blend-gamma@1", "blend",
           abs(evaluate(Blend(GammaCF(1, 1), 1.0, 0.5, 1), [1.0])[0] - (0.75 + 0.25j)), 1e-15)

    # Poisson seed through the log map gives NB(1/k, lam)
    for k in (1, 2, 3):
        r = identity_residual(LogSeed(PoissonPGF(1.3), k), NegBinPGF(1.0 / k, 1.3), pgg)
        _entry(report, f"algebra/poisson-seed(k={k})", "discrete-hid-seed-map", r, 1e-12)

    # Harris sum of the HID factor returns the original transform
    for label, psi in (("gamma", dec.gamma_law(2, 1.0)), ("linnik", linnik_cf(1.2, 2)),
                       ("negbin", dec.negbin_law(2, 1.0))):
        grid = cfg if psi.domain == CF else pgg
        for p in (0.2, 0.5):
            back = HarrisCompose(dec.hid_factor(psi, p, 2), 1.0 / p, 2)
            _entry(report, f"algebra/harris-roundtrip/{label}(p={p})", "hid-roundtrip",
                   identity_residual(psi, back, grid), 1e-10)

    # coefficient extraction: exact on polynomials, stable under doubling N
    poly = PolynomialPGF((0.1, 0.2, 0.3, 0.4))
    s = extract_pgf_coeffs(poly, 64)
    err = np.max(np.abs(s.coefficients - np.r_[poly.probs, np.zeros(60)]))
    _entry(report, "algebra/coeffs/polynomial-exact", "coefficient-extraction", err, 1e-12)
    for label, e in pgf_atoms.items():
        a = extract_pgf_coeffs(e, 2048).coefficients
        b = extract_pgf_coeffs(e, 4096).coefficients[:2048]
        _entry(report, f"algebra/coeffs/doubling/{label}", "aliasing", np.max(np.abs(a - b)), 1e-10)
    h = extract_pgf_coeffs(HarrisPGF(2, 2)).coefficients
    closed = np.array([math.comb(2 * m, m) * 2.0 ** (-3 * m - 0.5) for m in range(3)])
    _entry(report, "algebra/coeffs/harris(2,2)", "harris-support",
           max(np.max(np.abs(h[[1, 3, 5]] - closed)), np.max(np.abs(h[0:8:2]))), 1e-9)


def _factorization(report: VerificationReport, **_):
    cfg = standard_cf_grid()
    pgg = standard_pgf_grid()
    worst_g = worst_n = 0.0
    for c in LATTICE_C:
        for p in LATTICE_P:
            for k in LATTICE_K:
                prm = dec.FactorizationParams(c, p, k)
                g = dec.gamma_law(k, 1.0)
                nb = dec.negbin_law(k, 1.0)
                rg = identity_residual(g, dec.hrsd_rhs(g, prm), cfg)
                rn = identity_residual(nb, dec.hrsd_rhs(nb, prm), pgg)
                tag = f"c={c},p={p},k={k}"
                _entry(report, f"factorization/gamma/{tag}", "hrsd-identity", rg, 1e-10)
                _entry(report, f"factorization/negbin/{tag}", "dhrsd-identity", rn, 1e-10)
                worst_g, worst_n = max(worst_g, rg), max(worst_n, rn)
                if p > 0:
                    _entry(report, f"factorization/gamma-hid-closed/{tag}", "hid-closed-form",
                           identity_residual(dec.hid_factor(g, p, k),
                                             dec.gamma_hid_closed(k, 1.0, p), cfg), 1e-12)
                    _entry(report, f"factorization/negbin-hid-closed/{tag}", "hid-closed-form",
                           identity_residual(dec.hid_factor(nb, p, k),
                                             dec.negbin_hid_closed(k, 1.0, p), pgg), 1e-12)
                innov = dec.hrsd_innovation(nb, prm)
                v = check_pgf_validity(extract_pgf_coeffs(innov))
                _entry(report, f"factorization/negbin-innovation-valid/{tag}", "pgf-validity",
                       -min(v.min_coefficient, 0.0), NEG_TOL, passed=v.passed)
    for alpha in (0.5, 1.0, 2.0):
        for k in (1, 2):
            for c in (0.3, 0.7):
                psi, a, rhs = dec.linnik_check_params(alpha, k, c)
                _entry(report, f"factorization/linnik-sum-stable/alpha={alpha},k={k},c={c}",
                       "harris-sum-stability", identity_residual(psi, rhs, cfg), 1e-10)
    # with k = 1 the blend is the plain mixture p + (1-p) psi(c t)
    for c, p in ((0.3, 0.2), (0.7, 0.5)):
        g = dec.gamma_law(1, 1.0)
        mix = evaluate(ScaleArg(g, c), cfg) * (1 - p) + p
        _entry(report, f"factorization/k1-mixture/c={c},p={p}", "geometric-reduction",
               np.max(np.abs(evaluate(Blend(g, c, p, 1), cfg) - mix)), 1e-15)
    for k in (1, 2):
        prm = dec.FactorizationParams(0.5, 0.3, k)
        r = check_psd(dec.hrsd_innovation(dec.gamma_law(k, 1.0), prm), np.linspace(-8, 8, 32))
        _entry(report, f"factorization/gamma-innovation-psd/k={k}", "bochner-necessary",
               -min(r.min_eigenvalue, 0.0), 1e-8 * 32, passed=r.passed)
    report.provenance["worst_residual"] = {"gamma": worst_g, "negbin": worst_n}


def sampler_battery() -> list:
    """(name, spec) pairs for the innovation samplers."""
    specs = [
        ("gamma_sd_innov(k=2,lam=1,c=0.5)", SamplerSpec("gamma_sd_innov", {"k": 2, "lam": 1.0, "c": 0.5})),
        ("gamma_sd_innov(k=1,lam=2,c=0.3)", SamplerSpec("gamma_sd_innov", {"k": 1, "lam": 2.0, "c": 0.3})),
        ("nb_dsd_innov(k=2,lam=1,c=0.5)", SamplerSpec("nb_dsd_innov", {"k": 2, "lam": 1.0, "c": 0.5})),
        ("nb_dsd_innov(k=1,lam=2,c=0.3)", SamplerSpec("nb_dsd_innov", {"k": 1, "lam": 2.0, "c": 0.3})),
        ("gamma_hrsd_innov(k=2,lam=1,c=0.5,p=0.3)",
         SamplerSpec("gamma_hrsd_innov", {"k": 2, "lam": 1.0, "c": 0.5, "p": 0.3})),
        ("gamma_hrsd_innov(k=3,lam=1.5,c=0.7,p=0.5)",
         SamplerSpec("gamma_hrsd_innov", {"k": 3, "lam": 1.5, "c": 0.7, "p": 0.5})),
        ("nb_dhrsd_innov(k=2,lam=1,c=0.5,p=0.3)",
         SamplerSpec("nb_dhrsd_innov", {"k": 2, "lam": 1.0, "c": 0.5, "p": 0.3})),
        ("nb_dhrsd_innov(k=3,lam=1.5,c=0.7,p=0.5)",
         SamplerSpec("nb_dhrsd_innov", {"k": 3, "lam": 1.5, "c": 0.7, "p": 0.5})),
    ]
    return specs


def innovation_mean(spec: SamplerSpec) -> float:
    p = spec.params
    return p["lam"] * (1 - p["c"] * (1 - p.get("p", 0.0))) / p["k"]


def _samplers(report: VerificationReport, seed: int = 0, n: int = 10**6, **_):
    sid = 0

    def stream():
        nonlocal sid
        sid += 1
        return RngStream(seed, sid)

    for name, spec in sampler_battery():
        x = spec.draw(stream(), n)
        grid = MC_PGF_GRID if spec.discrete else MC_CF_GRID
        report.add(compare_empirical_cf(x, spec.transform(), grid,
                                        name=f"samplers/transform/{name}", ref="innovation-transform"))
        e = mean_check(x, innovation_mean(spec), f"samplers/mean/{name}", "innovation-mean")
        report.add(e)

    x = SamplerSpec("harris", {"a": 3.0, "k": 2}).draw(stream(), n)
    report.add(mean_check(x, 3.0, "samplers/mean/harris(3,2)", "harris-mean"))
    _entry(report, "samplers/support/harris(3,2)", "harris-support",
           int(np.count_nonzero((x - 1) % 2)), 0.5, passed=np.all((x - 1) % 2 == 0))
    report.add(compare_empirical_cf(x, HarrisPGF(3.0, 2), MC_PGF_GRID,
                                    name="samplers/transform/harris(3,2)", ref="harris-pgf"))
    x = SamplerSpec("harris", {"a": 2.0, "k": 1}).draw(stream(), n)
    frac = float(np.mean(x == 1))
    se = math.sqrt(0.25 / n)
    _entry(report, "samplers/harris(2,1)/P(N=1)", "geometric-reduction", abs(frac - 0.5), 4 * se)

    for alpha in (0.7, 1.5):
        x = SamplerSpec("stable_sym", {"alpha": alpha}).draw(stream(), n)
        report.add(compare_empirical_cf(x, StableSymCF(alpha), MC_CF_GRID,
                                        name=f"samplers/transform/stable({alpha})", ref="stable-cf"))
    x = SamplerSpec("stable_sym", {"alpha": 2.0}).draw(stream(), n)
    _entry(report, "samplers/variance/stable(2)", "normal-variance", abs(x.var() / 2 - 1), 0.02)
    for alpha in (0.5, 1.0, 2.0):
        for k in (1, 2):
            x = SamplerSpec("linnik", {"alpha": alpha, "k": k}).draw(stream(), n)
            report.add(compare_empirical_cf(x, linnik_cf(alpha, k), MC_CF_GRID,
                                            name=f"samplers/transform/linnik({alpha},{k})",
                                            ref="linnik-cf"))
    x = SamplerSpec("linnik", {"alpha": 2.0, "k": 1}).draw(stream(), n)
    _entry(report, "samplers/variance/linnik(2,1)", "laplace-variance", abs(x.var() / 2 - 1), 0.02)

    for law, params, target in (("gamma", {"alpha": 1.0, "lam": 1.7}, 1.7),
                                ("negbin", {"r": 0.5, "theta": 2.0}, 1.0),
                                ("poisson", {"mu": 2.5}, 2.5),
                                ("geometric", {"q": 0.4}, 1.5)):
        spec = SamplerSpec(law, params)
        x = spec.draw(stream(), n)
        report.add(mean_check(x, target, f"samplers/mean/{law}", "moment"))
        report.add(compare_empirical_cf(x, spec.transform(),
                                        MC_PGF_GRID if spec.discrete else MC_CF_GRID,
                                        name=f"samplers/transform/{law}", ref="atom"))

    for c in (0.3, 0.7):
        rng = stream()
        y = sample_negbin(1.0, 1.0, rng, n)
        report.add(compare_empirical_cf(binomial_thin(y, c, rng), NegBinPGF(1.0, c), MC_PGF_GRID,
                                        name=f"samplers/thinning/negbin(1,1),c={c}",
                                        ref="thinning-substitution"))

    coeffs = extract_pgf_coeffs(dec.hrsd_innovation(dec.negbin_law(2, 1.0),
                                                    dec.FactorizationParams(0.5, 0.3, 2)))
    spec = SamplerSpec("from_coeffs", {"coeffs": coeffs})
    x = spec.draw(stream(), n)
    report.add(compare_empirical_cf(
        x, dec.hrsd_innovation(dec.negbin_law(2, 1.0), dec.FactorizationParams(0.5, 0.3, 2)),
        MC_PGF_GRID, name="samplers/transform/from_coeffs(nb innovation)", ref="coefficient-sampler"))
    report.provenance["n"] = n


def stationarity_checks(family: str, c: float, p: float, k: int, init: str,
                        seed: int, R: int = 10**5, T: int = 50, B: int | None = None,
                        stream_offset: int = 0) -> CheckEntry:
    """Aggregate snapshot at time ``T`` against ``psi^k`` (exponential / geometric)."""
    cfg = ModelConfig(family=family, k=k, c=c, p=p, lam=1.0, T=T, B=B, R=R,
                      seed=seed, init=init)
    x = replicate_marginal(cfg)
    if family == "gamma":
        target, grid = GammaCF(1.0, 1.0), standard_cf_grid()
    else:
        target, grid = NegBinPGF(1.0, 1.0), standard_pgf_grid()
    return compare_empirical_cf(x, target, grid,
                                name=f"stationarity/{family}/{init}/c={c},p={p},k={k}",
                                ref="stationary-marginal")


def _stationarity(report: VerificationReport, seed: int = 0, R: int = 10**5,
                  ks=(1, 2, 3), **_):
    j = 0
    for family in ("gamma", "negbin"):
        for init in ("stationary", "zero"):
            for c in (0.3, 0.7):
                for p in (0.1, 0.5):
                    for k in ks:
                        j += 1
                        # distinct seed per lattice point keeps the chains independent
                        sub = (seed * 1_000_003 + j) % 2**64
                        report.add(stationarity_checks(family, c, p, k, init, sub, R))
    report.provenance.update({"R": R, "T": 50, "burn_in_zero_init": 200, "ks": list(ks)})


def _negative_controls(report: VerificationReport, seed: int = 0, **_):
    s = extract_pgf_coeffs(bernoulli_control())
    v = check_pgf_validity(s)
    _entry(report, "negative-controls/bernoulli/coefficient[2]", "hid-factor-of-non-hid",
           abs(s.coefficients[2] + 4 / 27), 1e-9)
    _entry(report, "negative-controls/bernoulli/detected", "pgf-validity",
           v.min_coefficient, -NEG_TOL, passed=not v.passed)
    r = check_psd(rectangle_cf, [0.0, 0.8, 1.6])
    _entry(report, "negative-controls/rectangle/min-eigenvalue", "gram-matrix",
           abs(r.min_eigenvalue - (1 - math.sqrt(2))), 1e-9)
    _entry(report, "negative-controls/rectangle/detected", "gram-matrix",
           r.min_eigenvalue, -1e-8 * 3, passed=not r.passed)
    x = sample_gamma(1.0, 1.0, RngStream(seed, 1), 10**5)
    e = compare_empirical_cf(x, GammaCF(1.0, 2.0), [0.0, 1.0])
    _entry(report, "negative-controls/gamma-mismatch/detected", "empirical-transform",
           e.statistic, e.tolerance, passed=not e.passed)


SUITES: dict[str, Callable] = {
    "algebra": _algebra,
    "factorization": _factorization,
    "samplers": _samplers,
    "stationarity": _stationarity,
    "negative-controls": _negative_controls,
}


def run_suite(name: str, seed: int = 0, **options) -> VerificationReport:
    """Run one named battery of checks.

    Options are forwarded to the suite: ``n`` (draws per sampler),
    ``R`` (replicates) and ``ks`` (component counts) for stationarity.
    """
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    report = VerificationReport(suite=name, seed=int(seed))
    report.provenance = {"seed": int(seed),
                         "options": {k: list(v) if isinstance(v, tuple) else v
                                     for k, v in sorted(options.items())}}
    SUITES[name](report, seed=int(seed), **options)
    return report
