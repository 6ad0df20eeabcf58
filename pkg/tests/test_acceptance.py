"""Acceptance criteria A1 to A9.

Each test records a one-line PASS/FAIL verdict that is printed in the
"acceptance criteria" section at the end of the pytest run. Stochastic
criteria build a JSON report or CSV text whose bytes A9 compares against a
second run with the same seed.
"""

import hashlib
import math
import time

import numpy as np
import pytest

from harrisrsd.cli import run_cli
from harrisrsd.decompose import (
    FactorizationParams, gamma_law, harris_stable_scale, hid_factor, hrsd_rhs,
    linnik_check_params, negbin_law,
)
from harrisrsd.samplers import RngStream, SamplerSpec
from harrisrsd.transforms import (
    HarrisPGF, cf_eval, linnik_cf, pgf_eval, standard_cf_grid, standard_pgf_grid,
)
from harrisrsd.verify import (
    MC_CF_GRID, MC_PGF_GRID, CheckEntry, VerificationReport, bernoulli_control,
    check_pgf_validity, check_psd, compare_empirical_cf, extract_pgf_coeffs,
    mean_check, rectangle_cf, run_suite,
)

SEED = 20241016
LATTICE = [(c, p, k) for c in (0.3, 0.7, 1.0) for p in (0.0, 0.2, 0.5) for k in (1, 2, 3)]
OUTPUTS = {}  # label -> bytes produced by the first run, for A9


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# ---------------------------------------------------------------------------


def test_a1_gamma_factorization(record_criterion):
    grid = standard_cf_grid()

    def go():
        worst = 0.0
        for c, p, k in LATTICE:
            psi = gamma_law(k, 1.0)
            rhs = hrsd_rhs(psi, FactorizationParams(c, p, k))
            worst = max(worst, float(np.max(np.abs(cf_eval(rhs, grid) - cf_eval(psi, grid)))))
        return worst

    worst, dt = _timed(go)
    ok = worst < 1e-10 and dt < 1.0
    record_criterion("A1 gamma factorization", ok, f"max residual {worst:.2e} (< 1e-10), {dt:.2f}s (< 1s)")
    assert worst < 1e-10
    assert dt < 1.0


def test_a2_negbin_factorization(record_criterion):
    s = standard_pgf_grid().array

    def go():
        worst = 0.0
        for c, p, k in LATTICE:
            psi = negbin_law(k, 1.0)
            rhs = hrsd_rhs(psi, FactorizationParams(c, p, k))
            worst = max(worst, float(np.max(np.abs(pgf_eval(rhs, s) - pgf_eval(psi, s)))))
        return worst

    worst, dt = _timed(go)
    ok = worst < 1e-10 and dt < 1.0
    record_criterion("A2 negbin factorization", ok, f"max residual {worst:.2e} (< 1e-10), {dt:.2f}s (< 1s)")
    assert worst < 1e-10
    assert dt < 1.0


def test_a3_closed_hid_factors(record_criterion):
    t = standard_cf_grid().array
    s = standard_pgf_grid().array

    def go():
        worst = 0.0
        for p in (0.2, 0.5, 0.9):
            for k in (1, 2, 3):
                for lam in (0.5, 1.0, 2.0):
                    g = cf_eval(hid_factor(gamma_law(k, lam), p, k), standard_cf_grid())
                    worst = max(worst, float(np.max(np.abs(g - (1 - 1j * p * lam * t) ** (-1 / k)))))
                    n = pgf_eval(hid_factor(negbin_law(k, lam), p, k), s)
                    worst = max(worst, float(np.max(np.abs(n - (1 + p * lam * (1 - s)) ** (-1 / k)))))
        return worst

    worst, dt = _timed(go)
    ok = worst < 1e-12 and dt < 1.0
    record_criterion("A3 closed-form HID factors", ok, f"max deviation {worst:.2e} (< 1e-12), {dt:.2f}s (< 1s)")
    assert worst < 1e-12
    assert dt < 1.0


def test_a4_harris_coefficients_and_sampler(record_criterion):
    def go():
        coef = extract_pgf_coeffs(HarrisPGF(2.0, 2)).coefficients
        # s (2 - s^2)^(-1/2) = s/sqrt(2) * sum C(2j, j) (s^2/8)^j
        want = {1 + 2 * j: math.comb(2 * j, j) / 8 ** j / math.sqrt(2) for j in range(3)}
        cdev = max(abs(coef[i] - v) for i, v in want.items())
        quoted = [round(float(coef[i]), 6) for i in (1, 3, 5)]
        x = SamplerSpec("harris", {"a": 3.0, "k": 2}).draw(RngStream(SEED, 4), 10**6)
        m = mean_check(x, 3.0, "harris-mean")
        return cdev, quoted, m, x

    (cdev, quoted, m, x), dt = _timed(go)
    sigma = math.sqrt(12 / 1e6)
    mean_ok = m.statistic < 4 * sigma
    OUTPUTS["A4 harris draws"] = hashlib.sha256(x.tobytes()).hexdigest().encode()
    ok = cdev < 1e-9 and quoted == [0.707107, 0.176777, 0.066291] and mean_ok and dt < 10
    record_criterion("A4 Harris coefficients and sampler", ok,
                     f"coef dev {cdev:.1e}, values {quoted}, |mean-3| {m.statistic:.4f} "
                     f"(< {4 * sigma:.4f}), {dt:.1f}s (< 10s)")
    assert cdev < 1e-9
    assert quoted == [0.707107, 0.176777, 0.066291]
    assert mean_ok
    assert dt < 10


def a5_report(seed):
    rep = VerificationReport("A5", seed)
    sid = 0
    for k in (1, 2, 3):
        for law in ("gamma_sd_innov", "nb_dsd_innov", "gamma_hrsd_innov", "nb_dhrsd_innov"):
            params = {"k": k, "lam": 1.0, "c": 0.5}
            if "hrsd" in law:
                params["p"] = 0.3
            spec = SamplerSpec(law, params)
            sid += 1
            x = spec.draw(RngStream(seed, sid), 10**6)
            name = f"{law}(k={k})"
            grid = MC_PGF_GRID if spec.discrete else MC_CF_GRID
            rep.add(compare_empirical_cf(x, spec.transform(), grid, name=f"transform/{name}"))
            p = params.get("p", 0.0)
            target = params["lam"] * (1 - params["c"] * (1 - p)) / k
            rep.add(mean_check(x, target, f"mean/{name}"))
    return rep


def test_a5_innovation_samplers(record_criterion):
    rep, dt = _timed(lambda: a5_report(SEED))
    OUTPUTS["A5 report"] = rep.to_json().encode()
    bad = [e.name for e in rep.entries if not e.passed]
    ok = rep.passed and dt < 60
    record_criterion("A5 innovation samplers", ok,
                     f"{len(rep.entries) - len(bad)}/{len(rep.entries)} checks, {dt:.1f}s (< 60s)"
                     + (f", failing {bad}" if bad else ""))
    assert rep.passed, rep.summary()
    assert dt < 60


def a6_report(seed):
    return run_suite("stationarity", seed, R=10**5, ks=(1, 2))


@pytest.mark.slow
def test_a6_stationarity(record_criterion):
    rep, dt = _timed(lambda: a6_report(SEED))
    OUTPUTS["A6 report"] = rep.to_json().encode()
    bad = [e.name for e in rep.entries if not e.passed]
    worst = max(e.statistic / e.tolerance for e in rep.entries)
    ok = rep.passed and dt < 300 and len(rep.entries) == 32
    record_criterion("A6 stationarity", ok,
                     f"{len(rep.entries) - len(bad)}/{len(rep.entries)} lattice points, worst "
                     f"deviation {worst:.2f} of band, {dt:.0f}s (< 300s)"
                     + (f", failing {bad}" if bad else ""))
    assert len(rep.entries) == 32
    assert rep.passed, rep.summary()
    assert dt < 300


def a7_report(seed):
    rep = VerificationReport("A7", seed)
    grid = standard_cf_grid()
    sid = 0
    for alpha in (0.5, 1.0, 2.0):
        for k in (1, 2):
            for c in (0.3, 0.7):
                psi, a, rhs = linnik_check_params(alpha, k, c)
                assert a == harris_stable_scale(c, alpha)
                res = float(np.max(np.abs(cf_eval(rhs, grid) - cf_eval(psi, grid))))
                rep.add(CheckEntry(f"residual/linnik({alpha},{k}),c={c}", "sum-stability",
                                   res, 1e-10, res < 1e-10))
            sid += 1
            x = SamplerSpec("linnik", {"alpha": alpha, "k": k}).draw(RngStream(seed, sid), 10**6)
            rep.add(compare_empirical_cf(x, linnik_cf(alpha, k), MC_CF_GRID,
                                         name=f"sampler/linnik({alpha},{k})"))
    return rep


def test_a7_harris_sum_stability(record_criterion):
    rep, dt = _timed(lambda: a7_report(SEED))
    OUTPUTS["A7 report"] = rep.to_json().encode()
    res = max(e.statistic for e in rep.entries if e.name.startswith("residual"))
    bad = [e.name for e in rep.entries if not e.passed]
    ok = rep.passed and dt < 30
    record_criterion("A7 Harris-sum-stability", ok,
                     f"max residual {res:.1e}, {len(rep.entries) - len(bad)}/{len(rep.entries)} "
                     f"checks, {dt:.1f}s (< 30s)" + (f", failing {bad}" if bad else ""))
    assert rep.passed, rep.summary()
    assert dt < 30


def test_a8_negative_controls(record_criterion):
    def go():
        s = extract_pgf_coeffs(bernoulli_control())
        v = check_pgf_validity(s)
        r = check_psd(rectangle_cf, [0.0, 0.8, 1.6])
        return s.coefficients[2], v, r

    (c2, v, r), dt = _timed(go)
    c_ok = abs(c2 + 4 / 27) < 1e-9 and not v.passed
    e_ok = abs(r.min_eigenvalue - (1 - math.sqrt(2))) < 1e-9 and not r.passed
    ok = c_ok and e_ok and dt < 1
    record_criterion("A8 negative controls", ok,
                     f"coef[2] {c2:.12f} (validity fails: {not v.passed}), min eig "
                     f"{r.min_eigenvalue:.12f} (PSD fails: {not r.passed}), {dt:.2f}s (< 1s)")
    assert c_ok
    assert e_ok
    assert dt < 1


def _cli_bytes(args, capsys):
    assert run_cli(args) == 0
    return capsys.readouterr().out.encode()


CLI_RUNS = {
    "cli sample": ["sample", "--law", "nb_dhrsd_innov", "--k", "2", "--lam", "1", "--c", "0.5",
                   "--p", "0.3", "--n", "2000", "--seed", str(SEED)],
    "cli simulate": ["simulate", "--family", "gamma", "--k", "2", "--c", "0.7", "--p", "0.1",
                     "--T", "500", "--seed", str(SEED)],
    "cli replicate": ["replicate", "--family", "negbin", "--k", "2", "--c", "0.3", "--p", "0.5",
                      "--T", "50", "--R", "20000", "--init", "zero", "--seed", str(SEED)],
}


@pytest.mark.slow
def test_a9_reproducibility(record_criterion, capsys):
    fresh = {
        "A4 harris draws": lambda: hashlib.sha256(
            SamplerSpec("harris", {"a": 3.0, "k": 2}).draw(RngStream(SEED, 4), 10**6).tobytes()
        ).hexdigest().encode(),
        "A5 report": lambda: a5_report(SEED).to_json().encode(),
        "A6 report": lambda: a6_report(SEED).to_json().encode(),
        "A7 report": lambda: a7_report(SEED).to_json().encode(),
    }
    mismatched, compared = [], []
    for label, make in fresh.items():
        if label not in OUTPUTS:
            # the first run was deselected; produce it here so the comparison still happens
            OUTPUTS[label] = make()
        if make() != OUTPUTS[label]:
            mismatched.append(label)
        compared.append(label)
    for label, args in CLI_RUNS.items():
        first = _cli_bytes(args, capsys)
        if _cli_bytes(args, capsys) != first:
            mismatched.append(label)
        compared.append(label)
    ok = not mismatched
    record_criterion("A9 reproducibility", ok,
                     f"{len(compared) - len(mismatched)}/{len(compared)} outputs byte-identical"
                     + (f", differing {mismatched}" if mismatched else ""))
    assert not mismatched
