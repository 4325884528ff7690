"""Acceptance gate: ten end-to-end criteria, one test each.

Each test prints a single ``ACCEPTANCE n: PASS/FAIL`` line (visible
with ``pytest -s`` or in captured output on failure) before asserting,
so the gate status is readable at a glance.  Tolerances are pinned
here and nowhere else.

Known defects (documented in the project notes, asserted literally so
the gate reports them honestly):
  - criterion 3: the 0.1% slope tolerance is unattainable at
    theta = 1e-6 for sigma2_bar in {0.03, 0.07} (true relative errors
    0.193% and 0.130%; the truncation term decays only like
    sqrt(theta));
  - criterion 4: sqrt(theta)-scaled gaps are not monotone on this grid
    in the mid-variance regime and increase toward a positive constant
    (~0.389) in the critical regime, where the gap is Theta(1/sqrt(theta));
  - criterion 7: the stationarity system has no finite root at
    kappa = 1/2 (the residual plateaus at (1 - log 2)/2 > 0);
    sigma* = 4.331 corresponds to kappa ~ 0.5192, and the kappa = 1/2
    censor path is increasing, not unimodal.
"""

import math
import time

import numpy as np
import pytest

from censor_lab.asymptotics import g_asymptotic_theta, g_theta_gap
from censor_lab.censor import (
    martingale_identity_residual,
    mu_hat,
    solve_normal_censor,
)
from censor_lab.cli import main as cli_main
from censor_lab.mc import (
    brute_force_optimal_u,
    mc_censored_mean,
    mc_expected_profit,
    sample_prices,
)
from censor_lab.model import ModelParams, ScaledParams
from censor_lab.profit import expected_profit, g_bar
from censor_lab.statics import (
    censor_shape_check,
    dw_dsigma,
    db_dmu_sign,
    db_dsigma_sign,
    hazard_identity_residual,
    omega_curve,
    stationarity_solve,
)
from censor_lab.timing import solve_foc, theta_case_i, theta_case_ii

MU_BARS = (0.02, 0.05, 0.2)
SIGMA2_BARS = (0.03, 0.07, 0.15)
TRIPLES = [(m, s2) for m in MU_BARS for s2 in SIGMA2_BARS]
N_MC = 1_000_000
SEED = 314159


def report(criterion: int, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"ACCEPTANCE {criterion}: {status}{suffix}")


@pytest.fixture(scope="module")
def triple_runs():
    """Solved censor + 10^6-draw sample for the 9 shared triples."""
    t0 = time.perf_counter()
    runs = []
    for mu_bar, s2 in TRIPLES:
        scaled = ScaledParams.from_horizon(
            ModelParams.from_variance(mu_bar, s2), 1.0)
        sol = solve_normal_censor(scaled.mu, scaled.sigma)
        sample = sample_prices(scaled, N_MC, SEED)
        runs.append((scaled, sol, sample))
    return runs, time.perf_counter() - t0


def test_criterion_01_censor_identity(triple_runs):
    runs, elapsed = triple_runs
    checks = []
    for scaled, sol, sample in runs:
        ident = abs(martingale_identity_residual(scaled.mu, scaled.sigma, sol.w))
        mart = mc_censored_mean(sample, sol.b_tilde)
        checks.append(ident <= 1e-10)
        checks.append(mart.deviation_in_se(1.0) <= 3.0)
    checks.append(elapsed < 10.0)
    ok = all(checks)
    report(1, ok, f"9 triples, {elapsed:.2f}s")
    assert ok


def test_criterion_02_profit_oracle(triple_runs):
    runs, _ = triple_runs
    checks = []
    for scaled, sol, sample in runs:
        g = expected_profit(scaled.mu, scaled.sigma, sol.w)
        est = mc_expected_profit(sample, sol.b_tilde)
        checks.append(est.deviation_in_se(g) <= 3.0)
    ok = all(checks)
    report(2, ok)
    assert ok


def test_criterion_03_small_theta_slope():
    theta = 1e-6
    rels = {}
    for s2 in SIGMA2_BARS:
        params = ModelParams.from_variance(0.05, s2)
        slope = (g_bar(theta, params) - 1.0) / theta
        rels[s2] = abs(slope - s2) / s2
    ok = all(r <= 1e-3 for r in rels.values())
    detail = ", ".join(f"s2={k}: {v:.3%}" for k, v in rels.items())
    report(3, ok, detail)
    assert ok


def test_criterion_04_regime_gap_rates():
    thetas = (100.0, 200.0, 400.0, 800.0)
    checks = []
    details = []
    for s2 in (0.03, 0.07, 0.15, 0.10):
        params = ModelParams.from_variance(0.05, s2)
        scaled = [abs(g_theta_gap(t, params)) * math.sqrt(t) for t in thetas]
        mono = all(b < a for a, b in zip(scaled, scaled[1:]))
        checks.append(mono)
        details.append(f"s2={s2}: {'dec' if mono else 'non-monotone'}")
    # low-variance band: interior maximum of g_bar moves out as the
    # variance rises toward the drift
    grid = np.geomspace(0.1, 2000.0, 300)
    peaks = []
    for frac in (0.6, 0.8, 0.9):
        params = ModelParams.from_variance(0.05, 0.05 * frac)
        vals = [g_bar(float(t), params) for t in grid]
        peaks.append(float(grid[int(np.argmax(vals))]))
    drift_ok = peaks[0] < peaks[1] < peaks[2]
    checks.append(drift_ok)
    ok = all(checks)
    report(4, ok, "; ".join(details) + f"; peak drift {'ok' if drift_ok else 'bad'}")
    assert ok


def test_criterion_05_censor_asymptotics():
    mu = 0.05
    small = []
    for sigma in (0.1, 0.05, 0.02, 0.01):
        w = solve_normal_censor(mu, sigma).w
        small.append(abs(w - (-mu / sigma + 0.5 * sigma)) / sigma)
    small_ok = all(b < a for a, b in zip(small, small[1:]))
    m = mu_hat(mu)
    large = []
    for sigma in (10.0, 20.0, 40.0):
        w = solve_normal_censor(mu, sigma).w
        approx = sigma - m - 1.0 / (sigma - m)
        large.append(abs(w - approx) * (sigma - m))
    large_ok = (all(v <= 0.5 for v in large)
                and all(b <= a for a, b in zip(large, large[1:])))
    ok = small_ok and large_ok
    report(5, ok)
    assert ok


def test_criterion_06_comparative_statics_grid():
    mus = np.geomspace(0.02, 0.5, 10)
    sigmas = np.geomspace(0.1, 5.0, 10)
    checks = []
    for mu in mus:
        for sigma in sigmas:
            checks.append(db_dmu_sign(mu, sigma) < 0.0)
            checks.append(db_dsigma_sign(mu, sigma) > 0.0)
            checks.append(dw_dsigma(mu, sigma) > 1.0)
            checks.append(hazard_identity_residual(mu, sigma) <= 1e-4)
    ok = all(checks)
    report(6, ok, f"{len(mus) * len(sigmas)} nodes")
    assert ok


def test_criterion_07_stationarity_anchors():
    half = stationarity_solve(0.5)
    half_ok = (half.sigma_star is not None
               and abs(half.sigma_star - 4.331) <= 0.01)
    sigmas = np.linspace(0.5, 5.0, 91)
    omegas = [omega_curve(float(s)) for s in sigmas]
    i = int(np.argmax(omegas))
    omega_ok = (abs(omegas[i] - 0.051) <= 0.005
                and abs(float(sigmas[i]) - 2.547) <= 0.05)
    shape_checks = []
    p_low = ModelParams.from_variance(0.05, 0.2)  # kappa = 0.25
    shape_checks.append(censor_shape_check(p_low).shape == "increasing")
    for s2 in (0.1, 0.05):  # kappa = 0.5, 1
        params = ModelParams.from_variance(0.05, s2)
        rep = censor_shape_check(params)
        sol = stationarity_solve(params=params)
        peak_ok = (rep.shape == "unimodal"
                   and sol.sigma_star is not None
                   and abs(math.log(rep.theta_peak
                                    / (sol.sigma_star ** 2 / params.sigma2_bar)))
                   <= rep.log_grid_step)
        shape_checks.append(peak_ok)
    ok = half_ok and omega_ok and all(shape_checks)
    report(7, ok, f"kappa=1/2 root {'found' if half_ok else 'absent'}, "
                  f"omega {'ok' if omega_ok else 'bad'}, "
                  f"shapes {shape_checks}")
    assert ok


def test_criterion_08_timing():
    checks = []
    for s2 in (0.01, 0.03, 0.07, 0.15):
        params = ModelParams.from_variance(0.05, s2)
        sol = solve_foc(params)
        grid = np.linspace(1e-6, 1.0 - 1e-6, 10_001)
        values = [t + (1.0 - t) * g_bar(float(t), params) for t in grid]
        best = float(grid[int(np.argmax(values))])
        checks.append(abs(sol.theta_star - best) <= float(grid[1] - grid[0]))
    for alpha in (0.01, 0.1, 1.0):
        t = theta_case_i(alpha)
        checks.append(abs(t / (1.0 - alpha * t) - (1.0 - t)) <= 1e-12)
    for alpha in (0.05, 0.5, 1.5):
        t = theta_case_ii(alpha).exact
        checks.append(abs(-math.expm1(-alpha * t) / alpha - (1.0 - t)) <= 1e-12)
    ti = [theta_case_i(a) for a in (0.01, 0.1, 1.0)]
    tii = [theta_case_ii(a).exact for a in (0.05, 0.5, 1.5)]
    checks.append(all(b < a for a, b in zip(ti, ti[1:])))
    checks.append(all(b > a for a, b in zip(tii, tii[1:])))
    ok = all(checks)
    report(8, ok)
    assert ok


def test_criterion_09_brute_force():
    pairs = [(0.05, 0.3), (0.02, 0.2), (0.1, 0.4), (0.05, 0.5), (0.2, 0.3)]
    t0 = time.perf_counter()
    checks = []
    for mu, sigma in pairs:
        scaled = ScaledParams(mu=mu, sigma=sigma)
        sol = solve_normal_censor(mu, sigma)
        bf = brute_force_optimal_u(scaled)
        checks.append(abs(bf.u_star - sol.u) <= bf.u_step)
    elapsed = time.perf_counter() - t0
    checks.append(elapsed < 30.0)
    ok = all(checks)
    report(9, ok, f"5 pairs, {elapsed:.2f}s")
    assert ok


def test_criterion_10_figure_datasets(tmp_path, capsys):
    code = cli_main(["figures", "--out", str(tmp_path), "--points", "120",
                     "--theta-max", "2000"])
    capsys.readouterr()
    checks = [code == 0]
    curves = {}
    for tag in ("low_var", "mid_var", "high_var", "critical"):
        rows = (tmp_path / f"g_bar_{tag}.csv").read_text().strip().splitlines()[1:]
        data = np.array([[float(x) for x in r.split(",")[:3]] for r in rows])
        curves[tag] = data
    # regimes ii-iv: relative gap below 1% across the final theta-decade
    for tag in ("mid_var", "high_var", "critical"):
        data = curves[tag]
        decade = data[data[:, 0] >= 200.0]
        rel = np.abs(decade[:, 1] - decade[:, 2]) / decade[:, 1]
        checks.append(bool(np.all(rel < 0.01)))
    # regime i: rises from 1, has an interior peak, returns near 1
    low = curves["low_var"]
    peak = int(np.argmax(low[:, 1]))
    checks.append(0 < peak < len(low) - 1)
    checks.append(low[peak, 1] > 1.01)
    checks.append(abs(low[-1, 1] - 1.0) <= 0.01)
    ok = all(checks)
    report(10, ok)
    assert ok
