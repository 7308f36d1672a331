"""Smoke tests for the python module and the CLI."""

import json
import math
import os
import subprocess

import pytest

import costaff as cs


def test_base_case_staffing():
    dist = cs.ArrivalDistribution.uniform(90, 110)
    costs = cs.CostParams()
    sol = cs.optimal_staffing(dist, costs, nodes=64)
    assert sol.n_opt == 121
    assert sol.c_opt == pytest.approx(12.7131, rel=1e-3)
    u = cs.policy_u(dist, costs, nodes=64)
    assert u.n == 121
    assert u.beta == pytest.approx(2.1109, abs=1e-3)
    assert cs.policy_d(dist, costs).n == 119
    assert cs.policy_nv(dist, costs).n == 108


def test_exact_chain_analysis():
    pm = cs.analyze(1.0, 1, 1)
    assert pm.p_out == pytest.approx(0.5, abs=1e-12)
    probs = cs.stationary_probs(3.0, 2, 4)
    assert sum(probs) == pytest.approx(1.0, abs=1e-12)
    t, z, cap = cs.threshold_search(121, 100.0, cs.CostParams())
    assert t is not None and t > 121
    assert not cap


def test_diffusion_surface():
    costs = cs.CostParams()
    assert cs.zhat(0.0, 0.0, 1.0, 5.0, 1.0) == pytest.approx(0.7978845608, abs=1e-10)
    t = cs.that_star(0.0, costs)
    assert math.isfinite(t) and t > 0
    cheap = cs.CostParams(a=0.5)
    assert math.isinf(cs.that_star(0.0, cheap))


def test_simulation_determinism():
    a = cs.simulate(5.0, 4, 9, horizon=2000.0, warmup=200.0, seed=7)
    b = cs.simulate(5.0, 4, 9, horizon=2000.0, warmup=200.0, seed=7)
    assert a.z.value == b.z.value
    assert a.arrivals == b.arrivals
    assert a.admitted == a.served + a.abandoned + a.in_system_end


def test_regime_guard():
    guard = cs.regime_guard(cs.CostParams(c=2.0))
    assert guard["regime"] == "complete-outsourcing"
    assert guard["mandated_staffing"] == 0
    assert cs.regime_guard(cs.CostParams())["regime"] == "co-sourcing"


def test_errors_surface_as_exceptions():
    with pytest.raises(ValueError):
        cs.ArrivalDistribution.uniform(-1, 5)
    with pytest.raises(ValueError):
        cs.policy_nv(cs.ArrivalDistribution.uniform(90, 110), cs.CostParams(c=2.0))


CLI = os.environ.get("COSTAFF_CLI")


@pytest.mark.skipif(CLI is None, reason="COSTAFF_CLI not set")
def test_cli_policy_json():
    out = subprocess.run(
        [CLI, "policy", "u", "--dist", '{"kind":"uniform","lo":90,"hi":110}'],
        capture_output=True, text=True, check=True)
    policy = json.loads(out.stdout)
    assert policy["N"] == 121
    assert policy["kind"] == "u"


@pytest.mark.skipif(CLI is None, reason="COSTAFF_CLI not set")
def test_cli_compare_csv():
    out = subprocess.run(
        [CLI, "compare", "--dist", '{"kind":"degenerate","value":100}', "--nodes", "1"],
        capture_output=True, text=True, check=True)
    lines = out.stdout.strip().splitlines()
    assert lines[0].startswith("label,n_opt,c_opt,n_u")
    row = lines[1].split(",")
    assert row[1] == "119"  # n_opt
    assert row[3] == row[7]  # degenerate: U and D staff alike


@pytest.mark.skipif(CLI is None, reason="COSTAFF_CLI not set")
def test_cli_simulate_roundtrip():
    out = subprocess.run(
        [CLI, "simulate", "--l", "5", "--n", "4", "--t", "9",
         "--horizon", "2000", "--warmup", "200", "--seed", "11"],
        capture_output=True, text=True, check=True)
    est = json.loads(out.stdout)
    counts = est["counts"]
    assert counts["admitted"] == (counts["served"] + counts["abandoned"]
                                  + counts["in_system_end"])


@pytest.mark.skipif(CLI is None, reason="COSTAFF_CLI not set")
def test_cli_config_errors_exit_2():
    bad = subprocess.run([CLI, "solve-exact", "--config", "/nonexistent.json"],
                         capture_output=True, text=True)
    assert bad.returncode == 2
    malformed = subprocess.run([CLI, "figure7", "--dist", "not-json"],
                               capture_output=True, text=True)
    assert malformed.returncode == 2
    empty_grid = subprocess.run(
        [CLI, "figure7", "--dist", '{"kind":"degenerate","value":100}'],
        capture_output=True, text=True)
    assert empty_grid.returncode == 2


@pytest.mark.skipif(CLI is None, reason="COSTAFF_CLI not set")
def test_cli_reproduce_table_listing():
    out = subprocess.run([CLI, "reproduce-table", "ec-beta", "--nodes", "16"],
                         capture_output=True, text=True, check=True)
    header = out.stdout.splitlines()[0]
    assert header == "c,beta_low_cv,beta_moderate_cv,beta_high_cv"
