"""Acceptance gate: every criterion at its stated tolerance.

Each test drives the named suites (or direct checks) at full scale with
pinned seeds and prints one pass/fail line; run with ``pytest -s`` to see
the lines as the criteria complete.
"""

import json
import math
import time

import numpy as np
import pytest

from nclp import (BlockAlgebra, DivergenceParams, SuiteConfig,
                  classical_renyi_oracle, d_tilde, gen_classical_pair,
                  parse_dims, q_tilde_alpha, q_tilde_alpha_z, run_suite,
                  summarize, trial_rng)
from nclp.cli import main

SEED = 20240817


def _report(num, label, passed, detail=""):
    line = f"ACCEPTANCE {num:2d} {'PASS' if passed else 'FAIL'}: {label}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert passed, line


def _run(name, trials, seed=SEED, dims=None, tolerances=None):
    cfg = SuiteConfig(suite_name=name, trials=trials, seed=seed,
                      dims=parse_dims(dims) if dims else (),
                      tolerances=dict(tolerances or {}))
    reports = run_suite(cfg)
    return reports, summarize(reports)


def _worst(reports):
    worst, key = 0.0, ""
    for r in reports:
        for k, v in r.residuals.items():
            if math.isfinite(v) and v > worst:
                worst, key = v, k
    return worst, key


def test_criterion_1_norm_multiplicativity_under_tensor():
    t0 = time.time()
    reports, summary = _run(
        "theorem6", trials=200, dims="2x2,3x2,3x3,2+3x2",
        tolerances={"relative": 1e-10})
    elapsed = time.time() - t0
    assert len(reports) == 800  # 200 pairs per dims profile, all p each
    worst, key = _worst(reports)
    _report(1, "tensor norm multiplicativity, p in {0.5,1,1.7,2,3,inf}",
            summary["failures"] == 0 and elapsed < 60.0,
            f"800 pairs x 6 exponents, worst {key}={worst:.2e}, "
            f"{elapsed:.1f}s")


def test_criterion_2_polar_power_density_identities():
    reports, summary = _run("lemma5", trials=200, dims="2x2,3x2",
                            tolerances={"residual": 1e-9})
    assert len(reports) == 400
    worst, key = _worst(reports)
    _report(2, "tensor polar/power/density/imaginary-power identities",
            summary["failures"] == 0,
            f"400 trials incl. rank-deficient, worst {key}={worst:.2e}")


def test_criterion_3_interpolated_norm_multiplicativity():
    reports, summary = _run("corollary7", trials=100, dims="2x2,3x2",
                            tolerances={"relative": 1e-9})
    assert len(reports) == 200
    grid_keys = {k for r in reports for k in r.residuals}
    assert len(grid_keys) == 16  # p in {1,1.5,2,4} x eta in {0,1/4,1/2,1}
    worst, key = _worst(reports)
    _report(3, "interpolated-norm multiplicativity over (p, eta) grid",
            summary["failures"] == 0,
            f"200 trials x 16 grid points, worst {key}={worst:.2e}")


def test_criterion_4_support_cut_cocycle():
    reports, summary = _run(
        "lemma1", trials=200, dims="2,3,4",
        tolerances={"identity": 1e-9, "chain": 1e-10,
                    "support_at_zero": 1e-10})
    assert len(reports) == 600
    worst, key = _worst(reports)
    _report(4, "support-cut cocycle identity + chain-rule residuals",
            summary["failures"] == 0,
            f"600 planted non-faithful instances, worst {key}={worst:.2e}")


def test_criterion_5_path_agreement():
    reports, summary = _run("lemma9", trials=100, dims="2,3",
                            tolerances={"path_agreement": 1e-10})
    infinite_trials = [r for r in reports
                       if any("reason_agreement" in k for k in r.residuals)]
    worst, key = _worst(reports)
    _report(5, "Q_{alpha,alpha} equals sandwiched Q on both code paths",
            summary["failures"] == 0 and len(infinite_trials) > 0,
            f"200 trials, {len(infinite_trials)} infinite-branch, "
            f"worst {key}={worst:.2e}")


def test_criterion_6_additivity_grid():
    reports, summary = _run("prop11", trials=100, dims="2,3",
                            tolerances={"d_additivity": 1e-8,
                                        "q_multiplicativity": 1e-9})
    planted = [r for r in reports
               if r.instance["variant"] == "support_violating_factor"]
    inf_branch_seen = any(
        k.endswith("infinite_branch") and v == 0.0
        for r in planted for k, v in r.residuals.items())
    worst, key = _worst(reports)
    _report(6, "divergence additivity over the (alpha, z) grid",
            summary["failures"] == 0 and inf_branch_seen,
            f"200 instance pairs, inf=inf branch exercised, "
            f"worst {key}={worst:.2e}")


def test_criterion_7_classical_reduction():
    failures = []
    rng = trial_rng(SEED, 999)
    alphas = (0.3, 0.5, 0.7, 1.5, 2.0, 3.0)
    for dims in ((2,), (3,)):
        alg = BlockAlgebra(dims)
        for k in range(25):
            orthogonal = (k % 5 == 4)
            psi, phi, p, q = gen_classical_pair(rng, alg,
                                                orthogonal=orthogonal)
            for alpha in alphas:
                want = classical_renyi_oracle(p, q, alpha)
                values = []
                for z in (0.5, 1.0, alpha, 2.0 * alpha):
                    got = q_tilde_alpha_z(psi, phi,
                                          DivergenceParams(alpha, z=z))
                    values.append(got.value)
                    ok = (math.isinf(want) and math.isinf(got.value)) or \
                        abs(got.value - want) <= 1e-12
                    if not ok:
                        failures.append((dims, alpha, z, got.value, want))
                finite = [v for v in values if math.isfinite(v)]
                if finite and max(finite) - min(finite) > 1e-12:
                    failures.append((dims, alpha, "z-dependence", values))
    _report(7, "diagonal instances match the scalar oracle, z-independent",
            not failures, f"50 instances x 6 alphas x 4 z, "
            f"{len(failures)} mismatches")


def test_criterion_8_sandwich_equation_uniqueness():
    reports, summary = _run("lemma8", trials=100, dims="2,3",
                            tolerances={"solver_agreement": 1e-8})
    assert len(reports) == 200
    worst, key = _worst(reports)
    _report(8, "pseudo-inverse vs least-squares sandwich-equation solves",
            summary["failures"] == 0,
            f"200 instances with non-faithful references, "
            f"worst {key}={worst:.2e}")


def test_criterion_9_spectral_identities():
    reports, summary = _run("appendixA", trials=100, dims="2x2,3x2,3x3")
    keys = {k for r in reports for k in r.residuals}
    wanted = {"eigenvalue_multiset", "f=pow0.5", "f=pow1", "f=pow2",
              "f=imag0.3", "f=imag1"}
    worst, key = _worst(reports)
    _report(9, "product spectra and multiplicative functional calculus",
            summary["failures"] == 0 and wanted <= keys,
            f"300 trials, worst {key}={worst:.2e}")


def test_criterion_10_monotonicity_probe():
    reports, summary = _run(
        "dpi", trials=100, dims="2,3",
        tolerances={"monotonicity_violation": 1e-9})
    channels = {r.instance["channel"] for r in reports}
    needed = {"pinching", "partial_trace_embedding", "random_unital"}
    worst, key = _worst(reports)
    _report(10, "no monotonicity violations under unital CP maps",
            summary["failures"] == 0 and needed <= channels,
            f"200 trials over {sorted(channels)}, worst {key}={worst:.2e}")


def test_criterion_11_interpolation_estimate():
    reports, summary = _run(
        "lemma3", trials=167, dims="2,3,2+2",
        tolerances={"interpolation_slack": 1e-10})
    assert len(reports) == 501
    bijective = all(r.residuals["bijectivity"] == 0.0 for r in reports)
    worst, key = _worst(reports)
    _report(11, "interpolation estimate and embedding bijectivity",
            summary["failures"] == 0 and bijective,
            f"501 draws, zero violations, worst {key}={worst:.2e}")


def test_criterion_12_determinism(tmp_path, capsys):
    args = ["suite", "--name", "prop11", "--trials", "6", "--seed",
            str(SEED), "--dims", "2,3"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    identical = a.read_bytes() == b.read_bytes()
    cfg = SuiteConfig(suite_name="lemma5", trials=10, seed=SEED)
    first = json.dumps([r.to_dict() for r in run_suite(cfg)], sort_keys=True)
    second = json.dumps([r.to_dict() for r in run_suite(cfg)], sort_keys=True)
    capsys.readouterr()
    _report(12, "reruns with identical flags are byte-identical",
            identical and first == second,
            "CLI report files and in-process reports compared")
