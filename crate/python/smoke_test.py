"""Smoke test for the infotherm extension module.

Build first:
    cargo build --release -p infotherm-py --features extension-module
then run:
    python3 python/smoke_test.py [path/to/libinfotherm.so]
"""

import importlib.util
import json
import math
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load(lib_path):
    tmp = pathlib.Path(tempfile.mkdtemp())
    target = tmp / "infotherm.so"
    shutil.copy(lib_path, target)
    spec = importlib.util.spec_from_file_location("infotherm", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    lib = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "target/release/libinfotherm.so"
    if not lib.exists():
        sys.exit(f"{lib} not found; build with: cargo build --release -p infotherm-py --features extension-module")
    it = load(lib)

    k = it.build_kraus(math.pi / 8)
    assert k.completeness_defect < 1e-12
    assert abs(k.m[0][1][1] - 1) < 1e-12

    meter = it.gibbs(1.0)
    assert abs(meter.w_h - 1 / (1 + math.exp(-1))) < 1e-15
    assert it.gibbs(math.inf).w_v == 0.0

    r = it.thermo_report(0.2, 1.0, "D")
    assert abs(r.tilde_info + 0.5822031088882179) < 1e-9
    assert abs(r.bound_gap - math.log(2)) < 1e-9
    assert it.thermo_report(0.2, 0.0).delta_f is None
    assert abs(it.go_information(0.3, "D")) < 1e-9
    assert abs(it.tilde_information(0.1, 0.0, [1, 0, 0]) + math.log(2)) < 1e-9

    mean = it.expected_counts(0.2, math.inf, "D", 1000.0)
    assert abs(sum(mean.values()) - 1000.0) < 1e-9
    draw = it.sample_counts(0.2, math.inf, "D", 1000.0, 7)
    assert draw == it.sample_counts(0.2, math.inf, "D", 1000.0, 7)
    assert all(isinstance(v, int) for v in draw.values())

    rho = it.tomography([0, 0, 1], 1000, 3)
    assert abs(rho[0][0].real - 1) < 0.01

    est = it.conditional_states(math.pi / 8, math.inf, "D")
    assert abs(est["rho_hat"][0][1][1].real - 1) < 1e-12
    noisy = it.conditional_states(0.2, 1.0, "D", n0=10000, shots=1000, seed=1)
    assert abs(noisy["p_hat"][0] - 0.5) < 0.05

    csv = it.run_sweep(theta_steps=3, beta_inv=["zero", 1.0])
    assert csv.splitlines()[-1].startswith("0.392699081698724,1,")
    table = json.loads(it.run_sweep("fig4", theta_steps=2, format="json"))
    assert len(table["rows"]) == 42
    sampled = it.run_sweep("fig3", theta_steps=2, mode="sampled", seed=5, resamples=10)
    assert sampled == it.run_sweep("fig3", theta_steps=2, mode="sampled", seed=5, resamples=10)

    ok, report = it.gate_check(100)
    assert ok, report
    ok, report = it.gate_check(10, perturb=1e-6)
    assert not ok and "FAIL unitarity" in report

    for bad in (lambda: it.build_kraus(1.0), lambda: it.run_sweep(mode="sampled")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
