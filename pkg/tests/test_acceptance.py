"""One test per acceptance criterion; each records a PASS/FAIL line."""
import json
import time

import pytest

from kfgvolkov import cli, verification


def _suite(name, seed=0):
    start = time.perf_counter()
    result = verification.run_suite(name, seed)
    return result, time.perf_counter() - start


def _check(record, number, title, result, elapsed=None, budget=None, extra=""):
    within = budget is None or elapsed <= budget
    ok = result.passed and within
    detail = f"achieved {result.achieved:.3g} vs {result.required_tol:.3g}"
    if budget is not None:
        detail += f", {elapsed:.1f}s of {budget:.0f}s"
    if extra:
        detail += f", {extra}"
    record(number, title, ok, detail)
    assert result.passed, result.details
    assert within


def test_01_sonin_identity(acceptance_line):
    r, dt = _suite("sonin")
    _check(acceptance_line, 1, "Sonin discontinuous integral", r, dt, 30.0)


def test_02_psi_plus_closed_form(acceptance_line):
    r, _ = _suite("psi_plus")
    _check(acceptance_line, 2, "in-cone solution vs Hankel integral", r)


def test_03_psi_minus_closed_form(acceptance_line):
    r, _ = _suite("psi_minus")
    extra = f"massless rel err {r.details['massless_rel_err']:.2g}"
    _check(acceptance_line, 3, "out-of-cone solution vs MacDonald integral", r, extra=extra)


def test_04_macdonald_superposition(acceptance_line):
    r, _ = _suite("macdonald")
    _check(acceptance_line, 4, "MacDonald superposition", r)


def test_05_order_raising(acceptance_line):
    r, _ = _suite("order_raise")
    extra = f"halving ratio {r.details['halving_ratio']:.3f}"
    _check(acceptance_line, 5, "Bessel order-raising identity", r, extra=extra)


def test_06_riemann_property(acceptance_line):
    r, _ = _suite("riemann")
    ratios = ", ".join(f"{k} {v:.3f}" for k, v in r.details["halving_ratio"].items())
    _check(acceptance_line, 6, "Riemann function property", r, extra=f"ratios {ratios}")


def test_07_goursat_solver(acceptance_line):
    r, dt = _suite("goursat")
    orders = [p for o in r.details["orders"].values() for p in o]
    extra = f"orders {min(orders):.3f}..{max(orders):.3f}, zero-K error {r.details['zero_coefficient_error']}"
    _check(acceptance_line, 7, "Goursat solver second order", r, dt, 60.0, extra)


def test_08_effective_mass(acceptance_line):
    r, _ = _suite("effective_mass")
    extra = f"min variance {r.details['min_variance']:.2g}"
    _check(acceptance_line, 8, "effective mass from field variance", r, extra=extra)


def test_09_free_reduction(acceptance_line):
    r, _ = _suite("free_reduction")
    extra = f"{r.details['points']} points, phase == 1: {r.details['phase_identically_one']}"
    _check(acceptance_line, 9, "zero field reduces bit-for-bit", r, extra=extra)


def test_10_proper_time(acceptance_line):
    r, dt = _suite("proper_time")
    extra = (
        f"Re const {r.details['real_constant_over_pi2']:.6f} pi^2, "
        f"Im const {r.details['imag_constant_over_pi2']:.6f} pi^2"
    )
    _check(acceptance_line, 10, "proper-time integral structures", r, dt, 120.0, extra)


def test_11_determinism(acceptance_line, tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"report{k}.json"
        code = cli.main(["verify", "--seed", "7", "--out", str(path)])
        outs.append((code, path.read_bytes()))
    same = outs[0][1] == outs[1][1]
    all_pass = json.loads(outs[0][1])["all_pass"]
    acceptance_line(11, "verify is deterministic", same, f"identical reports: {same}, all_pass {all_pass}")
    assert same
    assert outs[0][0] == 0 and all_pass
