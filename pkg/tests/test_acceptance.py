"""Acceptance criteria, one test each, each printing a single pass/fail line."""

import time

import pytest

from stablelc import (
    GF,
    HilbertTable,
    PolyRing,
    direct_sum,
    free_mf,
    gamma_stab_max,
    reduce_mf,
    stable_equiv,
    stable_shift,
    suspend,
    trivial_mf,
)
from stablelc.cli import cmd_run
from stablelc.mfio import load_mf
from stablelc.stable import GradedModuleView
from stablelc.verification import corpus, generate_instance, run_suite_on

from conftest import ACCEPTANCE, DATA, FIXTURES

WINDOW = (-20, 0)


def record(num: int, ok: bool, detail: str) -> None:
    line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[num] = line
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def instances():
    specs = corpus(20, max_n=3, max_r=8, max_e=4)
    return [(spec.describe(), generate_instance(spec)) for spec in specs]


@pytest.fixture(scope="module")
def examples():
    return {"x2_k": load_mf(DATA / "x2_k.mf"), "xy_rx": load_mf(DATA / "xy_rx.mf")}


def _suite_over(instances, suite):
    bad = []
    for label, mf in instances:
        rep = run_suite_on(suite, mf, *WINDOW, label)
        if not rep.passed:
            bad.append(rep.summary())
    return bad


def test_corpus_shape(instances):
    assert len(instances) >= 20
    for _, mf in instances:
        assert mf.n <= 3 and mf.r <= 8 and mf.e <= 4 and mf.r > 0


def test_criterion_01_x2(examples, capsys):
    t0 = time.perf_counter()
    code = cmd_run(["slc", str(DATA / "x2_k.mf"), "--from", "-10", "--to", "0", "--json"])
    dt = time.perf_counter() - t0
    out = capsys.readouterr().out
    import json

    rows = dict(map(tuple, json.loads(out)["hilbert"]["rows"]))
    ok = code == 0 and rows == {j: (1 if j == -1 else 0) for j in range(-10, 1)} and dt < 1.0
    record(1, ok, f"x^2: dims {[rows[j] for j in range(-10, 1)]}, {dt:.3f}s")


def test_criterion_02_xy(capsys):
    t0 = time.perf_counter()
    code = cmd_run(["slc", str(DATA / "xy_rx.mf"), "--from", "-20", "--to", "0", "--json", "--basis"])
    dt = time.perf_counter() - t0
    import json

    body = json.loads(capsys.readouterr().out)
    rows = dict(map(tuple, body["hilbert"]["rows"]))
    expect = {j: (1 if j <= -2 else 0) for j in range(-20, 1)}
    elements = {b["degree"]: b["elements"] for b in body["basis"]}
    monos = {j: [f"x^-{-j - 1}*y^-1" if -j - 1 > 1 else "x^-1*y^-1"] for j in range(-20, -1)}
    basis_ok = all(elements[j] == monos.get(j, []) for j in range(-20, 1))
    ok = code == 0 and rows == expect and basis_ok and dt < 1.0
    record(2, ok, f"xy: ones on [-20,-2], zero at -1 and 0: {rows == expect}; basis x^-i*y^-1: {basis_ok}; {dt:.3f}s")


def test_criterion_03_suspension(examples):
    v = gamma_stab_max(suspend(examples["xy_rx"]), *WINDOW, basis=True)
    found = {j: v.slices[j].vector_strings() for j in v.hilbert.degrees()}
    # Suspension swaps the roles of x and y: one basis vector x^-1*y^j per degree j <= -1.
    expect = {j: ([f"x^-1*y^{j}"] if j <= -1 else []) for j in found}
    ok = found == expect
    record(3, ok, f"suspended xy: basis x^-1*y^j on [-20,-1], empty at 0: {ok}")


def test_criterion_04_triviality(examples, instances):
    bad = []
    windows = [(-10, 0), (-30, -5), (-3, 12)]
    cases = []
    for name, mf in examples.items():
        cases.append((f"(1,f) over {name}", trivial_mf(mf.ring, mf.f)))
        cases.append((f"(f,1) over {name}", free_mf(mf.ring, mf.f, 1)))
    for label, mf in instances[:5]:
        cases.append((f"(1,f) over {label}", trivial_mf(mf.ring, mf.f, 2)))
        both = direct_sum(trivial_mf(mf.ring, mf.f), free_mf(mf.ring, mf.f))
        cases.append((f"(1,f)+(f,1) over {label}", reduce_mf(both)))
    for label, mf in cases:
        for lo, hi in windows:
            if not gamma_stab_max(mf, lo, hi).hilbert.is_zero():
                bad.append((label, lo, hi))
    # A nontrivial module padded with trivial blocks keeps its table after reduce_mf.
    for name, mf in examples.items():
        padded = reduce_mf(direct_sum(trivial_mf(mf.ring, mf.f, 3), mf))
        if gamma_stab_max(padded, *WINDOW).hilbert != gamma_stab_max(mf, *WINDOW).hilbert:
            bad.append((f"padded {name}", *WINDOW))
    record(4, not bad, f"{len(cases)} trivial factorizations x {len(windows)} windows; failures {bad}")


def test_criterion_05_duality(instances):
    t0 = time.perf_counter()
    bad = _suite_over(instances, "duality_oracle")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60.0
    record(5, ok, f"duality_oracle on {len(instances)} instances, window {list(WINDOW)}: {len(bad)} failing, {dt:.1f}s")


def test_criterion_06_acyclicity(instances):
    bad = _suite_over(instances, "acyclicity")
    record(6, not bad, f"acyclicity on {len(instances)} instances: {len(bad)} failing")


def test_criterion_07_additivity_periodicity(instances):
    bad = _suite_over(instances, "additivity") + _suite_over(instances, "periodicity")
    exact = all(stable_shift(mf, 2) == mf.shifted(mf.e) for _, mf in instances)
    record(7, not bad and exact, f"additivity + periodicity on {len(instances)} instances: {len(bad)} failing; suspend^2 = twist by e: {exact}")


def test_criterion_08_syzygy(instances):
    bad = []
    shifts = set()
    for label, mf in instances:
        rep = run_suite_on("syzygy_formula", mf, *WINDOW, label)
        shifts.add(rep.extra.get("shift"))
        if not rep.passed:
            bad.append(rep.summary())
    record(8, not bad and None not in shifts, f"syzygy_formula on {len(instances)} instances: {len(bad)} failing")


def test_criterion_09_coincide(instances, examples):
    bad = _suite_over(instances, "coincide")
    windows = {"x2_k": (-10, 0), "xy_rx": (-12, -2)}
    for name, mf in examples.items():
        rep = run_suite_on("coincide", mf, *windows[name], name)
        if not rep.passed:
            bad.append(rep.summary())
    record(9, not bad, f"coincide on {len(instances)} instances and both worked examples: {len(bad)} failing")


def test_criterion_10_negative_controls(instances, examples, capsys):
    codes = {}
    for name in ("wrong_f.mf", "not_factorization.mf"):
        codes[name] = cmd_run(["validate", str(FIXTURES / name)])
    capsys.readouterr()
    flagged = []
    for label, mf in [("xy_rx", examples["xy_rx"])] + instances[:5]:
        v = gamma_stab_max(mf, *WINDOW)
        dims = dict(v.hilbert.dims)
        j = max((k for k in dims if dims[k]), default=WINDOW[1])
        dims[j] += 1
        bad = GradedModuleView(HilbertTable(*WINDOW, dims), "perturbed", v.twist_offset)
        flagged.append(not stable_equiv(v, bad).verdict)
    ok = all(c == 2 for c in codes.values()) and all(flagged)
    record(10, ok, f"validate exits {codes}; perturbed tables flagged {sum(flagged)}/{len(flagged)}")
