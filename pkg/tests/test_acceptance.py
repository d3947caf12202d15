"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line.  Run with
``pytest tests/test_acceptance.py -v`` or directly as a script.  All
arithmetic is exact, so every comparison uses zero tolerance; the only pinned
numbers are the wall-clock budgets below.
"""

import functools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fendring import errors
from fendring.baermap import (
    construct_conjugation, direct_sum_conjugations, orthogonality_check, recover_conjugator,
    sm_apply, sm_is_homomorphism, trace_scaling_factor,
)
from fendring.cli import main
from fendring.exactalg import mat_inverse, mat_mul
from fendring.oracle import ScanConfig, exhaustive_isomorphism_scan, random_instance
from fendring.transring import (
    check_ring_axioms, is_total, random_element, random_transvection, re_as_endomorphism,
    re_trace, trace_class, transvection_to_element,
)

from conftest import ACCEPTANCE_LINES, ALL_DESCRIPTORS

RING_AXIOM_BUDGET = 10.0  # seconds, criterion 1
RECOVERY_BUDGET = 30.0  # seconds, criterion 3
SCAN_BUDGET = 60.0  # seconds, criterion 6
TOLERANCE = 0  # exact arithmetic throughout

SYSTEMS_PER_DESCRIPTOR = 20
RING_TRIALS = 1000
TRANSVECTIONS = 1000
RECOVERIES = 200
DIRECT_SUMS = 100

# every (n, k) with 1 <= k <= n <= 4
AXIOM_SHAPES = [(n, k) for n in range(1, 5) for k in range(1, n + 1)]
RECOVERY_SHAPES = [(n, k) for n in range(1, 4) for k in range(1, n + 1)]
GOLDEN = Path(__file__).parent / "golden"


def announce(number, ok, detail=""):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


# -- shared workloads, computed once ----------------------------------------------

@functools.cache
def ring_axiom_run():
    start = time.perf_counter()
    failures, systems = [], []
    for d in ALL_DESCRIPTORS:
        for seed in range(SYSTEMS_PER_DESCRIPTOR):
            n, k = AXIOM_SHAPES[seed % len(AXIOM_SHAPES)]
            s = random_instance(seed, d, n, k)[0]
            systems.append(s)
            report = check_ring_axioms(s, RING_TRIALS, seed)
            if not report:
                failures.append((str(d), seed, report.summary()))
    return failures, systems, time.perf_counter() - start


@functools.cache
def recovery_run():
    """Round trips per descriptor: (failures, maps, systems, elapsed)."""
    start = time.perf_counter()
    failures, maps, systems = [], [], []
    for d in ALL_DESCRIPTORS:
        rng = random.Random(f"recovery:{d}")
        for seed in range(RECOVERIES):
            n, k = RECOVERY_SHAPES[seed % len(RECOVERY_SHAPES)]
            s, alpha, beta = random_instance(seed, d, n, k)
            systems.append(s)
            phi = construct_conjugation(s, alpha, beta)
            maps.append(phi)
            try:
                got = recover_conjugator(phi)
            except errors.FendError as exc:
                failures.append((str(d), seed, f"{type(exc).__name__}: {exc}"))
                continue
            # independent confirmation of the action on a random dense element
            x = random_element(s, rng)
            want = mat_mul(mat_mul(got.alpha, re_as_endomorphism(x)), mat_inverse(got.alpha))
            if re_as_endomorphism(sm_apply(phi, x)) != want:
                failures.append((str(d), seed, "action differs on a dense element"))
            if mat_mul(mat_mul(got.beta, phi.target.F), got.alpha) != s.F:
                failures.append((str(d), seed, "B G A != F"))
    return failures, maps, systems, time.perf_counter() - start


@functools.cache
def direct_sum_run():
    failures, maps, systems = [], [], []
    for seed in range(DIRECT_SUMS):
        d = ALL_DESCRIPTORS[seed % len(ALL_DESCRIPTORS)]
        n, k = RECOVERY_SHAPES[(seed // len(ALL_DESCRIPTORS)) % 3]
        s, alpha1, _ = random_instance(seed, d, n, k)
        alpha2 = random_instance(seed + 1000, d, n, k)[1]
        phi = direct_sum_conjugations(s, alpha1, alpha2)
        maps.append(phi)
        systems.extend([s, phi.target])
        if not sm_is_homomorphism(phi):
            failures.append((str(d), seed, "not a homomorphism"))
            continue
        factor = trace_scaling_factor(phi)
        if factor != 2:
            failures.append((str(d), seed, f"trace factor {factor}"))
        try:
            recover_conjugator(phi)
            failures.append((str(d), seed, "recovered a conjugator from a non-isomorphism"))
        except errors.NotIsomorphism:
            pass
    return failures, maps, systems


@functools.cache
def scan_run():
    start = time.perf_counter()
    configs = [ScanConfig(2, 1, 1, [[1]], [[1]]), ScanConfig(2, 2, 1, [[1, 0]], [[1, 0]])]
    reports = [exhaustive_isomorphism_scan(cfg) for cfg in configs]
    return configs, reports, time.perf_counter() - start


# -- criteria -----------------------------------------------------------------------

def test_criterion_1_ring_axioms():
    failures, systems, elapsed = ring_axiom_run()
    per_descriptor = len(systems) // len(ALL_DESCRIPTORS)
    ok = not failures and per_descriptor >= 20 and elapsed < RING_AXIOM_BUDGET
    announce(1, ok, f"{len(systems)} systems x {RING_TRIALS} trials, {elapsed:.2f}s of {RING_AXIOM_BUDGET:.0f}s")
    assert not failures, failures[:3]
    assert elapsed < RING_AXIOM_BUDGET


def test_criterion_2_trace_formula():
    bad = []
    for d in ALL_DESCRIPTORS:
        rng = random.Random(f"trace:{d}")
        for trial in range(TRANSVECTIONS):
            n, k = AXIOM_SHAPES[trial % len(AXIOM_SHAPES)]
            s = random_instance(trial % 50, d, n, k)[0]
            t = random_transvection(s, rng)
            # f(v) = sum_b mu_b (F[b] . v), scalar by scalar
            fv = d.scalar(d.zero)
            for b, mu in enumerate(t.mu):
                row = d.scalar(d.zero)
                for a, va in enumerate(t.v):
                    row = row + s.F[b, a] * va
                fv = fv + mu * row
            if re_trace(transvection_to_element(t, s)) != trace_class(fv):
                bad.append((str(d), trial))
    announce(2, not bad, f"{TRANSVECTIONS} transvections per descriptor, mismatches {len(bad)}")
    assert not bad, bad[:5]


def test_criterion_3_round_trip_recovery():
    failures, maps, _, elapsed = recovery_run()
    ok = not failures and len(maps) >= RECOVERIES * len(ALL_DESCRIPTORS) and elapsed < RECOVERY_BUDGET
    announce(3, ok, f"{len(maps)} instances, {elapsed:.2f}s of {RECOVERY_BUDGET:.0f}s")
    assert not failures, failures[:3]
    assert elapsed < RECOVERY_BUDGET


def test_criterion_4_trace_scaling_two():
    failures, maps, _ = direct_sum_run()
    ok = not failures and len(maps) >= DIRECT_SUMS
    announce(4, ok, f"{len(maps)} direct sums, factor 2, all rejected as non-isomorphisms")
    assert not failures, failures[:3]


def test_criterion_5_orthogonality():
    maps = recovery_run()[1] + direct_sum_run()[1]
    bad = [i for i, phi in enumerate(maps) if not orthogonality_check(phi)]
    announce(5, not bad, f"{len(maps)} maps checked")
    assert not bad


def test_criterion_6_exhaustive_scan():
    configs, reports, elapsed = scan_run()
    ok = all(r.passed for r in reports) and elapsed < SCAN_BUDGET
    summary = ", ".join(f"p={c.p} n={c.n} k={c.k}: {len(r.isomorphisms)} isos / {r.conjugation_actions} actions"
                        for c, r in zip(configs, reports))
    announce(6, ok, f"{summary}; {elapsed:.2f}s of {SCAN_BUDGET:.0f}s")
    for r in reports:
        assert r.passed, r.text()
        assert len(r.isomorphisms) == r.conjugation_actions
        assert r.recovered == len(r.isomorphisms)
    assert elapsed < SCAN_BUDGET


def test_criterion_7_non_total():
    systems = list(ring_axiom_run()[1]) + list(recovery_run()[2]) + list(direct_sum_run()[2])
    for cfg in scan_run()[0]:
        systems.extend(cfg.systems())
    narrow = [s for s in systems if s.k < s.n]
    total = [s for s in narrow if is_total(s)]
    announce(7, not total and bool(narrow), f"{len(narrow)} systems with k < n, none total")
    assert narrow and not total


def test_criterion_8_cli_golden(tmp_path, capsys):
    out = tmp_path / "conj.session"
    made = main(["make-conj", str(GOLDEN / "f2_system.session"), "S",
                 "--alpha", "[[1, 1], [0, 1]]", "--beta", "[[1]]", "-o", str(out)])
    capsys.readouterr()
    recovered = main(["recover", str(out), "phi"])
    stdout = capsys.readouterr().out
    same_file = out.read_bytes() == (GOLDEN / "f2_conj.session").read_bytes()
    same_out = stdout == (GOLDEN / "f2_recover.txt").read_text()
    ok = made == 0 and recovered == 0 and same_file and same_out
    announce(8, ok, "make-conj then recover, byte-identical to golden files")
    assert made == 0 and recovered == 0
    assert same_file and same_out


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
