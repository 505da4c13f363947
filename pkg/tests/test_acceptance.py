"""Acceptance criteria, one test per criterion.

Each test appends a ``ACCEPTANCE k PASS/FAIL: ...`` line that the terminal
summary prints, then asserts the same condition.
"""

import json
import time

import numpy as np
import pytest

from ardehali.characterization import (
    CERTIFIED,
    NOT_MAXIMAL,
    certify_maximal_violation,
    random_local_unitary_ghz,
)
from ardehali.cli import main
from ardehali.lhv import lhv_max
from ardehali.operators import (
    ardehali_expectation,
    ardehali_operator,
    ardehali_square_commutator_form,
    ardehali_square_expansion,
    canonical_settings,
    chsh_operator,
    ghz_state,
    quantum_bound,
    random_settings,
    re_im,
    re_square_expansion,
    re_square_upper_bound,
    w_state,
)
from ardehali.optimizer import OptimizationConfig, see_saw
from ardehali.qubit import max_eigenpair, operator_norm, spin_observable
from oracles import W3_REFERENCE_VALUE, dense_norm, dense_top, scan_bound_maxima


def record(log, k, ok, detail):
    line = f"ACCEPTANCE {k} {'PASS' if ok else 'FAIL'}: {detail}"
    log.append(line)
    print(line)
    assert ok, line


def rel_residual(X, Y):
    return float(np.max(np.abs(X - Y)) / max(1.0, np.max(np.abs(X))))


def test_criterion_1_ghz_value(acceptance_log):
    start = time.perf_counter()
    worst = 0.0
    for n in range(2, 11):
        value = ardehali_expectation(ghz_state(n), canonical_settings(n))
        worst = max(worst, abs(value - quantum_bound(n)) / quantum_bound(n))
    elapsed = time.perf_counter() - start
    record(
        acceptance_log, 1, worst <= 1e-9 and elapsed <= 10,
        f"GHZ value = 2^(n-1/2) for n=2..10, max rel err {worst:.2e}, {elapsed:.2f}s",
    )


def test_criterion_2_classical_bounds(acceptance_log):
    mismatches = []
    for n in range(2, 10):
        expected = 2 ** (n // 2) if n % 2 == 0 else 2 ** ((n + 1) // 2)
        if lhv_max(n) != expected:
            mismatches.append(n)
    start = time.perf_counter()
    top10 = lhv_max(10)
    elapsed = time.perf_counter() - start
    if top10 != 2**5:
        mismatches.append(10)
    record(
        acceptance_log, 2, not mismatches and elapsed <= 60,
        f"exhaustive LHV max equals classical bound for n=2..10 (mismatches {mismatches}), n=10 in {elapsed:.2f}s",
    )


def test_criterion_3_quantum_bound(rng, acceptance_log):
    worst_canonical = 0.0
    for n in range(2, 9):
        lam, _ = max_eigenpair(ardehali_operator(canonical_settings(n)))
        worst_canonical = max(worst_canonical, abs(lam - quantum_bound(n)))
    worst_excess = -np.inf
    for n in range(2, 7):
        for _ in range(50):
            H = ardehali_operator(random_settings(n, rng))
            lam, _ = max_eigenpair(H)
            top = max(lam, dense_top(H)[0])
            worst_excess = max(worst_excess, top - quantum_bound(n))
    record(
        acceptance_log, 3, worst_canonical <= 1e-6 and worst_excess <= 1e-8,
        f"canonical top eigenvalue err {worst_canonical:.2e} (n=2..8); "
        f"random settings max excess over bound {worst_excess:.3f} (n=2..6)",
    )


def test_criterion_4_squared_identities(rng, acceptance_log):
    worst = 0.0
    for n in range(2, 6):
        for _ in range(20):
            s = random_settings(n, rng)
            re = re_im(s).re
            worst = max(worst, rel_residual(re @ re, re_square_expansion(s)))
            A = ardehali_operator(s)
            sq = A @ A
            commutator = ardehali_square_commutator_form(s)
            worst = max(worst, rel_residual(sq, commutator))
            if n >= 3:
                expansion = ardehali_square_expansion(s)
                worst = max(worst, rel_residual(sq, expansion), rel_residual(expansion, commutator))
    record(acceptance_log, 4, worst <= 1e-10, f"squared-operator identities, max relative residual {worst:.2e}")


def perturbed(n, site, eps):
    # rotate the second direction of one pair so that (A, A') = eps
    s = canonical_settings(n)
    a, b = s.pairs[site]
    u = a.vector
    w = b.vector
    return s.with_pair(site, a, spin_observable(eps * u + np.sqrt(1 - eps**2) * w))


def test_criterion_5_anticommutation_necessity(acceptance_log):
    ok = True
    details = []
    for n in (3, 4):
        for site in (0, n - 1):
            norms = []
            for eps in (0.05, 0.1, 0.2):
                H = ardehali_operator(perturbed(n, site, eps))
                norms.append(max(operator_norm(H), dense_norm(H)))
            strictly_below = all(v < quantum_bound(n) - 1e-9 for v in norms)
            decreasing = norms[0] > norms[1] > norms[2]
            ok &= strictly_below and decreasing
            details.append(f"n={n} site {site + 1}: " + ", ".join(f"{v:.5f}" for v in norms))
    record(acceptance_log, 5, ok, "norms below bound and decreasing in eps; " + "; ".join(details))


def test_criterion_6_certification_round_trip(acceptance_log):
    start = time.perf_counter()
    failures = []
    worst_fid = 1.0
    for n in range(3, 7):
        bound = quantum_bound(n)
        for seed in range(20):
            psi, settings, _ = random_local_unitary_ghz(n, np.random.default_rng(seed))
            found = see_saw(psi, OptimizationConfig(restarts=3, seed=seed)).best_settings
            for label, s in (("provided", settings), ("see-saw", found)):
                value = ardehali_expectation(psi, s)
                report = certify_maximal_violation(psi, s, 1e-9)
                fid = report.fidelity if report.fidelity is not None else 0.0
                worst_fid = min(worst_fid, fid)
                if value < (1 - 1e-6) * bound or report.verdict != CERTIFIED or fid < 1 - 1e-8:
                    failures.append((n, seed, label, report.verdict))
    elapsed = time.perf_counter() - start
    record(
        acceptance_log, 6, not failures and elapsed <= 300,
        f"80 rotated GHZ states certified via provided and see-saw settings, "
        f"{len(failures)} failures, min fidelity {worst_fid:.12f}, {elapsed:.1f}s",
    )


def test_criterion_7_w_state(acceptance_log):
    result = see_saw(w_state(3), OptimizationConfig(restarts=50))
    report = certify_maximal_violation(w_state(3), result.best_settings, 1e-6)
    ok = (
        result.best_value < quantum_bound(3) - 0.1
        and abs(result.best_value - W3_REFERENCE_VALUE) <= 1e-3
        and report.verdict == NOT_MAXIMAL
    )
    record(
        acceptance_log, 7, ok,
        f"W_3 best {result.best_value:.6f} vs reference {W3_REFERENCE_VALUE:.6f}, "
        f"ceiling {quantum_bound(3) - 0.1:.6f}, verdict {report.verdict}",
    )


def test_criterion_8_tsirelson(rng, acceptance_log):
    worst = -np.inf
    for _ in range(100):
        obs = [spin_observable(v / np.linalg.norm(v)) for v in rng.standard_normal((4, 3))]
        worst = max(worst, dense_norm(chsh_operator(*obs)))
    s = canonical_settings(2)
    (a, a_prime), (b, b_prime) = s.pairs
    canonical = dense_norm(chsh_operator(a, a_prime, b, b_prime))
    tsirelson = 2 * np.sqrt(2)
    ok = worst <= tsirelson + 1e-9 and abs(canonical - tsirelson) <= 1e-9
    record(acceptance_log, 8, ok, f"CHSH norm max {worst:.9f} over 100 draws, canonical {canonical:.12f}")


def test_criterion_9_violation_factor(capsys, acceptance_log):
    code = main(["bounds", "2", "10", "--json"])
    rows = json.loads(capsys.readouterr().out)["rows"]
    worst = 0.0
    for row in rows:
        n = row["n"]
        expected = 2 ** ((n - 1) / 2) if n % 2 == 0 else 2 ** ((n - 2) / 2)
        worst = max(worst, abs(row["violation_factor"] - expected), abs(row["ghz_value"] / row["classical_bound"] - expected))
    ok = code == 0 and [r["n"] for r in rows] == list(range(2, 11)) and worst <= 1e-9
    record(acceptance_log, 9, ok, f"bounds table factor matches for n=2..10, max abs err {worst:.2e}")


def test_criterion_10_bound_function_unique_maximum(acceptance_log):
    results = []
    for n in (2, 3, 4):
        best, maximizers = scan_bound_maxima(re_square_upper_bound, n)
        far = max(float(np.linalg.norm(x)) for x in maximizers)
        ok = abs(best - 2 ** (2 * (n - 1))) <= 1e-9 * best and far <= 1e-3
        results.append((n, ok, best, far))
    detail = "; ".join(
        f"n={n} {'ok' if ok else 'fails'} (max {best:.6g}, farthest maximizer at distance {far:.3g})"
        for n, ok, best, far in results
    )
    record(acceptance_log, 10, all(ok for _, ok, _, _ in results), detail)
