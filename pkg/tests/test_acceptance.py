"""Acceptance gate: one test per shipped criterion, each with a time bound.

Every test prints a single `ACCEPTANCE <n>: PASS|FAIL <summary>` line so the
full gate can be read off a plain pytest -s run.
"""

import subprocess
import sys
import time
from functools import lru_cache

from efgc.curves import build_multiplicative, build_multiplicative_universal
from efgc.divisors import divisor_from_full_set, points_scheme
from efgc.groups import (
    BurnsideElement,
    FinAbGroup,
    full_subgroup,
    trivial_subgroup,
)
from efgc.rings import GroupRing, PrimeField, Q, verify_split
from efgc.selftest import (
    suite_counterexample,
    suite_divisor,
    suite_duality,
    suite_mackey,
    suite_residue,
    suite_transfer,
    suite_vn,
)
from efgc.transfers import eta_burnside, split_idempotents, transfer_element


def report(n, ok, summary, elapsed, bound):
    line = f"ACCEPTANCE {n}: {'PASS' if ok and elapsed < bound else 'FAIL'} "
    line += f"{summary} ({elapsed:.2f}s, bound {bound}s)"
    print(line, flush=True)
    assert ok, summary
    assert elapsed < bound, f"time bound exceeded: {elapsed:.2f}s >= {bound}s"


def suite_ok(results):
    return all(r["pass"] for r in results), ";".join(
        f"{r['name']}:{r['count']}" for r in results
    )


@lru_cache(maxsize=1)
def divisor_suite_timed():
    t0 = time.perf_counter()
    results = suite_divisor()
    return results, time.perf_counter() - t0


def test_criterion_01_universal_z2_transfer_and_eta():
    t0 = time.perf_counter()
    e = build_multiplicative_universal(FinAbGroup((2,)), 1)
    one = e.base.one()
    v = e.base.generator(0)
    t = transfer_element(e, full_subgroup(e.group.dual()))
    eta = eta_burnside(e)
    z = eta(BurnsideElement.basis(e.group, trivial_subgroup(e.group)))
    ok = t == one + v and z * z == z + z
    report(1, ok, f"t(A*)={t!r} eta-square-rule", time.perf_counter() - t0, 1)


def test_criterion_02_transfer_theorem_small_groups():
    t0 = time.perf_counter()
    ok, summary = suite_ok(suite_transfer())
    report(2, ok, summary, time.perf_counter() - t0, 60)


def test_criterion_03_vn_identities_and_invariance():
    t0 = time.perf_counter()
    ok, summary = suite_ok(suite_vn(max_n=6, changes=50))
    report(3, ok, summary, time.perf_counter() - t0, 30)


def test_criterion_04_residue_suite():
    t0 = time.perf_counter()
    results = suite_residue(count=1000)
    ok, summary = suite_ok(results)
    ok = ok and all(r["count"] == 5000 for r in results)  # 1000 x 5 rings
    report(4, ok, summary, time.perf_counter() - t0, 30)


def test_criterion_05_duality_suite():
    t0 = time.perf_counter()
    results = suite_duality(count=200)
    ok, summary = suite_ok(results)
    ok = ok and all(r["count"] >= 200 for r in results)
    report(5, ok, summary, time.perf_counter() - t0, 60)


def test_criterion_06_divisor_norm_suite():
    results, elapsed = divisor_suite_timed()
    wanted = {
        "norm-vanishes-on-divisor",
        "norm-generates-divisor-ideal",
        "norm-is-regular",
        "norm-multiplicativity",
        "full-set-factorization",
        "convolution-brute-force",
    }
    rows = [r for r in results if r["name"] in wanted]
    ok, summary = suite_ok(rows)
    ok = ok and len(rows) == len(wanted)
    report(6, ok, summary, elapsed, 60)


def test_criterion_07_points_scheme_ranks():
    t0 = time.perf_counter()
    F5 = PrimeField(5)
    e = build_multiplicative(
        F5, FinAbGroup((4,)), {(k,): F5.from_int(pow(2, k, 5)) for k in range(4)}, 4
    )
    ok = True
    for s in range(1, 5):
        pts = [e.c(a) for a in list(e.group.dual().elements())[:s]]
        d = divisor_from_full_set(e, pts)
        for r in range(s + 1):
            expect = 1
            for i in range(r):
                expect *= s - i
            ok = ok and points_scheme(d, r).rank == expect
    report(7, ok, "rank(D^[r]) = s!/(s-r)! for s <= 4", time.perf_counter() - t0, 10)


def test_criterion_08_moments():
    results, elapsed = divisor_suite_timed()
    wanted = {"moments-match-brute-force", "moments-distinguish-divisors"}
    rows = [r for r in results if r["name"] in wanted]
    ok, summary = suite_ok(rows)
    ok = ok and len(rows) == len(wanted)
    report(8, ok, summary, elapsed, 60)


def test_criterion_09_expansion_kernel_counterexample():
    t0 = time.perf_counter()
    ok, summary = suite_ok(suite_counterexample(truncation=17, K=4))
    report(9, ok, summary, time.perf_counter() - t0, 5)


def test_criterion_10_mackey_axioms():
    t0 = time.perf_counter()
    ok, summary = suite_ok(suite_mackey())
    report(10, ok, summary, time.perf_counter() - t0, 60)


def test_criterion_11_splitting_idempotents():
    t0 = time.perf_counter()
    ok = True
    for factors in [(2,), (3,), (4,), (2, 2)]:
        group = FinAbGroup(factors)
        base = GroupRing(Q, factors)
        phi = {
            tuple(a): base.basis_element(a) for a in group.dual().elements()
        }
        e = build_multiplicative(base, group, phi, 1)
        eps = split_idempotents(e)
        for a in e.characters():
            va = eps[tuple(a)]
            ok = ok and va * va == va
            ok = ok and verify_split(e.c(a), va)
        ok = ok and eps[group.dual().zero()].is_zero()
    report(11, ok, "idempotents split (c_alpha) for |A| in {2,3,4}",
           time.perf_counter() - t0, 10)


def test_criterion_12_selftest_cli_deterministic():
    t0 = time.perf_counter()
    cmd = [sys.executable, "-m", "efgc.cli", "selftest", "--suite", "all"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    ok = (
        first.returncode == 0
        and second.returncode == 0
        and first.stdout == second.stdout
        and first.stdout.strip() != b""
    )
    report(12, ok, "selftest --suite all: exit 0, byte-identical",
           time.perf_counter() - t0, 300)
