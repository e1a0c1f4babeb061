"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s`.  Every tolerance is exact
equality; the stated runtime bounds are asserted with perf_counter.
"""

import random
import time

from hopforders.cli import parse_element, parse_matrix
from hopforders.families import (Family, alpha_p2_loose_predicate,
                                 enumerate_orders, oracle_check_family,
                                 rank1_orders, theta_for_record)
from hopforders.matrix import Mat
from hopforders.orders import (NotIntegralError, ddl_normalize,
                               embedding_generators, is_ddl, order_from_theta,
                               same_order, special_fibre,
                               verify_twisted_equation)
from hopforders.ratfunc import RatFunc

from helpers import (F2, F3, F5, pi, rand_integral_mat, rand_invertible,
                     rand_mat, rand_ratfunc, rand_unit_matrix, worked_example)


def _report(name: str, ok: bool, detail: str = ""):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, name


def test_criterion_1_worked_example():
    """Exact 3x3 construction for p in {2,3,5}: A, embedding, fibre ranks."""
    t0 = time.perf_counter()
    ok = True
    for spec in (F2, F3, F5):
        B, theta, expected_A = worked_example(spec)
        result = order_from_theta(B, theta)
        ok &= result.A == expected_A
        ok &= embedding_generators(result.embedding) == \
            ["T*t1 + t2 + t3", "t2", "T*t3"]
        fibre = special_fibre(result.A)
        ok &= fibre.fpower_ranks == (1, 0, 0)
        ok &= fibre.connected and not fibre.etale
        ok &= verify_twisted_equation(theta, result.A, B)
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 1.0
    _report("criterion 1: 3x3 worked example bit-exact (p=2,3,5)", ok,
            f"elapsed={elapsed:.3f}s < 1s")


def test_criterion_2_predicate_oracle_agreement():
    """100% predicate/oracle agreement over the full grids, both primes,
    all five families; the loose alpha_p2 bound must be flagged."""
    t0 = time.perf_counter()
    ok = True
    details = []
    for spec in (F2, F3):
        p = spec.p
        depth = 2 * (p + 2)
        i_vals = range(0, 2 * p + 3)
        j_vals = range(-2, 5)
        for family in (Family.ALPHA_P_N, Family.ALPHA_P2, Family.ZP_X_AP,
                       Family.ZP_SQUARED, Family.MONO_P2):
            report = oracle_check_family(family, spec, i_vals, j_vals, depth=depth)
            n_j = 5 if family is Family.ZP_SQUARED else 7   # j >= 0 clamp
            expected_total = len(i_vals) * n_j * p ** depth
            ok &= report.all_agree
            ok &= report.total == expected_total
            details.append(f"{family}/p={p}: {report.agreements}/{report.total}")
            assert report.all_agree, report.summary()
            assert report.total == expected_total, report.summary()

    loose = oracle_check_family(Family.ALPHA_P2, F2, range(0, 7), range(-2, 5),
                                depth=8, predicate_fn=alpha_p2_loose_predicate)
    ok &= not loose.all_agree
    flagged = [d for d in loose.disagreements
               if d.record.i == 0 and d.record.j == 1 and d.record.theta.val == 0]
    ok &= bool(flagged)
    ok &= all(d.predicate_verdict and not d.oracle_verdict and
              d.witness is not None for d in flagged)

    elapsed = time.perf_counter() - t0
    ok &= elapsed < 300.0
    _report("criterion 2: predicate = oracle on full grids + loose bound flagged",
            ok, f"elapsed={elapsed:.1f}s < 300s; loose disagreements={len(loose.disagreements)}")


def test_criterion_3_unit_closure():
    """200 successful (B, Theta) trials: Theta*U stays an order, same order,
    and the new matrix is exactly U^{-1} A U^(p)."""
    rng = random.Random(2024)
    successes = 0
    failures = 0
    attempts = 0
    while successes < 200:
        attempts += 1
        assert attempts < 4000, "could not assemble 200 successful trials"
        spec = rng.choice([F2, F3])
        n = rng.choice([2, 3])
        B = rand_integral_mat(rng, spec, n, max_deg=2)
        theta = rand_unit_matrix(rng, spec, n, max_deg=1)
        if rng.random() < 0.5:
            theta = theta @ Mat.diag([pi(spec, rng.randrange(0, 3)) for _ in range(n)])
        try:
            base = order_from_theta(B, theta)
        except NotIntegralError:
            continue
        U = rand_unit_matrix(rng, spec, n, max_deg=1)
        try:
            moved = order_from_theta(B, theta @ U)
        except NotIntegralError:
            failures += 1
            continue
        if not same_order(theta, theta @ U):
            failures += 1
        if moved.A != U.inv() @ base.A @ U.twist():
            failures += 1
        successes += 1
    _report("criterion 3: unit closure over 200 random successful trials",
            failures == 0, f"attempts={attempts}")


def test_criterion_4_ddl_normalization():
    """200 random invertible Theta: normalize to DDL, same order, stable."""
    t0 = time.perf_counter()
    rng = random.Random(77)
    failures = 0
    for trial in range(200):
        spec = rng.choice([F2, F3])
        n = rng.choice([2, 3])
        theta = rand_invertible(rng, spec, n, max_deg=2)
        out = ddl_normalize(theta)
        if not is_ddl(out):
            failures += 1
        if not same_order(theta, out):
            failures += 1
        again = ddl_normalize(out)
        if not (is_ddl(again) and same_order(out, again)):
            failures += 1
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 30.0
    _report("criterion 4: DDL normalization on 200 random matrices",
            ok, f"elapsed={elapsed:.1f}s < 30s")


def test_criterion_5_rank2_equality_criterion():
    """Exhaustive n=2 equality: same_order <=> v(theta-theta') >= j within a
    cell, never across distinct (i, j)."""
    depth = 3
    cells = {}
    for i in range(0, 4):
        for j in range(0, 4):
            recs = enumerate_orders(Family.ALPHA_P_N, F2, [i], [j], depth=depth)
            assert len(recs) == 2 ** depth    # every theta passes for B = 0
            cells[(i, j)] = recs
    checked = 0
    ok = True
    all_records = [r for recs in cells.values() for r in recs]
    for r1 in all_records:
        for r2 in all_records:
            got = same_order(theta_for_record(r1), theta_for_record(r2))
            if (r1.i, r1.j) != (r2.i, r2.j):
                expected = False
            else:
                expected = (r1.theta - r2.theta).val >= r1.j
            ok &= got == expected
            checked += 1
    _report("criterion 5: n=2 equality criterion, exhaustive depth 3",
            ok, f"pairs={checked}")


def test_criterion_6_rank_p_catalog():
    """Rank-p verdicts: b = 0 accepts all i; unit b and normalized b accept
    exactly i >= 0."""
    ok = True
    for spec in (F2, F3, F5):
        zero = RatFunc.zero(spec)
        for i in range(-5, 6):
            ok &= bool(rank1_orders(zero, i))
        for b in (RatFunc.one(spec), RatFunc.one(spec) + pi(spec)):   # units
            for i in range(-5, 6):
                ok &= bool(rank1_orders(b, i)) == (i >= 0)
    # normalized b with 0 <= v(b) <= p-2 (nontrivial valuation needs p > 2)
    for spec, b in ((F3, pi(F3)), (F5, pi(F5, 2)), (F5, pi(F5, 3))):
        assert 0 <= b.val <= spec.p - 2
        for i in range(-5, 6):
            ok &= bool(rank1_orders(b, i)) == (i >= 0)
    _report("criterion 6: rank-p catalog exhaustive on stated ranges", ok)


def test_criterion_7_property_suites():
    """1000 randomized cases per law; zero failures."""
    rng = random.Random(555)
    scalar_specs = [F2, F3, F5]
    ok = True

    for _ in range(1000):
        spec = rng.choice(scalar_specs)
        x = rand_ratfunc(rng, spec)
        y = rand_ratfunc(rng, spec)
        ok &= (x + y).val >= min(x.val, y.val)
        if x.val != y.val:
            ok &= (x + y).val == min(x.val, y.val)
        ok &= (x * y).val == x.val + y.val

    for _ in range(1000):
        spec = rng.choice(scalar_specs)
        x = rand_ratfunc(rng, spec)
        y = rand_ratfunc(rng, spec)
        ok &= (x + y).pth_power() == x.pth_power() + y.pth_power()
        ok &= (x * y).pth_power() == x.pth_power() * y.pth_power()

    for _ in range(1000):
        spec = rng.choice([F2, F3])
        n = rng.choice([2, 3])
        m = rand_invertible(rng, spec, n, max_deg=1)
        ident = Mat.identity(spec, n)
        ok &= m @ m.inv() == ident and m.inv() @ m == ident

    for _ in range(1000):
        spec = rng.choice([F2, F3])
        x = rand_mat(rng, spec, 2, max_deg=1)
        y = rand_mat(rng, spec, 2, max_deg=1)
        ok &= (x @ y).det() == x.det() * y.det()

    for _ in range(1000):
        spec = rng.choice([F2, F3])
        m = rand_invertible(rng, spec, 2, max_deg=1)
        ok &= m.inv().twist() == m.twist().inv()

    for _ in range(1000):
        spec = rng.choice(scalar_specs)
        x = rand_ratfunc(rng, spec)
        ok &= parse_element(str(x), spec) == x
        if rng.random() < 0.2:
            mat = rand_mat(rng, spec, 2, max_deg=1)
            ok &= parse_matrix(str(mat), spec) == mat

    _report("criterion 7: 1000-case scalar/matrix/parser property suites", ok)
