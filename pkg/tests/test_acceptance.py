"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line (collected again in
the terminal summary).  All comparisons are exact; wall-clock limits are the
stated runtime budgets.
"""

import itertools
import random
import time
from fractions import Fraction
from functools import lru_cache
from math import comb

from ordhyp.construct import acnodal_coset, near_pencil, off_coset_probe
from ordhyp.curve import (
    ProjectionCenter,
    SingularityClass,
    acnodal_center,
    classify,
    crunodal_center,
    cuspidal_center,
    det_identity_check,
    fundamental_form,
    rnc_point,
    sylvester_decompose,
)
from ordhyp.enumeration import spectrum, stability_bound, through_point_exactly
from ordhyp.groupmodel import (
    CosetSpec,
    FiniteAbelianGroup,
    GroupKind,
    candidate_groups,
    count_all_targets,
    count_recurrence_all,
    dplus1_predict,
    maximize_dplus1,
    minimize_ordinary,
    ordinary_predict,
)
from ordhyp.projective import apply_matrix, rank

# runtime budgets in seconds
LIMIT_D4_TABLE = 60
LIMIT_D5_TABLE = 300
LIMIT_D6_TABLE = 600
LIMIT_IDENTITY = 60
LIMIT_BRIDGE = 600

BRIDGE_CASES = [(n, j) for n in (8, 9, 10, 11, 12) for j in (0, 1)]
PENCIL_SIZES = range(7, 15)
PROBE_ANGLES = (1, 2, 3)


@lru_cache(maxsize=None)
def coset(n, j):
    return acnodal_coset(4, n, j)


@lru_cache(maxsize=None)
def coset_spectrum(n, j):
    return spectrum(coset(n, j)[0])


def min_formula_d4(n):
    return comb(n - 1, 3) - (4 if n % 5 == 0 else 0)


def min_formula_d5(n):
    base, r, n_ = comb(n - 1, 4), n % 6, Fraction(n)
    if r == 0:
        return base - n_**2 / 8 + n_ / 12 - 1
    if r in (1, 5):
        return base
    if r in (2, 4):
        return base - n_**2 / 8 + 3 * n_ / 4 - 1
    return base - 2 * n_ / 3 + 2


def min_formula_d6(n):
    return comb(n - 1, 5) - (6 if n % 7 == 0 else 0)


def max_formula(d, n):
    n_ = Fraction(n)
    if d == 4:
        return Fraction(comb(n - 1, 4), 5) + (Fraction(4, 5) if n % 5 == 0 else 0)
    if d == 6:
        return Fraction(comb(n - 1, 6), 7) + (Fraction(6, 7) if n % 7 == 0 else 0)
    base, r = Fraction(comb(n - 1, 5), 6), n % 6
    if r == 0:
        return base + n_**2 / 48 - n_ / 72 + Fraction(1, 6)
    if r in (1, 5):
        return base
    if r in (2, 4):
        return base + n_**2 / 48 - n_ / 8 + Fraction(1, 6)
    return base + n_ / 9 - Fraction(1, 3)


def _table_check(d, ns, formula):
    bad = []
    for n in ns:
        got = minimize_ordinary(d, n).value
        if got != formula(n):
            bad.append((n, got, formula(n)))
    return bad


def test_criterion_01_d4_minimum(report_criterion):
    t0 = time.perf_counter()
    bad = _table_check(4, range(8, 31), min_formula_d4)
    spots = (minimize_ordinary(4, 10).value, minimize_ordinary(4, 11).value)
    elapsed = time.perf_counter() - t0
    ok = not bad and spots == (80, 120) and elapsed < LIMIT_D4_TABLE
    report_criterion(1, ok, f"d=4 n=8..30 mismatches={bad} spots={spots} time={elapsed:.2f}s")
    assert ok


def test_criterion_02_d5_minimum(report_criterion):
    t0 = time.perf_counter()
    bad = _table_check(5, range(8, 25), min_formula_d5)
    spots = tuple(minimize_ordinary(5, n).value for n in (8, 9, 12))
    kinds = {n: [g.kind for g in candidate_groups(n)] for n in (8, 12, 16, 20, 24)}
    both = all(k == [GroupKind.CYCLIC, GroupKind.PRODUCT] for k in kinds.values())
    elapsed = time.perf_counter() - t0
    ok = not bad and spots == (32, 66, 312) and both and elapsed < LIMIT_D5_TABLE
    report_criterion(2, ok, f"d=5 n=8..24 mismatches={bad} spots={spots} both-kinds={both} time={elapsed:.2f}s")
    assert ok


def test_criterion_03_d6_minimum(report_criterion):
    t0 = time.perf_counter()
    bad = _table_check(6, range(9, 22), min_formula_d6)
    spots = (minimize_ordinary(6, 14).value, minimize_ordinary(6, 15).value)
    elapsed = time.perf_counter() - t0
    ok = not bad and spots == (1281, 2002) and elapsed < LIMIT_D6_TABLE
    report_criterion(3, ok, f"d=6 n=9..21 mismatches={bad} spots={spots} time={elapsed:.2f}s")
    assert ok


def test_criterion_04_maximum_dplus1(report_criterion):
    bad = []
    for d, ns in ((4, range(8, 31)), (5, range(8, 25)), (6, range(9, 22))):
        for n in ns:
            got = maximize_dplus1(d, n).value
            if got != max_formula(d, n):
                bad.append((d, n, got, max_formula(d, n)))
    spots = tuple(maximize_dplus1(d, n).value for d, n in ((4, 10), (4, 11), (5, 12), (6, 14)))
    ok = not bad and spots == (26, 42, 80, 246)
    report_criterion(4, ok, f"mismatches={bad} spots={spots}")
    assert ok


def test_criterion_05_recurrence_oracle(report_criterion):
    mismatches = checked = 0
    for n in range(1, 15):
        for g in candidate_groups(n):
            for k in range(1, 7):
                for weights in itertools.product((1, 2, 3), repeat=k):
                    rec = count_recurrence_all(g, weights)
                    brute = count_all_targets(g, weights)
                    mismatches += sum(int(a) != int(b) for a, b in zip(rec, brute))
                    checked += n
    ok = mismatches == 0
    report_criterion(5, ok, f"{checked} (group, weights, c) instances, mismatches={mismatches}")
    assert ok


def test_criterion_06_determinant_identity(report_criterion):
    t0 = time.perf_counter()
    rng = random.Random(6)
    passed = total = 0
    for d in range(2, 7):
        for _ in range(100):
            p = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(d + 2))
            if not any(p):
                p = (Fraction(1),) + p[1:]
            params = []
            while len(params) < d + 1:
                pr = (Fraction(rng.randint(-9, 9), rng.randint(1, 4)), Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
                if pr != (0, 0) and all(pr[0] * q[1] != pr[1] * q[0] for q in params):
                    params.append(pr)
            passed += det_identity_check(ProjectionCenter(d, p), params)
            total += 1
    elapsed = time.perf_counter() - t0
    ok = passed == total == 500 and elapsed < LIMIT_IDENTITY
    report_criterion(6, ok, f"{passed}/{total} instances, d=2..6, time={elapsed:.2f}s")
    assert ok


def test_criterion_07_bridge(report_criterion):
    t0 = time.perf_counter()
    rows = []
    for n, j in BRIDGE_CASES:
        rep = coset_spectrum(n, j)
        spec = CosetSpec(FiniteAbelianGroup.cyclic(n), 4, (-j) % n)
        rows.append((n, j, rep.ordinary, ordinary_predict(spec), rep.dplus1, dplus1_predict(spec), coset(n, j)[1].modulus))
    elapsed = time.perf_counter() - t0
    bad = [r for r in rows if r[2] != r[3] or r[4] != r[5]]
    moduli_ok = all(m == (20 * n if n % 2 else 10 * n) for n, _, _, _, _, _, m in rows)
    ok = not bad and moduli_ok and elapsed < LIMIT_BRIDGE
    report_criterion(7, ok, f"(n, j, ordinary, predicted, dplus1, predicted, M) = {rows} time={elapsed:.2f}s")
    assert ok


def test_criterion_08_near_pencil(report_criterion):
    got = {n: spectrum(near_pencil(4, n)).counts for n in PENCIL_SIZES}
    bad = {n: c for n, c in got.items() if c != {4: comb(n - 1, 3), n - 1: 1}}
    ok = not bad
    report_criterion(8, ok, f"n=7..14 mismatches={bad}")
    assert ok


def test_criterion_09_external_point(report_criterion):
    cfg, meta = coset(10, 0)
    counts = [through_point_exactly(cfg, off_coset_probe(meta, r), 3) for r in PROBE_ANGLES]
    ok = all(c >= comb(10, 3) for c in counts)
    report_criterion(9, ok, f"probes at angle indices {PROBE_ANGLES}: counts={counts} (bound {comb(10, 3)})")
    assert ok


def _tangent_center(d, alpha, t):
    x, y = alpha
    base = rnc_point(d, alpha).coords
    deriv = tuple(-i * (-x) ** (i - 1) * y ** (d + 1 - i) if i else 0 for i in range(d + 2))
    return ProjectionCenter(d, tuple(Fraction(b) + t * Fraction(v) for b, v in zip(base, deriv)))


def test_criterion_10_classification(report_criterion):
    rng = random.Random(10)
    failures = []
    singular = []
    for d in range(2, 7):
        for center, want in (
            (cuspidal_center(d), SingularityClass.CUSP),
            (crunodal_center(d), SingularityClass.CRUNODE),
            (acnodal_center(d), SingularityClass.ACNODE),
            (ProjectionCenter.from_values(rnc_point(d, (2, 3)).coords), SingularityClass.ON_CURVE),
            (_tangent_center(d, (rng.randint(-5, 5), rng.randint(1, 5)), rng.randint(1, 7)), SingularityClass.CUSP),
        ):
            if classify(center).kind is not want:
                failures.append((d, center.p, want.value))
            singular.append(center)
    for d in range(3, 7):
        for _ in range(10):
            p = ProjectionCenter(d, tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(d + 2)))
            if classify(p).kind is not SingularityClass.SMOOTH:
                failures.append((d, p.p, "Smooth"))
    expansions_ok = all(
        all(a == b for a, b in zip(sylvester_decompose(c).expand(), fundamental_form(c).coeffs)) for c in singular
    )
    ok = not failures and expansions_ok
    report_criterion(10, ok, f"classification failures={failures} re-expansion exact={expansions_ok} ({len(singular)} singular centers)")
    assert ok


def _random_invertible(size, rng):
    while True:
        m = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(size)] for _ in range(size)]
        if rank(m) == size:
            return m


def test_criterion_11_invariances(report_criterion):
    rng = random.Random(11)
    configs = [coset(n, j)[0] for n, j in BRIDGE_CASES] + [near_pencil(4, n) for n in PENCIL_SIZES]
    failures = []
    for cfg in configs:
        base = spectrum(cfg)
        pts = list(cfg.points)
        rng.shuffle(pts)
        shuffled = spectrum(cfg.with_points(pts))
        moved = spectrum(apply_matrix(cfg, _random_invertible(cfg.dim + 1, rng)))
        if not (base.identity_holds() and shuffled.counts == base.counts and moved.counts == base.counts):
            failures.append(cfg.label)
    ok = not failures
    report_criterion(11, ok, f"{len(configs)} configurations, identity/permutation/projective failures={failures}")
    assert ok


def test_criterion_12_stability(report_criterion):
    rng = random.Random(12)
    pool = [("coset", n, j) for n, j in BRIDGE_CASES] + [("pencil", n, None) for n in PENCIL_SIZES]
    results = []
    for _ in range(20):
        kind, n, j = rng.choice(pool)
        cfg = coset(n, j)[0] if kind == "coset" else near_pencil(4, n)
        k = rng.randint(0, min(3, n - 5))
        removed = sorted(rng.sample(range(n), k))
        r = stability_bound(cfg, removed)
        results.append((cfg.label, removed, r.before, r.after, r.bound, r.holds))
    failed = [r for r in results if not r[-1]]
    ok = not failed and len(results) == 20
    report_criterion(12, ok, f"20 seeded removals, failures={failed}")
    assert ok
