"""Seeded randomized verification suites.

Each suite draws its instances from ``random.Random(seed)`` and compares two
independent computations of the same quantity.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .construct import acnodal_coset, near_pencil, off_coset_probe
from .curve import ProjectionCenter, det_identity_check
from .enumeration import spectrum, stability_bound, through_point_exactly
from .groupmodel import (
    EquationSpec,
    candidate_groups,
    count_bruteforce,
    count_recurrence,
    dplus1_predict,
    ordinary_predict,
)

DEFAULT_SEED = 7


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok, detail):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(detail)

    @property
    def ok(self):
        return self.failed == 0

    def to_json(self):
        return {"suite": self.name, "passed": self.passed, "failed": self.failed, "failures": self.failures}


def _rand_fraction(rng, lo=-9, hi=9):
    return Fraction(rng.randint(lo, hi), rng.randint(1, 6))


def _distinct_params(rng, count):
    params, slopes = [], set()
    while len(params) < count:
        x, y = rng.randint(-9, 9), rng.randint(-9, 9)
        if x == 0 and y == 0:
            continue
        slope = None if x == 0 else Fraction(y, x)
        if slope in slopes:
            continue
        slopes.add(slope)
        params.append((x, y))
    return params


def identity_suite(trials, seed):
    """Determinant identity on random rational centers, d cycling through 2..6."""
    rng = random.Random(seed)
    res = SuiteResult("identity")
    for t in range(trials):
        d = 2 + t % 5
        p = tuple(_rand_fraction(rng) for _ in range(d + 2))
        if all(x == 0 for x in p):
            p = (1,) + p[1:]
        params = _distinct_params(rng, d + 1)
        ok = det_identity_check(ProjectionCenter(d, p), params)
        res.record(ok, {"d": d, "p": [str(x) for x in p], "params": params})
    return res


def recurrence_suite(trials, seed):
    """Recurrence against brute force for random weights in {1,2,3} with trailing 1."""
    rng = random.Random(seed)
    res = SuiteResult("recurrence")
    for _ in range(trials):
        n = rng.randint(2, 14)
        g = rng.choice(candidate_groups(n))
        k = rng.randint(1, min(6, n))
        weights = tuple(rng.choice((1, 2, 3)) for _ in range(k - 1)) + (1,)
        c = rng.randrange(n)
        eq = EquationSpec(weights, c)
        a, b = count_recurrence(g, eq), count_bruteforce(g, eq)
        res.record(a == b, {"group": g.label, "weights": weights, "c": c, "recurrence": a, "bruteforce": b})
    return res


def bridge_suite(trials, seed, workers=1):
    """Enumerated coset spectra against the group-count predictions (d = 4)."""
    rng = random.Random(seed)
    res = SuiteResult("bridge")
    for _ in range(trials):
        n = rng.randint(6, 12)
        j = rng.randrange(5 * n)
        cfg, meta = acnodal_coset(4, n, j)
        rep = spectrum(cfg, workers)
        spec = meta.coset_spec()
        want = (ordinary_predict(spec), dplus1_predict(spec))
        got = (rep.ordinary, rep.dplus1)
        res.record(got == want, {"n": n, "j": j, "enumerated": got, "predicted": want})
    return res


def stability_suite(trials, seed, workers=1):
    """Removing points adds at most K C(n-1, d-1) / d ordinary hyperplanes."""
    rng = random.Random(seed)
    res = SuiteResult("stability")
    for _ in range(trials):
        if rng.random() < 0.5:
            n = rng.randint(7, 14)
            cfg = near_pencil(4, n)
        else:
            n = rng.randint(8, 12)
            cfg, _ = acnodal_coset(4, n, rng.randrange(2))
        k = rng.randint(0, min(3, n - 5))
        removed = sorted(rng.sample(range(n), k))
        r = stability_bound(cfg, removed, workers)
        res.record(r.holds, {"config": cfg.label, "removed": removed, "before": r.before, "after": r.after, "bound": str(r.bound)})
    return res


def external_point_suite(trials, seed):
    """Hyperplanes through an off-coset curve point meeting the coset in d-1 points."""
    rng = random.Random(seed)
    res = SuiteResult("external-point")
    d = 4
    for _ in range(trials):
        n = rng.randint(8, 11)
        j = rng.randrange(d + 1)
        cfg, meta = acnodal_coset(d, n, j)
        r = rng.choice([r for r in range(2 * n * (d + 1)) if (r - j) % (d + 1)])
        got = through_point_exactly(cfg, off_coset_probe(meta, r), d - 1)
        res.record(got >= comb(n, d - 1), {"n": n, "j": j, "r": r, "count": got, "bound": comb(n, d - 1)})
    return res


SUITES = {
    "identity": (identity_suite, 100),
    "recurrence": (recurrence_suite, 200),
    "bridge": (bridge_suite, 5),
    "stability": (stability_suite, 5),
    "external-point": (external_point_suite, 3),
}


def run_suite(name, trials=None, seed=DEFAULT_SEED, workers=1):
    fn, default = SUITES[name]
    trials = default if trials is None else trials
    if name in ("bridge", "stability"):
        return fn(trials, seed, workers)
    return fn(trials, seed)
