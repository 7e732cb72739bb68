"""Exact hyperplane spectra of point configurations.

Each spanned hyperplane is identified by the set of configuration points it
contains.  Two spanning subsets give the same hyperplane iff their incidence
sets agree, so the incidence set is a canonical key that needs no
normalisation of the normal vector.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice
from math import comb

from .projective import (
    Configuration,
    GeneralPositionError,
    ProjPoint,
    colex_combinations,
    cofactor_normal,
    integral_vector,
)
from .scalar import dot


@dataclass(frozen=True)
class SpectrumReport:
    n: int
    d: int
    counts: dict = field(hash=False)

    @property
    def ordinary(self):
        return self.counts.get(self.d, 0)

    @property
    def dplus1(self):
        return self.counts.get(self.d + 1, 0)

    @property
    def total_hyperplanes(self):
        return sum(self.counts.values())

    def identity_holds(self):
        return sum(comb(i, self.d) * m for i, m in self.counts.items()) == comb(self.n, self.d)

    def to_json(self):
        return {
            "n": self.n,
            "d": self.d,
            "counts": {str(i): self.counts[i] for i in sorted(self.counts)},
            "ordinary": self.ordinary,
            "dplus1": self.dplus1,
            "total_hyperplanes": self.total_hyperplanes,
        }


def _is_zero_vec(v):
    return all(x == 0 for x in v)


def _rows(cfg):
    return [integral_vector(p.coords) for p in cfg.points]


def _scan_chunk(rows, d, subsets, check):
    """Incidence sets of the hyperplanes spanned by ``subsets``.

    Subsets already inside a found hyperplane are skipped unless ``check`` asks
    for every subset to be tested for independence.
    """
    n = len(rows)
    covered = set()
    found = set()
    for sub in subsets:
        seen = sub in covered
        if seen and not check:
            continue
        normal = cofactor_normal([rows[i] for i in sub])
        if _is_zero_vec(normal):
            raise GeneralPositionError(f"points {list(sub)} do not span a hyperplane", subset=sub)
        if seen:
            continue
        inc = tuple(i for i in range(n) if dot(normal, rows[i]) == 0)
        found.add(inc)
        if len(inc) > d:
            covered.update(combinations(inc, d))
    return found


def _scan_chunk_star(args):
    return _scan_chunk(*args)


def _chunks(n, d, parts):
    total = comb(n, d)
    size = -(-total // parts)
    stream = colex_combinations(n, d)
    while True:
        chunk = list(islice(stream, size))
        if not chunk:
            return
        yield chunk


def spectrum(cfg, workers=1):
    """Count hyperplanes by the number of configuration points on them.

    General position is checked on every d-subset unless ``cfg.verified``.
    With ``workers > 1`` the colex subset stream is cut into contiguous
    chunks scanned in separate processes; the union of incidence sets does
    not depend on the chunking.
    """
    d, n = cfg.dim, cfg.n
    if n < d:
        raise ValueError("need at least d points")
    rows = _rows(cfg)
    check = not cfg.verified
    if workers <= 1:
        found = _scan_chunk(rows, d, colex_combinations(n, d), check)
    else:
        jobs = [(rows, d, chunk, check) for chunk in _chunks(n, d, workers * 4)]
        found = set()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_scan_chunk_star, jobs):
                found |= part
    counts = {}
    for inc in found:
        counts[len(inc)] = counts.get(len(inc), 0) + 1
    report = SpectrumReport(n, d, counts)
    if not report.identity_holds():
        raise AssertionError(f"spectrum identity failed for '{cfg.label}': {counts}")
    return report


def _incidences(normal, rows):
    return tuple(i for i, r in enumerate(rows) if dot(normal, r) == 0)


def through_point_exactly(cfg, q, t):
    """Hyperplanes spanned by ``cfg + [q]`` that contain q and exactly t points of cfg."""
    q = q if isinstance(q, ProjPoint) else ProjPoint(tuple(q))
    if any(q == p for p in cfg.points):
        raise ValueError("probe point already belongs to the configuration")
    d, n = cfg.dim, cfg.n
    if t < d - 1 or t > n:
        return 0
    rows = _rows(cfg)
    qrow = integral_vector(q.coords)
    found = set()
    degenerate = False
    for sub in combinations(range(n), d - 1):
        normal = cofactor_normal([qrow] + [rows[i] for i in sub])
        if _is_zero_vec(normal):
            degenerate = True
            break
        found.add(_incidences(normal, rows))
    if degenerate:
        # q is dependent on some d-1 points; fall back to every spanning d-subset
        found = set()
        allrows = rows + [qrow]
        for sub in combinations(range(n + 1), d):
            normal = cofactor_normal([allrows[i] for i in sub])
            if _is_zero_vec(normal) or dot(normal, qrow) != 0:
                continue
            found.add(_incidences(normal, rows))
    return sum(1 for inc in found if len(inc) == t)


@dataclass(frozen=True)
class StabilityResult:
    before: int
    after: int
    bound: Fraction

    @property
    def holds(self):
        return self.after <= self.bound


def stability_bound(cfg, removed, workers=1):
    """Ordinary counts before and after removing K points, and the allowed maximum.

    Removing K points may add at most ``K * C(n-1, d-1) / d`` ordinary
    hyperplanes.
    """
    removed = sorted(set(removed))
    d, n = cfg.dim, cfg.n
    if any(not 0 <= i < n for i in removed):
        raise IndexError("removal index out of range")
    if n - len(removed) < d + 1:
        raise ValueError("removal must leave at least d+1 points")
    before = spectrum(cfg, workers).ordinary
    keep = [p for i, p in enumerate(cfg.points) if i not in set(removed)]
    after_cfg = Configuration(d, tuple(keep), f"{cfg.label}|minus{removed}", cfg.verified)
    after = spectrum(after_cfg, workers).ordinary
    bound = before + Fraction(len(removed) * comb(n - 1, d - 1), d)
    return StabilityResult(before, after, bound)


def stability_check(cfg, removed, workers=1):
    return stability_bound(cfg, removed, workers).holds
