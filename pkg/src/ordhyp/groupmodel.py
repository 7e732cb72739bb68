"""Counting distinct solutions of weighted equations in small abelian groups.

``[m_1, ..., m_k; c]`` is the number of ordered k-tuples of pairwise distinct
group elements with ``m_1 a_1 + ... + m_k a_k = c``.  A coset of order n on a
curve of degree d+1 spans ``[2, 1^(d-1); c] / (d-1)!`` ordinary hyperplanes
and ``[1^(d+1); c] / (d+1)!`` hyperplanes through d+1 of its points.
"""

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, factorial, perm

import numpy as np

from ._backend import kernels

DEFAULT_BUDGET = 10**9


class BudgetExceeded(RuntimeError):
    """A brute-force count would take more elementary steps than allowed."""


class GroupKind(enum.Enum):
    CYCLIC = "Cyclic"
    PRODUCT = "Product"


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z_n`` or ``Z_{n/2} x Z_2`` with elements encoded as 0..n-1.

    In the product, ``(a, b)`` is encoded as ``2a + b``.
    """

    kind: GroupKind
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("group order must be positive")
        if self.kind is GroupKind.PRODUCT and self.n % 4:
            raise ValueError("Z_{n/2} x Z_2 is only considered when 4 divides n")

    @classmethod
    def cyclic(cls, n):
        return cls(GroupKind.CYCLIC, n)

    @classmethod
    def product(cls, n):
        return cls(GroupKind.PRODUCT, n)

    @property
    def label(self):
        if self.kind is GroupKind.CYCLIC:
            return f"Z{self.n}"
        return f"Z{self.n // 2}xZ2"

    def decode(self, x):
        return x if self.kind is GroupKind.CYCLIC else (x // 2, x % 2)

    def encode(self, v):
        if self.kind is GroupKind.CYCLIC:
            return v % self.n
        a, b = v
        return 2 * (a % (self.n // 2)) + b % 2

    def add(self, x, y):
        return int(self.add_table[x, y])

    def neg(self, x):
        return int(self.sub_table[0, x])

    def scale(self, m, x):
        if self.kind is GroupKind.CYCLIC:
            return m * x % self.n
        a, b = self.decode(x)
        return self.encode((m * a, m * b))

    @cached_property
    def add_table(self):
        n = self.n
        if self.kind is GroupKind.CYCLIC:
            idx = np.arange(n)
            return ((idx[:, None] + idx[None, :]) % n).astype(np.intc)
        h = n // 2
        a = np.arange(n) // 2
        b = np.arange(n) % 2
        return (2 * ((a[:, None] + a[None, :]) % h) + (b[:, None] + b[None, :]) % 2).astype(np.intc)

    @cached_property
    def sub_table(self):
        """``sub_table[x, y] == x - y``."""
        t = np.empty((self.n, self.n), dtype=np.intc)
        for x in range(self.n):
            for y in range(self.n):
                t[self.add_table[x, y], y] = x
        return t

    def mul_row(self, m):
        return np.array([self.scale(m, a) for a in range(self.n)], dtype=np.intc)


@dataclass(frozen=True)
class EquationSpec:
    weights: tuple
    target: int

    def __post_init__(self):
        w = tuple(int(m) for m in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise ValueError("need at least one weight")
        if any(m < 1 for m in w):
            raise ValueError("weights must be positive")


@dataclass(frozen=True)
class CosetSpec:
    """A coset of ``group`` on a curve in d-space; ``c`` is minus (d+1) times its offset."""

    group: FiniteAbelianGroup
    d: int
    c: int


def _check_target(g, c):
    if not 0 <= c < g.n:
        raise ValueError(f"target {c} is not an element of {g.label}")


def bruteforce_steps(g, weights):
    """Elementary steps of the solve-last-coordinate brute force."""
    k = len(weights)
    if k > g.n:
        return 0
    fibre = max(np.bincount(g.mul_row(weights[-1]), minlength=g.n))
    return perm(g.n, k - 1) * int(fibre)


def count_bruteforce(g, eq, budget=DEFAULT_BUDGET):
    """Exact ``[m_1, ..., m_k; c]`` by enumerating the first k-1 coordinates.

    The last coordinate is read off from the preimage lists of ``a -> m_k a``.
    """
    _check_target(g, eq.target)
    k = len(eq.weights)
    if k > g.n:
        return 0
    steps = bruteforce_steps(g, eq.weights)
    if steps > budget:
        raise BudgetExceeded(f"{steps} steps for {list(eq.weights)} in {g.label} exceeds budget {budget}")
    last = g.mul_row(eq.weights[-1])
    order = np.argsort(last, kind="stable").astype(np.intc)
    start = np.searchsorted(last[order], np.arange(g.n + 1)).astype(np.intc)
    mul = np.stack([g.mul_row(m) for m in eq.weights])
    return int(kernels.count_target(g.add_table, mul, g.sub_table, start, order, eq.target))


def count_all_targets(g, weights, budget=DEFAULT_BUDGET):
    """Histogram over c of ``[weights; c]`` from one brute-force pass."""
    weights = tuple(weights)
    k = len(weights)
    if k > g.n:
        return np.zeros(g.n, dtype=np.int64)
    steps = perm(g.n, k)
    if steps > budget:
        raise BudgetExceeded(f"{steps} steps for {list(weights)} in {g.label} exceeds budget {budget}")
    mul = np.stack([g.mul_row(m) for m in weights])
    return np.asarray(kernels.count_histogram(g.add_table, mul), dtype=np.int64)


@lru_cache(maxsize=None)
def _recurrence_hist(g, weights, budget):
    """Histogram of ``[weights; .]`` for weights sorted in decreasing order."""
    if weights == (1,):
        return tuple([1] * g.n)
    if weights[-1] != 1:
        return tuple(int(v) for v in count_all_targets(g, weights, budget))
    rest = weights[:-1]
    k = len(weights)
    hist = [factorial(k - 1) * comb(g.n, k - 1)] * g.n
    for j in range(len(rest)):
        bumped = list(rest)
        bumped[j] += 1
        sub = _recurrence_hist(g, tuple(sorted(bumped, reverse=True)), budget)
        hist = [h - s for h, s in zip(hist, sub)]
    return tuple(hist)


def count_recurrence_all(g, weights, budget=DEFAULT_BUDGET):
    """``[weights; c]`` for every c, peeling off weights equal to 1.

    Uses ``[m_1..m_{k-1}, 1; c] = (k-1)! C(n, k-1) - sum_j [.., m_j + 1, ..; c]``
    until no weight 1 remains, then brute-forces the short remaining terms.
    The count is symmetric in the weights, so terms are memoized on the
    sorted weight vector.
    """
    weights = tuple(sorted((int(m) for m in weights), reverse=True))
    if not weights or weights[-1] < 1:
        raise ValueError("weights must be positive")
    return _recurrence_hist(g, weights, budget)


def count_recurrence(g, eq, budget=DEFAULT_BUDGET):
    """``[m_1, ..., m_k; c]`` via the recurrence (needs a trailing weight 1)."""
    if eq.weights[-1] != 1:
        raise ValueError("the recurrence peels off a trailing weight 1")
    _check_target(g, eq.target)
    return count_recurrence_all(g, eq.weights, budget)[eq.target]


def _exact_div(a, b):
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"{a} is not divisible by {b}")
    return q


def ordinary_weights(d):
    return (2,) + (1,) * (d - 1)


def ordinary_predict(spec, budget=DEFAULT_BUDGET):
    """Ordinary hyperplanes spanned by the coset: ``[2, 1^(d-1); c] / (d-1)!``."""
    eq = EquationSpec(ordinary_weights(spec.d), spec.c)
    return _exact_div(count_recurrence(spec.group, eq, budget), factorial(spec.d - 1))


def dplus1_predict(spec, budget=DEFAULT_BUDGET):
    """Hyperplanes through d+1 coset points: ``[1^(d+1); c] / (d+1)!``."""
    eq = EquationSpec((1,) * (spec.d + 1), spec.c)
    return _exact_div(count_recurrence(spec.group, eq, budget), factorial(spec.d + 1))


def candidate_groups(n):
    groups = [FiniteAbelianGroup.cyclic(n)]
    if n % 4 == 0:
        groups.append(FiniteAbelianGroup.product(n))
    return groups


@dataclass(frozen=True)
class ScanResult:
    group: FiniteAbelianGroup
    c: int
    value: int


def _scan(d, n, weights, divisor, better, budget):
    if n < d + 2:
        raise ValueError("need n >= d + 2")
    best = None
    for g in candidate_groups(n):
        hist = count_recurrence_all(g, weights, budget)
        for c in range(n):
            value = _exact_div(hist[c], divisor)
            if best is None or better(value, best.value):
                best = ScanResult(g, c, value)
    return best


def minimize_ordinary(d, n, budget=DEFAULT_BUDGET):
    """Fewest ordinary hyperplanes over all c and both group kinds.

    Ties go to the first candidate in scan order: Cyclic before Product, then
    smaller encoded c.
    """
    return _scan(d, n, ordinary_weights(d), factorial(d - 1), lambda a, b: a < b, budget)


def maximize_dplus1(d, n, budget=DEFAULT_BUDGET):
    """Most (d+1)-point hyperplanes over all c and both group kinds."""
    return _scan(d, n, (1,) * (d + 1), factorial(d + 1), lambda a, b: a > b, budget)


def _as_int(x):
    if x.denominator != 1:
        raise ArithmeticError(f"closed form produced non-integer {x}")
    return x.numerator


def closed_form_min(d, n):
    """Minimum number of ordinary hyperplanes of a coset, by residue of n."""
    if n < d + 2:
        raise ValueError("need n >= d + 2")
    n_ = Fraction(n)
    if d == 4:
        v = comb(n - 1, 3) - (4 if n % 5 == 0 else 0)
    elif d == 5:
        base = comb(n - 1, 4)
        r = n % 6
        if r == 0:
            v = base - n_**2 / 8 + n_ / 12 - 1
        elif r in (1, 5):
            v = base
        elif r in (2, 4):
            v = base - n_**2 / 8 + 3 * n_ / 4 - 1
        else:
            v = base - 2 * n_ / 3 + 2
    elif d == 6:
        v = comb(n - 1, 5) - (6 if n % 7 == 0 else 0)
    else:
        raise ValueError("closed forms are known for d = 4, 5, 6 only")
    return _as_int(Fraction(v))


def closed_form_max(d, n):
    """Maximum number of (d+1)-point hyperplanes of a coset, by residue of n."""
    if n < d + 2:
        raise ValueError("need n >= d + 2")
    n_ = Fraction(n)
    if d == 4:
        v = Fraction(comb(n - 1, 4), 5) + (Fraction(4, 5) if n % 5 == 0 else 0)
    elif d == 5:
        base = Fraction(comb(n - 1, 5), 6)
        r = n % 6
        if r == 0:
            v = base + n_**2 / 48 - n_ / 72 + Fraction(1, 6)
        elif r in (1, 5):
            v = base
        elif r in (2, 4):
            v = base + n_**2 / 48 - n_ / 8 + Fraction(1, 6)
        else:
            v = base + n_ / 9 - Fraction(1, 3)
    elif d == 6:
        v = Fraction(comb(n - 1, 6), 7) + (Fraction(6, 7) if n % 7 == 0 else 0)
    else:
        raise ValueError("closed forms are known for d = 4, 5, 6 only")
    return _as_int(v)


def renormalization_iso_check(g, t, d=2, samples=None, seed=0):
    """Check that moving the identity to ``-t`` is a group isomorphism.

    With ``x (+)' y = x + y + t`` the new identity is ``0' = -t`` and
    ``psi(x) = x + 0'`` maps ``(G, +)`` onto ``(G, (+)')``.  A sum condition
    ``a_0 + ... + a_d = c`` becomes ``a_0 (+)' ... (+)' a_d = c - d 0'``.
    Checked exhaustively, or on ``samples`` random tuples when given.
    """
    n = g.n
    zero_p = g.neg(t)

    def op(x, y):
        return g.add(g.add(x, y), t)

    def psi(x):
        return g.add(x, zero_p)

    if sorted(psi(x) for x in range(n)) != list(range(n)) or psi(0) != zero_p:
        return False
    for x in range(n):
        if op(x, zero_p) != x:
            return False
        for y in range(n):
            if psi(g.add(x, y)) != op(psi(x), psi(y)):
                return False

    shift = g.neg(g.scale(d, zero_p))
    if samples is None:
        tuples = np.array(np.meshgrid(*[np.arange(n)] * (d + 1), indexing="ij")).reshape(d + 1, -1).T
    else:
        rng = random.Random(seed)
        tuples = [[rng.randrange(n) for _ in range(d + 1)] for _ in range(samples)]
    for tup in tuples:
        plain = 0
        renorm = int(tup[0])
        for a in tup:
            plain = g.add(plain, int(a))
        for a in tup[1:]:
            renorm = op(renorm, int(a))
        if renorm != g.add(plain, shift):
            return False
    return True
