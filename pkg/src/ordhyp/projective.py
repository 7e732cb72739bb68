"""Exact projective linear algebra over a single scalar backend."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm

from .scalar import BackendMismatch, CycloElement, backend_of, dot, get_field


class DegenerateError(ValueError):
    """Points that were required to be independent are not."""

    def __init__(self, message, subset=None):
        super().__init__(message)
        self.subset = subset


class GeneralPositionError(DegenerateError):
    """Some d points of a configuration fail to span a hyperplane."""


def _backend_of_vector(vec):
    kinds = {backend_of(x) for x in vec if not isinstance(x, int) or isinstance(x, bool)}
    if len(kinds) > 1:
        raise BackendMismatch(f"mixed backends in one vector: {sorted(map(str, kinds))}")
    return kinds.pop() if kinds else ("rational", None)


def _is_zero(x):
    return x == 0


@dataclass(frozen=True, eq=False)
class ProjPoint:
    """A point of projective space in homogeneous coordinates."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if all(_is_zero(x) for x in coords):
            raise ValueError("all homogeneous coordinates are zero")
        _backend_of_vector(coords)

    @property
    def dim(self):
        return len(self.coords) - 1

    @property
    def backend(self):
        return _backend_of_vector(self.coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def lead_index(self):
        return next(i for i, x in enumerate(self.coords) if not _is_zero(x))

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if len(self) != len(other):
            return False
        i = self.lead_index()
        a, b = self.coords[i], other.coords[i]
        if _is_zero(b):
            return False
        return all(a * y - b * x == 0 for x, y in zip(self.coords, other.coords))

    def __hash__(self):
        return hash(canonical_key(self.coords))

    def scaled(self, c):
        return ProjPoint(tuple(c * x for x in self.coords))

    def integral(self):
        """A representative with integral coordinates (denominators cleared)."""
        return ProjPoint(integral_vector(self.coords))

    def __repr__(self):
        return f"ProjPoint({list(self.coords)!r})"


def integral_vector(vec):
    """Scale a vector by a positive rational so all denominators are 1."""
    vec = tuple(vec)
    kind, modulus = _backend_of_vector(vec)
    if kind == "rational":
        fr = [Fraction(x) for x in vec]
        den = reduce(lcm, (f.denominator for f in fr), 1)
        ints = [f.numerator * (den // f.denominator) for f in fr]
        g = reduce(gcd, ints, 0) or 1
        return tuple(v // g for v in ints)
    fld = get_field(modulus)
    elems = [fld.lift(x) for x in vec]
    den = reduce(lcm, (e.den for e in elems), 1)
    scale = fld.lift(den)
    return tuple(e * scale for e in elems)


def canonical_key(vec):
    """Hashable key identifying ``vec`` up to nonzero scalar multiples.

    Rational vectors become primitive integer tuples with positive leading
    entry; cyclotomic vectors are divided by their first nonzero entry.
    """
    vec = tuple(vec)
    kind, modulus = _backend_of_vector(vec)
    if kind == "rational":
        ints = integral_vector(vec)
        lead = next(v for v in ints if v)
        if lead < 0:
            ints = tuple(-v for v in ints)
        return ("rational", ints)
    fld = get_field(modulus)
    elems = [fld.lift(x) for x in vec]
    lead = next(e for e in elems if not e.is_zero())
    inv = lead.inverse()
    return ("cyclotomic", modulus, tuple((e * inv).coeffs for e in elems))


@dataclass(frozen=True)
class Hyperplane:
    """A hyperplane given by its normal covector, first nonzero entry 1."""

    normal: tuple

    def __post_init__(self):
        normal = tuple(self.normal)
        if all(_is_zero(x) for x in normal):
            raise ValueError("zero normal vector")
        lead = next(x for x in normal if not _is_zero(x))
        if lead != 1:
            if isinstance(lead, CycloElement):
                inv = lead.inverse()
                normal = tuple(lead.field.lift(x) * inv for x in normal)
            else:
                normal = tuple(Fraction(x) / Fraction(lead) for x in normal)
        object.__setattr__(self, "normal", normal)

    @property
    def dim(self):
        return len(self.normal) - 1

    def key(self):
        return canonical_key(self.normal)

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        if not isinstance(other, Hyperplane):
            return NotImplemented
        return self.normal == other.normal

    def contains(self, p):
        return incident(self, p)


@dataclass(frozen=True)
class Configuration:
    """Points of projective d-space sharing one scalar backend.

    ``verified`` records that a builder already confirmed general position;
    it does not take part in equality.
    """

    dim: int
    points: tuple
    label: str = ""
    verified: bool = field(default=False, compare=False)

    def __post_init__(self):
        pts = tuple(p if isinstance(p, ProjPoint) else ProjPoint(tuple(p)) for p in self.points)
        object.__setattr__(self, "points", pts)
        if self.dim < 2:
            raise ValueError("dimension must be at least 2")
        for p in pts:
            if len(p) != self.dim + 1:
                raise ValueError(f"point {p!r} does not have {self.dim + 1} coordinates")
        # integer-only points are backend-neutral: ints embed in every field
        kinds = {p.backend for p in pts if not _all_int(p.coords)}
        if len(kinds) > 1:
            raise BackendMismatch("configuration mixes scalar backends")

    @property
    def n(self):
        return len(self.points)

    @property
    def backend(self):
        kinds = {p.backend for p in self.points if not _all_int(p.coords)}
        return kinds.pop() if kinds else ("rational", None)

    def __len__(self):
        return len(self.points)

    def with_points(self, points, label=None, verified=False):
        return Configuration(self.dim, tuple(points), self.label if label is None else label, verified)


def _all_int(coords):
    return all(type(x) is int for x in coords)


def rank(rows):
    """Exact rank of a rectangular matrix of scalars."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return 0
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    kind, modulus = _backend_of_vector([x for r in rows for x in r])
    if kind == "rational":
        return _bareiss_rank([list(integral_vector(r)) if any(r) else [0] * width for r in rows])
    fld = get_field(modulus)
    return _division_free_rank([[fld.lift(x) for x in r] for r in rows])


def _bareiss_rank(m):
    """Fraction-free (Bareiss) elimination on an integer matrix."""
    m = [list(r) for r in m]
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            for j in range(c, ncols):
                m[i][j] = (p * m[i][j] - f * m[r][j]) // prev
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def _division_free_rank(m):
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            if not f.is_zero():
                m[i] = [p * m[i][j] - f * m[r][j] if j >= c else m[i][j] for j in range(ncols)]
        r += 1
        if r == nrows:
            break
    return r


def cofactor_normal(rows):
    """Signed maximal minors of a k x (k+1) matrix (division-free).

    The result is orthogonal to every row and is zero iff the rows are
    dependent.
    """
    rows = [tuple(r) for r in rows]
    k = len(rows)
    width = k + 1
    if any(len(r) != width for r in rows):
        raise ValueError("cofactor_normal needs a k x (k+1) matrix")
    minors = {(j,): rows[0][j] for j in range(width)}
    for r in range(1, k):
        row = rows[r]
        nxt = {}
        for cols in combinations(range(width), r + 1):
            xs, ms = [], []
            for t, j in enumerate(cols):
                sub = minors[cols[:t] + cols[t + 1:]]
                xs.append(row[j])
                ms.append(sub if (r + t) % 2 == 0 else -sub)
            nxt[cols] = dot(xs, ms)
        minors = nxt
    out = []
    for i in range(width):
        m = minors[tuple(j for j in range(width) if j != i)]
        out.append(m if i % 2 == 0 else -m)
    return tuple(out)


def determinant(rows):
    """Exact determinant of a square matrix (Laplace via cofactors)."""
    rows = [tuple(r) for r in rows]
    if len(rows) == 1:
        return rows[0][0]
    normal = cofactor_normal(rows[1:])
    return dot(rows[0], normal)


def hyperplane_through(pts):
    """The hyperplane spanned by d points of projective d-space."""
    pts = [p if isinstance(p, ProjPoint) else ProjPoint(tuple(p)) for p in pts]
    d = len(pts)
    if any(len(p) != d + 1 for p in pts):
        raise ValueError(f"need {d} points with {d + 1} coordinates each")
    normal = cofactor_normal([p.coords for p in pts])
    if all(_is_zero(x) for x in normal):
        raise DegenerateError("points do not span a hyperplane", subset=tuple(pts))
    return Hyperplane(normal)


def incident(h, p):
    """True iff point ``p`` lies on hyperplane ``h`` (exact)."""
    coords = p.coords if isinstance(p, ProjPoint) else tuple(p)
    if len(coords) != len(h.normal):
        raise ValueError("dimension mismatch")
    kh, kp = _backend_of_vector(h.normal), _backend_of_vector(coords)
    if kh != kp and ("rational", None) not in (kh, kp):
        raise BackendMismatch("hyperplane and point use different fields")
    if kh != kp:
        modulus = kh[1] or kp[1]
        fld = get_field(modulus)
        return fld.dot([fld.lift(x) for x in h.normal], [fld.lift(x) for x in coords]).is_zero()
    return dot(h.normal, coords) == 0


def colex_combinations(n, k):
    """k-subsets of range(n) in colexicographic order."""
    if k == 0:
        yield ()
        return
    for top in range(k - 1, n):
        for rest in colex_combinations(top, k - 1):
            yield rest + (top,)


def general_position(cfg):
    """``(True, None)`` if every d points span a hyperplane, else ``(False, witness)``.

    The witness is the first violating index subset in colex order.
    """
    d = cfg.dim
    if cfg.n < d:
        raise ValueError("general position needs at least d points")
    rows = [integral_vector(p.coords) for p in cfg.points]
    for subset in colex_combinations(cfg.n, d):
        normal = cofactor_normal([rows[i] for i in subset])
        if all(_is_zero(x) for x in normal):
            return False, subset
    return True, None


def require_general_position(cfg):
    ok, witness = general_position(cfg)
    if not ok:
        raise GeneralPositionError(
            f"points {list(witness)} of '{cfg.label}' do not span a hyperplane", subset=witness
        )
    return cfg


def apply_matrix(cfg, matrix):
    """Image of a configuration under an invertible (d+1)x(d+1) matrix acting on columns."""
    size = cfg.dim + 1
    matrix = [tuple(Fraction(x) for x in row) for row in matrix]
    if len(matrix) != size or any(len(r) != size for r in matrix):
        raise ValueError("matrix has the wrong shape")
    if rank(matrix) != size:
        raise DegenerateError("matrix is singular")
    kind, modulus = cfg.backend
    if kind == "rational":
        lifted = matrix
    else:
        fld = get_field(modulus)
        lifted = [tuple(fld.lift(x) for x in row) for row in matrix]
    pts = [ProjPoint(tuple(dot(row, p.coords) for row in lifted)) for p in cfg.points]
    return cfg.with_points(pts, label=f"{cfg.label}|transformed")
