"""Exact scalars: rationals and elements of cyclotomic fields Q(zeta_M).

Rationals are plain :class:`fractions.Fraction` (or ``int``).  Cyclotomic
elements live in the power basis ``1, zeta, ..., zeta**(phi-1)`` modulo the
M-th cyclotomic polynomial; the representation is canonical, so the zero test
is exact and free.  Signs of real cyclotomic numbers are certified with
adaptive-precision interval arithmetic gated by the exact zero test.
"""

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from threading import Lock

import numpy as np
from mpmath import iv

from . import _kernels_py
from ._backend import kernels

__all__ = [
    "BackendMismatch",
    "NonRealError",
    "CyclotomicField",
    "CycloElement",
    "cyclotomic_polynomial",
    "get_field",
    "root_of_unity_parts",
    "certified_sign",
    "backend_of",
    "dot",
    "format_scalar",
    "parse_scalar",
]

_INT64_SAFE = 1 << 62
_IV_LOCK = Lock()


class BackendMismatch(TypeError):
    """Arithmetic between scalars of different backends or fields."""


class NonRealError(ValueError):
    """A real-only operation received a non-real cyclotomic element."""


def _poly_divexact(num, den):
    """Exact division of integer polynomials (low-to-high), ``den`` monic."""
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q[i - dd] = c
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("modulus must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for e in range(1, m):
        if m % e == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(e))
    return tuple(poly)


class CyclotomicField:
    """Arithmetic context for Q(zeta_M); obtain instances via :func:`get_field`."""

    def __init__(self, modulus):
        self.modulus = modulus
        self.poly = cyclotomic_polynomial(modulus)
        self.degree = phi = len(self.poly) - 1
        # red[k] = x**(phi + k) mod poly
        red = []
        cur = [-c for c in self.poly[:phi]]
        for _ in range(max(phi - 1, 0)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, self.poly[:phi])]
        self._red = red
        self._red_np = np.array(red, dtype=np.int64).reshape(len(red), phi)
        self._growth = 1 + sum(max(map(abs, row)) for row in red)
        self._conj = None
        self.zero = CycloElement(self, (0,) * phi, 1)
        self.one = self.lift(1)

    def __repr__(self):
        return f"CyclotomicField({self.modulus})"

    def __reduce__(self):
        return (get_field, (self.modulus,))

    # construction
    def element(self, coeffs):
        """Element from power-basis coefficients (ints or Fractions, any length).

        Coefficients beyond ``phi`` are reduced modulo the cyclotomic polynomial.
        """
        fr = [Fraction(c) for c in coeffs]
        den = reduce(lcm, (f.denominator for f in fr), 1)
        num = [f.numerator * (den // f.denominator) for f in fr]
        return self._from_long(num, den)

    def _from_long(self, num, den):
        phi = self.degree
        if len(num) > phi:
            out = list(num[:phi])
            for k in range(phi, len(num)):
                c = num[k]
                if c:
                    row = self._power_row(k)
                    for j in range(phi):
                        out[j] += c * row[j]
            num = out
        else:
            num = list(num) + [0] * (phi - len(num))
        return CycloElement(self, tuple(num), den)

    @lru_cache(maxsize=None)
    def _power_row(self, e):
        """Coefficients of x**e reduced mod the cyclotomic polynomial."""
        phi = self.degree
        e %= self.modulus
        if e < phi:
            row = [0] * phi
            row[e] = 1
            return tuple(row)
        if e - phi < len(self._red):
            return self._red[e - phi]
        row = list(self._power_row(e - 1))
        top = row[-1]
        row = [0] + row[:-1]
        if top:
            row = [c - top * p for c, p in zip(row, self.poly[:phi])]
        return tuple(row)

    def zeta(self, k=1):
        """The element zeta_M ** k."""
        e = k % self.modulus
        if e < self.degree:
            num = [0] * self.degree
            num[e] = 1
            return CycloElement(self, tuple(num), 1)
        return CycloElement(self, self._power_row(e), 1)

    def lift(self, x):
        """Embed an int or Fraction as a constant of this field."""
        if isinstance(x, CycloElement):
            if x.field is not self:
                raise BackendMismatch(f"cannot lift {x.field} element into {self}")
            return x
        x = Fraction(x)
        num = [0] * self.degree
        num[0] = x.numerator
        return CycloElement(self, tuple(num), x.denominator)

    # raw integer-vector arithmetic
    def _mul_raw(self, a, b):
        ma = max(map(abs, a))
        mb = max(map(abs, b))
        if ma == 0 or mb == 0:
            return [0] * self.degree
        if self.degree == 1:
            return [a[0] * b[0]]
        if ma * mb * self.degree * self._growth < _INT64_SAFE:
            return kernels.poly_mulmod(a, b, self._red_np)
        return _kernels_py.poly_mulmod(a, b, self._red)

    def _dot_raw(self, rows_a, rows_b):
        ma = max(max(map(abs, r)) for r in rows_a)
        mb = max(max(map(abs, r)) for r in rows_b)
        if ma == 0 or mb == 0:
            return [0] * self.degree
        if self.degree == 1:
            return [sum(a[0] * b[0] for a, b in zip(rows_a, rows_b))]
        if ma * mb * self.degree * self._growth * len(rows_a) < _INT64_SAFE:
            return kernels.poly_dot_mod(rows_a, rows_b, self._red_np)
        return _kernels_py.poly_dot_mod(rows_a, rows_b, self._red)

    def dot(self, xs, ys):
        """Exact ``sum(x * y)`` with a single reduction step."""
        xs = [self._coerce(x) for x in xs]
        ys = [self._coerce(y) for y in ys]
        if not xs:
            return self.zero
        dens = [x.den * y.den for x, y in zip(xs, ys)]
        den = reduce(lcm, dens, 1)
        rows_a = [tuple(c * (den // dd) for c in x.num) for x, dd in zip(xs, dens)]
        rows_b = [y.num for y in ys]
        return CycloElement(self, tuple(self._dot_raw(rows_a, rows_b)), den)

    def _coerce(self, x):
        if isinstance(x, CycloElement):
            if x.field is not self:
                raise BackendMismatch(f"mixing {x.field} with {self}")
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return self.lift(x)
        raise BackendMismatch(f"cannot combine {type(x).__name__} with {self}; lift explicitly")

    def _conj_rows(self):
        if self._conj is None:
            self._conj = [self._power_row(-k) for k in range(self.degree)]
        return self._conj


@lru_cache(maxsize=None)
def get_field(modulus):
    """The (cached, shared) field Q(zeta_modulus)."""
    return CyclotomicField(modulus)


class CycloElement:
    """Immutable element of Q(zeta_M) in canonical reduced form.

    Stored as integer numerators ``num`` over a positive common denominator
    ``den`` with ``gcd(den, *num) == 1``.
    """

    __slots__ = ("field", "num", "den", "_hash", "_real")

    def __init__(self, field, num, den):
        g = gcd(den, *num)
        if den < 0:
            g = -g
        if g not in (0, 1):
            num = tuple(c // g for c in num)
            den //= g
        if not any(num):
            den = 1
        self.field = field
        self.num = num
        self.den = den
        self._hash = None
        self._real = None

    def __reduce__(self):
        return (_rebuild, (self.field.modulus, self.num, self.den))

    @property
    def modulus(self):
        return self.field.modulus

    @property
    def coeffs(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self):
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def _other(self, other):
        if isinstance(other, CycloElement):
            if other.field is not self.field:
                raise BackendMismatch(f"mixing {other.field} with {self.field}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field.lift(other)
        if isinstance(other, Fraction):
            raise BackendMismatch("rational/cyclotomic mixing; lift the rational explicitly")
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return CycloElement(self.field, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        return CycloElement(
            self.field,
            tuple(a * o.den + b * self.den for a, b in zip(self.num, o.num)),
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o.is_rational():
            c = o.num[0]
            return CycloElement(self.field, tuple(a * c for a in self.num), self.den * o.den)
        if self.is_rational():
            c = self.num[0]
            return CycloElement(self.field, tuple(a * c for a in o.num), self.den * o.den)
        num = self.field._mul_raw(self.num, o.num)
        return CycloElement(self.field, tuple(num), self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            c = self.num[0]
            num = [0] * self.field.degree
            num[0] = self.den if c > 0 else -self.den
            return CycloElement(self.field, tuple(num), abs(c))
        inv = _poly_inverse_mod([Fraction(c) for c in self.num], self.field.poly)
        return self.field.element(inv) * self.den

    def conjugate(self):
        """Image under zeta -> zeta**-1 (complex conjugation)."""
        rows = self.field._conj_rows()
        out = [0] * self.field.degree
        for c, row in zip(self.num, rows):
            if c:
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return CycloElement(self.field, tuple(out), self.den)

    def is_real(self):
        if self._real is None:
            self._real = self.conjugate() == self
        return self._real

    def __eq__(self, other):
        if isinstance(other, CycloElement):
            return self.field is other.field and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.field.modulus, self.num, self.den))
        return self._hash

    def to_complex(self):
        m = self.field.modulus
        z = sum(complex(c) * np.exp(2j * np.pi * k / m) for k, c in enumerate(self.num) if c)
        return complex(z) / self.den

    def __float__(self):
        return certified_float(self)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"Cyclo[{self.field.modulus}]({body})"


def _rebuild(modulus, num, den):
    return CycloElement(get_field(modulus), num, den)


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        a.pop()
        _poly_trim(a)
    return q, a


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a, m):
    """Inverse of ``a`` modulo the irreducible ``m`` via extended Euclid over Q."""
    r0, r1 = [Fraction(c) for c in m], _poly_trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            raise ArithmeticError("non-invertible element (modulus not irreducible?)")
    c = r1[0]
    return [x / c for x in s1]


def backend_of(x):
    """``("rational", None)`` or ``("cyclotomic", M)`` for a scalar."""
    if isinstance(x, CycloElement):
        return ("cyclotomic", x.field.modulus)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return ("rational", None)
    raise TypeError(f"not a scalar: {x!r}")


def dot(xs, ys):
    """Exact inner product over either backend."""
    xs = list(xs)
    for x in xs:
        if isinstance(x, CycloElement):
            return x.field.dot(xs, ys)
    for y in ys:
        if isinstance(y, CycloElement):
            return y.field.dot(xs, ys)
    return sum((x * y for x, y in zip(xs, ys)), 0)


def root_of_unity_parts(m, k):
    """``(cos(2 pi k/m), sin(2 pi k/m))`` as real elements of Q(zeta_lcm(4, m)).

    ``c**2 + s**2 == 1`` holds exactly.
    """
    if m < 1:
        raise ValueError("m must be positive")
    big = lcm(4, m)
    field = get_field(big)
    w = field.zeta(k * (big // m))
    w_inv = field.zeta(-k * (big // m))
    i = field.zeta(big // 4)
    half = Fraction(1, 2)
    c = (w + w_inv) * field.lift(half)
    s = -(i * (w - w_inv)) * field.lift(half)
    return c, s


def _interval(x, prec):
    m = x.field.modulus
    with _IV_LOCK:
        saved = iv.prec
        iv.prec = prec
        try:
            total = iv.mpf(0)
            for k, c in enumerate(x.num):
                if c:
                    total += iv.mpf(c) * iv.cos(iv.pi * (2 * k) / m)
            return total / x.den
        finally:
            iv.prec = saved


def certified_sign(x):
    """Exact sign (-1, 0, +1) of a rational or real cyclotomic scalar."""
    if not isinstance(x, CycloElement):
        x = Fraction(x)
        return (x > 0) - (x < 0)
    if x.is_zero():
        return 0
    if not x.is_real():
        raise NonRealError("sign of a non-real cyclotomic element")
    if x.is_rational():
        return (x.num[0] > 0) - (x.num[0] < 0)
    prec = 64
    while True:
        val = _interval(x, prec)
        if val > 0:
            return 1
        if val < 0:
            return -1
        prec *= 2


def certified_float(x):
    """Float approximation of a real scalar (for display only)."""
    if not isinstance(x, CycloElement):
        return float(x)
    if not x.is_real():
        raise NonRealError("float of a non-real cyclotomic element")
    return float(_interval(x, 80).mid)


def format_scalar(x):
    """Serialize: rationals as ``"num/den"``; cyclotomic as a modulus/coeffs dict."""
    if isinstance(x, CycloElement):
        return {"modulus": x.field.modulus, "coeffs": [_fmt_frac(c) for c in x.coeffs]}
    return _fmt_frac(Fraction(x))


def _fmt_frac(f):
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_scalar(obj, modulus=None):
    """Inverse of :func:`format_scalar`.

    A bare string is a rational unless ``modulus`` is given, in which case it
    is lifted into Q(zeta_modulus).  A list of strings is read as power-basis
    coefficients in Q(zeta_modulus).
    """
    if isinstance(obj, dict):
        field = get_field(int(obj["modulus"]))
        if modulus is not None and int(modulus) != field.modulus:
            raise BackendMismatch("scalar modulus disagrees with file modulus")
        return field.element(Fraction(c) for c in obj["coeffs"])
    if isinstance(obj, list):
        if modulus is None:
            raise ValueError("coefficient list needs a modulus")
        return get_field(int(modulus)).element(Fraction(c) for c in obj)
    value = Fraction(str(obj))
    if modulus is not None:
        return get_field(int(modulus)).lift(value)
    return value
