"""Builders for near-pencils and acnodal coset configurations."""

from dataclasses import dataclass
from math import gcd, lcm

from .curve import acnodal_center, curve_point
from .groupmodel import CosetSpec, FiniteAbelianGroup
from .projective import Configuration, ProjPoint, require_general_position
from .scalar import root_of_unity_parts


def near_pencil(d, n):
    """n-1 moment-curve points in the hyperplane ``x_d = 0`` plus the apex ``e_d``.

    Any d of the points are independent (Vandermonde minors), so the result
    is marked as already verified.
    """
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if n < d + 2:
        raise ValueError(f"a near-pencil in dimension {d} needs n >= {d + 2}")
    pts = [tuple(t**i for i in range(d)) + (0,) for t in range(1, n)]
    pts.append((0,) * d + (1,))
    return Configuration(d, tuple(pts), f"near_pencil(d={d},n={n})", verified=True)


@dataclass(frozen=True)
class CosetMeta:
    """Bookkeeping for an acnodal coset: curve parameter k sits at angle index k(d+1)+j."""

    d: int
    n: int
    j: int
    group: FiniteAbelianGroup
    c: int
    modulus: int

    @property
    def angle_modulus(self):
        return 2 * self.n * (self.d + 1)

    def angle_index(self, k):
        return k * (self.d + 1) + self.j

    def coset_spec(self):
        return CosetSpec(self.group, self.d, self.c)


def coset_parameter(d, n, index):
    """Parameter ``[cos t, sin t]`` with ``t = pi * index / (n (d+1))``."""
    return root_of_unity_parts(2 * n * (d + 1), index)


def acnodal_coset(d, n, j=0, check=True):
    """n points of a coset of Z_n on the acnodal normal-form curve.

    The group coordinate of parameter ``[cos t, sin t]`` is ``e^(2it)``, so
    point k has group coordinate ``exp(2 pi i (k(d+1) + j) / (n(d+1)))``.
    General position is asserted exhaustively unless ``check`` is False.
    """
    if n < d + 2:
        raise ValueError(f"need n >= {d + 2}")
    if not 0 <= j < n * (d + 1):
        raise ValueError(f"offset must lie in [0, {n * (d + 1)})")
    modulus = lcm(4, 2 * n * (d + 1))
    center = acnodal_center(d).lift(modulus)
    pts = [curve_point(center, coset_parameter(d, n, k * (d + 1) + j)) for k in range(n)]
    if len(set(pts)) != n:
        raise AssertionError("coset parameters collided")
    meta = CosetMeta(d, n, j, FiniteAbelianGroup.cyclic(n), (-j) % n, modulus)
    cfg = Configuration(d, tuple(pts), f"acnodal_coset(d={d},n={n},j={j})")
    if check:
        require_general_position(cfg)
    return Configuration(d, cfg.points, cfg.label, verified=check), meta


def off_coset_probe(meta, r):
    """The curve point at angle index r, which must avoid the coset."""
    if (r - meta.j) % (meta.d + 1) == 0:
        raise ValueError(f"angle index {r} lies on the coset")
    center = acnodal_center(meta.d).lift(meta.modulus)
    return curve_point(center, coset_parameter(meta.d, meta.n, r))


def perturb(cfg, remove=(), add=()):
    """Drop points by index and append new ones; the result must stay in general position."""
    remove = set(remove)
    if any(not 0 <= i < cfg.n for i in remove):
        raise IndexError("removal index out of range")
    pts = [p for i, p in enumerate(cfg.points) if i not in remove]
    pts += [p if isinstance(p, ProjPoint) else ProjPoint(tuple(p)) for p in add]
    if len(pts) < cfg.dim + 1:
        raise ValueError("perturbed configuration needs at least d+1 points")
    if not remove and not add:
        return cfg
    label = f"{cfg.label}|remove{sorted(remove)}|add{len(add)}"
    out = Configuration(cfg.dim, tuple(pts), label)
    require_general_position(out)
    return Configuration(cfg.dim, out.points, label, verified=True)


def coprime(d, n):
    return gcd(d + 1, n) == 1
