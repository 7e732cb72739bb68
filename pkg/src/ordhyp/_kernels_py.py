"""Pure-Python implementations of the hot kernels.

These mirror ``_kernels.pyx`` exactly (same signatures, same results) and are
used when the compiled extension is unavailable or when
``ORDHYP_PURE_PYTHON=1`` is set.
"""

import numpy as np

BACKEND = "python"


def poly_mulmod(a, b, red):
    """Multiply two length-phi coefficient vectors and reduce mod a monic poly.

    ``red[k]`` holds the reduction of ``x**(phi + k)``.
    """
    phi = len(a)
    prod = [0] * (2 * phi - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    return _reduce(prod, red, phi)


def poly_dot_mod(rows_a, rows_b, red):
    """Reduced sum of products ``sum_i rows_a[i] * rows_b[i]``."""
    phi = len(rows_a[0])
    prod = [0] * (2 * phi - 1)
    for a, b in zip(rows_a, rows_b):
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
    return _reduce(prod, red, phi)


def _reduce(prod, red, phi):
    out = prod[:phi]
    for k in range(phi, len(prod)):
        c = prod[k]
        if c:
            row = red[k - phi]
            for j in range(phi):
                r = row[j]
                if r:
                    out[j] += c * r
    return out


def count_histogram(add, mul):
    """Counts of ordered distinct tuples by value of the weighted sum.

    ``add`` is the n x n group table, ``mul[i][a]`` the element ``m_i * a``.
    Returns an int64 array ``h`` with ``h[c]`` = number of tuples of pairwise
    distinct elements whose weighted sum is ``c``.
    """
    add = [list(map(int, row)) for row in add]
    mul = [list(map(int, row)) for row in mul]
    n = len(add)
    k = len(mul)
    counts = [0] * n
    used = [False] * n
    last = mul[k - 1]

    def rec(pos, s):
        if pos == k - 1:
            row = add[s]
            for a in range(n):
                if not used[a]:
                    counts[row[last[a]]] += 1
            return
        row = add[s]
        mp = mul[pos]
        for a in range(n):
            if not used[a]:
                used[a] = True
                rec(pos + 1, row[mp[a]])
                used[a] = False

    rec(0, 0)
    return np.array(counts, dtype=np.int64)


def count_target(add, mul, sub, pre_start, pre_list, c):
    """Number of ordered distinct tuples with weighted sum equal to ``c``.

    The last coordinate is solved instead of scanned: the elements ``a`` with
    ``m_k * a == v`` are ``pre_list[pre_start[v]:pre_start[v + 1]]``.
    ``sub[x][y]`` is ``x - y`` in the group.
    """
    add = [list(map(int, row)) for row in add]
    mul = [list(map(int, row)) for row in mul]
    sub_c = [int(v) for v in sub[c]]
    pre_start = [int(v) for v in pre_start]
    pre_list = [int(v) for v in pre_list]
    n = len(add)
    k = len(mul)
    used = [False] * n
    total = 0

    def rec(pos, s):
        nonlocal total
        if pos == k - 1:
            v = sub_c[s]
            for idx in range(pre_start[v], pre_start[v + 1]):
                if not used[pre_list[idx]]:
                    total += 1
            return
        row = add[s]
        mp = mul[pos]
        for a in range(n):
            if not used[a]:
                used[a] = True
                rec(pos + 1, row[mp[a]])
                used[a] = False

    rec(0, 0)
    return total
