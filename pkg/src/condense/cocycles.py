"""Coboundary search for root-of-unity valued 3-cocycles on cyclic groups.

A 3-cochain on Z/d is given by integer exponents ``r[(a, b, c)]`` modulo N,
meaning the value ``zeta_N^r``.  We look for a normalized 2-cochain psi
(exponents mod M, N | M) with

    psi(b, c) - psi(a+b, c) + psi(a, b+c) - psi(a, b) = r(a, b, c)   (mod M)

Two independent routes: exhaustive enumeration of bounded-order cochains and
an exact linear solve over Z/M (prime-power elimination glued by CRT).
"""
from __future__ import annotations

import itertools
import math
from typing import Optional

__all__ = [
    "coboundary_exponents",
    "find_coboundary_brute",
    "find_coboundary_linear",
    "solve_mod",
    "factorize",
]


def factorize(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def coboundary_exponents(d: int, psi: dict, M: int) -> dict:
    """Exponents of delta(psi) on Z/d, reduced mod M."""
    out = {}
    for a, b, c in itertools.product(range(d), repeat=3):
        v = psi.get((b, c), 0) - psi.get(((a + b) % d, c), 0) + psi.get((a, (b + c) % d), 0) - psi.get((a, b), 0)
        out[(a, b, c)] = v % M
    return out


def _free_pairs(d: int) -> list:
    return [(a, b) for a in range(1, d) for b in range(1, d)]


def find_coboundary_brute(d: int, r: dict, N: int, M: Optional[int] = None, limit: int = 2_000_000) -> Optional[dict]:
    """Exhaustive search over normalized psi with values in mu_M (default M = N).

    ``r`` holds exponents modulo N.  Returns psi (exponents mod M) or None.
    Raises ValueError if the search space exceeds ``limit``.
    """
    M = M or N
    if M % N:
        raise ValueError("M must be a multiple of N")
    pairs = _free_pairs(d)
    if M ** len(pairs) > limit:
        raise ValueError(f"search space {M}^{len(pairs)} exceeds the limit {limit}")
    scale = M // N
    target = {k: (v * scale) % M for k, v in r.items()}
    for values in itertools.product(range(M), repeat=len(pairs)):
        psi = dict(zip(pairs, values))
        if coboundary_exponents(d, psi, M) == {k: target.get(k, 0) for k in itertools.product(range(d), repeat=3)}:
            return psi
    return None


def _solve_prime_power(rows: list, rhs: list, nvars: int, p: int, k: int) -> Optional[list]:
    """Solve A x = b over Z/p^k by full-pivoting elimination on valuations."""
    q = p**k
    A = [[x % q for x in row] for row in rows]
    b = [x % q for x in rhs]

    def val(x: int) -> int:
        if x % q == 0:
            return k
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    cols = list(range(nvars))
    pivots = []  # (row, col, valuation)
    r0 = 0
    nrows = len(A)
    while r0 < nrows:
        best = None
        for i in range(r0, nrows):
            for j in cols:
                v = val(A[i][j])
                if v < k and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        A[r0], A[i] = A[i], A[r0]
        b[r0], b[i] = b[i], b[r0]
        piv = A[r0][j]
        unit_inv = pow(piv // p**v, -1, q)
        for i2 in range(r0 + 1, nrows):
            a = A[i2][j]
            if a:
                fac = (a // p**v) * unit_inv % q
                A[i2] = [(x - fac * y) % q for x, y in zip(A[i2], A[r0])]
                b[i2] = (b[i2] - fac * b[r0]) % q
        pivots.append((r0, j, v))
        cols.remove(j)
        r0 += 1
    for i in range(r0, nrows):
        if b[i] % q:
            return None
    x = [0] * nvars
    for r, j, v in reversed(pivots):
        rest = (b[r] - sum(A[r][c] * x[c] for c in range(nvars) if c != j)) % q
        if rest % p**v:
            return None
        unit = A[r][j] // p**v
        x[j] = (rest // p**v) * pow(unit, -1, q) % (p ** (k - v))
    return x


def solve_mod(rows: list, rhs: list, nvars: int, M: int) -> Optional[list]:
    """One integer solution of A x = b (mod M), or None."""
    if M == 1:
        return [0] * nvars
    parts = []
    for p, k in sorted(factorize(M).items()):
        x = _solve_prime_power(rows, rhs, nvars, p, k)
        if x is None:
            return None
        parts.append((p**k, x))
    out = []
    for j in range(nvars):
        # CRT
        val, mod = 0, 1
        for q, x in parts:
            t = ((x[j] - val) * pow(mod, -1, q)) % q
            val += mod * t
            mod *= q
        out.append(val % M)
    return out


def default_modulus(d: int, N: int, max_order: int = 8) -> int:
    """A cochain value group large enough for the search: lcm(N d, 1..max_order)."""
    M = N * d
    for k in range(1, max_order + 1):
        M = M * k // math.gcd(M, k)
    return M


def find_coboundary_linear(d: int, r: dict, N: int, M: Optional[int] = None) -> Optional[dict]:
    """Exact solve over Z/M for a normalized psi with delta(psi) = r."""
    M = M or default_modulus(d, N)
    if M % N:
        raise ValueError("M must be a multiple of N")
    pairs = _free_pairs(d)
    idx = {pq: i for i, pq in enumerate(pairs)}
    rows, rhs = [], []
    scale = M // N
    for a, b, c in itertools.product(range(d), repeat=3):
        row = [0] * len(pairs)
        for key, sign in (((b, c), 1), (((a + b) % d, c), -1), ((a, (b + c) % d), 1), ((a, b), -1)):
            if key in idx:
                row[idx[key]] += sign
        rows.append(row)
        rhs.append(r.get((a, b, c), 0) * scale)
    x = solve_mod(rows, rhs, len(pairs), M)
    if x is None:
        return None
    return {pq: x[i] for pq, i in idx.items()}
