"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis ``1, z, ..., z^(phi(n)-1)`` with
rational coefficients, reduced modulo the n-th cyclotomic polynomial, so two
elements of the same field are equal iff their coefficient tuples are equal.

Rationals are the field with conductor 1.  Everywhere else in the package a
*scalar* is either a :class:`fractions.Fraction` (fast path for rational data)
or a :class:`CycNumber`; mixed arithmetic works in both directions.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

__all__ = [
    "CycNumber",
    "Scalar",
    "cyclotomic_poly",
    "totient",
    "cyc_op",
    "cyc_is_root_of_unity",
    "as_scalar",
    "scalar_from_json",
    "scalar_to_json",
    "scalar_str",
    "conductor_of",
]


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # low-to-high coefficients, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        q = num[k + len(den) - 1]
        out[k] = q
        if q:
            for i, d in enumerate(den):
                num[k + i] -= q * d
    assert not any(num[: len(den) - 1]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds the reduction of x^k modulo Phi_n, for 0 <= k < n."""
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce the overflow coefficient
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return tuple(rows)


def _reduce(n: int, powers: dict[int, Fraction] | list) -> tuple[Fraction, ...]:
    table = _power_table(n)
    d = totient(n)
    out = [Fraction(0)] * d
    items = powers.items() if isinstance(powers, dict) else enumerate(powers)
    for k, c in items:
        if not c:
            continue
        row = table[k % n]
        for i, t in enumerate(row):
            if t:
                out[i] += c * t
    return tuple(out)


Scalar = Union[Fraction, "CycNumber"]


class CycNumber:
    """An element of Q(zeta_n) in canonical power-basis form.

    >>> z4 = CycNumber.zeta(4)
    >>> z4 * z4 == -1
    True
    """

    __slots__ = ("n", "c", "_hash")

    def __init__(self, n: int, coeffs=(0,)):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.n = n
        self.c = _reduce(n, [Fraction(x) for x in coeffs])
        self._hash = None

    @classmethod
    def _make(cls, n: int, c: tuple[Fraction, ...]) -> "CycNumber":
        obj = object.__new__(cls)
        obj.n = n
        obj.c = c
        obj._hash = None
        return obj

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycNumber":
        return cls._make(n, _reduce(n, {k % n: Fraction(1)}))

    @classmethod
    def rational(cls, q) -> "CycNumber":
        return cls._make(1, (Fraction(q),))

    # -- conversion -------------------------------------------------------
    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def lift(self, m: int) -> "CycNumber":
        """Re-express in Q(zeta_m); m must be a multiple of the conductor."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot lift conductor {self.n} to {m}")
        step = m // self.n
        return CycNumber._make(m, _reduce(m, {i * step: c for i, c in enumerate(self.c) if c}))

    def __complex__(self) -> complex:
        w = complex(math.cos(2 * math.pi / self.n), math.sin(2 * math.pi / self.n))
        return sum(float(c) * w**i for i, c in enumerate(self.c))

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, CycNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber._make(1, (Fraction(other),))
        return None

    def _common(self, other):
        o = self._coerce(other)
        if o is None:
            return None, None
        if o.n == self.n:
            return self, o
        m = self.n * o.n // math.gcd(self.n, o.n)
        return self.lift(m), o.lift(m)

    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return CycNumber._make(a.n, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber._make(self.n, tuple(-x for x in self.c))

    def __pos__(self):
        return self

    def __sub__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return CycNumber._make(a.n, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber._make(self.n, tuple(x * other for x in self.c))
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        if a.n == 1:
            return CycNumber._make(1, (a.c[0] * b.c[0],))
        n = a.n
        conv: dict[int, Fraction] = {}
        for i, x in enumerate(a.c):
            if not x:
                continue
            for j, y in enumerate(b.c):
                if y:
                    k = (i + j) % n
                    conv[k] = conv.get(k, 0) + x * y
        return CycNumber._make(n, _reduce(n, conv))

    __rmul__ = __mul__

    def galois(self, k: int) -> "CycNumber":
        """Apply the automorphism zeta -> zeta^k (k coprime to n)."""
        if math.gcd(k, self.n) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        return CycNumber._make(self.n, _reduce(self.n, {(i * k) % self.n: c for i, c in enumerate(self.c) if c}))

    def inverse(self) -> "CycNumber":
        if not self:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return CycNumber._make(self.n, _reduce(self.n, [1 / self.c[0]]))
        # a^-1 = (product of the other conjugates) / norm
        rest = CycNumber._make(self.n, _reduce(self.n, [1]))
        for k in range(2, self.n):
            if math.gcd(k, self.n) == 1:
                rest = rest * self.galois(k)
        norm = (self * rest).to_fraction()
        return rest * (1 / norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if o.n == 1:
            return self * o.c[0] ** -1
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber._make(self.n, _reduce(self.n, [1]))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a.c == b.c

    def minimal_polynomial(self) -> tuple[Fraction, ...]:
        """Monic minimal polynomial over Q, lowest degree first."""
        conj: list[CycNumber] = []
        for k in range(1, self.n + 1):
            if math.gcd(k, self.n) == 1:
                g = self.galois(k % self.n or self.n) if self.n > 1 else self
                if all(g.c != h.c for h in conj):
                    conj.append(g)
        poly = [CycNumber._make(self.n, _reduce(self.n, [1]))]
        for r in conj:
            # multiply poly by (x - r)
            new = [CycNumber._make(self.n, _reduce(self.n, [0]))] * (len(poly) + 1)
            for i, p in enumerate(poly):
                new[i + 1] = new[i + 1] + p
                new[i] = new[i] - p * r
            poly = new
        return tuple(p.to_fraction() for p in poly)

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.c[0])
            else:
                self._hash = hash(("cyc", self.minimal_polynomial()))
        return self._hash

    def __repr__(self):
        return f"CycNumber({self.n}, {[str(x) for x in self.c]})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.c):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            z = f"z{self.n}" if i == 1 else f"z{self.n}^{i}"
            if c == 1:
                terms.append(z)
            elif c == -1:
                terms.append("-" + z)
            else:
                terms.append(f"{c}*{z}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def cyc_op(a, b, kind: str):
    """Field operation ``kind`` in {"add", "mul", "div"} on two scalars."""
    a = CycNumber._coerce(a)
    b = CycNumber._coerce(b)
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def cyc_is_root_of_unity(a) -> Optional[int]:
    """Multiplicative order of ``a`` if it is a root of unity, else None."""
    a = CycNumber._coerce(a)
    if not a:
        return None
    # roots of unity in Q(zeta_n) have order dividing lcm(2, n)
    bound = a.n * 2 if a.n % 2 else a.n
    power = a
    for k in range(1, bound + 1):
        if power == 1:
            return k
        power = power * a
    return None


def as_scalar(x) -> Scalar:
    """Normalize to the package's scalar convention (Fraction when rational)."""
    if isinstance(x, CycNumber):
        return x.c[0] if x.is_rational() else x
    return Fraction(x)


def conductor_of(x) -> int:
    return x.n if isinstance(x, CycNumber) else 1


def scalar_to_json(x):
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return str(x)
    return {"n": x.n, "c": [str(c) for c in x.c]}


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, dict):
        n = int(obj["n"])
        return as_scalar(CycNumber(n, [Fraction(s) for s in obj["c"]]))
    if isinstance(obj, float):
        raise ValueError("floating-point scalars are not accepted; use 'p/q' strings")
    return Fraction(obj)


def scalar_str(x) -> str:
    return str(as_scalar(x))
