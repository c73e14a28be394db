"""Root finding for polynomials over Q(zeta_N) via sympy factorization."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import sympy

from .cycfield import CycNumber, as_scalar, conductor_of

__all__ = ["common_conductor", "linear_roots", "NonSplit"]


class NonSplit(ArithmeticError):
    """A polynomial has an irreducible factor of degree > 1 over the working field."""


def common_conductor(values: Sequence) -> int:
    n = 1
    for v in values:
        c = conductor_of(v)
        n = n * c // math.gcd(n, c)
    return n


@lru_cache(maxsize=None)
def _field(N: int):
    if N <= 2:
        return sympy.QQ, None
    K = sympy.QQ.algebraic_field(sympy.exp(2 * sympy.pi * sympy.I / N))
    return K, K.from_sympy(sympy.exp(2 * sympy.pi * sympy.I / N))


def _to_field(x, N: int):
    K, z = _field(N)
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return K.convert(sympy.Rational(x.numerator, x.denominator))
    x = x.lift(N)
    acc = K.zero
    for i, c in enumerate(x.c):
        if c:
            acc += K.convert(sympy.Rational(c.numerator, c.denominator)) * z**i
    return acc


def _from_field(a, N: int):
    K, _ = _field(N)
    if K is sympy.QQ:
        return Fraction(int(a.numerator), int(a.denominator))
    coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in a.to_list()][::-1]
    return as_scalar(CycNumber(N, coeffs or [0]))


def linear_roots(coeffs: Sequence, N: Optional[int] = None) -> list:
    """Roots (with multiplicity) of the polynomial with coefficients ``coeffs``
    (lowest degree first) over Q(zeta_N).  Raises NonSplit if some
    irreducible factor has degree > 1."""
    N = N or common_conductor(coeffs)
    K, _ = _field(N)
    x = sympy.Symbol("x")
    poly = sympy.Poly([_to_field(c, N) for c in reversed(list(coeffs))], x, domain=K)
    _, factors = poly.factor_list()
    roots = []
    for fac, mult in factors:
        if fac.degree() > 1:
            raise NonSplit(f"irreducible factor of degree {fac.degree()} over Q(zeta_{N})")
        if fac.degree() == 1:
            a, b = fac.rep.to_list()
            roots.extend([_from_field(K.quo(-b, a) if K is not sympy.QQ else -b / a, N)] * mult)
    return roots
