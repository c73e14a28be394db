"""Hom-level computations in the 2-category of condensation monads in C.

Objects are condensation monads (separable algebras) in a multifusion
category C; 1-morphisms A -> B are (B, A)-bimodules.  Each Hom-category is
semisimple and generated by the free bimodules B ⊗ v ⊗ A, so its simple
objects are counted by the center of End(⊕_v B ⊗ v ⊗ A), once that center is
shown to split over the working field.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import cocycles
from .condensation import (
    Bimodule,
    CondensationMonad,
    bimodule_hom,
    check_condensation_monad,
    free_bimodule,
    identity_bimodule,
    relative_tensor,
    tens,
    idw,
)
from .cycfield import CycNumber, as_scalar
from .fusion import FusionCategory, FusionRing
from .linalg import ONE, ZERO, Echelon, krylov_minpoly
from .skeletal import SkMorphism
from .splitfield import NonSplit, common_conductor, linear_roots
from .ssvec import split_blocks

__all__ = [
    "ModCPresentation",
    "HomCategoryReport",
    "ModuleCategoryClass",
    "EndomorphismAlgebra",
    "is_simple_object",
    "hom_category_report",
    "is_connected",
    "is_generator",
    "generator_endomorphism",
    "enumerate_module_categories_cyclic",
    "bimodule_image",
]


@dataclass(eq=False)
class ModCPresentation:
    fc: FusionCategory
    algebras: dict  # name -> CondensationMonad

    def __post_init__(self):
        for name, m in self.algebras.items():
            if m.fc is not self.fc:
                raise ValueError(f"algebra {name!r} lives over a different category")
            rep = check_condensation_monad(m)
            if not rep.ok:
                raise ValueError(f"algebra {name!r} is not a condensation monad: {rep.failure}")

    def __getitem__(self, name) -> CondensationMonad:
        if name not in self.algebras:
            raise KeyError(f"unknown object {name!r}")
        return self.algebras[name]

    @property
    def names(self) -> list:
        return list(self.algebras)


def is_simple_object(P: ModCPresentation, name) -> bool:
    I = identity_bimodule(P[name])
    return len(bimodule_hom(I, I)) == 1


# -- endomorphism algebras ---------------------------------------------------------


class EndomorphismAlgebra:
    """End(⊕_k X_k) for bimodules X_k over one pair of monads.

    Basis elements are (j, k, n): the n-th solution of bimodule_hom(X_k, X_j).
    Coordinates of a map X_k -> X_j in that basis are its values at the free
    coordinates returned by the solver.
    """

    def __init__(self, objs: Sequence[Bimodule]):
        self.objs = list(objs)
        self.homs = {}
        self.free = {}
        for j, k in itertools.product(range(len(self.objs)), repeat=2):
            sols, free = bimodule_hom(self.objs[k], self.objs[j], with_free=True)
            self.homs[(j, k)] = sols
            self.free[(j, k)] = free
        self.basis = [(j, k, n) for (j, k), sols in sorted(self.homs.items()) for n in range(len(sols))]
        self.index = {b: i for i, b in enumerate(self.basis)}
        self._mul: dict = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords_of(self, j: int, k: int, t: SkMorphism) -> dict:
        """Coordinates (in this algebra's basis) of a bimodule map X_k -> X_j."""
        c = t.coords()
        out = {}
        for n, col in enumerate(self.free[(j, k)]):
            v = c.get(col)
            if v:
                out[self.index[(j, k, n)]] = v
        return out

    def element(self, v: dict) -> dict:
        """Group coordinates by block: {(j, k): SkMorphism}."""
        out = {}
        for i, c in v.items():
            j, k, n = self.basis[i]
            term = self.homs[(j, k)][n].scale(c)
            out[(j, k)] = out[(j, k)] + term if (j, k) in out else term
        return out

    def mul_basis(self, a: int, b: int) -> dict:
        """basis[a] ∘ basis[b]."""
        key = (a, b)
        if key not in self._mul:
            j, k, n = self.basis[a]
            k2, l, m = self.basis[b]
            if k != k2:
                self._mul[key] = {}
            else:
                self._mul[key] = self.coords_of(j, l, self.homs[(j, k)][n] @ self.homs[(k, l)][m])
        return self._mul[key]

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, ca in x.items():
            ja, ka, _ = self.basis[a]
            for b, cb in y.items():
                if self.basis[b][0] != ka:
                    continue
                for i, v in self.mul_basis(a, b).items():
                    w = out.get(i, ZERO) + ca * cb * v
                    if w:
                        out[i] = w
                    else:
                        out.pop(i, None)
        return out

    def unit(self) -> dict:
        out = {}
        for k, X in enumerate(self.objs):
            out.update(self.coords_of(k, k, idw(X.fc, X.b)))
        return out

    def center(self) -> list[dict]:
        """Basis of the center (central elements are block diagonal)."""
        diag = [i for i, (j, k, _) in enumerate(self.basis) if j == k]
        rows: dict = {}
        for col, i in enumerate(diag):
            for b in range(self.dim):
                lhs = self.mul({i: ONE}, {b: ONE})
                rhs = self.mul({b: ONE}, {i: ONE})
                for r in set(lhs) | set(rhs):
                    v = lhs.get(r, ZERO) - rhs.get(r, ZERO)
                    if v:
                        rows.setdefault((b, r), {})[col] = v
        ech = Echelon(len(diag))
        for r in rows.values():
            ech.add(r)
        return [{diag[c]: v for c, v in vec.items()} for vec in ech.nullspace()]


def _primitive_idempotents(
    E: EndomorphismAlgebra, Z: list[dict], conductor: int = 1, seed: int = 0, tries: int = 8
) -> list[dict]:
    """Split the center into primitive orthogonal idempotents over the
    working field Q(zeta_conductor) (enlarged to hold the data); raises
    NonSplit if that needs a field extension."""
    if not Z:
        return []
    rng = random.Random(seed)
    unit = E.unit()
    dimZ = len(Z)
    for attempt in range(tries):
        span = 3 + 4 * attempt
        coeffs = [Fraction(rng.randint(-span, span)) for _ in Z]
        z: dict = {}
        for c, vec in zip(coeffs, Z):
            for i, v in vec.items():
                w = z.get(i, ZERO) + c * v
                if w:
                    z[i] = w
                else:
                    z.pop(i, None)
        poly = krylov_minpoly(lambda v: E.mul(z, v), unit, E.dim)
        N = common_conductor(list(poly) + [as_scalar(CycNumber.zeta(conductor))] if conductor > 1 else poly)
        roots = linear_roots(poly, N)
        if len(set(roots)) < len(roots):
            raise ArithmeticError("central element is not semisimple")
        if len(roots) < dimZ:
            continue
        idems = []
        for lam in roots:
            e = dict(unit)
            for mu_ in roots:
                if mu_ == lam:
                    continue
                zm = dict(z)
                for i, v in unit.items():
                    w = zm.get(i, ZERO) - mu_ * v
                    if w:
                        zm[i] = w
                    else:
                        zm.pop(i, None)
                e = E.mul(zm, e)
                inv = ONE / (lam - mu_)
                e = {i: v * inv for i, v in e.items()}
            if E.mul(e, e) != e:
                raise ArithmeticError("spectral projector is not idempotent")
            idems.append(e)
        total: dict = {}
        for e in idems:
            for i, v in e.items():
                w = total.get(i, ZERO) + v
                if w:
                    total[i] = w
                else:
                    total.pop(i, None)
        if total != unit:
            raise ArithmeticError("spectral projectors do not sum to the unit")
        return idems
    raise ArithmeticError("no generic central element found")


@dataclass
class HomCategoryReport:
    pair: tuple  # (A, B): 1-morphisms A -> B, i.e. (B, A)-bimodules
    free_generators: list  # simple labels v with B ⊗ v ⊗ A nonzero
    endo_dim: int
    center_dim: int
    simple_count: Optional[int]
    note: str = ""
    algebra: Optional[EndomorphismAlgebra] = field(default=None, repr=False)
    idempotents: Optional[list] = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "free_generators": list(self.free_generators),
            "endo_dim": self.endo_dim,
            "center_dim": self.center_dim,
            "simple_count": self.simple_count,
            "note": self.note,
        }


def _free_generators(P: ModCPresentation, A, B) -> list:
    mA, mB = P[A], P[B]
    fc = P.fc
    out = []
    for v in range(fc.ring.rank):
        F = free_bimodule(mB, fc.signature.simple(v), mA)
        if not F.b.is_zero():
            out.append((fc.labels[v], F))
    return out


def hom_category_report(P: ModCPresentation, A, B, seed: int = 0, conductor: Optional[int] = None) -> HomCategoryReport:
    """Simple 1-morphisms A -> B.  The working field is Q(zeta_c) with c the
    category's declared conductor unless ``conductor`` overrides it."""
    gens = _free_generators(P, A, B)
    if not gens:
        return HomCategoryReport((A, B), [], 0, 0, 0)
    E = EndomorphismAlgebra([F for _, F in gens])
    Z = E.center()
    labels = [l for l, _ in gens]
    try:
        idems = _primitive_idempotents(E, Z, P.fc.conductor if conductor is None else conductor, seed)
    except NonSplit as exc:
        return HomCategoryReport((A, B), labels, E.dim, len(Z), None, f"requires field extension ({exc})", E)
    return HomCategoryReport((A, B), labels, E.dim, len(Z), len(idems), "", E, idems)


def hom_category_nonzero(P: ModCPresentation, A, B) -> bool:
    return bool(_free_generators(P, A, B))


def is_connected(P: ModCPresentation) -> tuple[bool, list[list[int]]]:
    """All pairwise Hom-categories nonzero; returns the indicator matrix
    (entry [i][j] for 1-morphisms A_j -> A_i)."""
    for name in P.names:
        if not is_simple_object(P, name):
            raise ValueError(f"object {name!r} is not simple")
    names = P.names
    mat = [[int(hom_category_nonzero(P, a, b)) for a in names] for b in names]
    return all(all(r) for r in mat), mat


def is_generator(P: ModCPresentation, subset: Sequence) -> tuple[bool, str]:
    subset = list(subset)
    if not subset:
        return False, "empty subset generates nothing"
    for x in P.names:
        if not any(hom_category_nonzero(P, s, x) for s in subset):
            return False, f"no member of the subset maps nontrivially to {x!r}"
    return True, ""


# -- End(⊞ A_i) -----------------------------------------------------------------


def bimodule_image(X: Bimodule, e: SkMorphism) -> tuple[Bimodule, SkMorphism, SkMorphism]:
    """The bimodule cut out of X by an idempotent bimodule endomorphism e."""
    fc = X.fc
    ranks, fs, gs = split_blocks(e.blocks)
    S = fc.signature.obj(tuple(ranks.get(s, 0) for s in range(fc.ring.rank)))
    f = SkMorphism.from_coords(fc, (X.b,), (S,), SkMorphism(fc, (X.b,), (S,), fs).coords())
    g = SkMorphism.from_coords(fc, (S,), (X.b,), SkMorphism(fc, (S,), (X.b,), gs).coords())
    i1, i2 = X.right.id, X.left.id
    out = Bimodule(
        X.left,
        X.right,
        S,
        f @ X.nu_r @ tens(g, i1),
        tens(f, i1) @ X.beta_r @ g,
        f @ X.nu_l @ tens(i2, g),
        tens(i2, f) @ X.beta_l @ g,
    )
    return out, f, g


@dataclass
class GeneratorEndomorphism:
    names: list
    counts: list  # counts[i][j] = simple 1-morphisms A_j -> A_i
    connected: bool
    ring: Optional[FusionRing] = None
    simples: Optional[dict] = None  # label -> Bimodule
    note: str = ""


def _simple_bimodules(rep: HomCategoryReport) -> Optional[list]:
    """One simple bimodule per primitive central idempotent, found inside a
    free generator where it has multiplicity one; None if none qualifies."""
    E = rep.algebra
    out = []
    for c in rep.idempotents:
        blocks = E.element(c)
        found = None
        for k, X in enumerate(E.objs):
            t = blocks.get((k, k))
            if t is None or t.is_zero():
                continue
            sub = [i for i, (j, kk, _) in enumerate(E.basis) if j == k and kk == k]
            # dim of c End(X_k) c = (multiplicity)^2
            ech = Echelon(E.dim)
            ck = E.coords_of(k, k, t)
            for i in sub:
                v = E.mul(ck, E.mul({i: ONE}, ck))
                if v:
                    ech.add(v)
            if ech.rank == 1:
                found = bimodule_image(X, t)[0]
                break
        if found is None:
            return None
        out.append(found)
    return out


def generator_endomorphism(
    P: ModCPresentation, ring: bool = False, seed: int = 0, conductor: Optional[int] = None
) -> GeneratorEndomorphism:
    names = P.names
    reports = {(a, b): hom_category_report(P, a, b, seed, conductor) for a in names for b in names}
    counts = [[reports[(a, b)].simple_count for a in names] for b in names]
    if any(c is None for row in counts for c in row):
        return GeneratorEndomorphism(names, counts, False, note="requires field extension")
    connected = all(all(row) for row in counts)
    out = GeneratorEndomorphism(names, counts, connected)
    if not ring:
        return out
    simples = {}
    for a, b in itertools.product(names, repeat=2):
        rep = reports[(a, b)]
        if rep.simple_count == 0:
            continue
        sb = _simple_bimodules(rep)
        if sb is None:
            out.note = "simple bimodules not isolated; counts only"
            return out
        for k, S in enumerate(sb):
            simples[f"{b}<-{a}:{k}"] = ((a, b), S)
    out.ring = _fusion_ring_of(P, simples)
    out.simples = {k: v[1] for k, v in simples.items()}
    return out


def _fusion_ring_of(P: ModCPresentation, simples: dict) -> FusionRing:
    labels = list(simples)
    N: dict = {}
    unit = []
    for x, ((a, b), S) in simples.items():
        if a == b:
            I = identity_bimodule(P[a])
            if bimodule_hom(S, I):
                unit.append(labels.index(x))
    for x, y in itertools.product(labels, repeat=2):
        (a1, b1), S1 = simples[x]
        (a2, b2), S2 = simples[y]
        if b2 != a1:
            continue
        # x ⊗ y means "first y, then x": S1 ⊗_{A_{a1}} S2
        T = relative_tensor(S1, S2).bimodule
        for z, ((a3, b3), S3) in simples.items():
            if (a3, b3) != (a2, b1):
                continue
            m = len(bimodule_hom(S3, T))
            if m:
                N.setdefault((labels.index(x), labels.index(y)), {})[labels.index(z)] = m
    dual = []
    for i, x in enumerate(labels):
        hits = [j for j in range(len(labels)) if any(u in N.get((i, j), {}) for u in unit)]
        dual.append(hits[0] if hits else i)
    return FusionRing(tuple(labels), tuple(unit), N, tuple(dual))


# -- classification over pointed cyclic categories --------------------------------


@dataclass
class ModuleCategoryClass:
    n: int
    q: int
    H: tuple  # subgroup elements of Z/n
    psi: dict  # exponents (mod M) of a normalized 2-cochain trivializing omega on H
    M: int
    method: str

    @property
    def order(self) -> int:
        return len(self.H)

    def __str__(self):
        d = len(self.H)
        name = "0" if d == 1 else f"Z/{d}"
        return f"(H={name}, psi=triv)"


def restricted_cocycle(n: int, q: int, d: int) -> dict:
    """Exponents mod n of omega_q restricted to H = <n/d>, indexed by Z/d."""
    g = n // d
    return {(a, b, c): (q * (g * a) * ((g * b + g * c) // n)) % n for a, b, c in itertools.product(range(d), repeat=3)}


def brute_modulus(n: int, d: int, max_order: int = 8, limit: int = 200_000) -> Optional[int]:
    """Largest lcm(n, 1..k), k <= max_order, keeping the brute-force search within limit."""
    free = (d - 1) ** 2
    best = None
    M = n
    for k in range(1, max_order + 1):
        M = M * k // math.gcd(M, k)
        if M**free <= limit:
            best = M
    if best is None and n**free <= limit:
        best = n
    return best


def enumerate_module_categories_cyclic(n: int, q: int, use_brute: bool = True) -> list[ModuleCategoryClass]:
    """One class per subgroup H of Z/n on which omega_q is a coboundary.

    Triviality is decided by an exact solve over Z/M; when the cochain space
    is small enough it is cross-checked by exhaustive enumeration of cochains
    with values of order at most 8 (times n), and disagreement is an error.
    """
    if n < 1:
        raise ValueError("group order must be positive")
    out = []
    for d in range(1, n + 1):
        if n % d:
            continue
        r = restricted_cocycle(n, q, d)
        M = cocycles.default_modulus(d, n)
        lin = cocycles.find_coboundary_linear(d, r, n, M)
        method = "linear"
        if use_brute:
            Mb = brute_modulus(n, d)
            if Mb is not None:
                brute = cocycles.find_coboundary_brute(d, r, n, Mb, limit=10**6)
                if (brute is None) != (lin is None):
                    raise ArithmeticError(f"coboundary searches disagree on H=Z/{d}")
                method = "linear+brute"
        if lin is not None:
            out.append(ModuleCategoryClass(n, q, tuple((n // d) * i for i in range(d)), lin, M, method))
    return out
