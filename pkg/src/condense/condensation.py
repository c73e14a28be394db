"""Condensation monads, condensations, bimodules and relative tensor products
in the one-object 2-category whose 1-morphisms are the objects of a
multifusion category C.

Monads and bimodules carry an SSObject as underlying 1-morphism; structure
maps are SkMorphisms between words such as ``(e, e) -> (e,)``.  Whiskering a
2-morphism by identities is the tensor product with identity morphisms.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import cocycles
from .cycfield import CycNumber, as_scalar
from .fusion import FusionCategory
from .linalg import ONE, SpMat
from .report import CheckReport
from .skeletal import SkMorphism, Tree, calculus, flatten_iso, solve_affine, solve_subspace, tensor
from .ssvec import SSObject, comparison_blocks, split_blocks

__all__ = [
    "CondensationMonad",
    "Condensation2",
    "SplittingWitness",
    "Bimodule",
    "RelativeTensor",
    "GroupAlgebraObstruction",
    "check_condensation_monad",
    "check_bimodule",
    "bimodule_hom",
    "is_bimodule_map",
    "relative_tensor",
    "relative_tensor_idempotent",
    "induced_monad",
    "retract_condensation",
    "rank_condensation",
    "conjugate_monad",
    "check_splitting_extension",
    "canonical_witness",
    "build_group_algebra",
    "trivial_monad",
    "unit_summand_monad",
    "unit_copies_monad",
    "identity_bimodule",
    "regular_bimodule",
    "free_bimodule",
    "transport_bimodule",
    "left_unitor",
    "right_unitor",
    "left_unit_comparison",
    "right_unit_comparison",
    "associativity_comparison",
]


def idw(fc, *objs) -> SkMorphism:
    return SkMorphism.identity(fc, tuple(objs))


def tens(*ms: SkMorphism) -> SkMorphism:
    out = ms[0]
    for m in ms[1:]:
        out = tensor(out, m)
    return out


def _check_shape(m: SkMorphism, src: tuple, tgt: tuple, what: str) -> None:
    if m.source != src or m.target != tgt:
        raise ValueError(f"{what} has the wrong shape")


# -- monads -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CondensationMonad:
    """Non-unital special Frobenius algebra (e, mu, delta) in C."""

    fc: FusionCategory
    e: SSObject
    mu: SkMorphism  # (e, e) -> (e,)
    delta: SkMorphism  # (e,) -> (e, e)
    name: str = ""

    def __post_init__(self):
        e = self.e
        _check_shape(self.mu, (e, e), (e,), "mu")
        _check_shape(self.delta, (e,), (e, e), "delta")

    @property
    def id(self) -> SkMorphism:
        return idw(self.fc, self.e)


def same_monad(a: CondensationMonad, b: CondensationMonad) -> bool:
    return a is b or (a.fc is b.fc and a.e == b.e and a.mu == b.mu and a.delta == b.delta)


def check_condensation_monad(m: CondensationMonad) -> CheckReport:
    """Associativity, coassociativity, Frobenius and specialness, all exact.

    ``details["failed"]`` lists every failing axiom; ``failure`` is the first.
    """
    rep = CheckReport("condensation-monad")
    mu, de, i = m.mu, m.delta, m.id
    checks = [
        ("associativity", [(mu @ tens(mu, i), mu @ tens(i, mu))]),
        ("coassociativity", [(tens(de, i) @ de, tens(i, de) @ de)]),
        ("frobenius", [(tens(i, mu) @ tens(de, i), de @ mu), (de @ mu, tens(mu, i) @ tens(i, de))]),
        ("specialness", [(mu @ de, i)]),
    ]
    failed = []
    for name, eqs in checks:
        for lhs, rhs in eqs:
            rep.checked += 1
            if lhs != rhs:
                failed.append(name)
                rep.fail(name)
                break
    rep.details["failed"] = failed
    return rep


def _tree(choices, inter) -> Tree:
    return Tree(tuple(choices), tuple(inter))


def trivial_monad(fc: FusionCategory) -> CondensationMonad:
    """The monoidal unit with the unitors as multiplication and comultiplication."""
    sig = fc.signature
    e = sig.obj(tuple(int(i in fc.ring.unit) for i in range(len(sig))))
    return _diagonal_monad(fc, e, name="1")


def unit_summand_monad(fc: FusionCategory, i: int) -> CondensationMonad:
    u = fc.ring.unit[i]
    return _diagonal_monad(fc, fc.signature.simple(u), name=f"1_{fc.labels[u]}")


def unit_copies_monad(fc: FusionCategory, k: int, unit: Optional[int] = None) -> CondensationMonad:
    """1 ⊕ ... ⊕ 1 (k copies of one unit summand) with componentwise structure."""
    u = fc.ring.unit[0] if unit is None else unit
    mult = [0] * fc.ring.rank
    mult[u] = k
    return _diagonal_monad(fc, fc.signature.obj(tuple(mult)), name="+".join(["1"] * k))


def _diagonal_monad(fc, e: SSObject, name: str) -> CondensationMonad:
    """mu(x_c ⊗ x_c) = x_c on copies of unit summands (e must be a sum of those)."""
    units = set(fc.ring.unit)
    if any(m and l not in units for l, m in enumerate(e.mult)):
        raise ValueError("diagonal monads live on sums of unit summands")
    mu_ent, de_ent = {}, {}
    for l, m in enumerate(e.mult):
        for c in range(m):
            one = _tree([(l, c)], [l])
            two = _tree([(l, c), (l, c)], [l, l])
            mu_ent[(one, two)] = ONE
            de_ent[(two, one)] = ONE
    mu = SkMorphism.from_trees(fc, (e, e), (e,), mu_ent)
    de = SkMorphism.from_trees(fc, (e,), (e, e), de_ent)
    return CondensationMonad(fc, e, mu, de, name)


# -- group algebras -----------------------------------------------------------


@dataclass
class GroupAlgebraObstruction:
    """The twisted associativity equations for mu have no invertible solution."""

    H: tuple
    cocycle_exponents: dict  # (i, j, k) -> exponent of zeta_N
    N: int
    report: CheckReport


def subgroup_elements(n: int, d: int) -> tuple:
    if n % d:
        raise ValueError(f"{d} does not divide {n}")
    g = n // d
    return tuple(g * i for i in range(d))


def _root_exponent(x, N: int) -> int:
    for k in range(N):
        if x == (as_scalar(CycNumber.zeta(N, k)) if k else 1):
            return k
    raise ArithmeticError(f"{x} is not an N-th root of unity (N={N})")


def _group_mu(fc, e, H, coeff) -> SkMorphism:
    n = fc.ring.rank
    ent = {}
    for a, b in itertools.product(H, repeat=2):
        s = (a + b) % n
        ent[(_tree([(s, 0)], [s]), _tree([(a, 0), (b, 0)], [a, s]))] = coeff(a, b)
    return SkMorphism.from_trees(fc, (e, e), (e,), ent)


def _group_delta(fc, e, H, coeff) -> SkMorphism:
    n = fc.ring.rank
    ent = {}
    scale = Fraction(1, len(H))
    for a, b in itertools.product(H, repeat=2):
        s = (a + b) % n
        ent[(_tree([(a, 0), (b, 0)], [a, s]), _tree([(s, 0)], [s]))] = scale / coeff(a, b)
    return SkMorphism.from_trees(fc, (e,), (e, e), ent)


def associativity_defect(fc: FusionCategory, H: Sequence[int]) -> tuple[dict, int]:
    """Exponents r (mod N) of the cocycle that twisted associativity must
    trivialize, read off the tree calculus with all structure constants 1.

    A normalized psi with delta(psi) = r gives an associative mu with
    coefficients zeta_M^psi.
    """
    e = _group_object(fc, H)
    mu = _group_mu(fc, e, H, lambda a, b: ONE)
    i = idw(fc, e)
    L = (mu @ tens(mu, i)).tree_entries()
    R = (mu @ tens(i, mu)).tree_entries()
    n = fc.ring.rank
    N = 2 * n if n % 2 else n
    idx = {h: k for k, h in enumerate(H)}
    r = {}
    for (T, S), lv in L.items():
        rv = R[(T, S)]
        a, b, c = (l for l, _ in S.choices)
        # c(a,b) c(a+b,c) lv = c(b,c) c(a,b+c) rv
        r[(idx[a], idx[b], idx[c])] = (-_root_exponent(rv / lv, N)) % N
    return r, N


def _group_object(fc, H) -> SSObject:
    mult = [0] * fc.ring.rank
    for h in H:
        mult[h] = 1
    return fc.signature.obj(tuple(mult))


def build_group_algebra(
    fc: FusionCategory, H: Union[int, Sequence[int]], psi: Optional[dict] = None
) -> Union[CondensationMonad, GroupAlgebraObstruction]:
    """Twisted group algebra ⊕_{h in H} k_h in a pointed category over Z/n.

    ``H`` is a subgroup order d (giving <n/d>) or an explicit element list in
    generator order.  ``psi`` maps index pairs (i, j) to nonzero scalars;
    when omitted it is found by an exact coboundary solve.
    """
    n = fc.ring.rank
    H = subgroup_elements(n, H) if isinstance(H, int) else tuple(H)
    e = _group_object(fc, H)
    d = len(H)
    idx = {h: k for k, h in enumerate(H)}
    if psi is None:
        r, N = associativity_defect(fc, H)
        M = cocycles.default_modulus(d, N)
        sol = cocycles.find_coboundary_linear(d, r, N, M)
        if sol is None:
            rep = CheckReport("group-algebra").fail(
                f"omega restricted to H={list(H)} is not a coboundary: twisted associativity has no solution"
            )
            return GroupAlgebraObstruction(H, r, N, rep)
        vals = {k: (as_scalar(CycNumber.zeta(M, v)) if v % M else ONE) for k, v in sol.items()}
        psi = {(i, j): vals.get((i, j), ONE) for i in range(d) for j in range(d)}
    coeff = lambda a, b: as_scalar(psi[(idx[a], idx[b])])
    m = CondensationMonad(fc, e, _group_mu(fc, e, H, coeff), _group_delta(fc, e, H, coeff), name=f"k[H{d}]")
    rep = check_condensation_monad(m)
    if not rep.ok:
        return GroupAlgebraObstruction(H, {}, 1, rep)
    return m


# -- condensations and splittings ----------------------------------------------


@dataclass(frozen=True, eq=False)
class Condensation2:
    """f, g with phi: f ⊗ g -> 1 and gamma: 1 -> f ⊗ g, phi ∘ gamma = id_1."""

    fc: FusionCategory
    f: SSObject
    g: SSObject
    phi: SkMorphism
    gamma: SkMorphism

    def __post_init__(self):
        _check_shape(self.phi, (self.f, self.g), (), "phi")
        _check_shape(self.gamma, (), (self.f, self.g), "gamma")

    def check(self) -> CheckReport:
        rep = CheckReport("condensation")
        rep.checked = 1
        if self.phi @ self.gamma != idw(self.fc):
            rep.fail("phi ∘ gamma != id_1")
        return rep


@dataclass(frozen=True, eq=False)
class SplittingWitness:
    cond: Condensation2
    theta: SkMorphism  # (g, f) -> (e,)


def retract_condensation(fc: FusionCategory, f: SSObject, g: SSObject, phi: Optional[SkMorphism] = None) -> Condensation2:
    """Condensation with the given f and g.  phi defaults to the sum of all
    basis trees (f, g) -> (); gamma is the first exact solution of
    phi ∘ gamma = id_1."""
    if phi is None:
        phi = SkMorphism.zero(fc, (f, g), ())
        for t in SkMorphism.basis(fc, (f, g), ()):
            phi = phi + t
    gamma = solve_affine(fc, (), (f, g), [(lambda x: phi @ x, idw(fc))])
    if gamma is None:
        raise ValueError("the unit is not a retract of f ⊗ g along phi")
    return Condensation2(fc, f, g, phi, gamma)


def rank_condensation(fc: FusionCategory, E) -> Condensation2:
    """f = 1^k, g = 1, with phi and gamma the two halves of a splitting of the
    rank-one idempotent k x k matrix E (dense rows)."""
    if len(fc.ring.unit) != 1:
        raise ValueError("rank condensations need a simple unit")
    u = fc.ring.unit[0]
    E = SpMat.from_dense([[as_scalar(x) for x in row] for row in E])
    if E @ E != E:
        raise ValueError("E is not idempotent")
    ranks, R, C = split_blocks({u: E})
    if ranks.get(u) != 1:
        raise ValueError("E must have rank one")
    k = E.nrows
    f = fc.signature.obj(tuple(k if s == u else 0 for s in range(fc.ring.rank)))
    g = fc.signature.simple(u)
    iota = flatten_iso(fc, (f, g))
    flat = iota.target
    phi = SkMorphism(fc, flat, (), {u: R[u]}) @ iota
    gamma = iota.inverse() @ SkMorphism(fc, (), flat, {u: C[u]})
    return Condensation2(fc, f, g, phi, gamma)


def induced_monad(c: Condensation2) -> CondensationMonad:
    """Monad on flatten(g ⊗ f) with mu = g φ f and delta = g γ f."""
    fc, f, g = c.fc, c.f, c.g
    iota = flatten_iso(fc, (g, f))
    inv = iota.inverse()
    e = iota.target[0]
    mu = iota @ tens(idw(fc, g), c.phi, idw(fc, f)) @ tens(inv, inv)
    de = tens(iota, iota) @ tens(idw(fc, g), c.gamma, idw(fc, f)) @ inv
    return CondensationMonad(fc, e, mu, de, name="gf")


def canonical_witness(c: Condensation2) -> SplittingWitness:
    """theta = the flattening isomorphism (g, f) -> (flatten(g ⊗ f),)."""
    return SplittingWitness(c, flatten_iso(c.fc, (c.g, c.f)))


def check_splitting_extension(m: CondensationMonad, w: SplittingWitness) -> bool:
    """mu = θ (g φ f)(θ⁻¹ ⊗ θ⁻¹) and delta = (θ ⊗ θ)(g γ f) θ⁻¹."""
    c, th = w.cond, w.theta
    fc = m.fc
    if th.source != (c.g, c.f) or th.target != (m.e,) or not th.is_invertible():
        return False
    inv = th.inverse()
    gphif = tens(idw(fc, c.g), c.phi, idw(fc, c.f))
    ggamf = tens(idw(fc, c.g), c.gamma, idw(fc, c.f))
    return m.mu == th @ gphif @ tens(inv, inv) and m.delta == tens(th, th) @ ggamf @ inv


def conjugate_monad(m: CondensationMonad, c: Condensation2) -> CondensationMonad:
    """The monad on g ⊗ e ⊗ f (flattened):

    mu = (g μ f) ∘ (g e φ e f),  delta = (g e γ e f) ∘ (g δ f).
    """
    fc = m.fc
    if m.fc is not c.fc:
        raise ValueError("monad and condensation over different categories")
    g, e, f = c.g, m.e, c.f
    Ig, Ie, If = idw(fc, g), idw(fc, e), idw(fc, f)
    mu = tens(Ig, m.mu, If) @ tens(Ig, Ie, c.phi, Ie, If)
    de = tens(Ig, Ie, c.gamma, Ie, If) @ tens(Ig, m.delta, If)
    iota = flatten_iso(fc, (g, e, f))
    inv = iota.inverse()
    x = iota.target[0]
    return CondensationMonad(fc, x, iota @ mu @ tens(inv, inv), tens(iota, iota) @ de @ inv, name=f"conj({m.name})")


# -- bimodules ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Bimodule:
    """An (A2, A1)-bimodule: left monad A2, right monad A1."""

    left: CondensationMonad
    right: CondensationMonad
    b: SSObject
    nu_r: SkMorphism  # (b, e1) -> (b,)
    beta_r: SkMorphism  # (b,) -> (b, e1)
    nu_l: SkMorphism  # (e2, b) -> (b,)
    beta_l: SkMorphism  # (b,) -> (e2, b)
    name: str = ""

    def __post_init__(self):
        b, e1, e2 = self.b, self.right.e, self.left.e
        _check_shape(self.nu_r, (b, e1), (b,), "nu_r")
        _check_shape(self.beta_r, (b,), (b, e1), "beta_r")
        _check_shape(self.nu_l, (e2, b), (b,), "nu_l")
        _check_shape(self.beta_l, (b,), (e2, b), "beta_l")

    @property
    def fc(self):
        return self.left.fc


def check_bimodule(B: Bimodule) -> CheckReport:
    """The five axiom groups: module, comodule, commutation, frobenius, split."""
    rep = CheckReport("bimodule")
    fc = B.fc
    nr, br, nl, bl = B.nu_r, B.beta_r, B.nu_l, B.beta_l
    A1, A2 = B.right, B.left
    ib, i1, i2 = idw(fc, B.b), A1.id, A2.id
    groups = [
        (
            "module",
            [
                (nr @ tens(nr, i1), nr @ tens(ib, A1.mu)),
                (nl @ tens(i2, nl), nl @ tens(A2.mu, ib)),
                (nr @ tens(nl, i1), nl @ tens(i2, nr)),
            ],
        ),
        (
            "comodule",
            [
                (tens(br, i1) @ br, tens(ib, A1.delta) @ br),
                (tens(i2, bl) @ bl, tens(A2.delta, ib) @ bl),
                (tens(bl, i1) @ br, tens(i2, br) @ bl),
            ],
        ),
        (
            "commutation",
            [
                (bl @ nr, tens(i2, nr) @ tens(bl, i1)),
                (br @ nl, tens(nl, i1) @ tens(i2, br)),
            ],
        ),
        (
            "frobenius",
            [
                (br @ nr, tens(nr, i1) @ tens(ib, A1.delta)),
                (br @ nr, tens(ib, A1.mu) @ tens(br, i1)),
                (bl @ nl, tens(i2, nl) @ tens(A2.delta, ib)),
                (bl @ nl, tens(A2.mu, ib) @ tens(i2, bl)),
            ],
        ),
        ("split", [(nr @ br, ib), (nl @ bl, ib)]),
    ]
    failed = []
    for name, eqs in groups:
        for lhs, rhs in eqs:
            rep.checked += 1
            if lhs != rhs:
                failed.append(name)
                rep.fail(name)
                break
    rep.details["failed"] = failed
    return rep


def left_unitor(fc, w: tuple) -> SkMorphism:
    """(1,) + w -> w in the normalized gauge: drop the unit leg."""
    unit = trivial_monad(fc).e
    src = (unit,) + tuple(w)
    calc = calculus(fc)
    ent = {}
    for ts in calc.trees(src).values():
        for T in ts:
            rest = Tree(T.choices[1:], T.inter[1:]) if w else Tree((), T.inter[-1:])
            ent[(rest, T)] = ONE
    return SkMorphism.from_trees(fc, src, tuple(w), ent)


def right_unitor(fc, w: tuple) -> SkMorphism:
    """w + (1,) -> w: drop the last (unit) leg."""
    unit = trivial_monad(fc).e
    src = tuple(w) + (unit,)
    calc = calculus(fc)
    ent = {}
    for ts in calc.trees(src).values():
        for T in ts:
            rest = Tree(T.choices[:-1], T.inter[:-1]) if w else Tree((), T.inter[-1:])
            ent[(rest, T)] = ONE
    return SkMorphism.from_trees(fc, src, tuple(w), ent)


def identity_bimodule(m: CondensationMonad) -> Bimodule:
    return Bimodule(m, m, m.e, m.mu, m.delta, m.mu, m.delta, name=f"id({m.name})")


def regular_bimodule(m: CondensationMonad, side: str) -> Bimodule:
    """A as a (1, A)-bimodule (side="right": A acts on the right) or as an
    (A, 1)-bimodule (side="left"); the trivial monad acts by unitors."""
    fc = m.fc
    one = trivial_monad(fc)
    lam = left_unitor(fc, (m.e,))
    rho = right_unitor(fc, (m.e,))
    if side == "right":
        return Bimodule(one, m, m.e, m.mu, m.delta, lam, lam.inverse(), name=f"reg_1{m.name}")
    if side == "left":
        return Bimodule(m, one, m.e, rho, rho.inverse(), m.mu, m.delta, name=f"reg_{m.name}1")
    raise ValueError("side must be 'left' or 'right'")


def free_bimodule(left: CondensationMonad, v: SSObject, right: CondensationMonad) -> Bimodule:
    """e2 ⊗ v ⊗ e1 (flattened) with the outer factors acting by mu and delta."""
    fc = left.fc
    e2, e1 = left.e, right.e
    iota = flatten_iso(fc, (e2, v, e1))
    inv = iota.inverse()
    x = iota.target[0]
    I2, Iv, I1 = idw(fc, e2), idw(fc, v), idw(fc, e1)
    nu_r = iota @ tens(I2, Iv, right.mu) @ tens(inv, I1)
    beta_r = tens(iota, I1) @ tens(I2, Iv, right.delta) @ inv
    nu_l = iota @ tens(left.mu, Iv, I1) @ tens(I2, inv)
    beta_l = tens(I2, iota) @ tens(left.delta, Iv, I1) @ inv
    return Bimodule(left, right, x, nu_r, beta_r, nu_l, beta_l, name=f"free({v})")


def transport_bimodule(B: Bimodule, u: SkMorphism, name: str = "") -> Bimodule:
    """The structure of B moved along an isomorphism u: (b,) -> (b',)."""
    if u.source != (B.b,) or len(u.target) != 1 or not u.is_invertible():
        raise ValueError("transport needs an isomorphism out of the bimodule's object")
    v = u.inverse()
    i1, i2 = B.right.id, B.left.id
    return Bimodule(
        B.left,
        B.right,
        u.target[0],
        u @ B.nu_r @ tens(v, i1),
        tens(u, i1) @ B.beta_r @ v,
        u @ B.nu_l @ tens(i2, v),
        tens(i2, u) @ B.beta_l @ v,
        name=name or B.name,
    )


def _equivariance(b1: Bimodule, b2: Bimodule):
    i1, i2 = b1.right.id, b1.left.id

    def right(t):
        return t @ b1.nu_r - b2.nu_r @ tens(t, i1)

    def left(t):
        return t @ b1.nu_l - b2.nu_l @ tens(i2, t)

    return [right, left]


def bimodule_hom(b1: Bimodule, b2: Bimodule, with_free: bool = False):
    """Basis of bimodule maps b1 -> b2 (right and left equivariance)."""
    if not same_monad(b1.left, b2.left) or not same_monad(b1.right, b2.right):
        raise ValueError("bimodules over different monad pairs")
    return solve_subspace(b1.fc, (b1.b,), (b2.b,), _equivariance(b1, b2), with_free=with_free)


def is_bimodule_map(t: SkMorphism, b1: Bimodule, b2: Bimodule) -> bool:
    if t.source != (b1.b,) or t.target != (b2.b,):
        return False
    return all(L(t).is_zero() for L in _equivariance(b1, b2))


# -- relative tensor product ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class RelativeTensor:
    bimodule: Bimodule
    projection: SkMorphism  # (b2, b1) -> (X,)
    injection: SkMorphism  # (X,) -> (b2, b1)
    idempotent: SkMorphism


def relative_tensor_idempotent(b2: Bimodule, b1: Bimodule) -> SkMorphism:
    """p = (id_b2 ⊗ ν1^l) ∘ (β2^r ⊗ id_b1) on b2 ⊗ b1."""
    fc = b1.fc
    return tens(idw(fc, b2.b), b1.nu_l) @ tens(b2.beta_r, idw(fc, b1.b))


def relative_tensor(b2: Bimodule, b1: Bimodule, pivot: str = "first") -> RelativeTensor:
    """b2 ⊗_{A2} b1 as the image of the idempotent p, with transported structure."""
    if not same_monad(b2.right, b1.left):
        raise ValueError("middle monads differ")
    fc = b1.fc
    p = relative_tensor_idempotent(b2, b1)
    if p @ p != p:
        raise ValueError("relative tensor idempotent is not idempotent (invalid bimodule inputs)")
    ranks, fs, gs = split_blocks(p.blocks, pivot)
    X = fc.signature.obj(tuple(ranks.get(s, 0) for s in range(fc.ring.rank)))
    word = (b2.b, b1.b)
    f = SkMorphism(fc, word, (X,), fs)
    g = SkMorphism(fc, (X,), word, gs)
    f = SkMorphism.from_coords(fc, word, (X,), f.coords())  # normalize block keys
    g = SkMorphism.from_coords(fc, (X,), word, g.coords())
    i1, i3 = b1.right.id, b2.left.id
    Ib1, Ib2 = idw(fc, b1.b), idw(fc, b2.b)
    nu_r = f @ tens(Ib2, b1.nu_r) @ tens(g, i1)
    nu_l = f @ tens(b2.nu_l, Ib1) @ tens(i3, g)
    beta_r = tens(f, i1) @ tens(Ib2, b1.beta_r) @ g
    beta_l = tens(i3, f) @ tens(b2.beta_l, Ib1) @ g
    out = Bimodule(b2.left, b1.right, X, nu_r, beta_r, nu_l, beta_l, name=f"{b2.name}*{b1.name}")
    rep = check_bimodule(out)
    if not rep.ok:
        raise ArithmeticError(f"relative tensor product fails the bimodule axioms: {rep.failure}")
    return RelativeTensor(out, f, g, p)


def left_unit_comparison(b1: Bimodule) -> tuple[SkMorphism, RelativeTensor]:
    """Invertible bimodule map A2 ⊗_{A2} b1 -> b1, namely ν1^l ∘ g."""
    rt = relative_tensor(identity_bimodule(b1.left), b1)
    u = b1.nu_l @ rt.injection
    _validate_iso(u, rt.bimodule, b1, "left unit")
    return u, rt


def right_unit_comparison(b: Bimodule) -> tuple[SkMorphism, RelativeTensor]:
    """Invertible bimodule map b ⊗_{A1} A1 -> b, namely ν^r ∘ g."""
    rt = relative_tensor(b, identity_bimodule(b.right))
    u = b.nu_r @ rt.injection
    _validate_iso(u, rt.bimodule, b, "right unit")
    return u, rt


def _validate_iso(u: SkMorphism, src: Bimodule, tgt: Bimodule, what: str) -> None:
    if not u.is_invertible():
        raise ArithmeticError(f"{what} comparison is not invertible")
    if not is_bimodule_map(u, src, tgt):
        raise ArithmeticError(f"{what} comparison is not a bimodule map")


@dataclass
class AssociativityComparison:
    left: Bimodule  # (b3 ⊗ b2) ⊗ b1
    right: Bimodule  # b3 ⊗ (b2 ⊗ b1)
    iso: SkMorphism
    solution_dim: int


def associativity_comparison(b3: Bimodule, b2: Bimodule, b1: Bimodule) -> AssociativityComparison:
    """Compare the two splittings of the triple idempotent on b3 ⊗ b2 ⊗ b1.

    The comparison u solves u F1 = F2 and G2 u = G1; its solution space must
    be one-dimensional, and u must be an invertible bimodule map.
    """
    fc = b1.fc
    I1, I3 = idw(fc, b1.b), idw(fc, b3.b)
    t32 = relative_tensor(b3, b2)
    L = relative_tensor(t32.bimodule, b1)
    F1 = L.projection @ tens(t32.projection, I1)
    G1 = tens(t32.injection, I1) @ L.injection
    t21 = relative_tensor(b2, b1)
    R = relative_tensor(b3, t21.bimodule)
    F2 = R.projection @ tens(I3, t21.projection)
    G2 = tens(I3, t21.injection) @ R.injection
    if G1 @ F1 != G2 @ F2:
        raise ArithmeticError("the two bracketings split different idempotents")
    u = F2 @ G1
    ub, dim = comparison_blocks(F1.blocks, G1.blocks, F2.blocks, G2.blocks)
    if dim != 1:
        raise ArithmeticError(f"comparison equations have a {dim}-dimensional solution space")
    if any(ub[s] != u.blocks[s] for s in u.blocks):
        raise ArithmeticError("comparison solution differs from F2 ∘ G1")
    if u @ F1 != F2 or G2 @ u != G1:
        raise ArithmeticError("comparison map fails its defining equations")
    _validate_iso(u, L.bimodule, R.bimodule, "associativity")
    return AssociativityComparison(L.bimodule, R.bimodule, u, dim)
