"""Fusion rings, F-symbols and their coherence checks.

Convention for F-symbols (multiplicity-free).  For simples a, b, c, d write
``L_e = v(e c -> d) ∘ (v(a b -> e) ⊗ c)`` for the left-bracketed fusion tree
and ``R_f = v(a f -> d) ∘ (a ⊗ v(b c -> f))`` for the right-bracketed one.
Then ``R_f = sum_e F[a,b,c,d,e,f] L_e``.  With this convention the pentagon
reads::

    F[a,b,z,t; x,w] F[x,c,d,t; y,z] = sum_u F[a,b,c,y; x,u] F[a,u,d,t; y,w] F[b,c,d,w; u,z]

Unit gauge: ``F[a,1_i,b,...] = 1`` whenever admissible.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cycfield import CycNumber, as_scalar, conductor_of, scalar_from_json, scalar_to_json
from .linalg import SpMat, rank
from .report import CheckReport
from .ssvec import SSSignature

__all__ = [
    "FusionRing",
    "FusionCategory",
    "CocycleSpec",
    "ComponentMatrix",
    "UnsupportedMultiplicity",
    "verify_fusion_ring",
    "verify_pentagon",
    "build_pointed",
    "multifusion_components",
    "matrix_units_category",
    "direct_sum_vect",
    "fibonacci_ring",
    "fibonacci_category",
    "fcat_to_json",
    "fcat_from_json",
]


class UnsupportedMultiplicity(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Structure constants ``N[(a, b)] = {c: N_ab^c}`` on label indices."""

    labels: tuple
    unit: tuple  # indices of the unit summands
    N: dict
    dual: tuple

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def signature(self) -> SSSignature:
        return SSSignature(tuple(self.labels))

    def fuse(self, a: int, b: int) -> dict:
        return self.N.get((a, b), {})

    def mult(self, a: int, b: int, c: int) -> int:
        return self.N.get((a, b), {}).get(c, 0)

    def index(self, label) -> int:
        return self.labels.index(label)

    @classmethod
    def from_triples(cls, labels, unit, triples, dual) -> "FusionRing":
        labels = tuple(labels)
        idx = {l: i for i, l in enumerate(labels)}
        N: dict = {}
        for a, b, c, m in triples:
            if m:
                N.setdefault((idx[a], idx[b]), {})[idx[c]] = int(m)
        return cls(labels, tuple(idx[u] for u in unit), N, tuple(idx[dual[l]] for l in labels))


def verify_fusion_ring(r: FusionRing) -> CheckReport:
    rep = CheckReport("fusion-ring")
    n = r.rank
    for a, b, c, d in itertools.product(range(n), repeat=4):
        rep.checked += 1
        lhs = sum(m * r.mult(e, c, d) for e, m in r.fuse(a, b).items())
        rhs = sum(m * r.mult(a, f, d) for f, m in r.fuse(b, c).items())
        if lhs != rhs:
            L = r.labels
            return rep.fail(f"associativity at ({L[a]},{L[b]},{L[c]},{L[d]}): {lhs} != {rhs}")
    for a, b in itertools.product(range(n), repeat=2):
        left = sum(r.mult(u, a, b) for u in r.unit)
        right = sum(r.mult(a, u, b) for u in r.unit)
        want = int(a == b)
        if left != want or right != want:
            return rep.fail(f"unit law at ({r.labels[a]},{r.labels[b]})")
    for a in range(n):
        if r.dual[r.dual[a]] != a:
            return rep.fail(f"dual is not an involution at {r.labels[a]}")
        if sum(r.mult(a, r.dual[a], u) for u in r.unit) < 1:
            return rep.fail(f"no unit summand in {r.labels[a]} ⊗ dual")
    return rep


@dataclass(eq=False)
class FusionCategory:
    """A multiplicity-free (multi)fusion category given by its F-symbols.

    ``F`` maps index tuples (a, b, c, d, e, f) to scalars, defined exactly on
    admissible tuples.
    """

    ring: FusionRing
    F: dict
    conductor: int = 1
    name: str = ""

    def __post_init__(self):
        for (a, b), out in self.ring.N.items():
            for c, m in out.items():
                if m > 1:
                    L = self.ring.labels
                    raise UnsupportedMultiplicity(
                        f"unsupported multiplicity: N_{{{L[a]},{L[b]}}}^{L[c]} = {m}"
                    )
        self.F = {k: as_scalar(v) for k, v in self.F.items()}
        admissible = set(self.admissible_tuples())
        missing = admissible - set(self.F)
        if missing:
            raise ValueError(f"F-symbol missing on admissible tuple {self._fmt(min(missing))}")
        extra = set(self.F) - admissible
        if extra:
            raise ValueError(f"F-symbol given on non-admissible tuple {self._fmt(min(extra))}")
        for v in self.F.values():
            c = conductor_of(v)
            if self.conductor % c:
                raise ValueError(f"F-symbol {v} lies outside the declared conductor {self.conductor}")
        units = set(self.ring.unit)
        for k, v in self.F.items():
            if k[1] in units and v != 1:
                raise ValueError(f"F-symbol {self._fmt(k)} = {v} violates the unit gauge")
        n = self.ring.rank
        for a, b, c, d in itertools.product(range(n), repeat=4):
            es, fs, m = self.fmatrix(a, b, c, d)
            if not es and not fs:
                continue
            if len(es) != len(fs) or rank(m) != len(es):
                raise ValueError(f"F-matrix F^{{{a},{b},{c}}}_{d} is not invertible")

    def _fmt(self, k) -> str:
        return "(" + ",".join(str(self.ring.labels[i]) for i in k) + ")"

    @property
    def labels(self):
        return self.ring.labels

    @property
    def signature(self) -> SSSignature:
        return self.ring.signature

    def admissible_tuples(self):
        r = self.ring
        n = r.rank
        for a, b, c in itertools.product(range(n), repeat=3):
            for e in r.fuse(a, b):
                for d in r.fuse(e, c):
                    for f in r.fuse(b, c):
                        if r.mult(a, f, d):
                            yield (a, b, c, d, e, f)

    def fsym(self, a, b, c, d, e, f):
        return self.F[(a, b, c, d, e, f)]

    def fmatrix(self, a, b, c, d):
        """(left intermediates e, right intermediates f, matrix [e, f])."""
        r = self.ring
        es = sorted(e for e in r.fuse(a, b) if r.mult(e, c, d))
        fs = sorted(f for f in r.fuse(b, c) if r.mult(a, f, d))
        m = SpMat(len(es), len(fs))
        for i, e in enumerate(es):
            for j, f in enumerate(fs):
                m.add_entry(i, j, self.F[(a, b, c, d, e, f)])
        return es, fs, m


def verify_pentagon(fc: FusionCategory) -> CheckReport:
    """Check every pentagon instance over 4-fold products of simples."""
    rep = CheckReport("pentagon")
    r = fc.ring
    F = fc.F
    n = r.rank
    for a, b, c, d in itertools.product(range(n), repeat=4):
        for x in sorted(r.fuse(a, b)):
            for y in sorted(r.fuse(x, c)):
                for t in sorted(r.fuse(y, d)):
                    for z in sorted(r.fuse(c, d)):
                        for w in sorted(r.fuse(b, z)):
                            if not r.mult(a, w, t):
                                continue
                            rep.checked += 1
                            # symbols on non-admissible tuples vanish
                            lhs = F.get((a, b, z, t, x, w), 0) * F.get((x, c, d, t, y, z), 0)
                            rhs = 0
                            for u in r.fuse(b, c):
                                if r.mult(a, u, y) and r.mult(u, d, w):
                                    rhs = rhs + F[(a, b, c, y, x, u)] * F[(a, u, d, t, y, w)] * F[(b, c, d, w, u, z)]
                            if lhs != rhs and rep.ok:
                                L = r.labels
                                rep.fail(
                                    "pentagon at "
                                    f"(a,b,c,d)=({L[a]},{L[b]},{L[c]},{L[d]}) t={L[t]} x={L[x]} y={L[y]} z={L[z]} w={L[w]}"
                                )
    return rep


# -- pointed categories -------------------------------------------------------


@dataclass(frozen=True)
class CocycleSpec:
    """Class parameter q of the 3-cocycle on Z/n, w(a,b,c) = z_n^(q a floor((b+c)/n))."""

    n: int
    q: int = 0

    def omega(self, a: int, b: int, c: int):
        n = self.n
        a, b, c = a % n, b % n, c % n
        k = (self.q * a * ((b + c) // n)) % n
        return as_scalar(CycNumber.zeta(n, k)) if k else Fraction(1)

    def coboundary_defect(self) -> Optional[tuple]:
        """First (a,b,c,d) where the cocycle condition fails, or None."""
        n, w = self.n, self.omega
        for a, b, c, d in itertools.product(range(n), repeat=4):
            lhs = w(a + b, c, d) * w(a, b, c + d)
            rhs = w(a, b, c) * w(a, b + c, d) * w(b, c, d)
            if lhs != rhs:
                return (a, b, c, d)
        return None


def build_pointed(spec: CocycleSpec) -> FusionCategory:
    """Vect_{Z/n}^omega with simples "0".."n-1"."""
    n = spec.n
    if n < 1:
        raise ValueError("group order must be positive")
    bad = spec.coboundary_defect()
    if bad is not None:
        raise ValueError(f"omega fails the cocycle condition at {bad}")
    labels = tuple(str(i) for i in range(n))
    N = {(a, b): {(a + b) % n: 1} for a in range(n) for b in range(n)}
    ring = FusionRing(labels, (0,), N, tuple((-a) % n for a in range(n)))
    F = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        F[(a, b, c, (a + b + c) % n, (a + b) % n, (b + c) % n)] = spec.omega(a, b, c)
    return FusionCategory(ring, F, conductor=n, name=f"Vect_Z{n}^q{spec.q % n}")


def _trivial_F(ring: FusionRing) -> dict:
    out = {}
    for a, b, c in itertools.product(range(ring.rank), repeat=3):
        for e in ring.fuse(a, b):
            for d in ring.fuse(e, c):
                for f in ring.fuse(b, c):
                    if ring.mult(a, f, d):
                        out[(a, b, c, d, e, f)] = Fraction(1)
    return out


def matrix_units_category(k: int) -> FusionCategory:
    """Mat_k(Vect): simples e_ij, e_ij ⊗ e_jl = e_il, unit ⊕ e_ii."""
    pairs = [(i, j) for i in range(k) for j in range(k)]
    labels = tuple(f"e{i}{j}" for i, j in pairs)
    idx = {p: n for n, p in enumerate(pairs)}
    N = {}
    for (i, j) in pairs:
        for (j2, l) in pairs:
            if j == j2:
                N[(idx[(i, j)], idx[(j2, l)])] = {idx[(i, l)]: 1}
    ring = FusionRing(labels, tuple(idx[(i, i)] for i in range(k)), N, tuple(idx[(j, i)] for i, j in pairs))
    return FusionCategory(ring, _trivial_F(ring), 1, name=f"Mat{k}(Vect)")


def direct_sum_vect(k: int) -> FusionCategory:
    """Vect ⊕ ... ⊕ Vect (k copies): simples u_i with u_i ⊗ u_j = δ_ij u_i."""
    labels = tuple(f"u{i}" for i in range(k))
    N = {(i, i): {i: 1} for i in range(k)}
    ring = FusionRing(labels, tuple(range(k)), N, tuple(range(k)))
    return FusionCategory(ring, _trivial_F(ring), 1, name=f"Vect^{k}")


def fibonacci_ring() -> FusionRing:
    return FusionRing(("1", "t"), (0,), {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1, 1: 1}}, (0, 1))


def fibonacci_category() -> FusionCategory:
    """Fibonacci category in a gauge with entries in Q(zeta_5).

    Only F^{ttt}_t is nontrivial: [[1/phi, 1], [1/phi, -1/phi]] in bases (1, t).
    """
    ring = fibonacci_ring()
    F = _trivial_F(ring)
    z = CycNumber.zeta(5)
    inv_phi = z + z**4  # (sqrt5 - 1) / 2
    F[(1, 1, 1, 1, 0, 0)] = inv_phi
    F[(1, 1, 1, 1, 0, 1)] = Fraction(1)
    F[(1, 1, 1, 1, 1, 0)] = inv_phi
    F[(1, 1, 1, 1, 1, 1)] = -inv_phi
    return FusionCategory(ring, F, 5, name="Fibonacci")


# -- multifusion components -------------------------------------------------


@dataclass
class ComponentMatrix:
    units: list
    cells: list  # cells[i][j] = list of simple labels in 1_i ⊗ C ⊗ 1_j
    is_connected: bool

    def counts(self) -> list[list[int]]:
        return [[len(c) for c in row] for row in self.cells]


def multifusion_components(fc) -> ComponentMatrix:
    """Decompose the simples into the blocks C_ij = 1_i ⊗ C ⊗ 1_j."""
    r = fc.ring if isinstance(fc, FusionCategory) else fc
    units = list(r.unit)
    cells = [[[] for _ in units] for _ in units]
    for x in range(r.rank):
        rows = [i for i, u in enumerate(units) if r.mult(u, x, x) == 1]
        cols = [j for j, u in enumerate(units) if r.mult(x, u, x) == 1]
        if len(rows) != 1 or len(cols) != 1:
            raise ValueError(f"unit decomposition inconsistent at simple {r.labels[x]}")
        cells[rows[0]][cols[0]].append(r.labels[x])
    connected = all(c for row in cells for c in row)
    return ComponentMatrix([r.labels[u] for u in units], cells, connected)


# -- serialization -----------------------------------------------------------


def fcat_to_json(fc: FusionCategory) -> dict:
    r = fc.ring
    L = r.labels
    N = [[L[a], L[b], L[c], m] for (a, b), out in sorted(r.N.items()) for c, m in sorted(out.items())]
    F = {"(" + ",".join(str(L[i]) for i in k) + ")": scalar_to_json(v) for k, v in sorted(fc.F.items())}
    return {
        "name": fc.name,
        "labels": list(L),
        "unit": [L[u] for u in r.unit],
        "N": N,
        "dual": {L[a]: L[r.dual[a]] for a in range(r.rank)},
        "F": F,
        "conductor": fc.conductor,
    }


def fcat_from_json(obj: dict) -> FusionCategory:
    labels = [str(l) for l in obj["labels"]]
    idx = {l: i for i, l in enumerate(labels)}
    triples = [(str(a), str(b), str(c), int(m)) for a, b, c, m in obj["N"]]
    for a, b, c, m in triples:
        if m > 1:
            raise UnsupportedMultiplicity(f"unsupported multiplicity: N_{{{a},{b}}}^{c} = {m}")
    dual = {str(k): str(v) for k, v in obj["dual"].items()}
    ring = FusionRing.from_triples(labels, [str(u) for u in obj["unit"]], triples, dual)
    F = {}
    for key, val in obj["F"].items():
        parts = [p.strip() for p in key.strip("()").split(",")]
        if len(parts) != 6:
            raise ValueError(f"bad F-symbol key {key!r}")
        F[tuple(idx[p] for p in parts)] = scalar_from_json(val)
    return FusionCategory(ring, F, int(obj.get("conductor", 1)), name=obj.get("name", ""))
