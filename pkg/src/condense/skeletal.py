"""Morphisms between tensor words in a multiplicity-free fusion category.

A *word* is a tuple of SSObjects (the empty tuple is the monoidal unit).  Hom
spaces are coordinatized by left-comb fusion trees: a tree of ``x1 ... xk``
onto a simple ``s`` picks a simple summand (label, copy) of every factor and
intermediate simples ``c1 = l1, c_j in c_{j-1} ⊗ l_j, c_k = s``.  A morphism
``x -> y`` is stored as one matrix per simple s, rows indexed by the trees of
y onto s and columns by the trees of x onto s, so composition is blockwise
matrix multiplication.  Tensor products change basis with F-moves.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .cycfield import as_scalar, scalar_from_json, scalar_to_json
from .fusion import FusionCategory
from .linalg import ONE, ZERO, Echelon, SpMat, inverse, solve
from .ssvec import SSObject, SignatureError

__all__ = [
    "Tree",
    "TreeCalculus",
    "SkMorphism",
    "calculus",
    "hom_dim_words",
    "identity_word",
    "tensor",
    "compose",
    "flatten",
    "flatten_iso",
    "solve_subspace",
    "solve_affine",
    "word",
]


@dataclass(frozen=True, order=True)
class Tree:
    choices: tuple  # ((label index, copy), ...)
    inter: tuple  # intermediate simples; inter[-1] is the target simple

    @property
    def target(self) -> int:
        return self.inter[-1]

    def label(self, labels) -> str:
        ch = ",".join(f"{labels[l]}#{c}" for l, c in self.choices)
        return ch + "|" + ",".join(str(labels[i]) for i in self.inter)


def word(*objs: SSObject) -> tuple:
    return tuple(objs)


class TreeCalculus:
    """Tree bases and F-move change-of-basis matrices for one fusion category."""

    def __init__(self, fc: FusionCategory):
        self.fc = fc
        self.ring = fc.ring
        self.sig = fc.signature
        self._trees: dict = {}
        self._index: dict = {}
        self._split: dict = {}
        self._counts: dict = {}

    # -- bases ------------------------------------------------------------
    def trees(self, w: tuple) -> dict:
        """``{s: [Tree, ...]}`` for every simple s (empty lists omitted)."""
        if w in self._trees:
            return self._trees[w]
        for x in w:
            if x.signature != self.sig:
                raise SignatureError("word factor over a different signature")
        r = self.ring
        if not w:
            out = {u: [Tree((), (u,))] for u in r.unit}
        else:
            prev = self.trees(w[:-1]) if len(w) > 1 else None
            x = w[-1]
            summands = [(l, c) for l in range(r.rank) for c in range(x.mult[l])]
            out = {}
            if prev is None:
                for l, c in summands:
                    out.setdefault(l, []).append(Tree(((l, c),), (l,)))
            else:
                for a in sorted(prev):
                    for t in prev[a]:
                        for l, c in summands:
                            for s in sorted(r.fuse(a, l)):
                                out.setdefault(s, []).append(Tree(t.choices + ((l, c),), t.inter + (s,)))
            for s in out:
                out[s].sort()
        out = {s: out[s] for s in sorted(out) if out[s]}
        self._trees[w] = out
        self._index[w] = {s: {t: i for i, t in enumerate(ts)} for s, ts in out.items()}
        return out

    def index(self, w: tuple) -> dict:
        self.trees(w)
        return self._index[w]

    def counts(self, w: tuple) -> dict:
        c = self._counts.get(w)
        if c is None:
            c = self._counts[w] = {s: len(ts) for s, ts in self.trees(w).items()}
        return c

    # -- F-moves ----------------------------------------------------------
    def _expand(self, t: Tree, x: tuple, t2: Tree, y: tuple, s: int) -> dict:
        """v(a b -> s) ∘ (t ⊗ t2) in canonical trees of x + y, as {Tree: coeff}."""
        r = self.ring
        if not x:
            return {t2: ONE} if t2.target == s else {}
        if not y:
            return {t: ONE} if t.target == s else {}
        a = t.target
        if len(y) == 1:
            if not r.mult(a, t2.target, s):
                return {}
            return {Tree(t.choices + t2.choices, t.inter + (s,)): ONE}
        b = t2.target
        bp = t2.inter[-2]
        c = t2.choices[-1][0]
        head = Tree(t2.choices[:-1], t2.inter[:-1])
        out: dict = {}
        F = self.fc.F
        for e in r.fuse(a, bp):
            if not r.mult(e, c, s):
                continue
            coef = F.get((a, bp, c, s, e, b))
            if not coef:
                continue
            for T, v in self._expand(t, x, head, y[:-1], e).items():
                key = Tree(T.choices + (t2.choices[-1],), T.inter + (s,))
                out[key] = out.get(key, ZERO) + coef * v
        return {k: v for k, v in out.items() if v}

    def split_basis(self, x: tuple, y: tuple) -> dict:
        """Per simple s: ``{(a, b): (M_ab, N_ab)}`` where the columns of M_ab
        expand the split trees v(a b -> s) ∘ (t ⊗ t2) in canonical trees of
        x + y (stored transposed), and N_ab holds the matching columns of
        M^-T (the dual basis)."""
        key = (x, y)
        if key in self._split:
            return self._split[key]
        tx, ty = self.trees(x), self.trees(y)
        idx = self.index(x + y)
        r = self.ring
        out = {}
        for s, canon in self.trees(x + y).items():
            pairs = []
            for a in sorted(tx):
                for b in sorted(ty):
                    if r.mult(a, b, s):
                        pairs.append((a, b))
            cols, spans = [], []
            for a, b in pairs:
                start = len(cols)
                for t in tx[a]:
                    for t2 in ty[b]:
                        cols.append(self._expand(t, x, t2, y, s))
                spans.append((start, len(cols)))
            M = SpMat(len(canon), len(cols))
            for j, col in enumerate(cols):
                for T, v in col.items():
                    M.add_entry(idx[s][T], j, v)
            if M.nrows != M.ncols:
                raise ArithmeticError("split basis has the wrong size")
            Minv = inverse(M)
            MT = M.T
            per = {}
            for (a, b), (lo, hi) in zip(pairs, spans):
                rows_M = SpMat(hi - lo, M.nrows, {i - lo: MT.rows[i] for i in range(lo, hi) if i in MT.rows})
                rows_inv = SpMat(hi - lo, M.nrows, {i - lo: Minv.rows[i] for i in range(lo, hi) if i in Minv.rows})
                per[(a, b)] = (rows_M, rows_inv.T)
            out[s] = per
        self._split[key] = out
        return out


_CALCULI: "weakref.WeakKeyDictionary[FusionCategory, TreeCalculus]" = weakref.WeakKeyDictionary()


def calculus(fc: FusionCategory) -> TreeCalculus:
    calc = _CALCULI.get(fc)
    if calc is None:
        calc = _CALCULI[fc] = TreeCalculus(fc)
    return calc


def hom_dim_words(fc: FusionCategory, x: tuple, y: tuple) -> int:
    calc = calculus(fc)
    cx, cy = calc.counts(tuple(x)), calc.counts(tuple(y))
    return sum(n * cy.get(s, 0) for s, n in cx.items())


@dataclass(frozen=True, eq=False)
class SkMorphism:
    fc: FusionCategory
    source: tuple
    target: tuple
    blocks: dict  # s -> SpMat (trees of target) x (trees of source)

    @property
    def calc(self) -> TreeCalculus:
        return calculus(self.fc)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, fc, x, y) -> "SkMorphism":
        x, y = tuple(x), tuple(y)
        calc = calculus(fc)
        cx, cy = calc.counts(x), calc.counts(y)
        return cls(fc, x, y, {s: SpMat(cy[s], cx[s]) for s in cx if s in cy})

    @classmethod
    def identity(cls, fc, x) -> "SkMorphism":
        x = tuple(x)
        return cls(fc, x, x, {s: SpMat.identity(n) for s, n in calculus(fc).counts(x).items()})

    @classmethod
    def basis(cls, fc, x, y) -> list["SkMorphism"]:
        z = cls.zero(fc, x, y)
        out = []
        for s in sorted(z.blocks):
            m = z.blocks[s]
            for i in range(m.nrows):
                for j in range(m.ncols):
                    b = dict(z.blocks)
                    b[s] = SpMat(m.nrows, m.ncols, {i: {j: ONE}})
                    out.append(cls(fc, z.source, z.target, b))
        return out

    @classmethod
    def from_coords(cls, fc, x, y, coords) -> "SkMorphism":
        """Inverse of :meth:`coords` (dense list or sparse {index: value})."""
        z = cls.zero(fc, x, y)
        items = coords.items() if isinstance(coords, dict) else enumerate(coords)
        layout = z._layout()
        blocks = {s: m.copy() for s, m in z.blocks.items()}
        for k, v in items:
            if v:
                s, i, j = layout[k]
                blocks[s].add_entry(i, j, as_scalar(v))
        return cls(fc, z.source, z.target, blocks)

    @classmethod
    def from_trees(cls, fc, x, y, entries: dict) -> "SkMorphism":
        """Build from ``{(target Tree, source Tree): value}``."""
        calc = calculus(fc)
        z = cls.zero(fc, x, y)
        ix, iy = calc.index(z.source), calc.index(z.target)
        blocks = {s: m.copy() for s, m in z.blocks.items()}
        for (T, S), v in entries.items():
            s = T.target
            if S.target != s:
                raise ValueError("trees with different target simples")
            blocks[s].add_entry(iy[s][T], ix[s][S], as_scalar(v))
        return cls(fc, z.source, z.target, blocks)

    # -- coordinates ------------------------------------------------------
    def _layout(self) -> list:
        out = []
        for s in sorted(self.blocks):
            m = self.blocks[s]
            out.extend((s, i, j) for i in range(m.nrows) for j in range(m.ncols))
        return out

    def dim(self) -> int:
        return sum(m.nrows * m.ncols for m in self.blocks.values())

    def coords(self) -> dict:
        """Sparse coordinates {k: value} in the canonical ordering
        (simple, target tree, source tree)."""
        out = {}
        off = 0
        for s in sorted(self.blocks):
            m = self.blocks[s]
            for i, j, v in m.entries():
                out[off + i * m.ncols + j] = v
            off += m.nrows * m.ncols
        return out

    def dense(self) -> list:
        v = [ZERO] * self.dim()
        for k, c in self.coords().items():
            v[k] = c
        return v

    def tree_entries(self) -> dict:
        calc = self.calc
        tx, ty = calc.trees(self.source), calc.trees(self.target)
        return {(ty[s][i], tx[s][j]): v for s, m in self.blocks.items() for i, j, v in m.entries()}

    # -- algebra ----------------------------------------------------------
    def _same_space(self, other):
        if self.fc is not other.fc or self.source != other.source or self.target != other.target:
            raise ValueError("morphisms live in different hom spaces")

    def __matmul__(self, f: "SkMorphism") -> "SkMorphism":
        """``self ∘ f``."""
        if self.fc is not f.fc:
            raise SignatureError("morphisms over different fusion categories")
        if f.target != self.source:
            raise ValueError("word mismatch in composition")
        blocks = SkMorphism.zero(self.fc, f.source, self.target).blocks
        for s in blocks:
            g, m = self.blocks.get(s), f.blocks.get(s)
            if g is not None and m is not None:
                blocks[s] = g @ m
        return SkMorphism(self.fc, f.source, self.target, blocks)

    def __add__(self, other):
        self._same_space(other)
        return SkMorphism(self.fc, self.source, self.target, {s: m + other.blocks[s] for s, m in self.blocks.items()})

    def __sub__(self, other):
        self._same_space(other)
        return SkMorphism(self.fc, self.source, self.target, {s: m - other.blocks[s] for s, m in self.blocks.items()})

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c) -> "SkMorphism":
        return SkMorphism(self.fc, self.source, self.target, {s: m.scale(c) for s, m in self.blocks.items()})

    def __eq__(self, other):
        if not isinstance(other, SkMorphism):
            return NotImplemented
        return (
            self.fc is other.fc
            and self.source == other.source
            and self.target == other.target
            and all(m == other.blocks[s] for s, m in self.blocks.items())
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.blocks.values())

    def __or__(self, other: "SkMorphism") -> "SkMorphism":
        return tensor(self, other)

    def inverse(self) -> "SkMorphism":
        return SkMorphism(self.fc, self.target, self.source, {s: inverse(m) for s, m in self.blocks.items()})

    def is_invertible(self) -> bool:
        calc = self.calc
        if calc.counts(self.source) != calc.counts(self.target):
            return False
        try:
            self.inverse()
        except (ZeroDivisionError, ValueError):
            return False
        return True

    def to_json(self) -> dict:
        labels = self.fc.labels
        ent = {}
        for (T, S), v in sorted(self.tree_entries().items()):
            ent[f"{T.label(labels)} <- {S.label(labels)}"] = scalar_to_json(v)
        return {"source": _word_json(self.source), "target": _word_json(self.target), "entries": ent}

    @classmethod
    def from_json(cls, fc, obj) -> "SkMorphism":
        x = _word_from_json(fc, obj["source"])
        y = _word_from_json(fc, obj["target"])
        calc = calculus(fc)
        by_label_x = {t.label(fc.labels): t for ts in calc.trees(x).values() for t in ts}
        by_label_y = {t.label(fc.labels): t for ts in calc.trees(y).values() for t in ts}
        ent = {}
        for key, v in obj.get("entries", {}).items():
            tl, sl = [p.strip() for p in key.split("<-")]
            if tl not in by_label_y or sl not in by_label_x:
                raise ValueError(f"unknown fusion tree in coordinate key {key!r}")
            ent[(by_label_y[tl], by_label_x[sl])] = scalar_from_json(v)
        return cls.from_trees(fc, x, y, ent)


def _word_json(w: tuple) -> list:
    return [list(x.mult) for x in w]


def _word_from_json(fc, obj) -> tuple:
    sig = fc.signature
    return tuple(sig.obj(tuple(int(m) for m in mult)) for mult in obj)


def identity_word(fc, x) -> SkMorphism:
    return SkMorphism.identity(fc, x)


def compose(g: SkMorphism, f: SkMorphism) -> SkMorphism:
    return g @ f


def tensor(f: SkMorphism, g: SkMorphism) -> SkMorphism:
    """``f ⊗ g : f.source + g.source -> f.target + g.target``.

    In split bases the map is block diagonal with Kronecker blocks
    f_a ⊗ g_b; canonical coordinates are N_y (f_a ⊗ g_b) M_x^T summed over
    the pairs (a, b).
    """
    if f.fc is not g.fc:
        raise SignatureError("morphisms over different fusion categories")
    fc = f.fc
    calc = f.calc
    x, y = f.source + g.source, f.target + g.target
    Sx = calc.split_basis(f.source, g.source)
    Sy = calc.split_basis(f.target, g.target)
    cx, cy = calc.counts(x), calc.counts(y)
    blocks = {}
    for s in cx:
        if s not in cy:
            continue
        acc = SpMat(cy[s], cx[s])
        px, py = Sx[s], Sy[s]
        for ab, (Mx_rows, _) in px.items():
            fa, gb = f.blocks.get(ab[0]), g.blocks.get(ab[1])
            if fa is None or gb is None or fa.is_zero() or gb.is_zero() or ab not in py:
                continue
            term = py[ab][1] @ (fa.kron(gb) @ Mx_rows)
            acc = term if acc.is_zero() else acc + term
        blocks[s] = acc
    return SkMorphism(fc, x, y, blocks)


def flatten(fc, w) -> SSObject:
    """The semisimple object with multiplicity of s = number of trees onto s."""
    counts = calculus(fc).counts(tuple(w))
    return fc.signature.obj(tuple(counts.get(s, 0) for s in range(fc.ring.rank)))


def flatten_iso(fc, w) -> SkMorphism:
    """Canonical isomorphism ``w -> (flatten(w),)``: identity blocks."""
    w = tuple(w)
    flat = (flatten(fc, w),)
    return SkMorphism(fc, w, flat, {s: SpMat.identity(n) for s, n in calculus(fc).counts(w).items()})


# -- linear systems on hom spaces -------------------------------------------


def _constraint_matrix(basis: list, constraints: Sequence[Callable]) -> tuple[list, int]:
    rows: dict = {}
    off = 0
    for L in constraints:
        width = None
        for j, b in enumerate(basis):
            img = L(b)
            width = img.dim()
            for k, v in img.coords().items():
                rows.setdefault(off + k, {})[j] = v
        if width is None:
            width = 0
        off += width
    return list(rows.values()), off


def solve_subspace(fc, x, y, constraints: Sequence[Callable] = (), with_free: bool = False):
    """Basis of {f : x -> y | L(f) = 0 for each linear map L in constraints}.

    One basis vector per free coordinate (first-pivot elimination): vector k
    is 1 at free coordinate k and zero at the other free coordinates, so a
    solution's coordinates in this basis are its values there.  With
    ``with_free`` the free coordinate indices are returned too.
    """
    basis = SkMorphism.basis(fc, x, y)
    rows, _ = _constraint_matrix(basis, constraints)
    ech = Echelon(len(basis))
    for r in rows:
        ech.add(r)
    sols = [SkMorphism.from_coords(fc, x, y, v) for v in ech.nullspace()]
    if with_free:
        return sols, [c for c in range(len(basis)) if c not in ech.pivots]
    return sols


def solve_affine(fc, x, y, constraints: Sequence[tuple]) -> Optional[SkMorphism]:
    """One f with L(f) = rhs for every (L, rhs), or None if inconsistent."""
    basis = SkMorphism.basis(fc, x, y)
    rows: list = []
    rhs: list = []
    for L, b in constraints:
        imgs = [L(v).coords() for v in basis]
        dim = b.dim()
        bc = b.coords()
        for k in range(dim):
            rows.append({j: im[k] for j, im in enumerate(imgs) if k in im})
            rhs.append(bc.get(k, ZERO))
    m = SpMat(len(rows), len(basis), {i: r for i, r in enumerate(rows) if r})
    sol = solve(m, rhs)
    if sol is None:
        return None
    return SkMorphism.from_coords(fc, x, y, sol)
