"""Random test data shared by several suites."""
import random
from fractions import Fraction

from condense.linalg import SpMat, inverse
from condense.ssvec import SSMorphism


def random_invertible(rng: random.Random, n: int, span: int = 3) -> SpMat:
    while True:
        S = SpMat.from_dense([[Fraction(rng.randint(-span, span)) for _ in range(n)] for _ in range(n)], n)
        try:
            return inverse(S)
        except (ZeroDivisionError, ValueError, ArithmeticError):
            continue


def random_projector(rng: random.Random, x, p_keep: float = 0.5) -> SSMorphism:
    """S D S^-1 blockwise with D a random 0/1 diagonal."""
    blocks = []
    for m in x.mult:
        S = random_invertible(rng, m)
        D = SpMat.from_dense([[Fraction(int(i == j and rng.random() < p_keep)) for j in range(m)] for i in range(m)], m)
        blocks.append(S @ D @ inverse(S))
    return SSMorphism(x, x, tuple(blocks))


def random_unimodular(rng: random.Random, n: int, steps: int = 0) -> SpMat:
    """Integer matrix with integer inverse: a product of elementary row additions."""
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(steps or 2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            c = rng.choice((-2, -1, 1, 2))
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return SpMat.from_dense(rows, n)


def random_automorphism(rng: random.Random, fc, x):
    """A random invertible SkMorphism (x,) -> (x,) with integer blocks."""
    from condense.skeletal import SkMorphism

    blocks = {s: random_unimodular(rng, m) for s, m in enumerate(x.mult) if m}
    z = SkMorphism.zero(fc, (x,), (x,))
    return SkMorphism(fc, (x,), (x,), {**z.blocks, **blocks})


def built_monads(fc):
    """Every group algebra of a subgroup that exists over fc, plus the trivial monad."""
    from condense.condensation import CondensationMonad, build_group_algebra, trivial_monad

    out = [trivial_monad(fc)]
    n = fc.ring.rank
    for d in range(2, n + 1):
        if n % d == 0:
            A = build_group_algebra(fc, d)
            if isinstance(A, CondensationMonad):
                out.append(A)
    return out


def _plan_bimodule(rng: random.Random, left, right, max_mult: int):
    """None for the identity bimodule, else the multiplicities of v."""
    if left is right and rng.random() < 0.3:
        return None
    return tuple(rng.randint(0, max_mult) for _ in range(left.fc.ring.rank))


def _plan_size(left, right, plan) -> int:
    if plan is None:
        return sum(left.e.mult)
    return sum(left.e.mult) * sum(plan) * sum(right.e.mult)


def _build_bimodule(rng: random.Random, left, right, plan):
    from condense.condensation import free_bimodule, identity_bimodule, transport_bimodule

    fc = left.fc
    B = identity_bimodule(left) if plan is None else free_bimodule(left, fc.signature.obj(plan), right)
    return transport_bimodule(B, random_automorphism(rng, fc, B.b))


def random_bimodule(rng: random.Random, left, right, max_mult: int = 1):
    """A free bimodule left ⊗ v ⊗ right with random v, or the identity
    bimodule when left is right, moved along a random automorphism."""
    while True:
        plan = _plan_bimodule(rng, left, right, max_mult)
        if _plan_size(left, right, plan):
            return _build_bimodule(rng, left, right, plan)


def random_bimodule_pair(rng: random.Random, fc, max_size: int = 60):
    """(b2, b1) over (A3, A2) and (A2, A1) with dim b2 * dim b1 <= max_size."""
    ms = built_monads(fc)
    while True:
        A3, A1 = rng.choice(ms), rng.choice(ms)
        # favour a nontrivial middle algebra, where p is a genuine projection
        A2 = rng.choice(ms[1:]) if len(ms) > 1 and rng.random() < 0.8 else ms[0]
        p2, p1 = _plan_bimodule(rng, A3, A2, 1), _plan_bimodule(rng, A2, A1, 1)
        s2, s1 = _plan_size(A3, A2, p2), _plan_size(A2, A1, p1)
        if s2 and s1 and s2 * s1 <= max_size:
            return _build_bimodule(rng, A3, A2, p2), _build_bimodule(rng, A2, A1, p1)


def sample_condensations():
    """Retract and rank condensations over pointed, Fibonacci and matrix-unit categories."""
    from condense.condensation import rank_condensation, retract_condensation
    from condense.fusion import CocycleSpec, build_pointed, fibonacci_category, matrix_units_category

    out = []
    for n, q in [(3, 0), (3, 1), (4, 2)]:
        fc = build_pointed(CocycleSpec(n, q))
        k1, km1 = fc.signature.simple(1), fc.signature.simple(n - 1)
        out.append(retract_condensation(fc, k1, km1))
        out.append(rank_condensation(fc, [[1, 1], [0, 0]]))
        out.append(rank_condensation(fc, [[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 2)]]))
    fib = fibonacci_category()
    tau = fib.signature.simple(1)
    out.append(retract_condensation(fib, tau, tau))
    out.append(rank_condensation(fib, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]))
    mat = matrix_units_category(2)
    sig = mat.signature
    f = sig.obj((1, 0, 1, 0))
    g = sig.obj((1, 1, 0, 0))
    out.append(retract_condensation(mat, f, g))
    return out


def coherence_bimodules(fc):
    """Identity and regular bimodules of every built monad, plus free ones."""
    from condense.condensation import free_bimodule, identity_bimodule, regular_bimodule

    ms = built_monads(fc)
    out = []
    for m in ms:
        out.append(identity_bimodule(m))
        out.append(regular_bimodule(m, "left"))
        out.append(regular_bimodule(m, "right"))
    one = ms[0]
    for m in ms[1:]:
        out.append(free_bimodule(m, fc.signature.simple(fc.ring.rank - 1), one))
        out.append(free_bimodule(one, fc.signature.simple(1 % fc.ring.rank), m))
    return out
