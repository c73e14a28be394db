import itertools
import random
from fractions import Fraction

import pytest

from condense.cocycles import find_coboundary_brute
from condense.condensation import (
    Bimodule,
    CondensationMonad,
    GroupAlgebraObstruction,
    SplittingWitness,
    associativity_comparison,
    bimodule_hom,
    build_group_algebra,
    canonical_witness,
    check_bimodule,
    check_condensation_monad,
    check_splitting_extension,
    conjugate_monad,
    free_bimodule,
    identity_bimodule,
    induced_monad,
    is_bimodule_map,
    left_unit_comparison,
    rank_condensation,
    regular_bimodule,
    relative_tensor,
    relative_tensor_idempotent,
    retract_condensation,
    right_unit_comparison,
    transport_bimodule,
    trivial_monad,
    unit_copies_monad,
    unit_summand_monad,
)
from condense.fusion import fibonacci_category, matrix_units_category
from condense.skeletal import SkMorphism

from helpers import built_monads, coherence_bimodules, random_automorphism, random_bimodule_pair, sample_condensations

POINTED = [(n, q) for n in range(1, 6) for q in range(n)]


def _with_entries(m: SkMorphism, entries: dict) -> SkMorphism:
    return SkMorphism.from_trees(m.fc, m.source, m.target, entries)


def _scaled(m: CondensationMonad, mu=1, delta=1) -> CondensationMonad:
    return CondensationMonad(m.fc, m.e, m.mu.scale(mu), m.delta.scale(delta))


def _coboundary_psi(d: int, lam) -> dict:
    """A coboundary twist psi(a, b) = lam(a) lam(b) / lam(a + b) on Z/d."""
    return {(a, b): Fraction(lam[a] * lam[b], lam[(a + b) % d]) for a in range(d) for b in range(d)}


# -- condensation monads ---------------------------------------------------------


@pytest.mark.parametrize("n,q", POINTED)
def test_built_group_algebras_pass_all_axioms(pointed, n, q):
    for m in built_monads(pointed(n, q)):
        rep = check_condensation_monad(m)
        assert rep.ok, (m.name, rep.failure)
        assert rep.checked == 5


def test_trivial_group_is_the_trivial_monad(pointed):
    for n in range(1, 6):
        fc = pointed(n)
        A, one = build_group_algebra(fc, 1), trivial_monad(fc)
        assert A.e == one.e and A.mu == one.mu and A.delta == one.delta


@pytest.mark.parametrize("n,q", [(2, 0), (3, 0), (4, 0), (4, 2), (5, 0)])
def test_scaling_mu_or_delta_breaks_named_axioms(pointed, n, q):
    # the other three axioms are homogeneous in mu and in delta, so only
    # specialness can notice a global rescaling
    for m in built_monads(pointed(n, q)):
        for bad in (_scaled(m, mu=2), _scaled(m, delta=2), _scaled(m, mu=2, delta=Fraction(1, 2))):
            rep = check_condensation_monad(bad)
            if bad.mu @ bad.delta == m.id:
                assert rep.ok
            else:
                assert rep.details["failed"] == ["specialness"]


def test_unscaled_comultiplication_fails_specialness_by_group_order(pointed):
    for p in (2, 3, 5):
        A = build_group_algebra(pointed(p), p)
        m = _scaled(A, delta=p)
        rep = check_condensation_monad(m)
        assert rep.details["failed"] == ["specialness"]
        assert m.mu @ m.delta == A.id.scale(p)


@pytest.mark.parametrize("n,q", [(2, 0), (3, 0), (4, 0), (4, 2), (5, 0), (6, 0)])
def test_swapping_a_structure_constant_between_mu_and_delta(pointed, n, q):
    for m in built_monads(pointed(n, q))[1:]:
        mu, de = m.mu.tree_entries(), m.delta.tree_entries()
        (T, S), v = next(iter(sorted(mu.items(), key=str)))
        w = de[(S, T)]
        assert v != w
        mu2, de2 = dict(mu), dict(de)
        mu2[(T, S)], de2[(S, T)] = w, v
        bad = CondensationMonad(m.fc, m.e, _with_entries(m.mu, mu2), _with_entries(m.delta, de2))
        rep = check_condensation_monad(bad)
        assert rep.details["failed"], m.name


def test_permuting_two_mu_constants_of_a_twisted_group_algebra(pointed):
    fc = pointed(3)
    psi = _coboundary_psi(3, [1, 2, 3])
    A = build_group_algebra(fc, 3, psi)
    assert isinstance(A, CondensationMonad) and check_condensation_monad(A).ok
    mu = A.mu.tree_entries()
    keys = sorted(mu, key=str)
    k1, k2 = next((a, b) for a, b in itertools.combinations(keys, 2) if mu[a] != mu[b])
    mu[k1], mu[k2] = mu[k2], mu[k1]
    bad = CondensationMonad(fc, A.e, _with_entries(A.mu, mu), A.delta)
    rep = check_condensation_monad(bad)
    assert not rep.ok
    assert set(rep.details["failed"]) & {"associativity", "frobenius", "specialness"}


def test_non_coboundary_twist_is_rejected(pointed):
    psi = {(a, b): Fraction(1) for a in range(2) for b in range(2)}
    psi[(1, 1)] = Fraction(-1)
    # every normalized 2-cochain on Z/2 is a cocycle
    assert isinstance(build_group_algebra(pointed(2), 2, psi), CondensationMonad)
    psi3 = _coboundary_psi(3, [1, 2, 3])
    psi3[(1, 2)] *= 2
    out = build_group_algebra(pointed(3), 3, psi3)
    assert isinstance(out, GroupAlgebraObstruction)
    assert "associativity" in out.report.details["failed"]


def test_z2_twisted_by_q1_is_obstructed(pointed):
    out = build_group_algebra(pointed(2, 1), 2)
    assert isinstance(out, GroupAlgebraObstruction)
    assert not out.report.ok
    # exhaustive search over cochains with values of order up to 8 (times N)
    for M in (out.N, 8 * out.N):
        assert find_coboundary_brute(2, out.cocycle_exponents, out.N, M) is None


@pytest.mark.parametrize("n,q", [(n, q) for n, q in POINTED if n > 1])
def test_obstruction_agrees_with_exhaustive_search(pointed, n, q):
    fc = pointed(n, q)
    for d in range(2, n + 1):
        if n % d:
            continue
        out = build_group_algebra(fc, d)
        if isinstance(out, GroupAlgebraObstruction) and out.N ** ((d - 1) ** 2) <= 10**5:
            assert find_coboundary_brute(d, out.cocycle_exponents, out.N, limit=10**5) is None


def test_unit_monads_pass():
    fc = matrix_units_category(2)
    for m in (trivial_monad(fc), unit_summand_monad(fc, 0), unit_summand_monad(fc, 1)):
        assert check_condensation_monad(m).ok
    fib = fibonacci_category()
    for k in (1, 2, 3):
        assert check_condensation_monad(unit_copies_monad(fib, k)).ok


def test_permuting_mu_constants_of_unit_copies(pointed):
    m = unit_copies_monad(pointed(2), 2)
    c = m.mu.coords()
    dim = m.mu.dim()
    nz = sorted(c)[0]
    zero = next(i for i in range(dim) if i not in c)
    c2 = dict(c)
    c2[zero] = c2.pop(nz)
    bad = CondensationMonad(m.fc, m.e, SkMorphism.from_coords(m.fc, m.mu.source, m.mu.target, c2), m.delta)
    assert check_condensation_monad(bad).details["failed"]


# -- bimodules --------------------------------------------------------------------


@pytest.mark.parametrize("n,q", POINTED)
def test_identity_bimodules_pass_all_five_groups(pointed, n, q):
    for m in built_monads(pointed(n, q)):
        rep = check_bimodule(identity_bimodule(m))
        assert rep.ok, (m.name, rep.failure)
        assert rep.checked == 14


@pytest.mark.parametrize("n,q", [(2, 0), (3, 0), (4, 2), (5, 0)])
def test_regular_and_free_bimodules_pass(pointed, n, q):
    fc = pointed(n, q)
    ms = built_monads(fc)
    for m in ms:
        assert check_bimodule(regular_bimodule(m, "left")).ok
        assert check_bimodule(regular_bimodule(m, "right")).ok
    for a, b in itertools.product(ms, repeat=2):
        for v in range(n):
            assert check_bimodule(free_bimodule(a, fc.signature.simple(v), b)).ok


def test_regular_bimodule_side_is_validated(pointed):
    with pytest.raises(ValueError):
        regular_bimodule(trivial_monad(pointed(2)), "up")


def test_broken_bimodule_structure_is_named(pointed):
    A = build_group_algebra(pointed(3), 3)
    I = identity_bimodule(A)
    bad = Bimodule(A, A, I.b, I.nu_r, I.beta_r.scale(2), I.nu_l, I.beta_l)
    rep = check_bimodule(bad)
    assert "split" in rep.details["failed"]
    assert "comodule" in rep.details["failed"]
    assert "module" not in rep.details["failed"]
    bad = Bimodule(A, A, I.b, I.nu_r.scale(2), I.beta_r, I.nu_l, I.beta_l)
    assert "module" in check_bimodule(bad).details["failed"]


def test_bimodule_shapes_are_checked(pointed):
    fc = pointed(2)
    A, one = build_group_algebra(fc, 2), trivial_monad(fc)
    I = identity_bimodule(A)
    with pytest.raises(ValueError):
        Bimodule(one, one, I.b, I.nu_r, I.beta_r, I.nu_l, I.beta_l)


def test_bimodule_hom_dimensions(pointed):
    for p in (2, 3, 5):
        fc = pointed(p)
        A, one = build_group_algebra(fc, p), trivial_monad(fc)
        I = identity_bimodule(A)
        assert len(bimodule_hom(I, I)) == 1
        R = regular_bimodule(A, "right")
        assert len(bimodule_hom(R, R)) == 1
        for i, j in itertools.product(range(p), repeat=2):
            Fi = free_bimodule(one, fc.signature.simple(i), one)
            Fj = free_bimodule(one, fc.signature.simple(j), one)
            assert len(bimodule_hom(Fi, Fj)) == int(i == j)


def test_bimodule_hom_rejects_mismatched_monads(pointed):
    fc = pointed(2)
    A, one = build_group_algebra(fc, 2), trivial_monad(fc)
    with pytest.raises(ValueError):
        bimodule_hom(identity_bimodule(A), identity_bimodule(one))


def test_transport_preserves_axioms_and_gives_an_isomorphism(pointed):
    rng = random.Random(4)
    fc = pointed(4)
    for m in built_monads(fc):
        I = identity_bimodule(m)
        u = random_automorphism(rng, fc, I.b)
        T = transport_bimodule(I, u)
        assert check_bimodule(T).ok
        assert is_bimodule_map(u, I, T)
        assert len(bimodule_hom(I, T)) == 1
    with pytest.raises(ValueError):
        transport_bimodule(I, SkMorphism.zero(fc, (I.b,), (I.b,)))


def test_relative_tensor_idempotent_on_random_pairs():
    from condense.fusion import CocycleSpec, build_pointed

    cache = {}
    rng = random.Random(20)
    nontrivial = 0
    for _ in range(100):
        n = rng.randint(2, 5)
        q = 0 if rng.random() < 0.6 else rng.randrange(n)
        if (n, q) not in cache:
            cache[(n, q)] = build_pointed(CocycleSpec(n, q))
        b2, b1 = random_bimodule_pair(rng, cache[(n, q)], max_size=60)
        assert check_bimodule(b2).ok and check_bimodule(b1).ok
        p = relative_tensor_idempotent(b2, b1)
        assert p @ p == p
        nontrivial += p != SkMorphism.identity(p.fc, p.source)
    assert nontrivial >= 20


@pytest.mark.parametrize("p", [2, 3, 5])
def test_regular_composite_is_sum_of_all_simples(pointed, p):
    A = build_group_algebra(pointed(p), p)
    rt = relative_tensor(regular_bimodule(A, "right"), regular_bimodule(A, "left"))
    assert rt.bimodule.b.mult == (1,) * p
    assert rt.projection @ rt.injection == SkMorphism.identity(A.fc, (rt.bimodule.b,))
    assert rt.injection @ rt.projection == rt.idempotent
    # the other order is A ⊗ A as an (A, A)-bimodule
    back = relative_tensor(regular_bimodule(A, "left"), regular_bimodule(A, "right"))
    assert back.bimodule.b.mult == (p,) * p


def test_relative_tensor_needs_matching_middle(pointed):
    fc = pointed(2)
    A = build_group_algebra(fc, 2)
    with pytest.raises(ValueError):
        relative_tensor(regular_bimodule(A, "right"), regular_bimodule(A, "right"))


def test_pivot_choice_gives_isomorphic_results(pointed):
    A = build_group_algebra(pointed(3), 3)
    b2, b1 = regular_bimodule(A, "right"), regular_bimodule(A, "left")
    r1, r2 = relative_tensor(b2, b1, "first"), relative_tensor(b2, b1, "last")
    assert r1.bimodule.b == r2.bimodule.b
    u = r2.projection @ r1.injection
    assert u.is_invertible() and is_bimodule_map(u, r1.bimodule, r2.bimodule)


# -- coherence ----------------------------------------------------------------------


@pytest.mark.parametrize("n,q", POINTED)
def test_unit_comparisons_are_invertible_bimodule_maps(pointed, n, q):
    for B in coherence_bimodules(pointed(n, q)):
        for comp in (left_unit_comparison, right_unit_comparison):
            u, rt = comp(B)
            assert u.is_invertible()
            assert is_bimodule_map(u, rt.bimodule, B)


@pytest.mark.parametrize("n,q", POINTED)
def test_associativity_comparisons(pointed, n, q):
    bims = coherence_bimodules(pointed(n, q))
    count = 0
    for b3, b2, b1 in itertools.product(bims, repeat=3):
        if not (b3.right is b2.left and b2.right is b1.left):
            continue
        if sum(b3.b.mult) * sum(b2.b.mult) * sum(b1.b.mult) > 64:
            continue
        ac = associativity_comparison(b3, b2, b1)
        assert ac.solution_dim == 1
        assert ac.iso.is_invertible()
        assert is_bimodule_map(ac.iso, ac.left, ac.right)
        count += 1
    assert count > 0


# -- condensations, conjugation and splitting extensions ------------------------------


CONDENSATIONS = sample_condensations()


@pytest.mark.parametrize("c", CONDENSATIONS, ids=lambda c: f"{c.f}|{c.g}")
def test_condensations_and_induced_monads(c):
    assert c.check().ok
    m = induced_monad(c)
    assert check_condensation_monad(m).ok
    w = canonical_witness(c)
    assert check_splitting_extension(m, w)
    assert not check_splitting_extension(m, SplittingWitness(c, w.theta.scale(2)))
    assert not check_splitting_extension(m, SplittingWitness(c, w.theta.scale(-1)))


@pytest.mark.parametrize("c", CONDENSATIONS, ids=lambda c: f"{c.f}|{c.g}")
def test_conjugate_monads_pass(c):
    ms = [trivial_monad(c.fc)]
    if c.fc.labels[0] == "0" and c.fc.ring.rank > 1:
        ms = built_monads(c.fc)
    ms += [unit_copies_monad(c.fc, 2)] if len(c.fc.ring.unit) == 1 else []
    for m in ms:
        rep = check_condensation_monad(conjugate_monad(m, c))
        assert rep.ok, (m.name, rep.failure)


def test_induced_monad_of_rank_condensation_lives_on_unit_copies(pointed):
    fc = pointed(2)
    m = induced_monad(rank_condensation(fc, [[1, 1], [0, 0]]))
    assert m.e.mult == (2, 0)
    assert m.mu @ m.delta == m.id


def test_bad_condensation_inputs(pointed):
    fc = pointed(3)
    with pytest.raises(ValueError):
        rank_condensation(fc, [[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        rank_condensation(fc, [[1, 1], [1, 0]])
    k1 = fc.signature.simple(1)
    with pytest.raises(ValueError):
        retract_condensation(fc, k1, k1)
    c = retract_condensation(fc, k1, fc.signature.simple(2))
    bad = type(c)(fc, c.f, c.g, c.phi.scale(2), c.gamma)
    assert not bad.check().ok
