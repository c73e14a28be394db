import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from condense.linalg import ONE, SpMat
from condense.ssvec import (
    FunctorPresentation,
    LinearCategoryPresentation,
    SignatureError,
    SSMorphism,
    SSSignature,
    biproduct,
    cauchy_completion,
    comparison_blocks,
    hom_dim,
    is_cauchy_equivalence,
    karoubi_envelope,
    matrix_algebra_presentation,
    presentation_from_ss,
    split_idempotent,
    splitting_comparison,
)

from helpers import random_projector

AB = SSSignature(("a", "b"))


@pytest.mark.parametrize("x, y, d", [((1, 0), (1, 0), 1), ((1, 1), (1, 1), 2), ((2, 3), (1, 4), 14)])
def test_hom_dim(x, y, d):
    assert hom_dim(AB.obj(x), AB.obj(y)) == d


def test_hom_dim_signature_mismatch():
    other = SSSignature(("a", "c"))
    with pytest.raises(SignatureError):
        hom_dim(AB.obj((1, 0)), other.obj((1, 0)))


def test_split_identity():
    x = AB.obj((2, 1))
    s = split_idempotent(SSMorphism.identity(x))
    assert s.image == x
    assert s.f == SSMorphism.identity(x) and s.g == SSMorphism.identity(x)


def test_split_diag_one_zero():
    x = AB.obj((2, 0))
    e = SSMorphism.from_dense(x, x, [[[1, 0], [0, 0]], []])
    s = split_idempotent(e)
    assert s.image.mult == (1, 0)


def test_split_rejects_non_idempotent():
    x = AB.obj((1, 0))
    with pytest.raises(ValueError):
        split_idempotent(SSMorphism.identity(x).scale(2))


@given(st.integers(0, 10**6), st.tuples(st.integers(0, 4), st.integers(0, 4)))
def test_split_random_projector(seed, mult):
    rng = random.Random(seed)
    x = AB.obj(mult)
    e = random_projector(rng, x)
    s = split_idempotent(e)
    assert s.g @ s.f == e
    assert s.f @ s.g == SSMorphism.identity(s.image)


def test_split_conjugated_projector_rank_two():
    rng = random.Random(7)
    from helpers import random_invertible
    from condense.linalg import inverse

    sig = SSSignature(("s",))
    x = sig.obj((3,))
    P = random_invertible(rng, 3)
    D = SpMat.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    e = SSMorphism(x, x, (P @ D @ inverse(P),))
    s = split_idempotent(e)
    assert s.image.mult == (2,)
    assert s.g @ s.f == e


def test_comparison_same_splitting_is_identity():
    x = AB.obj((2, 1))
    e = random_projector(random.Random(1), x, 0.7)
    s = split_idempotent(e)
    assert splitting_comparison(s, s) == SSMorphism.identity(s.image)


def test_comparison_scalar_basis_change():
    sig = SSSignature(("s",))
    x = sig.obj((2,))
    e = SSMorphism.from_dense(x, x, [[[1, 0], [0, 0]]])
    s1 = split_idempotent(e)
    c = Fraction(3)
    from condense.ssvec import Splitting

    s2 = Splitting(s1.image, s1.f.scale(c), s1.g.scale(1 / c))
    u = splitting_comparison(s1, s2)
    assert u.blocks[0] == SpMat.from_dense([[c]])
    _, dim = comparison_blocks(s1.f.block_dict(), s1.g.block_dict(), s2.f.block_dict(), s2.g.block_dict())
    assert dim == 1


def test_comparison_rejects_invalid():
    sig = SSSignature(("s",))
    x = sig.obj((2,))
    e = SSMorphism.from_dense(x, x, [[[1, 0], [0, 0]]])
    s = split_idempotent(e)
    from condense.ssvec import Splitting

    bad = Splitting(s.image, s.f.scale(2), s.g)
    with pytest.raises(ValueError):
        splitting_comparison(s, bad)


@pytest.mark.parametrize("seed", range(20))
def test_comparison_between_pivot_orders(seed):
    rng = random.Random(seed)
    x = AB.obj((rng.randint(1, 4), rng.randint(0, 3)))
    e = random_projector(rng, x)
    s1, s2 = split_idempotent(e, "first"), split_idempotent(e, "last")
    u = splitting_comparison(s1, s2)
    assert u @ s1.f == s2.f
    assert s1.g == s2.g @ u
    assert u.is_invertible()


# -- presentations and completions ---------------------------------------------


def scalars_presentation():
    return LinearCategoryPresentation(["X"], {("X", "X"): 1}, {("X", "X", "X"): {(0, 0): {0: ONE}}}, {"X": {0: ONE}})


def test_presentation_rejects_nonassociative():
    P = matrix_algebra_presentation(2)
    bad = {k: {ij: dict(v) for ij, v in t.items()} for k, t in P.comp.items()}
    first = next(iter(bad[("X", "X", "X")]))
    bad[("X", "X", "X")][first] = {3: ONE}
    with pytest.raises(ValueError):
        LinearCategoryPresentation(P.objects, P.hom, bad, P.ids)


def test_kar_of_scalars():
    K = karoubi_envelope(scalars_presentation())
    P = K.presentation
    assert set(P.objects) == {"(X,0)", "(X,id)"}
    assert P.hom_dim("(X,id)", "(X,id)") == 1
    assert P.hom_dim("(X,0)", "(X,0)") == 0


def test_kar_of_matrix_algebra_has_one_dim_end():
    K = karoubi_envelope(matrix_algebra_presentation(2))
    P = K.presentation
    assert P.check() is None
    dims = {o: P.hom_dim(o, o) for o in P.objects}
    assert dims["(X,id)"] == 4
    assert dims["(X,e0)"] == 1 and dims["(X,e3)"] == 1
    assert K.unit.check_functorial() is None


def test_kar_idempotents_split():
    K = karoubi_envelope(matrix_algebra_presentation(2))
    cat = K.category
    for A in K.objects.values():
        for k in range(cat.hom_dim(A, A)):
            v = {k: ONE}
            if cat.compose(A, A, A, v, v) == v:
                assert cat.splits(A, v)


def test_kar_unit_is_cauchy_equivalence_for_semisimple():
    sig = SSSignature(("s", "t"))
    P = presentation_from_ss({"S": sig.obj((1, 0)), "T": sig.obj((0, 1))})
    K = karoubi_envelope(P)
    ok, _ = is_cauchy_equivalence(K.unit)
    # Kar(P) also holds zero objects, which are retracts of anything
    assert ok


def test_cauchy_of_scalars():
    C = cauchy_completion(scalars_presentation())
    assert C.presentation.hom_dim("([X,X],id)", "([X,X],id)") == 4


def test_cauchy_two_objects_zero_cross_homs():
    sig = SSSignature(("s", "t"))
    P = presentation_from_ss({"S": sig.obj((1, 0)), "T": sig.obj((0, 1))})
    C = cauchy_completion(P).presentation
    assert C.hom_dim("([S],id)", "([T],id)") == 0
    assert C.hom_dim("([S,T],id)", "([S,T],id)") == 2


def test_cauchy_half_object_biproduct():
    C = cauchy_completion(matrix_algebra_presentation(2))
    cat = C.category
    half1 = C.objects["([X],e0)"]
    half2 = C.objects["([X],e3)"]
    X = C.objects["([X],id)"]
    S, i1, i2, p1, p2 = biproduct(cat, half1, half2)
    # S = (X,E11) ⊕ (X,E22) is isomorphic to [X]: both have 4-dim End and
    # the hom spaces between them are 4-dimensional with an invertible element
    assert cat.hom_dim(S, S) == 4 == cat.hom_dim(X, X)
    assert cat.hom_dim(S, X) == 4


def test_biproduct_equations():
    C = cauchy_completion(matrix_algebra_presentation(2))
    cat = C.category
    A, B = C.objects["([X],e0)"], C.objects["([X],id)"]
    S, i1, i2, p1, p2 = biproduct(cat, A, B)
    assert cat.compose(A, S, A, p1, i1) == cat.identity(A)
    assert cat.compose(B, S, B, p2, i2) == cat.identity(B)
    assert not cat.compose(A, S, B, p2, i1)
    idS = cat.identity(S)
    s = {}
    for k, v in cat.compose(S, A, S, i1, p1).items():
        s[k] = s.get(k, 0) + v
    for k, v in cat.compose(S, B, S, i2, p2).items():
        s[k] = s.get(k, 0) + v
    assert {k: v for k, v in s.items() if v} == idS


def test_identity_functor_is_equivalence():
    P = matrix_algebra_presentation(2)
    ok, rep = is_cauchy_equivalence(FunctorPresentation.identity(P))
    assert ok and rep["fully_faithful"]


def test_inclusion_into_x_and_x_plus_x():
    sig = SSSignature(("s",))
    T = presentation_from_ss({"X": sig.obj((1,)), "XX": sig.obj((2,))})
    S = presentation_from_ss({"X": sig.obj((1,))})
    F = FunctorPresentation(S, T, {"X": "X"}, {("X", "X"): SpMat.identity(1)})
    ok, rep = is_cauchy_equivalence(F)
    assert ok
    assert rep["witnesses"]["XX"]["summands"] == ["X", "X"]


def test_functor_killing_hom_is_not_full():
    # scalars -> M_2, 1 |-> identity: faithful but misses three dimensions
    M = matrix_algebra_presentation(2)
    ident = SpMat(4, 1)
    for k, v in M.ids["X"].items():
        ident.add_entry(k, 0, v)
    F = FunctorPresentation(scalars_presentation(), M, {"X": "X"}, {("X", "X"): ident})
    ok, rep = is_cauchy_equivalence(F)
    assert not ok and "not full" in rep["failure"]


def test_non_functorial_input_rejected():
    P = matrix_algebra_presentation(2)
    m = SpMat.identity(4)
    m.add_entry(0, 1, ONE)
    F = FunctorPresentation(P, P, {"X": "X"}, {("X", "X"): m})
    with pytest.raises(ValueError):
        is_cauchy_equivalence(F)


def test_generator_subcategory_into_semisimple():
    # M_2 acting on a 2-dim simple: X -> X ⊕ ... presentation with End = M_2
    sig = SSSignature(("s",))
    T = presentation_from_ss({"X": sig.obj((2,)), "S": sig.obj((1,))})
    P = matrix_algebra_presentation(2)
    F = FunctorPresentation(P, T, {"X": "X"}, {("X", "X"): SpMat.identity(4)})
    ok, rep = is_cauchy_equivalence(F)
    assert ok and rep["witnesses"]["S"]["summands"] == ["X"]
