import pytest

from condense.condensation import build_group_algebra, trivial_monad, unit_copies_monad, unit_summand_monad
from condense.fusion import direct_sum_vect, fibonacci_category, matrix_units_category, verify_fusion_ring
from condense.mod2cat import (
    ModCPresentation,
    enumerate_module_categories_cyclic,
    generator_endomorphism,
    hom_category_report,
    is_connected,
    is_generator,
    is_simple_object,
)


def _modvect(fc, d=None):
    n = fc.ring.rank
    return ModCPresentation(fc, {"1": trivial_monad(fc), "A": build_group_algebra(fc, d or n)})


@pytest.mark.parametrize("p", [2, 3, 5])
def test_classification_of_modvect(p):
    classes = enumerate_module_categories_cyclic(p, 0)
    assert [c.order for c in classes] == [1, p]
    assert [str(c) for c in classes] == ["(H=0, psi=triv)", f"(H=Z/{p}, psi=triv)"]
    # Z/5 has 16 free cochain values, beyond the exhaustive cross-check
    assert all(("brute" in c.method) == (p < 5 or c.order == 1) for c in classes)


@pytest.mark.parametrize(
    "n,q,orders",
    [(2, 1, [1]), (3, 1, [1]), (4, 0, [1, 2, 4]), (4, 1, [1]), (4, 2, [1, 2]), (6, 0, [1, 2, 3, 6]), (6, 3, [1, 3])],
)
def test_classification_with_cocycles(n, q, orders):
    assert [c.order for c in enumerate_module_categories_cyclic(n, q)] == orders


def test_classification_rejects_bad_order():
    with pytest.raises(ValueError):
        enumerate_module_categories_cyclic(0, 0)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_hom_simple_counts(pointed, p):
    P = _modvect(pointed(p))
    G = generator_endomorphism(P)
    assert G.names == ["1", "A"]
    assert G.counts == [[p, 1], [1, p]]
    assert G.connected
    assert all(all(c for c in row) for row in G.counts)


def test_counts_match_center_dimension(pointed):
    P = _modvect(pointed(3))
    for a in P.names:
        for b in P.names:
            rep = hom_category_report(P, a, b)
            assert rep.simple_count == rep.center_dim
            assert rep.endo_dim >= rep.center_dim


def test_twisted_subgroup_example(pointed):
    P = _modvect(pointed(4, 2), d=2)
    assert generator_endomorphism(P).counts == [[4, 2], [2, 4]]


def test_connectedness(pointed):
    P = _modvect(pointed(3))
    ok, mat = is_connected(P)
    assert ok and mat == [[1, 1], [1, 1]]
    vv = direct_sum_vect(2)
    Q = ModCPresentation(vv, {"a": unit_summand_monad(vv, 0), "b": unit_summand_monad(vv, 1)})
    ok, mat = is_connected(Q)
    assert not ok and mat == [[1, 0], [0, 1]]
    assert generator_endomorphism(Q).counts == [[1, 0], [0, 1]]


def test_matrix_category_components_are_all_connected():
    fc = matrix_units_category(2)
    P = ModCPresentation(fc, {"a": unit_summand_monad(fc, 0), "b": unit_summand_monad(fc, 1)})
    assert generator_endomorphism(P).counts == [[1, 1], [1, 1]]


def test_generators(pointed):
    P = _modvect(pointed(2))
    assert is_generator(P, ["1"])[0] and is_generator(P, ["A"])[0]
    ok, why = is_generator(P, [])
    assert not ok and why
    vv = direct_sum_vect(2)
    Q = ModCPresentation(vv, {"a": unit_summand_monad(vv, 0), "b": unit_summand_monad(vv, 1)})
    ok, why = is_generator(Q, ["a"])
    assert not ok and "'b'" in why
    assert is_generator(Q, ["a", "b"])[0]


def test_simple_objects(pointed):
    fc = pointed(2)
    P = ModCPresentation(fc, {"1": trivial_monad(fc), "11": unit_copies_monad(fc, 2)})
    assert is_simple_object(P, "1")
    assert not is_simple_object(P, "11")
    with pytest.raises(ValueError):
        is_connected(P)


def test_presentation_validates_its_algebras(pointed):
    from condense.condensation import CondensationMonad

    fc = pointed(2)
    one = trivial_monad(fc)
    bad = CondensationMonad(fc, one.e, one.mu.scale(2), one.delta)
    with pytest.raises(ValueError):
        ModCPresentation(fc, {"x": bad})
    with pytest.raises(ValueError):
        ModCPresentation(fc, {"x": trivial_monad(pointed(3))})
    with pytest.raises(KeyError):
        ModCPresentation(fc, {"1": one})["y"]


def test_generator_fusion_ring_for_z2(pointed):
    G = generator_endomorphism(_modvect(pointed(2)), ring=True)
    assert G.ring is not None, G.note
    assert G.ring.rank == 6
    assert verify_fusion_ring(G.ring).ok
    assert len(G.ring.unit) == 2


def test_fibonacci_counts_over_the_rationals():
    fc = fibonacci_category()
    P = ModCPresentation(fc, {"1": trivial_monad(fc)})
    rep = hom_category_report(P, "1", "1", conductor=1)
    assert rep.simple_count == 2 and rep.note == ""
    assert generator_endomorphism(P).counts == [[2]]
