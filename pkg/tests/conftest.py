import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from condense.cycfield import CycNumber, totient

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyc_numbers(draw, conductors=(1, 3, 4, 5, 8, 12)):
    n = draw(st.sampled_from(conductors))
    coeffs = draw(st.lists(small_fractions, min_size=totient(n), max_size=totient(n)))
    return CycNumber(n, coeffs)


@pytest.fixture(scope="session")
def pointed():
    """Pointed categories Vect_{Z/n}^{omega_q} keyed by (n, q)."""
    from condense.fusion import CocycleSpec, build_pointed

    cache = {}

    def get(n, q=0):
        if (n, q) not in cache:
            cache[(n, q)] = build_pointed(CocycleSpec(n, q))
        return cache[(n, q)]

    return get
