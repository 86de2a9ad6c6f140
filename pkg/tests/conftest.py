import pytest

from knuthovals import FieldContext, knuth_kn, knuth_kn_td, search_translation_hyperovals


@pytest.fixture(scope="session")
def ctx5():
    return FieldContext(5)


@pytest.fixture(scope="session")
def full_searches(ctx5):
    """The four n=5 full-domain classifications, computed once."""
    kn = knuth_kn(ctx5)
    td = knuth_kn_td(ctx5)
    return {
        ("kn", "a"): search_translation_hyperovals(kn, "a", "full"),
        ("kn", "b"): search_translation_hyperovals(kn, "b", "full"),
        ("kn_td", "a"): search_translation_hyperovals(td, "a", "full"),
        ("kn_td", "b"): search_translation_hyperovals(td, "b", "full"),
    }


@pytest.fixture(scope="session")
def kn5(ctx5):
    return knuth_kn(ctx5)


@pytest.fixture(scope="session")
def td5(ctx5):
    return knuth_kn_td(ctx5)


@pytest.fixture(scope="session")
def ctx3():
    return FieldContext(3)


@pytest.fixture(scope="session")
def kn3(ctx3):
    return knuth_kn(ctx3)


@pytest.fixture(scope="session")
def ctx7():
    return FieldContext(7)
