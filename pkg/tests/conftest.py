import pytest
from hypothesis import HealthCheck, settings

from expsieve import FnKind, PhaseContext, realize_alpha, sieve_table
from expsieve.dioph import parse_alpha_source

settings.register_profile(
    "det",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("det")

PHASE_FLOOR = 10 ** 12  # enough phase accuracy for x up to 1e6


@pytest.fixture(scope="session")
def tables():
    """Memoized sieve tables shared across the whole run."""
    cache = {}

    def get(kind: FnKind, hi: int):
        key = (kind, hi)
        if key not in cache:
            cache[key] = sieve_table(kind, 1, hi)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def alphas():
    cache = {}

    def get(name: str, floor: int = PHASE_FLOOR):
        key = (name, floor)
        if key not in cache:
            cache[key] = realize_alpha(parse_alpha_source(name), floor)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def contexts(alphas):
    cache = {}

    def get(name: str, floor: int = PHASE_FLOOR):
        key = (name, floor)
        if key not in cache:
            cache[key] = PhaseContext(alphas(name, floor))
        return cache[key]

    return get
