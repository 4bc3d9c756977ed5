import pytest
from hypothesis import HealthCheck, settings

from fgrade_kernel.groebner import Ideal
from fgrade_kernel.modules import FPModule
from fgrade_kernel.ring import PrimeField, polynomial_ring

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def R():
    return polynomial_ring("x,y,z")


@pytest.fixture
def R2():
    return polynomial_ring("x,y")


@pytest.fixture
def F5():
    return polynomial_ring("x,y", field=PrimeField(5))


class MixedExample:
    """R = QQ[x1,x2,x3], M = R ⊕ R/(x2^2, x3^3), a the maximal ideal, b = (x1) ⊆ b' = (x1, x2)."""

    def __init__(self):
        self.R = R = polynomial_ring("x1,x2,x3")
        self.x1, self.x2, self.x3 = R.gens()
        self.M = FPModule.free(R, 1) + FPModule.cyclic(R, [self.x2**2, self.x3**3])
        self.a = Ideal(R, [self.x1, self.x2, self.x3])
        self.b = Ideal(R, [self.x1])
        self.bp = Ideal(R, [self.x1, self.x2])


@pytest.fixture
def mixed():
    return MixedExample()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
