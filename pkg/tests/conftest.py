import pytest

from flagpoincare.polyq import IntPolynomial


def P(*coeffs):
    """Shorthand: ``P(1, 2, 1)`` is ``1 + 2t + t^2``."""
    return IntPolynomial(coeffs)


@pytest.fixture
def poly():
    return P
